//! Small categories and adjunctions used as the bundled corpus, plus
//! exhaustive enumeration of monads and morphisms between them.

use std::sync::Arc;

use crate::fincat::{
    enumerate_functors, enumerate_nat_trans, validate_adjunction, AdjunctionData, CategoryBuilder,
    ComponentFilter, FinCategory, FunctorData,
};
use crate::monad::{enumerate_monads, validate_monad_morphism, MonadData};
use crate::psimorph::{classical_embed, enumerate_psi_morphisms, PsiMorphismData};

pub fn terminal() -> Arc<FinCategory> {
    Arc::new(FinCategory::terminal("One"))
}

/// `a → b`.
pub fn arrow() -> Arc<FinCategory> {
    Arc::new(FinCategory::chain("Arrow", &["a", "b"]))
}

/// `a → b → c`.
pub fn chain3() -> Arc<FinCategory> {
    Arc::new(FinCategory::chain("Chain3", &["a", "b", "c"]))
}

/// `u, v : a ⇉ b` with a coequalizer `e : b → c`, `w = e∘u = e∘v`.
pub fn parallel_coequalizer() -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new("ParCoeq");
    let a = b.object("a");
    let bo = b.object("b");
    let c = b.object("c");
    let u = b.morphism("u", a, bo);
    let v = b.morphism("v", a, bo);
    let e = b.morphism("e", bo, c);
    let w = b.morphism("w", a, c);
    b.set_composite(e, u, w);
    b.set_composite(e, v, w);
    Arc::new(b.build().expect("ParCoeq"))
}

/// One object whose endomorphisms form the monoid with multiplication
/// `table[i][j] = i·j` on `names` (index 0 is the unit).
pub fn monoid(name: &str, names: &[&str], table: &[&[usize]]) -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new(name);
    let o = b.object("*");
    let mut ms = vec![b.id(o)];
    for n in &names[1..] {
        ms.push(b.morphism(n, o, o));
    }
    for (i, row) in table.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            b.set_composite(ms[i], ms[j], ms[k]);
        }
    }
    Arc::new(b.build().expect("monoid"))
}

/// The group of order two.
pub fn z2() -> Arc<FinCategory> {
    monoid("Z2", &["1", "s"], &[&[0, 1], &[1, 0]])
}

/// The monoid `{1, e}` with `e·e = e`.
pub fn idempotent() -> Arc<FinCategory> {
    monoid("Idem", &["1", "e"], &[&[0, 1], &[1, 1]])
}

/// The monoid `{1, l, r}` with `x·y = x` for `x ≠ 1`.
pub fn left_zero() -> Arc<FinCategory> {
    monoid(
        "LeftZero",
        &["1", "l", "r"],
        &[&[0, 1, 2], &[1, 1, 1], &[2, 2, 2]],
    )
}

/// `i : x → y` with two retractions `r1, r2 : y → x`; `ek = i∘rk` are
/// idempotents on `y`.
pub fn two_retractions() -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new("Ret2");
    let x = b.object("x");
    let y = b.object("y");
    let i = b.morphism("i", x, y);
    let r = [b.morphism("r1", y, x), b.morphism("r2", y, x)];
    let e = [b.morphism("e1", y, y), b.morphism("e2", y, y)];
    let idx = b.id(x);
    for k in 0..2 {
        b.set_composite(r[k], i, idx);
        b.set_composite(i, r[k], e[k]);
        b.set_composite(e[k], i, i);
        for j in 0..2 {
            b.set_composite(e[j], e[k], e[k]);
            b.set_composite(r[j], e[k], r[k]);
        }
    }
    Arc::new(b.build().expect("Ret2"))
}

/// Every adjunction `G ⊣ F` with `G : d → c`, in lexicographic order of
/// `(G, F, unit, counit)`.
pub fn enumerate_adjunctions(d: &Arc<FinCategory>, c: &Arc<FinCategory>) -> Vec<AdjunctionData> {
    let mut out = Vec::new();
    let gs: Vec<FunctorData> = enumerate_functors(d, c).collect();
    let fs: Vec<FunctorData> = enumerate_functors(c, d).collect();
    for g in &gs {
        for f in &fs {
            let fg = f.after(g).expect("composable");
            let gf = g.after(f).expect("composable");
            let units: Vec<_> =
                enumerate_nat_trans(&FunctorData::identity(d.clone()), &fg, ComponentFilter::Any)
                    .expect("parallel")
                    .collect();
            if units.is_empty() {
                continue;
            }
            for counit in
                enumerate_nat_trans(&gf, &FunctorData::identity(c.clone()), ComponentFilter::Any)
                    .expect("parallel")
            {
                for unit in &units {
                    let adj = AdjunctionData {
                        left: g.clone(),
                        right: f.clone(),
                        unit: unit.clone(),
                        counit: counit.clone(),
                    };
                    if validate_adjunction(&adj).is_valid() {
                        out.push(adj);
                    }
                }
            }
        }
    }
    out
}

/// Every valid morphism of monads along `adj`, over every pair of monads.
pub fn psi_morphisms_along(adj: &AdjunctionData) -> Vec<PsiMorphismData> {
    let ss = enumerate_monads(adj.upper());
    let ts = enumerate_monads(adj.lower());
    let mut out = Vec::new();
    for s in &ss {
        for t in &ts {
            out.extend(enumerate_psi_morphisms(adj, s, t).expect("valid components"));
        }
    }
    out
}

/// Index of `m` within `monads`, used to name generated instances.
pub fn monad_index(monads: &[MonadData], m: &MonadData) -> Option<usize> {
    monads.iter().position(|x| x == m)
}

/// Full subcategory of finite sets on `{0, …, n-1}` for each `n` in
/// `sizes`. Objects are named by size and morphisms by their value table.
pub fn finite_sets(name: &str, sizes: &[usize]) -> Arc<FinCategory> {
    let mut b = CategoryBuilder::new(name);
    let objs: Vec<_> = sizes
        .iter()
        .map(|n| b.bare_object(&n.to_string()))
        .collect();
    let mut maps = std::collections::HashMap::new();
    for (i, &m) in sizes.iter().enumerate() {
        for (j, &n) in sizes.iter().enumerate() {
            let count = n.pow(m as u32);
            for code in 0..count {
                let mut table = Vec::with_capacity(m);
                let mut c = code;
                for _ in 0..m {
                    table.push(c % n);
                    c /= n;
                }
                let label: String = table.iter().map(|v| v.to_string()).collect();
                let mor = b.morphism(&format!("{m}>{n}:[{label}]"), objs[i], objs[j]);
                if i == j && table.iter().enumerate().all(|(k, &v)| k == v) {
                    b.set_identity(objs[i], mor);
                }
                maps.insert((i, j, table), mor);
            }
        }
    }
    let entries: Vec<_> = maps.iter().map(|(k, v)| (k.clone(), *v)).collect();
    for ((i, j, f), fm) in &entries {
        for ((j2, k, g), gm) in &entries {
            if j == j2 {
                let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                b.set_composite(*gm, *fm, maps[&(*i, *k, gf)]);
            }
        }
    }
    Arc::new(b.build().expect("finite sets"))
}

/// The unique adjunction with the given object maps, if any.
pub fn adjunction_with(
    d: &Arc<FinCategory>,
    c: &Arc<FinCategory>,
    left_obj: &[&str],
    right_obj: &[&str],
) -> Option<AdjunctionData> {
    let names =
        |cat: &FinCategory, ns: &[&str]| -> Vec<_> { ns.iter().map(|n| cat.obj(n)).collect() };
    let (gl, fr) = (names(c, left_obj), names(d, right_obj));
    enumerate_adjunctions(d, c).into_iter().find(|adj| {
        adj.left
            .obj_map()
            .iter()
            .map(|&o| Some(o))
            .eq(gl.iter().copied())
            && adj
                .right
                .obj_map()
                .iter()
                .map(|&o| Some(o))
                .eq(fr.iter().copied())
    })
}

/// Classical morphisms of monads `T ⇒ S` on `c`, over every pair of
/// monads, embedded along the identity adjunction.
pub fn classical_morphisms(c: &Arc<FinCategory>) -> Vec<(usize, usize, PsiMorphismData)> {
    let monads = enumerate_monads(c);
    let mut out = Vec::new();
    for (i, s) in monads.iter().enumerate() {
        for (j, t) in monads.iter().enumerate() {
            let phis =
                enumerate_nat_trans(&t.endo, &s.endo, ComponentFilter::Any).expect("parallel");
            for phi in phis {
                if validate_monad_morphism(s, t, &phi).is_valid() {
                    out.push((i, j, classical_embed(s, t, &phi).expect("same base")));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub p: PsiMorphismData,
}

/// The nonidentity adjunctions of the bundled corpus, by name.
pub fn corpus_adjunctions() -> Vec<(&'static str, AdjunctionData)> {
    let (one, arrow, chain3, par) = (terminal(), arrow(), chain3(), parallel_coequalizer());
    let two = Arc::new(FinCategory::chain("Two", &["p", "q"]));
    vec![
        (
            "arrow-to-point",
            adjunction_with(&arrow, &one, &["*", "*"], &["b"]),
        ),
        (
            "point-to-arrow",
            adjunction_with(&one, &arrow, &["a"], &["*", "*"]),
        ),
        (
            "chain3-to-two",
            adjunction_with(&chain3, &two, &["p", "q", "q"], &["a", "c"]),
        ),
        (
            "parcoeq-to-point",
            adjunction_with(&par, &one, &["*", "*", "*"], &["c"]),
        ),
    ]
    .into_iter()
    .map(|(n, a)| (n, a.expect("corpus adjunction exists")))
    .collect()
}

/// Every instance of the bundled corpus: classical morphisms on `Arrow`
/// and `ParCoeq`, then all morphisms of monads along each nonidentity
/// adjunction.
pub fn bundled() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (label, c) in [("arrow", arrow()), ("parcoeq", parallel_coequalizer())] {
        let mut seen = std::collections::BTreeMap::new();
        for (i, j, p) in classical_morphisms(&c) {
            let k = seen.entry((i, j)).or_insert(0usize);
            out.push(CorpusEntry {
                name: format!("classical-{label}-s{i}-t{j}-{k}"),
                p,
            });
            *k += 1;
        }
    }
    for (label, adj) in corpus_adjunctions() {
        let ss = enumerate_monads(adj.upper());
        let ts = enumerate_monads(adj.lower());
        let mut seen = std::collections::BTreeMap::new();
        for p in psi_morphisms_along(&adj) {
            let i = monad_index(&ss, &p.s).expect("enumerated");
            let j = monad_index(&ts, &p.t).expect("enumerated");
            let k = seen.entry((i, j)).or_insert(0usize);
            out.push(CorpusEntry {
                name: format!("{label}-s{i}-t{j}-{k}"),
                p,
            });
            *k += 1;
        }
    }
    out
}
