//! The catalogue: maybe, finite powerset, `G × -` for a finite group, and
//! the free F₂-vector space. Elements of `T(n)` are indices:
//!
//! * maybe: `i < n` is `Just i`, `n` is `Nothing`;
//! * powerset and vecF2: a bitmask over `n` bits;
//! * gset: `g·n + i` for the pair `(g, i)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::map::FinSetMap;
use crate::report::ValidationReport;

/// Largest `T(n)` the backend will enumerate.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    name: String,
    table: Vec<Vec<usize>>,
}

impl Group {
    pub fn new(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: String| Err(Error::MalformedGroup(format!("{name}: {msg}")));
        if n == 0 {
            return bad("empty table".into());
        }
        if table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&v| v >= n))
        {
            return bad("table is not square with entries in range".into());
        }
        for (a, row) in table.iter().enumerate() {
            if table[0][a] != a || row[0] != a {
                return bad("element 0 is not an identity".into());
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
                    }
                }
            }
            if !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0) {
                return bad(format!("{a} has no inverse"));
            }
        }
        Ok(Self {
            name: name.to_string(),
            table,
        })
    }

    /// Integers mod `n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new(&format!("z{n}"), table).expect("cyclic group")
    }

    /// Permutations of three points, composed as functions.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Self::new("s3", table).expect("s3")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// The operations of a monad used by the backend, so that tests can supply
/// deliberately broken variants.
pub trait FiniteMonad {
    fn name(&self) -> String;
    /// `|T(n)|`, or `None` if it does not fit the index type.
    fn size(&self, n: usize) -> Option<u64>;
    fn eta(&self, n: usize, i: usize) -> u64;
    /// `T(f)` applied to one element of `T(f.dom_size)`.
    fn map(&self, f: &FinSetMap, t: u64) -> u64;
    /// `μ_n` applied to one element of `T(T(n))`, where `T(n)` is indexed as
    /// above and `T(T(n))` as `T` of a set of size `|T(n)|`.
    fn mu(&self, n: usize, tt: u64) -> u64;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogueMonad {
    Maybe,
    Powerset,
    GSet(Group),
    VecF2,
}

impl fmt::Display for CatalogueMonad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogueMonad::Maybe => write!(f, "maybe"),
            CatalogueMonad::Powerset => write!(f, "powerset"),
            CatalogueMonad::GSet(g) => write!(f, "gset:{}", g.name()),
            CatalogueMonad::VecF2 => write!(f, "vecf2"),
        }
    }
}

/// Looks up a catalogue monad: `maybe`, `powerset`, `vecf2`, or
/// `gset:<group>` with group `trivial`, `z2`, `z3` or `s3`.
pub fn instantiate(id: &str) -> Result<CatalogueMonad> {
    match id {
        "maybe" => Ok(CatalogueMonad::Maybe),
        "powerset" => Ok(CatalogueMonad::Powerset),
        "vecf2" => Ok(CatalogueMonad::VecF2),
        _ => match id.strip_prefix("gset:") {
            Some("trivial") => Ok(CatalogueMonad::GSet(Group::new("trivial", vec![vec![0]])?)),
            Some("z2") => Ok(CatalogueMonad::GSet(Group::cyclic(2))),
            Some("z3") => Ok(CatalogueMonad::GSet(Group::cyclic(3))),
            Some("s3") => Ok(CatalogueMonad::GSet(Group::s3())),
            _ => Err(Error::UnknownMonad(id.to_string())),
        },
    }
}

/// The catalogue at its default parameters.
pub fn catalogue() -> Vec<CatalogueMonad> {
    [
        "maybe",
        "powerset",
        "gset:trivial",
        "gset:z2",
        "gset:z3",
        "vecf2",
    ]
    .into_iter()
    .map(|id| instantiate(id).expect("catalogue id"))
    .collect()
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

fn pow2(n: usize) -> Option<u64> {
    (n < 64).then(|| 1u64 << n)
}

impl FiniteMonad for CatalogueMonad {
    fn name(&self) -> String {
        self.to_string()
    }

    fn size(&self, n: usize) -> Option<u64> {
        match self {
            CatalogueMonad::Maybe => Some(n as u64 + 1),
            CatalogueMonad::Powerset | CatalogueMonad::VecF2 => pow2(n),
            CatalogueMonad::GSet(g) => (g.order() as u64).checked_mul(n as u64),
        }
    }

    fn eta(&self, _n: usize, i: usize) -> u64 {
        match self {
            CatalogueMonad::Maybe | CatalogueMonad::GSet(_) => i as u64,
            CatalogueMonad::Powerset | CatalogueMonad::VecF2 => 1 << i,
        }
    }

    fn map(&self, f: &FinSetMap, t: u64) -> u64 {
        let (n, m) = (f.dom_size as u64, f.cod_size as u64);
        match self {
            CatalogueMonad::Maybe => {
                if t == n {
                    m
                } else {
                    f.apply(t as usize) as u64
                }
            }
            CatalogueMonad::Powerset => bits(t).fold(0, |acc, i| acc | 1 << f.apply(i)),
            CatalogueMonad::VecF2 => bits(t).fold(0, |acc, i| acc ^ 1 << f.apply(i)),
            CatalogueMonad::GSet(_) => (t / n) * m + f.apply((t % n) as usize) as u64,
        }
    }

    fn mu(&self, n: usize, tt: u64) -> u64 {
        match self {
            CatalogueMonad::Maybe => {
                // outer Nothing is index n + 1, inner Nothing is index n
                if tt == n as u64 + 1 {
                    n as u64
                } else {
                    tt
                }
            }
            CatalogueMonad::Powerset => bits(tt).fold(0, |acc, s| acc | s as u64),
            CatalogueMonad::VecF2 => bits(tt).fold(0, |acc, s| acc ^ s as u64),
            CatalogueMonad::GSet(g) => {
                let tn = (g.order() * n) as u64;
                let (outer, inner) = (tt / tn, tt % tn);
                let (h, i) = (inner / n as u64, inner % n as u64);
                g.mul(outer as usize, h as usize) as u64 * n as u64 + i
            }
        }
    }
}

impl CatalogueMonad {
    pub fn checked_size(&self, n: usize) -> Result<u64> {
        self.size(n).ok_or_else(|| Error::SizeBound {
            what: format!("{self}({n})"),
            needed: "more than 2^63".into(),
            bound: 63,
        })
    }
}

/// `|T(n)|` if it is small enough to enumerate.
pub fn enumerable_size(m: &dyn FiniteMonad, n: usize) -> Result<u64> {
    match m.size(n) {
        Some(s) if s <= ENUMERATION_LIMIT => Ok(s),
        other => Err(Error::SizeBound {
            what: format!("{}({n})", m.name()),
            needed: other.map_or_else(|| "more than 2^63".into(), |s| s.to_string()),
            bound: ENUMERATION_LIMIT as usize,
        }),
    }
}

/// `η_{T n}` as a map, and `T(η_n)` as a map, both `T n → T T n`.
fn unit_maps(m: &dyn FiniteMonad, n: usize, tn: usize) -> (Vec<u64>, Vec<u64>) {
    let eta_n = FinSetMap {
        dom_size: n,
        cod_size: tn,
        table: (0..n).map(|i| m.eta(n, i) as usize).collect(),
    };
    let outer = (0..tn as u64).map(|t| m.eta(tn, t as usize)).collect();
    let inner = (0..tn as u64).map(|t| m.map(&eta_n, t)).collect();
    (outer, inner)
}

/// Checks `μ ∘ ηT = id`, `μ ∘ Tη = id` on `T n` and `μ ∘ μT = μ ∘ Tμ` on
/// `T T T n`, elementwise, at every size in `sizes`. Sizes whose triple
/// application is too large to enumerate are an error.
pub fn monad_law_spotcheck(m: &dyn FiniteMonad, sizes: &[usize]) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    for &n in sizes {
        let tn = enumerable_size(m, n)? as usize;
        let ttn = enumerable_size(m, tn)? as usize;
        enumerable_size(m, ttn)?;
        let (outer, inner) = unit_maps(m, n, tn);
        for t in 0..tn as u64 {
            if m.mu(n, outer[t as usize]) != t {
                report.law("left_unit", format!("μ(η({t})) ≠ {t} at size {n}"));
            }
            if m.mu(n, inner[t as usize]) != t {
                report.law("right_unit", format!("μ(T η({t})) ≠ {t} at size {n}"));
            }
        }
        let mu_n = FinSetMap {
            dom_size: ttn,
            cod_size: tn,
            table: (0..ttn as u64).map(|tt| m.mu(n, tt) as usize).collect(),
        };
        let tttn = m.size(ttn).expect("checked");
        for ttt in 0..tttn {
            let a = m.mu(n, m.mu(tn, ttt));
            let b = m.mu(n, m.map(&mu_n, ttt));
            if a != b {
                report.law(
                    "associativity",
                    format!("μ∘μT ≠ μ∘Tμ on element {ttt} of T³({n})"),
                );
            }
        }
    }
    Ok(report)
}

/// Checks that `phi : T ⇒ S`, given componentwise, commutes with units and
/// multiplications at size `n` (elementwise on `T n` and `T T n`).
pub fn monad_morphism_spotcheck(
    t: &dyn FiniteMonad,
    s: &dyn FiniteMonad,
    phi: &dyn Fn(usize, u64) -> u64,
    n: usize,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let tn = enumerable_size(t, n)? as usize;
    let ttn = enumerable_size(t, tn)?;
    let sn = enumerable_size(s, n)? as usize;
    for i in 0..n {
        if phi(n, t.eta(n, i)) != s.eta(n, i) {
            report.law(
                "morphism_unit",
                format!("φ(η_T({i})) ≠ η_S({i}) at size {n}"),
            );
        }
    }
    // μ_S ∘ S(φ) ∘ φ_T : T T n → S n
    let phi_n = FinSetMap {
        dom_size: tn,
        cod_size: sn,
        table: (0..tn as u64).map(|x| phi(n, x) as usize).collect(),
    };
    enumerable_size(s, sn)?;
    for tt in 0..ttn {
        let lhs = phi(n, t.mu(n, tt));
        let rhs = s.mu(n, s.map(&phi_n, phi(tn, tt)));
        if lhs != rhs {
            report.law("morphism_mult", format!("fails on element {tt} of T²({n})"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_actions() {
        assert_eq!(CatalogueMonad::Maybe.size(2), Some(3));
        assert_eq!(CatalogueMonad::Powerset.size(2), Some(4));
        assert_eq!(CatalogueMonad::VecF2.size(3), Some(8));
        assert_eq!(instantiate("gset:z3").unwrap().size(2), Some(6));
    }

    #[test]
    fn maybe_tables_at_two() {
        let m = CatalogueMonad::Maybe;
        assert_eq!((0..2).map(|i| m.eta(2, i)).collect::<Vec<_>>(), vec![0, 1]);
        // T T 2 = {Just Just 0, Just Just 1, Just Nothing, Nothing}
        assert_eq!(
            (0..4).map(|tt| m.mu(2, tt)).collect::<Vec<_>>(),
            vec![0, 1, 2, 2]
        );
    }

    #[test]
    fn powerset_mu_is_union() {
        let m = CatalogueMonad::Powerset;
        // {{0}, {1}} over T(2) = {∅, {0}, {1}, {0,1}} has bits 1 and 2
        assert_eq!(m.mu(2, 0b0110), 0b11);
        assert_eq!(m.mu(2, 0b0001), 0);
    }

    #[test]
    fn laws_hold_across_the_catalogue() {
        for m in catalogue() {
            let sizes: &[usize] = match m {
                CatalogueMonad::Maybe => &[0, 1, 2, 3],
                CatalogueMonad::GSet(_) => &[0, 1, 2],
                _ => &[0, 1, 2],
            };
            let r = monad_law_spotcheck(&m, sizes).unwrap();
            assert!(r.is_valid(), "{m}: {r}");
        }
        let r = monad_law_spotcheck(&CatalogueMonad::GSet(Group::s3()), &[1]).unwrap();
        assert!(r.is_valid(), "{r}");
    }

    #[test]
    fn trivial_gset_is_the_identity() {
        let m = instantiate("gset:trivial").unwrap();
        for n in 0..5 {
            assert_eq!(m.size(n), Some(n as u64));
            for i in 0..n {
                assert_eq!(m.eta(n, i), i as u64);
                assert_eq!(m.mu(n, i as u64), i as u64);
            }
        }
    }

    struct BrokenMaybe;

    impl FiniteMonad for BrokenMaybe {
        fn name(&self) -> String {
            "broken".into()
        }
        fn size(&self, n: usize) -> Option<u64> {
            CatalogueMonad::Maybe.size(n)
        }
        fn eta(&self, n: usize, i: usize) -> u64 {
            CatalogueMonad::Maybe.eta(n, i)
        }
        fn map(&self, f: &FinSetMap, t: u64) -> u64 {
            CatalogueMonad::Maybe.map(f, t)
        }
        fn mu(&self, n: usize, tt: u64) -> u64 {
            // Just Nothing goes to Just 0 instead of Nothing
            if n > 0 && tt == n as u64 {
                0
            } else {
                CatalogueMonad::Maybe.mu(n, tt)
            }
        }
    }

    #[test]
    fn corrupted_mu_is_caught() {
        let r = monad_law_spotcheck(&BrokenMaybe, &[1, 2]).unwrap();
        assert!(r.mentions("left_unit"), "{r}");
        assert!(r.to_string().contains("size 1"), "{r}");
    }

    #[test]
    fn oversized_spotcheck_is_refused() {
        let err = monad_law_spotcheck(&CatalogueMonad::Powerset, &[3]).unwrap_err();
        assert!(matches!(err, Error::SizeBound { .. }));
    }

    #[test]
    fn malformed_groups() {
        assert!(matches!(
            Group::new("bad", vec![vec![0, 1], vec![1, 1]]),
            Err(Error::MalformedGroup(_))
        ));
        assert!(matches!(
            Group::new("bad", vec![vec![1, 0], vec![0, 1]]),
            Err(Error::MalformedGroup(_))
        ));
        assert!(matches!(
            instantiate("gset:q8"),
            Err(Error::UnknownMonad(_))
        ));
        assert_eq!(Group::s3().order(), 6);
    }
}
