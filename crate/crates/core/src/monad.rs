//! Monads on finite categories, their algebras, and the Eilenberg-Moore
//! category with its free–forgetful adjunction.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{
    missing_reflexive_coequalizer, validate_functor, validate_nat_trans, AdjunctionData,
    CategoryBuilder, FinCategory, FunctorData, Mor, NatTransData, Obj,
};
use crate::report::ValidationReport;

/// A monad `(endo, mu, eta)` on `endo.source()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadData {
    pub endo: FunctorData,
    pub mu: NatTransData,
    pub eta: NatTransData,
}

impl MonadData {
    pub fn base(&self) -> &Arc<FinCategory> {
        self.endo.source()
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let id = FunctorData::identity(c);
        let t = NatTransData::identity(&id);
        Self {
            endo: id,
            mu: t.clone(),
            eta: t,
        }
    }

    /// Object part of the endofunctor.
    pub fn on_obj(&self, x: Obj) -> Obj {
        self.endo.obj(x)
    }

    pub fn on_mor(&self, f: Mor) -> Mor {
        self.endo.mor(f)
    }

    pub fn mu_at(&self, x: Obj) -> Mor {
        self.mu.at(x)
    }

    pub fn eta_at(&self, x: Obj) -> Mor {
        self.eta.at(x)
    }

    /// The two algebra laws for a candidate structure map `λ : S x → x`.
    pub fn is_algebra(&self, x: Obj, structure: Mor) -> bool {
        let c = self.base();
        c.dom(structure) == self.on_obj(x)
            && c.cod(structure) == x
            && c.comp(structure, self.eta_at(x)) == c.id(x)
            && c.comp(structure, self.mu_at(x)) == c.comp(structure, self.on_mor(structure))
    }

    /// Whether `f` is a map of algebras `a → b`, i.e. `λ_b ∘ S f = f ∘ λ_a`.
    pub fn is_algebra_map(&self, a: &AlgebraObject, b: &AlgebraObject, f: Mor) -> bool {
        let c = self.base();
        c.dom(f) == a.carrier
            && c.cod(f) == b.carrier
            && c.comp(b.structure, self.on_mor(f)) == c.comp(f, a.structure)
    }
}

/// Checks the shapes of `mu` and `eta`, their naturality, associativity
/// `μ ∘ Sμ = μ ∘ μS` and both unit laws `μ ∘ Sη = id = μ ∘ ηS`.
pub fn validate_monad(m: &MonadData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let c = m.base().clone();
    if !crate::fincat::same_category(m.endo.target(), &c) {
        report.structural(
            "endofunctor",
            "the underlying functor is not an endofunctor",
        );
        return report;
    }
    report.extend_scoped("endo", validate_functor(&m.endo));
    if !report.is_valid() {
        return report;
    }
    let ss = m.endo.after(&m.endo).expect("endofunctor");
    if *m.mu.source() != ss || *m.mu.target() != m.endo {
        report.structural("mu_shape", "multiplication is not a transformation S∘S ⇒ S");
    }
    if *m.eta.source() != FunctorData::identity(c.clone()) || *m.eta.target() != m.endo {
        report.structural("eta_shape", "unit is not a transformation 1 ⇒ S");
    }
    if !report.is_valid() {
        return report;
    }
    report.extend_scoped("mu", validate_nat_trans(&m.mu));
    report.extend_scoped("eta", validate_nat_trans(&m.eta));
    for x in c.objects() {
        let mu = m.mu_at(x);
        let name = c.obj_name(x);
        if c.comp(mu, m.on_mor(mu)) != c.comp(mu, m.mu_at(m.on_obj(x))) {
            report.law("associativity", format!("μ ∘ Sμ ≠ μ ∘ μS at {name}"));
        }
        if c.comp(mu, m.on_mor(m.eta_at(x))) != c.id(m.on_obj(x)) {
            report.law("right_unit", format!("μ ∘ Sη ≠ id at {name}"));
        }
        if c.comp(mu, m.eta_at(m.on_obj(x))) != c.id(m.on_obj(x)) {
            report.law("left_unit", format!("μ ∘ ηS ≠ id at {name}"));
        }
    }
    report
}

/// An algebra `(carrier, λ : S carrier → carrier)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlgebraObject {
    pub carrier: Obj,
    pub structure: Mor,
}

impl fmt::Display for AlgebraObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.carrier, self.structure)
    }
}

/// Every algebra of `m`, ordered by carrier and then structure map.
pub fn enumerate_algebras(m: &MonadData) -> Vec<AlgebraObject> {
    let c = m.base();
    let mut out = Vec::new();
    for x in c.objects() {
        for &l in c.hom(m.on_obj(x), x) {
            if m.is_algebra(x, l) {
                out.push(AlgebraObject {
                    carrier: x,
                    structure: l,
                });
            }
        }
    }
    out
}

/// The Eilenberg-Moore category of a monad with the forgetful functor
/// `pi`, the free functor `rho` and the adjunction `rho ⊣ pi`.
#[derive(Clone, Debug)]
pub struct EMBundle {
    pub monad: MonadData,
    pub em: Arc<FinCategory>,
    pub pi: FunctorData,
    pub rho: FunctorData,
    pub adj: AdjunctionData,
    algebras: Vec<AlgebraObject>,
    algebra_index: HashMap<AlgebraObject, Obj>,
    lifts: HashMap<(Obj, Obj, Mor), Mor>,
}

impl EMBundle {
    pub fn algebras(&self) -> &[AlgebraObject] {
        &self.algebras
    }

    pub fn algebra(&self, o: Obj) -> AlgebraObject {
        self.algebras[o.0]
    }

    pub fn find(&self, a: &AlgebraObject) -> Option<Obj> {
        self.algebra_index.get(a).copied()
    }

    /// The algebra map `src → tgt` with underlying morphism `f`, if `f` is
    /// one.
    pub fn lift(&self, src: Obj, tgt: Obj, f: Mor) -> Option<Mor> {
        self.lifts.get(&(src, tgt, f)).copied()
    }

    pub fn underlying(&self, m: Mor) -> Mor {
        self.pi.mor(m)
    }

    /// The free algebra `(S x, μ_x)` as an object of the EM category.
    pub fn free(&self, x: Obj) -> Obj {
        self.rho.obj(x)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.monad.base()
    }
}

/// Builds the Eilenberg-Moore category of a valid monad. Objects are named
/// `(carrier,structure)` and morphisms `f:(src)->(tgt)`.
pub fn em_category(m: &MonadData) -> Result<EMBundle> {
    let report = validate_monad(m);
    if !report.is_valid() {
        return Err(Error::invalid("monad", report));
    }
    let c = m.base().clone();
    let algebras = enumerate_algebras(m);
    let mut b = CategoryBuilder::new(&format!("{}^{}", c.name(), "S"));
    let mut algebra_index = HashMap::new();
    let mut names = Vec::new();
    for a in &algebras {
        let name = format!("({},{})", c.obj_name(a.carrier), c.mor_name(a.structure));
        let o = b.bare_object(&name);
        algebra_index.insert(*a, o);
        names.push(name);
    }
    let mut lifts = HashMap::new();
    let mut underlying = Vec::new();
    for (i, a) in algebras.iter().enumerate() {
        for (j, t) in algebras.iter().enumerate() {
            for &f in c.hom(a.carrier, t.carrier) {
                if m.is_algebra_map(a, t, f) {
                    let name = format!("{}:{}->{}", c.mor_name(f), names[i], names[j]);
                    let em_mor = b.morphism(&name, Obj(i), Obj(j));
                    lifts.insert((Obj(i), Obj(j), f), em_mor);
                    underlying.push(f);
                    if i == j && f == c.id(a.carrier) {
                        b.set_identity(Obj(i), em_mor);
                    }
                }
            }
        }
    }
    let by_src: Vec<Vec<(Mor, Obj, Mor)>> = {
        let mut v = vec![Vec::new(); algebras.len()];
        for (&(s, t, f), &em_mor) in &lifts {
            v[s.0].push((em_mor, t, f));
        }
        v
    };
    for (&(s, t, f), &first) in &lifts {
        for &(second, u, g) in &by_src[t.0] {
            let gf = c.comp(g, f);
            b.set_composite(second, first, lifts[&(s, u, gf)]);
        }
    }
    let em = Arc::new(b.build()?);

    let pi = FunctorData::new(
        em.clone(),
        c.clone(),
        algebras.iter().map(|a| a.carrier).collect(),
        underlying,
    )?;
    let free_obj: Vec<Obj> = c
        .objects()
        .map(|x| {
            algebra_index[&AlgebraObject {
                carrier: m.on_obj(x),
                structure: m.mu_at(x),
            }]
        })
        .collect();
    let free_mor: Vec<Mor> = c
        .morphisms()
        .map(|f| lifts[&(free_obj[c.dom(f).0], free_obj[c.cod(f).0], m.on_mor(f))])
        .collect();
    let rho = FunctorData::new(c.clone(), em.clone(), free_obj.clone(), free_mor)?;
    let unit = NatTransData::new(
        FunctorData::identity(c.clone()),
        pi.after(&rho)?,
        c.objects().map(|x| m.eta_at(x)).collect(),
    )?;
    let counit = NatTransData::new(
        rho.after(&pi)?,
        FunctorData::identity(em.clone()),
        algebras
            .iter()
            .enumerate()
            .map(|(i, a)| lifts[&(free_obj[a.carrier.0], Obj(i), a.structure)])
            .collect(),
    )?;
    let adj = AdjunctionData {
        left: rho.clone(),
        right: pi.clone(),
        unit,
        counit,
    };
    Ok(EMBundle {
        monad: m.clone(),
        em,
        pi,
        rho,
        adj,
        algebras,
        algebra_index,
        lifts,
    })
}

/// True iff every reflexive pair of the EM category has a coequalizer.
pub fn check_reflexive_coequalizers(b: &EMBundle) -> bool {
    missing_reflexive_coequalizer(&b.em).is_none()
}

/// Enumerates every monad structure on `c`: all endofunctors with all
/// natural `mu`, `eta` satisfying the monad laws, in canonical order.
pub fn enumerate_monads(c: &Arc<FinCategory>) -> Vec<MonadData> {
    use crate::fincat::{enumerate_functors, enumerate_nat_trans, ComponentFilter};
    let id = FunctorData::identity(c.clone());
    let mut out = Vec::new();
    for s in enumerate_functors(c, c) {
        let ss = s.after(&s).expect("endofunctor");
        let etas: Vec<_> = enumerate_nat_trans(&id, &s, ComponentFilter::Any)
            .expect("parallel")
            .collect();
        if etas.is_empty() {
            continue;
        }
        for mu in enumerate_nat_trans(&ss, &s, ComponentFilter::Any).expect("parallel") {
            for eta in &etas {
                let m = MonadData {
                    endo: s.clone(),
                    mu: mu.clone(),
                    eta: eta.clone(),
                };
                if validate_monad(&m).is_valid() {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Natural transformations `phi : T ⇒ S` satisfying the two morphism of
/// monads diagrams: `phi ∘ μ_T = μ_S ∘ S phi ∘ phi T` and
/// `phi ∘ η_T = η_S`.
pub fn validate_monad_morphism(
    s: &MonadData,
    t: &MonadData,
    phi: &NatTransData,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    if *phi.source() != t.endo || *phi.target() != s.endo {
        report.structural("phi_shape", "phi is not a transformation T ⇒ S");
        return report;
    }
    report.extend_scoped("phi", validate_nat_trans(phi));
    let c = s.base();
    for x in c.objects() {
        let lhs = c.comp(phi.at(x), t.mu_at(x));
        let rhs = c.comp_all(&[s.mu_at(x), s.on_mor(phi.at(x)), phi.at(t.on_obj(x))]);
        if lhs != rhs {
            report.law(
                "morphism_mult_square",
                format!("fails at {}", c.obj_name(x)),
            );
        }
        if c.comp(phi.at(x), t.eta_at(x)) != s.eta_at(x) {
            report.law(
                "morphism_unit_triangle",
                format!("fails at {}", c.obj_name(x)),
            );
        }
    }
    report
}
