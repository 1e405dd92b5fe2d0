//! Envelopes of classical morphisms of catalogue monads, where the
//! adjunction is the identity on finite sets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::algebra::{enumerate_algebras, FinAlgebra};
use crate::finset::congruence::{congruence_closure, quotient, Partition};
use crate::finset::map::FinSetMap;
use crate::finset::monads::{enumerable_size, instantiate, CatalogueMonad, FiniteMonad};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    Identity,
    MaybeToPowerset,
    MaybeToVecF2,
    GSetToTrivial,
    GSetToPowerset,
    /// `η_S` viewed as a morphism out of the identity monad `gset:trivial`.
    Unit,
}

/// A morphism of monads `phi : T ⇒ S` from the catalogue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueMorphism {
    pub kind: MorphismKind,
    pub source: CatalogueMonad,
    pub target: CatalogueMonad,
}

impl CatalogueMorphism {
    pub fn name(&self) -> &'static str {
        match self.kind {
            MorphismKind::Identity => "identity",
            MorphismKind::MaybeToPowerset => "maybe_to_powerset",
            MorphismKind::MaybeToVecF2 => "maybe_to_vecf2",
            MorphismKind::GSetToTrivial => "gset_to_trivial",
            MorphismKind::GSetToPowerset => "gset_to_powerset",
            MorphismKind::Unit => "unit",
        }
    }

    /// `phi_n` on one element of `T(n)`.
    pub fn component(&self, n: usize, t: u64) -> u64 {
        match self.kind {
            MorphismKind::Identity => t,
            MorphismKind::MaybeToPowerset | MorphismKind::MaybeToVecF2 => {
                if t == n as u64 {
                    0
                } else {
                    1 << t
                }
            }
            MorphismKind::GSetToTrivial => t % n as u64,
            MorphismKind::GSetToPowerset => 1 << (t % n as u64),
            MorphismKind::Unit => self.target.eta(n, t as usize),
        }
    }
}

/// Looks up `name` as a morphism `source ⇒ target`.
pub fn morphism(
    name: &str,
    source: &CatalogueMonad,
    target: &CatalogueMonad,
) -> Result<CatalogueMorphism> {
    use CatalogueMonad::*;
    let trivial = |m: &CatalogueMonad| matches!(m, GSet(g) if g.order() == 1);
    let kind = match (name, source, target) {
        ("identity", s, t) if s == t => MorphismKind::Identity,
        ("maybe_to_powerset", Maybe, Powerset) => MorphismKind::MaybeToPowerset,
        ("maybe_to_vecf2", Maybe, VecF2) => MorphismKind::MaybeToVecF2,
        ("gset_to_trivial", GSet(_), t) if trivial(t) => MorphismKind::GSetToTrivial,
        ("gset_to_powerset", GSet(_), Powerset) => MorphismKind::GSetToPowerset,
        ("unit", s, _) if trivial(s) => MorphismKind::Unit,
        _ => {
            return Err(Error::UnknownMorphism(format!(
                "{name}: {source} ⇒ {target}"
            )))
        }
    };
    Ok(CatalogueMorphism {
        kind,
        source: source.clone(),
        target: target.clone(),
    })
}

/// The default registry: every named morphism at representative monads.
pub fn registry() -> Vec<CatalogueMorphism> {
    let m = |id: &str| instantiate(id).expect("catalogue id");
    let mut out = Vec::new();
    for id in ["maybe", "powerset", "gset:z2", "vecf2"] {
        out.push(morphism("identity", &m(id), &m(id)).expect("registry"));
    }
    out.push(morphism("maybe_to_powerset", &m("maybe"), &m("powerset")).expect("registry"));
    out.push(morphism("maybe_to_vecf2", &m("maybe"), &m("vecf2")).expect("registry"));
    out.push(morphism("gset_to_trivial", &m("gset:z2"), &m("gset:trivial")).expect("registry"));
    out.push(morphism("gset_to_trivial", &m("gset:z3"), &m("gset:trivial")).expect("registry"));
    out.push(morphism("gset_to_powerset", &m("gset:z2"), &m("powerset")).expect("registry"));
    for id in ["maybe", "powerset", "vecf2"] {
        out.push(morphism("unit", &m("gset:trivial"), &m(id)).expect("registry"));
    }
    out
}

#[derive(Clone, Debug)]
pub struct FinEnvelope {
    /// The envelope as a quotient of the free `S`-algebra on the carrier.
    pub algebra: FinAlgebra,
    pub projection: FinSetMap,
    pub congruence: Partition,
    /// Generating pairs `(phi(t), η_S(λ t))` for `t` in `T(carrier)`.
    pub seeds: Vec<(usize, usize)>,
}

/// The envelope of the `T`-algebra `x`: the coequalizer in `S`-algebras of
/// `μ_S ∘ S(phi)` and `S(λ)` out of `S T x`, computed as a quotient of
/// `S x`. Both maps are determined by their values on the generators
/// `η_S(t)`, which give the seeds. The common section `S(η_T)` is checked
/// on the generators `η_S(i)` of `S x` before quotienting.
pub fn envelope_finset(phi: &CatalogueMorphism, x: &FinAlgebra) -> Result<FinEnvelope> {
    if x.monad() != &phi.source {
        return Err(Error::CategoryMismatch(format!(
            "algebra for {} given to a morphism out of {}",
            x.monad(),
            phi.source
        )));
    }
    let (t, s) = (&phi.source, &phi.target);
    let n = x.carrier();
    let free = FinAlgebra::free(s.clone(), n)?;
    let tn = enumerable_size(t, n)?;
    let mut report = ValidationReport::new();
    for i in 0..n {
        let gen = s.eta(n, i);
        if phi.component(n, t.eta(n, i)) != gen {
            report.law("section_u", format!("u(s(η_S({i}))) ≠ η_S({i})"));
        }
        if s.eta(n, x.act(t.eta(n, i))?) != gen {
            report.law("section_v", format!("v(s(η_S({i}))) ≠ η_S({i})"));
        }
    }
    if !report.is_valid() {
        return Err(Error::invalid("envelope pair", report));
    }
    let seeds: Vec<(usize, usize)> = (0..tn)
        .map(|e| Ok((phi.component(n, e) as usize, s.eta(n, x.act(e)?) as usize)))
        .collect::<Result<_>>()?;
    let congruence = congruence_closure(&free, &seeds);
    Ok(FinEnvelope {
        algebra: quotient(&free, &congruence),
        projection: congruence.projection(),
        congruence,
        seeds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub carrier: usize,
    pub structure: Vec<usize>,
    pub envelope_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// Two algebras on the same carrier have envelopes of different sizes,
    /// so no functor `Q` with envelope `≅ Q` of the carrier exists.
    Refuted {
        first: AlgebraSummary,
        second: AlgebraSummary,
    },
    NotRefutedAtBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub morphism: String,
    pub source: String,
    pub target: String,
    pub max_size: usize,
    pub algebras_checked: usize,
    #[serde(flatten)]
    pub verdict: ProbeVerdict,
}

/// Compares envelope sizes across all `T`-algebras with carriers up to
/// `max_size`. A mismatch on one carrier refutes the PBW property; absence
/// of a mismatch is reported only as not refuted at this bound.
pub fn pbw_probe(phi: &CatalogueMorphism, max_size: usize) -> Result<ProbeReport> {
    let mut checked = 0;
    let mut verdict = ProbeVerdict::NotRefutedAtBound;
    'sizes: for n in 0..=max_size {
        let mut first: Option<AlgebraSummary> = None;
        for x in enumerate_algebras(&phi.source, n)? {
            checked += 1;
            let summary = AlgebraSummary {
                carrier: n,
                structure: x.table()?,
                envelope_size: envelope_finset(phi, &x)?.algebra.carrier(),
            };
            match &first {
                None => first = Some(summary),
                Some(f) if f.envelope_size != summary.envelope_size => {
                    verdict = ProbeVerdict::Refuted {
                        first: f.clone(),
                        second: summary,
                    };
                    break 'sizes;
                }
                Some(_) => {}
            }
        }
    }
    Ok(ProbeReport {
        morphism: phi.name().to_string(),
        source: phi.source.to_string(),
        target: phi.target.to_string(),
        max_size,
        algebras_checked: checked,
        verdict,
    })
}

/// For the free `T`-algebra on `y`, the envelope size and `|S y|`, which
/// must agree.
pub fn free_envelope_sizes(phi: &CatalogueMorphism, y: usize) -> Result<(usize, u64)> {
    let x = FinAlgebra::free(phi.source.clone(), y)?;
    let env = envelope_finset(phi, &x)?;
    Ok((env.algebra.carrier(), phi.target.checked_size(y)?))
}

/// The split coequalizer relations for an algebra `x` with `Q` the
/// identity: `ε = η_{Tx}`, `γ = μ_x`, `δ = T(λ)`, `α = λ`, `β = η_x`,
/// checked elementwise.
pub fn split_relations(x: &FinAlgebra) -> Result<ValidationReport> {
    let m = x.monad();
    let n = x.carrier();
    let lam_table = x.table()?;
    let tn = lam_table.len();
    let ttn = enumerable_size(m, tn)?;
    let lam = FinSetMap {
        dom_size: tn,
        cod_size: n,
        table: lam_table,
    };
    let mut report = ValidationReport::new();
    for i in 0..n {
        if lam.apply(m.eta(n, i) as usize) != i {
            report.law("alpha_beta_eq_id", format!("fails at {i}"));
        }
    }
    for e in 0..tn as u64 {
        let eps = m.eta(tn, e as usize);
        if m.mu(n, eps) != e {
            report.law("gamma_epsilon_eq_id", format!("fails at {e}"));
        }
        if m.map(&lam, eps) != m.eta(n, lam.apply(e as usize)) {
            report.law("delta_epsilon_eq_beta_alpha", format!("fails at {e}"));
        }
    }
    for tt in 0..ttn {
        if lam.apply(m.mu(n, tt) as usize) != lam.apply(m.map(&lam, tt) as usize) {
            report.law("alpha_gamma_eq_alpha_delta", format!("fails at {tt}"));
        }
    }
    Ok(report)
}
