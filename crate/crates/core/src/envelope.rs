//! The adjunction between algebra categories induced by a morphism of
//! monads along an adjunction. The right adjoint lifts `F` directly; the
//! left adjoint (the envelope) is a reflexive coequalizer of free
//! `S`-algebras.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{
    coequalizer, unique_factorization, validate_functor, FinCategory, FunctorData, Mor, Obj,
};
use crate::monad::{check_reflexive_coequalizers, em_category, AlgebraObject, EMBundle};
use crate::psimorph::{validate_psi_morphism, PsiMorphismData};
use crate::report::ValidationReport;

/// The pair and section whose coequalizer is the envelope of one algebra,
/// together with the chosen coequalizer. All morphisms live in the EM
/// category of `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoequalizerWitness {
    /// The `T`-algebra, as an object of the EM category of `T`.
    pub algebra: Obj,
    pub u: Mor,
    pub v: Mor,
    pub section: Mor,
    pub target: Obj,
    pub map: Mor,
}

#[derive(Clone, Debug)]
pub struct EnvelopeInstance {
    pub p: PsiMorphismData,
    pub em_s: EMBundle,
    pub em_t: EMBundle,
    pub hat_phi_f: FunctorData,
    pub hat_phi_g: FunctorData,
    pub witnesses: Vec<CoequalizerWitness>,
}

impl EnvelopeInstance {
    pub fn witness(&self, x: Obj) -> &CoequalizerWitness {
        &self.witnesses[x.0]
    }

    /// Underlying object in `C` of the envelope of the algebra `x`.
    pub fn envelope_carrier(&self, x: Obj) -> Obj {
        self.em_s.algebra(self.hat_phi_g.obj(x)).carrier
    }
}

/// `(F y, F(λ_y) ∘ phi_F(y))` for an `S`-algebra `y`.
pub fn hat_phi_f(p: &PsiMorphismData, y: &AlgebraObject) -> AlgebraObject {
    let (d, f) = (p.lower(), p.right());
    AlgebraObject {
        carrier: f.obj(y.carrier),
        structure: d.comp(f.mor(y.structure), p.phi_f.at(y.carrier)),
    }
}

/// `u = μ_S ∘ S(phi_G x)`, `v = S G(λ_x)` and the section `S G(η_T)`, as
/// maps between free `S`-algebras.
pub fn reflexive_pair(
    p: &PsiMorphismData,
    em_s: &EMBundle,
    x: &AlgebraObject,
) -> Result<(Mor, Mor, Mor)> {
    let (c, g, s, t) = (p.upper(), p.left(), &p.s, &p.t);
    let x0 = x.carrier;
    let gx = g.obj(x0);
    let gtx = g.obj(t.on_obj(x0));
    let (free_gx, free_gtx) = (em_s.free(gx), em_s.free(gtx));
    let u0 = c.comp(s.mu_at(gx), s.on_mor(p.phi_g.at(x0)));
    let v0 = s.on_mor(g.mor(x.structure));
    let section0 = s.on_mor(g.mor(t.eta_at(x0)));
    let lift = |src, tgt, m: Mor, what: &str| {
        em_s.lift(src, tgt, m).ok_or_else(|| {
            Error::Factorization(format!(
                "{what} = {} is not a map of S-algebras",
                c.mor_name(m)
            ))
        })
    };
    Ok((
        lift(free_gtx, free_gx, u0, "u")?,
        lift(free_gtx, free_gx, v0, "v")?,
        lift(free_gx, free_gtx, section0, "section")?,
    ))
}

/// Envelope of one algebra: the chosen coequalizer of its reflexive pair.
pub fn hat_phi_g(p: &PsiMorphismData, em_s: &EMBundle, x: &AlgebraObject) -> Result<(Obj, Mor)> {
    let (u, v, _) = reflexive_pair(p, em_s, x)?;
    coequalizer(&em_s.em, u, v)?.ok_or_else(|| Error::MissingCoequalizer {
        category: em_s.em.name().to_string(),
        u: em_s.em.mor_name(u).to_string(),
        v: em_s.em.mor_name(v).to_string(),
    })
}

/// Validates `p`, builds both EM categories and both lifted functors.
/// Refuses to run unless every reflexive pair of `S`-algebras has a
/// coequalizer.
pub fn build_envelope(p: &PsiMorphismData) -> Result<EnvelopeInstance> {
    let report = validate_psi_morphism(p);
    if !report.is_valid() {
        return Err(Error::invalid("psi-morphism", report));
    }
    let em_s = em_category(&p.s)?;
    let em_t = em_category(&p.t)?;
    if !check_reflexive_coequalizers(&em_s) {
        let (u, v) = crate::fincat::missing_reflexive_coequalizer(&em_s.em).expect("gate failed");
        return Err(Error::MissingCoequalizer {
            category: em_s.em.name().to_string(),
            u: em_s.em.mor_name(u).to_string(),
            v: em_s.em.mor_name(v).to_string(),
        });
    }
    let hat_phi_f = build_hat_phi_f(p, &em_s, &em_t)?;
    let (hat_phi_g, witnesses) = build_hat_phi_g(p, &em_s, &em_t)?;
    Ok(EnvelopeInstance {
        p: p.clone(),
        em_s,
        em_t,
        hat_phi_f,
        hat_phi_g,
        witnesses,
    })
}

fn build_hat_phi_f(p: &PsiMorphismData, em_s: &EMBundle, em_t: &EMBundle) -> Result<FunctorData> {
    let f = p.right();
    let obj_map = em_s
        .algebras()
        .iter()
        .map(|y| {
            let lifted = hat_phi_f(p, y);
            em_t.find(&lifted).ok_or_else(|| {
                Error::Factorization(format!("F({y}) = {lifted} is not a T-algebra"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let em = &em_s.em;
    let mor_map = em
        .morphisms()
        .map(|m| {
            let image = f.mor(em_s.underlying(m));
            em_t.lift(obj_map[em.dom(m).0], obj_map[em.cod(m).0], image)
                .ok_or_else(|| {
                    Error::Factorization(format!(
                        "F({}) is not a map of T-algebras",
                        em.mor_name(m)
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    FunctorData::new(em.clone(), em_t.em.clone(), obj_map, mor_map)
}

fn build_hat_phi_g(
    p: &PsiMorphismData,
    em_s: &EMBundle,
    em_t: &EMBundle,
) -> Result<(FunctorData, Vec<CoequalizerWitness>)> {
    let g = p.left();
    let mut witnesses = Vec::new();
    for (i, x) in em_t.algebras().iter().enumerate() {
        let (u, v, section) = reflexive_pair(p, em_s, x)?;
        let (target, map) = hat_phi_g(p, em_s, x)?;
        witnesses.push(CoequalizerWitness {
            algebra: Obj(i),
            u,
            v,
            section,
            target,
            map,
        });
    }
    let obj_map = witnesses.iter().map(|w| w.target).collect();
    let (t_em, s_em) = (&em_t.em, &em_s.em);
    let mor_map = t_em
        .morphisms()
        .map(|h| {
            let (src, tgt) = (&witnesses[t_em.dom(h).0], &witnesses[t_em.cod(h).0]);
            let free_h = em_s.rho.mor(g.mor(em_t.underlying(h)));
            unique_factorization(s_em, src.map, s_em.comp(tgt.map, free_h))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        FunctorData::new(t_em.clone(), s_em.clone(), obj_map, mor_map)?,
        witnesses,
    ))
}

/// Both section identities, the coequalizing equation and functoriality
/// of both lifted functors.
pub fn check_envelope_witnesses(inst: &EnvelopeInstance) -> ValidationReport {
    let mut report = ValidationReport::new();
    let em = &inst.em_s.em;
    for w in &inst.witnesses {
        let name = inst.em_t.em.obj_name(w.algebra);
        let id = em.id(em.cod(w.u));
        if em.comp(w.u, w.section) != id {
            report.law("section_u", format!("u ∘ section ≠ id for {name}"));
        }
        if em.comp(w.v, w.section) != id {
            report.law("section_v", format!("v ∘ section ≠ id for {name}"));
        }
        if em.comp(w.map, w.u) != em.comp(w.map, w.v) {
            report.law(
                "coequalizes",
                format!("chosen map does not coequalize for {name}"),
            );
        }
    }
    report.extend_scoped("hat_phi_F", validate_functor(&inst.hat_phi_f));
    report.extend_scoped("hat_phi_G", validate_functor(&inst.hat_phi_g));
    report
}

/// `π_T ∘ hat_phi_F = F ∘ π_S` and `hat_phi_G ∘ ρ_T = ρ_S ∘ G`, compared
/// as tables.
pub fn check_envelope_squares(inst: &EnvelopeInstance) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (g, f) = (inst.p.left(), inst.p.right());
    let lhs = inst.em_t.pi.after(&inst.hat_phi_f).expect("composable");
    let rhs = f.after(&inst.em_s.pi).expect("composable");
    compare_functors(&mut report, "right_square", &lhs, &rhs);
    let lhs = inst.hat_phi_g.after(&inst.em_t.rho).expect("composable");
    let rhs = inst.em_s.rho.after(g).expect("composable");
    compare_functors(&mut report, "left_square", &lhs, &rhs);
    report
}

fn compare_functors(
    report: &mut ValidationReport,
    check: &str,
    lhs: &FunctorData,
    rhs: &FunctorData,
) {
    let src: &Arc<FinCategory> = lhs.source();
    if let Some(o) = src.objects().find(|&o| lhs.obj(o) != rhs.obj(o)) {
        report.law(
            check,
            format!("functors differ on object {}", src.obj_name(o)),
        );
    } else if let Some(m) = src.morphisms().find(|&m| lhs.mor(m) != rhs.mor(m)) {
        report.law(
            check,
            format!("functors differ on morphism {}", src.mor_name(m)),
        );
    }
}

/// The hom-bijection `S-alg(hat_phi_G x, y) ≅ T-alg(x, hat_phi_F y)`.
pub struct HatBijection<'a> {
    inst: &'a EnvelopeInstance,
}

impl<'a> HatBijection<'a> {
    pub fn new(inst: &'a EnvelopeInstance) -> Self {
        Self { inst }
    }

    /// For `beta : x → hat_phi_F y`, the unique `alpha` with
    /// `alpha ∘ e = λ_y ∘ S(beta^L)`.
    pub fn forward(&self, x: Obj, y: Obj, beta: Mor) -> Result<Mor> {
        let inst = self.inst;
        let (c, s, adj) = (inst.p.upper(), &inst.p.s, &inst.p.adj);
        let yalg = inst.em_s.algebra(y);
        let beta_l = adj.left_transpose(yalg.carrier, inst.em_t.underlying(beta))?;
        let target0 = c.comp(yalg.structure, s.on_mor(beta_l));
        let w = inst.witness(x);
        let src = inst.em_s.em.dom(w.map);
        let target = inst.em_s.lift(src, y, target0).ok_or_else(|| {
            Error::Factorization("λ_y ∘ S(β^L) is not a map of S-algebras".into())
        })?;
        unique_factorization(&inst.em_s.em, w.map, target)
    }

    /// For `alpha : hat_phi_G x → y`, the right transpose of
    /// `alpha ∘ e ∘ η_S : G x → y`.
    pub fn backward(&self, x: Obj, y: Obj, alpha: Mor) -> Result<Mor> {
        let inst = self.inst;
        let (c, s, adj) = (inst.p.upper(), &inst.p.s, &inst.p.adj);
        let xalg = inst.em_t.algebra(x);
        let gx = inst.p.left().obj(xalg.carrier);
        let w = inst.witness(x);
        let composite = c.comp_all(&[
            inst.em_s.underlying(alpha),
            inst.em_s.underlying(w.map),
            s.eta_at(gx),
        ]);
        let transposed = adj.right_transpose(xalg.carrier, composite)?;
        inst.em_t
            .lift(x, inst.hat_phi_f.obj(y), transposed)
            .ok_or_else(|| Error::Factorization("transposed map is not a map of T-algebras".into()))
    }
}

/// Builds both directions of the hom-bijection for every pair of algebras
/// and checks: equal cardinalities, mutual inverses, naturality in each
/// variable, and that the underlying map of `forward(beta) ∘ e ∘ η_S` is
/// the left transpose of `beta`.
pub fn hat_adjunction_check(inst: &EnvelopeInstance) -> ValidationReport {
    let mut report = ValidationReport::new();
    let bij = HatBijection::new(inst);
    let (s_em, t_em) = (&inst.em_s.em, &inst.em_t.em);
    let c = inst.p.upper();
    for x in t_em.objects() {
        let gx_env = inst.hat_phi_g.obj(x);
        let xalg = inst.em_t.algebra(x);
        for y in s_em.objects() {
            let fy = inst.hat_phi_f.obj(y);
            let at = format!("x = {}, y = {}", t_em.obj_name(x), s_em.obj_name(y));
            let s_hom = s_em.hom(gx_env, y);
            let t_hom = t_em.hom(x, fy);
            if s_hom.len() != t_hom.len() {
                report.law(
                    "hom_cardinality",
                    format!(
                        "{} maps out of the envelope but {} into the lift, at {at}",
                        s_hom.len(),
                        t_hom.len()
                    ),
                );
            }
            for &beta in t_hom {
                let alpha = match bij.forward(x, y, beta) {
                    Ok(a) => a,
                    Err(e) => {
                        report.law("forward", format!("{e} at {at}"));
                        continue;
                    }
                };
                if bij.backward(x, y, alpha).ok() != Some(beta) {
                    report.law(
                        "round_trip",
                        format!(
                            "backward(forward β) ≠ β for β = {} at {at}",
                            t_em.mor_name(beta)
                        ),
                    );
                }
                let w = inst.witness(x);
                let gx = inst.p.left().obj(xalg.carrier);
                let under = c.comp_all(&[
                    inst.em_s.underlying(alpha),
                    inst.em_s.underlying(w.map),
                    inst.p.s.eta_at(gx),
                ]);
                let beta_l = inst
                    .p
                    .adj
                    .left_transpose(inst.em_s.algebra(y).carrier, inst.em_t.underlying(beta));
                if beta_l.ok() != Some(under) {
                    report.law(
                        "underlying_transpose",
                        format!("β = {} at {at}", t_em.mor_name(beta)),
                    );
                }
                // naturality in x: forward(β ∘ h) = forward(β) ∘ hat_phi_G(h)
                for x2 in t_em.objects() {
                    for &h in t_em.hom(x2, x) {
                        let lhs = bij.forward(x2, y, t_em.comp(beta, h)).ok();
                        let rhs = s_em.comp(alpha, inst.hat_phi_g.mor(h));
                        if lhs != Some(rhs) {
                            report.law(
                                "natural_in_algebra",
                                format!("h = {}, {at}", t_em.mor_name(h)),
                            );
                        }
                    }
                }
                // naturality in y: forward(hat_phi_F(k) ∘ β) = k ∘ forward(β)
                for y2 in s_em.objects() {
                    for &k in s_em.hom(y, y2) {
                        let lhs = bij
                            .forward(x, y2, t_em.comp(inst.hat_phi_f.mor(k), beta))
                            .ok();
                        if lhs != Some(s_em.comp(k, alpha)) {
                            report
                                .law("natural_in_lift", format!("k = {}, {at}", s_em.mor_name(k)));
                        }
                    }
                }
            }
            for &alpha in s_hom {
                let back = bij.backward(x, y, alpha).and_then(|b| bij.forward(x, y, b));
                if back.ok() != Some(alpha) {
                    report.law(
                        "round_trip",
                        format!(
                            "forward(backward α) ≠ α for α = {} at {at}",
                            s_em.mor_name(alpha)
                        ),
                    );
                }
            }
        }
    }
    report
}
