//! Right modules over a monad `T` on `D` with values in `C`, free modules,
//! and the two deciders compared by the harness: freeness of the module
//! `S∘G`, and the PBW property of the envelope.

use std::sync::Arc;

use serde::Serialize;

use crate::envelope::EnvelopeInstance;
use crate::error::{Error, Result};
use crate::fincat::{
    enumerate_functors, enumerate_nat_trans, is_coequalizer, natural_iso_search, validate_functor,
    validate_nat_trans, ComponentFilter, Direction, FinCategory, FunctorData, Mor, NatTransData,
    Obj,
};
use crate::monad::{AlgebraObject, MonadData};
use crate::psimorph::{validate_psi_morphism, PsiMorphismData};
use crate::report::ValidationReport;

/// A functor `p : D → C` with an action `nu : p∘T ⇒ p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TModuleData {
    pub p: FunctorData,
    pub nu: NatTransData,
}

/// Shape, naturality, `ν ∘ νT = ν ∘ Pμ` and `ν ∘ Pη = id`.
pub fn validate_tmodule(m: &TModuleData, t: &MonadData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let pt = match m.p.after(&t.endo) {
        Ok(pt) => pt,
        Err(e) => {
            report.structural("module_shape", e.to_string());
            return report;
        }
    };
    if *m.nu.source() != pt || *m.nu.target() != m.p {
        report.structural("module_shape", "action is not a transformation P∘T ⇒ P");
        return report;
    }
    report.extend_scoped("functor", validate_functor(&m.p));
    report.extend_scoped("action", validate_nat_trans(&m.nu));
    if !report.is_valid() {
        return report;
    }
    let (d, c) = (m.p.source(), m.p.target());
    for x in d.objects() {
        let nu = m.nu.at(x);
        if c.comp(nu, m.nu.at(t.on_obj(x))) != c.comp(nu, m.p.mor(t.mu_at(x))) {
            report.law("action_square", format!("fails at {}", d.obj_name(x)));
        }
        if c.comp(nu, m.p.mor(t.eta_at(x))) != c.id(m.p.obj(x)) {
            report.law("action_unit", format!("fails at {}", d.obj_name(x)));
        }
    }
    report
}

/// `(P∘T, Pμ)`.
pub fn free_module(p: &FunctorData, t: &MonadData) -> Result<TModuleData> {
    let pt = p.after(&t.endo)?;
    let ptt = pt.after(&t.endo)?;
    let comps = p.source().objects().map(|x| p.mor(t.mu_at(x))).collect();
    Ok(TModuleData {
        nu: NatTransData::new(ptt, pt.clone(), comps)?,
        p: pt,
    })
}

/// Whether `h : m1.p ⇒ m2.p` commutes with the actions.
pub fn is_module_map(m1: &TModuleData, m2: &TModuleData, t: &MonadData, h: &NatTransData) -> bool {
    let c = m1.p.target();
    h.source() == &m1.p
        && h.target() == &m2.p
        && m1
            .p
            .source()
            .objects()
            .all(|x| c.comp(h.at(x), m1.nu.at(x)) == c.comp(m2.nu.at(x), h.at(t.on_obj(x))))
}

/// Transposes across the free–forgetful correspondence for modules, where
/// `p` is the functor generating the free module and `target` the module
/// on the other side. [`Direction::Left`] takes a plain `α : P ⇒ P'` to
/// `ν' ∘ αT`; [`Direction::Right`] takes a module map `β : PT ⇒ P'` to
/// `β ∘ Pη`.
pub fn transpose_module_hom(
    dir: Direction,
    t: &MonadData,
    p: &FunctorData,
    target: &TModuleData,
    h: &NatTransData,
) -> Result<NatTransData> {
    let c = p.target();
    let d = p.source();
    match dir {
        Direction::Left => {
            if h.source() != p || h.target() != &target.p {
                return Err(Error::TransposeShape {
                    expected: "a transformation P ⇒ P'".into(),
                    found: "a transformation of another shape".into(),
                });
            }
            let comps = d
                .objects()
                .map(|x| c.comp(target.nu.at(x), h.at(t.on_obj(x))))
                .collect();
            NatTransData::new(p.after(&t.endo)?, target.p.clone(), comps)
        }
        Direction::Right => {
            if *h.source() != p.after(&t.endo)? || h.target() != &target.p {
                return Err(Error::TransposeShape {
                    expected: "a transformation P∘T ⇒ P'".into(),
                    found: "a transformation of another shape".into(),
                });
            }
            let comps = d
                .objects()
                .map(|x| c.comp(h.at(x), p.mor(t.eta_at(x))))
                .collect();
            NatTransData::new(p.clone(), target.p.clone(), comps)
        }
    }
}

/// `(S∘G, μ_S G ∘ S phi_G)`.
pub fn sg_module(p: &PsiMorphismData) -> Result<TModuleData> {
    let report = validate_psi_morphism(p);
    if !report.is_valid() {
        return Err(Error::invalid("psi-morphism", report));
    }
    let (c, g, s) = (p.upper(), p.left(), &p.s);
    let sg = s.endo.after(g)?;
    let sgt = sg.after(&p.t.endo)?;
    let comps = p
        .lower()
        .objects()
        .map(|x| c.comp(s.mu_at(g.obj(x)), s.on_mor(p.phi_g.at(x))))
        .collect();
    Ok(TModuleData {
        nu: NatTransData::new(sgt, sg.clone(), comps)?,
        p: sg,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free,
    NotFree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessWitness {
    pub q: FunctorData,
    /// Module isomorphism `(Q T, Q μ) ≅ m`.
    pub iso: NatTransData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub verdict: FreenessVerdict,
    pub witness: Option<FreenessWitness>,
    /// Some `Q` has `free_module(Q)` equal to the module on the nose.
    pub equal_to_free: bool,
    pub functors_tried: u64,
    pub isos_tried: u64,
}

fn revalidate_freeness(m: &TModuleData, t: &MonadData, w: &FreenessWitness) -> bool {
    let Ok(free) = free_module(&w.q, t) else {
        return false;
    };
    let c = m.p.target();
    validate_functor(&w.q).is_valid()
        && validate_nat_trans(&w.iso).is_valid()
        && w.iso.components().iter().all(|&f| c.is_iso(f))
        && is_module_map(&free, m, t, &w.iso)
}

/// Searches every `Q : D → C` and every invertible module map
/// `(Q T, Q μ) ≅ m` in lexicographic order. The first witness found is
/// re-validated before being returned.
pub fn freeness_check(m: &TModuleData, t: &MonadData) -> FreenessReport {
    let (d, c) = (m.p.source(), m.p.target());
    let mut report = FreenessReport {
        verdict: FreenessVerdict::NotFree,
        witness: None,
        equal_to_free: false,
        functors_tried: 0,
        isos_tried: 0,
    };
    for q in enumerate_functors(d, c) {
        report.functors_tried += 1;
        let free = free_module(&q, t).expect("composable");
        if free == *m {
            report.equal_to_free = true;
        }
        if report.witness.is_some() {
            continue;
        }
        let isos =
            enumerate_nat_trans(&free.p, &m.p, ComponentFilter::Invertible).expect("parallel");
        for iso in isos {
            report.isos_tried += 1;
            if is_module_map(&free, m, t, &iso) {
                let w = FreenessWitness { q: q.clone(), iso };
                assert!(
                    revalidate_freeness(m, t, &w),
                    "freeness witness failed re-validation"
                );
                report.verdict = FreenessVerdict::Free;
                report.witness = Some(w);
                break;
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PbwMode {
    Strict,
    UpToIso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PbwVerdict {
    Pbw,
    NotPbw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwWitness {
    pub q: FunctorData,
    /// `Q∘π_T ≅ π_S∘hat_phi_G`; the identity in strict mode.
    pub iso: NatTransData,
}

/// Two `T`-algebras on one carrier whose envelopes have different (or,
/// up to isomorphism, non-isomorphic) underlying objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CarrierConflict {
    pub first: Obj,
    pub second: Obj,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwReport {
    pub mode: PbwMode,
    pub verdict: PbwVerdict,
    pub witness: Option<PbwWitness>,
    pub conflict: Option<CarrierConflict>,
    pub functors_tried: u64,
}

/// `π_S ∘ hat_phi_G : D^T → C`.
pub fn envelope_underlying(inst: &EnvelopeInstance) -> FunctorData {
    inst.em_s.pi.after(&inst.hat_phi_g).expect("composable")
}

/// First pair of algebras sharing a carrier whose envelopes differ.
pub fn carrier_conflict(inst: &EnvelopeInstance, mode: PbwMode) -> Option<CarrierConflict> {
    let c = inst.p.upper();
    let algebras = inst.em_t.algebras();
    for (i, a) in algebras.iter().enumerate() {
        for (j, b) in algebras.iter().enumerate().skip(i + 1) {
            if a.carrier != b.carrier {
                continue;
            }
            let (ea, eb) = (inst.envelope_carrier(Obj(i)), inst.envelope_carrier(Obj(j)));
            let same = match mode {
                PbwMode::Strict => ea == eb,
                PbwMode::UpToIso => c.isomorphic(ea, eb),
            };
            if !same {
                return Some(CarrierConflict {
                    first: Obj(i),
                    second: Obj(j),
                });
            }
        }
    }
    None
}

fn revalidate_pbw(inst: &EnvelopeInstance, w: &PbwWitness) -> bool {
    let k = envelope_underlying(inst);
    let Ok(qpi) = w.q.after(&inst.em_t.pi) else {
        return false;
    };
    let c = inst.p.upper();
    validate_functor(&w.q).is_valid()
        && w.iso.source() == &qpi
        && w.iso.target() == &k
        && validate_nat_trans(&w.iso).is_valid()
        && w.iso.components().iter().all(|&f| c.is_iso(f))
}

/// Decides whether `π_S ∘ hat_phi_G` factors through `π_T`, either on the
/// nose or up to natural isomorphism.
pub fn pbw_check(inst: &EnvelopeInstance, mode: PbwMode) -> PbwReport {
    let mut report = PbwReport {
        mode,
        verdict: PbwVerdict::NotPbw,
        witness: None,
        conflict: carrier_conflict(inst, mode),
        functors_tried: 0,
    };
    if report.conflict.is_some() {
        return report;
    }
    let k = envelope_underlying(inst);
    for q in enumerate_functors(inst.p.lower(), inst.p.upper()) {
        report.functors_tried += 1;
        let qpi = q.after(&inst.em_t.pi).expect("composable");
        let iso = match mode {
            PbwMode::Strict => (qpi == k).then(|| NatTransData::identity(&k)),
            PbwMode::UpToIso => natural_iso_search(&qpi, &k),
        };
        if let Some(iso) = iso {
            let iso = match mode {
                // identity on k, retyped with source Q∘π
                PbwMode::Strict => NatTransData::new(qpi, k.clone(), iso.components().to_vec())
                    .expect("equal functors"),
                PbwMode::UpToIso => iso,
            };
            let w = PbwWitness { q, iso };
            assert!(revalidate_pbw(inst, &w), "PBW witness failed re-validation");
            report.verdict = PbwVerdict::Pbw;
            report.witness = Some(w);
            break;
        }
    }
    report
}

/// The five maps obtained by applying `Q` to the canonical split
/// coequalizer of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCoequalizerWitness {
    /// `Q η_{Tx}`
    pub epsilon: Mor,
    /// `Q μ_x`
    pub gamma: Mor,
    /// `Q T(λ)`
    pub delta: Mor,
    /// `Q λ`
    pub alpha: Mor,
    /// `Q η_x`
    pub beta: Mor,
}

/// Builds the witness, checks `αγ = αδ`, `αβ = id`, `γε = id`,
/// `δε = βα`, and that `α` is a coequalizer of `(γ, δ)` in `C`.
pub fn split_coequalizer_witness(
    q: &FunctorData,
    t: &MonadData,
    x: &AlgebraObject,
) -> Result<SplitCoequalizerWitness> {
    let c = q.target();
    let (x0, l) = (x.carrier, x.structure);
    let w = SplitCoequalizerWitness {
        epsilon: q.mor(t.eta_at(t.on_obj(x0))),
        gamma: q.mor(t.mu_at(x0)),
        delta: q.mor(t.on_mor(l)),
        alpha: q.mor(l),
        beta: q.mor(t.eta_at(x0)),
    };
    let name = |m: Mor| c.mor_name(m).to_string();
    let relations: [(&'static str, Mor, Mor); 4] = [
        (
            "alpha_gamma_eq_alpha_delta",
            c.comp(w.alpha, w.gamma),
            c.comp(w.alpha, w.delta),
        ),
        ("alpha_beta_eq_id", c.comp(w.alpha, w.beta), c.id(q.obj(x0))),
        (
            "gamma_epsilon_eq_id",
            c.comp(w.gamma, w.epsilon),
            c.id(q.obj(t.on_obj(x0))),
        ),
        (
            "delta_epsilon_eq_beta_alpha",
            c.comp(w.delta, w.epsilon),
            c.comp(w.beta, w.alpha),
        ),
    ];
    for (relation, lhs, rhs) in relations {
        if lhs != rhs {
            return Err(Error::SplitRelation {
                relation,
                detail: format!("{} ≠ {}", name(lhs), name(rhs)),
            });
        }
    }
    if !is_coequalizer(c, w.gamma, w.delta, w.alpha)? {
        return Err(Error::SplitRelation {
            relation: "coequalizer",
            detail: format!(
                "{} is not a coequalizer of ({}, {})",
                name(w.alpha),
                name(w.gamma),
                name(w.delta)
            ),
        });
    }
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub pbw: PbwReport,
    pub freeness: FreenessReport,
    pub agree: bool,
    /// One witness per algebra when both sides say free.
    pub split_witnesses: Vec<SplitCoequalizerWitness>,
    /// Filled in when the two verdicts differ.
    pub disagreement: Option<String>,
}

/// Runs the PBW decider (up to isomorphism) and the freeness decider on
/// `S∘G` independently and compares them.
pub fn pb3w_harness(inst: &EnvelopeInstance) -> Result<HarnessReport> {
    let pbw = pbw_check(inst, PbwMode::UpToIso);
    let module = sg_module(&inst.p)?;
    let freeness = freeness_check(&module, &inst.p.t);
    let is_pbw = pbw.verdict == PbwVerdict::Pbw;
    let is_free = freeness.verdict == FreenessVerdict::Free;
    let agree = is_pbw == is_free;
    let mut split_witnesses = Vec::new();
    if agree && is_free {
        let q = &freeness.witness.as_ref().expect("free has a witness").q;
        for x in inst.em_t.algebras() {
            split_witnesses.push(split_coequalizer_witness(q, &inst.p.t, x)?);
        }
    }
    let disagreement = (!agree).then(|| {
        format!(
            "PBW decider says {:?} (witness {:?}, conflict {:?}) but freeness decider says {:?} (witness {:?})",
            pbw.verdict,
            pbw.witness.as_ref().map(|w| w.q.obj_map().to_vec()),
            pbw.conflict,
            freeness.verdict,
            freeness.witness.as_ref().map(|w| w.q.obj_map().to_vec()),
        )
    });
    Ok(HarnessReport {
        pbw,
        freeness,
        agree,
        split_witnesses,
        disagreement,
    })
}

/// Every module structure on a fixed functor `p`.
pub fn enumerate_module_structures(p: &FunctorData, t: &MonadData) -> Result<Vec<TModuleData>> {
    let pt = p.after(&t.endo)?;
    Ok(enumerate_nat_trans(&pt, p, ComponentFilter::Any)?
        .map(|nu| TModuleData { p: p.clone(), nu })
        .filter(|m| validate_tmodule(m, t).is_valid())
        .collect())
}

/// All modules `D → C` over `t`.
pub fn enumerate_modules(
    d: &Arc<FinCategory>,
    c: &Arc<FinCategory>,
    t: &MonadData,
) -> Vec<TModuleData> {
    let mut out = Vec::new();
    for p in enumerate_functors(d, c) {
        out.extend(enumerate_module_structures(&p, t).expect("composable"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::build_envelope;
    use crate::fincat::AdjunctionData;
    use crate::monad::enumerate_monads;
    use crate::psimorph::{classical_embed, enumerate_psi_morphisms};

    fn arrow() -> Arc<FinCategory> {
        Arc::new(FinCategory::chain("2", &["a", "b"]))
    }

    #[test]
    fn monad_is_free_on_identity() {
        let c = arrow();
        for t in enumerate_monads(&c) {
            let m = TModuleData {
                p: t.endo.clone(),
                nu: t.mu.clone(),
            };
            assert!(validate_tmodule(&m, &t).is_valid());
            assert_eq!(
                free_module(&FunctorData::identity(c.clone()), &t).unwrap(),
                m
            );
            let r = freeness_check(&m, &t);
            assert_eq!(r.verdict, FreenessVerdict::Free);
            assert!(r.equal_to_free);
        }
    }

    #[test]
    fn free_modules_are_found_free() {
        let c = arrow();
        for t in enumerate_monads(&c) {
            for p in enumerate_functors(&c, &c) {
                let m = free_module(&p, &t).unwrap();
                assert!(validate_tmodule(&m, &t).is_valid());
                let r = freeness_check(&m, &t);
                assert_eq!(r.verdict, FreenessVerdict::Free);
            }
        }
    }

    #[test]
    fn broken_unit_is_named() {
        let mut b = crate::fincat::CategoryBuilder::new("Z2");
        let o = b.object("*");
        let flip = b.morphism("s", o, o);
        let id = b.id(o);
        b.set_composite(flip, flip, id);
        let z2 = Arc::new(b.build().unwrap());
        let t = MonadData::identity(z2.clone());
        let mut m = free_module(&FunctorData::identity(z2), &t).unwrap();
        m.nu = NatTransData::new(m.nu.source().clone(), m.nu.target().clone(), vec![flip]).unwrap();
        let report = validate_tmodule(&m, &t);
        assert!(report.mentions("action_unit"), "{report}");
        assert!(report.to_string().contains('*'), "{report}");
    }

    #[test]
    fn transposes_are_inverse() {
        let c = arrow();
        for t in enumerate_monads(&c) {
            for m in enumerate_modules(&c, &c, &t) {
                for p in enumerate_functors(&c, &c) {
                    let free = free_module(&p, &t).unwrap();
                    let plain: Vec<_> = enumerate_nat_trans(&p, &m.p, ComponentFilter::Any)
                        .unwrap()
                        .collect();
                    let maps: Vec<_> = enumerate_nat_trans(&free.p, &m.p, ComponentFilter::Any)
                        .unwrap()
                        .filter(|h| is_module_map(&free, &m, &t, h))
                        .collect();
                    assert_eq!(plain.len(), maps.len());
                    for a in &plain {
                        let l = transpose_module_hom(Direction::Left, &t, &p, &m, a).unwrap();
                        assert!(is_module_map(&free, &m, &t, &l));
                        assert_eq!(
                            &transpose_module_hom(Direction::Right, &t, &p, &m, &l).unwrap(),
                            a
                        );
                    }
                    for b in &maps {
                        let r = transpose_module_hom(Direction::Right, &t, &p, &m, b).unwrap();
                        assert_eq!(
                            &transpose_module_hom(Direction::Left, &t, &p, &m, &r).unwrap(),
                            b
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn identity_instance_is_pbw_and_free() {
        let c = arrow();
        for m in enumerate_monads(&c) {
            let p = classical_embed(&m, &m, &NatTransData::identity(&m.endo)).unwrap();
            let sg = sg_module(&p).unwrap();
            assert_eq!(
                sg,
                TModuleData {
                    p: m.endo.clone(),
                    nu: m.mu.clone()
                }
            );
            let inst = build_envelope(&p).unwrap();
            for mode in [PbwMode::Strict, PbwMode::UpToIso] {
                let r = pbw_check(&inst, mode);
                assert_eq!(r.verdict, PbwVerdict::Pbw);
            }
            let h = pb3w_harness(&inst).unwrap();
            assert!(h.agree);
            assert_eq!(h.split_witnesses.len(), inst.em_t.algebras().len());
        }
    }

    #[test]
    fn harness_agrees_on_the_arrow() {
        let c = arrow();
        let adj = AdjunctionData::identity(c.clone());
        let monads = enumerate_monads(&c);
        for s in &monads {
            for t in &monads {
                for p in enumerate_psi_morphisms(&adj, s, t).unwrap() {
                    let inst = build_envelope(&p).unwrap();
                    let h = pb3w_harness(&inst).unwrap();
                    assert!(h.agree, "{:?}", h.disagreement);
                    let strict = pbw_check(&inst, PbwMode::Strict);
                    if strict.verdict == PbwVerdict::Pbw {
                        assert_eq!(h.pbw.verdict, PbwVerdict::Pbw);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_monad_split_is_trivial() {
        let c = arrow();
        let t = MonadData::identity(c.clone());
        let q = FunctorData::identity(c.clone());
        for x in crate::monad::enumerate_algebras(&t) {
            let w = split_coequalizer_witness(&q, &t, &x).unwrap();
            assert_eq!(w.gamma, w.delta);
            assert!(c.is_identity(w.gamma));
        }
    }
}
