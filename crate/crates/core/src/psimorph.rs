//! Morphisms of monads along an adjunction: a monad `T` on `D`, a monad
//! `S` on `C`, an adjunction `G ⊣ F` with `G : D → C`, and a pair
//! `phi_G : G∘T ⇒ S∘G`, `phi_F : T∘F ⇒ F∘S` compatible with the monad
//! structures and with each other.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{
    enumerate_nat_trans, same_category, validate_adjunction, validate_nat_trans, AdjunctionData,
    ComponentFilter, FinCategory, FunctorData, Mor, NatTransData, Obj,
};
use crate::monad::{validate_monad, MonadData};
use crate::report::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMorphismData {
    pub adj: AdjunctionData,
    /// Monad on `C`, the target of the left adjoint.
    pub s: MonadData,
    /// Monad on `D`, the source of the left adjoint.
    pub t: MonadData,
    pub phi_g: NatTransData,
    pub phi_f: NatTransData,
}

impl PsiMorphismData {
    pub fn lower(&self) -> &Arc<FinCategory> {
        self.adj.lower()
    }

    pub fn upper(&self) -> &Arc<FinCategory> {
        self.adj.upper()
    }

    pub fn left(&self) -> &FunctorData {
        &self.adj.left
    }

    pub fn right(&self) -> &FunctorData {
        &self.adj.right
    }
}

/// Expected `(source, target)` of `phi_G` and `phi_F`.
fn phi_shapes(
    adj: &AdjunctionData,
    s: &MonadData,
    t: &MonadData,
) -> Result<((FunctorData, FunctorData), (FunctorData, FunctorData))> {
    let (g, f) = (&adj.left, &adj.right);
    Ok((
        (g.after(&t.endo)?, s.endo.after(g)?),
        (t.endo.after(f)?, f.after(&s.endo)?),
    ))
}

fn check_components(adj: &AdjunctionData, s: &MonadData, t: &MonadData) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.extend_scoped("adjunction", validate_adjunction(adj));
    report.extend_scoped("s", validate_monad(s));
    report.extend_scoped("t", validate_monad(t));
    if !report.is_valid() {
        return report;
    }
    if !same_category(s.base(), adj.upper()) {
        report.structural(
            "s_base",
            "S does not live on the target of the left adjoint",
        );
    }
    if !same_category(t.base(), adj.lower()) {
        report.structural(
            "t_base",
            "T does not live on the source of the left adjoint",
        );
    }
    report
}

/// Square and unit triangle for `phi_G` at every object of `D`.
fn check_phi_g_laws(
    adj: &AdjunctionData,
    s: &MonadData,
    t: &MonadData,
    phi_g: &NatTransData,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (d, c, g) = (adj.lower(), adj.upper(), &adj.left);
    for x in d.objects() {
        let name = d.obj_name(x);
        let gx = g.obj(x);
        let lhs = c.comp(phi_g.at(x), g.mor(t.mu_at(x)));
        let rhs = c.comp_all(&[s.mu_at(gx), s.on_mor(phi_g.at(x)), phi_g.at(t.on_obj(x))]);
        if lhs != rhs {
            report.law(
                "phi_G_square",
                format!("multiplication square fails at {name}"),
            );
        }
        if c.comp(phi_g.at(x), g.mor(t.eta_at(x))) != s.eta_at(gx) {
            report.law("phi_G_triangle", format!("unit triangle fails at {name}"));
        }
    }
    report
}

/// Square and unit triangle for `phi_F` at every object of `C`.
fn check_phi_f_laws(
    adj: &AdjunctionData,
    s: &MonadData,
    t: &MonadData,
    phi_f: &NatTransData,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (d, c, f) = (adj.lower(), adj.upper(), &adj.right);
    for y in c.objects() {
        let name = c.obj_name(y);
        let fy = f.obj(y);
        let lhs = d.comp_all(&[
            f.mor(s.mu_at(y)),
            phi_f.at(s.on_obj(y)),
            t.on_mor(phi_f.at(y)),
        ]);
        let rhs = d.comp(phi_f.at(y), t.mu_at(fy));
        if lhs != rhs {
            report.law(
                "phi_F_square",
                format!("multiplication square fails at {name}"),
            );
        }
        if d.comp(phi_f.at(y), t.eta_at(fy)) != f.mor(s.eta_at(y)) {
            report.law("phi_F_triangle", format!("unit triangle fails at {name}"));
        }
    }
    report
}

/// Verdicts of the two compatibility squares for `f : G x → y`:
/// `phi_F(y)^L ∘ G T(f^R) = S f ∘ phi_G(x)` in `C` and
/// `phi_F(y) ∘ T(f^R) = F S f ∘ phi_G(x)^R` in `D`.
pub fn mate_squares(p: &PsiMorphismData, x: Obj, y: Obj, f: Mor) -> Result<(bool, bool)> {
    let (adj, s, t) = (&p.adj, &p.s, &p.t);
    let (d, c) = (adj.lower(), adj.upper());
    let (g, r) = (&adj.left, &adj.right);
    let f_r = adj.right_transpose(x, f)?;
    let phi_f_l = adj.left_transpose(s.on_obj(y), p.phi_f.at(y))?;
    let left = c.comp(phi_f_l, g.mor(t.on_mor(f_r))) == c.comp(s.on_mor(f), p.phi_g.at(x));
    let phi_g_r = adj.right_transpose(t.on_obj(x), p.phi_g.at(x))?;
    let right = d.comp(p.phi_f.at(y), t.on_mor(f_r)) == d.comp(r.mor(s.on_mor(f)), phi_g_r);
    Ok((left, right))
}

/// Evaluates both compatibility squares for every `x`, `y` and
/// `f : G x → y`. Reports each `f` where the left square fails, and
/// separately each `f` where the two verdicts disagree.
pub fn check_mate_compatibility(p: &PsiMorphismData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (d, c) = (p.lower(), p.upper());
    for x in d.objects() {
        let gx = p.left().obj(x);
        for y in c.objects() {
            for &f in c.hom(gx, y) {
                let at = format!(
                    "x = {}, y = {}, f = {}",
                    d.obj_name(x),
                    c.obj_name(y),
                    c.mor_name(f)
                );
                match mate_squares(p, x, y, f) {
                    Ok((left, right)) => {
                        if left != right {
                            report.law(
                                "mate_disagreement",
                                format!("left square {left}, right square {right} at {at}"),
                            );
                        }
                        if !left {
                            report.law("mate_compatibility", format!("fails at {at}"));
                        }
                    }
                    Err(e) => report.structural("mate_compatibility", format!("{e} at {at}")),
                }
            }
        }
    }
    report
}

/// Full validation: components, shapes and naturality of `phi_G`,
/// `phi_F`, their monad squares and triangles, and compatibility.
pub fn validate_psi_morphism(p: &PsiMorphismData) -> ValidationReport {
    let mut report = check_components(&p.adj, &p.s, &p.t);
    if !report.is_valid() {
        return report;
    }
    let ((g_src, g_tgt), (f_src, f_tgt)) = phi_shapes(&p.adj, &p.s, &p.t).expect("shapes checked");
    if *p.phi_g.source() != g_src || *p.phi_g.target() != g_tgt {
        report.structural("phi_G_shape", "phi_G is not a transformation G∘T ⇒ S∘G");
    }
    if *p.phi_f.source() != f_src || *p.phi_f.target() != f_tgt {
        report.structural("phi_F_shape", "phi_F is not a transformation T∘F ⇒ F∘S");
    }
    if !report.is_valid() {
        return report;
    }
    report.extend_scoped("phi_G", validate_nat_trans(&p.phi_g));
    report.extend_scoped("phi_F", validate_nat_trans(&p.phi_f));
    report.extend(check_phi_g_laws(&p.adj, &p.s, &p.t, &p.phi_g));
    report.extend(check_phi_f_laws(&p.adj, &p.s, &p.t, &p.phi_f));
    report.extend(check_mate_compatibility(p));
    report
}

/// A morphism of monads `phi : T ⇒ S` on one category, seen along the
/// identity adjunction with `phi_G = phi_F = phi`.
pub fn classical_embed(
    s: &MonadData,
    t: &MonadData,
    phi: &NatTransData,
) -> Result<PsiMorphismData> {
    if !same_category(s.base(), t.base()) {
        return Err(Error::CategoryMismatch(format!(
            "S lives on {} but T lives on {}",
            s.base().name(),
            t.base().name()
        )));
    }
    Ok(PsiMorphismData {
        adj: AdjunctionData::identity(s.base().clone()),
        s: s.clone(),
        t: t.clone(),
        phi_g: phi.clone(),
        phi_f: phi.clone(),
    })
}

/// Every valid `(phi_G, phi_F)` for the given adjunction and monads, in
/// lexicographic component order.
pub fn enumerate_psi_morphisms(
    adj: &AdjunctionData,
    s: &MonadData,
    t: &MonadData,
) -> Result<Vec<PsiMorphismData>> {
    let report = check_components(adj, s, t);
    if !report.is_valid() {
        return Err(Error::invalid("psi-morphism components", report));
    }
    let ((g_src, g_tgt), (f_src, f_tgt)) = phi_shapes(adj, s, t)?;
    let phi_gs: Vec<_> = enumerate_nat_trans(&g_src, &g_tgt, ComponentFilter::Any)?
        .filter(|phi| check_phi_g_laws(adj, s, t, phi).is_valid())
        .collect();
    let phi_fs: Vec<_> = enumerate_nat_trans(&f_src, &f_tgt, ComponentFilter::Any)?
        .filter(|phi| check_phi_f_laws(adj, s, t, phi).is_valid())
        .collect();
    let mut out = Vec::new();
    for phi_g in &phi_gs {
        for phi_f in &phi_fs {
            let p = PsiMorphismData {
                adj: adj.clone(),
                s: s.clone(),
                t: t.clone(),
                phi_g: phi_g.clone(),
                phi_f: phi_f.clone(),
            };
            if check_mate_compatibility(&p).is_valid() {
                out.push(p);
            }
        }
    }
    Ok(out)
}
