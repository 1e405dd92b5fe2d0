//! Adjunctions `G ⊣ F` presented by unit and counit, and the transposes
//! across the induced hom-bijection.

use std::sync::Arc;

use super::category::{same_category, FinCategory, Mor, Obj};
use super::functor::{validate_functor, FunctorData};
use super::nat::{validate_nat_trans, NatTransData};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// `left: D → C` is left adjoint to `right: C → D`, with
/// `unit: 1_D ⇒ right∘left` and `counit: left∘right ⇒ 1_C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionData {
    pub left: FunctorData,
    pub right: FunctorData,
    pub unit: NatTransData,
    pub counit: NatTransData,
}

/// Direction of a transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `g : G a → b` to `g^R : a → F b`.
    Right,
    /// `f : a → F b` to `f^L : G a → b`.
    Left,
}

impl AdjunctionData {
    /// The identity adjunction on `c`.
    pub fn identity(c: Arc<FinCategory>) -> Self {
        let id = FunctorData::identity(c);
        let unit = NatTransData::identity(&id);
        Self {
            left: id.clone(),
            right: id,
            counit: unit.clone(),
            unit,
        }
    }

    /// Category `D` (source of the left adjoint).
    pub fn lower(&self) -> &Arc<FinCategory> {
        self.left.source()
    }

    /// Category `C` (source of the right adjoint).
    pub fn upper(&self) -> &Arc<FinCategory> {
        self.right.source()
    }

    /// `g^R = F(g) ∘ unit_a` for `g : G a → b`.
    pub fn right_transpose(&self, a: Obj, g: Mor) -> Result<Mor> {
        let (c, d) = (self.upper(), self.lower());
        let ga = self.left.obj(a);
        if c.dom(g) != ga {
            return Err(Error::TransposeShape {
                expected: format!(
                    "a morphism out of G({}) = {}",
                    d.obj_name(a),
                    c.obj_name(ga)
                ),
                found: format!(
                    "{} : {} → {}",
                    c.mor_name(g),
                    c.obj_name(c.dom(g)),
                    c.obj_name(c.cod(g))
                ),
            });
        }
        Ok(d.comp(self.right.mor(g), self.unit.at(a)))
    }

    /// `f^L = counit_b ∘ G(f)` for `f : a → F b`.
    pub fn left_transpose(&self, b: Obj, f: Mor) -> Result<Mor> {
        let (c, d) = (self.upper(), self.lower());
        let fb = self.right.obj(b);
        if d.cod(f) != fb {
            return Err(Error::TransposeShape {
                expected: format!("a morphism into F({}) = {}", c.obj_name(b), d.obj_name(fb)),
                found: format!(
                    "{} : {} → {}",
                    d.mor_name(f),
                    d.obj_name(d.dom(f)),
                    d.obj_name(d.cod(f))
                ),
            });
        }
        Ok(c.comp(self.counit.at(b), self.left.mor(f)))
    }

    /// Transpose in either direction. `anchor` is the object `a` of `D`
    /// for [`Direction::Right`] and the object `b` of `C` for
    /// [`Direction::Left`]; it is needed because `G` and `F` need not be
    /// injective on objects.
    pub fn transpose(&self, dir: Direction, anchor: Obj, m: Mor) -> Result<Mor> {
        match dir {
            Direction::Right => self.right_transpose(anchor, m),
            Direction::Left => self.left_transpose(anchor, m),
        }
    }
}

/// Checks typing of the four pieces and both triangle identities:
/// `F(counit_b) ∘ unit_{F b} = id_{F b}` and
/// `counit_{G a} ∘ G(unit_a) = id_{G a}`.
pub fn validate_adjunction(adj: &AdjunctionData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (g, f) = (&adj.left, &adj.right);
    if !same_category(g.source(), f.target()) || !same_category(g.target(), f.source()) {
        report.structural(
            "adjoint_shapes",
            format!(
                "left adjoint {} → {} and right adjoint {} → {} do not form a pair",
                g.source().name(),
                g.target().name(),
                f.source().name(),
                f.target().name()
            ),
        );
        return report;
    }
    report.extend_scoped("left", validate_functor(g));
    report.extend_scoped("right", validate_functor(f));
    if !report.is_valid() {
        return report;
    }
    let (d, c) = (g.source().clone(), g.target().clone());
    let fg = f.after(g).expect("shapes checked");
    let gf = g.after(f).expect("shapes checked");
    if *adj.unit.source() != FunctorData::identity(d.clone()) || *adj.unit.target() != fg {
        report.structural("unit_shape", "unit is not a transformation 1 ⇒ F∘G");
    }
    if *adj.counit.source() != gf || *adj.counit.target() != FunctorData::identity(c.clone()) {
        report.structural("counit_shape", "counit is not a transformation G∘F ⇒ 1");
    }
    if !report.is_valid() {
        return report;
    }
    report.extend_scoped("unit", validate_nat_trans(&adj.unit));
    report.extend_scoped("counit", validate_nat_trans(&adj.counit));
    for b in c.objects() {
        let fb = f.obj(b);
        if d.comp(f.mor(adj.counit.at(b)), adj.unit.at(fb)) != d.id(fb) {
            report.law(
                "triangle_right",
                format!("F(counit) ∘ unit_F fails at {}", c.obj_name(b)),
            );
        }
    }
    for a in d.objects() {
        let ga = g.obj(a);
        if c.comp(adj.counit.at(ga), g.mor(adj.unit.at(a))) != c.id(ga) {
            report.law(
                "triangle_left",
                format!("counit_G ∘ G(unit) fails at {}", d.obj_name(a)),
            );
        }
    }
    report
}

/// Checks that the transposes give mutually inverse bijections
/// `C(G a, b) ≅ D(a, F b)` for every pair of objects.
pub fn check_hom_bijection(adj: &AdjunctionData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (d, c) = (adj.lower(), adj.upper());
    for a in d.objects() {
        for b in c.objects() {
            let left_hom = c.hom(adj.left.obj(a), b);
            let right_hom = d.hom(a, adj.right.obj(b));
            if left_hom.len() != right_hom.len() {
                report.law(
                    "hom_bijection",
                    format!(
                        "|C(G{}, {})| = {} but |D({}, F{})| = {}",
                        d.obj_name(a),
                        c.obj_name(b),
                        left_hom.len(),
                        d.obj_name(a),
                        c.obj_name(b),
                        right_hom.len()
                    ),
                );
            }
            for &g in left_hom {
                let back = adj
                    .right_transpose(a, g)
                    .and_then(|r| adj.left_transpose(b, r));
                if back.ok() != Some(g) {
                    report.law(
                        "transpose_round_trip",
                        format!("(g^R)^L ≠ g for g = {}", c.mor_name(g)),
                    );
                }
            }
            for &f in right_hom {
                let back = adj
                    .left_transpose(b, f)
                    .and_then(|l| adj.right_transpose(a, l));
                if back.ok() != Some(f) {
                    report.law(
                        "transpose_round_trip",
                        format!("(f^L)^R ≠ f for f = {}", d.mor_name(f)),
                    );
                }
            }
        }
    }
    report
}
