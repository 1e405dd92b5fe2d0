use std::collections::BTreeMap;
use std::sync::Arc;

use super::category::{FinCategory, Mor, Obj};
use super::functor::FunctorData;
use super::search::{Backtrack, SearchProblem};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A natural transformation `source ⇒ target`, one component per object of
/// the common source category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransData {
    source: FunctorData,
    target: FunctorData,
    components: Vec<Mor>,
}

impl NatTransData {
    /// Checks that the functors are parallel and that every component
    /// `a ↦ t_a` has type `source(a) → target(a)`. Naturality is left to
    /// [`validate_nat_trans`].
    pub fn new(source: FunctorData, target: FunctorData, components: Vec<Mor>) -> Result<Self> {
        let report = component_typing(&source, &target, &components);
        if !report.is_valid() {
            return Err(Error::invalid("natural transformation components", report));
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    /// Resolves a string component table.
    pub fn from_tables(
        source: FunctorData,
        target: FunctorData,
        components: &BTreeMap<String, String>,
    ) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::new();
        let (s, t) = (source.source().clone(), source.target().clone());
        let mut comps = Vec::new();
        for o in s.objects() {
            match components.get(s.obj_name(o)).map(|m| (m, t.mor(m))) {
                Some((_, Some(m))) => comps.push(m),
                Some((m, None)) => report.structural(
                    "dangling_morphism",
                    format!("component at {} names unknown morphism {m}", s.obj_name(o)),
                ),
                None => report.structural(
                    "components_total",
                    format!("no component at {}", s.obj_name(o)),
                ),
            }
        }
        for k in components.keys() {
            if s.obj(k).is_none() {
                report.structural(
                    "dangling_object",
                    format!("{k} is not an object of {}", s.name()),
                );
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        let typing = component_typing(&source, &target, &comps);
        if !typing.is_valid() {
            return Err(typing);
        }
        Ok(Self {
            source,
            target,
            components: comps,
        })
    }

    pub fn to_tables(&self) -> BTreeMap<String, String> {
        let (s, t) = (self.source.source(), self.source.target());
        s.objects()
            .map(|o| {
                (
                    s.obj_name(o).to_string(),
                    t.mor_name(self.at(o)).to_string(),
                )
            })
            .collect()
    }

    pub fn identity(f: &FunctorData) -> Self {
        let t = f.target();
        Self {
            source: f.clone(),
            target: f.clone(),
            components: f.source().objects().map(|o| t.id(f.obj(o))).collect(),
        }
    }

    pub fn source(&self) -> &FunctorData {
        &self.source
    }

    pub fn target(&self) -> &FunctorData {
        &self.target
    }

    /// Category the functors start from.
    pub fn domain_category(&self) -> &Arc<FinCategory> {
        self.source.source()
    }

    /// Category the components live in.
    pub fn codomain_category(&self) -> &Arc<FinCategory> {
        self.source.target()
    }

    pub fn at(&self, o: Obj) -> Mor {
        self.components[o.0]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    /// Vertical composite `self ∘ inner` (componentwise).
    pub fn after(&self, inner: &NatTransData) -> Result<NatTransData> {
        if inner.target != self.source {
            return Err(Error::CategoryMismatch(
                "vertical composite of non-matching transformations".into(),
            ));
        }
        let c = self.codomain_category();
        Ok(NatTransData {
            source: inner.source.clone(),
            target: self.target.clone(),
            components: inner
                .components
                .iter()
                .zip(&self.components)
                .map(|(&i, &o)| c.comp(o, i))
                .collect(),
        })
    }

    /// `H t`: apply `h` to every component.
    pub fn whisker_left(h: &FunctorData, t: &NatTransData) -> Result<NatTransData> {
        Ok(NatTransData {
            source: h.after(&t.source)?,
            target: h.after(&t.target)?,
            components: t.components.iter().map(|&m| h.mor(m)).collect(),
        })
    }

    /// `t K`: precompose with `k`, so the component at `a` is `t_{K a}`.
    pub fn whisker_right(t: &NatTransData, k: &FunctorData) -> Result<NatTransData> {
        Ok(NatTransData {
            source: t.source.after(k)?,
            target: t.target.after(k)?,
            components: k.source().objects().map(|o| t.at(k.obj(o))).collect(),
        })
    }
}

fn component_typing(source: &FunctorData, target: &FunctorData, comps: &[Mor]) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !source.same_shape(target) {
        report.structural(
            "parallel_functors",
            "source and target functors are not parallel",
        );
        return report;
    }
    let (s, t) = (source.source(), source.target());
    if comps.len() != s.object_count() {
        report.structural(
            "components_total",
            "component table does not cover the objects",
        );
        return report;
    }
    for o in s.objects() {
        let m = comps[o.0];
        if m.0 >= t.morphism_count() {
            report.structural(
                "dangling_morphism",
                format!("component at {} out of range", s.obj_name(o)),
            );
            continue;
        }
        if t.dom(m) != source.obj(o) || t.cod(m) != target.obj(o) {
            report.structural(
                "component_typing",
                format!(
                    "component at {} is {} : {} → {}, expected {} → {}",
                    s.obj_name(o),
                    t.mor_name(m),
                    t.obj_name(t.dom(m)),
                    t.obj_name(t.cod(m)),
                    t.obj_name(source.obj(o)),
                    t.obj_name(target.obj(o))
                ),
            );
        }
    }
    report
}

/// Checks every naturality square `G(f) ∘ t_a = t_b ∘ F(f)`.
pub fn validate_nat_trans(t: &NatTransData) -> ValidationReport {
    let mut report = component_typing(&t.source, &t.target, &t.components);
    if !report.is_valid() {
        return report;
    }
    let (s, c) = (t.domain_category(), t.codomain_category());
    for f in s.morphisms() {
        let (a, b) = (s.dom(f), s.cod(f));
        let lhs = c.try_compose(t.target.mor(f), t.at(a));
        let rhs = c.try_compose(t.at(b), t.source.mor(f));
        if lhs.is_none() || lhs != rhs {
            report.law(
                "naturality",
                format!(
                    "square fails at {} : {} → {}",
                    s.mor_name(f),
                    s.obj_name(a),
                    s.obj_name(b)
                ),
            );
        }
    }
    report
}

/// Which morphisms may serve as components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentFilter {
    Any,
    Invertible,
}

/// Assignment problem whose solutions are the natural transformations
/// `source ⇒ target` (optionally with invertible components). Positions are
/// the objects of the source category; a naturality square is checked as
/// soon as both of its endpoints are assigned.
pub struct NatTransSearch {
    source: FunctorData,
    target: FunctorData,
    filter: ComponentFilter,
    // morphisms f indexed by max(dom f, cod f)
    squares: Vec<Vec<Mor>>,
}

impl NatTransSearch {
    pub fn new(source: FunctorData, target: FunctorData, filter: ComponentFilter) -> Result<Self> {
        if !source.same_shape(&target) {
            return Err(Error::CategoryMismatch("functors are not parallel".into()));
        }
        let s = source.source().clone();
        let mut squares = vec![Vec::new(); s.object_count()];
        for f in s.morphisms() {
            squares[s.dom(f).max(s.cod(f)).0].push(f);
        }
        Ok(Self {
            source,
            target,
            filter,
            squares,
        })
    }

    pub fn decode(&self, sol: &[usize]) -> NatTransData {
        NatTransData {
            source: self.source.clone(),
            target: self.target.clone(),
            components: sol.iter().map(|&m| Mor(m)).collect(),
        }
    }
}

impl SearchProblem for NatTransSearch {
    fn positions(&self) -> usize {
        self.source.source().object_count()
    }

    fn candidates(&self, partial: &[usize]) -> Vec<usize> {
        let o = Obj(partial.len());
        let c = self.source.target();
        let (a, b) = (self.source.obj(o), self.target.obj(o));
        match self.filter {
            ComponentFilter::Any => c.hom(a, b).iter().map(|m| m.0).collect(),
            ComponentFilter::Invertible => c.isos(a, b).into_iter().map(|m| m.0).collect(),
        }
    }

    fn consistent(&self, partial: &[usize]) -> bool {
        let s = self.source.source();
        let c = self.source.target();
        let pos = partial.len() - 1;
        self.squares[pos].iter().all(|&f| {
            let (a, b) = (s.dom(f), s.cod(f));
            c.comp(self.target.mor(f), Mor(partial[a.0]))
                == c.comp(Mor(partial[b.0]), self.source.mor(f))
        })
    }
}

/// All natural transformations `source ⇒ target`, lexicographic on
/// component ids.
pub fn enumerate_nat_trans(
    source: &FunctorData,
    target: &FunctorData,
    filter: ComponentFilter,
) -> Result<impl Iterator<Item = NatTransData>> {
    let search = NatTransSearch::new(source.clone(), target.clone(), filter)?;
    let mut bt = Backtrack::new(search);
    Ok(std::iter::from_fn(move || {
        let sol = bt.next()?;
        Some(bt.problem().decode(&sol))
    }))
}

/// First natural isomorphism `f ≅ g` in canonical order, if any.
pub fn natural_iso_search(f: &FunctorData, g: &FunctorData) -> Option<NatTransData> {
    enumerate_nat_trans(f, g, ComponentFilter::Invertible)
        .ok()?
        .next()
}

/// Pointwise inverse of a natural isomorphism.
pub fn inverse_nat_trans(t: &NatTransData) -> Option<NatTransData> {
    let c = t.codomain_category();
    let comps: Option<Vec<Mor>> = t.components.iter().map(|&m| c.inverse(m)).collect();
    Some(NatTransData {
        source: t.target.clone(),
        target: t.source.clone(),
        components: comps?,
    })
}
