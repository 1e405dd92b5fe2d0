use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{same_category, FinCategory, Mor, Obj};
use super::search::{Backtrack, SearchProblem};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// String keyed object and morphism maps, the on-disk shape of a functor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorTables {
    pub source: String,
    pub target: String,
    pub obj_map: BTreeMap<String, String>,
    pub mor_map: BTreeMap<String, String>,
}

/// A functor between finite categories, stored as two tables indexed by
/// the source's object and morphism ids.
///
/// Equality is table equality (together with equality of the endpoint
/// categories).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FunctorData {
    /// Builds a functor from index tables. Only table lengths and id ranges
    /// are checked; use [`validate_functor`] for the functor laws.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self> {
        let mut report = ValidationReport::new();
        if obj_map.len() != source.object_count() {
            report.structural(
                "obj_map_total",
                "object map does not cover the source objects",
            );
        }
        if mor_map.len() != source.morphism_count() {
            report.structural(
                "mor_map_total",
                "morphism map does not cover the source morphisms",
            );
        }
        if obj_map.iter().any(|o| o.0 >= target.object_count())
            || mor_map.iter().any(|m| m.0 >= target.morphism_count())
        {
            report.structural("dangling_target", "map names an id outside the target");
        }
        if !report.is_valid() {
            return Err(Error::invalid("functor tables", report));
        }
        Ok(Self {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    /// Resolves string tables against the given categories.
    pub fn from_tables(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        t: &FunctorTables,
    ) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::new();
        let mut obj_map = Vec::with_capacity(source.object_count());
        for o in source.objects() {
            let name = source.obj_name(o);
            match t.obj_map.get(name).map(|v| (v, target.obj(v))) {
                Some((_, Some(x))) => obj_map.push(x),
                Some((v, None)) => report.structural(
                    "dangling_object",
                    format!("{name} ↦ {v}: {v} is not an object of {}", target.name()),
                ),
                None => report.structural("obj_map_total", format!("object {name} is not mapped")),
            }
        }
        let mut mor_map = Vec::with_capacity(source.morphism_count());
        for m in source.morphisms() {
            let name = source.mor_name(m);
            match t.mor_map.get(name).map(|v| (v, target.mor(v))) {
                Some((_, Some(x))) => mor_map.push(x),
                Some((v, None)) => report.structural(
                    "dangling_morphism",
                    format!("{name} ↦ {v}: {v} is not a morphism of {}", target.name()),
                ),
                None => {
                    report.structural("mor_map_total", format!("morphism {name} is not mapped"))
                }
            }
        }
        for k in t.obj_map.keys() {
            if source.obj(k).is_none() {
                report.structural(
                    "dangling_object",
                    format!("{k} is not an object of {}", source.name()),
                );
            }
        }
        for k in t.mor_map.keys() {
            if source.mor(k).is_none() {
                report.structural(
                    "dangling_morphism",
                    format!("{k} is not a morphism of {}", source.name()),
                );
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        Ok(Self {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn to_tables(&self, source_name: &str, target_name: &str) -> FunctorTables {
        let (s, t) = (&self.source, &self.target);
        FunctorTables {
            source: source_name.to_string(),
            target: target_name.to_string(),
            obj_map: s
                .objects()
                .map(|o| {
                    (
                        s.obj_name(o).to_string(),
                        t.obj_name(self.obj(o)).to_string(),
                    )
                })
                .collect(),
            mor_map: s
                .morphisms()
                .map(|m| {
                    (
                        s.mor_name(m).to_string(),
                        t.mor_name(self.mor(m)).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        Self {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
            source: c.clone(),
            target: c,
        }
    }

    /// Sends every object to `b` and every morphism to `id_b`.
    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, b: Obj) -> Self {
        let id = target.id(b);
        Self {
            obj_map: vec![b; source.object_count()],
            mor_map: vec![id; source.morphism_count()],
            source,
            target,
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.obj_map[o.0]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m.0]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn after(&self, inner: &FunctorData) -> Result<FunctorData> {
        if !same_category(&inner.target, &self.source) {
            return Err(Error::CategoryMismatch(format!(
                "cannot compose: {} is not {}",
                inner.target.name(),
                self.source.name()
            )));
        }
        Ok(FunctorData {
            source: inner.source.clone(),
            target: self.target.clone(),
            obj_map: inner.obj_map.iter().map(|&o| self.obj(o)).collect(),
            mor_map: inner.mor_map.iter().map(|&m| self.mor(m)).collect(),
        })
    }

    /// Composite of a chain written right to left: `[S, G]` is `S ∘ G`.
    pub fn compose_all(chain: &[&FunctorData]) -> Result<FunctorData> {
        let (last, rest) = chain
            .split_last()
            .ok_or_else(|| Error::CategoryMismatch("empty functor chain".into()))?;
        rest.iter()
            .rev()
            .try_fold((*last).clone(), |acc, f| f.after(&acc))
    }

    pub fn same_shape(&self, other: &FunctorData) -> bool {
        same_category(&self.source, &other.source) && same_category(&self.target, &other.target)
    }
}

/// Checks that a functor preserves domains and codomains, identities and
/// every defined composite.
pub fn validate_functor(f: &FunctorData) -> ValidationReport {
    let (s, t) = (f.source(), f.target());
    let mut report = ValidationReport::new();
    let mut typed = vec![true; s.morphism_count()];
    for m in s.morphisms() {
        let fm = f.mor(m);
        if t.dom(fm) != f.obj(s.dom(m)) || t.cod(fm) != f.obj(s.cod(m)) {
            typed[m.0] = false;
            report.law(
                "preserves_typing",
                format!(
                    "{} : {} → {} is sent to {} : {} → {}",
                    s.mor_name(m),
                    s.obj_name(s.dom(m)),
                    s.obj_name(s.cod(m)),
                    t.mor_name(fm),
                    t.obj_name(t.dom(fm)),
                    t.obj_name(t.cod(fm))
                ),
            );
        }
    }
    for a in s.objects() {
        if f.mor(s.id(a)) != t.id(f.obj(a)) {
            report.law(
                "preserves_identity",
                format!("id_{} is not sent to an identity", s.obj_name(a)),
            );
        }
    }
    for g in s.morphisms() {
        for h in s.morphisms() {
            let Some(gh) = s.try_compose(g, h) else {
                continue;
            };
            if !typed[g.0] || !typed[h.0] || !typed[gh.0] {
                continue;
            }
            if t.try_compose(f.mor(g), f.mor(h)) != Some(f.mor(gh)) {
                report.law(
                    "preserves_composite",
                    format!(
                        "F({} ∘ {}) ≠ F({}) ∘ F({})",
                        s.mor_name(g),
                        s.mor_name(h),
                        s.mor_name(g),
                        s.mor_name(h)
                    ),
                );
            }
        }
    }
    report
}

/// Assignment problem whose solutions are the functors `src → tgt`.
/// Positions are the source objects followed by the source morphisms.
pub struct FunctorSearch {
    src: Arc<FinCategory>,
    tgt: Arc<FinCategory>,
    // composites (g, f, gf) indexed by the largest of the three morphism ids
    checks: Vec<Vec<(Mor, Mor, Mor)>>,
    // per object, a fixed image if one is required
    pinned: Vec<Option<Obj>>,
}

impl FunctorSearch {
    pub fn new(src: Arc<FinCategory>, tgt: Arc<FinCategory>) -> Self {
        let mut checks = vec![Vec::new(); src.morphism_count()];
        for g in src.morphisms() {
            for f in src.morphisms() {
                if let Some(gf) = src.try_compose(g, f) {
                    let last = g.max(f).max(gf);
                    checks[last.0].push((g, f, gf));
                }
            }
        }
        let pinned = vec![None; src.object_count()];
        Self {
            src,
            tgt,
            checks,
            pinned,
        }
    }

    /// Restricts the object image of `o` to `image`.
    pub fn pin(mut self, o: Obj, image: Obj) -> Self {
        self.pinned[o.0] = Some(image);
        self
    }

    fn decode(&self, sol: &[usize]) -> FunctorData {
        let n = self.src.object_count();
        FunctorData {
            source: self.src.clone(),
            target: self.tgt.clone(),
            obj_map: sol[..n].iter().map(|&i| Obj(i)).collect(),
            mor_map: sol[n..].iter().map(|&i| Mor(i)).collect(),
        }
    }
}

impl SearchProblem for FunctorSearch {
    fn positions(&self) -> usize {
        self.src.object_count() + self.src.morphism_count()
    }

    fn candidates(&self, partial: &[usize]) -> Vec<usize> {
        let n = self.src.object_count();
        let pos = partial.len();
        if pos < n {
            return match self.pinned[pos] {
                Some(o) => vec![o.0],
                None => (0..self.tgt.object_count()).collect(),
            };
        }
        let m = Mor(pos - n);
        let a = Obj(partial[self.src.dom(m).0]);
        let b = Obj(partial[self.src.cod(m).0]);
        if self.src.is_identity(m) {
            return vec![self.tgt.id(a).0];
        }
        self.tgt.hom(a, b).iter().map(|m| m.0).collect()
    }

    fn consistent(&self, partial: &[usize]) -> bool {
        let n = self.src.object_count();
        let pos = partial.len() - 1;
        if pos < n {
            return true;
        }
        let image = |m: Mor| Mor(partial[n + m.0]);
        self.checks[pos - n]
            .iter()
            .all(|&(g, f, gf)| self.tgt.try_compose(image(g), image(f)) == Some(image(gf)))
    }
}

/// Stream of all functors `src → tgt`, lexicographic on the object map and
/// then the morphism map.
pub struct FunctorEnumerator {
    inner: Backtrack<FunctorSearch>,
}

impl FunctorEnumerator {
    pub fn new(search: FunctorSearch) -> Self {
        Self {
            inner: Backtrack::new(search),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.inner.nodes()
    }
}

impl Iterator for FunctorEnumerator {
    type Item = FunctorData;

    fn next(&mut self) -> Option<FunctorData> {
        let sol = self.inner.next()?;
        Some(self.inner.problem().decode(&sol))
    }
}

pub fn enumerate_functors(src: &Arc<FinCategory>, tgt: &Arc<FinCategory>) -> FunctorEnumerator {
    FunctorEnumerator::new(FunctorSearch::new(src.clone(), tgt.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::CategoryBuilder;

    fn arrow() -> Arc<FinCategory> {
        Arc::new(FinCategory::chain("2", &["a", "b"]))
    }

    #[test]
    fn identity_and_constant_are_valid() {
        let c = Arc::new(FinCategory::chain("3", &["a", "b", "c"]));
        assert!(validate_functor(&FunctorData::identity(c.clone())).is_valid());
        let k = FunctorData::constant(c.clone(), c.clone(), Obj(1));
        assert!(validate_functor(&k).is_valid());
    }

    #[test]
    fn dropping_a_composite_is_reported() {
        // parallel pair u, v : a ⇉ b followed by e : b → c with e∘u = e∘v = w
        let mut b = CategoryBuilder::new("P");
        let a = b.object("a");
        let bb = b.object("b");
        let c = b.object("c");
        let u = b.morphism("u", a, bb);
        let v = b.morphism("v", a, bb);
        let e = b.morphism("e", bb, c);
        let w = b.morphism("w", a, c);
        b.set_composite(e, u, w);
        b.set_composite(e, v, w);
        let p = Arc::new(b.build().unwrap());
        // target: the same shape with a second arrow w' : a → c
        let mut tb = CategoryBuilder::new("P2");
        let a2 = tb.object("a");
        let b2 = tb.object("b");
        let c2 = tb.object("c");
        let u2 = tb.morphism("u", a2, b2);
        let v2 = tb.morphism("v", a2, b2);
        let e2 = tb.morphism("e", b2, c2);
        let w2 = tb.morphism("w", a2, c2);
        let w3 = tb.morphism("w'", a2, c2);
        tb.set_composite(e2, u2, w2);
        tb.set_composite(e2, v2, w2);
        let q = Arc::new(tb.build().unwrap());
        // the evident inclusion, except that w goes to w'
        let mut mor_map: Vec<Mor> = p
            .morphisms()
            .map(|m| q.mor(p.mor_name(m)).unwrap())
            .collect();
        mor_map[w.0] = w3;
        let f = FunctorData::new(p.clone(), q, vec![a2, b2, c2], mor_map).unwrap();
        let report = validate_functor(&f);
        assert!(report.mentions("preserves_composite"));
        assert!(report.violations.iter().any(|v| v.detail.contains("e ∘ u")));
    }

    #[test]
    fn functors_from_terminal_pick_an_object() {
        let one = Arc::new(FinCategory::terminal("1"));
        let c = Arc::new(FinCategory::chain("3", &["a", "b", "c"]));
        let fs: Vec<_> = enumerate_functors(&one, &c).collect();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0].obj(Obj(0)), Obj(0));
        assert_eq!(fs[2].obj(Obj(0)), Obj(2));
    }

    #[test]
    fn endofunctors_of_the_arrow() {
        let c = arrow();
        let fs: Vec<_> = enumerate_functors(&c, &c).collect();
        assert_eq!(fs.len(), 3);
        for f in &fs {
            assert!(validate_functor(f).is_valid());
        }
        // lexicographic on object maps: (a,a), (a,b), (b,b)
        let objs: Vec<Vec<Obj>> = fs.iter().map(|f| f.obj_map().to_vec()).collect();
        assert_eq!(
            objs,
            vec![
                vec![Obj(0), Obj(0)],
                vec![Obj(0), Obj(1)],
                vec![Obj(1), Obj(1)]
            ]
        );
    }

    #[test]
    fn into_the_empty_category() {
        let c = arrow();
        let empty = Arc::new(FinCategory::empty("0"));
        assert_eq!(enumerate_functors(&c, &empty).count(), 0);
        assert_eq!(enumerate_functors(&empty, &c).count(), 1);
    }

    #[test]
    fn composition_is_table_composition() {
        let c = arrow();
        let k = FunctorData::constant(c.clone(), c.clone(), Obj(1));
        let id = FunctorData::identity(c.clone());
        assert_eq!(k.after(&id).unwrap(), k);
        assert_eq!(id.after(&k).unwrap(), k);
    }
}
