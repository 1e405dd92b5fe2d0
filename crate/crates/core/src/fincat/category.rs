//! Finite categories as explicit tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Index of an object inside its [`FinCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Obj(pub usize);

/// Index of a morphism inside its [`FinCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Mor(pub usize);

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// String keyed tables, the on-disk shape of a category.
///
/// `morphisms` holds `(id, dom, cod)` triples and `compose` holds
/// `(g, f, g∘f)` triples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryTables {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, String, String)>,
    pub identity: BTreeMap<String, String>,
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Arrow {
    name: String,
    dom: Obj,
    cod: Obj,
}

/// A finite category. Construction guarantees the tables are well formed
/// (every id resolves, identities and composites are typed correctly and
/// composition is total on composable pairs); the category axioms are
/// checked separately by [`validate_category`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<Mor>,
    // composite of g after f lives at g * n + f
    table: Vec<Option<Mor>>,
    homs: Vec<Vec<Mor>>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
}

impl FinCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.arrows.len()).map(Mor)
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.arrows[m.0].name
    }

    pub fn obj(&self, name: &str) -> Option<Obj> {
        self.obj_index.get(name).copied()
    }

    pub fn mor(&self, name: &str) -> Option<Mor> {
        self.mor_index.get(name).copied()
    }

    pub fn dom(&self, m: Mor) -> Obj {
        self.arrows[m.0].dom
    }

    pub fn cod(&self, m: Mor) -> Obj {
        self.arrows[m.0].cod
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.dom(m).0] == m
    }

    /// Morphisms `a → b` in declaration order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    /// Composite `g ∘ f`, or `None` if the pair is not composable.
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.table[g.0 * self.arrows.len() + f.0]
    }

    /// Composite `g ∘ f`, failing with a domain mismatch error.
    pub fn compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        self.try_compose(g, f).ok_or_else(|| Error::DomainMismatch {
            g: self.mor_name(g).to_string(),
            f: self.mor_name(f).to_string(),
            cod: self.obj_name(self.cod(f)).to_string(),
            dom: self.obj_name(self.dom(g)).to_string(),
        })
    }

    /// Composite `g ∘ f` for a pair the caller knows to be composable.
    ///
    /// Panics otherwise; reserved for code paths where typing has already
    /// been validated.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        match self.try_compose(g, f) {
            Some(h) => h,
            None => panic!(
                "{}: {} ∘ {} is not composable",
                self.name,
                self.mor_name(g),
                self.mor_name(f)
            ),
        }
    }

    /// Composite of a path written right to left: `comp_all(&[h, g, f]) = h∘g∘f`.
    pub fn comp_all(&self, path: &[Mor]) -> Mor {
        let (last, rest) = path.split_last().expect("empty path");
        rest.iter().rev().fold(*last, |acc, &m| self.comp(m, acc))
    }

    /// Two-sided inverse of `m`, if any.
    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let (a, b) = (self.dom(m), self.cod(m));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&n| self.comp(n, m) == self.id(a) && self.comp(m, n) == self.id(b))
    }

    pub fn is_iso(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    /// Isomorphisms `a → b` in declaration order.
    pub fn isos(&self, a: Obj, b: Obj) -> Vec<Mor> {
        self.hom(a, b)
            .iter()
            .copied()
            .filter(|&m| self.is_iso(m))
            .collect()
    }

    pub fn isomorphic(&self, a: Obj, b: Obj) -> bool {
        self.hom(a, b).iter().any(|&m| self.is_iso(m))
    }

    /// Parse string tables into a category. Structural problems (dangling
    /// ids, duplicate names, mistyped or missing composites) are returned
    /// as a report; axioms are not checked here.
    pub fn from_tables(name: &str, t: &CategoryTables) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::new();
        let mut b = CategoryBuilder::new(name);
        b.auto_identity = false;
        for o in &t.objects {
            if b.obj_index.contains_key(o) {
                report.structural("duplicate_object", format!("object {o} declared twice"));
                continue;
            }
            b.object(o);
        }
        for (m, d, c) in &t.morphisms {
            if b.mor_index.contains_key(m) {
                report.structural("duplicate_morphism", format!("morphism {m} declared twice"));
                continue;
            }
            match (b.obj_index.get(d), b.obj_index.get(c)) {
                (Some(&d), Some(&c)) => {
                    b.morphism(m, d, c);
                }
                _ => report.structural(
                    "dangling_object",
                    format!("morphism {m}: {d} → {c} names an undeclared object"),
                ),
            }
        }
        for (o, m) in &t.identity {
            match (b.obj_index.get(o), b.mor_index.get(m)) {
                (Some(&o), Some(&m)) => b.identity[o.0] = Some(m),
                _ => report.structural(
                    "dangling_identity",
                    format!("identity entry {o} ↦ {m} names an undeclared id"),
                ),
            }
        }
        for (g, f, gf) in &t.compose {
            match (b.mor_index.get(g), b.mor_index.get(f), b.mor_index.get(gf)) {
                (Some(&g), Some(&f), Some(&gf)) => {
                    if b.composites.insert((g, f), gf).is_some() {
                        report.structural(
                            "duplicate_composite",
                            format!(
                                "composite {} ∘ {} given twice",
                                b.arrows[g.0].name, b.arrows[f.0].name
                            ),
                        );
                    }
                }
                _ => report.structural(
                    "dangling_morphism",
                    format!("compose entry [{g}, {f}, {gf}] names an undeclared morphism"),
                ),
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        b.finish(false)
    }

    /// Inverse of [`FinCategory::from_tables`].
    pub fn to_tables(&self) -> CategoryTables {
        let mut compose = Vec::new();
        for g in self.morphisms() {
            for f in self.morphisms() {
                if let Some(gf) = self.try_compose(g, f) {
                    compose.push((
                        self.mor_name(g).to_string(),
                        self.mor_name(f).to_string(),
                        self.mor_name(gf).to_string(),
                    ));
                }
            }
        }
        CategoryTables {
            objects: self.objects.clone(),
            morphisms: self
                .arrows
                .iter()
                .map(|a| {
                    (
                        a.name.clone(),
                        self.obj_name(a.dom).to_string(),
                        self.obj_name(a.cod).to_string(),
                    )
                })
                .collect(),
            identity: self
                .objects()
                .map(|o| {
                    (
                        self.obj_name(o).to_string(),
                        self.mor_name(self.id(o)).to_string(),
                    )
                })
                .collect(),
            compose,
        }
    }

    /// The category with no objects.
    pub fn empty(name: &str) -> Self {
        CategoryBuilder::new(name).build().expect("empty category")
    }

    /// One object, one identity.
    pub fn terminal(name: &str) -> Self {
        let mut b = CategoryBuilder::new(name);
        b.object("*");
        b.build().expect("terminal category")
    }

    /// The linear order `o0 → o1 → … → on` as a thin category. Arrows are
    /// named `x<y` (and `id_x` for identities).
    pub fn chain(name: &str, objects: &[&str]) -> Self {
        let n = objects.len();
        Self::poset(name, objects, |i, j| i <= j && j < n)
    }

    /// Thin category on `objects` with an arrow `i → j` exactly when
    /// `leq(i, j)`; `leq` must be a preorder.
    pub fn poset(name: &str, objects: &[&str], leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut b = CategoryBuilder::new(name);
        let obs: Vec<Obj> = objects.iter().map(|o| b.object(o)).collect();
        let mut arrow = HashMap::new();
        for (i, &a) in obs.iter().enumerate() {
            for (j, &c) in obs.iter().enumerate() {
                if i != j && leq(i, j) {
                    let m = b.morphism(&format!("{}<{}", objects[i], objects[j]), a, c);
                    arrow.insert((i, j), m);
                }
            }
        }
        for i in 0..obs.len() {
            arrow.insert((i, i), b.identity[i].expect("identity"));
        }
        for (&(i, j), &f) in &arrow {
            for (&(j2, k), &g) in &arrow {
                if j == j2 {
                    b.set_composite(g, f, arrow[&(i, k)]);
                }
            }
        }
        b.build().expect("poset category")
    }
}

/// Pointer equality with a fallback to table equality.
pub fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Incremental construction of a [`FinCategory`]. Identities are created
/// with their objects and composites involving identities are filled in
/// automatically.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<Option<Mor>>,
    composites: HashMap<(Mor, Mor), Mor>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
    auto_identity: bool,
}

impl CategoryBuilder {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            objects: Vec::new(),
            arrows: Vec::new(),
            identity: Vec::new(),
            composites: HashMap::new(),
            obj_index: HashMap::new(),
            mor_index: HashMap::new(),
            auto_identity: true,
        }
    }

    /// Adds an object together with its identity `id_<name>`.
    pub fn object(&mut self, name: &str) -> Obj {
        let o = Obj(self.objects.len());
        self.objects.push(name.to_string());
        self.obj_index.insert(name.to_string(), o);
        self.identity.push(None);
        if self.auto_identity {
            let id = self.morphism(&format!("id_{name}"), o, o);
            self.identity[o.0] = Some(id);
        }
        o
    }

    /// Adds an object whose identity is declared explicitly later with
    /// [`CategoryBuilder::set_identity`].
    pub fn bare_object(&mut self, name: &str) -> Obj {
        let saved = self.auto_identity;
        self.auto_identity = false;
        let o = self.object(name);
        self.auto_identity = saved;
        o
    }

    pub fn set_identity(&mut self, o: Obj, m: Mor) {
        self.identity[o.0] = Some(m);
    }

    pub fn morphism(&mut self, name: &str, dom: Obj, cod: Obj) -> Mor {
        let m = Mor(self.arrows.len());
        self.arrows.push(Arrow {
            name: name.to_string(),
            dom,
            cod,
        });
        self.mor_index.insert(name.to_string(), m);
        m
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o.0].expect("identity not set")
    }

    pub fn mor(&self, name: &str) -> Mor {
        self.mor_index[name]
    }

    pub fn set_composite(&mut self, g: Mor, f: Mor, gf: Mor) {
        self.composites.insert((g, f), gf);
    }

    /// Validates table shape and returns the category. Composites with an
    /// identity factor that were not given explicitly are filled in.
    pub fn build(self) -> Result<FinCategory> {
        let name = self.name.clone();
        self.finish(true)
            .map_err(|report| Error::invalid(format!("category {name}"), report))
    }

    fn finish(mut self, fill_identities: bool) -> Result<FinCategory, ValidationReport> {
        let mut report = ValidationReport::new();
        let n_obj = self.objects.len();
        let n_mor = self.arrows.len();
        let mut identity = Vec::with_capacity(n_obj);
        for (i, id) in self.identity.iter().enumerate() {
            match id {
                Some(m) => identity.push(*m),
                None => {
                    report.structural(
                        "missing_identity",
                        format!("object {} has no identity", self.objects[i]),
                    );
                    identity.push(Mor(usize::MAX));
                }
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        if fill_identities {
            for f in 0..n_mor {
                let a = &self.arrows[f];
                let (d, c) = (a.dom, a.cod);
                self.composites
                    .entry((identity[c.0], Mor(f)))
                    .or_insert(Mor(f));
                self.composites
                    .entry((Mor(f), identity[d.0]))
                    .or_insert(Mor(f));
            }
        }
        let mut table = vec![None; n_mor * n_mor];
        let mut keys: Vec<_> = self.composites.iter().map(|(k, v)| (*k, *v)).collect();
        keys.sort();
        for ((g, f), gf) in keys {
            let (ag, af, agf) = (&self.arrows[g.0], &self.arrows[f.0], &self.arrows[gf.0]);
            if ag.dom != af.cod {
                report.structural(
                    "composite_not_composable",
                    format!(
                        "composite given for non-composable pair {} ∘ {}",
                        ag.name, af.name
                    ),
                );
            } else if agf.dom != af.dom || agf.cod != ag.cod {
                report.structural(
                    "composite_typing",
                    format!(
                        "{} ∘ {} = {} has the wrong domain or codomain",
                        ag.name, af.name, agf.name
                    ),
                );
            } else {
                table[g.0 * n_mor + f.0] = Some(gf);
            }
        }
        for g in 0..n_mor {
            for f in 0..n_mor {
                if self.arrows[g].dom == self.arrows[f].cod && table[g * n_mor + f].is_none() {
                    report.structural(
                        "missing_composite",
                        format!(
                            "no composite given for {} ∘ {}",
                            self.arrows[g].name, self.arrows[f].name
                        ),
                    );
                }
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for (i, a) in self.arrows.iter().enumerate() {
            homs[a.dom.0 * n_obj + a.cod.0].push(Mor(i));
        }
        Ok(FinCategory {
            name: self.name,
            objects: self.objects,
            arrows: self.arrows,
            identity,
            table,
            homs,
            obj_index: self.obj_index,
            mor_index: self.mor_index,
        })
    }
}

/// Checks the category axioms: identities are endomorphisms of their
/// object, both unit laws, and associativity on every composable triple.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    for a in c.objects() {
        let id = c.id(a);
        if c.dom(id) != a || c.cod(id) != a {
            report.law(
                "identity_typing",
                format!(
                    "identity {} of {} is not an endomorphism of it",
                    c.mor_name(id),
                    c.obj_name(a)
                ),
            );
        }
    }
    if !report.is_valid() {
        return report;
    }
    for f in c.morphisms() {
        if c.comp(f, c.id(c.dom(f))) != f {
            report.law(
                "right_unit",
                format!(
                    "{} ∘ id_{} ≠ {}",
                    c.mor_name(f),
                    c.obj_name(c.dom(f)),
                    c.mor_name(f)
                ),
            );
        }
        if c.comp(c.id(c.cod(f)), f) != f {
            report.law(
                "left_unit",
                format!(
                    "id_{} ∘ {} ≠ {}",
                    c.obj_name(c.cod(f)),
                    c.mor_name(f),
                    c.mor_name(f)
                ),
            );
        }
    }
    for f in c.morphisms() {
        let b = c.cod(f);
        for g in c.morphisms().filter(|&g| c.dom(g) == b) {
            let gf = c.comp(g, f);
            let cc = c.cod(g);
            for h in c.morphisms().filter(|&h| c.dom(h) == cc) {
                let lhs = c.comp(h, gf);
                let rhs = c.comp(c.comp(h, g), f);
                if lhs != rhs {
                    report.law(
                        "associativity",
                        format!(
                            "({} ∘ {}) ∘ {} ≠ {} ∘ ({} ∘ {})",
                            c.mor_name(h),
                            c.mor_name(g),
                            c.mor_name(f),
                            c.mor_name(h),
                            c.mor_name(g),
                            c.mor_name(f)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// Structural parse followed by the axiom check.
pub fn validate_category_tables(name: &str, t: &CategoryTables) -> ValidationReport {
    match FinCategory::from_tables(name, t) {
        Ok(c) => validate_category(&c),
        Err(report) => report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_tables() -> CategoryTables {
        CategoryTables {
            objects: vec!["a".into(), "b".into()],
            morphisms: vec![
                ("id_a".into(), "a".into(), "a".into()),
                ("id_b".into(), "b".into(), "b".into()),
                ("f".into(), "a".into(), "b".into()),
            ],
            identity: [("a", "id_a"), ("b", "id_b")]
                .into_iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect(),
            compose: vec![
                ("id_a".into(), "id_a".into(), "id_a".into()),
                ("id_b".into(), "id_b".into(), "id_b".into()),
                ("f".into(), "id_a".into(), "f".into()),
                ("id_b".into(), "f".into(), "f".into()),
            ],
        }
    }

    #[test]
    fn terminal_is_valid() {
        let t = FinCategory::terminal("1");
        assert!(validate_category(&t).is_valid());
        assert_eq!(t.morphism_count(), 1);
    }

    #[test]
    fn chain_tables_are_valid() {
        let report = validate_category_tables("2", &arrow_tables());
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn broken_right_unit_names_the_morphism() {
        let mut t = arrow_tables();
        t.morphisms.push(("f2".into(), "a".into(), "b".into()));
        t.compose.push(("f2".into(), "id_a".into(), "f".into()));
        t.compose.push(("id_b".into(), "f2".into(), "f2".into()));
        let report = validate_category_tables("bad", &t);
        assert!(report.mentions("right_unit"), "{report}");
        assert!(report.violations.iter().any(|v| v.detail.contains("f2")));
        assert!(!report.has_structural());
    }

    #[test]
    fn dangling_ids_are_structural() {
        let mut t = arrow_tables();
        t.morphisms.push(("g".into(), "a".into(), "nowhere".into()));
        let report = validate_category_tables("bad", &t);
        assert!(report.has_structural());
        assert!(report.mentions("dangling_object"));
    }

    #[test]
    fn missing_composite_is_structural() {
        let mut t = arrow_tables();
        t.compose.pop();
        let report = validate_category_tables("bad", &t);
        assert!(report.mentions("missing_composite"), "{report}");
    }

    #[test]
    fn compose_in_three_chain() {
        let c = FinCategory::chain("3", &["a", "b", "c"]);
        assert!(validate_category(&c).is_valid());
        let f = c.mor("a<b").unwrap();
        let g = c.mor("b<c").unwrap();
        assert_eq!(c.mor_name(c.compose(g, f).unwrap()), "a<c");
        assert_eq!(c.compose(c.id(c.obj("b").unwrap()), f).unwrap(), f);
        assert!(matches!(c.compose(f, g), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn tables_round_trip() {
        let c = FinCategory::chain("3", &["a", "b", "c"]);
        let back = FinCategory::from_tables("3", &c.to_tables()).unwrap();
        assert_eq!(back, c);
    }
}
