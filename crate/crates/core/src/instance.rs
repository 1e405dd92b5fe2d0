//! The JSON instance format: named categories, functors, natural
//! transformations, adjunctions, monads and morphisms of monads, each
//! referring to the others by name.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{
    validate_adjunction, validate_category, validate_functor, validate_nat_trans, AdjunctionData,
    CategoryTables, FinCategory, FunctorData, FunctorTables, NatTransData,
};
use crate::monad::{validate_monad, MonadData};
use crate::psimorph::{validate_psi_morphism, PsiMorphismData};
use crate::report::ValidationReport;

/// A functor named in a natural transformation: a functor name,
/// `id:<category>`, or a list composed right to left (`["S", "G"]` is
/// `S∘G`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctorExpr {
    Name(String),
    Chain(Vec<String>),
}

impl FunctorExpr {
    pub fn name(s: &str) -> Self {
        FunctorExpr::Name(s.to_string())
    }

    pub fn chain(names: &[&str]) -> Self {
        FunctorExpr::Chain(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn identity(category: &str) -> Self {
        FunctorExpr::Name(format!("id:{category}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatTransTables {
    pub source: FunctorExpr,
    pub target: FunctorExpr,
    pub components: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjunctionTables {
    #[serde(rename = "G")]
    pub left: String,
    #[serde(rename = "F")]
    pub right: String,
    pub unit: String,
    pub counit: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadTables {
    pub base: String,
    pub endo: String,
    pub mu: String,
    pub eta: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiTables {
    pub adjunction: String,
    pub s: String,
    pub t: String,
    #[serde(rename = "phi_G")]
    pub phi_g: String,
    #[serde(rename = "phi_F")]
    pub phi_f: String,
}

/// On-disk shape of an instance file. All maps are ordered so that
/// serialization is canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub categories: BTreeMap<String, CategoryTables>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorTables>,
    #[serde(default)]
    pub nat_trans: BTreeMap<String, NatTransTables>,
    #[serde(default)]
    pub adjunctions: BTreeMap<String, AdjunctionTables>,
    #[serde(default)]
    pub monads: BTreeMap<String, MonadTables>,
    #[serde(default)]
    pub psi_morphisms: BTreeMap<String, PsiTables>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Instance(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::Instance(format!("{}: {e}", path.display())))
    }

    /// Adds one morphism of monads together with everything it refers to,
    /// under fixed names (`G`, `F`, `S`, `T`, `unit`, `counit`, `mu_S`,
    /// `eta_S`, `mu_T`, `eta_T`, `phi_G`, `phi_F`) prefixed by `prefix`.
    pub fn from_psi(prefix: &str, name: &str, p: &PsiMorphismData) -> Self {
        let mut file = InstanceFile::default();
        let (d, c) = (p.lower(), p.upper());
        let (dn, cn) = (d.name().to_string(), c.name().to_string());
        file.categories.insert(dn.clone(), d.to_tables());
        file.categories.insert(cn.clone(), c.to_tables());
        let n = |s: &str| format!("{prefix}{s}");
        let mut functor = |key: &str, f: &FunctorData| {
            file.functors
                .insert(n(key), f.to_tables(f.source().name(), f.target().name()));
        };
        functor("G", &p.adj.left);
        functor("F", &p.adj.right);
        functor("S", &p.s.endo);
        functor("T", &p.t.endo);
        let e = |names: &[&str]| {
            if names.len() == 1 {
                FunctorExpr::Name(n(names[0]))
            } else {
                FunctorExpr::Chain(names.iter().map(|s| n(s)).collect())
            }
        };
        let nats: [(&str, FunctorExpr, FunctorExpr, &NatTransData); 8] = [
            (
                "unit",
                FunctorExpr::identity(&dn),
                e(&["F", "G"]),
                &p.adj.unit,
            ),
            (
                "counit",
                e(&["G", "F"]),
                FunctorExpr::identity(&cn),
                &p.adj.counit,
            ),
            ("mu_S", e(&["S", "S"]), e(&["S"]), &p.s.mu),
            ("eta_S", FunctorExpr::identity(&cn), e(&["S"]), &p.s.eta),
            ("mu_T", e(&["T", "T"]), e(&["T"]), &p.t.mu),
            ("eta_T", FunctorExpr::identity(&dn), e(&["T"]), &p.t.eta),
            ("phi_G", e(&["G", "T"]), e(&["S", "G"]), &p.phi_g),
            ("phi_F", e(&["T", "F"]), e(&["F", "S"]), &p.phi_f),
        ];
        for (key, source, target, t) in nats {
            file.nat_trans.insert(
                n(key),
                NatTransTables {
                    source,
                    target,
                    components: t.to_tables(),
                },
            );
        }
        file.adjunctions.insert(
            n("adj"),
            AdjunctionTables {
                left: n("G"),
                right: n("F"),
                unit: n("unit"),
                counit: n("counit"),
            },
        );
        file.monads.insert(
            n("S"),
            MonadTables {
                base: cn,
                endo: n("S"),
                mu: n("mu_S"),
                eta: n("eta_S"),
            },
        );
        file.monads.insert(
            n("T"),
            MonadTables {
                base: dn,
                endo: n("T"),
                mu: n("mu_T"),
                eta: n("eta_T"),
            },
        );
        file.psi_morphisms.insert(
            name.to_string(),
            PsiTables {
                adjunction: n("adj"),
                s: n("S"),
                t: n("T"),
                phi_g: n("phi_G"),
                phi_f: n("phi_F"),
            },
        );
        file
    }
}

/// An instance file with every name resolved. Only shapes are checked
/// here; the laws are checked by [`Instance::validate_all`].
#[derive(Clone, Debug)]
pub struct Instance {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub functors: BTreeMap<String, FunctorData>,
    pub nat_trans: BTreeMap<String, NatTransData>,
    pub adjunctions: BTreeMap<String, AdjunctionData>,
    pub monads: BTreeMap<String, MonadData>,
    pub psi_morphisms: BTreeMap<String, PsiMorphismData>,
}

fn dangling(kind: &str, name: &str, owner: &str) -> Error {
    Error::Instance(format!("{owner} refers to unknown {kind} `{name}`"))
}

fn shape(owner: &str, report: ValidationReport) -> Error {
    Error::invalid(owner.to_string(), report)
}

impl Instance {
    pub fn load(path: &Path) -> Result<Self> {
        Self::resolve(&InstanceFile::read(path)?)
    }

    pub fn resolve(file: &InstanceFile) -> Result<Self> {
        let mut categories = BTreeMap::new();
        for (name, tables) in &file.categories {
            let c = FinCategory::from_tables(name, tables)
                .map_err(|r| shape(&format!("category `{name}`"), r))?;
            categories.insert(name.clone(), Arc::new(c));
        }
        let category = |name: &str, owner: &str| {
            categories
                .get(name)
                .cloned()
                .ok_or_else(|| dangling("category", name, owner))
        };
        let mut functors = BTreeMap::new();
        for (name, t) in &file.functors {
            let owner = format!("functor `{name}`");
            let f = FunctorData::from_tables(
                category(&t.source, &owner)?,
                category(&t.target, &owner)?,
                t,
            )
            .map_err(|r| shape(&owner, r))?;
            functors.insert(name.clone(), f);
        }
        let expr = |e: &FunctorExpr, owner: &str| -> Result<FunctorData> {
            let one = |s: &str| -> Result<FunctorData> {
                if let Some(c) = s.strip_prefix("id:") {
                    return Ok(FunctorData::identity(category(c, owner)?));
                }
                functors
                    .get(s)
                    .cloned()
                    .ok_or_else(|| dangling("functor", s, owner))
            };
            match e {
                FunctorExpr::Name(s) => one(s),
                FunctorExpr::Chain(names) => {
                    let parts = names.iter().map(|s| one(s)).collect::<Result<Vec<_>>>()?;
                    let refs: Vec<&FunctorData> = parts.iter().collect();
                    FunctorData::compose_all(&refs)
                        .map_err(|e| Error::Instance(format!("{owner}: {e}")))
                }
            }
        };
        let mut nat_trans = BTreeMap::new();
        for (name, t) in &file.nat_trans {
            let owner = format!("natural transformation `{name}`");
            let n = NatTransData::from_tables(
                expr(&t.source, &owner)?,
                expr(&t.target, &owner)?,
                &t.components,
            )
            .map_err(|r| shape(&owner, r))?;
            nat_trans.insert(name.clone(), n);
        }
        let functor = |name: &str, owner: &str| {
            functors
                .get(name)
                .cloned()
                .ok_or_else(|| dangling("functor", name, owner))
        };
        let nat = |name: &str, owner: &str| {
            nat_trans
                .get(name)
                .cloned()
                .ok_or_else(|| dangling("natural transformation", name, owner))
        };
        let mut adjunctions = BTreeMap::new();
        for (name, t) in &file.adjunctions {
            let owner = format!("adjunction `{name}`");
            adjunctions.insert(
                name.clone(),
                AdjunctionData {
                    left: functor(&t.left, &owner)?,
                    right: functor(&t.right, &owner)?,
                    unit: nat(&t.unit, &owner)?,
                    counit: nat(&t.counit, &owner)?,
                },
            );
        }
        let mut monads = BTreeMap::new();
        for (name, t) in &file.monads {
            let owner = format!("monad `{name}`");
            let base = category(&t.base, &owner)?;
            let endo = functor(&t.endo, &owner)?;
            if !crate::fincat::same_category(endo.source(), &base) {
                return Err(Error::Instance(format!(
                    "{owner}: endofunctor does not live on {}",
                    t.base
                )));
            }
            monads.insert(
                name.clone(),
                MonadData {
                    endo,
                    mu: nat(&t.mu, &owner)?,
                    eta: nat(&t.eta, &owner)?,
                },
            );
        }
        let mut psi_morphisms = BTreeMap::new();
        for (name, t) in &file.psi_morphisms {
            let owner = format!("psi-morphism `{name}`");
            let adj = adjunctions
                .get(&t.adjunction)
                .cloned()
                .ok_or_else(|| dangling("adjunction", &t.adjunction, &owner))?;
            let monad = |m: &str| {
                monads
                    .get(m)
                    .cloned()
                    .ok_or_else(|| dangling("monad", m, &owner))
            };
            psi_morphisms.insert(
                name.clone(),
                PsiMorphismData {
                    adj,
                    s: monad(&t.s)?,
                    t: monad(&t.t)?,
                    phi_g: nat(&t.phi_g, &owner)?,
                    phi_f: nat(&t.phi_f, &owner)?,
                },
            );
        }
        Ok(Self {
            categories,
            functors,
            nat_trans,
            adjunctions,
            monads,
            psi_morphisms,
        })
    }

    /// Runs every validator, keyed `kind/name`, in name order.
    pub fn validate_all(&self) -> BTreeMap<String, ValidationReport> {
        let mut out = BTreeMap::new();
        for (name, c) in &self.categories {
            out.insert(format!("category/{name}"), validate_category(c));
        }
        for (name, f) in &self.functors {
            out.insert(format!("functor/{name}"), validate_functor(f));
        }
        for (name, t) in &self.nat_trans {
            out.insert(format!("nat_trans/{name}"), validate_nat_trans(t));
        }
        for (name, a) in &self.adjunctions {
            out.insert(format!("adjunction/{name}"), validate_adjunction(a));
        }
        for (name, m) in &self.monads {
            out.insert(format!("monad/{name}"), validate_monad(m));
        }
        for (name, p) in &self.psi_morphisms {
            out.insert(format!("psi_morphism/{name}"), validate_psi_morphism(p));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::psimorph::classical_embed;

    fn identity_file() -> InstanceFile {
        let c = corpus::arrow();
        let m = MonadData::identity(c);
        let p = classical_embed(&m, &m, &NatTransData::identity(&m.endo)).unwrap();
        InstanceFile::from_psi("", "identity", &p)
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let file = identity_file();
        let text = file.to_json();
        let again = InstanceFile::parse(&text).unwrap();
        assert_eq!(again.to_json(), text);
        let inst = Instance::resolve(&again).unwrap();
        assert!(inst.validate_all().values().all(|r| r.is_valid()));
        let p = &inst.psi_morphisms["identity"];
        let rebuilt = InstanceFile::from_psi("", "identity", p);
        assert_eq!(rebuilt.to_json(), text);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let text = r#"{"categories": {}, "extras": {}}"#;
        assert!(matches!(InstanceFile::parse(text), Err(Error::Json(_))));
    }

    #[test]
    fn dangling_reference_is_reported() {
        let mut file = identity_file();
        file.monads.get_mut("S").unwrap().mu = "nope".into();
        let err = Instance::resolve(&file).unwrap_err();
        assert!(err.to_string().contains("nope"), "{err}");
    }

    #[test]
    fn parse_error_has_position() {
        let err = InstanceFile::parse("{\n  \"categories\": [").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
