//! Coequalizers found by enumerating cocones and checking the universal
//! property directly.

use super::category::{FinCategory, Mor, Obj};
use crate::error::{Error, Result};

fn check_parallel(c: &FinCategory, f: Mor, g: Mor) -> Result<()> {
    if c.dom(f) != c.dom(g) || c.cod(f) != c.cod(g) {
        return Err(Error::NotParallel {
            f: c.mor_name(f).to_string(),
            g: c.mor_name(g).to_string(),
        });
    }
    Ok(())
}

/// Every cocone `e : cod f → q` with `e∘f = e∘g`, ordered by `(q, e)`.
pub fn cocones(c: &FinCategory, f: Mor, g: Mor) -> Result<Vec<(Obj, Mor)>> {
    check_parallel(c, f, g)?;
    let b = c.cod(f);
    let mut out = Vec::new();
    for q in c.objects() {
        for &e in c.hom(b, q) {
            if c.comp(e, f) == c.comp(e, g) {
                out.push((q, e));
            }
        }
    }
    Ok(out)
}

/// Morphisms `h : cod e → cod target` with `h ∘ e = target`.
pub fn factorizations(c: &FinCategory, e: Mor, target: Mor) -> Vec<Mor> {
    if c.dom(e) != c.dom(target) {
        return Vec::new();
    }
    c.hom(c.cod(e), c.cod(target))
        .iter()
        .copied()
        .filter(|&h| c.comp(h, e) == target)
        .collect()
}

/// The unique `h` with `h ∘ e = target`; errors if there is none or more
/// than one.
pub fn unique_factorization(c: &FinCategory, e: Mor, target: Mor) -> Result<Mor> {
    match factorizations(c, e, target).as_slice() {
        [h] => Ok(*h),
        [] => Err(Error::Factorization(format!(
            "{} does not factor through {}",
            c.mor_name(target),
            c.mor_name(e)
        ))),
        many => Err(Error::Factorization(format!(
            "{} factors through {} in {} ways",
            c.mor_name(target),
            c.mor_name(e),
            many.len()
        ))),
    }
}

/// Whether `e` coequalizes `(f, g)` and every other cocone factors through
/// it uniquely.
pub fn is_coequalizer(c: &FinCategory, f: Mor, g: Mor, e: Mor) -> Result<bool> {
    let all = cocones(c, f, g)?;
    if c.dom(e) != c.cod(f) || c.comp(e, f) != c.comp(e, g) {
        return Ok(false);
    }
    Ok(all
        .iter()
        .all(|&(_, other)| factorizations(c, e, other).len() == 1))
}

/// Coequalizer of a parallel pair, or `None` if the category has none.
/// Candidates are scanned in `(object id, morphism id)` order and the first
/// universal one is returned.
pub fn coequalizer(c: &FinCategory, f: Mor, g: Mor) -> Result<Option<(Obj, Mor)>> {
    let all = cocones(c, f, g)?;
    for &(q, e) in &all {
        if all
            .iter()
            .all(|&(_, other)| factorizations(c, e, other).len() == 1)
        {
            return Ok(Some((q, e)));
        }
    }
    Ok(None)
}

/// A common section `s` of the pair (`f∘s = g∘s = id`), if any.
pub fn common_section(c: &FinCategory, f: Mor, g: Mor) -> Option<Mor> {
    let (a, b) = (c.dom(f), c.cod(f));
    if c.dom(g) != a || c.cod(g) != b {
        return None;
    }
    c.hom(b, a)
        .iter()
        .copied()
        .find(|&s| c.comp(f, s) == c.id(b) && c.comp(g, s) == c.id(b))
}

/// First reflexive pair (in id order) that has no coequalizer.
pub fn missing_reflexive_coequalizer(c: &FinCategory) -> Option<(Mor, Mor)> {
    for a in c.objects() {
        for b in c.objects() {
            let hom = c.hom(a, b);
            for (i, &f) in hom.iter().enumerate() {
                for &g in &hom[i..] {
                    if common_section(c, f, g).is_some()
                        && coequalizer(c, f, g).expect("parallel").is_none()
                    {
                        return Some((f, g));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::category::CategoryBuilder;

    /// `u, v : a ⇉ b` and nothing else.
    fn parallel_pair() -> FinCategory {
        let mut b = CategoryBuilder::new("Par");
        let a = b.object("a");
        let bo = b.object("b");
        b.morphism("u", a, bo);
        b.morphism("v", a, bo);
        b.build().unwrap()
    }

    #[test]
    fn equal_pair_has_identity_coequalizer() {
        let c = FinCategory::chain("2", &["a", "b"]);
        let f = c.mor("a<b").unwrap();
        assert_eq!(coequalizer(&c, f, f).unwrap(), Some((Obj(1), c.id(Obj(1)))));
        let id = c.id(Obj(0));
        assert_eq!(coequalizer(&c, id, id).unwrap(), Some((Obj(0), id)));
    }

    #[test]
    fn bare_parallel_pair_has_none() {
        let c = parallel_pair();
        let (u, v) = (c.mor("u").unwrap(), c.mor("v").unwrap());
        assert_eq!(coequalizer(&c, u, v).unwrap(), None);
        // the only cocone candidate would be id_b and it does not coequalize
        assert!(cocones(&c, u, v).unwrap().is_empty());
    }

    #[test]
    fn non_parallel_is_an_error() {
        let c = FinCategory::chain("3", &["a", "b", "c"]);
        let f = c.mor("a<b").unwrap();
        let g = c.mor("b<c").unwrap();
        assert!(matches!(
            coequalizer(&c, f, g),
            Err(Error::NotParallel { .. })
        ));
    }

    #[test]
    fn added_coequalizer_is_found() {
        let mut b = CategoryBuilder::new("ParCoeq");
        let a = b.object("a");
        let bo = b.object("b");
        let c = b.object("c");
        let u = b.morphism("u", a, bo);
        let v = b.morphism("v", a, bo);
        let e = b.morphism("e", bo, c);
        let w = b.morphism("w", a, c);
        b.set_composite(e, u, w);
        b.set_composite(e, v, w);
        let cat = b.build().unwrap();
        assert_eq!(coequalizer(&cat, u, v).unwrap(), Some((c, e)));
        assert!(is_coequalizer(&cat, u, v, e).unwrap());
        assert!(missing_reflexive_coequalizer(&cat).is_none());
    }
}
