use serde::Serialize;

use crate::error::{Error, Result};

/// A function `{0..dom} → {0..cod}` given by its value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FinSetMap {
    pub dom_size: usize,
    pub cod_size: usize,
    pub table: Vec<usize>,
}

impl FinSetMap {
    pub fn new(dom_size: usize, cod_size: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom_size {
            return Err(Error::Instance(format!(
                "map table has {} entries for a domain of size {dom_size}",
                table.len()
            )));
        }
        if let Some(v) = table.iter().find(|&&v| v >= cod_size) {
            return Err(Error::Instance(format!(
                "map value {v} outside codomain of size {cod_size}"
            )));
        }
        Ok(Self {
            dom_size,
            cod_size,
            table,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dom_size: n,
            cod_size: n,
            table: (0..n).collect(),
        }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &FinSetMap) -> FinSetMap {
        assert_eq!(inner.cod_size, self.dom_size, "maps are not composable");
        FinSetMap {
            dom_size: inner.dom_size,
            cod_size: self.cod_size,
            table: inner.table.iter().map(|&i| self.table[i]).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod_size];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }
}
