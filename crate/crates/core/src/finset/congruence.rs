use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::algebra::{operations, FinAlgebra};
use crate::finset::map::FinSetMap;

/// An equivalence relation on `{0..n}` as canonical class labels: classes
/// are numbered in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub classes: usize,
}

impl Partition {
    /// Relabels arbitrary class keys canonically.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut fresh = std::collections::HashMap::new();
        let class_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = fresh.len();
                *fresh.entry(*l).or_insert(next)
            })
            .collect();
        Self {
            classes: fresh.len(),
            class_of,
        }
    }

    pub fn discrete(n: usize) -> Self {
        Self {
            class_of: (0..n).collect(),
            classes: n,
        }
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Least element of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let reps = self.representatives();
        (0..self.class_of.len()).all(|x| other.related(x, reps[self.class_of[x]]))
    }

    pub fn projection(&self) -> FinSetMap {
        FinSetMap {
            dom_size: self.class_of.len(),
            cod_size: self.classes,
            table: self.class_of.clone(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    /// Merges the classes of `x` and `y`; false if already merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // keep the smaller root so the result is order independent
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

/// The least congruence on `a` relating each seed pair.
///
/// Every merged pair is pushed onto a worklist and propagated through the
/// generating operations, unary ones directly and binary ones against
/// every element (both binary operations of the catalogue are
/// commutative).
pub fn congruence_closure(a: &FinAlgebra, seeds: &[(usize, usize)]) -> Partition {
    let n = a.carrier();
    let ops = operations(a.monad());
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(x, y) in seeds {
        if uf.union(x, y) {
            work.push((x, y));
        }
    }
    while let Some((x, y)) = work.pop() {
        for &op in &ops {
            match op.arity() {
                1 => {
                    let (fx, fy) = (a.op(op, x, 0), a.op(op, y, 0));
                    if uf.union(fx, fy) {
                        work.push((fx, fy));
                    }
                }
                2 => {
                    for z in 0..n {
                        let (fx, fy) = (a.op(op, x, z), a.op(op, y, z));
                        if uf.union(fx, fy) {
                            work.push((fx, fy));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Partition::from_labels(&labels)
}

/// The quotient algebra of `a` by a congruence.
pub fn quotient(a: &FinAlgebra, p: &Partition) -> FinAlgebra {
    FinAlgebra::quotient_of(a.clone(), p.class_of.clone(), p.representatives())
}

/// Coequalizer of parallel algebra maps `f, g : A → b`, as the quotient of
/// `b` by the congruence generated by `f(i) ~ g(i)`, with its projection.
pub fn congruence_coequalizer(
    b: &FinAlgebra,
    f: &FinSetMap,
    g: &FinSetMap,
) -> Result<(FinAlgebra, FinSetMap)> {
    if f.dom_size != g.dom_size || f.cod_size != b.carrier() || g.cod_size != b.carrier() {
        return Err(Error::NotParallel {
            f: format!("{}→{}", f.dom_size, f.cod_size),
            g: format!("{}→{}", g.dom_size, g.cod_size),
        });
    }
    let seeds: Vec<_> = (0..f.dom_size).map(|i| (f.apply(i), g.apply(i))).collect();
    let p = congruence_closure(b, &seeds);
    Ok((quotient(b, &p), p.projection()))
}
