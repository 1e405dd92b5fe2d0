use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::map::FinSetMap;
use crate::finset::monads::{enumerable_size, CatalogueMonad, FiniteMonad};
use crate::report::ValidationReport;

/// Largest carrier the backend will build a free or quotient algebra on.
pub const CARRIER_LIMIT: usize = 1 << 12;

/// Generating operations of a catalogue theory. Congruences are exactly
/// the equivalences closed under the non-constant ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Op {
    /// The base point of a pointed set.
    Point,
    /// The empty join or the zero vector.
    Zero,
    Join,
    Add,
    /// Action of a group element.
    Act(usize),
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Point | Op::Zero => 0,
            Op::Act(_) => 1,
            Op::Join | Op::Add => 2,
        }
    }
}

pub fn operations(m: &CatalogueMonad) -> Vec<Op> {
    match m {
        CatalogueMonad::Maybe => vec![Op::Point],
        CatalogueMonad::Powerset => vec![Op::Zero, Op::Join],
        CatalogueMonad::VecF2 => vec![Op::Zero, Op::Add],
        CatalogueMonad::GSet(g) => (0..g.order()).map(Op::Act).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// `λ` tabulated over the indices of `T(carrier)`.
    Table(Vec<usize>),
    /// `(T base, μ_base)`.
    Free { base: usize },
    /// The quotient of `parent` identifying elements with equal `class_of`;
    /// `reps[k]` is some element of class `k`.
    Quotient {
        parent: Box<FinAlgebra>,
        class_of: Vec<usize>,
        reps: Vec<usize>,
    },
}

/// An algebra for a catalogue monad on `{0..carrier}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    monad: CatalogueMonad,
    carrier: usize,
    structure: Structure,
}

impl FinAlgebra {
    /// A tabulated structure map. Only the shape is checked here; see
    /// [`check_algebra`] for the laws.
    pub fn from_table(monad: CatalogueMonad, carrier: usize, table: Vec<usize>) -> Result<Self> {
        let size = enumerable_size(&monad, carrier)?;
        if table.len() as u64 != size || table.iter().any(|&v| v >= carrier) {
            return Err(Error::Instance(format!(
                "structure table for {monad} on {carrier} points must have {size} entries below {carrier}"
            )));
        }
        Ok(Self {
            monad,
            carrier,
            structure: Structure::Table(table),
        })
    }

    pub fn free(monad: CatalogueMonad, base: usize) -> Result<Self> {
        let carrier = monad.checked_size(base)?;
        if carrier > CARRIER_LIMIT as u64 {
            return Err(Error::SizeBound {
                what: format!("free {monad}-algebra on {base}"),
                needed: carrier.to_string(),
                bound: CARRIER_LIMIT,
            });
        }
        Ok(Self {
            monad,
            carrier: carrier as usize,
            structure: Structure::Free { base },
        })
    }

    pub(crate) fn quotient_of(parent: FinAlgebra, class_of: Vec<usize>, reps: Vec<usize>) -> Self {
        Self {
            monad: parent.monad.clone(),
            carrier: reps.len(),
            structure: Structure::Quotient {
                parent: Box::new(parent),
                class_of,
                reps,
            },
        }
    }

    pub fn monad(&self) -> &CatalogueMonad {
        &self.monad
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// `λ(t)` for `t` in `T(carrier)`. Fails when `T(carrier)` cannot be
    /// indexed, which happens for large free algebras over bitmask monads.
    pub fn act(&self, t: u64) -> Result<usize> {
        self.monad.checked_size(self.carrier)?;
        Ok(match &self.structure {
            Structure::Table(table) => table[t as usize],
            Structure::Free { base } => self.monad.mu(*base, t) as usize,
            Structure::Quotient {
                parent,
                class_of,
                reps,
            } => {
                parent.monad.checked_size(parent.carrier)?;
                let lift = FinSetMap {
                    dom_size: self.carrier,
                    cod_size: parent.carrier,
                    table: reps.clone(),
                };
                class_of[parent.act(self.monad.map(&lift, t))?]
            }
        })
    }

    /// The full table of `λ`, if `T(carrier)` is small enough.
    pub fn table(&self) -> Result<Vec<usize>> {
        let size = enumerable_size(&self.monad, self.carrier)?;
        (0..size).map(|t| self.act(t)).collect()
    }

    /// Evaluates a generating operation. Unused arguments are ignored.
    pub fn op(&self, op: Op, x: usize, y: usize) -> usize {
        match &self.structure {
            Structure::Table(table) => table[self.term(op, x, y) as usize],
            Structure::Free { base } => {
                free_op(&self.monad, *base, op, x as u64, y as u64) as usize
            }
            Structure::Quotient {
                parent,
                class_of,
                reps,
            } => {
                let (px, py) = (
                    reps.get(x).copied().unwrap_or(0),
                    reps.get(y).copied().unwrap_or(0),
                );
                class_of[parent.op(op, px, py)]
            }
        }
    }

    /// The element of `T(carrier)` that `op` applies `λ` to.
    fn term(&self, op: Op, x: usize, y: usize) -> u64 {
        match op {
            Op::Point => self.carrier as u64,
            Op::Zero => 0,
            Op::Join => 1 << x | 1 << y,
            Op::Add => (1u64 << x) ^ (1u64 << y),
            Op::Act(g) => (g * self.carrier + x) as u64,
        }
    }
}

/// Operations of the free algebra on `base`, computed on `T(base)` indices.
fn free_op(m: &CatalogueMonad, base: usize, op: Op, x: u64, y: u64) -> u64 {
    match op {
        Op::Point => base as u64,
        Op::Zero => 0,
        Op::Join => x | y,
        Op::Add => x ^ y,
        Op::Act(g) => match m {
            CatalogueMonad::GSet(group) => {
                let (h, i) = (x / base as u64, x % base as u64);
                group.mul(g, h as usize) as u64 * base as u64 + i
            }
            _ => unreachable!("group action on a non-gset algebra"),
        },
    }
}

/// Checks `λ∘η = id` on the carrier and `λ∘μ = λ∘T(λ)` elementwise on
/// `T(T(carrier))`.
pub fn check_algebra(a: &FinAlgebra) -> Result<ValidationReport> {
    let m = a.monad();
    let n = a.carrier();
    let mut report = ValidationReport::new();
    for i in 0..n {
        let v = a.act(m.eta(n, i))?;
        if v != i {
            report.law("algebra_unit", format!("λ(η({i})) = {v}"));
        }
    }
    let table = a.table()?;
    let tn = table.len();
    let ttn = enumerable_size(m, tn)?;
    let lam = FinSetMap {
        dom_size: tn,
        cod_size: n,
        table,
    };
    for tt in 0..ttn {
        let lhs = lam.apply(m.mu(n, tt) as usize);
        let rhs = a.act(m.map(&lam, tt))?;
        if lhs != rhs {
            report.law(
                "algebra_mult",
                format!("λ∘μ ≠ λ∘Tλ on element {tt} of T²({n})"),
            );
        }
    }
    Ok(report)
}

/// Checks that `f` is a map of algebras `a → b` on every element of
/// `T(a.carrier)`.
pub fn is_algebra_map(a: &FinAlgebra, b: &FinAlgebra, f: &FinSetMap) -> Result<bool> {
    let size = enumerable_size(a.monad(), a.carrier())?;
    for t in 0..size {
        if f.apply(a.act(t)?) != b.act(a.monad().map(f, t))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn from_fold(
    m: &CatalogueMonad,
    n: usize,
    start: usize,
    step: impl Fn(usize, usize) -> usize,
) -> Result<FinAlgebra> {
    let size = enumerable_size(m, n)?;
    let table = (0..size)
        .map(|t| {
            let mut acc = start;
            for i in 0..n {
                if t >> i & 1 == 1 {
                    acc = step(acc, i);
                }
            }
            acc
        })
        .collect();
    FinAlgebra::from_table(m.clone(), n, table)
}

/// Every partial order on `n` labelled points, as `leq[i][j]`.
fn partial_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    fn go(
        k: usize,
        pairs: &[(usize, usize)],
        leq: &mut Vec<Vec<bool>>,
        out: &mut Vec<Vec<Vec<bool>>>,
    ) {
        if k == pairs.len() {
            let n = leq.len();
            let transitive = (0..n)
                .all(|a| (0..n).all(|b| !leq[a][b] || (0..n).all(|c| !leq[b][c] || leq[a][c])));
            if transitive {
                out.push(leq.clone());
            }
            return;
        }
        let (i, j) = pairs[k];
        for choice in 0..3 {
            leq[i][j] = choice == 1;
            leq[j][i] = choice == 2;
            go(k + 1, pairs, leq, out);
        }
        leq[i][j] = false;
        leq[j][i] = false;
    }
    go(0, &pairs, &mut leq, &mut out);
    out
}

/// Join table of a partial order that has a least element and binary
/// joins, with that least element.
fn join_semilattice(leq: &[Vec<bool>]) -> Option<(usize, Vec<Vec<usize>>)> {
    let n = leq.len();
    let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x]))?;
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let upper: Vec<usize> = (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
            join[a][b] = *upper.iter().find(|&&u| upper.iter().all(|&v| leq[u][v]))?;
        }
    }
    Some((bottom, join))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn go(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    go(0, &mut cur, &mut out);
    out
}

/// Every algebra structure for `m` on `{0..n}`, built from the
/// presentation of the theory: pointed sets, join-semilattices with a
/// least element, group actions, and F₂-vector spaces.
pub fn enumerate_algebras(m: &CatalogueMonad, n: usize) -> Result<Vec<FinAlgebra>> {
    match m {
        CatalogueMonad::Maybe => (0..n)
            .map(|p| {
                let mut table: Vec<usize> = (0..n).collect();
                table.push(p);
                FinAlgebra::from_table(m.clone(), n, table)
            })
            .collect(),
        CatalogueMonad::Powerset => partial_orders(n)
            .iter()
            .filter_map(|leq| join_semilattice(leq))
            .map(|(bottom, join)| from_fold(m, n, bottom, |acc, i| join[acc][i]))
            .collect(),
        CatalogueMonad::VecF2 => {
            if !n.is_power_of_two() {
                return Ok(Vec::new());
            }
            let mut seen = std::collections::BTreeSet::new();
            let mut out = Vec::new();
            // label the vectors of F₂^k by a bijection with the carrier
            for label in permutations(n) {
                let mut vector = vec![0; n];
                for (v, &p) in label.iter().enumerate() {
                    vector[p] = v;
                }
                let add = |a: usize, b: usize| label[vector[a] ^ vector[b]];
                let alg = from_fold(m, n, label[0], add)?;
                if seen.insert(alg.table()?) {
                    out.push(alg);
                }
            }
            Ok(out)
        }
        CatalogueMonad::GSet(g) => {
            let perms = permutations(n);
            let mut out = Vec::new();
            let mut rho: Vec<Option<&Vec<usize>>> = vec![None; g.order()];
            let identity: Vec<usize> = (0..n).collect();
            rho[0] = Some(&identity);
            fn consistent(g: &crate::finset::monads::Group, rho: &[Option<&Vec<usize>>]) -> bool {
                for a in 0..rho.len() {
                    for b in 0..rho.len() {
                        if let (Some(ra), Some(rb), Some(rab)) = (rho[a], rho[b], rho[g.mul(a, b)])
                        {
                            if (0..rb.len()).any(|i| ra[rb[i]] != rab[i]) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
            fn go<'a>(
                k: usize,
                g: &crate::finset::monads::Group,
                perms: &'a [Vec<usize>],
                rho: &mut Vec<Option<&'a Vec<usize>>>,
                out: &mut Vec<Vec<Vec<usize>>>,
            ) {
                if k == rho.len() {
                    out.push(rho.iter().map(|r| r.expect("assigned").clone()).collect());
                    return;
                }
                for p in perms {
                    rho[k] = Some(p);
                    if consistent(g, rho) {
                        go(k + 1, g, perms, rho, out);
                    }
                }
                rho[k] = None;
            }
            let mut actions = Vec::new();
            go(1, g, &perms, &mut rho, &mut actions);
            for action in actions {
                let table = (0..g.order()).flat_map(|h| action[h].clone()).collect();
                out.push(FinAlgebra::from_table(m.clone(), n, table)?);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::monads::{catalogue, instantiate};

    #[test]
    fn enumerated_algebras_satisfy_the_laws() {
        for m in catalogue() {
            for n in 0..=3 {
                for a in enumerate_algebras(&m, n).unwrap() {
                    let r = check_algebra(&a).unwrap();
                    assert!(r.is_valid(), "{m} on {n}: {r}");
                }
            }
        }
    }

    #[test]
    fn algebra_counts() {
        let count = |id: &str, n| {
            enumerate_algebras(&instantiate(id).unwrap(), n)
                .unwrap()
                .len()
        };
        assert_eq!(count("maybe", 3), 3);
        assert_eq!(count("maybe", 0), 0);
        // labelled chains, plus the diamond with 12 labellings
        assert_eq!(count("powerset", 3), 6);
        assert_eq!(count("powerset", 4), 24 + 12);
        assert_eq!(count("powerset", 0), 0);
        // involutions on n points
        assert_eq!(count("gset:z2", 3), 4);
        assert_eq!(count("gset:z2", 4), 10);
        assert_eq!(count("gset:z3", 3), 3);
        assert_eq!(count("gset:trivial", 4), 1);
        assert_eq!(count("vecf2", 4), 4);
        assert_eq!(count("vecf2", 3), 0);
        assert_eq!(count("gset:s3", 3), 1 + 3 + 2 + 4);
    }

    #[test]
    fn free_algebras_are_algebras() {
        for m in catalogue() {
            for base in 0..=1 {
                let a = FinAlgebra::free(m.clone(), base).unwrap();
                assert!(check_algebra(&a).unwrap().is_valid(), "{m}");
            }
        }
        let a = FinAlgebra::free(CatalogueMonad::Maybe, 2).unwrap();
        assert!(check_algebra(&a).unwrap().is_valid());
    }

    #[test]
    fn operations_agree_with_the_structure_map() {
        for m in catalogue() {
            for a in enumerate_algebras(&m, 3).unwrap() {
                let free = FinAlgebra::free(m.clone(), 2).unwrap();
                for alg in [&a, &free] {
                    for op in operations(&m) {
                        let k = alg.carrier();
                        for x in 0..k {
                            for y in 0..k {
                                let via_table = alg.table().unwrap()[alg.term(op, x, y) as usize];
                                assert_eq!(alg.op(op, x, y), via_table, "{m} {op:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn broken_table_fails_the_laws() {
        // a "pointed set" whose structure sends Just 0 to 1
        let a = FinAlgebra::from_table(CatalogueMonad::Maybe, 2, vec![1, 1, 0]).unwrap();
        assert!(check_algebra(&a).unwrap().mentions("algebra_unit"));
        assert!(FinAlgebra::from_table(CatalogueMonad::Maybe, 2, vec![0, 1]).is_err());
    }
}
