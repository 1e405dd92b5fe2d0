//! Depth-first backtracking over finite assignment problems.
//!
//! A problem assigns one value to each of `len()` positions, in order.
//! Candidates for a position may depend on the earlier positions, and each
//! extension is checked for consistency before descending. Solutions come
//! out in lexicographic order of candidate indices, so as long as the
//! candidate lists are sorted the stream is deterministic and sorted.

pub trait SearchProblem {
    fn positions(&self) -> usize;

    /// Candidate values for position `partial.len()`.
    fn candidates(&self, partial: &[usize]) -> Vec<usize>;

    /// Whether `partial` (whose last entry was just chosen) can still be
    /// extended to a solution.
    fn consistent(&self, partial: &[usize]) -> bool;
}

/// Iterator over all solutions of a [`SearchProblem`].
pub struct Backtrack<P> {
    problem: P,
    assignment: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    cursors: Vec<usize>,
    nodes: u64,
    finished: bool,
    started: bool,
}

impl<P: SearchProblem> Backtrack<P> {
    pub fn new(problem: P) -> Self {
        Self {
            problem,
            assignment: Vec::new(),
            candidates: Vec::new(),
            cursors: Vec::new(),
            nodes: 0,
            finished: false,
            started: false,
        }
    }

    /// Number of partial assignments tried so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn problem(&self) -> &P {
        &self.problem
    }

    fn descend(&mut self) {
        let c = self.problem.candidates(&self.assignment);
        self.candidates.push(c);
        self.cursors.push(0);
    }
}

impl<P: SearchProblem> Iterator for Backtrack<P> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.finished {
            return None;
        }
        let n = self.problem.positions();
        if !self.started {
            self.started = true;
            if n == 0 {
                self.finished = true;
                return Some(Vec::new());
            }
            self.descend();
        } else {
            // resume after the solution we last returned
            self.assignment.pop();
        }
        loop {
            let depth = self.cursors.len() - 1;
            let cursor = self.cursors[depth];
            if cursor >= self.candidates[depth].len() {
                self.candidates.pop();
                self.cursors.pop();
                if self.cursors.is_empty() {
                    self.finished = true;
                    return None;
                }
                self.assignment.pop();
                continue;
            }
            self.cursors[depth] += 1;
            let value = self.candidates[depth][cursor];
            self.assignment.push(value);
            self.nodes += 1;
            if !self.problem.consistent(&self.assignment) {
                self.assignment.pop();
                continue;
            }
            if self.assignment.len() == n {
                return Some(self.assignment.clone());
            }
            self.descend();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Increasing {
        len: usize,
        max: usize,
    }

    impl SearchProblem for Increasing {
        fn positions(&self) -> usize {
            self.len
        }
        fn candidates(&self, _: &[usize]) -> Vec<usize> {
            (0..self.max).collect()
        }
        fn consistent(&self, p: &[usize]) -> bool {
            p.windows(2).all(|w| w[0] < w[1])
        }
    }

    #[test]
    fn enumerates_subsets_in_order() {
        let all: Vec<_> = Backtrack::new(Increasing { len: 2, max: 4 }).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn zero_positions_yield_one_empty_solution() {
        let all: Vec<_> = Backtrack::new(Increasing { len: 0, max: 4 }).collect();
        assert_eq!(all, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn no_candidates_yield_nothing() {
        let all: Vec<_> = Backtrack::new(Increasing { len: 2, max: 0 }).collect();
        assert!(all.is_empty());
    }
}
