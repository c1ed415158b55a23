use crate::bitset::{ElemSet, MAX_ELEMENTS};

use super::LatticeError;

/// A finite partial order on the dense indices `0..n`.
///
/// The order is stored twice, as principal up-sets and principal down-sets,
/// so that both directions of a lookup are a single word operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

/// Validate a square `leq` table as a partial order.
///
/// Reflexivity is checked first, then antisymmetry, then transitivity; only
/// the first violation found is reported.
pub fn check_poset(leq: &[Vec<bool>]) -> Result<FinPoset, LatticeError> {
    let n = leq.len();
    if n > MAX_ELEMENTS {
        return Err(LatticeError::TooLarge { size: n, cap: MAX_ELEMENTS });
    }
    for (i, row) in leq.iter().enumerate() {
        if row.len() != n {
            return Err(LatticeError::NotSquare { row: i, len: row.len(), expected: n });
        }
    }
    for i in 0..n {
        if !leq[i][i] {
            return Err(LatticeError::Reflexivity { i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if leq[i][j] && leq[j][i] {
                return Err(LatticeError::Antisymmetry { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !leq[i][j] {
                continue;
            }
            for k in 0..n {
                if leq[j][k] && !leq[i][k] {
                    return Err(LatticeError::Transitivity { i, j, k });
                }
            }
        }
    }
    let mut up = vec![ElemSet::EMPTY; n];
    let mut down = vec![ElemSet::EMPTY; n];
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                up[i].insert(j);
                down[j].insert(i);
            }
        }
    }
    Ok(FinPoset { names: default_names(n), up, down })
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

impl FinPoset {
    /// The reflexive-transitive closure of `pairs` on `n` points, provided it
    /// is antisymmetric. Each pair `(a, b)` asserts `a ⊑ b`.
    pub fn from_generators(n: usize, pairs: &[(usize, usize)]) -> Result<FinPoset, LatticeError> {
        if n > MAX_ELEMENTS {
            return Err(LatticeError::TooLarge { size: n, cap: MAX_ELEMENTS });
        }
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(LatticeError::IndexOutOfRange { index: a.max(b), size: n });
            }
            up[a].insert(b);
        }
        // Warshall closure on rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        let table: Vec<Vec<bool>> =
            (0..n).map(|i| (0..n).map(|j| up[i].contains(j)).collect()).collect();
        check_poset(&table)
    }

    /// The poset whose order is set inclusion between the given sets.
    pub fn from_inclusion(sets: &[ElemSet]) -> Result<FinPoset, LatticeError> {
        let table: Vec<Vec<bool>> = sets
            .iter()
            .map(|a| sets.iter().map(|b| a.is_subset(*b)).collect())
            .collect();
        check_poset(&table)
    }

    pub fn with_names(mut self, names: Vec<String>) -> FinPoset {
        assert_eq!(names.len(), self.len(), "one name per element");
        self.names = names;
        self
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// `{v : a ⊑ v}`.
    #[inline]
    pub fn up(&self, a: usize) -> ElemSet {
        self.up[a]
    }

    /// `{v : v ⊑ a}`.
    #[inline]
    pub fn down(&self, a: usize) -> ElemSet {
        self.down[a]
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn leq_table(&self) -> Vec<Vec<bool>> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect()).collect()
    }

    pub fn opposite(&self) -> FinPoset {
        FinPoset { names: self.names.clone(), up: self.down.clone(), down: self.up.clone() }
    }

    pub fn is_upper(&self, s: ElemSet) -> bool {
        s.iter().all(|i| self.up[i].is_subset(s))
    }

    pub fn is_lower(&self, s: ElemSet) -> bool {
        s.iter().all(|i| self.down[i].is_subset(s))
    }

    pub fn upper_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    pub fn lower_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    /// Pairs `(a, b)` with `a ⊏ b` and nothing strictly between, in
    /// lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.up[a].iter() {
                if a == b {
                    continue;
                }
                let between = self.up[a].intersection(self.down[b]);
                if between.len() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Reindex: element `i` of the result is element `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> FinPoset {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let relabel = |s: ElemSet| s.iter().map(|j| inv[j]).collect::<ElemSet>();
        FinPoset {
            names: perm.iter().map(|&p| self.names[p].clone()).collect(),
            up: perm.iter().map(|&p| relabel(self.up[p])).collect(),
            down: perm.iter().map(|&p| relabel(self.down[p])).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut t = vec![vec![false; n]; n];
        for (i, row) in t.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            t[a][b] = true;
        }
        t
    }

    #[test]
    fn two_chain_is_a_poset() {
        let p = check_poset(&table(2, &[(0, 1)])).unwrap();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
        assert_eq!(p.covers(), vec![(0, 1)]);
    }

    #[test]
    fn antisymmetry_violation_names_the_pair() {
        let err = check_poset(&table(2, &[(0, 1), (1, 0)])).unwrap_err();
        assert_eq!(err, LatticeError::Antisymmetry { i: 0, j: 1 });
    }

    #[test]
    fn transitivity_violation_names_the_triple() {
        let err = check_poset(&table(3, &[(0, 1), (1, 2)])).unwrap_err();
        assert_eq!(err, LatticeError::Transitivity { i: 0, j: 1, k: 2 });
    }

    #[test]
    fn reflexivity_is_checked_first() {
        let mut t = table(2, &[(0, 1), (1, 0)]);
        t[1][1] = false;
        assert_eq!(check_poset(&t).unwrap_err(), LatticeError::Reflexivity { i: 1 });
    }

    #[test]
    fn ragged_table_is_rejected() {
        let t = vec![vec![true, false], vec![true]];
        assert!(matches!(check_poset(&t), Err(LatticeError::NotSquare { row: 1, .. })));
    }

    #[test]
    fn generators_are_closed() {
        let p = FinPoset::from_generators(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
        let cyc = FinPoset::from_generators(2, &[(0, 1), (1, 0)]);
        assert!(matches!(cyc, Err(LatticeError::Antisymmetry { .. })));
    }

    #[test]
    fn permuting_preserves_order() {
        let p = FinPoset::from_generators(3, &[(0, 1), (0, 2)]).unwrap();
        let q = p.permuted(&[2, 0, 1]);
        // q[1] is p[0], the bottom.
        assert!(q.leq(1, 0) && q.leq(1, 2));
        assert!(!q.leq(0, 2));
    }
}
