use std::sync::Arc;

use super::{FinLattice, LatticeError};

/// Which structure-preservation law a map broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapLawFailure {
    /// The unit (bottom for joins, top for meets) was not preserved.
    Unit,
    /// The binary operation was not preserved on this pair.
    Pair(usize, usize),
}

/// An order-preserving map between finite lattices, given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<FinLattice>,
    target: Arc<FinLattice>,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Arc<FinLattice>, target: Arc<FinLattice>, table: Vec<usize>) -> Result<Self, LatticeError> {
        if table.len() != source.len() {
            return Err(LatticeError::TableLength { len: table.len(), expected: source.len() });
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(LatticeError::IndexOutOfRange { index: bad, size: target.len() });
        }
        for a in source.elements() {
            for b in source.up(a).iter() {
                if !target.leq(table[a], table[b]) {
                    return Err(LatticeError::NotMonotone { a, b });
                }
            }
        }
        Ok(MonotoneMap { source, target, table })
    }

    pub fn identity(lattice: Arc<FinLattice>) -> Self {
        let table = lattice.elements().collect();
        MonotoneMap { source: lattice.clone(), target: lattice, table }
    }

    pub fn constant(source: Arc<FinLattice>, target: Arc<FinLattice>, value: usize) -> Result<Self, LatticeError> {
        let table = vec![value; source.len()];
        MonotoneMap::new(source, target, table)
    }

    pub fn source(&self) -> &Arc<FinLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinLattice> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// First failure of `f(0) = 0` and `f(a ∨ b) = f(a) ∨ f(b)`.
    pub fn join_failure(&self) -> Option<MapLawFailure> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.bottom()) != t.bottom() {
            return Some(MapLawFailure::Unit);
        }
        for a in s.elements() {
            for b in a..s.len() {
                if self.apply(s.join(a, b)) != t.join(self.apply(a), self.apply(b)) {
                    return Some(MapLawFailure::Pair(a, b));
                }
            }
        }
        None
    }

    /// First failure of `f(1) = 1` and `f(a ∧ b) = f(a) ∧ f(b)`.
    pub fn meet_failure(&self) -> Option<MapLawFailure> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.top()) != t.top() {
            return Some(MapLawFailure::Unit);
        }
        for a in s.elements() {
            for b in a..s.len() {
                if self.apply(s.meet(a, b)) != t.meet(self.apply(a), self.apply(b)) {
                    return Some(MapLawFailure::Pair(a, b));
                }
            }
        }
        None
    }
}

/// A monotone map that also preserves the bottom and binary joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinPreservingMap(MonotoneMap);

impl JoinPreservingMap {
    pub fn new(map: MonotoneMap) -> Result<Self, LatticeError> {
        match map.join_failure() {
            Some(w) => Err(LatticeError::NotJoinPreserving(w)),
            None => Ok(JoinPreservingMap(map)),
        }
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.0
    }

    pub fn into_map(self) -> MonotoneMap {
        self.0
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.0.apply(a)
    }

    pub fn source(&self) -> &Arc<FinLattice> {
        self.0.source()
    }

    pub fn target(&self) -> &Arc<FinLattice> {
        self.0.target()
    }
}

/// Laws to impose when enumerating maps.
#[derive(Clone, Copy, Debug, Default)]
pub struct MapLaws {
    pub monotone: bool,
    pub joins: bool,
    pub meets: bool,
}

impl MapLaws {
    pub const JOIN_PRESERVING: MapLaws = MapLaws { monotone: true, joins: true, meets: false };
    pub const STABLE: MapLaws = MapLaws { monotone: true, joins: false, meets: true };
}

/// Every table `source → target` satisfying `laws`, in lexicographic order.
///
/// Backtracks over elements in index order and prunes a partial table as soon
/// as a law fails among already-assigned elements, so every surviving leaf
/// satisfies the laws in full.
pub fn enumerate_maps(source: &FinLattice, target: &FinLattice, laws: MapLaws) -> Vec<Vec<usize>> {
    let n = source.len();
    // Binary-law constraints become checkable once the largest index among
    // (a, b, a op b) is assigned.
    let mut join_checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    let mut meet_checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a..n {
            let j = source.join(a, b);
            join_checks[a.max(b).max(j)].push((a, b, j));
            let m = source.meet(a, b);
            meet_checks[a.max(b).max(m)].push((a, b, m));
        }
    }
    let mut out = Vec::new();
    let mut table = vec![0; n];
    let ctx = Ctx { source, target, laws, join_checks, meet_checks };
    ctx.extend(0, &mut table, &mut out);
    out
}

struct Ctx<'a> {
    source: &'a FinLattice,
    target: &'a FinLattice,
    laws: MapLaws,
    join_checks: Vec<Vec<(usize, usize, usize)>>,
    meet_checks: Vec<Vec<(usize, usize, usize)>>,
}

impl Ctx<'_> {
    fn extend(&self, i: usize, table: &mut [usize], out: &mut Vec<Vec<usize>>) {
        if i == self.source.len() {
            out.push(table.to_vec());
            return;
        }
        for v in self.target.elements() {
            table[i] = v;
            if self.admissible(i, table) {
                self.extend(i + 1, table, out);
            }
        }
    }

    fn admissible(&self, i: usize, table: &[usize]) -> bool {
        let (s, t) = (self.source, self.target);
        if self.laws.monotone {
            for j in 0..i {
                if s.leq(j, i) && !t.leq(table[j], table[i]) {
                    return false;
                }
                if s.leq(i, j) && !t.leq(table[i], table[j]) {
                    return false;
                }
            }
        }
        if self.laws.joins {
            if i == s.bottom() && table[i] != t.bottom() {
                return false;
            }
            for &(a, b, j) in &self.join_checks[i] {
                if table[j] != t.join(table[a], table[b]) {
                    return false;
                }
            }
        }
        if self.laws.meets {
            if i == s.top() && table[i] != t.top() {
                return false;
            }
            for &(a, b, m) in &self.meet_checks[i] {
                if table[m] != t.meet(table[a], table[b]) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;

    fn all_tables(n: usize, m: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|t| (0..m).map(move |v| [t.clone(), vec![v]].concat())).collect();
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let lattices = [Arc::new(chain(2)), Arc::new(c3()), Arc::new(d4()), Arc::new(p5())];
        for s in &lattices {
            for t in &lattices {
                for laws in [MapLaws::JOIN_PRESERVING, MapLaws::STABLE] {
                    let expected: Vec<Vec<usize>> = all_tables(s.len(), t.len())
                        .into_iter()
                        .filter(|tab| match MonotoneMap::new(s.clone(), t.clone(), tab.clone()) {
                            Ok(m) if laws.joins => m.join_failure().is_none(),
                            Ok(m) => m.meet_failure().is_none(),
                            Err(_) => false,
                        })
                        .collect();
                    assert_eq!(enumerate_maps(s, t, laws), expected);
                }
            }
        }
    }

    #[test]
    fn non_monotone_table_rejected() {
        let c = Arc::new(chain(2));
        let err = MonotoneMap::new(c.clone(), c, vec![1, 0]).unwrap_err();
        assert_eq!(err, LatticeError::NotMonotone { a: 0, b: 1 });
    }

    #[test]
    fn join_failures_reported() {
        let d = Arc::new(d4());
        let top = MonotoneMap::constant(d.clone(), d.clone(), 3).unwrap();
        assert_eq!(top.join_failure(), Some(MapLawFailure::Unit));
        // x ↦ x ∧ a preserves joins in a distributive lattice.
        let meet_a = MonotoneMap::new(d.clone(), d.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(JoinPreservingMap::new(meet_a).is_ok());
    }
}
