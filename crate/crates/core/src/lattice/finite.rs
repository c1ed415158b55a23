use crate::bitset::ElemSet;

use super::{FinPoset, LatticeError};

/// A finite lattice with precomputed operation tables.
///
/// Tables are always derived from the order by an exhaustive bound scan, and
/// the distributivity certificate is recomputed on every construction. When
/// the lattice is distributive it is also a Heyting algebra and the relative
/// pseudocomplement table is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLattice {
    poset: FinPoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    non_distributive: Option<[usize; 3]>,
    implies: Option<Vec<usize>>,
}

/// Greatest element of `s` under `poset`, if `s` has one.
fn greatest(poset: &FinPoset, s: ElemSet) -> Option<usize> {
    s.iter().find(|&m| s.is_subset(poset.down(m)))
}

fn least(poset: &FinPoset, s: ElemSet) -> Option<usize> {
    s.iter().find(|&m| s.is_subset(poset.up(m)))
}

/// Complete a validated poset to a lattice by scanning bounds pairwise.
pub fn complete_lattice(poset: FinPoset) -> Result<FinLattice, LatticeError> {
    let n = poset.len();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let m = greatest(&poset, poset.down(a).intersection(poset.down(b)))
                .ok_or(LatticeError::NotALattice { a, b })?;
            let j = least(&poset, poset.up(a).intersection(poset.up(b)))
                .ok_or(LatticeError::NotALattice { a, b })?;
            meet[a * n + b] = m;
            meet[b * n + a] = m;
            join[a * n + b] = j;
            join[b * n + a] = j;
        }
    }
    let all = poset.all();
    let bottom = least(&poset, all).expect("finite lattice has a bottom");
    let top = greatest(&poset, all).expect("finite lattice has a top");

    let mut lattice = FinLattice { poset, meet, join, bottom, top, non_distributive: None, implies: None };
    lattice.non_distributive = lattice.distributivity_witness_scan();
    if lattice.non_distributive.is_none() {
        lattice.implies = Some(lattice.implication_table());
    }
    Ok(lattice)
}

impl FinLattice {
    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn with_names(self, names: Vec<String>) -> FinLattice {
        FinLattice { poset: self.poset.with_names(names), ..self }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn up(&self, a: usize) -> ElemSet {
        self.poset.up(a)
    }

    #[inline]
    pub fn down(&self, a: usize) -> ElemSet {
        self.poset.down(a)
    }

    pub fn all(&self) -> ElemSet {
        self.poset.all()
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet of a set; the empty meet is the top.
    pub fn meet_all(&self, s: ElemSet) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a set; the empty join is the bottom.
    pub fn join_all(&self, s: ElemSet) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn is_distributive(&self) -> bool {
        self.non_distributive.is_none()
    }

    /// First `(a, x, y)` in lexicographic order with
    /// `a ∧ (x ∨ y) ≠ (a ∧ x) ∨ (a ∧ y)`.
    pub fn distributivity_witness(&self) -> Option<[usize; 3]> {
        self.non_distributive
    }

    fn distributivity_witness_scan(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let lhs = self.meet(a, self.join(x, y));
                    let rhs = self.join(self.meet(a, x), self.meet(a, y));
                    if lhs != rhs {
                        return Some([a, x, y]);
                    }
                }
            }
        }
        None
    }

    /// First `(a, x, y)` with `a ∨ (x ∧ y) ≠ (a ∨ x) ∧ (a ∨ y)`.
    pub fn dual_distributivity_witness(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let lhs = self.join(a, self.meet(x, y));
                    let rhs = self.meet(self.join(a, x), self.join(a, y));
                    if lhs != rhs {
                        return Some([a, x, y]);
                    }
                }
            }
        }
        None
    }

    fn implication_table(&self) -> Vec<usize> {
        let n = self.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self
                    .relative_pseudocomplement_scan(a, b)
                    .expect("distributive finite lattices are Heyting algebras");
            }
        }
        table
    }

    /// `max {c : c ∧ a ⊑ b}` by exhaustive scan, if the maximum exists.
    pub fn relative_pseudocomplement_scan(&self, a: usize, b: usize) -> Option<usize> {
        let candidates: ElemSet = self.elements().filter(|&c| self.leq(self.meet(c, a), b)).collect();
        greatest(&self.poset, candidates)
    }

    /// Heyting implication `a ⇒ b`, or `None` when the lattice is not
    /// distributive.
    pub fn heyting_implies(&self, a: usize, b: usize) -> Option<usize> {
        self.implies.as_ref().map(|t| t[a * self.len() + b])
    }

    /// Heyting implication on a lattice already known to be distributive.
    ///
    /// Panics if the lattice is not distributive.
    #[inline]
    pub fn implies(&self, a: usize, b: usize) -> usize {
        let t = self.implies.as_ref().expect("implication on a non-distributive lattice");
        t[a * self.len() + b]
    }

    /// The order dual, with every table recomputed from the reversed order.
    pub fn opposite(&self) -> FinLattice {
        complete_lattice(self.poset.opposite()).expect("the dual of a lattice is a lattice")
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.poset.covers().into_iter().filter(|&(a, _)| a == self.bottom).map(|(_, b)| b).collect()
    }

    /// Elements covered by the top.
    pub fn coatoms(&self) -> Vec<usize> {
        self.poset.covers().into_iter().filter(|&(_, b)| b == self.top).map(|(a, _)| a).collect()
    }

    /// Relabel so that element `i` of the result is element `perm[i]` here.
    pub fn permuted(&self, perm: &[usize]) -> FinLattice {
        complete_lattice(self.poset.permuted(perm)).expect("relabelling preserves the lattice property")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;

    #[test]
    fn diamond_tables() {
        let d4 = d4();
        assert_eq!(d4.meet(1, 2), 0);
        assert_eq!(d4.join(1, 2), 3);
        assert_eq!((d4.bottom(), d4.top()), (0, 3));
        assert!(d4.is_distributive());
    }

    #[test]
    fn pentagon_is_not_distributive() {
        // 0 < a < c < 1, 0 < b < 1 with a=1, b=2, c=3.
        let n5 = n5();
        assert!(!n5.is_distributive());
        let [a, x, y] = n5.distributivity_witness().unwrap();
        assert_eq!([a, x, y], [3, 1, 2]);
        assert_eq!(n5.meet(a, n5.join(x, y)), 3);
        assert_eq!(n5.join(n5.meet(a, x), n5.meet(a, y)), 1);
        assert!(n5.heyting_implies(1, 0).is_none());
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let p = FinPoset::from_generators(2, &[]).unwrap();
        assert_eq!(complete_lattice(p).unwrap_err(), LatticeError::NotALattice { a: 0, b: 1 });
    }

    #[test]
    fn empty_poset_is_not_a_lattice() {
        let p = FinPoset::from_generators(0, &[]).unwrap();
        assert_eq!(complete_lattice(p).unwrap_err(), LatticeError::Empty);
    }

    /// Brute-force `max {c : c ∧ a ⊑ b}` without going through the poset
    /// helpers.
    fn brute_implies(l: &FinLattice, a: usize, b: usize) -> usize {
        let cands: Vec<usize> = l.elements().filter(|&c| l.leq(l.meet(c, a), b)).collect();
        *cands.iter().find(|&&m| cands.iter().all(|&c| l.leq(c, m))).unwrap()
    }

    #[test]
    fn heyting_examples() {
        let c3 = chain(3);
        // m ⇒ 0 = 0
        assert_eq!(brute_implies(&c3, 1, 0), 0);
        assert_eq!(c3.implies(1, 0), 0);
        let d4 = d4();
        // a ⇒ b = b
        assert_eq!(brute_implies(&d4, 1, 2), 2);
        assert_eq!(d4.implies(1, 2), 2);
        for l in [c3, d4] {
            for a in l.elements() {
                assert_eq!(l.implies(a, a), l.top());
            }
        }
    }

    #[test]
    fn opposite_is_an_involution() {
        let p5 = p5();
        assert_eq!(p5.opposite().opposite(), p5);
        assert_eq!(chain(2).opposite().len(), 2);
        assert_eq!(p5.atoms().len(), 2);
        assert_eq!(p5.coatoms().len(), 1);
        let op = p5.opposite();
        assert_eq!(op.atoms().len(), 1);
        assert_eq!(op.coatoms().len(), 2);
        assert!(op.is_distributive());
    }
}
