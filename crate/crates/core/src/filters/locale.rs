use std::collections::HashMap;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::lattice::iso::find_isomorphism;
use crate::lattice::{complete_lattice, FinLattice, FinPoset};

use super::filter::{filter_violation, heyting_sets, join_sets, Filter};
use super::FilterError;

/// Carriers up to this size are also searched subset by subset when
/// enumerating filters.
pub const FILTER_SCAN_CAP: usize = 20;

/// Filter lattices up to this size may be scanned for compact elements.
pub const COMPACT_SCAN_CAP: usize = 20;

/// All filters of a finite lattice, ordered by inclusion.
///
/// Filters are indexed smallest first (ties by bit pattern), so index 0 is
/// always `{top}` and the last index the whole carrier. The lattice structure
/// in [`FilterLattice::order`] is recomputed from inclusion alone; the
/// `*_formula` methods give the explicit join, meet and exponential.
#[derive(Clone, Debug)]
pub struct FilterLattice {
    carrier: Arc<FinLattice>,
    filters: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
    order: Arc<FinLattice>,
    principal: Vec<usize>,
}

/// Every subset of the carrier that passes the filter test.
pub fn filters_by_scan(carrier: &FinLattice) -> Vec<ElemSet> {
    let n = carrier.len();
    assert!(n <= FILTER_SCAN_CAP, "subset scan is capped at {FILTER_SCAN_CAP} elements");
    let mut out: Vec<ElemSet> =
        (0..1u64 << n).map(ElemSet).filter(|&s| filter_violation(carrier, s).is_none()).collect();
    out.sort_by_key(|s| s.size_then_bits());
    out
}

/// The principal filters `↑w`, deduplicated.
pub fn filters_by_principal(carrier: &FinLattice) -> Vec<ElemSet> {
    let mut out: Vec<ElemSet> = carrier.elements().map(|w| carrier.up(w)).collect();
    out.sort_by_key(|s| s.size_then_bits());
    out.dedup();
    out
}

/// Short rendering of a member set, e.g. `{a,1}`.
pub fn describe_set(carrier: &FinLattice, s: ElemSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| carrier.name(i)).collect();
    format!("{{{}}}", names.join(","))
}

/// Build `Filt(W)`.
///
/// On carriers up to [`FILTER_SCAN_CAP`] elements the filters are found both
/// by a subset scan and from principal filters, and the two lists must agree.
pub fn enumerate_filters(carrier: Arc<FinLattice>) -> Result<FilterLattice, FilterError> {
    let filters = filters_by_principal(&carrier);
    if carrier.len() <= FILTER_SCAN_CAP && filters_by_scan(&carrier) != filters {
        return Err(FilterError::EnumerationMismatch);
    }
    let names: Vec<String> = filters.iter().map(|&s| describe_set(&carrier, s)).collect();
    let order = complete_lattice(FinPoset::from_inclusion(&filters)?)?.with_names(names);
    let index = filters.iter().enumerate().map(|(i, &s)| (s, i)).collect::<HashMap<_, _>>();
    let principal = carrier.elements().map(|w| index[&carrier.up(w)]).collect();
    Ok(FilterLattice { carrier, filters, index, order: Arc::new(order), principal })
}

impl FilterLattice {
    pub fn carrier(&self) -> &Arc<FinLattice> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn sets(&self) -> &[ElemSet] {
        &self.filters
    }

    pub fn set(&self, i: usize) -> ElemSet {
        self.filters[i]
    }

    pub fn filter(&self, i: usize) -> Filter {
        Filter::from_trusted(self.carrier.clone(), self.filters[i])
    }

    pub fn filters(&self) -> Vec<Filter> {
        (0..self.len()).map(|i| self.filter(i)).collect()
    }

    pub fn index_of(&self, s: ElemSet) -> Option<usize> {
        self.index.get(&s).copied()
    }

    /// Index of `↑w`.
    pub fn principal(&self, w: usize) -> usize {
        self.principal[w]
    }

    /// Inclusion order, completed to a lattice by bound scan.
    pub fn order(&self) -> &Arc<FinLattice> {
        &self.order
    }

    /// Index of `{top}`.
    pub fn bottom(&self) -> usize {
        self.order.bottom()
    }

    /// Index of the whole carrier.
    pub fn top(&self) -> usize {
        self.order.top()
    }

    fn lookup(&self, s: ElemSet) -> usize {
        self.index_of(s).expect("operation result is a filter")
    }

    /// `F ∩ G`.
    pub fn meet_formula(&self, i: usize, j: usize) -> usize {
        self.lookup(self.filters[i].intersection(self.filters[j]))
    }

    /// `↑{a ∧ b : a ∈ F, b ∈ G}`.
    pub fn join_formula(&self, i: usize, j: usize) -> usize {
        self.lookup(join_sets(&self.carrier, self.filters[i], self.filters[j]))
    }

    /// `{w : ∀ v ⊒ w. v ∈ F ⇒ v ∈ G}`.
    pub fn heyting_formula(&self, i: usize, j: usize) -> usize {
        self.lookup(heyting_sets(&self.carrier, self.filters[i], self.filters[j]))
    }

    /// Compare the explicit formulas against the inclusion-derived lattice
    /// structure, reporting the first disagreement.
    pub fn check_formulas(&self) -> Result<(), String> {
        let o = &self.order;
        if self.filters[o.bottom()] != ElemSet::singleton(self.carrier.top()) {
            return Err("bottom filter is not {top}".into());
        }
        if self.filters[o.top()] != self.carrier.all() {
            return Err("top filter is not the whole carrier".into());
        }
        if !o.is_distributive() {
            return Err(format!("filter lattice not distributive: {:?}", o.distributivity_witness()));
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.meet_formula(i, j) != o.meet(i, j) {
                    return Err(format!("meet of filters {i},{j} is not the intersection"));
                }
                if self.join_formula(i, j) != o.join(i, j) {
                    return Err(format!("join of filters {i},{j} disagrees with the pairwise-meet formula"));
                }
                if self.carrier.is_distributive() && self.heyting_formula(i, j) != o.implies(i, j) {
                    return Err(format!("exponential of filters {i},{j} disagrees with the formula"));
                }
            }
        }
        Ok(())
    }

    /// Compact elements, found from the definition: `d` is compact when
    /// `d ⊑ ⊔X` implies `d ⊑ x` for some `x ∈ X`, for every directed `X`.
    pub fn compacts(&self) -> Result<Vec<usize>, FilterError> {
        compact_elements(&self.order)
    }
}

/// Compact elements of a finite lattice by scanning every directed subset.
pub fn compact_elements(lattice: &FinLattice) -> Result<Vec<usize>, FilterError> {
    let m = lattice.len();
    if m > COMPACT_SCAN_CAP {
        return Err(FilterError::TooLarge { size: m, cap: COMPACT_SCAN_CAP });
    }
    let directed_sups: Vec<(ElemSet, usize)> = (1..1u64 << m)
        .map(ElemSet)
        .filter(|&x| {
            x.iter().all(|i| x.iter().all(|j| lattice.up(i).intersection(lattice.up(j)).intersects(x)))
        })
        .map(|x| (x, lattice.join_all(x)))
        .collect();
    Ok(lattice
        .elements()
        .filter(|&d| {
            directed_sups
                .iter()
                .all(|&(x, sup)| !lattice.leq(d, sup) || x.iter().any(|e| lattice.leq(d, e)))
        })
        .collect())
}

/// Outcome of reconstructing `Filt(W)` from its compact elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub filters: usize,
    pub compacts: usize,
    /// Compact elements are exactly the principal filters.
    pub compacts_are_principal: bool,
    /// Every element is the (directed) join of the compacts below it.
    pub algebraic: bool,
    /// Compacts are closed under binary meets and joins.
    pub compacts_form_sublattice: bool,
    /// Isomorphism `Filt(W) → Filt(K^op)` where `K` is the compact sub-order.
    pub isomorphism: Option<Vec<usize>>,
    /// Whether `Filt(W) ≅ Filt(K)` as well (true only for self-dual `W`).
    pub unoriented_reading_holds: bool,
    pub orientation_note: String,
}

impl CoherenceReport {
    pub fn ok(&self) -> bool {
        self.compacts_are_principal && self.algebraic && self.compacts_form_sublattice && self.isomorphism.is_some()
    }
}

pub const ORIENTATION_NOTE: &str = "filter inclusion reverses the order of principal filters, so the compact \
elements K form a copy of W^op; Filt(W) is recovered as Filt(K^op), while Filt(K) is isomorphic to Filt(W) \
only when W is self-dual";

/// Check that `Filt(W)` is a coherent frame and rebuild it, up to
/// isomorphism, as the filters of its compact elements (suitably oriented).
pub fn coherent_reconstruct(carrier: Arc<FinLattice>) -> Result<CoherenceReport, FilterError> {
    if let Some(w) = carrier.distributivity_witness() {
        return Err(FilterError::NotDistributive(w));
    }
    let fl = enumerate_filters(carrier)?;
    let order = fl.order();
    let compacts = fl.compacts()?;
    let compact_set: ElemSet = compacts.iter().copied().collect();

    let principal_set: ElemSet = fl.carrier().elements().map(|w| fl.principal(w)).collect();
    let compacts_are_principal = compact_set == principal_set;

    let algebraic = order.elements().all(|d| {
        let below = order.down(d).intersection(compact_set);
        let directed = below.iter().all(|i| below.iter().all(|j| order.up(i).intersection(order.up(j)).intersects(below)));
        directed && order.join_all(below) == d
    });

    let compacts_form_sublattice = compacts.iter().all(|&a| {
        compacts.iter().all(|&b| compact_set.contains(order.meet(a, b)) && compact_set.contains(order.join(a, b)))
    });

    let sub: Vec<ElemSet> = compacts.iter().map(|&c| fl.set(c)).collect();
    let names: Vec<String> = compacts.iter().map(|&c| order.name(c).to_string()).collect();
    let k = Arc::new(complete_lattice(FinPoset::from_inclusion(&sub)?)?.with_names(names));

    let oriented = enumerate_filters(Arc::new(k.opposite()))?;
    let isomorphism = find_isomorphism(order.poset(), oriented.order().poset());
    let literal = enumerate_filters(k)?;
    let unoriented_reading_holds = find_isomorphism(order.poset(), literal.order().poset()).is_some();

    Ok(CoherenceReport {
        filters: fl.len(),
        compacts: compacts.len(),
        compacts_are_principal,
        algebraic,
        compacts_form_sublattice,
        isomorphism,
        unoriented_reading_holds,
        orientation_note: ORIENTATION_NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::iso::is_isomorphic;
    use crate::lattice::named::*;

    #[test]
    fn filter_counts() {
        let c2 = enumerate_filters(Arc::new(chain(2))).unwrap();
        assert_eq!(c2.len(), 2);
        assert_eq!(c2.sets(), &[ElemSet(0b10), ElemSet(0b11)]);
        assert_eq!(enumerate_filters(Arc::new(d4())).unwrap().len(), 4);
        let p5 = Arc::new(p5());
        let fp5 = enumerate_filters(p5.clone()).unwrap();
        assert_eq!(fp5.len(), 5);
        assert!(is_isomorphic(fp5.order().poset(), p5.opposite().poset()));
    }

    #[test]
    fn bottom_is_top_singleton() {
        let fl = enumerate_filters(Arc::new(d4())).unwrap();
        assert_eq!(fl.set(fl.bottom()), ElemSet::singleton(3));
        assert_eq!(fl.bottom(), 0);
        assert_eq!(fl.set(fl.top()), ElemSet::full(4));
        fl.check_formulas().unwrap();
    }

    #[test]
    fn filters_of_non_distributive_lattices_still_agree() {
        for l in [n5(), m3()] {
            let l = Arc::new(l);
            assert_eq!(filters_by_scan(&l), filters_by_principal(&l));
        }
    }

    #[test]
    fn compacts_are_all_principal() {
        for l in [d4(), chain(2), c3(), p5()] {
            let l = Arc::new(l);
            let fl = enumerate_filters(l.clone()).unwrap();
            let compacts = fl.compacts().unwrap();
            assert_eq!(compacts.len(), l.len());
            let sets: Vec<ElemSet> = compacts.iter().map(|&c| fl.set(c)).collect();
            let k = complete_lattice(FinPoset::from_inclusion(&sets).unwrap()).unwrap();
            assert!(is_isomorphic(k.poset(), l.opposite().poset()));
        }
    }

    #[test]
    fn every_element_of_a_finite_lattice_is_compact() {
        let l = p5();
        assert_eq!(compact_elements(&l).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn coherent_reconstruction_examples() {
        for l in [chain(1), c3(), d4(), p5()] {
            let report = coherent_reconstruct(Arc::new(l)).unwrap();
            assert!(report.ok(), "{report:?}");
        }
        let one = coherent_reconstruct(Arc::new(chain(1))).unwrap();
        assert_eq!(one.isomorphism, Some(vec![0]));
        // P5 is not self-dual, so only the oriented reading holds.
        assert!(!coherent_reconstruct(Arc::new(p5())).unwrap().unoriented_reading_holds);
        assert!(coherent_reconstruct(Arc::new(d4())).unwrap().unoriented_reading_holds);
    }

    #[test]
    fn non_distributive_carrier_refused() {
        assert!(matches!(coherent_reconstruct(Arc::new(n5())), Err(FilterError::NotDistributive(_))));
    }
}
