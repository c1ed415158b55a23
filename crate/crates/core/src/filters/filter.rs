use std::fmt;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::lattice::{FinLattice, FinPoset};

use super::FilterError;

/// First clause a candidate set fails, under the meet-semilattice
/// characterization (upper, contains the top, closed under binary meets).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterViolation {
    Empty,
    NotUpper { member: usize, above: usize },
    MissingTop { top: usize },
    NotMeetClosed { a: usize, b: usize, meet: usize },
}

impl FilterViolation {
    /// Human-readable diagnosis using the carrier's element names.
    pub fn describe(&self, lattice: &FinLattice) -> String {
        let n = |i: usize| lattice.name(i);
        match *self {
            FilterViolation::Empty => "it is empty".to_string(),
            FilterViolation::NotUpper { member, above } => {
                format!("not upward closed: contains {} but not {} above it", n(member), n(above))
            }
            FilterViolation::MissingTop { top } => format!("missing the top element {}", n(top)),
            FilterViolation::NotMeetClosed { a, b, .. } => format!("missing {}∧{}", n(a), n(b)),
        }
    }
}

/// Result of [`is_filter`]: both characterizations of a filter, which must
/// agree on any lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterCheck {
    /// First failing clause of the meet-semilattice characterization.
    pub violation: Option<FilterViolation>,
    /// Verdict of the general definition (non-empty, upper, filtered).
    pub by_definition: bool,
}

impl FilterCheck {
    pub fn is_filter(&self) -> bool {
        self.violation.is_none()
    }

    pub fn characterizations_agree(&self) -> bool {
        self.is_filter() == self.by_definition
    }
}

/// Non-empty, upper, and filtered: any two members have a common lower bound
/// inside the set. Valid on an arbitrary poset.
pub fn is_filter_by_definition(poset: &FinPoset, s: ElemSet) -> bool {
    if s.is_empty() || !poset.is_upper(s) {
        return false;
    }
    s.iter().all(|w| s.iter().all(|v| poset.down(w).intersection(poset.down(v)).intersects(s)))
}

/// The first clause `s` fails as a filter of `lattice`, if any.
pub fn filter_violation(lattice: &FinLattice, s: ElemSet) -> Option<FilterViolation> {
    if s.is_empty() {
        return Some(FilterViolation::Empty);
    }
    for member in s.iter() {
        if let Some(above) = lattice.up(member).difference(s).first() {
            return Some(FilterViolation::NotUpper { member, above });
        }
    }
    if !s.contains(lattice.top()) {
        return Some(FilterViolation::MissingTop { top: lattice.top() });
    }
    for a in s.iter() {
        for b in s.iter().filter(|&b| b > a) {
            let meet = lattice.meet(a, b);
            if !s.contains(meet) {
                return Some(FilterViolation::NotMeetClosed { a, b, meet });
            }
        }
    }
    None
}

/// Check `s` against both characterizations of a filter.
pub fn is_filter(lattice: &FinLattice, s: ElemSet) -> FilterCheck {
    let check = FilterCheck {
        violation: filter_violation(lattice, s),
        by_definition: is_filter_by_definition(lattice.poset(), s),
    };
    debug_assert!(check.characterizations_agree(), "filter characterizations disagree on {s:?}");
    check
}

/// `{a ∧ b : a ∈ f, b ∈ g}` closed upward.
pub fn join_sets(lattice: &FinLattice, f: ElemSet, g: ElemSet) -> ElemSet {
    let mut meets = ElemSet::EMPTY;
    for a in f.iter() {
        for b in g.iter() {
            meets.insert(lattice.meet(a, b));
        }
    }
    lattice.poset().upper_closure(meets)
}

/// `{w : ∀ v ⊒ w. v ∈ f ⇒ v ∈ g}`.
pub fn heyting_sets(lattice: &FinLattice, f: ElemSet, g: ElemSet) -> ElemSet {
    lattice.elements().filter(|&w| lattice.up(w).intersection(f).is_subset(g)).collect()
}

/// A validated filter on a finite lattice.
#[derive(Clone)]
pub struct Filter {
    carrier: Arc<FinLattice>,
    members: ElemSet,
}

impl Filter {
    pub fn new(carrier: Arc<FinLattice>, members: ElemSet) -> Result<Filter, FilterError> {
        if !members.is_subset(carrier.all()) {
            return Err(FilterError::OutOfCarrier);
        }
        match filter_violation(&carrier, members) {
            Some(violation) => Err(FilterError::NotAFilter(violation)),
            None => Ok(Filter { carrier, members }),
        }
    }

    /// `↑w = {v : w ⊑ v}`.
    pub fn principal(carrier: Arc<FinLattice>, w: usize) -> Filter {
        let members = carrier.up(w);
        Filter { carrier, members }
    }

    /// `{top}`, the least filter.
    pub fn least(carrier: Arc<FinLattice>) -> Filter {
        let top = carrier.top();
        Filter::principal(carrier, top)
    }

    /// The whole carrier, the greatest filter.
    pub fn whole(carrier: Arc<FinLattice>) -> Filter {
        let bottom = carrier.bottom();
        Filter::principal(carrier, bottom)
    }

    pub(crate) fn from_trusted(carrier: Arc<FinLattice>, members: ElemSet) -> Filter {
        debug_assert!(filter_violation(&carrier, members).is_none());
        Filter { carrier, members }
    }

    pub fn carrier(&self) -> &Arc<FinLattice> {
        &self.carrier
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    pub fn contains(&self, w: usize) -> bool {
        self.members.contains(w)
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.is_subset(other.members)
    }

    /// Meet of all members; every finite filter is the up-set of it.
    pub fn generator(&self) -> usize {
        self.carrier.meet_all(self.members)
    }

    fn same_carrier(&self, other: &Filter) -> Result<(), FilterError> {
        if Arc::ptr_eq(&self.carrier, &other.carrier) || *self.carrier == *other.carrier {
            Ok(())
        } else {
            Err(FilterError::CarrierMismatch)
        }
    }

    /// Names of the members, in index order.
    pub fn member_names(&self) -> Vec<&str> {
        self.members.iter().map(|i| self.carrier.name(i)).collect()
    }
}

impl PartialEq for Filter {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
            && (Arc::ptr_eq(&self.carrier, &other.carrier) || *self.carrier == *other.carrier)
    }
}

impl Eq for Filter {}

impl fmt::Debug for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.member_names().join(","))
    }
}

pub fn principal_filter(carrier: &Arc<FinLattice>, w: usize) -> Filter {
    Filter::principal(carrier.clone(), w)
}

/// Intersection.
pub fn filter_meet(f: &Filter, g: &Filter) -> Result<Filter, FilterError> {
    f.same_carrier(g)?;
    Ok(Filter::from_trusted(f.carrier.clone(), f.members.intersection(g.members)))
}

/// Upward closure of the pairwise meets.
pub fn filter_join(f: &Filter, g: &Filter) -> Result<Filter, FilterError> {
    f.same_carrier(g)?;
    Ok(Filter::from_trusted(f.carrier.clone(), join_sets(&f.carrier, f.members, g.members)))
}

/// Worlds all of whose extensions in `f` also lie in `g`.
pub fn filter_heyting(f: &Filter, g: &Filter) -> Result<Filter, FilterError> {
    f.same_carrier(g)?;
    if let Some(w) = f.carrier.distributivity_witness() {
        return Err(FilterError::NotDistributive(w));
    }
    Filter::new(f.carrier.clone(), heyting_sets(&f.carrier, f.members, g.members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn is_filter_examples() {
        let d4 = d4();
        assert!(is_filter(&d4, set(&[3])).is_filter());
        let check = is_filter(&d4, set(&[1, 2, 3]));
        assert_eq!(check.violation, Some(FilterViolation::NotMeetClosed { a: 1, b: 2, meet: 0 }));
        assert!(!check.by_definition);
        assert_eq!(check.violation.unwrap().describe(&d4), "missing a∧b");
        assert_eq!(is_filter(&d4, ElemSet::EMPTY).violation, Some(FilterViolation::Empty));
        assert!(matches!(
            is_filter(&d4, set(&[1])).violation,
            Some(FilterViolation::NotUpper { member: 1, above: 3 })
        ));
    }

    #[test]
    fn characterizations_agree_on_every_subset() {
        for l in [d4(), p5(), c3(), n5(), m3()] {
            for bits in 0..1u64 << l.len() {
                assert!(is_filter(&l, ElemSet(bits)).characterizations_agree());
            }
        }
    }

    #[test]
    fn principal_examples() {
        let d4 = Arc::new(d4());
        assert_eq!(principal_filter(&d4, 1).members(), set(&[1, 3]));
        assert_eq!(principal_filter(&d4, 3), Filter::least(d4.clone()));
        assert_eq!(principal_filter(&d4, 0), Filter::whole(d4.clone()));
        for w in d4.elements() {
            for v in d4.elements() {
                assert_eq!(d4.leq(w, v), principal_filter(&d4, v).is_subset(&principal_filter(&d4, w)));
            }
        }
    }

    #[test]
    fn join_and_meet_examples() {
        let d4 = Arc::new(d4());
        let (ua, ub) = (principal_filter(&d4, 1), principal_filter(&d4, 2));
        assert_eq!(filter_join(&ua, &ub).unwrap(), Filter::whole(d4.clone()));
        assert_eq!(filter_meet(&ua, &ub).unwrap(), Filter::least(d4.clone()));
        for w in d4.elements() {
            let f = principal_filter(&d4, w);
            assert_eq!(filter_join(&f, &Filter::least(d4.clone())).unwrap(), f);
        }
    }

    #[test]
    fn heyting_examples() {
        let d4 = Arc::new(d4());
        let least = Filter::least(d4.clone());
        assert_eq!(filter_heyting(&principal_filter(&d4, 1), &least).unwrap(), principal_filter(&d4, 2));
        for w in d4.elements() {
            let f = principal_filter(&d4, w);
            assert_eq!(filter_heyting(&f, &f).unwrap(), Filter::whole(d4.clone()));
        }
        let c3 = Arc::new(c3());
        let top = principal_filter(&c3, 2);
        assert_eq!(filter_heyting(&principal_filter(&c3, 1), &top).unwrap(), top);
    }

    #[test]
    fn carriers_must_match() {
        let a = Filter::least(Arc::new(d4()));
        let b = Filter::least(Arc::new(c3()));
        assert_eq!(filter_meet(&a, &b).unwrap_err(), FilterError::CarrierMismatch);
        assert_eq!(filter_join(&a, &b).unwrap_err(), FilterError::CarrierMismatch);
        assert_eq!(filter_heyting(&a, &b).unwrap_err(), FilterError::CarrierMismatch);
    }
}
