//! Stable bimodules on a distributive frame and the modalities they induce on
//! filters.
//!
//! A relation is stored as rows: `rows[w]` is `ΛR(w) = {v : w R v}`.

use std::fmt;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::filters::{describe_set, enumerate_filters, join_sets, Filter, FilterError};
use crate::lattice::{enumerate_maps, FinLattice, MapLaws};

use super::ModalError;

/// The first stability condition a relation fails, with witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BimoduleViolation {
    /// `w′ ⊑ w`, `w R v`, `v ⊑ v′` but not `w′ R v′`.
    Law { w_lo: usize, w: usize, v: usize, v_hi: usize },
    /// (i): `w R v1`, `w R v2` but not `w R (v1 ∧ v2)`.
    MeetClosed { w: usize, v1: usize, v2: usize },
    /// (ii): not `w R 1`.
    ReachesTop { w: usize },
    /// (iii): `(w1 ∧ w2) R v` with no `v1 ∧ v2 ⊑ v`, `w1 R v1`, `w2 R v2`.
    Split { w1: usize, w2: usize, v: usize },
    /// (iv): `1 R v` disagrees with `v = 1`.
    Supernova { v: usize },
}

impl BimoduleViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            BimoduleViolation::Law { .. } => "bimodule law",
            BimoduleViolation::MeetClosed { .. } => "(i)",
            BimoduleViolation::ReachesTop { .. } => "(ii)",
            BimoduleViolation::Split { .. } => "(iii)",
            BimoduleViolation::Supernova { .. } => "(iv)",
        }
    }

    pub fn describe(&self, frame: &FinLattice) -> String {
        let n = |i: usize| frame.name(i).to_string();
        let detail = match *self {
            BimoduleViolation::Law { w_lo, w, v, v_hi } => {
                format!("{} ⊑ {} R {} ⊑ {} but not {} R {}", n(w_lo), n(w), n(v), n(v_hi), n(w_lo), n(v_hi))
            }
            BimoduleViolation::MeetClosed { w, v1, v2 } => {
                format!("{} R {} and {} R {} but not {} R {}", n(w), n(v1), n(w), n(v2), n(w), n(frame.meet(v1, v2)))
            }
            BimoduleViolation::ReachesTop { w } => format!("not {} R {}", n(w), n(frame.top())),
            BimoduleViolation::Split { w1, w2, v } => {
                format!("{} R {} has no split over {} and {}", n(frame.meet(w1, w2)), n(v), n(w1), n(w2))
            }
            BimoduleViolation::Supernova { v } => {
                if v == frame.top() {
                    format!("not {} R {}", n(v), n(v))
                } else {
                    format!("{} R {}", n(frame.top()), n(v))
                }
            }
        };
        format!("{}: {detail}", self.condition())
    }
}

/// Which conditions hold, each evaluated on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BimoduleConditions {
    pub law: bool,
    pub meet_closed: bool,
    pub reaches_top: bool,
    pub split: bool,
    pub supernova: bool,
}

impl BimoduleConditions {
    pub fn all(&self) -> bool {
        self.law && self.meet_closed && self.reaches_top && self.split && self.supernova
    }

    /// (ii) follows from (iv) and the bimodule law: `1 R 1` and `w ⊑ 1`.
    pub fn redundancy_confirmed(&self) -> bool {
        !(self.law && self.supernova) || self.reaches_top
    }
}

fn law_violation(frame: &FinLattice, rows: &[ElemSet]) -> Option<BimoduleViolation> {
    for w in frame.elements() {
        for v in rows[w].iter() {
            for w_lo in frame.down(w).iter() {
                if let Some(v_hi) = frame.up(v).difference(rows[w_lo]).first() {
                    return Some(BimoduleViolation::Law { w_lo, w, v, v_hi });
                }
            }
        }
    }
    None
}

fn meet_violation(frame: &FinLattice, rows: &[ElemSet]) -> Option<BimoduleViolation> {
    for w in frame.elements() {
        for v1 in rows[w].iter() {
            for v2 in rows[w].iter() {
                if !rows[w].contains(frame.meet(v1, v2)) {
                    return Some(BimoduleViolation::MeetClosed { w, v1, v2 });
                }
            }
        }
    }
    None
}

fn top_violation(frame: &FinLattice, rows: &[ElemSet]) -> Option<BimoduleViolation> {
    frame.elements().find(|&w| !rows[w].contains(frame.top())).map(|w| BimoduleViolation::ReachesTop { w })
}

fn split_violation(frame: &FinLattice, rows: &[ElemSet]) -> Option<BimoduleViolation> {
    for w1 in frame.elements() {
        for w2 in frame.elements() {
            let fan_in = join_sets(frame, rows[w1], rows[w2]);
            if let Some(v) = rows[frame.meet(w1, w2)].difference(fan_in).first() {
                return Some(BimoduleViolation::Split { w1, w2, v });
            }
        }
    }
    None
}

fn supernova_violation(frame: &FinLattice, rows: &[ElemSet]) -> Option<BimoduleViolation> {
    let top = frame.top();
    let expected = ElemSet::singleton(top);
    frame
        .elements()
        .find(|&v| rows[top].contains(v) != expected.contains(v))
        .map(|v| BimoduleViolation::Supernova { v })
}

fn check_rows(frame: &FinLattice, rows: &[ElemSet]) -> Result<(), ModalError> {
    if rows.len() != frame.len() {
        return Err(ModalError::TableSize { len: rows.len(), expected: frame.len() });
    }
    if rows.iter().any(|r| !r.is_subset(frame.all())) {
        return Err(ModalError::TableSize { len: rows.len(), expected: frame.len() });
    }
    Ok(())
}

/// Evaluate every condition separately.
pub fn bimodule_conditions(frame: &FinLattice, rows: &[ElemSet]) -> Result<BimoduleConditions, ModalError> {
    check_rows(frame, rows)?;
    Ok(BimoduleConditions {
        law: law_violation(frame, rows).is_none(),
        meet_closed: meet_violation(frame, rows).is_none(),
        reaches_top: top_violation(frame, rows).is_none(),
        split: split_violation(frame, rows).is_none(),
        supernova: supernova_violation(frame, rows).is_none(),
    })
}

/// The first failing condition, checked in the order law, (i), (ii), (iii),
/// (iv).
pub fn bimodule_violation(frame: &FinLattice, rows: &[ElemSet]) -> Result<Option<BimoduleViolation>, ModalError> {
    check_rows(frame, rows)?;
    Ok(law_violation(frame, rows)
        .or_else(|| meet_violation(frame, rows))
        .or_else(|| top_violation(frame, rows))
        .or_else(|| split_violation(frame, rows))
        .or_else(|| supernova_violation(frame, rows)))
}

/// Cheap yes/no version for exhaustive relation sweeps.
pub fn is_stable_bimodule(frame: &FinLattice, rows: &[ElemSet]) -> bool {
    let top = frame.top();
    if rows[top] != ElemSet::singleton(top) || rows.iter().any(|r| !r.contains(top)) {
        return false;
    }
    for w in frame.elements() {
        let r = rows[w];
        if frame.poset().upper_closure(r) != r {
            return false;
        }
        // Antitone rows plus upper rows is the bimodule law.
        if frame.down(w).iter().any(|lo| !r.is_subset(rows[lo])) {
            return false;
        }
        // A nonempty upper meet-closed set on a finite lattice is the
        // up-set of its meet.
        if r != frame.up(frame.meet_all(r)) {
            return false;
        }
    }
    split_violation(frame, rows).is_none()
}

pub fn rows_from_table(table: &[Vec<bool>]) -> Vec<ElemSet> {
    table.iter().map(|row| row.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()).collect()
}

/// A relation satisfying the bimodule law and the four stability conditions.
#[derive(Clone, PartialEq, Eq)]
pub struct StableBimodule {
    frame: Arc<FinLattice>,
    rows: Vec<ElemSet>,
}

pub fn check_stable_bimodule(frame: Arc<FinLattice>, rows: Vec<ElemSet>) -> Result<StableBimodule, ModalError> {
    if let Some(w) = frame.distributivity_witness() {
        return Err(ModalError::NotDistributive(w));
    }
    if let Some(v) = bimodule_violation(&frame, &rows)? {
        return Err(ModalError::NotStable { violation: v, message: v.describe(&frame) });
    }
    Ok(StableBimodule { frame, rows })
}

impl StableBimodule {
    /// `R = ⊑`.
    pub fn identity(frame: Arc<FinLattice>) -> StableBimodule {
        let rows = frame.elements().map(|w| frame.up(w)).collect();
        StableBimodule { frame, rows }
    }

    /// `w R v ⟺ g(w) ⊑ v` for a map preserving top and binary meets.
    pub fn from_stable_map(frame: Arc<FinLattice>, g: &[usize]) -> Result<StableBimodule, ModalError> {
        let rows = g.iter().map(|&x| frame.up(x)).collect();
        check_stable_bimodule(frame, rows)
    }

    pub(crate) fn from_trusted(frame: Arc<FinLattice>, rows: Vec<ElemSet>) -> StableBimodule {
        debug_assert!(matches!(bimodule_violation(&frame, &rows), Ok(None)));
        StableBimodule { frame, rows }
    }

    pub fn frame(&self) -> &Arc<FinLattice> {
        &self.frame
    }

    pub fn rows(&self) -> &[ElemSet] {
        &self.rows
    }

    pub fn related(&self, w: usize, v: usize) -> bool {
        self.rows[w].contains(v)
    }

    /// All related pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.frame.elements().flat_map(|w| self.rows[w].iter().map(move |v| (w, v))).collect()
    }

    /// The stable self-map `w ↦ ⋀ΛR(w)` whose up-sets are the rows.
    pub fn as_stable_map(&self) -> Vec<usize> {
        self.rows.iter().map(|&r| self.frame.meet_all(r)).collect()
    }

    /// `{w | ∃v. v R w and v ∈ F}`.
    pub fn diamond(&self, f: &Filter) -> Result<Filter, ModalError> {
        self.same_frame(f)?;
        Ok(Filter::new(self.frame.clone(), diamond_set(&self.rows, f.members()))?)
    }

    /// `{w | ∀v. w R v implies v ∈ F}`.
    pub fn boxed(&self, f: &Filter) -> Result<Filter, ModalError> {
        self.same_frame(f)?;
        Ok(Filter::new(self.frame.clone(), box_set(&self.rows, f.members()))?)
    }

    fn same_frame(&self, f: &Filter) -> Result<(), ModalError> {
        if Arc::ptr_eq(&self.frame, f.carrier()) || *self.frame == **f.carrier() {
            Ok(())
        } else {
            Err(FilterError::CarrierMismatch.into())
        }
    }
}

impl fmt::Debug for StableBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> =
            self.pairs().iter().map(|&(w, v)| format!("{}R{}", self.frame.name(w), self.frame.name(v))).collect();
        write!(f, "StableBimodule[{}]", pairs.join(" "))
    }
}

pub fn diamond_r(b: &StableBimodule, f: &Filter) -> Result<Filter, ModalError> {
    b.diamond(f)
}

pub fn box_r(b: &StableBimodule, f: &Filter) -> Result<Filter, ModalError> {
    b.boxed(f)
}

/// `♦_R` on raw sets, for any relation.
pub fn diamond_set(rows: &[ElemSet], s: ElemSet) -> ElemSet {
    s.iter().fold(ElemSet::EMPTY, |acc, v| acc.union(rows[v]))
}

/// `□_R` on raw sets, for any relation.
pub fn box_set(rows: &[ElemSet], s: ElemSet) -> ElemSet {
    (0..rows.len()).filter(|&w| rows[w].is_subset(s)).collect()
}

/// Every stable bimodule on `frame`, one per stable self-map, in the
/// lexicographic order of the maps.
pub fn enumerate_stable_bimodules(frame: &Arc<FinLattice>) -> Vec<StableBimodule> {
    enumerate_maps(frame, frame, MapLaws::STABLE)
        .into_iter()
        .map(|g| StableBimodule::from_trusted(frame.clone(), g.iter().map(|&x| frame.up(x)).collect()))
        .collect()
}

/// Largest frame for which every relation can be enumerated.
pub const RELATION_SCAN_CAP: usize = 5;

/// Every relation on `frame` passing the stability check, by enumerating all
/// `2^(n²)` relations. Returns the accepted rows and the number tried.
pub fn enumerate_stable_bimodules_by_scan(frame: &FinLattice) -> Result<(Vec<Vec<ElemSet>>, u64), ModalError> {
    use rayon::prelude::*;

    let n = frame.len();
    if n > RELATION_SCAN_CAP {
        return Err(ModalError::TooLarge { size: n, cap: RELATION_SCAN_CAP });
    }
    let row_count = 1u64 << n;
    let total = 1u64 << (n * n);
    // Split on the first row so workers share nothing.
    let mut found: Vec<Vec<ElemSet>> = (0..row_count)
        .into_par_iter()
        .flat_map_iter(|first| {
            let rest = total / row_count;
            let mut local = Vec::new();
            let mut rows = vec![ElemSet::EMPTY; n];
            for code in 0..rest {
                rows[0] = ElemSet(first);
                let mut c = code;
                for row in rows.iter_mut().skip(1) {
                    *row = ElemSet(c % row_count);
                    c /= row_count;
                }
                if is_stable_bimodule(frame, &rows) {
                    local.push(rows.clone());
                }
            }
            local
        })
        .collect();
    found.sort();
    Ok((found, total))
}

/// What [`check_adjunction_on_filters`] found for one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub filters: usize,
    pub pairs_checked: usize,
    pub failure: Option<AdjunctionFailure>,
}

impl AdjunctionReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjunctionFailure {
    DiamondNotFilter { filter: String, image: String },
    BoxNotFilter { filter: String, image: String },
    /// `♦F ⊆ G` disagrees with `F ⊆ □G`.
    Galois { f: String, g: String },
    DiamondJoin { f: String, g: String },
    DiamondBottom { image: String },
    BoxMeet { f: String, g: String },
    BoxTop { image: String },
}

/// Check `♦_R ⊣ □_R` over every pair of filters, plus the join and meet laws
/// each side should satisfy. Works on raw rows so corrupted relations can be
/// examined too.
pub fn adjunction_on_filters(frame: &Arc<FinLattice>, rows: &[ElemSet]) -> Result<AdjunctionReport, ModalError> {
    check_rows(frame, rows)?;
    let filt = enumerate_filters(frame.clone())?;
    let sets = filt.sets();
    let name = |s: ElemSet| describe_set(frame, s);
    let report = |pairs_checked, failure| Ok(AdjunctionReport { filters: sets.len(), pairs_checked, failure });

    for &f in sets {
        let d = diamond_set(rows, f);
        if filt.index_of(d).is_none() {
            return report(0, Some(AdjunctionFailure::DiamondNotFilter { filter: name(f), image: name(d) }));
        }
        let b = box_set(rows, f);
        if filt.index_of(b).is_none() {
            return report(0, Some(AdjunctionFailure::BoxNotFilter { filter: name(f), image: name(b) }));
        }
    }
    let least = ElemSet::singleton(frame.top());
    if diamond_set(rows, least) != least {
        return report(0, Some(AdjunctionFailure::DiamondBottom { image: name(diamond_set(rows, least)) }));
    }
    if box_set(rows, frame.all()) != frame.all() {
        return report(0, Some(AdjunctionFailure::BoxTop { image: name(box_set(rows, frame.all())) }));
    }
    let mut pairs = 0;
    for &f in sets {
        for &g in sets {
            pairs += 1;
            if diamond_set(rows, f).is_subset(g) != f.is_subset(box_set(rows, g)) {
                return report(pairs, Some(AdjunctionFailure::Galois { f: name(f), g: name(g) }));
            }
            let joined = join_sets(frame, f, g);
            if diamond_set(rows, joined) != join_sets(frame, diamond_set(rows, f), diamond_set(rows, g)) {
                return report(pairs, Some(AdjunctionFailure::DiamondJoin { f: name(f), g: name(g) }));
            }
            if box_set(rows, f.intersection(g)) != box_set(rows, f).intersection(box_set(rows, g)) {
                return report(pairs, Some(AdjunctionFailure::BoxMeet { f: name(f), g: name(g) }));
            }
        }
    }
    report(pairs, None)
}

pub fn check_adjunction_on_filters(b: &StableBimodule) -> Result<AdjunctionReport, ModalError> {
    adjunction_on_filters(&b.frame, &b.rows)
}

/// First `(v, w)` where `v R w` disagrees with `w ∈ ♦_R(↑v)`.
pub fn principal_roundtrip_failure(b: &StableBimodule) -> Option<(usize, usize)> {
    let frame = &b.frame;
    for v in frame.elements() {
        let image = diamond_set(&b.rows, frame.up(v));
        if let Some(w) = frame.elements().find(|&w| b.related(v, w) != image.contains(w)) {
            return Some((v, w));
        }
    }
    None
}

/// Every relation obtained by flipping one pair of `b`.
pub fn single_bit_mutations(b: &StableBimodule) -> Vec<Vec<ElemSet>> {
    let n = b.frame.len();
    let mut out = Vec::with_capacity(n * n);
    for w in 0..n {
        for v in 0..n {
            let mut rows = b.rows.clone();
            if rows[w].contains(v) {
                rows[w].remove(v);
            } else {
                rows[w].insert(v);
            }
            out.push(rows);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;

    fn full(frame: &FinLattice) -> Vec<ElemSet> {
        vec![frame.all(); frame.len()]
    }

    #[test]
    fn order_is_a_stable_bimodule() {
        for frame in [chain(1), chain(2), c3(), d4(), p5()] {
            let frame = Arc::new(frame);
            let id = StableBimodule::identity(frame.clone());
            assert!(check_stable_bimodule(frame.clone(), id.rows().to_vec()).is_ok());
            assert!(check_adjunction_on_filters(&id).unwrap().ok());
            for w in frame.elements() {
                let f = Filter::principal(frame.clone(), w);
                assert_eq!(id.diamond(&f).unwrap(), f);
                assert_eq!(id.boxed(&f).unwrap(), f);
            }
        }
    }

    #[test]
    fn full_relation_fails_supernova_condition() {
        let d = Arc::new(d4());
        let err = check_stable_bimodule(d.clone(), full(&d)).unwrap_err();
        match err {
            ModalError::NotStable { violation, message } => {
                assert_eq!(violation, BimoduleViolation::Supernova { v: 0 });
                assert_eq!(message, "(iv): 1 R 0");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_relation_fails_top_condition() {
        let d = Arc::new(d4());
        let err = check_stable_bimodule(d.clone(), vec![ElemSet::EMPTY; 4]).unwrap_err();
        assert!(matches!(err, ModalError::NotStable { violation: BimoduleViolation::ReachesTop { w: 0 }, .. }));
        let c = bimodule_conditions(&d, &[ElemSet::EMPTY; 4]).unwrap();
        assert!(!c.reaches_top && !c.supernova && c.law && c.meet_closed);
        assert!(c.redundancy_confirmed());
    }

    #[test]
    fn box_of_whole_frame_is_whole_frame() {
        let d = Arc::new(d4());
        for b in enumerate_stable_bimodules(&d) {
            let whole = Filter::whole(d.clone());
            assert_eq!(b.boxed(&whole).unwrap(), whole);
        }
    }

    #[test]
    fn scan_and_stable_maps_agree_on_small_frames() {
        for frame in [chain(1), chain(2), c3(), d4()] {
            let frame = Arc::new(frame);
            let (scanned, total) = enumerate_stable_bimodules_by_scan(&frame).unwrap();
            assert_eq!(total, 1 << (frame.len() * frame.len()));
            let mut via_maps: Vec<Vec<ElemSet>> =
                enumerate_stable_bimodules(&frame).into_iter().map(|b| b.rows().to_vec()).collect();
            via_maps.sort();
            assert_eq!(scanned, via_maps);
            for rows in &scanned {
                assert_eq!(bimodule_violation(&frame, rows).unwrap(), None);
            }
        }
    }

    #[test]
    fn fast_check_matches_full_check_on_mutations() {
        let frame = Arc::new(c3());
        for b in enumerate_stable_bimodules(&frame) {
            for rows in single_bit_mutations(&b) {
                let slow = bimodule_violation(&frame, &rows).unwrap().is_none();
                assert_eq!(is_stable_bimodule(&frame, &rows), slow);
                let c = bimodule_conditions(&frame, &rows).unwrap();
                assert_eq!(c.all(), slow);
                assert!(c.redundancy_confirmed());
            }
        }
    }

    #[test]
    fn every_stable_bimodule_roundtrips_through_principals() {
        for frame in [c3(), d4(), p5()] {
            let frame = Arc::new(frame);
            for b in enumerate_stable_bimodules(&frame) {
                assert_eq!(principal_roundtrip_failure(&b), None);
                assert!(check_adjunction_on_filters(&b).unwrap().ok());
            }
        }
    }

    #[test]
    fn split_failure_breaks_box() {
        // On D4 let only the bottom world see everything below the top; the
        // split condition at 0 = a ∧ b then has no witnesses.
        let d = Arc::new(d4());
        let rows = vec![d.all(), d.up(3), d.up(3), d.up(3)];
        let v = bimodule_violation(&d, &rows).unwrap().unwrap();
        assert_eq!(v.condition(), "(iii)");
        let report = adjunction_on_filters(&d, &rows).unwrap();
        assert!(matches!(report.failure, Some(AdjunctionFailure::BoxNotFilter { .. })), "{report:?}");
    }
}
