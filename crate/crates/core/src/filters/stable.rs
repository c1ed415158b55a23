//! Stable (finite-meet-preserving) maps, their filter preimages, and the
//! recovery of a stable map from the left adjoint of its preimage map.

use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::lattice::{MapLawFailure, MonotoneMap};

use super::filter::Filter;
use super::locale::enumerate_filters;
use super::FilterError;

/// First failure of `f(1) = 1` or `f(a ∧ b) = f(a) ∧ f(b)`.
pub fn stability_failure(f: &MonotoneMap) -> Option<MapLawFailure> {
    f.meet_failure()
}

pub fn is_stable_map(f: &MonotoneMap) -> bool {
    stability_failure(f).is_none()
}

fn require_stable(f: &MonotoneMap) -> Result<(), FilterError> {
    match stability_failure(f) {
        Some(w) => Err(FilterError::NotStable(w)),
        None => Ok(()),
    }
}

/// `{v : f(v) ∈ F}` as a set, without validation.
pub fn preimage_set(f: &MonotoneMap, target_set: ElemSet) -> ElemSet {
    f.source().elements().filter(|&v| target_set.contains(f.apply(v))).collect()
}

/// `{v ∈ W : f(v) ∈ F}` for a stable `f : W → W'` and a filter `F` on `W'`.
pub fn preimage(f: &MonotoneMap, filter: &Filter) -> Result<Filter, FilterError> {
    require_stable(f)?;
    let t = f.target();
    if !(Arc::ptr_eq(t, filter.carrier()) || **t == **filter.carrier()) {
        return Err(FilterError::CarrierMismatch);
    }
    Filter::new(f.source().clone(), preimage_set(f, filter.members()))
}

/// What [`duality_roundtrip`] found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    /// `Pre f` sends filters to filters.
    pub preimage_lands_in_filters: bool,
    /// `Pre f` preserves the top and binary intersections.
    pub preimage_preserves_meets: bool,
    /// `Pre f` preserves the join of every directed family of filters.
    pub preimage_preserves_directed_joins: bool,
    /// The left adjoint sends principal filters to principal filters.
    pub left_adjoint_preserves_compacts: bool,
    /// The map read back from the left adjoint on principals.
    pub recovered: Vec<usize>,
    pub matches: bool,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.preimage_lands_in_filters
            && self.preimage_preserves_meets
            && self.preimage_preserves_directed_joins
            && self.left_adjoint_preserves_compacts
            && self.matches
    }
}

/// Largest filter lattice for which every directed family is tried.
pub const DIRECTED_SCAN_CAP: usize = 16;

/// Recover a stable `f` from `Pre f : Filt(W') → Filt(W)`: compute the left
/// adjoint by exhaustive minimum, restrict it to principal filters, and read
/// each image back through `↑`.
pub fn duality_roundtrip(f: &MonotoneMap) -> Result<DualityReport, FilterError> {
    require_stable(f)?;
    let src = enumerate_filters(f.source().clone())?;
    let tgt = enumerate_filters(f.target().clone())?;
    let (so, to) = (src.order(), tgt.order());

    let pre_sets: Vec<ElemSet> = tgt.sets().iter().map(|&t| preimage_set(f, t)).collect();
    let preimage_lands_in_filters = pre_sets.iter().all(|&s| src.index_of(s).is_some());
    if !preimage_lands_in_filters {
        return Ok(DualityReport {
            preimage_lands_in_filters,
            preimage_preserves_meets: false,
            preimage_preserves_directed_joins: false,
            left_adjoint_preserves_compacts: false,
            recovered: Vec::new(),
            matches: false,
        });
    }
    let pre: Vec<usize> = pre_sets.iter().map(|&s| src.index_of(s).unwrap()).collect();

    let preimage_preserves_meets = pre[to.top()] == so.top()
        && to.elements().all(|a| to.elements().all(|b| pre[to.meet(a, b)] == so.meet(pre[a], pre[b])));

    let preimage_preserves_directed_joins = to.len() > DIRECTED_SCAN_CAP
        || (1..1u64 << to.len()).map(ElemSet).all(|x| {
            let directed = x.iter().all(|i| x.iter().all(|j| to.up(i).intersection(to.up(j)).intersects(x)));
            if !directed {
                return true;
            }
            let image: ElemSet = x.iter().map(|t| pre[t]).collect();
            pre[to.join_all(x)] == so.join_all(image)
        });

    // Left adjoint: least T with S ⊆ Pre(T).
    let left: Vec<usize> = so
        .elements()
        .map(|s| {
            let above: ElemSet = to.elements().filter(|&t| so.leq(s, pre[t])).collect();
            above.iter().find(|&m| above.is_subset(to.up(m))).ok_or(FilterError::NoAdjoint { at: s })
        })
        .collect::<Result<_, _>>()?;

    let tgt_principals: ElemSet = f.target().elements().map(|w| tgt.principal(w)).collect();
    let left_adjoint_preserves_compacts =
        f.source().elements().all(|w| tgt_principals.contains(left[src.principal(w)]));

    let recovered: Vec<usize> = f.source().elements().map(|w| tgt.filter(left[src.principal(w)]).generator()).collect();
    let matches = recovered == f.table();

    Ok(DualityReport {
        preimage_lands_in_filters,
        preimage_preserves_meets,
        preimage_preserves_directed_joins,
        left_adjoint_preserves_compacts,
        recovered,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;
    use crate::lattice::{enumerate_maps, FinLattice, MapLaws};

    fn d4_to_c2() -> MonotoneMap {
        // {0, a} ↦ 0, {b, 1} ↦ 1
        MonotoneMap::new(Arc::new(d4()), Arc::new(chain(2)), vec![0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn stability_examples() {
        assert!(is_stable_map(&MonotoneMap::identity(Arc::new(d4()))));
        assert!(is_stable_map(&d4_to_c2()));
        let d = Arc::new(d4());
        let bottom = MonotoneMap::constant(d.clone(), d, 0).unwrap();
        assert_eq!(stability_failure(&bottom), Some(MapLawFailure::Unit));
    }

    #[test]
    fn preimage_examples() {
        let d = Arc::new(d4());
        let id = MonotoneMap::identity(d.clone());
        for w in d.elements() {
            let f = Filter::principal(d.clone(), w);
            assert_eq!(preimage(&id, &f).unwrap(), f);
        }
        let to_top = MonotoneMap::constant(d.clone(), d.clone(), 3).unwrap();
        assert_eq!(preimage(&to_top, &Filter::least(d.clone())).unwrap(), Filter::whole(d.clone()));
        let f = d4_to_c2();
        let up1 = Filter::principal(f.target().clone(), 1);
        assert_eq!(preimage(&f, &up1).unwrap(), Filter::principal(d.clone(), 2));
    }

    #[test]
    fn preimage_refuses_unstable_maps() {
        let d = Arc::new(d4());
        let bottom = MonotoneMap::constant(d.clone(), d.clone(), 0).unwrap();
        assert!(matches!(preimage(&bottom, &Filter::least(d)), Err(FilterError::NotStable(_))));
    }

    #[test]
    fn roundtrip_examples() {
        let d = Arc::new(d4());
        for f in [MonotoneMap::identity(d.clone()), d4_to_c2(), MonotoneMap::constant(d.clone(), d, 3).unwrap()] {
            let report = duality_roundtrip(&f).unwrap();
            assert!(report.ok(), "{report:?}");
            assert_eq!(report.recovered, f.table());
        }
    }

    #[test]
    fn roundtrip_recovers_every_stable_map_between_small_lattices() {
        let ls: Vec<Arc<FinLattice>> = vec![Arc::new(chain(2)), Arc::new(c3()), Arc::new(d4()), Arc::new(p5())];
        for s in &ls {
            for t in &ls {
                for table in enumerate_maps(s, t, MapLaws::STABLE) {
                    let f = MonotoneMap::new(s.clone(), t.clone(), table).unwrap();
                    assert!(duality_roundtrip(&f).unwrap().ok());
                }
            }
        }
    }
}
