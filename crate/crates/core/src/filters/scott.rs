//! Join-preserving extension of a finite-join-preserving map along the
//! principal embedding `W → Filt(W^op)`, and its right adjoint.

use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::lattice::{FinLattice, JoinPreservingMap, MonotoneMap};

use super::locale::{enumerate_filters, FilterLattice};
use super::FilterError;

/// The extension `Σf : Filt(W^op) → L` of `f : W → L` and its right adjoint
/// `Νf : L → Filt(W^op)`.
///
/// A filter of `W^op` is an ideal of `W`, and its principal members are the
/// down-sets `↓w`; `Σf(↓w) = f(w)`.
#[derive(Clone, Debug)]
pub struct ScottExtension {
    domain: FilterLattice,
    target: Arc<FinLattice>,
    sigma: Vec<usize>,
    nerve: Vec<usize>,
    base: Vec<usize>,
}

/// Largest number of candidate maps the uniqueness check will enumerate.
pub const UNIQUENESS_SCAN_CAP: u64 = 1 << 20;

pub fn scott_extend(f: &JoinPreservingMap) -> Result<ScottExtension, FilterError> {
    let target = f.target().clone();
    let domain = enumerate_filters(Arc::new(f.source().opposite()))?;
    let sigma: Vec<usize> = domain
        .sets()
        .iter()
        .map(|s| s.iter().fold(target.bottom(), |acc, w| target.join(acc, f.apply(w))))
        .collect();
    let order = domain.order();
    // Right adjoint as the maximum of an exhaustive candidate scan.
    let nerve = target
        .elements()
        .map(|y| {
            let below: ElemSet = order.elements().filter(|&s| target.leq(sigma[s], y)).collect();
            below
                .iter()
                .find(|&m| below.is_subset(order.down(m)))
                .ok_or(FilterError::NoAdjoint { at: y })
        })
        .collect::<Result<_, _>>()?;
    let base = f.map().table().to_vec();
    Ok(ScottExtension { domain, target, sigma, nerve, base })
}

impl ScottExtension {
    /// `Filt(W^op)`.
    pub fn domain(&self) -> &FilterLattice {
        &self.domain
    }

    pub fn target(&self) -> &Arc<FinLattice> {
        &self.target
    }

    /// `Σf` on filter indices of the domain.
    pub fn sigma(&self, s: usize) -> usize {
        self.sigma[s]
    }

    pub fn sigma_table(&self) -> &[usize] {
        &self.sigma
    }

    /// `Νf(y)` as a filter index of the domain.
    pub fn nerve(&self, y: usize) -> usize {
        self.nerve[y]
    }

    /// Index of the principal element `↓w` in the domain.
    pub fn principal(&self, w: usize) -> usize {
        self.domain.principal(w)
    }

    /// First `w` with `Σf(↓w) ≠ f(w)`.
    pub fn extension_failure(&self) -> Option<usize> {
        (0..self.base.len()).find(|&w| self.sigma[self.principal(w)] != self.base[w])
    }

    /// First subset of the domain whose join `Σf` fails to preserve; every
    /// subset is tried, including the empty one.
    pub fn join_preservation_failure(&self) -> Option<ElemSet> {
        let order = self.domain.order();
        let m = order.len();
        assert!(m < 32, "subset scan over {m} filters is too large");
        (0..1u64 << m).map(ElemSet).find(|&x| {
            let image = x.iter().fold(self.target.bottom(), |acc, s| self.target.join(acc, self.sigma[s]));
            self.sigma[order.join_all(x)] != image
        })
    }

    /// First `(S, y)` with `Σf(S) ⊑ y` disagreeing with `S ⊆ Νf(y)`.
    pub fn adjunction_failure(&self) -> Option<(usize, usize)> {
        let order = self.domain.order();
        for s in order.elements() {
            for y in self.target.elements() {
                if self.target.leq(self.sigma[s], y) != order.leq(s, self.nerve[y]) {
                    return Some((s, y));
                }
            }
        }
        None
    }
}

/// Count every join-preserving map `Filt(W^op) → L` that agrees with `f` on
/// principal elements, by enumerating all `|L|^|Filt(W^op)|` tables.
pub fn count_extensions(f: &JoinPreservingMap) -> Result<usize, FilterError> {
    let target = f.target().clone();
    let domain = enumerate_filters(Arc::new(f.source().opposite()))?;
    let order = domain.order().clone();
    let (m, k) = (order.len(), target.len() as u64);
    let total = k.checked_pow(m as u32).filter(|&t| t <= UNIQUENESS_SCAN_CAP);
    let Some(total) = total else {
        return Err(FilterError::TooLarge { size: m, cap: 0 });
    };
    let mut count = 0;
    let mut table = vec![0; m];
    for code in 0..total {
        let mut c = code;
        for slot in table.iter_mut() {
            *slot = (c % k) as usize;
            c /= k;
        }
        let agrees = f.source().elements().all(|w| table[domain.principal(w)] == f.apply(w));
        if !agrees {
            continue;
        }
        if let Ok(g) = MonotoneMap::new(order.clone(), target.clone(), table.clone()) {
            if g.join_failure().is_none() {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;

    fn jp(source: &Arc<FinLattice>, target: &Arc<FinLattice>, table: Vec<usize>) -> JoinPreservingMap {
        JoinPreservingMap::new(MonotoneMap::new(source.clone(), target.clone(), table).unwrap()).unwrap()
    }

    #[test]
    fn extension_of_the_unit_is_the_identity() {
        let w = Arc::new(p5());
        let dom = enumerate_filters(Arc::new(w.opposite())).unwrap();
        let unit = jp(&w, dom.order(), w.elements().map(|x| dom.principal(x)).collect());
        let ext = scott_extend(&unit).unwrap();
        for s in dom.order().elements() {
            assert_eq!(ext.sigma(s), s);
        }
    }

    #[test]
    fn meet_with_a_on_d4() {
        let d4 = Arc::new(d4());
        let f = jp(&d4, &d4, vec![0, 1, 0, 1]);
        let ext = scott_extend(&f).unwrap();
        for x in d4.elements() {
            assert_eq!(ext.sigma(ext.principal(x)), d4.meet(x, 1));
        }
        assert_eq!(ext.extension_failure(), None);
        assert_eq!(ext.join_preservation_failure(), None);
        assert_eq!(ext.adjunction_failure(), None);
        assert_eq!(count_extensions(&f).unwrap(), 1);
    }

    #[test]
    fn uniqueness_on_small_pairs() {
        let ls = [Arc::new(chain(1)), Arc::new(chain(2)), Arc::new(c3()), Arc::new(d4())];
        for s in &ls {
            for t in &ls {
                for table in crate::lattice::enumerate_maps(s, t, crate::lattice::MapLaws::JOIN_PRESERVING) {
                    assert_eq!(count_extensions(&jp(s, t, table)).unwrap(), 1);
                }
            }
        }
    }
}
