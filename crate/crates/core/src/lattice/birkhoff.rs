use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bitset::{ElemSet, MAX_ELEMENTS};

use super::iso::{canonical_form, CANONICAL_CAP};
use super::{check_poset, complete_lattice, FinLattice, FinPoset, LatticeError};

/// Largest base poset [`birkhoff`] will scan subsets of.
pub const BIRKHOFF_BASE_CAP: usize = 20;

/// Largest base size accepted by [`enumerate_distributive_lattices`].
pub const ENUMERATION_HARD_CAP: usize = 6;

/// Default base size for sweeps: lattices of up to 16 elements.
pub const DEFAULT_MAX_BASE: usize = 4;

/// The lattice of down-sets of `base`, ordered by inclusion.
///
/// Elements are listed smallest down-set first (ties by bit pattern), so the
/// bottom is always element 0 and the top the last element.
pub fn birkhoff(base: &FinPoset) -> Result<FinLattice, LatticeError> {
    downset_lattice(base).map(|(l, _)| l)
}

/// As [`birkhoff`], also returning the down-set behind each element.
pub fn downset_lattice(base: &FinPoset) -> Result<(FinLattice, Vec<ElemSet>), LatticeError> {
    let n = base.len();
    if n > BIRKHOFF_BASE_CAP {
        return Err(LatticeError::TooLarge { size: n, cap: BIRKHOFF_BASE_CAP });
    }
    let mut downsets = Vec::new();
    for bits in 0u64..(1u64 << n) {
        let s = ElemSet(bits);
        if base.is_lower(s) {
            if downsets.len() == MAX_ELEMENTS {
                return Err(LatticeError::TooLarge { size: downsets.len() + 1, cap: MAX_ELEMENTS });
            }
            downsets.push(s);
        }
    }
    downsets.sort_by_key(|s| s.size_then_bits());
    let lattice = complete_lattice(FinPoset::from_inclusion(&downsets)?)?;
    Ok((lattice, downsets))
}

/// A lattice produced by the sweep enumerator, with the base poset it was
/// built from.
#[derive(Clone, Debug)]
pub struct GeneratedLattice {
    pub base: FinPoset,
    pub lattice: Arc<FinLattice>,
}

impl GeneratedLattice {
    /// Short stable description, e.g. `birkhoff(3: 0<1 0<2)`.
    pub fn label(&self) -> String {
        let covers: Vec<String> = self.base.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        format!("birkhoff({}: {})", self.base.len(), covers.join(" "))
    }
}

/// Every poset on `k` points up to isomorphism, as canonical representatives
/// sorted by canonical code.
pub fn posets_up_to_iso(k: usize) -> Vec<FinPoset> {
    assert!(k <= CANONICAL_CAP);
    // Every finite poset has a linear extension, so it suffices to look at
    // relations contained in the strict upper triangle.
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut seen: BTreeMap<u64, FinPoset> = BTreeMap::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut table = vec![vec![false; k]; k];
        for (i, row) in table.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                table[i][j] = true;
            }
        }
        let Ok(p) = check_poset(&table) else { continue };
        let (code, perm) = canonical_form(&p);
        seen.entry(code).or_insert_with(|| p.permuted(&perm));
    }
    seen.into_values().collect()
}

/// Birkhoff lattices of every base poset with at most `max_base` points, one
/// per isomorphism class of base, ordered by base size then canonical code.
pub fn enumerate_distributive_lattices(max_base: usize) -> Result<Vec<GeneratedLattice>, LatticeError> {
    if max_base > ENUMERATION_HARD_CAP {
        return Err(LatticeError::TooLarge { size: max_base, cap: ENUMERATION_HARD_CAP });
    }
    let mut out = Vec::new();
    for k in 0..=max_base {
        for base in posets_up_to_iso(k) {
            let lattice = Arc::new(birkhoff(&base)?);
            out.push(GeneratedLattice { base, lattice });
        }
    }
    Ok(out)
}
