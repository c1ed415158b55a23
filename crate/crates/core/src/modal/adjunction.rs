//! Adjoint pairs `dia ⊣ box` on a finite Heyting algebra and the stable
//! bimodule they determine on the opposite frame.

use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::lattice::{enumerate_maps, FinLattice, LatticeError, MapLaws, MonotoneMap};

use super::bimodule::{bimodule_violation, diamond_set, box_set, StableBimodule};
use super::ModalError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjunctionViolation {
    /// `dia(x) ⊑ y` disagrees with `x ⊑ box(y)`.
    Galois { x: usize, y: usize },
    DiaBottom,
    DiaJoin { a: usize, b: usize },
    BoxTop,
    BoxMeet { a: usize, b: usize },
}

/// Operators `dia, box : H → H` with `dia ⊣ box`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAdjunction {
    algebra: Arc<FinLattice>,
    dia: Vec<usize>,
    boxes: Vec<usize>,
}

impl LatticeAdjunction {
    pub fn new(algebra: Arc<FinLattice>, dia: Vec<usize>, boxes: Vec<usize>) -> Result<Self, ModalError> {
        let n = algebra.len();
        for table in [&dia, &boxes] {
            if table.len() != n {
                return Err(ModalError::TableSize { len: table.len(), expected: n });
            }
            if let Some(&index) = table.iter().find(|&&v| v >= n) {
                return Err(LatticeError::IndexOutOfRange { index, size: n }.into());
            }
        }
        let a = LatticeAdjunction { algebra, dia, boxes };
        match a.violation() {
            Some(v) => Err(ModalError::InvalidAdjunction(v)),
            None => Ok(a),
        }
    }

    pub fn identity(algebra: Arc<FinLattice>) -> Self {
        let id: Vec<usize> = algebra.elements().collect();
        LatticeAdjunction { algebra, dia: id.clone(), boxes: id }
    }

    /// Pair a join-preserving `dia` with its computed right adjoint.
    pub fn from_dia(algebra: Arc<FinLattice>, dia: Vec<usize>) -> Result<Self, ModalError> {
        let boxes = right_adjoint_of(&algebra, &dia)?;
        LatticeAdjunction::new(algebra, dia, boxes)
    }

    fn violation(&self) -> Option<AdjunctionViolation> {
        let h = &self.algebra;
        for x in h.elements() {
            for y in h.elements() {
                if h.leq(self.dia[x], y) != h.leq(x, self.boxes[y]) {
                    return Some(AdjunctionViolation::Galois { x, y });
                }
            }
        }
        if self.dia[h.bottom()] != h.bottom() {
            return Some(AdjunctionViolation::DiaBottom);
        }
        if self.boxes[h.top()] != h.top() {
            return Some(AdjunctionViolation::BoxTop);
        }
        for a in h.elements() {
            for b in h.elements() {
                if self.dia[h.join(a, b)] != h.join(self.dia[a], self.dia[b]) {
                    return Some(AdjunctionViolation::DiaJoin { a, b });
                }
                if self.boxes[h.meet(a, b)] != h.meet(self.boxes[a], self.boxes[b]) {
                    return Some(AdjunctionViolation::BoxMeet { a, b });
                }
            }
        }
        None
    }

    pub fn algebra(&self) -> &Arc<FinLattice> {
        &self.algebra
    }

    pub fn dia(&self, x: usize) -> usize {
        self.dia[x]
    }

    pub fn boxed(&self, y: usize) -> usize {
        self.boxes[y]
    }

    pub fn dia_table(&self) -> &[usize] {
        &self.dia
    }

    pub fn box_table(&self) -> &[usize] {
        &self.boxes
    }
}

/// `box(y) = ⋁{x : dia(x) ⊑ y}` for a join-preserving `dia`.
pub fn right_adjoint_of(algebra: &Arc<FinLattice>, dia: &[usize]) -> Result<Vec<usize>, ModalError> {
    let map = MonotoneMap::new(algebra.clone(), algebra.clone(), dia.to_vec())?;
    if let Some(w) = map.join_failure() {
        return Err(LatticeError::NotJoinPreserving(w).into());
    }
    let h = algebra;
    let boxes = h
        .elements()
        .map(|y| {
            let below: ElemSet = h.elements().filter(|&x| h.leq(dia[x], y)).collect();
            let candidate = h.join_all(below);
            if h.leq(dia[candidate], y) {
                Ok(candidate)
            } else {
                Err(ModalError::NoRightAdjoint { at: y })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(boxes)
}

/// Every join-preserving self-map of `algebra`, in lexicographic order.
pub fn enumerate_join_preserving(algebra: &FinLattice) -> Vec<Vec<usize>> {
    enumerate_maps(algebra, algebra, MapLaws::JOIN_PRESERVING)
}

/// On the opposite frame of `H`, relate `x` to `y` iff `y ⊑_H dia(x)`.
pub fn bimodule_from_adjunction(a: &LatticeAdjunction) -> Result<StableBimodule, ModalError> {
    let h = &a.algebra;
    if let Some(w) = h.distributivity_witness() {
        return Err(ModalError::NotDistributive(w));
    }
    let frame = Arc::new(h.opposite());
    let rows: Vec<ElemSet> = h.elements().map(|x| h.down(a.dia(x))).collect();
    if let Some(v) = bimodule_violation(&frame, &rows)? {
        return Err(ModalError::NotStable { violation: v, message: v.describe(&frame) });
    }
    Ok(StableBimodule::from_trusted(frame, rows))
}

/// For `(x1 ∧op x2) R y`, the split `y_i = y ∧_H dia(x_i)`.
pub fn split_witness(a: &LatticeAdjunction, x1: usize, x2: usize, y: usize) -> (usize, usize) {
    let h = &a.algebra;
    (h.meet(y, a.dia(x1)), h.meet(y, a.dia(x2)))
}

/// What [`modal_embedding_check`] found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub bimodule_valid: bool,
    /// First `(x1, x2, y)` whose split `y ∧ dia(x_i)` fails.
    pub split_failure: Option<(usize, usize, usize)>,
    /// First `z` with `♦_R(↑op z) ≠ ↑op dia(z)`.
    pub dia_square_failure: Option<usize>,
    /// First `z` with `□_R(↑op z) ≠ ↑op box(z)`.
    pub box_square_failure: Option<usize>,
}

impl EmbeddingReport {
    pub fn ok(&self) -> bool {
        self.bimodule_valid
            && self.split_failure.is_none()
            && self.dia_square_failure.is_none()
            && self.box_square_failure.is_none()
    }
}

/// Build the bimodule of `a` and check that the principal embedding
/// `z ↦ ↑op z = {y : y ⊑_H z}` intertwines `dia`, `box` with `♦_R`, `□_R`.
pub fn modal_embedding_check(a: &LatticeAdjunction) -> Result<EmbeddingReport, ModalError> {
    let h = a.algebra.clone();
    let b = match bimodule_from_adjunction(a) {
        Ok(b) => b,
        Err(ModalError::NotStable { .. }) => {
            return Ok(EmbeddingReport {
                bimodule_valid: false,
                split_failure: None,
                dia_square_failure: None,
                box_square_failure: None,
            })
        }
        Err(e) => return Err(e),
    };
    let mut split_failure = None;
    'outer: for x1 in h.elements() {
        for x2 in h.elements() {
            for y in h.down(a.dia(h.join(x1, x2))).iter() {
                let (y1, y2) = split_witness(a, x1, x2, y);
                let realized = b.related(x1, y1) && b.related(x2, y2) && h.leq(y, h.join(y1, y2));
                if !realized {
                    split_failure = Some((x1, x2, y));
                    break 'outer;
                }
            }
        }
    }
    let dia_square_failure =
        h.elements().find(|&z| diamond_set(b.rows(), h.down(z)) != h.down(a.dia(z)));
    let box_square_failure = h.elements().find(|&z| box_set(b.rows(), h.down(z)) != h.down(a.boxed(z)));
    Ok(EmbeddingReport { bimodule_valid: true, split_failure, dia_square_failure, box_square_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::Filter;
    use crate::lattice::named::*;

    #[test]
    fn identity_has_identity_adjoint_and_order_bimodule() {
        for h in [chain(2), c3(), d4(), p5()] {
            let h = Arc::new(h);
            let id: Vec<usize> = h.elements().collect();
            assert_eq!(right_adjoint_of(&h, &id).unwrap(), id);
            let a = LatticeAdjunction::identity(h.clone());
            let b = bimodule_from_adjunction(&a).unwrap();
            assert_eq!(b, StableBimodule::identity(b.frame().clone()));
            assert!(modal_embedding_check(&a).unwrap().ok());
        }
    }

    #[test]
    fn meet_with_a_on_d4() {
        let h = Arc::new(d4());
        let dia: Vec<usize> = h.elements().map(|x| h.meet(x, 1)).collect();
        let boxes = right_adjoint_of(&h, &dia).unwrap();
        let expected: Vec<usize> = h.elements().map(|y| h.implies(1, y)).collect();
        assert_eq!(boxes, expected);
        let a = LatticeAdjunction::new(h.clone(), dia, boxes).unwrap();
        let b = bimodule_from_adjunction(&a).unwrap();
        assert!(modal_embedding_check(&a).unwrap().ok());
        // On the opposite frame ↑op 0_H is the whole frame's bottom filter {0_H}.
        let frame = b.frame().clone();
        let least = Filter::least(frame.clone());
        assert_eq!(least.members(), ElemSet::singleton(0));
        let boxed = b.boxed(&least).unwrap();
        assert_eq!(boxed.members(), h.down(2));
    }

    #[test]
    fn three_chain_example() {
        let h = Arc::new(c3());
        assert_eq!(right_adjoint_of(&h, &[0, 0, 2]).unwrap(), vec![1, 1, 2]);
        let a = LatticeAdjunction::from_dia(h, vec![0, 0, 2]).unwrap();
        assert!(modal_embedding_check(&a).unwrap().ok());
    }

    #[test]
    fn non_join_preserving_dia_is_rejected() {
        let h = Arc::new(d4());
        // Sends a and b to 0 but a ∨ b to 1.
        let err = right_adjoint_of(&h, &[0, 0, 0, 3]).unwrap_err();
        assert!(matches!(err, ModalError::Lattice(LatticeError::NotJoinPreserving(_))), "{err:?}");
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let h = Arc::new(c3());
        let err = LatticeAdjunction::new(h, vec![0, 1, 2], vec![0, 1, 2].into_iter().map(|x: usize| x.max(1)).collect());
        assert!(matches!(err, Err(ModalError::InvalidAdjunction(_))));
    }

    #[test]
    fn every_dia_on_small_algebras_embeds() {
        for h in [chain(1), chain(2), c3(), d4(), p5()] {
            let h = Arc::new(h);
            for dia in enumerate_join_preserving(&h) {
                let a = LatticeAdjunction::from_dia(h.clone(), dia).unwrap();
                assert!(modal_embedding_check(&a).unwrap().ok());
            }
        }
    }
}
