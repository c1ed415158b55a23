use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::filters::Filter;
use crate::lattice::{FinLattice, FinPoset};
use crate::modal::{LatticeAdjunction, StableBimodule};

use super::SemanticsError;

pub type Valuation = BTreeMap<String, Filter>;

/// How atoms missing from the valuation are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UnboundAtoms {
    #[default]
    Strict,
    /// Read as the least filter `{1}`.
    Bottom,
}

/// A distributive frame with a filter-valued valuation and, for modal
/// formulas, a stable bimodule.
#[derive(Clone, Debug)]
pub struct StableModel {
    frame: Arc<FinLattice>,
    valuation: Valuation,
    bimodule: Option<StableBimodule>,
    unbound: UnboundAtoms,
}

fn same_lattice(a: &Arc<FinLattice>, b: &Arc<FinLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl StableModel {
    pub fn new(
        frame: Arc<FinLattice>,
        valuation: Valuation,
        bimodule: Option<StableBimodule>,
    ) -> Result<StableModel, SemanticsError> {
        if let Some(w) = frame.distributivity_witness() {
            return Err(SemanticsError::NotDistributive(w));
        }
        for (atom, f) in &valuation {
            if !same_lattice(&frame, f.carrier()) {
                return Err(SemanticsError::ForeignValuation(atom.clone()));
            }
        }
        if let Some(b) = &bimodule {
            if !same_lattice(&frame, b.frame()) {
                return Err(SemanticsError::ForeignBimodule);
            }
        }
        Ok(StableModel { frame, valuation, bimodule, unbound: UnboundAtoms::Strict })
    }

    pub fn with_unbound(mut self, unbound: UnboundAtoms) -> StableModel {
        self.unbound = unbound;
        self
    }

    pub fn frame(&self) -> &Arc<FinLattice> {
        &self.frame
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn bimodule(&self) -> Option<&StableBimodule> {
        self.bimodule.as_ref()
    }

    pub fn unbound(&self) -> UnboundAtoms {
        self.unbound
    }

    pub(crate) fn atom_filter(&self, atom: &str) -> Result<Filter, SemanticsError> {
        match (self.valuation.get(atom), self.unbound) {
            (Some(f), _) => Ok(f.clone()),
            (None, UnboundAtoms::Bottom) => Ok(Filter::least(self.frame.clone())),
            (None, UnboundAtoms::Strict) => Err(SemanticsError::UnboundAtom(atom.to_string())),
        }
    }

    pub(crate) fn require_bimodule(&self) -> Result<&StableBimodule, SemanticsError> {
        self.bimodule.as_ref().ok_or(SemanticsError::MissingBimodule)
    }

    pub(crate) fn check_world(&self, w: usize) -> Result<(), SemanticsError> {
        if w < self.frame.len() {
            Ok(())
        } else {
            Err(SemanticsError::WorldOutOfRange { world: w, size: self.frame.len() })
        }
    }
}

/// A poset with upper-set valuation and an optional bimodule, read with the
/// usual intuitionistic Kripke clauses.
#[derive(Clone, Debug)]
pub struct KripkeModel {
    frame: FinPoset,
    valuation: BTreeMap<String, ElemSet>,
    relation: Option<Vec<ElemSet>>,
}

impl KripkeModel {
    pub fn new(
        frame: FinPoset,
        valuation: BTreeMap<String, ElemSet>,
        relation: Option<Vec<ElemSet>>,
    ) -> Result<KripkeModel, SemanticsError> {
        for (atom, &s) in &valuation {
            if !s.is_subset(frame.all()) || !frame.is_upper(s) {
                return Err(SemanticsError::NotUpperSet(atom.clone()));
            }
        }
        if let Some(rows) = &relation {
            let law_holds = rows.len() == frame.len()
                && frame.all().iter().all(|w| {
                    frame.is_upper(rows[w]) && frame.down(w).iter().all(|lo| rows[w].is_subset(rows[lo]))
                });
            if !law_holds {
                return Err(SemanticsError::NotABimodule);
            }
        }
        Ok(KripkeModel { frame, valuation, relation })
    }

    /// The same frame, valuation and relation, forgetting the lattice
    /// structure.
    pub fn from_stable(m: &StableModel) -> KripkeModel {
        KripkeModel {
            frame: m.frame.poset().clone(),
            valuation: m.valuation.iter().map(|(k, f)| (k.clone(), f.members())).collect(),
            relation: m.bimodule.as_ref().map(|b| b.rows().to_vec()),
        }
    }

    pub fn frame(&self) -> &FinPoset {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, ElemSet> {
        &self.valuation
    }

    pub fn relation(&self) -> Option<&[ElemSet]> {
        self.relation.as_deref()
    }
}

/// Interpretation of atoms as elements of a finite Heyting algebra, with an
/// optional adjoint pair for the modalities.
#[derive(Clone, Debug)]
pub struct HeytingAssignment {
    algebra: Arc<FinLattice>,
    values: BTreeMap<String, usize>,
    adjunction: Option<LatticeAdjunction>,
}

impl HeytingAssignment {
    pub fn new(algebra: Arc<FinLattice>, values: BTreeMap<String, usize>) -> Result<Self, SemanticsError> {
        if let Some(w) = algebra.distributivity_witness() {
            return Err(SemanticsError::NotDistributive(w));
        }
        if let Some((atom, &v)) = values.iter().find(|(_, &v)| v >= algebra.len()) {
            return Err(SemanticsError::ValueOutOfRange { atom: atom.clone(), value: v });
        }
        Ok(HeytingAssignment { algebra, values, adjunction: None })
    }

    pub fn with_adjunction(mut self, a: LatticeAdjunction) -> Result<Self, SemanticsError> {
        if !same_lattice(&self.algebra, a.algebra()) {
            return Err(SemanticsError::ForeignAdjunction);
        }
        self.adjunction = Some(a);
        Ok(self)
    }

    pub fn algebra(&self) -> &Arc<FinLattice> {
        &self.algebra
    }

    pub fn values(&self) -> &BTreeMap<String, usize> {
        &self.values
    }

    pub fn adjunction(&self) -> Option<&LatticeAdjunction> {
        self.adjunction.as_ref()
    }
}
