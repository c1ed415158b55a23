//! Fixed formula lists and exhaustive countermodel search over the enumerated
//! frames.

use std::sync::Arc;

use rayon::prelude::*;

use crate::filters::{enumerate_filters, Filter};
use crate::lattice::{enumerate_distributive_lattices, ENUMERATION_HARD_CAP};
use crate::logic::{parse, Formula};
use crate::modal::enumerate_stable_bimodules;

use super::{forcing_set, SemanticsError, StableModel, Valuation};

/// Intuitionistic theorems over `p` and `q` used by the soundness sweeps.
pub const CURATED_THEOREMS: [&str; 12] = [
    "p -> p",
    "p -> q -> p",
    "(p -> p -> q) -> p -> q",
    "p & q -> p",
    "p -> q -> p & q",
    "p -> p | q",
    "q -> p | q",
    "(p -> q) -> (q -> q) -> p | q -> q",
    "bot -> p",
    "p & (q | ~q) -> p & q | p & ~q",
    "(p -> q) -> ~q -> ~p",
    "~~(p | ~p)",
];

/// Modal formulas valid for every adjoint pair `dia ⊣ box`.
pub const MODAL_THEOREMS: [&str; 9] = [
    "p -> box dia p",
    "dia box p -> p",
    "box (p -> q) -> box p -> box q",
    "box (p & q) -> box p & box q",
    "box p & box q -> box (p & q)",
    "dia (p | q) -> dia p | dia q",
    "dia p | dia q -> dia (p | q)",
    "box top",
    "dia bot -> bot",
];

fn parse_all(src: &[&str]) -> Vec<Formula> {
    src.iter().map(|s| parse(s).expect("fixed formula parses")).collect()
}

pub fn curated_theorems() -> Vec<Formula> {
    parse_all(&CURATED_THEOREMS)
}

pub fn modal_theorems() -> Vec<Formula> {
    parse_all(&MODAL_THEOREMS)
}

/// Default number of distinct atoms a searched formula may use.
pub const DEFAULT_VARS_CAP: usize = 2;
/// Hard ceiling on the atom count.
pub const VARS_HARD_CAP: usize = 4;

/// A model refuting the searched formula, with the world where it fails.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub model: StableModel,
    pub world: usize,
    /// Label of the generated lattice the frame came from.
    pub lattice: String,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Box<Countermodel>),
    Exhausted { models_checked: u64 },
}

/// Walk lattices in enumeration order, then (for modal formulas) stable
/// bimodules in map order, then valuations of the atoms into filters with the
/// last atom varying fastest, then worlds ascending; return the first world
/// that does not force `f`.
pub fn countermodel_search(f: &Formula, max_base: usize, vars_cap: usize) -> Result<SearchOutcome, SemanticsError> {
    if max_base > ENUMERATION_HARD_CAP {
        return Err(SemanticsError::CapExceeded { what: "base size", value: max_base, cap: ENUMERATION_HARD_CAP });
    }
    if vars_cap > VARS_HARD_CAP {
        return Err(SemanticsError::CapExceeded { what: "variable cap", value: vars_cap, cap: VARS_HARD_CAP });
    }
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    if atoms.len() > vars_cap {
        return Err(SemanticsError::CapExceeded { what: "atoms in formula", value: atoms.len(), cap: vars_cap });
    }
    let mut models_checked = 0u64;
    for generated in enumerate_distributive_lattices(max_base)? {
        let frame = generated.lattice.clone();
        let filters = enumerate_filters(frame.clone())?.filters();
        let bimodules: Vec<_> =
            if f.is_modal() { enumerate_stable_bimodules(&frame).into_iter().map(Some).collect() } else { vec![None] };
        let radix = filters.len() as u64;
        let valuations = radix.pow(atoms.len() as u32);
        let total = bimodules.len() as u64 * valuations;

        let build = |i: u64| -> Result<StableModel, SemanticsError> {
            let (b, mut code) = ((i / valuations) as usize, i % valuations);
            let mut valuation = Valuation::new();
            for atom in atoms.iter().rev() {
                valuation.insert(atom.clone(), filters[(code % radix) as usize].clone());
                code /= radix;
            }
            StableModel::new(frame.clone(), valuation, bimodules[b].clone())
        };
        let refute = |i: u64| -> Option<Result<(u64, usize), SemanticsError>> {
            let model = match build(i) {
                Ok(m) => m,
                Err(e) => return Some(Err(e)),
            };
            match forcing_set(&model, f) {
                Ok(s) => frame.all().difference(s).first().map(|w| Ok((i, w))),
                Err(e) => Some(Err(e)),
            }
        };
        if let Some(hit) = (0..total).into_par_iter().find_map_first(refute) {
            let (i, world) = hit?;
            let model = build(i)?;
            return Ok(SearchOutcome::Found(Box::new(Countermodel { model, world, lattice: generated.label() })));
        }
        models_checked += total;
    }
    Ok(SearchOutcome::Exhausted { models_checked })
}

/// Every valuation of `atoms` into the filters of `frame`, in search order.
pub fn all_valuations(frame: &Arc<crate::lattice::FinLattice>, atoms: &[&str]) -> Result<Vec<Valuation>, SemanticsError> {
    let filters: Vec<Filter> = enumerate_filters(frame.clone())?.filters();
    let mut out = vec![Valuation::new()];
    for atom in atoms {
        out = out
            .into_iter()
            .flat_map(|v| {
                filters.iter().map(move |f| {
                    let mut v = v.clone();
                    v.insert(atom.to_string(), f.clone());
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::iso::is_isomorphic;
    use crate::lattice::named::c3;

    fn found(s: &str) -> Countermodel {
        match countermodel_search(&parse(s).unwrap(), 4, 2).unwrap() {
            SearchOutcome::Found(c) => *c,
            SearchOutcome::Exhausted { .. } => panic!("{s} not refuted"),
        }
    }

    #[test]
    fn peirce_and_excluded_middle_fail_on_three_chain() {
        for s in ["((p->q)->p)->p", "p | ~p"] {
            let c = found(s);
            assert!(is_isomorphic(c.model.frame().poset(), c3().poset()), "{s}: {}", c.lattice);
            assert!(!forcing_set(&c.model, &parse(s).unwrap()).unwrap().contains(c.world));
        }
    }

    #[test]
    fn theorems_are_never_refuted() {
        for s in ["p -> p", "bot -> p"] {
            assert!(matches!(countermodel_search(&parse(s).unwrap(), 3, 2).unwrap(), SearchOutcome::Exhausted { .. }));
        }
    }

    #[test]
    fn search_is_deterministic() {
        let a = found("~p | ~~p");
        let b = found("~p | ~~p");
        assert_eq!((a.world, a.lattice, a.model.valuation().clone()), (b.world, b.lattice, b.model.valuation().clone()));
    }

    #[test]
    fn modal_search_refutes_non_theorems() {
        let c = found("box p -> p");
        assert!(c.model.bimodule().is_some());
        assert!(matches!(
            countermodel_search(&parse("p -> box dia p").unwrap(), 2, 2).unwrap(),
            SearchOutcome::Exhausted { .. }
        ));
    }

    #[test]
    fn caps_are_enforced() {
        let f = parse("p | q | r").unwrap();
        assert!(matches!(countermodel_search(&f, 4, 2), Err(SemanticsError::CapExceeded { .. })));
        assert!(matches!(countermodel_search(&f, 7, 3), Err(SemanticsError::CapExceeded { .. })));
    }

    #[test]
    fn curated_lists_parse() {
        assert_eq!(curated_theorems().len(), 12);
        assert!(modal_theorems().iter().all(|f| f.is_modal()));
    }
}
