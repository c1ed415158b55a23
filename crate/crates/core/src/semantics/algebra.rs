//! Algebraic readings of formulas: in the filter locale of a stable model,
//! and in a finite Heyting algebra.

use std::sync::Arc;

use crate::filters::{filter_heyting, filter_join, filter_meet, Filter};
use crate::logic::Formula;
use crate::modal::bimodule_from_adjunction;

use super::{HeytingAssignment, SemanticsError, StableModel, Valuation};

/// `⟦f⟧` computed with the lattice and Heyting operations of `Filt(W)` and
/// the filter modalities of the bimodule.
pub fn eval_filter(m: &StableModel, f: &Formula) -> Result<Filter, SemanticsError> {
    let frame = m.frame();
    Ok(match f {
        Formula::Atom(p) => m.atom_filter(p)?,
        Formula::Top => Filter::whole(frame.clone()),
        Formula::Bot => Filter::least(frame.clone()),
        Formula::And(l, r) => filter_meet(&eval_filter(m, l)?, &eval_filter(m, r)?)?,
        Formula::Or(l, r) => filter_join(&eval_filter(m, l)?, &eval_filter(m, r)?)?,
        Formula::Imp(l, r) => filter_heyting(&eval_filter(m, l)?, &eval_filter(m, r)?)?,
        Formula::Dia(g) => m.require_bimodule()?.diamond(&eval_filter(m, g)?)?,
        Formula::Box(g) => m.require_bimodule()?.boxed(&eval_filter(m, g)?)?,
    })
}

/// Value of `f` in the Heyting algebra of `asg`.
pub fn heyting_eval(asg: &HeytingAssignment, f: &Formula) -> Result<usize, SemanticsError> {
    let h = asg.algebra();
    Ok(match f {
        Formula::Atom(p) => *asg.values().get(p).ok_or_else(|| SemanticsError::UnboundAtom(p.clone()))?,
        Formula::Top => h.top(),
        Formula::Bot => h.bottom(),
        Formula::And(l, r) => h.meet(heyting_eval(asg, l)?, heyting_eval(asg, r)?),
        Formula::Or(l, r) => h.join(heyting_eval(asg, l)?, heyting_eval(asg, r)?),
        Formula::Imp(l, r) => h.implies(heyting_eval(asg, l)?, heyting_eval(asg, r)?),
        Formula::Dia(g) => {
            let a = asg.adjunction().ok_or(SemanticsError::MissingAdjunction)?;
            a.dia(heyting_eval(asg, g)?)
        }
        Formula::Box(g) => {
            let a = asg.adjunction().ok_or(SemanticsError::MissingAdjunction)?;
            a.boxed(heyting_eval(asg, g)?)
        }
    })
}

/// The stable model on the opposite of `H` with `V(p) = {y : y ⊑_H ⟦p⟧}`,
/// carrying the bimodule of the adjunction when there is one.
pub fn build_upset_model(asg: &HeytingAssignment) -> Result<StableModel, SemanticsError> {
    let h = asg.algebra();
    if let Some(w) = h.distributivity_witness() {
        return Err(SemanticsError::NotDistributive(w));
    }
    let bimodule = asg.adjunction().map(bimodule_from_adjunction).transpose()?;
    let frame = match &bimodule {
        Some(b) => b.frame().clone(),
        None => Arc::new(h.opposite()),
    };
    let valuation: Valuation =
        asg.values().iter().map(|(p, &x)| (p.clone(), Filter::principal(frame.clone(), x))).collect();
    StableModel::new(frame, valuation, bimodule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;
    use crate::lattice::FinLattice;
    use crate::logic::parse;
    use crate::modal::LatticeAdjunction;
    use crate::semantics::forcing_set;
    use std::collections::BTreeMap;

    fn asg(h: FinLattice, vals: &[(&str, usize)]) -> HeytingAssignment {
        let values: BTreeMap<String, usize> = vals.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        HeytingAssignment::new(Arc::new(h), values).unwrap()
    }

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn heyting_examples_on_c3_and_d4() {
        let c3a = asg(c3(), &[("p", 1), ("q", 0)]);
        assert_eq!(heyting_eval(&c3a, &f("((p->q)->p)->p")).unwrap(), 1);
        assert_eq!(heyting_eval(&c3a, &f("p | ~p")).unwrap(), 1);
        let d4a = asg(d4(), &[("p", 1)]);
        assert_eq!(heyting_eval(&d4a, &f("p | ~p")).unwrap(), 3);
    }

    #[test]
    fn upset_model_on_c3() {
        let m = build_upset_model(&asg(c3(), &[("p", 1), ("q", 0)])).unwrap();
        let peirce = forcing_set(&m, &f("((p->q)->p)->p")).unwrap();
        assert!(peirce.contains(0) && peirce.contains(1) && !peirce.contains(2));
        assert_eq!(eval_filter(&m, &f("p | ~p")).unwrap().members(), m.frame().up(1));
    }

    #[test]
    fn one_world_model_forces_everything() {
        let m = build_upset_model(&asg(chain(1), &[("p", 0), ("q", 0)])).unwrap();
        for s in ["bot", "p & ~p", "((p->q)->p)->p"] {
            assert!(forcing_set(&m, &f(s)).unwrap().contains(0));
        }
    }

    #[test]
    fn excluded_middle_on_d4_upset_model() {
        let m = build_upset_model(&asg(d4(), &[("p", 1)])).unwrap();
        assert_eq!(forcing_set(&m, &f("p | ~p")).unwrap(), m.frame().all());
    }

    #[test]
    fn filter_reading_basics() {
        let m = build_upset_model(&asg(d4(), &[("p", 1), ("q", 2)])).unwrap();
        assert_eq!(eval_filter(&m, &Formula::Top).unwrap(), Filter::whole(m.frame().clone()));
        assert_eq!(eval_filter(&m, &Formula::Bot).unwrap(), Filter::least(m.frame().clone()));
    }

    #[test]
    fn modal_upset_model_matches_algebra() {
        let h = Arc::new(d4());
        let dia: Vec<usize> = h.elements().map(|x| h.meet(x, 1)).collect();
        let a = LatticeAdjunction::from_dia(h.clone(), dia).unwrap();
        for p in h.elements() {
            let values = BTreeMap::from([("p".to_string(), p)]);
            let asg = HeytingAssignment::new(h.clone(), values).unwrap().with_adjunction(a.clone()).unwrap();
            let m = build_upset_model(&asg).unwrap();
            for s in ["dia p", "box p", "box dia p -> p", "dia (p | ~p)", "box ~p"] {
                let want = h.down(heyting_eval(&asg, &f(s)).unwrap());
                assert_eq!(eval_filter(&m, &f(s)).unwrap().members(), want, "{s} at p={p}");
                assert_eq!(forcing_set(&m, &f(s)).unwrap(), want, "{s} at p={p}");
            }
        }
    }
}
