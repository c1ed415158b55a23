//! The stable forcing relation, evaluated clause by clause at each world.

use std::fmt;

use crate::bitset::ElemSet;
use crate::logic::Formula;

use super::{SemanticsError, StableModel};

/// Which disjunction clause to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrClause {
    /// `∃v1, v2` with `v1 ∧ v2 ⊑ w`.
    #[default]
    FanIn,
    /// `∃v1, v2` with `v1 ∧ v2 = w`.
    Exact,
}

/// `{w : w ⊩ f}`. Each subformula is evaluated once at every world, so the
/// clauses that revisit worlds read the cached truth sets.
pub fn forcing_set(m: &StableModel, f: &Formula) -> Result<ElemSet, SemanticsError> {
    forcing_set_with(m, f, OrClause::FanIn)
}

pub fn forcing_set_with(m: &StableModel, f: &Formula, or: OrClause) -> Result<ElemSet, SemanticsError> {
    let frame = m.frame();
    let worlds = || frame.elements();
    Ok(match f {
        Formula::Atom(p) => m.atom_filter(p)?.members(),
        Formula::Top => frame.all(),
        Formula::Bot => ElemSet::singleton(frame.top()),
        Formula::And(l, r) => forcing_set_with(m, l, or)?.intersection(forcing_set_with(m, r, or)?),
        Formula::Or(l, r) => {
            let (a, b) = (forcing_set_with(m, l, or)?, forcing_set_with(m, r, or)?);
            worlds().filter(|&w| or_witness(m, a, b, w, or).is_some()).collect()
        }
        Formula::Imp(l, r) => {
            let (a, b) = (forcing_set_with(m, l, or)?, forcing_set_with(m, r, or)?);
            worlds().filter(|&w| frame.up(w).iter().all(|v| !a.contains(v) || b.contains(v))).collect()
        }
        Formula::Dia(sub) => {
            let rows = m.require_bimodule()?.rows();
            let s = forcing_set_with(m, sub, or)?;
            worlds().filter(|&w| s.iter().any(|v| rows[v].contains(w))).collect()
        }
        Formula::Box(sub) => {
            let rows = m.require_bimodule()?.rows();
            let s = forcing_set_with(m, sub, or)?;
            worlds().filter(|&w| rows[w].iter().all(|v| s.contains(v))).collect()
        }
    })
}

fn or_witness(m: &StableModel, a: ElemSet, b: ElemSet, w: usize, or: OrClause) -> Option<(usize, usize)> {
    let frame = m.frame();
    a.iter().find_map(|v1| {
        b.iter()
            .find(|&v2| {
                let meet = frame.meet(v1, v2);
                match or {
                    OrClause::FanIn => frame.leq(meet, w),
                    OrClause::Exact => meet == w,
                }
            })
            .map(|v2| (v1, v2))
    })
}

/// `w ⊩ f`.
pub fn force(m: &StableModel, w: usize, f: &Formula) -> Result<bool, SemanticsError> {
    m.check_world(w)?;
    Ok(forcing_set(m, f)?.contains(w))
}

/// One step of a forcing derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub formula: String,
    pub world: String,
    pub holds: bool,
    pub note: String,
    pub children: Vec<Trace>,
}

impl Trace {
    fn render(&self, depth: usize, out: &mut String) {
        use std::fmt::Write;
        let verdict = if self.holds { "true" } else { "false" };
        let _ = write!(out, "{}{} ⊩ {} : {verdict}", "  ".repeat(depth), self.world, self.formula);
        if !self.note.is_empty() {
            let _ = write!(out, " ({})", self.note);
        }
        out.push('\n');
        for c in &self.children {
            c.render(depth + 1, out);
        }
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.render(0, &mut out);
        f.write_str(out.trim_end())
    }
}

/// Forcing at `w` with the clause that decided it and the worlds it used.
pub fn explain(m: &StableModel, w: usize, f: &Formula) -> Result<Trace, SemanticsError> {
    m.check_world(w)?;
    let frame = m.frame();
    let name = |v: usize| frame.name(v).to_string();
    let sub = |g: &Formula, v: usize| explain(m, v, g);
    let holds = forcing_set(m, f)?.contains(w);
    let (note, children) = match f {
        Formula::Atom(p) => {
            let verb = if holds { "∈" } else { "∉" };
            (format!("{} {verb} V({p})", name(w)), Vec::new())
        }
        Formula::Top => (String::new(), Vec::new()),
        Formula::Bot => {
            let note = if holds { "supernova" } else { "not the supernova" };
            (note.to_string(), Vec::new())
        }
        Formula::And(l, r) => (String::new(), vec![sub(l, w)?, sub(r, w)?]),
        Formula::Or(l, r) => {
            let (a, b) = (forcing_set(m, l)?, forcing_set(m, r)?);
            match or_witness(m, a, b, w, OrClause::FanIn) {
                Some((v1, v2)) => (
                    format!("witnesses ({}, {}), {} ∧ {} = {} ⊑ {}", name(v1), name(v2), name(v1), name(v2),
                        name(frame.meet(v1, v2)), name(w)),
                    vec![sub(l, v1)?, sub(r, v2)?],
                ),
                None => ("no witnesses".to_string(), Vec::new()),
            }
        }
        Formula::Imp(l, r) => {
            let (a, b) = (forcing_set(m, l)?, forcing_set(m, r)?);
            match frame.up(w).iter().find(|&v| a.contains(v) && !b.contains(v)) {
                Some(v) => (format!("fails above at {}", name(v)), vec![sub(l, v)?, sub(r, v)?]),
                None => (format!("checked {} worlds above", frame.up(w).len()), Vec::new()),
            }
        }
        Formula::Dia(g) => {
            let rows = m.require_bimodule()?.rows();
            let s = forcing_set(m, g)?;
            match s.iter().find(|&v| rows[v].contains(w)) {
                Some(v) => (format!("via {} R {}", name(v), name(w)), vec![sub(g, v)?]),
                None => ("no predecessor forces the body".to_string(), Vec::new()),
            }
        }
        Formula::Box(g) => {
            let rows = m.require_bimodule()?.rows();
            let s = forcing_set(m, g)?;
            match rows[w].iter().find(|&v| !s.contains(v)) {
                Some(v) => (format!("fails at {} R {}", name(w), name(v)), vec![sub(g, v)?]),
                None => (format!("checked {} successors", rows[w].len()), Vec::new()),
            }
        }
    };
    Ok(Trace { formula: f.to_string(), world: name(w), holds, note, children })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::Filter;
    use crate::lattice::named::*;
    use crate::logic::parse;
    use crate::modal::StableBimodule;
    use crate::semantics::{UnboundAtoms, Valuation};
    use std::sync::Arc;

    fn d4_model() -> StableModel {
        let d = Arc::new(d4());
        let mut v = Valuation::new();
        v.insert("p".into(), Filter::principal(d.clone(), 1));
        v.insert("q".into(), Filter::principal(d.clone(), 2));
        StableModel::new(d, v, None).unwrap()
    }

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn disjunction_at_bottom_of_d4() {
        let m = d4_model();
        assert!(force(&m, 0, &f("p | q")).unwrap());
        assert!(!force(&m, 0, &f("p")).unwrap());
        assert!(!force(&m, 0, &f("q")).unwrap());
        let t = explain(&m, 0, &f("p | q")).unwrap();
        assert!(t.note.starts_with("witnesses (a, b)"), "{t}");
        assert_eq!(t.children[0].world, "a");
        assert_eq!(t.children[1].world, "b");
    }

    #[test]
    fn supernova_forces_everything() {
        let m = d4_model();
        for s in ["bot", "p & q", "~p", "(p -> q) -> p", "p | q -> bot"] {
            assert!(force(&m, 3, &f(s)).unwrap(), "{s}");
        }
    }

    #[test]
    fn disjunction_with_bot_is_neutral() {
        let m = d4_model();
        for w in 0..4 {
            for s in ["p", "q", "p -> q", "~q"] {
                let base = force(&m, w, &f(s)).unwrap();
                assert_eq!(force(&m, w, &f(&format!("({s}) | bot"))).unwrap(), base);
            }
        }
    }

    #[test]
    fn identity_bimodule_modalities_are_transparent() {
        let m = d4_model();
        let frame = m.frame().clone();
        let m = StableModel::new(frame.clone(), m.valuation().clone(), Some(StableBimodule::identity(frame))).unwrap();
        for w in 0..4 {
            for s in ["p", "q", "p | q", "p -> q"] {
                let base = force(&m, w, &f(s)).unwrap();
                assert_eq!(force(&m, w, &f(&format!("dia ({s})"))).unwrap(), base);
                assert_eq!(force(&m, w, &f(&format!("box ({s})"))).unwrap(), base);
            }
        }
    }

    #[test]
    fn errors() {
        let m = d4_model();
        assert_eq!(force(&m, 0, &f("r")), Err(SemanticsError::UnboundAtom("r".into())));
        assert_eq!(force(&m, 0, &f("dia p")), Err(SemanticsError::MissingBimodule));
        assert!(matches!(force(&m, 9, &f("p")), Err(SemanticsError::WorldOutOfRange { .. })));
        let lax = m.with_unbound(UnboundAtoms::Bottom);
        assert_eq!(forcing_set(&lax, &f("r")).unwrap(), ElemSet::singleton(3));
    }

    #[test]
    fn exact_and_fan_in_clauses_agree_here() {
        let m = d4_model();
        for s in ["p | q", "(p | q) | ~p", "~p | ~q"] {
            assert_eq!(
                forcing_set_with(&m, &f(s), OrClause::FanIn).unwrap(),
                forcing_set_with(&m, &f(s), OrClause::Exact).unwrap()
            );
        }
    }
}
