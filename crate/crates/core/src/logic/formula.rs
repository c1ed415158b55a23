use std::collections::BTreeSet;
use std::fmt;

/// Propositional formula with the adjoint pair of modalities.
///
/// There is no negation node: `~p` is read as `p -> bot`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Dia(Box<Formula>),
    Box(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::imp(f, Formula::Bot)
    }

    pub fn dia(f: Formula) -> Formula {
        Formula::Dia(Box::new(f))
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    /// Atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            Formula::Dia(f) | Formula::Box(f) => f.collect_atoms(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => 1 + l.depth().max(r.depth()),
            Formula::Dia(f) | Formula::Box(f) => 1 + f.depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => 1 + l.size() + r.size(),
            Formula::Dia(f) | Formula::Box(f) => 1 + f.size(),
        }
    }

    pub fn is_modal(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => l.is_modal() || r.is_modal(),
            Formula::Dia(_) | Formula::Box(_) => true,
        }
    }

    /// Built from atoms, `top`, `&` and `->` only.
    pub fn in_and_imp_fragment(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top => true,
            Formula::And(l, r) | Formula::Imp(l, r) => l.in_and_imp_fragment() && r.in_and_imp_fragment(),
            _ => false,
        }
    }
}

/// Binding strength; higher binds tighter.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Dia(_) | Formula::Box(_) => 4,
        Formula::Atom(_) | Formula::Top | Formula::Bot => 5,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, sub: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({sub})")
    } else {
        write!(f, "{sub}")
    }
}

/// Minimal-parenthesis rendering in the ASCII syntax accepted by the parser.
/// `&` and `|` associate to the left, `->` to the right.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p) => write!(f, "{p}"),
            Formula::Top => write!(f, "top"),
            Formula::Bot => write!(f, "bot"),
            Formula::And(l, r) | Formula::Or(l, r) => {
                let (op, p) = match self {
                    Formula::And(..) => ("&", 3),
                    _ => ("|", 2),
                };
                write_operand(f, l, precedence(l) < p)?;
                write!(f, " {op} ")?;
                write_operand(f, r, precedence(r) <= p)
            }
            Formula::Imp(l, r) => {
                write_operand(f, l, precedence(l) <= 1)?;
                write!(f, " -> ")?;
                write_operand(f, r, false)
            }
            Formula::Dia(sub) | Formula::Box(sub) => {
                let kw = if matches!(self, Formula::Dia(_)) { "dia" } else { "box" };
                write!(f, "{kw} ")?;
                write_operand(f, sub, precedence(sub) < 4)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn printer_examples() {
        assert_eq!(Formula::imp(Formula::and(p(), q()), Formula::atom("r")).to_string(), "p & q -> r");
        assert_eq!(Formula::or(p(), Formula::Bot).to_string(), "p | bot");
        assert_eq!(Formula::dia(Formula::imp(p(), q())).to_string(), "dia (p -> q)");
        assert_eq!(Formula::imp(Formula::imp(p(), q()), p()).to_string(), "(p -> q) -> p");
        assert_eq!(Formula::and(p(), Formula::and(q(), p())).to_string(), "p & (q & p)");
        assert_eq!(Formula::boxed(Formula::dia(p())).to_string(), "box dia p");
    }

    #[test]
    fn atoms_examples() {
        assert_eq!(Formula::imp(p(), q()).atoms().into_iter().collect::<Vec<_>>(), vec!["p", "q"]);
        assert!(Formula::Top.atoms().is_empty());
        assert_eq!(Formula::and(p(), p()).atoms().len(), 1);
    }

    #[test]
    fn fragment_membership() {
        assert!(Formula::imp(Formula::and(p(), Formula::Top), q()).in_and_imp_fragment());
        assert!(!Formula::not(p()).in_and_imp_fragment());
        assert!(!Formula::or(p(), q()).in_and_imp_fragment());
    }
}
