//! Ordinary intuitionistic Kripke forcing, for comparison with the stable
//! clauses.

use crate::bitset::ElemSet;
use crate::logic::Formula;

use super::{KripkeModel, SemanticsError};

/// `{w : w ⊩ f}` under the Kripke clauses: `bot` holds nowhere and `|` is
/// pointwise.
pub fn kripke_set(k: &KripkeModel, f: &Formula) -> Result<ElemSet, SemanticsError> {
    let frame = k.frame();
    let worlds = || frame.all().iter();
    let relation = || k.relation().ok_or(SemanticsError::MissingRelation);
    Ok(match f {
        Formula::Atom(p) => *k.valuation().get(p).ok_or_else(|| SemanticsError::UnboundAtom(p.clone()))?,
        Formula::Top => frame.all(),
        Formula::Bot => ElemSet::EMPTY,
        Formula::And(l, r) => kripke_set(k, l)?.intersection(kripke_set(k, r)?),
        Formula::Or(l, r) => kripke_set(k, l)?.union(kripke_set(k, r)?),
        Formula::Imp(l, r) => {
            let (a, b) = (kripke_set(k, l)?, kripke_set(k, r)?);
            worlds().filter(|&w| frame.up(w).iter().all(|v| !a.contains(v) || b.contains(v))).collect()
        }
        Formula::Dia(g) => {
            let rows = relation()?;
            let s = kripke_set(k, g)?;
            worlds().filter(|&w| s.iter().any(|v| rows[v].contains(w))).collect()
        }
        Formula::Box(g) => {
            let rows = relation()?;
            let s = kripke_set(k, g)?;
            worlds().filter(|&w| rows[w].is_subset(s)).collect()
        }
    })
}

pub fn kripke_force(k: &KripkeModel, w: usize, f: &Formula) -> Result<bool, SemanticsError> {
    if w >= k.frame().len() {
        return Err(SemanticsError::WorldOutOfRange { world: w, size: k.frame().len() });
    }
    Ok(kripke_set(k, f)?.contains(w))
}
