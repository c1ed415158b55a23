use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Formula;

/// Which connectives random formulas may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectives {
    /// Atoms, `top`, `&` and `->`.
    AndImp,
    /// Every propositional connective.
    Propositional,
    /// Propositional connectives plus `dia` and `box`.
    Modal,
}

/// Shape of randomly generated formulas.
#[derive(Clone, Debug)]
pub struct RandomFormulas {
    pub max_depth: usize,
    pub atoms: Vec<String>,
    pub connectives: Connectives,
}

impl Default for RandomFormulas {
    fn default() -> Self {
        RandomFormulas { max_depth: 4, atoms: vec!["p".into(), "q".into()], connectives: Connectives::Modal }
    }
}

impl RandomFormulas {
    pub fn generate(&self, rng: &mut impl Rng) -> Formula {
        self.gen_at(rng, self.max_depth)
    }

    /// `count` formulas from a fixed seed.
    pub fn seeded(&self, seed: u64, count: usize) -> Vec<Formula> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.generate(&mut rng)).collect()
    }

    fn leaf(&self, rng: &mut impl Rng) -> Formula {
        let constants = if self.connectives == Connectives::AndImp { 1 } else { 2 };
        let k = rng.gen_range(0..self.atoms.len() + constants);
        match k.checked_sub(self.atoms.len()) {
            None => Formula::Atom(self.atoms[k].clone()),
            Some(0) => Formula::Top,
            Some(_) => Formula::Bot,
        }
    }

    fn gen_at(&self, rng: &mut impl Rng, depth: usize) -> Formula {
        if depth == 0 || rng.gen_ratio(1, 4) {
            return self.leaf(rng);
        }
        let ops: &[u8] = match self.connectives {
            Connectives::AndImp => &[0, 2],
            Connectives::Propositional => &[0, 1, 2],
            Connectives::Modal => &[0, 1, 2, 3, 4],
        };
        match ops[rng.gen_range(0..ops.len())] {
            0 => Formula::and(self.gen_at(rng, depth - 1), self.gen_at(rng, depth - 1)),
            1 => Formula::or(self.gen_at(rng, depth - 1), self.gen_at(rng, depth - 1)),
            2 => Formula::imp(self.gen_at(rng, depth - 1), self.gen_at(rng, depth - 1)),
            3 => Formula::dia(self.gen_at(rng, depth - 1)),
            _ => Formula::boxed(self.gen_at(rng, depth - 1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible_and_bounded() {
        let g = RandomFormulas::default();
        let a = g.seeded(7, 200);
        assert_eq!(a, g.seeded(7, 200));
        assert!(a.iter().all(|f| f.depth() <= 4));
        assert!(a.iter().any(|f| f.is_modal()));
        let plain = RandomFormulas { connectives: Connectives::Propositional, ..g.clone() };
        assert!(plain.seeded(7, 200).iter().all(|f| !f.is_modal()));
        let fragment = RandomFormulas { connectives: Connectives::AndImp, ..g };
        assert!(fragment.seeded(7, 200).iter().all(|f| f.in_and_imp_fragment()));
    }
}
