//! Small lattices that recur in examples and tests.

use super::{complete_lattice, FinLattice, FinPoset};

fn build(names: &[&str], pairs: &[(usize, usize)]) -> FinLattice {
    let poset = FinPoset::from_generators(names.len(), pairs)
        .expect("fixture order is antisymmetric")
        .with_names(names.iter().map(|s| s.to_string()).collect());
    complete_lattice(poset).expect("fixture is a lattice")
}

/// The `n`-element chain `0 < 1 < .. < n-1`, elements named `c0, c1, ..`.
pub fn chain(n: usize) -> FinLattice {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    build(&refs, &pairs)
}

/// The three-element chain with elements `0 < m < 1`.
pub fn c3() -> FinLattice {
    build(&["0", "m", "1"], &[(0, 1), (1, 2)])
}

/// The four-element Boolean lattice `0 < a, b < 1`.
pub fn d4() -> FinLattice {
    build(&["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

/// `D4` with a new top: `0 < a, b < c < 1`. Two atoms, one coatom.
pub fn p5() -> FinLattice {
    build(&["0", "a", "b", "c", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
}

/// The pentagon `0 < a < c < 1`, `0 < b < 1`. Not distributive.
pub fn n5() -> FinLattice {
    build(&["0", "a", "b", "c", "1"], &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
}

/// The diamond `0 < x, y, z < 1`. Not distributive.
pub fn m3() -> FinLattice {
    build(&["0", "x", "y", "z", "1"], &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
}
