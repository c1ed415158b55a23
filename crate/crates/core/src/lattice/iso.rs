//! Isomorphism search and canonical forms for small orders.

use itertools::Itertools;

use super::FinPoset;

/// Largest poset for which [`canonical_form`] will try every permutation.
pub const CANONICAL_CAP: usize = 8;

/// Bit-encoding of the order after relabelling by `perm`.
fn encode(p: &FinPoset, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in 0..n {
            if p.leq(perm[i], perm[j]) {
                code |= 1 << (i * n + j);
            }
        }
    }
    code
}

/// The lexicographically least encoding over all relabellings, together with
/// a relabelling that achieves it.
///
/// Panics if the poset is larger than [`CANONICAL_CAP`].
pub fn canonical_form(p: &FinPoset) -> (u64, Vec<usize>) {
    let n = p.len();
    assert!(n <= CANONICAL_CAP, "canonical form is capped at {CANONICAL_CAP} elements");
    let mut best: Option<(u64, Vec<usize>)> = None;
    for perm in (0..n).permutations(n) {
        let code = encode(p, &perm);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, perm));
        }
    }
    best.unwrap_or((0, Vec::new()))
}

/// An order isomorphism `a → b` as an image table, if one exists.
pub fn find_isomorphism(a: &FinPoset, b: &FinPoset) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let sig = |p: &FinPoset, i: usize| (p.up(i).len(), p.down(i).len());
    let mut sa: Vec<_> = (0..n).map(|i| sig(a, i)).collect();
    let mut sb: Vec<_> = (0..n).map(|i| sig(b, i)).collect();
    let sig_a = sa.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &sig_a, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn extend(
    a: &FinPoset,
    b: &FinPoset,
    sig_a: &[(usize, usize)],
    i: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.len();
    if i == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] || (b.up(cand).len(), b.down(cand).len()) != sig_a[i] {
            continue;
        }
        let consistent = (0..i).all(|j| {
            a.leq(i, j) == b.leq(cand, image[j]) && a.leq(j, i) == b.leq(image[j], cand)
        });
        if !consistent {
            continue;
        }
        image[i] = cand;
        used[cand] = true;
        if extend(a, b, sig_a, i + 1, image, used) {
            return true;
        }
        used[cand] = false;
    }
    image[i] = usize::MAX;
    false
}

pub fn is_isomorphic(a: &FinPoset, b: &FinPoset) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;

    #[test]
    fn relabelled_posets_share_a_canonical_form() {
        let p = FinPoset::from_generators(3, &[(0, 1), (0, 2)]).unwrap();
        let q = p.permuted(&[1, 2, 0]);
        assert_eq!(canonical_form(&p).0, canonical_form(&q).0);
        let chain = FinPoset::from_generators(3, &[(0, 1), (1, 2)]).unwrap();
        assert_ne!(canonical_form(&p).0, canonical_form(&chain).0);
    }

    #[test]
    fn canonical_permutation_reproduces_code() {
        let p = FinPoset::from_generators(4, &[(2, 0), (3, 1), (2, 1)]).unwrap();
        let (code, perm) = canonical_form(&p);
        assert_eq!(canonical_form(&p.permuted(&perm)).0, code);
        assert_eq!(encode(&p.permuted(&perm), &[0, 1, 2, 3]), code);
    }

    #[test]
    fn isomorphism_found_and_valid() {
        let p5 = p5();
        let q = p5.permuted(&[4, 2, 0, 3, 1]);
        let iso = find_isomorphism(p5.poset(), q.poset()).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(p5.leq(i, j), q.leq(iso[i], iso[j]));
            }
        }
        assert!(!is_isomorphic(p5.poset(), p5.opposite().poset()));
        assert!(is_isomorphic(d4().poset(), d4().opposite().poset()));
    }
}
