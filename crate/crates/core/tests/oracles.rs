//! Independent reference computations checked against the library.

use std::collections::HashMap;

use lamplighter::group::{HElement, LampConfig};
use lamplighter::linalg::SparseIntMatrix;
use lamplighter::rep::{assemble_operator, tree_operator, QuotientRep};
use lamplighter::ring::{even_moments, markov_a};
use lamplighter::spectra::{
    convergence_report, counting_measure, exact_multiplicity, quotient_multiplicity, total_atom_mass,
    MultiplicityOptions, RepKind,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// Closed walks of length `len` in the Cayley graph of `H` for the generators
/// `t, at, t^-1, (at)^-1`, by plain enumeration of all `4^len` words. Lamps
/// are bits of a `u64` centred at 32, the lamplighter is at `pos`, and a
/// generator acts by right multiplication.
fn closed_walks(len: usize) -> u64 {
    fn go(lamps: u64, pos: i32, left: usize) -> u64 {
        if left == 0 {
            return u64::from(lamps == 0 && pos == 0);
        }
        let bit = |p: i32| 1u64 << (32 + p);
        go(lamps, pos + 1, left - 1)
            + go(lamps ^ bit(pos), pos + 1, left - 1)
            + go(lamps, pos - 1, left - 1)
            + go(lamps ^ bit(pos - 1), pos - 1, left - 1)
    }
    go(0, 0, len)
}

#[test]
fn moments_match_walk_enumeration() {
    let moments = even_moments(4).unwrap();
    for (k, m) in moments.iter().enumerate() {
        assert_eq!(m, &BigRational::from_integer(closed_walks(2 * k).into()), "k={k}");
    }
    assert_eq!(moments[1], BigRational::from_integer(4.into()));
    // odd-length closed walks cannot exist: every generator moves the lamplighter by one
    assert_eq!(closed_walks(5), 0);
}

#[test]
fn alpha_image_matches_exhaustive_enumeration() {
    // bit i is lamp i - 8; preimages range over lamps in [-7, 7]
    let to_config = |mask: u32| LampConfig::from_toggles((0..16).filter(|i| mask >> i & 1 == 1).map(|i| i - 8));
    let mut preimage = HashMap::new();
    for y in (0u32..1 << 16).filter(|y| y & 1 == 0) {
        let x = y ^ (y >> 1);
        preimage.insert(x, y);
    }
    let window = (0u32..1 << 16).filter(|x| x & 0b11 == 0 && x >> 15 == 0);
    let mut members = 0;
    for x in window {
        let h = HElement::new(to_config(x), 3);
        let expected = preimage.get(&x).copied();
        assert_eq!(h.in_image_alpha(), expected.is_some(), "{h}");
        match expected {
            Some(y) => {
                members += 1;
                let pre = h.alpha_preimage().unwrap();
                assert_eq!(pre, HElement::new(to_config(y), 3));
                assert_eq!(pre.alpha(), h);
            }
            None => assert!(h.alpha_preimage().is_err()),
        }
    }
    assert_eq!(members, 1 << 12);
}

/// Multiplicity of integer `lambda` for the weighted graph on a directed cycle
/// `v_0 -> v_1 -> ... -> v_0` of length `edges.len()`, where edge `m` (from
/// `v_m`) carries weight 2 when present and the operator is `W + W^T`.
///
/// Full cycles have spectrum `4 cos(2 pi j / c)`, paths on `L` vertices
/// `4 cos(j pi / (L + 1))`; the cases `c = 1, 2` are degenerate.
fn weighted_cycle_multiplicity(edges: &[bool], lambda: i64) -> usize {
    let c = edges.len();
    if edges.iter().all(|&e| e) {
        return match c {
            1 => usize::from(lambda == 4),
            2 => usize::from(lambda.abs() == 4),
            _ => {
                // cos(2 pi x) = lambda / 4 with x = j / c
                let turns: &[(usize, usize)] = match lambda {
                    4 => &[(0, 1)],
                    2 => &[(1, 6), (5, 6)],
                    0 => &[(1, 4), (3, 4)],
                    -2 => &[(1, 3), (2, 3)],
                    -4 => &[(1, 2)],
                    _ => &[],
                };
                (0..c).filter(|&j| turns.iter().any(|&(n, d)| j * d == n * c)).count()
            }
        };
    }
    let start = edges.iter().position(|&e| !e).unwrap() + 1;
    let mut paths = Vec::new();
    let mut run = 1;
    for step in 0..c {
        if edges[(start + step) % c] {
            run += 1;
        } else {
            paths.push(run);
            run = 1;
        }
    }
    // cos(pi x) = lambda / 4 with x = j / (L + 1), 1 <= j <= L
    let half_turns: &[(usize, usize)] = match lambda {
        2 => &[(1, 3)],
        0 => &[(1, 2)],
        -2 => &[(2, 3)],
        _ => &[],
    };
    paths.iter().map(|&l| (1..=l).filter(|&j| half_turns.iter().any(|&(n, d)| j * d == n * (l + 1))).count()).sum()
}

/// In the character basis `chi_w(x) = (-1)^(w.x)` of level `n`, `P_t` sends
/// `chi_w` to `chi_(Mw)` with `M` the inverse transpose of multiplication by
/// `1 + u` (a suffix XOR), and `P_at` sends it to `(-1)^|w| chi_(Mw)`.
fn tree_multiplicity_by_characters(n: u32, lambda: i64) -> usize {
    let suffix_xor = |w: u32| (0..n).fold(0, |acc, k| acc ^ (w >> k));
    let mut seen = vec![false; 1 << n];
    let mut total = 0;
    for start in 0..1u32 << n {
        if seen[start as usize] {
            continue;
        }
        let mut edges = Vec::new();
        let mut w = start;
        while !seen[w as usize] {
            seen[w as usize] = true;
            edges.push(w.count_ones() % 2 == 0);
            w = suffix_xor(w);
        }
        total += weighted_cycle_multiplicity(&edges, lambda);
    }
    total
}

/// For the quotient of order `n 2^n`, character `v` gives one `n`-cycle whose
/// edge `m -> m + 1` is present iff bit `-(m+1) mod n` of `v` is clear.
fn quotient_multiplicity_by_characters(n: u32, lambda: i64) -> usize {
    (0..1u32 << n)
        .map(|v| {
            let edges: Vec<bool> = (0..n as i64).map(|m| v >> (-(m + 1)).rem_euclid(n as i64) & 1 == 0).collect();
            weighted_cycle_multiplicity(&edges, lambda)
        })
        .sum()
}

#[test]
fn tree_multiplicities_match_the_character_decomposition() {
    for n in 1..=12 {
        let a = tree_operator(n).unwrap();
        for lambda in [-4, -2, 0, 2, 4] {
            let expected = tree_multiplicity_by_characters(n, lambda);
            let got = exact_multiplicity(&a, lambda).unwrap();
            assert_eq!(got.multiplicity, expected, "level {n}, lambda {lambda}");
            assert_eq!(got.ranks.spread(), 0);
        }
    }
}

#[test]
fn quotient_multiplicities_match_the_character_decomposition() {
    let opts = MultiplicityOptions::default();
    for n in 2..=11 {
        for lambda in [-4, -2, 0, 2, 4] {
            let expected = quotient_multiplicity_by_characters(n, lambda);
            assert_eq!(
                quotient_multiplicity(n, lambda, &opts).unwrap().multiplicity,
                expected,
                "n {n}, lambda {lambda}"
            );
        }
    }
}

#[test]
fn quotient_blocks_match_the_full_regular_representation() {
    let opts = MultiplicityOptions::default();
    for n in 2..=6 {
        let full = assemble_operator(&QuotientRep::new(n).unwrap(), &markov_a()).unwrap();
        for lambda in [-2, 0, 2, 4] {
            let direct = exact_multiplicity(&full, lambda).unwrap().multiplicity;
            assert_eq!(quotient_multiplicity(n, lambda, &opts).unwrap().multiplicity, direct, "n {n}, lambda {lambda}");
        }
    }
}

#[test]
fn smallest_quotient_by_dense_eigensolve() {
    let full = assemble_operator(&QuotientRep::new(2).unwrap(), &markov_a()).unwrap();
    assert_eq!(full.dim(), 8);
    let dense = counting_measure(&full).unwrap();
    let report = convergence_report(&[2], 0, RepKind::Quotient).unwrap();
    let fraction = &report.rows[0].result.fraction;
    assert_eq!(fraction * BigInt::from(8), BigRational::from_integer(dense.multiplicity_at(0).into()));
    assert_eq!(fraction, &BigRational::new(1.into(), 4.into()));
}

/// Level-`n` operator built from the automaton description alone: `a` flips
/// the first bit and `t` multiplies by `1 + u` modulo `u^n`.
fn tree_operator_from_automaton(n: u32) -> SparseIntMatrix {
    let mask = (1u32 << n) - 1;
    let t = |x: u32| (x ^ (x << 1)) & mask;
    let at = |x: u32| t(x) ^ 1;
    let size = 1usize << n;
    let mut triplets = Vec::new();
    for x in 0..size as u32 {
        // P_g has a 1 at (g x, x); P_{g^-1} is its transpose
        for y in [t(x), at(x)] {
            triplets.push((y as usize, x as usize, 1));
            triplets.push((x as usize, y as usize, 1));
        }
    }
    SparseIntMatrix::from_triplets(size, triplets).unwrap()
}

#[test]
fn tree_operator_matches_the_automaton() {
    for n in 1..=10 {
        assert_eq!(tree_operator(n).unwrap(), tree_operator_from_automaton(n), "level {n}");
    }
}

#[test]
fn atom_mass_matches_the_lambert_series() {
    // sum_{q >= 1} phi(q) x^q / (1 - x^q) = x / (1 - x)^2, so at x = 1/2 the
    // q >= 2 terms sum to 1; the discarded part is then 1 - total(Q).
    let mass = total_atom_mass(40).unwrap();
    assert!((mass.to_f64().unwrap() - 1.0).abs() < 1e-9);
    for q_max in 2..=40u32 {
        let remainder = BigRational::one() - total_atom_mass(q_max).unwrap();
        let bound = BigRational::new(BigInt::from(q_max + 2), BigInt::one() << (q_max as usize - 1));
        assert!(remainder > BigRational::from_integer(0.into()) && remainder <= bound, "Q = {q_max}");
    }
}
