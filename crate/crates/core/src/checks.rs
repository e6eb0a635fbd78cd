//! Randomized property suites over the group, representation and ring layers.
//!
//! Every property draws from its own ChaCha stream derived from the seed, so a
//! suite is reproducible and properties do not perturb each other.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::random::{random_balanced_word, random_commutator_element, random_g, random_h};
use crate::group::{
    abelianization_of_presentation, check_presentation, g_eval_word, GElement, HElement, Presentation,
    DEFAULT_RELATION_BOUND,
};
use crate::rep::{assemble_operator, tree_action, tree_operator, LevelRep, QuotientRep, Representation};
use crate::ring::{even_moments, markov_a, norm_squared, projector_sequence, RingElement};

/// The endomorphism of `H` the checks compare against `G` arithmetic.
pub type AlphaMap = fn(&HElement) -> HElement;

/// A deliberately wrong endomorphism, for negative controls: `x -> alpha(x) a`.
#[doc(hidden)]
pub fn corrupted_alpha(h: &HElement) -> HElement {
    h.alpha().mul(&HElement::a())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Rep,
    Ring,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "rep" => Ok(Suite::Rep),
            "ring" => Ok(Suite::Ring),
            "all" => Ok(Suite::All),
            other => Err(crate::error::param(format!("unknown suite '{other}', expected core, rep, ring or all"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    /// Sample count for the randomized group properties; ring and tree
    /// properties use a tenth of it.
    pub samples: usize,
    pub alpha: AlphaMap,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 0, samples: 10_000, alpha: HElement::alpha }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub name: String,
    pub cases: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS [{}] {} ({} cases)", self.suite, self.name, self.cases),
            Some(why) => write!(f, "FAIL [{}] {}: {}", self.suite, self.name, why),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckSummary {
    pub results: Vec<PropertyResult>,
}

impl CheckSummary {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

pub fn run_suite(suite: Suite, cfg: &CheckConfig) -> CheckSummary {
    let mut results = Vec::new();
    if matches!(suite, Suite::Core | Suite::All) {
        results.extend(core_suite(cfg));
    }
    if matches!(suite, Suite::Rep | Suite::All) {
        results.extend(rep_suite(cfg));
    }
    if matches!(suite, Suite::Ring | Suite::All) {
        results.extend(ring_suite(cfg));
    }
    CheckSummary { results }
}

/// Runs `case` on `cases` draws and stops at the first failure.
fn sampled(
    suite: &'static str,
    name: &str,
    stream: u64,
    cfg: &CheckConfig,
    cases: usize,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Option<String>,
) -> PropertyResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let failure = (0..cases).find_map(|_| case(&mut rng));
    PropertyResult { suite, name: name.to_string(), cases, failure }
}

fn single(suite: &'static str, name: &str, failure: Option<String>) -> PropertyResult {
    PropertyResult { suite, name: name.to_string(), cases: 1, failure }
}

fn core_suite(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let alpha = cfg.alpha;
    let n = cfg.samples;
    let presentation = check_presentation(DEFAULT_RELATION_BOUND);
    let first_failure = |prefix: &str| {
        presentation.failures().find(|c| c.name.starts_with(prefix)).map(|c| format!("{} is not the identity", c.name))
    };
    let count = |prefix: &str| presentation.checks.iter().filter(|c| c.name.starts_with(prefix)).count();
    let mut out = vec![
        PropertyResult {
            suite: "core",
            name: "relators of G".into(),
            cases: count("G:"),
            failure: first_failure("G:"),
        },
        PropertyResult {
            suite: "core",
            name: format!("relation family of H for k, n <= {DEFAULT_RELATION_BOUND}"),
            cases: count("H:"),
            failure: first_failure("H:"),
        },
    ];

    out.push(sampled("core", "alpha is conjugation by s", 1, cfg, n, |rng| {
        let h = random_h(rng, 6, 4);
        let s = GElement::s();
        let lhs = s.inv().mul(&GElement::from_h(h.clone())).mul(&s);
        (lhs != GElement::from_h(alpha(&h))).then(|| format!("s^-1 ({h}) s = {lhs}, alpha gives {}", alpha(&h)))
    }));
    out.push(sampled("core", "alpha is a homomorphism", 2, cfg, n, |rng| {
        let (x, y) = (random_h(rng, 6, 4), random_h(rng, 6, 4));
        (alpha(&x.mul(&y)) != alpha(&x).mul(&alpha(&y))).then(|| format!("fails on x = {x}, y = {y}"))
    }));
    out.push(sampled("core", "alpha is injective onto its image", 3, cfg, n, |rng| {
        let (x, y) = (random_h(rng, 6, 4), random_h(rng, 6, 4));
        let (ax, ay) = (alpha(&x), alpha(&y));
        if x != y && ax == ay {
            return Some(format!("alpha({x}) = alpha({y})"));
        }
        if !ax.in_image_alpha() {
            return Some(format!("alpha({x}) = {ax} has odd support"));
        }
        match ax.alpha_preimage() {
            Ok(p) if p == x => None,
            _ => Some(format!("preimage of alpha({x}) is not {x}")),
        }
    }));
    out.push(sampled("core", "Britton reduction is confluent", 4, cfg, n, |rng| {
        let g = random_g(rng, 5, 3, 4);
        let (i, h, j) = g.parts();
        let pad = rng.gen_range(1..=3);
        let mut padded = GElement::new_unreduced(i + pad, h.alpha_pow(pad), j + pad);
        padded.reduce();
        if padded != g {
            return Some(format!("padding {g} by {pad} reduces to {padded}"));
        }
        let (x, y, z) = (random_g(rng, 4, 3, 3), random_g(rng, 4, 3, 3), random_g(rng, 4, 3, 3));
        let (left, right) = (x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        if left != right || !left.is_reduced() {
            return Some(format!("(xy)z = {left} but x(yz) = {right} for x = {x}, y = {y}, z = {z}"));
        }
        (!x.mul(&x.inv()).is_identity()).then(|| format!("{x} times its inverse is not trivial"))
    }));
    out.push(sampled("core", "commutator subgroup elements have order at most 2", 5, cfg, n, |rng| {
        let g = if rng.gen_bool(0.5) {
            random_commutator_element(rng, 6, 4)
        } else {
            g_eval_word(&random_balanced_word(rng, 16))
        };
        if !g.abelian_image().is_trivial() {
            return Some(format!("{g} has nontrivial abelian image"));
        }
        (!g.mul(&g).is_identity()).then(|| format!("{g} squared is {}", g.mul(&g)))
    }));
    out.push(sampled("core", "commutator subgroup elements commute", 6, cfg, n / 10, |rng| {
        let x = random_commutator_element(rng, 6, 4);
        let y = g_eval_word(&random_balanced_word(rng, 16));
        (x.mul(&y) != y.mul(&x)).then(|| format!("{x} and {y} do not commute"))
    }));
    let ab = abelianization_of_presentation();
    out.push(single(
        "core",
        "abelianization is free of rank 2",
        (ab.free_rank != 2 || !ab.torsion.is_empty())
            .then(|| format!("free rank {}, torsion {:?}", ab.free_rank, ab.torsion)),
    ));
    out
}

/// Largest tree level and relator bound for the level relation checks.
pub const TREE_RELATION_LEVEL: u32 = 10;
pub const TREE_RELATION_BOUND: i64 = 6;

fn rep_suite(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let n = cfg.samples / 10;
    let relators = Presentation::lamplighter(TREE_RELATION_BOUND).relators;
    let mut failure = None;
    let mut cases = 0;
    'levels: for level in 1..=TREE_RELATION_LEVEL {
        let rep = LevelRep::new(level).expect("level within range");
        for r in &relators {
            cases += 1;
            for state in 0..1u32 << level {
                if rep.act_by_tables(&r.word, state) != Ok(state) {
                    failure = Some(format!("{} moves {state} at level {level}", r.name));
                    break 'levels;
                }
            }
        }
    }
    let mut out = vec![PropertyResult {
        suite: "rep",
        name: format!("relation family of H for k, n <= {TREE_RELATION_BOUND} at tree levels <= {TREE_RELATION_LEVEL}"),
        cases,
        failure,
    }];

    out.push(sampled("rep", "tree action is a left action", 11, cfg, n, |rng| {
        let level = rng.gen_range(1..=12);
        let (x, y) = (random_h(rng, 8, 5), random_h(rng, 8, 5));
        let state = rng.gen_range(0..1u32 << level);
        let lhs = tree_action(&x.mul(&y), state, level).ok()?;
        let rhs = tree_action(&x, tree_action(&y, state, level).ok()?, level).ok()?;
        (lhs != rhs).then(|| format!("(xy).v != x.(y.v) for x = {x}, y = {y}, v = {state}, level {level}"))
    }));
    out.push(sampled("rep", "truncation intertwines consecutive levels", 12, cfg, n, |rng| {
        let level = rng.gen_range(1..=11);
        let x = random_h(rng, 8, 5);
        let state = rng.gen_range(0..1u32 << (level + 1));
        let deep = tree_action(&x, state, level + 1).ok()?;
        let shallow = tree_action(&x, state & ((1 << level) - 1), level).ok()?;
        (deep & ((1 << level) - 1) != shallow).then(|| format!("{x} on {state} at level {}", level + 1))
    }));
    out.push(sampled("rep", "quotient map is a homomorphism", 13, cfg, n, |rng| {
        let q = QuotientRep::new(rng.gen_range(2..=8)).expect("length within range");
        let (x, y) = (random_h(rng, 10, 12), random_h(rng, 10, 12));
        let lhs = q.quotient_map(&x.mul(&y));
        let rhs = q.mul(q.quotient_map(&x), q.quotient_map(&y));
        (lhs != rhs).then(|| format!("fails on x = {x}, y = {y} mod {}", q.cycle_length()))
    }));

    let mut failure = None;
    let mut cases = 0;
    let tree: Vec<Box<dyn Representation>> = (1..=8).map(|l| Box::new(LevelRep::new(l).unwrap()) as Box<_>).collect();
    let quotients: Vec<Box<dyn Representation>> =
        (2..=5).map(|l| Box::new(QuotientRep::new(l).unwrap()) as Box<_>).collect();
    for rep in tree.iter().chain(&quotients) {
        cases += 1;
        match assemble_operator(rep.as_ref(), &markov_a()) {
            Ok(m) if m.is_symmetric() && m.row_sums().iter().all(|&s| s == 4) => {}
            Ok(_) => {
                failure = Some(format!("operator at label {} is not symmetric with row sums 4", rep.label()));
                break;
            }
            Err(e) => {
                failure = Some(e.to_string());
                break;
            }
        }
    }
    out.push(PropertyResult { suite: "rep", name: "A_n is symmetric with row sums 4".into(), cases, failure });
    out.push(single(
        "rep",
        "A_1 is the all-twos matrix",
        match tree_operator(1) {
            Ok(m) if m.entries() == [(0, 0, 2), (0, 1, 2), (1, 0, 2), (1, 1, 2)] => None,
            Ok(m) => Some(format!("A_1 = {:?}", m.entries())),
            Err(e) => Some(e.to_string()),
        },
    ));
    out
}

fn random_ring_element(rng: &mut ChaCha8Rng) -> RingElement {
    let terms = rng.gen_range(0..=4);
    RingElement::from_terms((0..terms).map(|_| {
        let c = BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=4)));
        (random_h(rng, 2, 2), c)
    }))
}

fn ring_suite(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let n = cfg.samples / 10;
    let mut out = Vec::new();
    let a = markov_a();
    out.push(single(
        "ring",
        "A is self-adjoint with tau(A^0) = 1 and tau(A^2) = 4",
        match even_moments(1) {
            Ok(m) if a.involution() == a && m[0].is_one() && m[1] == BigRational::from_integer(4.into()) => None,
            Ok(m) => Some(format!("moments {m:?}")),
            Err(e) => Some(e.to_string()),
        },
    ));
    out.push(single(
        "ring",
        "s_1 = 3/4",
        match projector_sequence(1) {
            Ok(s) if s[0] == BigRational::new(3.into(), 4.into()) => None,
            Ok(s) => Some(format!("s_1 = {}", s[0])),
            Err(e) => Some(e.to_string()),
        },
    ));
    out.push(sampled("ring", "convolution is associative", 21, cfg, n, |rng| {
        let (x, y, z) = (random_ring_element(rng), random_ring_element(rng), random_ring_element(rng));
        (x.mul(&y).mul(&z) != x.mul(&y.mul(&z))).then(|| "(xy)z != x(yz)".to_string())
    }));
    out.push(sampled("ring", "involution reverses products", 22, cfg, n, |rng| {
        let (x, y) = (random_ring_element(rng), random_ring_element(rng));
        (x.mul(&y).involution() != y.involution().mul(&x.involution())).then(|| "(xy)* != y* x*".to_string())
    }));
    out.push(sampled("ring", "trace is tracial and positive", 23, cfg, n, |rng| {
        let (x, y) = (random_ring_element(rng), random_ring_element(rng));
        if x.mul(&y).trace() != y.mul(&x).trace() {
            return Some("tau(xy) != tau(yx)".to_string());
        }
        let xx = x.mul(&x.involution()).trace();
        (xx != norm_squared(&x) || xx < BigRational::zero()).then(|| format!("tau(x x*) = {xx}"))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(alpha: AlphaMap) -> CheckConfig {
        CheckConfig { seed: 7, samples: 200, alpha }
    }

    #[test]
    fn suites_pass() {
        let summary = run_suite(Suite::All, &small(HElement::alpha));
        assert!(summary.all_passed(), "{:?}", summary.failures().collect::<Vec<_>>());
        assert!(summary.results.iter().any(|r| r.suite == "rep"));
        assert!(summary.results.iter().any(|r| r.suite == "ring"));
    }

    #[test]
    fn corrupted_alpha_is_caught() {
        let summary = run_suite(Suite::Core, &small(corrupted_alpha));
        let failed: Vec<_> = summary.failures().map(|r| r.name.as_str()).collect();
        assert!(failed.contains(&"alpha is conjugation by s"), "{failed:?}");
        assert!(failed.contains(&"alpha is a homomorphism"), "{failed:?}");
    }

    #[test]
    fn deterministic() {
        let a = run_suite(Suite::Core, &small(corrupted_alpha));
        let b = run_suite(Suite::Core, &small(corrupted_alpha));
        assert_eq!(a, b);
    }
}
