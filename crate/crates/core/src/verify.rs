//! Verification sweeps shared by the `verify` subcommand and the test suites.
//!
//! Each sweep expands into independent cases that run in parallel; results
//! are collected in case order so reports are byte-identical across runs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::brion::{brion_oracle, lattice_box, BrionCones};
use crate::demazure::{
    brion_demazure_product, brion_rank2, character_demazure, demazure, demazure_along_word,
    demazure_w, modified_demazure,
};
use crate::error::{Error, Result};
use crate::expansion::{character_weyl_division, polytope_expansion};
use crate::formal_sum::{apply_weyl, FormalSum};
use crate::root_system::{AlgebraId, RootSystem, Weight};
use crate::weyl::{enumerate_group, verify_weyl_sum_lemma, weyl_sum_product, WeylElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sweep {
    /// `D_{1,1} ... D_{1,n}(e^λ)` against the dominance oracle.
    Theorem,
    /// `w_{1,1} ... w_{1,n}` against the sum over the Weyl group.
    Lemma,
    /// Explicit C2/G2 operators against the dominance oracle.
    Rank2,
    /// Idempotence, braid relations and reduced-word independence.
    Braid,
    /// Signed cone counts against the dominance oracle, with margin.
    Cones,
    /// Demazure characters against Weyl-formula division.
    Characters,
    /// Polytope expansion reconstruction and coefficient checks.
    Expansion,
}

impl Sweep {
    pub const ALL: [Sweep; 7] = [
        Sweep::Theorem,
        Sweep::Lemma,
        Sweep::Rank2,
        Sweep::Braid,
        Sweep::Cones,
        Sweep::Characters,
        Sweep::Expansion,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Sweep::Theorem => "theorem",
            Sweep::Lemma => "lemma",
            Sweep::Rank2 => "rank2",
            Sweep::Braid => "braid",
            Sweep::Cones => "cones",
            Sweep::Characters => "characters",
            Sweep::Expansion => "expansion",
        }
    }

    /// Whether the sweep is defined for `algebra`.
    pub fn supports(&self, algebra: AlgebraId) -> bool {
        match self {
            Sweep::Theorem | Sweep::Lemma => algebra.is_type_a(),
            Sweep::Rank2 => !algebra.is_type_a(),
            _ => true,
        }
    }

    /// Algebras swept when none is named: `A_1..A_{max_rank}` for the type-A
    /// sweeps, `C2` and `G2` for the rank-2 sweep, and ranks up to three plus
    /// `C2`, `G2` for the others.
    pub fn default_algebras(&self, max_rank: usize) -> Vec<AlgebraId> {
        let a = |top: usize| (1..=top).map(AlgebraId::a).collect::<Vec<_>>();
        match self {
            Sweep::Theorem | Sweep::Lemma => a(max_rank),
            Sweep::Rank2 => vec![AlgebraId::C2, AlgebraId::G2],
            _ => {
                let mut v = a(max_rank.min(3));
                v.extend([AlgebraId::C2, AlgebraId::G2]);
                v
            }
        }
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sweep::ALL
            .into_iter()
            .find(|sw| sw.name() == s)
            .ok_or_else(|| Error::Syntax {
                offset: 0,
                message: format!("unknown sweep {s:?}"),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub algebra: AlgebraId,
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub sweep: Sweep,
    pub cases: Vec<CaseResult>,
}

impl SweepReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {} {} {} {}\n",
                self.sweep, c.algebra, c.case, c.detail
            ));
        }
        out.push_str(&format!(
            "summary: {} {}/{} passed\n",
            self.sweep,
            self.passed(),
            self.cases.len()
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cases: Vec<_> = self
            .cases
            .iter()
            .map(|c| {
                json!({
                    "algebra": c.algebra.to_string(),
                    "case": c.case,
                    "status": if c.passed { "PASS" } else { "FAIL" },
                    "detail": c.detail,
                })
            })
            .collect();
        json!({
            "sweep": self.sweep.name(),
            "cases": cases,
            "passed": self.passed(),
            "failed": self.failed(),
        })
    }
}

/// Dominant weights of the given rank with level `Σ λ_i ≤ max_level`, in
/// lexicographic order.
pub fn dominant_weights_up_to_level(rank: usize, max_level: i64) -> Vec<Weight> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                let used: i64 = prefix.iter().sum();
                (0..=(max_level - used).max(-1)).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    let mut weights: Vec<Weight> = out.into_iter().map(Weight::new).collect();
    weights.sort();
    weights
}

fn describe_difference(got: &FormalSum, expected: &FormalSum) -> String {
    let diff = got.sub(expected).expect("same rank");
    let first: Vec<String> = diff
        .terms()
        .take(3)
        .map(|(mu, c)| format!("{mu}:{c:+}"))
        .collect();
    format!(
        "differs at {} weights, e.g. {}",
        diff.len(),
        first.join(" ")
    )
}

fn compare(got: Result<FormalSum>, expected: Result<FormalSum>) -> (bool, String) {
    match (got, expected) {
        (Ok(g), Ok(e)) if g == e => (true, format!("terms={}", g.len())),
        (Ok(g), Ok(e)) => (false, describe_difference(&g, &e)),
        (Err(err), _) | (_, Err(err)) => (false, format!("error: {err}")),
    }
}

/// Runs a sweep over the given algebras. `max_level` bounds the dominant
/// weights; `seed` drives the randomized property checks.
pub fn run_sweep(
    sweep: Sweep,
    algebras: &[AlgebraId],
    max_level: i64,
    seed: u64,
) -> Result<SweepReport> {
    for &alg in algebras {
        if !sweep.supports(alg) {
            return Err(Error::UnsupportedAlgebra {
                operation: sweep.name(),
                algebra: alg,
            });
        }
    }
    let cases = match sweep {
        Sweep::Lemma => algebras.par_iter().map(|&alg| lemma_case(alg)).collect(),
        Sweep::Braid => {
            let mut cases = Vec::new();
            for &alg in algebras {
                cases.extend(braid_cases(alg, seed)?);
            }
            cases
        }
        _ => {
            let jobs: Vec<(AlgebraId, Weight)> = algebras
                .iter()
                .flat_map(|&alg| {
                    dominant_weights_up_to_level(alg.rank(), max_level)
                        .into_iter()
                        .map(move |l| (alg, l))
                })
                .collect();
            jobs.par_iter()
                .map(|(alg, lambda)| weight_case(sweep, *alg, lambda))
                .collect()
        }
    };
    Ok(SweepReport { sweep, cases })
}

fn weight_case(sweep: Sweep, alg: AlgebraId, lambda: &Weight) -> CaseResult {
    let rs = RootSystem::new(alg);
    let (passed, detail) = match sweep {
        Sweep::Theorem => {
            let got = brion_demazure_product(&rs, lambda);
            let (ok, detail) = compare(got.clone(), brion_oracle(&rs, lambda));
            let free = got.map(|g| g.is_multiplicity_free()).unwrap_or(false);
            (ok && free, detail)
        }
        Sweep::Rank2 => compare(brion_rank2(&rs, lambda), brion_oracle(&rs, lambda)),
        Sweep::Characters => compare(
            character_demazure(&rs, lambda),
            character_weyl_division(&rs, lambda),
        ),
        Sweep::Cones => cones_case(&rs, lambda),
        Sweep::Expansion => expansion_case(&rs, lambda),
        Sweep::Lemma | Sweep::Braid => unreachable!("not a per-weight sweep"),
    };
    CaseResult {
        algebra: alg,
        case: lambda.to_string(),
        passed,
        detail,
    }
}

fn cones_case(rs: &RootSystem, lambda: &Weight) -> (bool, String) {
    let run = || -> Result<(bool, String)> {
        let oracle = brion_oracle(rs, lambda)?;
        let cones = BrionCones::new(rs, lambda)?;
        let points = lattice_box(rs, lambda, 1)?;
        let mut mismatches = 0;
        let mut outside = 0;
        for mu in &points {
            let c = BigInt::from(cones.coefficient(mu));
            if oracle.coefficient(mu).is_zero() {
                outside += 1;
            }
            if c != oracle.coefficient(mu) {
                mismatches += 1;
            }
        }
        Ok((
            mismatches == 0,
            format!(
                "points={} outside={} mismatches={}",
                points.len(),
                outside,
                mismatches
            ),
        ))
    };
    run().unwrap_or_else(|e| (false, format!("error: {e}")))
}

fn expansion_case(rs: &RootSystem, lambda: &Weight) -> (bool, String) {
    let run = || -> Result<(bool, String)> {
        let exp = polytope_expansion(rs, lambda)?;
        let rebuilt = exp.reconstruct(rs)?;
        let ch = character_demazure(rs, lambda)?;
        let leading = exp.coefficient(lambda).is_one();
        let negatives = exp
            .coefficients
            .values()
            .filter(|c| **c < BigInt::zero())
            .count();
        let nonneg_ok = !rs.algebra().is_type_a() || negatives == 0;
        Ok((
            rebuilt == ch && leading && nonneg_ok,
            format!(
                "coefficients={} reconstruction={} leading={} negative={}",
                exp.coefficients.len(),
                if rebuilt == ch { "exact" } else { "WRONG" },
                if leading { 1 } else { 0 },
                negatives
            ),
        ))
    };
    run().unwrap_or_else(|e| (false, format!("error: {e}")))
}

fn lemma_case(alg: AlgebraId) -> CaseResult {
    let rs = RootSystem::new(alg);
    let (passed, detail) = match (verify_weyl_sum_lemma(&rs), weyl_sum_product(&rs)) {
        (Ok(ok), Ok(product)) => (
            ok,
            format!("terms={} |W|={}", product.len(), alg.weyl_order()),
        ),
        (Err(e), _) | (_, Err(e)) => (false, format!("error: {e}")),
    };
    CaseResult {
        algebra: alg,
        case: "product".into(),
        passed,
        detail,
    }
}

fn random_sum(rng: &mut ChaCha8Rng, rank: usize) -> FormalSum {
    let n = rng.gen_range(1..=4);
    FormalSum::from_terms(
        rank,
        (0..n).map(|_| {
            let labels = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
            (Weight::new(labels), rng.gen_range(-3i64..=3))
        }),
    )
    .expect("ranks agree")
}

/// Test monomials for reduced-word independence: every weight with labels in
/// `-2..=2` up to rank three, a seeded sample beyond that.
fn word_test_weights(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Weight> {
    if rank <= 3 {
        let mut out = vec![Vec::new()];
        for _ in 0..rank {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (-2..=2).map(move |x| {
                        let mut v = p.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Weight::new).collect()
    } else {
        (0..12)
            .map(|_| Weight::new((0..rank).map(|_| rng.gen_range(-2..=2)).collect()))
            .collect()
    }
}

fn braid_cases(alg: AlgebraId, seed: u64) -> Result<Vec<CaseResult>> {
    let rs = RootSystem::new(alg);
    let n = rs.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (alg.rank() as u64) << 8 ^ alg.family() as u64);
    let sums: Vec<FormalSum> = (0..40).map(|_| random_sum(&mut rng, n)).collect();
    let mut cases = Vec::new();
    let mut push = |case: &str, failures: usize, checked: usize| {
        cases.push(CaseResult {
            algebra: alg,
            case: case.to_string(),
            passed: failures == 0,
            detail: format!("checked={checked} failures={failures}"),
        });
    };

    let (mut fails, mut checked) = (0, 0);
    for f in &sums {
        for i in 1..=n {
            let once = demazure(&rs, i, f)?;
            let d = modified_demazure(&rs, i, f)?;
            checked += 2;
            fails += usize::from(demazure(&rs, i, &once)? != once);
            fails += usize::from(modified_demazure(&rs, i, &d)? != d.neg());
        }
    }
    push("idempotence", fails, checked);

    let (mut fails, mut checked) = (0, 0);
    for i in 1..=n {
        for j in i + 1..=n {
            let m = alg.coxeter_exponent(i - 1, j - 1);
            let left: Vec<usize> = [i, j].iter().copied().cycle().take(m).collect();
            let right: Vec<usize> = [j, i].iter().copied().cycle().take(m).collect();
            for f in &sums {
                checked += 1;
                fails += usize::from(
                    demazure_along_word(&rs, &left, f)? != demazure_along_word(&rs, &right, f)?,
                );
            }
        }
    }
    push("braid-relations", fails, checked);

    let tests = word_test_weights(&mut rng, n);
    let group = enumerate_group(&rs)?;
    let (fails, checked) = group
        .par_iter()
        .map(|w| reduced_word_failures(&rs, w, &tests))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold((0, 0), |(a, b), (x, y)| (a + x, b + y));
    push("reduced-word-independence", fails, checked);

    let (mut fails, mut checked) = (0, 0);
    for lambda in dominant_weights_up_to_level(n, 2) {
        let ch = character_demazure(&rs, &lambda)?;
        for i in 1..=n {
            let r = WeylElement::from_word(&rs, &[i])?;
            checked += 1;
            fails += usize::from(apply_weyl(&r, &ch)? != ch);
        }
    }
    push("character-weyl-invariance", fails, checked);
    Ok(cases)
}

fn reduced_word_failures(
    rs: &RootSystem,
    w: &WeylElement,
    tests: &[Weight],
) -> Result<(usize, usize)> {
    // Cap the number of words per element; the longest element of A4 alone
    // has 768 reduced words.
    let words: Vec<Vec<usize>> = w.all_reduced_words().into_iter().take(64).collect();
    let (mut fails, mut checked) = (0, 0);
    for mu in tests {
        let f = FormalSum::monomial(mu.clone());
        let reference = demazure_w(rs, w, &f)?;
        for word in &words {
            checked += 1;
            fails += usize::from(demazure_along_word(rs, word, &f)? != reference);
        }
    }
    Ok((fails, checked))
}

/// Rank-1 sanity: the Demazure product, the character and the polytope sum
/// all coincide for `A_1`.
pub fn rank_one_coincidence(max_level: i64) -> bool {
    let rs = RootSystem::new(AlgebraId::a(1));
    (0..=max_level).all(|m| {
        let l = Weight::new(vec![m]);
        let b = brion_demazure_product(&rs, &l).ok();
        b.is_some() && b == character_demazure(&rs, &l).ok() && b == brion_oracle(&rs, &l).ok()
    })
}
