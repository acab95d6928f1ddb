//! Weyl polytope sums `B_λ` by two independent routes.
//!
//! The dominance route uses the standard description of the lattice points of
//! the Weyl polytope in `λ + Q`: `μ` lies in the polytope exactly when its
//! dominant orbit representative `μ⁺` satisfies `μ⁺ ≤ λ` in dominance order.
//! These are the weights of the irreducible module of highest weight `λ`.
//!
//! The cone route evaluates the Brion sum over the Weyl group directly. Each
//! summand `e^{wλ} Π_{α∈S} (1 - e^{-wα})^{-1}` expands into a signed
//! indicator of a shifted simplicial cone; a coefficient is the signed count
//! of cones containing the weight. Because `{wα}` is a basis of the root
//! lattice, membership is an exact linear solve and nothing is truncated.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::demazure::{brion_demazure_product, brion_rank2};
use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::linalg::{to_integers, RatMatrix};
use crate::root_system::{Family, RootSystem, Weight};
use crate::weyl::{enumerate_group, longest_element, orbit};

/// Dominant weights `μ ≤ λ` in dominance order, sorted lexicographically.
pub fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Weight>> {
    rs.check_dominant(lambda)?;
    // For dominant μ = λ - Σ c_j α_j we have c = C⁻¹(λ - μ) ≤ C⁻¹λ, since C⁻¹
    // has nonnegative entries.
    let bounds: Vec<i64> = rs
        .root_coefficients(lambda)
        .iter()
        .map(|c| c.floor().to_integer())
        .collect();
    let mut out = Vec::new();
    descend(rs, &bounds, 0, lambda.clone(), &mut out);
    out.sort();
    Ok(out)
}

fn descend(rs: &RootSystem, bounds: &[i64], j: usize, current: Weight, out: &mut Vec<Weight>) {
    if j == bounds.len() {
        if current.is_dominant() {
            out.push(current);
        }
        return;
    }
    let alpha = &rs.simple_roots()[j];
    for c in 0..=bounds[j] {
        descend(rs, bounds, j + 1, current.add_scaled(alpha, -c), out);
    }
}

/// `P(λ)`: lattice points of the Weyl polytope in `λ + Q`.
pub fn weight_system(rs: &RootSystem, lambda: &Weight) -> Result<BTreeSet<Weight>> {
    let mut out = BTreeSet::new();
    for mu in dominant_weights_below(rs, lambda)? {
        out.extend(orbit(rs, &mu)?);
    }
    Ok(out)
}

/// `B_λ` as the multiplicity-free sum over `P(λ)`.
pub fn brion_oracle(rs: &RootSystem, lambda: &Weight) -> Result<FormalSum> {
    let mut out = FormalSum::zero(rs.rank());
    for mu in weight_system(rs, lambda)? {
        out.add_term(mu, BigInt::one());
    }
    Ok(out)
}

/// One signed cone `sign · Σ_{k ≥ 0} e^{apex + Σ k_j g_j}` of the Brion sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeTerm {
    pub sign: i64,
    pub apex: Weight,
    pub generators: Vec<Weight>,
}

/// The `|W|` cone terms of the Brion formula for `λ`.
///
/// For `β = wα` with `β` positive, `(1 - e^{-β})^{-1} = 1 + e^{-β} + ...`
/// contributes the generator `-β`. For `β` negative it equals
/// `-(e^{β} + e^{2β} + ...)`, contributing generator `β`, a shift of the
/// apex by `β` and a sign flip.
pub fn cone_terms(rs: &RootSystem, lambda: &Weight) -> Result<Vec<ConeTerm>> {
    rs.check_dominant(lambda)?;
    let mut out = Vec::new();
    for w in enumerate_group(rs)? {
        let mut sign = 1;
        let mut apex = w.act(lambda);
        let mut generators = Vec::with_capacity(rs.rank());
        for alpha in rs.simple_roots() {
            let beta = w.act(alpha);
            if rs.is_positive_root(&beta) {
                generators.push(-&beta);
            } else {
                apex = &apex + &beta;
                sign = -sign;
                generators.push(beta);
            }
        }
        out.push(ConeTerm {
            sign,
            apex,
            generators,
        });
    }
    Ok(out)
}

struct PreparedCone {
    sign: i64,
    /// Root-lattice coordinates of `apex - λ`.
    apex_offset: Vec<i64>,
    /// Inverse of the matrix whose columns are the generators in root
    /// coordinates.
    inverse: RatMatrix,
}

/// Cone terms prepared for repeated membership queries.
pub struct BrionCones<'a> {
    rs: &'a RootSystem,
    lambda: Weight,
    cones: Vec<PreparedCone>,
}

impl<'a> BrionCones<'a> {
    pub fn new(rs: &'a RootSystem, lambda: &Weight) -> Result<Self> {
        let cones = cone_terms(rs, lambda)?
            .into_iter()
            .map(|cone| {
                let cols: Vec<Vec<i64>> = cone
                    .generators
                    .iter()
                    .map(|g| rs.root_lattice_coefficients(g).expect("roots lie in Q"))
                    .collect();
                let col_refs: Vec<&[i64]> = cols.iter().map(Vec::as_slice).collect();
                let inverse = RatMatrix::from_columns(&col_refs)
                    .inverse()
                    .expect("images of the simple roots form a basis");
                let apex_offset = rs
                    .root_lattice_coefficients(&(&cone.apex - lambda))
                    .expect("apexes lie in λ + Q");
                PreparedCone {
                    sign: cone.sign,
                    apex_offset,
                    inverse,
                }
            })
            .collect();
        Ok(BrionCones {
            rs,
            lambda: lambda.clone(),
            cones,
        })
    }

    /// Coefficient of `e^μ` in `B_λ`: the signed number of cones containing `μ`.
    pub fn coefficient(&self, mu: &Weight) -> i64 {
        let Some(delta) = self.rs.root_lattice_coefficients(&(mu - &self.lambda)) else {
            return 0;
        };
        let mut total = 0;
        for cone in &self.cones {
            let rel: Vec<i64> = delta
                .iter()
                .zip(&cone.apex_offset)
                .map(|(d, a)| d - a)
                .collect();
            let k = cone.inverse.mul_vec(&rel);
            if let Some(k) = to_integers(&k) {
                if k.iter().all(|&x| x >= 0) {
                    total += cone.sign;
                }
            }
        }
        total
    }

    /// `B_λ` evaluated on every point of the bounding box.
    pub fn sum(&self) -> Result<FormalSum> {
        let mut out = FormalSum::zero(self.rs.rank());
        for mu in lattice_box(self.rs, &self.lambda, 0)? {
            let c = self.coefficient(&mu);
            out.add_term(mu, BigInt::from(c));
        }
        Ok(out)
    }
}

/// Coefficient of `e^μ` in `B_λ` from the signed cone sum.
pub fn brion_coefficient(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<i64> {
    rs.check_weight(mu)?;
    Ok(BrionCones::new(rs, lambda)?.coefficient(mu))
}

/// Points `λ - Σ c_j α_j` of `λ + Q` with `-margin ≤ c_j ≤ m_j + margin`,
/// where `m` are the root coordinates of `λ - w_L λ`. With `margin = 0` this
/// box contains the whole polytope.
pub fn lattice_box(rs: &RootSystem, lambda: &Weight, margin: i64) -> Result<Vec<Weight>> {
    rs.check_dominant(lambda)?;
    let lowest = longest_element(rs).act(lambda);
    let span = rs
        .root_lattice_coefficients(&(lambda - &lowest))
        .expect("orbit points differ by roots");
    let mut points = vec![lambda.clone()];
    for (j, &m) in span.iter().enumerate() {
        let alpha = &rs.simple_roots()[j];
        points = points
            .iter()
            .flat_map(|p| (-margin..=m + margin).map(move |c| p.add_scaled(alpha, -c)))
            .collect();
    }
    points.sort();
    Ok(points)
}

/// How a polytope sum was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Dominance,
    BrionCones,
    DemazureProduct,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Dominance => "dominance",
            Method::BrionCones => "cones",
            Method::DemazureProduct => "demazure",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dominance" => Ok(Method::Dominance),
            "cones" => Ok(Method::BrionCones),
            "demazure" => Ok(Method::DemazureProduct),
            other => Err(Error::Syntax {
                offset: 0,
                message: format!(
                    "unknown method {other:?} (expected dominance, cones or demazure)"
                ),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeSumReport {
    pub lambda: Weight,
    pub sum: FormalSum,
    pub method: Method,
    pub term_count: usize,
}

impl PolytopeSumReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.sum.to_json();
        let obj = v.as_object_mut().expect("formal sums serialize as objects");
        obj.insert("method".into(), self.method.name().into());
        obj.insert("term_count".into(), self.term_count.into());
        v
    }
}

/// `B_λ` by the chosen method. The Demazure method uses the `A_n` product or
/// the explicit rank-2 operator.
pub fn polytope_sum(rs: &RootSystem, lambda: &Weight, method: Method) -> Result<PolytopeSumReport> {
    let sum = match method {
        Method::Dominance => brion_oracle(rs, lambda)?,
        Method::BrionCones => BrionCones::new(rs, lambda)?.sum()?,
        Method::DemazureProduct => match rs.algebra().family() {
            Family::A => brion_demazure_product(rs, lambda)?,
            Family::C2 | Family::G2 => brion_rank2(rs, lambda)?,
        },
    };
    Ok(PolytopeSumReport {
        lambda: lambda.clone(),
        term_count: sum.len(),
        sum,
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_sum::apply_weyl;
    use crate::root_system::AlgebraId;
    use crate::weyl::WeylElement;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn dominant_up_to_level(rank: usize, level: i64) -> Vec<Weight> {
        let mut out = vec![vec![]];
        for _ in 0..rank {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    let used: i64 = v.iter().sum();
                    (0..=level - used).map(move |x| {
                        let mut v = v.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Weight::new).collect()
    }

    /// Independent check of `P(λ)` by the convex-hull description: in the
    /// `ε`-coordinates of `A_n`, `μ` lies in the permutohedron of `λ` iff its
    /// sorted partial sums are bounded by those of `λ` and totals agree.
    fn in_type_a_permutohedron(lambda: &Weight, mu: &Weight) -> bool {
        let eps = |x: &Weight| -> Vec<i64> {
            let n = x.rank();
            let mut v = vec![0; n + 1];
            for k in (0..n).rev() {
                v[k] = v[k + 1] + x.labels()[k];
            }
            v
        };
        let mut a = eps(lambda);
        let mut b = eps(mu);
        // Normalize both to the same total by comparing (n+1)·coords minus mean.
        let n1 = a.len() as i64;
        let (sa, sb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        a.iter_mut().for_each(|x| *x = *x * n1 - sa);
        b.iter_mut().for_each(|x| *x = *x * n1 - sb);
        a.sort_by(|x, y| y.cmp(x));
        b.sort_by(|x, y| y.cmp(x));
        let mut pa = 0;
        let mut pb = 0;
        for k in 0..a.len() {
            pa += a[k];
            pb += b[k];
            if pb > pa {
                return false;
            }
        }
        pa == pb
    }

    #[test]
    fn weight_system_examples() {
        let a2 = RootSystem::new(AlgebraId::a(2));
        assert_eq!(weight_system(&a2, &w(&[1, 0])).unwrap().len(), 3);
        let adj = weight_system(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(adj.len(), 7);
        assert!(adj.contains(&w(&[0, 0])));
        for alg in [
            AlgebraId::a(1),
            AlgebraId::a(3),
            AlgebraId::C2,
            AlgebraId::G2,
        ] {
            let rs = RootSystem::new(alg);
            let z = Weight::zero(rs.rank());
            assert_eq!(weight_system(&rs, &z).unwrap(), BTreeSet::from([z]));
        }
        assert!(matches!(
            weight_system(&a2, &w(&[0, -1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn oracle_matches_permutohedron_membership() {
        for n in 1..=3 {
            let rs = RootSystem::new(AlgebraId::a(n));
            for lambda in dominant_up_to_level(n, 3) {
                let b = brion_oracle(&rs, &lambda).unwrap();
                for mu in lattice_box(&rs, &lambda, 1).unwrap() {
                    let inside = in_type_a_permutohedron(&lambda, &mu);
                    assert_eq!(b.coefficient(&mu) == BigInt::one(), inside, "{lambda} {mu}");
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let a1 = RootSystem::new(AlgebraId::a(1));
        let b = brion_oracle(&a1, &w(&[3])).unwrap();
        let expected = FormalSum::from_terms(1, [3, 1, -1, -3].map(|m| (w(&[m]), 1))).unwrap();
        assert_eq!(b, expected);
        let a2 = RootSystem::new(AlgebraId::a(2));
        let b = brion_oracle(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(b.coefficient(&w(&[0, 0])), BigInt::one());
    }

    #[test]
    fn cone_term_shapes() {
        let a1 = RootSystem::new(AlgebraId::a(1));
        for m in 0..4 {
            let cones = cone_terms(&a1, &w(&[m])).unwrap();
            assert_eq!(cones.len(), 2);
            let id = &cones[0];
            // enumerate_group sorts the identity permutation first.
            assert_eq!(id.sign, 1);
            assert_eq!(id.apex, w(&[m]));
            assert_eq!(id.generators, vec![w(&[-2])]);
            let r = &cones[1];
            assert_eq!(r.sign, -1);
            assert_eq!(r.apex, w(&[-m - 2]));
            assert_eq!(r.generators, vec![w(&[-2])]);
        }
        for alg in [AlgebraId::a(3), AlgebraId::C2, AlgebraId::G2] {
            let rs = RootSystem::new(alg);
            let lambda = Weight::new(vec![1; rs.rank()]);
            let cones = cone_terms(&rs, &lambda).unwrap();
            assert_eq!(cones.len() as u128, alg.weyl_order());
            let group = enumerate_group(&rs).unwrap();
            for (cone, elem) in cones.iter().zip(&group) {
                let flips = rs
                    .simple_roots()
                    .iter()
                    .filter(|a| !rs.is_positive_root(&elem.act(a)))
                    .count();
                assert_eq!(cone.sign, if flips % 2 == 0 { 1 } else { -1 });
                if elem.is_identity() {
                    assert_eq!(cone.apex, lambda);
                    let neg: Vec<Weight> = rs.simple_roots().iter().map(|a| -a).collect();
                    assert_eq!(cone.generators, neg);
                }
                assert!(cone.generators.iter().all(|g| !rs.is_positive_root(g)));
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        let a2 = RootSystem::new(AlgebraId::a(2));
        let l = w(&[1, 0]);
        assert_eq!(brion_coefficient(&a2, &l, &w(&[1, 0])).unwrap(), 1);
        assert_eq!(brion_coefficient(&a2, &l, &w(&[3, -1])).unwrap(), 0);
        // (0,0) is not in (1,0) + Q.
        assert_eq!(brion_coefficient(&a2, &l, &w(&[0, 0])).unwrap(), 0);
    }

    #[test]
    fn cones_match_oracle_on_small_cases() {
        for alg in [
            AlgebraId::a(1),
            AlgebraId::a(2),
            AlgebraId::C2,
            AlgebraId::G2,
        ] {
            let rs = RootSystem::new(alg);
            for lambda in dominant_up_to_level(rs.rank(), 2) {
                let oracle = brion_oracle(&rs, &lambda).unwrap();
                let cones = BrionCones::new(&rs, &lambda).unwrap();
                for mu in lattice_box(&rs, &lambda, 1).unwrap() {
                    assert_eq!(
                        BigInt::from(cones.coefficient(&mu)),
                        oracle.coefficient(&mu)
                    );
                }
                assert_eq!(cones.sum().unwrap(), oracle);
            }
        }
    }

    #[test]
    fn oracle_invariants() {
        for alg in [
            AlgebraId::a(2),
            AlgebraId::a(3),
            AlgebraId::C2,
            AlgebraId::G2,
        ] {
            let rs = RootSystem::new(alg);
            let weights = dominant_up_to_level(rs.rank(), 3);
            for lambda in &weights {
                let b = brion_oracle(&rs, lambda).unwrap();
                assert!(b.is_multiplicity_free());
                for i in 1..=rs.rank() {
                    let r = WeylElement::from_word(&rs, &[i]).unwrap();
                    assert_eq!(apply_weyl(&r, &b).unwrap(), b);
                }
                for v in orbit(&rs, lambda).unwrap() {
                    assert_eq!(b.coefficient(&v), BigInt::one());
                }
                for nu in &weights {
                    if rs.dominates(lambda, nu) {
                        let small = brion_oracle(&rs, nu).unwrap();
                        assert!(small.support().all(|m| b.coefficient(m) == BigInt::one()));
                    }
                }
            }
        }
    }

    #[test]
    fn report_json() {
        let rs = RootSystem::new(AlgebraId::a(2));
        let r = polytope_sum(&rs, &w(&[1, 0]), Method::Dominance).unwrap();
        assert_eq!(r.term_count, 3);
        let v = r.to_json();
        assert_eq!(v["method"], "dominance");
        assert_eq!(v["term_count"], 3);
        assert_eq!(FormalSum::from_json(2, &v).unwrap(), r.sum);
        assert_eq!("cones".parse::<Method>().unwrap(), Method::BrionCones);
        assert!("other".parse::<Method>().is_err());
    }
}
