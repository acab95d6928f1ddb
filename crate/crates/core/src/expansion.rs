//! Characters by exact division, weight multiplicities, and the expansion of
//! characters in Weyl polytope sums.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::brion::{brion_oracle, dominant_weights_below};
use crate::demazure::character_demazure;
use crate::error::{Error, Result};
use crate::formal_sum::{bigint_to_number, FormalSum};
use crate::linalg::Rational;
use crate::root_system::{RootSystem, Weight};
use crate::weyl::{enumerate_group, longest_element};

/// `Σ_w det(w) e^{w(λ+ρ)-ρ}`.
pub fn weyl_numerator(rs: &RootSystem, lambda: &Weight) -> Result<FormalSum> {
    rs.check_dominant(lambda)?;
    let shifted = lambda + rs.rho();
    let mut out = FormalSum::zero(rs.rank());
    for w in enumerate_group(rs)? {
        out.add_term(&w.act(&shifted) - rs.rho(), BigInt::from(w.det()));
    }
    Ok(out)
}

/// `Π_{α>0} (1 - e^{-α})`.
pub fn weyl_denominator(rs: &RootSystem) -> FormalSum {
    let zero = Weight::zero(rs.rank());
    let mut out = FormalSum::monomial(zero.clone());
    for alpha in rs.positive_roots() {
        let factor = FormalSum::from_terms(rs.rank(), [(zero.clone(), 1), (-alpha, -1)])
            .expect("ranks agree");
        out = out.mul(&factor).expect("ranks agree");
    }
    out
}

/// The character `ch_λ` as the exact quotient of the Weyl numerator by the
/// Weyl denominator.
///
/// The denominator is `1 +` (terms of negative height), so long division
/// cancels the highest-height residual term at each step. The quotient is
/// supported at heights no lower than that of the lowest weight `w_L λ`; a
/// residual term below that bound means the division is not exact.
pub fn character_weyl_division(rs: &RootSystem, lambda: &Weight) -> Result<FormalSum> {
    let numerator = weyl_numerator(rs, lambda)?;
    let denominator: Vec<(Rational, Weight, BigInt)> = weyl_denominator(rs)
        .terms()
        .map(|(mu, c)| (rs.height(mu), mu.clone(), c.clone()))
        .collect();
    let floor = rs.height(&longest_element(rs).act(lambda));

    let mut residual: BTreeMap<(Rational, Weight), BigInt> = numerator
        .terms()
        .map(|(mu, c)| ((rs.height(mu), mu.clone()), c.clone()))
        .collect();
    let mut quotient = FormalSum::zero(rs.rank());
    while let Some(((height, mu), c)) = residual.pop_last() {
        if height < floor {
            return Err(Error::DivisionRemainder);
        }
        for (h, nu, d) in &denominator {
            if nu.is_zero() {
                continue;
            }
            let key = (height + h, &mu + nu);
            let entry = residual.entry(key).or_insert_with(BigInt::zero);
            *entry -= &c * d;
            if entry.is_zero() {
                let key = (height + h, &mu + nu);
                residual.remove(&key);
            }
        }
        quotient.add_term(mu, c);
    }
    Ok(quotient)
}

/// Multiplicity of `μ` in the irreducible module of highest weight `λ`.
pub fn weight_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<BigInt> {
    rs.check_weight(mu)?;
    Ok(character_demazure(rs, lambda)?.coefficient(mu))
}

/// `ch_λ = Σ_μ A_{λ,μ} B_μ` over dominant `μ ≤ λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeExpansion {
    pub lambda: Weight,
    /// Nonzero coefficients only.
    pub coefficients: BTreeMap<Weight, BigInt>,
}

impl PolytopeExpansion {
    pub fn coefficient(&self, mu: &Weight) -> BigInt {
        self.coefficients.get(mu).cloned().unwrap_or_default()
    }

    /// `Σ A_{λ,μ} B_μ`.
    pub fn reconstruct(&self, rs: &RootSystem) -> Result<FormalSum> {
        let mut out = FormalSum::zero(rs.rank());
        for (mu, a) in &self.coefficients {
            out.add_scaled(&brion_oracle(rs, mu)?, a);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coefficients: Vec<_> = self
            .coefficients
            .iter()
            .map(|(mu, c)| json!({"weight": mu.labels(), "coeff": bigint_to_number(c)}))
            .collect();
        json!({"lambda": self.lambda.labels(), "coefficients": coefficients})
    }
}

/// Solves for `A_{λ,μ}` by descending elimination: dominant weights are
/// visited by decreasing height (a linear extension of dominance order),
/// ties broken lexicographically, subtracting `A_{λ,ν} B_ν` from the residual
/// character at each step.
pub fn polytope_expansion(rs: &RootSystem, lambda: &Weight) -> Result<PolytopeExpansion> {
    let mut residual = character_demazure(rs, lambda)?;
    let mut order: Vec<(Rational, Weight)> = dominant_weights_below(rs, lambda)?
        .into_iter()
        .map(|mu| (rs.height(&mu), mu))
        .collect();
    order.sort_by(|(ha, a), (hb, b)| hb.cmp(ha).then_with(|| a.cmp(b)));

    let mut coefficients = BTreeMap::new();
    for (_, nu) in order {
        let a = residual.coefficient(&nu);
        if a.is_zero() {
            continue;
        }
        residual.add_scaled(&brion_oracle(rs, &nu)?, &-&a);
        coefficients.insert(nu, a);
    }
    if !residual.is_empty() {
        return Err(Error::ExpansionDiverged);
    }
    debug_assert_eq!(coefficients.get(lambda), Some(&BigInt::one()));
    Ok(PolytopeExpansion {
        lambda: lambda.clone(),
        coefficients,
    })
}
