//! The group rings `Z[P]` (formal exponentials) and `Z[W]`.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::{AlgebraId, Weight};
use crate::weyl::WeylElement;

/// A finite sum `Σ c_μ e^μ` with integer coefficients. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl FormalSum {
    pub fn zero(rank: usize) -> Self {
        FormalSum {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The single exponential `e^μ`.
    pub fn monomial(mu: Weight) -> Self {
        let rank = mu.rank();
        FormalSum {
            rank,
            terms: BTreeMap::from([(mu, BigInt::one())]),
        }
    }

    /// Collects `(weight, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, C)>,
        C: Into<BigInt>,
    {
        let mut out = FormalSum::zero(rank);
        for (mu, c) in terms {
            if mu.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: mu.rank(),
                });
            }
            out.add_term(mu, c.into());
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mu: &Weight) -> BigInt {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    /// Terms in lexicographic order of weights.
    pub fn terms(&self) -> btree_map::Iter<'_, Weight, BigInt> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// Sum of all coefficients; the dimension when `self` is a character.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, mu: Weight, coeff: BigInt) {
        debug_assert_eq!(mu.rank(), self.rank);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &FormalSum, k: &BigInt) {
        assert_eq!(self.rank, other.rank, "rank mismatch in formal sum");
        for (mu, c) in &other.terms {
            self.add_term(mu.clone(), c * k);
        }
    }

    fn check_rank(&self, other: &FormalSum) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            })
        }
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check_rank(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        Ok(out)
    }

    pub fn sub(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check_rank(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> FormalSum {
        if k.is_zero() {
            return FormalSum::zero(self.rank);
        }
        FormalSum {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(mu, c)| (mu.clone(), c * k))
                .collect(),
        }
    }

    pub fn neg(&self) -> FormalSum {
        self.scale(&-BigInt::one())
    }

    /// Product in `Z[P]`: exponents add.
    pub fn mul(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check_rank(other)?;
        let mut out = FormalSum::zero(self.rank);
        for (mu, a) in &self.terms {
            for (nu, b) in &other.terms {
                out.add_term(mu + nu, a * b);
            }
        }
        Ok(out)
    }

    /// Applies `f` to every exponent, keeping coefficients.
    pub fn map_weights(&self, mut f: impl FnMut(&Weight) -> Weight) -> FormalSum {
        let mut out = FormalSum::zero(self.rank);
        for (mu, c) in &self.terms {
            out.add_term(f(mu), c.clone());
        }
        out
    }

    /// True when every stored coefficient equals one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|c| c.is_one())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(mu, c)| JsonTerm {
                weight: mu.labels().to_vec(),
                coeff: bigint_to_number(c),
            })
            .collect();
        serde_json::to_value(JsonSum { terms }).expect("formal sums always serialize")
    }

    /// Reads the `{"terms": [{"weight": [...], "coeff": n}, ...]}` form.
    pub fn from_json(rank: usize, value: &serde_json::Value) -> Result<FormalSum> {
        let malformed = |what: &str| Error::Malformed(what.to_string());
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| malformed("missing \"terms\" array"))?;
        let mut out = FormalSum::zero(rank);
        for t in terms {
            let weight: Vec<i64> = t
                .get("weight")
                .and_then(|w| w.as_array())
                .ok_or_else(|| malformed("term without \"weight\""))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| malformed("non-integer label")))
                .collect::<Result<_>>()?;
            if weight.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: weight.len(),
                });
            }
            // Go through the literal text so coefficients beyond i64 survive.
            let coeff: BigInt = match t.get("coeff") {
                Some(serde_json::Value::Number(n)) => n
                    .to_string()
                    .parse()
                    .map_err(|_| Error::Malformed(format!("non-integer coefficient {n}")))?,
                _ => return Err(malformed("term without integer \"coeff\"")),
            };
            out.add_term(Weight::new(weight), coeff);
        }
        Ok(out)
    }
}

pub(crate) fn bigint_to_number(c: &BigInt) -> serde_json::Number {
    c.to_string()
        .parse()
        .expect("integers are valid JSON numbers")
}

#[derive(Serialize)]
struct JsonTerm {
    weight: Vec<i64>,
    coeff: serde_json::Number,
}

#[derive(Serialize)]
struct JsonSum {
    terms: Vec<JsonTerm>,
}

/// Text form such as `e^(1,0) + 2 e^(0,0) - e^(-1,1)`; `0` when empty.
impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest weights first reads more naturally.
        for (k, (mu, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a} ")?;
            }
            write!(f, "e^{mu}")?;
        }
        Ok(())
    }
}

/// `w(Σ c_μ e^μ) = Σ c_μ e^{wμ}`.
pub fn apply_weyl(w: &WeylElement, f: &FormalSum) -> Result<FormalSum> {
    if w.algebra().rank() != f.rank() {
        return Err(Error::RankMismatch {
            expected: w.algebra().rank(),
            found: f.rank(),
        });
    }
    Ok(f.map_weights(|mu| w.act(mu)))
}

/// An element of the group ring `Z[W]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    algebra: AlgebraId,
    terms: BTreeMap<WeylElement, BigInt>,
}

impl GroupAlgebraElement {
    pub fn zero(algebra: AlgebraId) -> Self {
        GroupAlgebraElement {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    /// The identity element `1`.
    pub fn one(algebra: AlgebraId) -> Self {
        Self::from_element(WeylElement::identity(algebra))
    }

    pub fn from_element(w: WeylElement) -> Self {
        GroupAlgebraElement {
            algebra: w.algebra(),
            terms: BTreeMap::from([(w, BigInt::one())]),
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, WeylElement, BigInt> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &WeylElement) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: WeylElement, coeff: BigInt) {
        assert_eq!(
            w.algebra(),
            self.algebra,
            "element of a different Weyl group"
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Product in `Z[W]`, extending the group law bilinearly.
    pub fn mul(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.algebra);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.compose(b), x * y);
            }
        }
        out
    }

    /// Linear action on `Z[P]`.
    pub fn apply(&self, f: &FormalSum) -> Result<FormalSum> {
        let mut out = FormalSum::zero(f.rank());
        for (w, c) in &self.terms {
            out.add_scaled(&apply_weyl(w, f)?, c);
        }
        Ok(out)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c}) {w}")?;
            }
        }
        Ok(())
    }
}
