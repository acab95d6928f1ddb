//! Cartan data and weight-lattice arithmetic in Dynkin-label coordinates.
//!
//! A weight is stored by its Dynkin labels `λ_i = (λ, α_i^∨)`. The Cartan
//! matrix is indexed so that `cartan[i][j] = (α_j, α_i^∨)`; consequently the
//! simple root `α_j` has labels equal to column `j` of the matrix.
//!
//! For the two non-simply-laced algebras `α_1` is the long root:
//!
//! ```text
//! C2: [[ 2, -1],      G2: [[ 2, -1],
//!      [-2,  2]]           [-3,  2]]
//! ```
//!
//! so `α_1 = (2,-2)`, `α_2 = (-1,2)` for C2 and `α_1 = (2,-3)`, `α_2 = (-1,2)`
//! for G2. This is the orientation in which the explicit C2 Brion operator in
//! [`crate::demazure::brion_rank2`] reproduces the polytope sums; it requires
//! `(α_2, α_1^∨) = -1`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{to_integers, RatMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    C2,
    G2,
}

/// One of the supported simple Lie algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    family: Family,
    rank: usize,
}

impl AlgebraId {
    pub const C2: AlgebraId = AlgebraId {
        family: Family::C2,
        rank: 2,
    };
    pub const G2: AlgebraId = AlgebraId {
        family: Family::G2,
        rank: 2,
    };

    /// `A_n`, panicking on `n == 0`.
    pub fn a(n: usize) -> Self {
        assert!(n >= 1, "A_n needs n >= 1");
        AlgebraId {
            family: Family::A,
            rank: n,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_type_a(&self) -> bool {
        self.family == Family::A
    }

    /// Cartan matrix with `cartan[i][j] = (α_j, α_i^∨)`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        match self.family {
            Family::A => {
                let n = self.rank;
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| match i.abs_diff(j) {
                                0 => 2,
                                1 => -1,
                                _ => 0,
                            })
                            .collect()
                    })
                    .collect()
            }
            Family::C2 => vec![vec![2, -1], vec![-2, 2]],
            Family::G2 => vec![vec![2, -1], vec![-3, 2]],
        }
    }

    /// Order of `r_i r_j` in the Weyl group (0-based indices).
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        let c = self.cartan();
        match c[i][j] * c[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            other => unreachable!("unexpected Cartan product {other}"),
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        match self.family {
            Family::A => (1..=self.rank as u128 + 1).product(),
            Family::C2 => 8,
            Family::G2 => 12,
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.rank),
            Family::C2 => f.write_str("C2"),
            Family::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "C2" | "c2" => return Ok(AlgebraId::C2),
            "G2" | "g2" => return Ok(AlgebraId::G2),
            _ => {}
        }
        let digits = t
            .strip_prefix('A')
            .or_else(|| t.strip_prefix('a'))
            .ok_or_else(|| Error::UnknownAlgebra(s.to_string()))?;
        match digits.parse::<usize>() {
            Ok(n @ 1..=9) if !digits.starts_with('+') => Ok(AlgebraId::a(n)),
            _ => Err(Error::UnknownAlgebra(s.to_string())),
        }
    }
}

/// A weight given by its Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(labels: Vec<i64>) -> Self {
        Weight(labels)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn labels_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn into_labels(self) -> Vec<i64> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Sum of the labels.
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<const N: usize> From<[i64; N]> for Weight {
    fn from(v: [i64; N]) -> Self {
        Weight(v.to_vec())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Parses comma-separated Dynkin labels such as `1,0,-2`.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut labels = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let label = part.trim().parse::<i64>().map_err(|_| Error::Syntax {
                offset,
                message: format!("expected an integer label, found {:?}", part.trim()),
            })?;
            labels.push(label);
            offset += part.len() + 1;
        }
        Ok(Weight(labels))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, 1)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, -1)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

/// Static root data for one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    algebra: AlgebraId,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    rho: Weight,
    positive_roots: Vec<Weight>,
    cartan_inverse: RatMatrix,
}

impl RootSystem {
    pub fn new(algebra: AlgebraId) -> Self {
        let cartan = algebra.cartan();
        let n = algebra.rank();
        let simple_roots: Vec<Weight> = (0..n)
            .map(|j| Weight((0..n).map(|i| cartan[i][j]).collect()))
            .collect();
        let cartan_inverse = RatMatrix::from_rows(&cartan)
            .inverse()
            .expect("Cartan matrices of simple Lie algebras are invertible");
        let mut rs = RootSystem {
            algebra,
            cartan,
            simple_roots,
            rho: Weight(vec![1; n]),
            positive_roots: Vec::new(),
            cartan_inverse,
        };
        rs.positive_roots = rs.close_positive_roots();
        rs
    }

    fn close_positive_roots(&self) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = self.simple_roots.iter().cloned().collect();
        let mut frontier: Vec<Weight> = seen.iter().cloned().collect();
        while let Some(root) = frontier.pop() {
            for i in 0..self.rank() {
                let image = self.reflect(i, &root);
                if seen.insert(image.clone()) {
                    frontier.push(image);
                }
            }
        }
        let mut positive: Vec<(Rational, Weight)> = seen
            .into_iter()
            .filter(|r| {
                self.root_coefficients(r)
                    .iter()
                    .all(|c| *c >= Rational::from_integer(0))
            })
            .map(|r| (self.height(&r), r))
            .collect();
        positive.sort();
        positive.into_iter().map(|(_, r)| r).collect()
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    /// `α_i` for a 1-based index.
    pub fn simple_root(&self, i: usize) -> Result<&Weight> {
        self.check_index(i)?;
        Ok(&self.simple_roots[i - 1])
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    pub fn check_weight(&self, mu: &Weight) -> Result<()> {
        if mu.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::WeightLength {
                algebra: self.algebra,
                weight: mu.clone(),
                expected: self.rank(),
                found: mu.rank(),
            })
        }
    }

    pub fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.check_weight(lambda)?;
        if lambda.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(lambda.clone()))
        }
    }

    /// `r_i(μ) = μ - μ_i α_i` for a 1-based index `i`.
    pub fn simple_reflection(&self, i: usize, mu: &Weight) -> Result<Weight> {
        self.check_index(i)?;
        self.check_weight(mu)?;
        Ok(self.reflect(i - 1, mu))
    }

    /// Unchecked reflection in the 0-based simple root `idx`.
    pub(crate) fn reflect(&self, idx: usize, mu: &Weight) -> Weight {
        let mut out = mu.clone();
        reflect_in_place(&self.cartan, idx, out.labels_mut());
        out
    }

    /// Coordinates of `μ` in the simple-root basis.
    pub fn root_coefficients(&self, mu: &Weight) -> Vec<Rational> {
        self.cartan_inverse.mul_vec(mu.labels())
    }

    /// Simple-root coordinates when `μ` lies in the root lattice.
    pub fn root_lattice_coefficients(&self, mu: &Weight) -> Option<Vec<i64>> {
        to_integers(&self.root_coefficients(mu))
    }

    /// Sum of the simple-root coordinates.
    pub fn height(&self, mu: &Weight) -> Rational {
        self.root_coefficients(mu).into_iter().sum()
    }

    /// True when `lambda - mu` is a nonnegative integer combination of
    /// simple roots.
    pub fn dominates(&self, lambda: &Weight, mu: &Weight) -> bool {
        match self.root_lattice_coefficients(&(lambda - mu)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    pub fn is_positive_root(&self, beta: &Weight) -> bool {
        self.positive_roots.contains(beta)
    }

    /// Dominant representative of the orbit of `μ`, with the number of
    /// reflections used to reach it.
    pub fn dominant_representative(&self, mu: &Weight) -> (Weight, usize) {
        let mut w = mu.clone();
        let mut steps = 0;
        while let Some(i) = w.labels().iter().position(|&x| x < 0) {
            reflect_in_place(&self.cartan, i, w.labels_mut());
            steps += 1;
        }
        (w, steps)
    }
}

pub(crate) fn reflect_in_place(cartan: &[Vec<i64>], idx: usize, labels: &mut [i64]) {
    let m = labels[idx];
    if m != 0 {
        for (k, x) in labels.iter_mut().enumerate() {
            *x -= m * cartan[k][idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn all_algebras() -> Vec<AlgebraId> {
        let mut v: Vec<_> = (1..=6).map(AlgebraId::a).collect();
        v.push(AlgebraId::C2);
        v.push(AlgebraId::G2);
        v
    }

    #[test]
    fn a1_data() {
        let rs = RootSystem::new(AlgebraId::a(1));
        assert_eq!(rs.cartan(), &[vec![2]]);
        assert_eq!(rs.simple_roots(), &[w(&[2])]);
        assert_eq!(rs.positive_roots(), &[w(&[2])]);
        assert_eq!(rs.rho(), &w(&[1]));
    }

    #[test]
    fn a2_data() {
        let rs = RootSystem::new(AlgebraId::a(2));
        assert_eq!(rs.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(rs.simple_roots(), &[w(&[2, -1]), w(&[-1, 2])]);
        let pos: BTreeSet<_> = rs.positive_roots().iter().cloned().collect();
        let expected: BTreeSet<_> = [w(&[2, -1]), w(&[-1, 2]), w(&[1, 1])].into();
        assert_eq!(pos, expected);
    }

    // Tabulated positive roots in simple-root coordinates.
    #[test]
    fn rank2_tables() {
        let table = |alg: AlgebraId| -> BTreeSet<Vec<i64>> {
            let rs = RootSystem::new(alg);
            rs.positive_roots()
                .iter()
                .map(|r| rs.root_lattice_coefficients(r).unwrap())
                .collect()
        };
        let a2: BTreeSet<Vec<i64>> = [vec![1, 0], vec![0, 1], vec![1, 1]].into();
        assert_eq!(table(AlgebraId::a(2)), a2);
        // α1 long, α2 short: long roots α1, α1+2α2; short roots α2, α1+α2.
        let c2: BTreeSet<Vec<i64>> = [vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]].into();
        assert_eq!(table(AlgebraId::C2), c2);
        let g2: BTreeSet<Vec<i64>> = [
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ]
        .into();
        assert_eq!(table(AlgebraId::G2), g2);
    }

    #[test]
    fn positive_root_counts() {
        for n in 1..=8 {
            let rs = RootSystem::new(AlgebraId::a(n));
            assert_eq!(rs.positive_roots().len(), n * (n + 1) / 2);
        }
        assert_eq!(RootSystem::new(AlgebraId::C2).positive_roots().len(), 4);
        assert_eq!(RootSystem::new(AlgebraId::G2).positive_roots().len(), 6);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn cartan_shape() {
        for alg in all_algebras() {
            let c = alg.cartan();
            for i in 0..alg.rank() {
                assert_eq!(c[i][i], 2);
                for j in 0..alg.rank() {
                    if i != j {
                        assert!(c[i][j] <= 0);
                        if alg.is_type_a() {
                            let expected = if i.abs_diff(j) == 1 { -1 } else { 0 };
                            assert_eq!(c[i][j], expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let a2 = RootSystem::new(AlgebraId::a(2));
        assert_eq!(a2.simple_reflection(1, &w(&[1, 0])).unwrap(), w(&[-1, 1]));
        assert_eq!(a2.simple_reflection(2, &w(&[1, 0])).unwrap(), w(&[1, 0]));
        let a1 = RootSystem::new(AlgebraId::a(1));
        for m in -5..=5 {
            assert_eq!(a1.simple_reflection(1, &w(&[m])).unwrap(), w(&[-m]));
        }
        assert_eq!(
            a2.simple_reflection(3, &w(&[1, 0])),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        );
        assert_eq!(
            a2.simple_reflection(0, &w(&[1, 0])),
            Err(Error::IndexOutOfRange { index: 0, rank: 2 })
        );
    }

    #[test]
    fn root_coefficient_examples() {
        let a2 = RootSystem::new(AlgebraId::a(2));
        let int = Rational::from_integer;
        assert_eq!(a2.root_coefficients(&w(&[1, 1])), vec![int(1), int(1)]);
        assert_eq!(
            a2.root_coefficients(&w(&[1, 0])),
            vec![Rational::new(2, 3), Rational::new(1, 3)]
        );
        for alg in all_algebras() {
            let rs = RootSystem::new(alg);
            let zero = Weight::zero(rs.rank());
            assert!(rs.root_coefficients(&zero).iter().all(|c| *c == int(0)));
            for (j, alpha) in rs.simple_roots().iter().enumerate() {
                let e: Vec<i64> = (0..rs.rank()).map(|k| i64::from(k == j)).collect();
                assert_eq!(rs.root_lattice_coefficients(alpha), Some(e));
            }
        }
    }

    #[test]
    fn positive_roots_have_nonnegative_integer_coefficients() {
        for alg in all_algebras() {
            let rs = RootSystem::new(alg);
            for r in rs.positive_roots() {
                let c = rs.root_lattice_coefficients(r).unwrap();
                assert!(c.iter().all(|&x| x >= 0));
                let neg = rs.root_lattice_coefficients(&-r).unwrap();
                assert!(neg.iter().all(|&x| x <= 0));
                assert!(rs.is_positive_root(r));
                assert!(!rs.is_positive_root(&-r));
            }
        }
    }

    #[test]
    fn type_a_reflection_permutes_other_positive_roots() {
        for n in 1..=5 {
            let rs = RootSystem::new(AlgebraId::a(n));
            for i in 0..n {
                let alpha = &rs.simple_roots()[i];
                assert_eq!(rs.reflect(i, alpha), -alpha);
                let others: BTreeSet<_> = rs
                    .positive_roots()
                    .iter()
                    .filter(|r| *r != alpha)
                    .cloned()
                    .collect();
                let images: BTreeSet<_> = others.iter().map(|r| rs.reflect(i, r)).collect();
                assert_eq!(others, images);
            }
        }
    }

    #[test]
    fn parse_algebra_names() {
        assert_eq!("A3".parse::<AlgebraId>().unwrap(), AlgebraId::a(3));
        assert_eq!("G2".parse::<AlgebraId>().unwrap(), AlgebraId::G2);
        assert_eq!("C2".parse::<AlgebraId>().unwrap(), AlgebraId::C2);
        assert!("A0".parse::<AlgebraId>().is_err());
        assert!("A10".parse::<AlgebraId>().is_err());
        assert!("B3".parse::<AlgebraId>().is_err());
        assert_eq!(AlgebraId::a(4).to_string(), "A4");
    }

    #[test]
    fn parse_weights() {
        assert_eq!("1,0,-2".parse::<Weight>().unwrap(), w(&[1, 0, -2]));
        assert_eq!(" 3 ".parse::<Weight>().unwrap(), w(&[3]));
        assert!("1,,2".parse::<Weight>().is_err());
        assert_eq!(w(&[1, -1]).to_string(), "(1,-1)");
    }

    #[test]
    fn first_root_is_long() {
        for alg in [AlgebraId::C2, AlgebraId::G2] {
            let c = alg.cartan();
            // |α_1|² / |α_2|² = (α_1, α_2^∨) / (α_2, α_1^∨).
            let ratio = c[1][0] / c[0][1];
            assert_eq!(ratio, if alg == AlgebraId::C2 { 2 } else { 3 });
        }
    }

    #[test]
    fn coxeter_exponents() {
        assert_eq!(AlgebraId::a(3).coxeter_exponent(0, 1), 3);
        assert_eq!(AlgebraId::a(3).coxeter_exponent(0, 2), 2);
        assert_eq!(AlgebraId::C2.coxeter_exponent(0, 1), 4);
        assert_eq!(AlgebraId::G2.coxeter_exponent(1, 0), 6);
    }

    proptest! {
        #[test]
        fn reflections_are_involutions(alg_idx in 0usize..8, labels in prop::collection::vec(-6i64..=6, 6)) {
            let alg = all_algebras()[alg_idx];
            let rs = RootSystem::new(alg);
            let mu = Weight::new(labels[..rs.rank()].to_vec());
            for i in 1..=rs.rank() {
                let once = rs.simple_reflection(i, &mu).unwrap();
                prop_assert_eq!(rs.simple_reflection(i, &once).unwrap(), mu.clone());
            }
        }
    }
}
