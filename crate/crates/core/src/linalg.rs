//! Small exact linear algebra over the rationals.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

/// Square rational matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            entries.extend(row.iter().map(|&x| Rational::from_integer(x)));
        }
        RatMatrix { n, entries }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[&[i64]]) -> Self {
        let n = cols.len();
        let mut entries = vec![Rational::zero(); n * n];
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n, "matrix must be square");
            for (i, &x) in col.iter().enumerate() {
                entries[i * n + j] = Rational::from_integer(x);
            }
        }
        RatMatrix { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries[i * self.n + j]
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = vec![Rational::zero(); n * n];
        for i in 0..n {
            inv[i * n + i] = Rational::one();
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col];
            for k in 0..n {
                a[col * n + k] /= p;
                inv[col * n + k] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let (ack, ick) = (a[col * n + k], inv[col * n + k]);
                    a[r * n + k] -= factor * ack;
                    inv[r * n + k] -= factor * ick;
                }
            }
        }
        Some(RatMatrix { n, entries: inv })
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<Rational> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (j, &x)| acc + self.get(i, j) * x)
            })
            .collect()
    }
}

/// Returns the integer vector if every entry is integral.
pub fn to_integers(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}
