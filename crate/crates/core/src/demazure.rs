//! Demazure operators on `Z[P]` and the operator products built from them.
//!
//! Products of operators are compositions: in `X Y` the right factor `Y`
//! acts first. This is the reading under which `D_{1,1} D_{1,2} ... D_{1,n}`
//! applied to `e^λ` yields the Weyl polytope sum, e.g. for `A2`:
//!
//! ```text
//! D_{1,2}(e^(1,0))             = e^(1,0) + e^(0,-1)
//! D_{1,1}(e^(1,0) + e^(0,-1))  = e^(1,0) + e^(-1,1) + e^(0,-1)
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::root_system::{Family, RootSystem, Weight};
use crate::weyl::{longest_element, WeylElement};

/// One factor of an operator word. Indices are 1-based simple-root indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// Simple reflection `r_i` acting on exponents.
    Reflect(usize),
    /// Demazure operator `D_i`.
    Demazure(usize),
    /// Modified Demazure operator `d_i = D_i - 1`.
    Modified(usize),
}

impl Atom {
    pub fn index(&self) -> usize {
        match *self {
            Atom::Reflect(i) | Atom::Demazure(i) | Atom::Modified(i) => i,
        }
    }

    pub fn apply(&self, rs: &RootSystem, f: &FormalSum) -> Result<FormalSum> {
        match *self {
            Atom::Reflect(i) => {
                rs.check_index(i)?;
                check_sum(rs, f)?;
                Ok(f.map_weights(|mu| rs.reflect(i - 1, mu)))
            }
            Atom::Demazure(i) => demazure(rs, i, f),
            Atom::Modified(i) => modified_demazure(rs, i, f),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Reflect(i) => write!(f, "r{i}"),
            Atom::Demazure(i) => write!(f, "D{i}"),
            Atom::Modified(i) => write!(f, "d{i}"),
        }
    }
}

/// A product of atoms, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OperatorWord(Vec<Atom>);

impl OperatorWord {
    pub fn new(atoms: Vec<Atom>) -> Self {
        OperatorWord(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn apply(&self, rs: &RootSystem, f: &FormalSum) -> Result<FormalSum> {
        check_sum(rs, f)?;
        let mut out = f.clone();
        for atom in self.0.iter().rev() {
            out = atom.apply(rs, &out)?;
        }
        Ok(out)
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated atoms `r<i>`, `D<i>` and `d<i>`.
pub fn parse_operator_expression(rs: &RootSystem, text: &str) -> Result<OperatorWord> {
    let mut atoms = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        let mut chars = token.chars();
        let kind = chars.next().expect("token is nonempty");
        let digits = chars.as_str();
        let syntax = |message: String| Error::Syntax { offset, message };
        let index = if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            digits
                .parse::<usize>()
                .map_err(|_| syntax(format!("index in {token:?} is too large")))?
        } else {
            return Err(syntax(format!(
                "malformed atom {token:?}: expected r<i>, D<i> or d<i>"
            )));
        };
        let atom = match kind {
            'r' => Atom::Reflect(index),
            'D' => Atom::Demazure(index),
            'd' => Atom::Modified(index),
            _ => {
                return Err(syntax(format!(
                    "malformed atom {token:?}: expected r<i>, D<i> or d<i>"
                )))
            }
        };
        rs.check_index(index)?;
        atoms.push(atom);
        offset += end;
        rest = &trimmed[end..];
    }
    Ok(OperatorWord(atoms))
}

fn check_sum(rs: &RootSystem, f: &FormalSum) -> Result<()> {
    if f.rank() == rs.rank() {
        Ok(())
    } else {
        Err(Error::RankMismatch {
            expected: rs.rank(),
            found: f.rank(),
        })
    }
}

/// `D_i` on one term `c e^μ`, accumulated into `out`.
fn demazure_term(rs: &RootSystem, idx: usize, mu: &Weight, c: &BigInt, out: &mut FormalSum) {
    let alpha = &rs.simple_roots()[idx];
    let m = mu.labels()[idx];
    if m >= 0 {
        // e^μ + e^{μ-α} + ... + e^{r_i μ}
        for k in 0..=m {
            out.add_term(mu.add_scaled(alpha, -k), c.clone());
        }
    } else {
        // Empty for m = -1; otherwise -(e^{μ+α} + ... + e^{r_i(μ+α)}).
        let neg = -c;
        for k in 1..=(-m - 1) {
            out.add_term(mu.add_scaled(alpha, k), neg.clone());
        }
    }
}

/// The Demazure operator `D_i`, by its closed piecewise action on exponentials.
pub fn demazure(rs: &RootSystem, i: usize, f: &FormalSum) -> Result<FormalSum> {
    rs.check_index(i)?;
    check_sum(rs, f)?;
    let mut out = FormalSum::zero(rs.rank());
    for (mu, c) in f.terms() {
        demazure_term(rs, i - 1, mu, c, &mut out);
    }
    Ok(out)
}

/// The modified operator `d_i = D_i - 1`.
pub fn modified_demazure(rs: &RootSystem, i: usize, f: &FormalSum) -> Result<FormalSum> {
    let mut out = demazure(rs, i, f)?;
    out.add_scaled(f, &BigInt::from(-1));
    Ok(out)
}

/// `D_w`, applying `D_i` along a reduced word of `w`, rightmost letter first.
pub fn demazure_w(rs: &RootSystem, w: &WeylElement, f: &FormalSum) -> Result<FormalSum> {
    demazure_along_word(rs, &w.reduced_word(), f)
}

/// Applies `D_{i1} ... D_{ik}` for a given word, rightmost letter first.
pub fn demazure_along_word(rs: &RootSystem, word: &[usize], f: &FormalSum) -> Result<FormalSum> {
    let mut out = f.clone();
    for &i in word.iter().rev() {
        out = demazure(rs, i, &out)?;
    }
    Ok(out)
}

/// The character `ch_λ = D_{w_L}(e^λ)`.
pub fn character_demazure(rs: &RootSystem, lambda: &Weight) -> Result<FormalSum> {
    rs.check_dominant(lambda)?;
    demazure_w(
        rs,
        &longest_element(rs),
        &FormalSum::monomial(lambda.clone()),
    )
}

/// `D_{i,j} = Σ_{k=i}^{j} (r_j ... r_{k+1}) d_k + 1` for `A_n`.
pub fn generalized_demazure(
    rs: &RootSystem,
    i: usize,
    j: usize,
    f: &FormalSum,
) -> Result<FormalSum> {
    if rs.algebra().family() != Family::A {
        return Err(Error::UnsupportedAlgebra {
            operation: "generalized Demazure operator",
            algebra: rs.algebra(),
        });
    }
    if !(1 <= i && i <= j && j <= rs.rank()) {
        return Err(Error::InvalidIndexPair {
            i,
            j,
            rank: rs.rank(),
        });
    }
    check_sum(rs, f)?;
    let mut out = f.clone();
    for k in i..=j {
        let mut term = modified_demazure(rs, k, f)?;
        // r_j r_{j-1} ... r_{k+1}: r_{k+1} acts first.
        for m in k + 1..=j {
            term = term.map_weights(|mu| rs.reflect(m - 1, mu));
        }
        out.add_scaled(&term, &BigInt::from(1));
    }
    Ok(out)
}

/// `D_{1,1} D_{1,2} ... D_{1,n} (e^λ)`, with `D_{1,n}` applied first.
pub fn brion_demazure_product(rs: &RootSystem, lambda: &Weight) -> Result<FormalSum> {
    if rs.algebra().family() != Family::A {
        return Err(Error::UnsupportedAlgebra {
            operation: "the A_n Demazure product",
            algebra: rs.algebra(),
        });
    }
    rs.check_dominant(lambda)?;
    let mut out = FormalSum::monomial(lambda.clone());
    for j in (1..=rs.rank()).rev() {
        out = generalized_demazure(rs, 1, j, &out)?;
    }
    Ok(out)
}

use Atom::{Modified as Md, Reflect as R};

/// Terms of the right factor for C2 (the left factor is `1 + d2`).
const C2_RIGHT: &[&[Atom]] = &[&[], &[Md(1)], &[R(1), Md(2)], &[R(1), R(2), Md(1)]];

const G2_RIGHT: &[&[Atom]] = &[
    &[],
    &[Md(1)],
    &[R(1), Md(2)],
    &[R(1), R(2), Md(1)],
    &[R(1), R(2), R(1), Md(2)],
    &[R(1), R(2), R(1), R(2), Md(1)],
];

const RANK2_LEFT: &[&[Atom]] = &[&[], &[Md(2)]];

fn apply_operator_sum(rs: &RootSystem, terms: &[&[Atom]], f: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(f.rank());
    for atoms in terms {
        let word = OperatorWord(atoms.to_vec());
        out.add_scaled(&word.apply(rs, f)?, &BigInt::from(1));
    }
    Ok(out)
}

/// The explicit Brion operators for C2 and G2 (α₁ long), right factor first:
///
/// ```text
/// C2: (1 + d2)(1 + d1 + r1 d2 + r1 r2 d1)
/// G2: (1 + d2)(1 + d1 + r1 d2 + r1 r2 d1 + r1 r2 r1 d2 + r1 r2 r1 r2 d1)
/// ```
///
/// The C2 operator equals the polytope sum for every dominant weight. The G2
/// operator does not: as an element of the twisted group algebra its
/// coefficient on `r1 r2` carries `1 - e^{-α1-α2}` where the Brion operator
/// needs `1 - e^{-α1-2α2}`. For `λ = (1,0)` it misses `e^(1,-2)`, `e^0` and `e^(-1,2)`.
pub fn brion_rank2(rs: &RootSystem, lambda: &Weight) -> Result<FormalSum> {
    let right = match rs.algebra().family() {
        Family::C2 => C2_RIGHT,
        Family::G2 => G2_RIGHT,
        Family::A => {
            return Err(Error::UnsupportedAlgebra {
                operation: "the rank-2 Brion operator",
                algebra: rs.algebra(),
            })
        }
    };
    rs.check_dominant(lambda)?;
    let inner = apply_operator_sum(rs, right, &FormalSum::monomial(lambda.clone()))?;
    apply_operator_sum(rs, RANK2_LEFT, &inner)
}
