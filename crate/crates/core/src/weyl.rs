//! Weyl group elements, reduced words and orbits.
//!
//! A word `[i1, ..., ik]` denotes the composition `r_{i1} ∘ ... ∘ r_{ik}` acting
//! on weights, so the rightmost letter acts first. Letters are 1-based.
//!
//! `A_n` elements are stored as permutations of the `n+1` coordinates of the
//! `ε`-basis, with `r_j` swapping positions `j` and `j+1`. `C2` and `G2`
//! elements are stored as the lexicographically least reduced word.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::formal_sum::GroupAlgebraElement;
use crate::root_system::{reflect_in_place, AlgebraId, Family, RootSystem, Weight};

/// Default cap on the rank of `A_n` for full-group enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// Environment variable overriding [`DEFAULT_ENUMERATION_CAP`].
pub const MAX_RANK_ENV: &str = "WEYLPOLY_MAX_RANK";

/// Rank cap for full-group enumeration, honouring `WEYLPOLY_MAX_RANK`.
pub fn enumeration_cap() -> usize {
    std::env::var(MAX_RANK_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    /// `perm[k]` is the image of position `k` (0-based).
    Perm(Vec<u8>),
    /// Lexicographically least reduced word (1-based letters).
    Word(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    algebra: AlgebraId,
    repr: Repr,
}

struct Rank2Table {
    /// Normal-form words; `index` maps ρ-images to positions here.
    words: Vec<Vec<u8>>,
    /// Image of ρ under each element; faithful since ρ is regular.
    index: BTreeMap<Weight, usize>,
}

impl Rank2Table {
    fn build(algebra: AlgebraId) -> Self {
        let cartan = algebra.cartan();
        let rho = Weight::new(vec![1; 2]);
        let mut words = Vec::new();
        let mut index = BTreeMap::new();
        let order = algebra.weyl_order() as usize;
        let mut len = 0u32;
        while words.len() < order {
            // All words of this length in lexicographic order.
            for code in 0..(1usize << len) {
                let word: Vec<u8> = (0..len)
                    .map(|b| 1 + ((code >> (len - 1 - b)) & 1) as u8)
                    .collect();
                let image = act_by_word(&cartan, &word, &rho);
                if let std::collections::btree_map::Entry::Vacant(e) = index.entry(image) {
                    e.insert(words.len());
                    words.push(word);
                }
            }
            len += 1;
        }
        Rank2Table { words, index }
    }

    fn get(algebra: AlgebraId) -> &'static Rank2Table {
        static C2: OnceLock<Rank2Table> = OnceLock::new();
        static G2: OnceLock<Rank2Table> = OnceLock::new();
        match algebra.family() {
            Family::C2 => C2.get_or_init(|| Rank2Table::build(algebra)),
            Family::G2 => G2.get_or_init(|| Rank2Table::build(algebra)),
            Family::A => unreachable!("type A elements are permutations"),
        }
    }

    fn normalize(&self, algebra: AlgebraId, word: &[u8]) -> Vec<u8> {
        let image = act_by_word(&algebra.cartan(), word, &Weight::new(vec![1; 2]));
        self.words[self.index[&image]].clone()
    }
}

fn act_by_word(cartan: &[Vec<i64>], word: &[u8], mu: &Weight) -> Weight {
    let mut out = mu.clone();
    for &letter in word.iter().rev() {
        reflect_in_place(cartan, letter as usize - 1, out.labels_mut());
    }
    out
}

impl WeylElement {
    pub fn identity(algebra: AlgebraId) -> Self {
        let repr = match algebra.family() {
            Family::A => Repr::Perm((0..=algebra.rank() as u8).collect()),
            _ => Repr::Word(Vec::new()),
        };
        WeylElement { algebra, repr }
    }

    /// The element `r_{i1} ∘ r_{i2} ∘ ...` for a word of 1-based indices.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        for &i in word {
            rs.check_index(i)?;
        }
        let letters: Vec<u8> = word.iter().map(|&i| i as u8).collect();
        Ok(Self::from_letters(rs.algebra(), &letters))
    }

    fn from_letters(algebra: AlgebraId, letters: &[u8]) -> Self {
        let repr = match algebra.family() {
            Family::A => {
                let mut perm: Vec<u8> = (0..=algebra.rank() as u8).collect();
                for &i in letters {
                    perm.swap(i as usize - 1, i as usize);
                }
                Repr::Perm(perm)
            }
            _ => Repr::Word(Rank2Table::get(algebra).normalize(algebra, letters)),
        };
        WeylElement { algebra, repr }
    }

    /// Builds an `A_n` element from a 0-based permutation of `0..=n`.
    pub fn from_permutation(algebra: AlgebraId, perm: Vec<u8>) -> Result<Self> {
        if !algebra.is_type_a() {
            return Err(Error::UnsupportedAlgebra {
                operation: "permutation representation",
                algebra,
            });
        }
        let mut seen = vec![false; algebra.rank() + 1];
        if perm.len() != seen.len() {
            return Err(Error::RankMismatch {
                expected: seen.len(),
                found: perm.len(),
            });
        }
        for &p in &perm {
            match seen.get_mut(p as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::Malformed(format!("{perm:?} is not a permutation"))),
            }
        }
        Ok(WeylElement {
            algebra,
            repr: Repr::Perm(perm),
        })
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    /// The permutation for `A_n` elements.
    pub fn permutation(&self) -> Option<&[u8]> {
        match &self.repr {
            Repr::Perm(p) => Some(p),
            Repr::Word(_) => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        match &self.repr {
            Repr::Perm(p) => p.iter().enumerate().all(|(k, &x)| k == x as usize),
            Repr::Word(w) => w.is_empty(),
        }
    }

    pub fn length(&self) -> usize {
        match &self.repr {
            Repr::Perm(p) => {
                let mut inv = 0;
                for a in 0..p.len() {
                    for b in a + 1..p.len() {
                        if p[a] > p[b] {
                            inv += 1;
                        }
                    }
                }
                inv
            }
            Repr::Word(w) => w.len(),
        }
    }

    /// `(-1)^length`.
    pub fn det(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Group product `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(
            self.algebra, other.algebra,
            "composing elements of different Weyl groups"
        );
        let repr = match (&self.repr, &other.repr) {
            (Repr::Perm(s), Repr::Perm(t)) => {
                Repr::Perm(t.iter().map(|&k| s[k as usize]).collect())
            }
            (Repr::Word(s), Repr::Word(t)) => {
                let word: Vec<u8> = s.iter().chain(t).copied().collect();
                Repr::Word(Rank2Table::get(self.algebra).normalize(self.algebra, &word))
            }
            _ => unreachable!("representation is fixed by the algebra"),
        };
        WeylElement {
            algebra: self.algebra,
            repr,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let repr = match &self.repr {
            Repr::Perm(p) => {
                let mut inv = vec![0u8; p.len()];
                for (k, &x) in p.iter().enumerate() {
                    inv[x as usize] = k as u8;
                }
                Repr::Perm(inv)
            }
            Repr::Word(w) => {
                let rev: Vec<u8> = w.iter().rev().copied().collect();
                Repr::Word(Rank2Table::get(self.algebra).normalize(self.algebra, &rev))
            }
        };
        WeylElement {
            algebra: self.algebra,
            repr,
        }
    }

    fn times_simple(&self, i: u8) -> WeylElement {
        match &self.repr {
            Repr::Perm(p) => {
                let mut q = p.clone();
                q.swap(i as usize - 1, i as usize);
                WeylElement {
                    algebra: self.algebra,
                    repr: Repr::Perm(q),
                }
            }
            Repr::Word(_) => self.compose(&Self::from_letters(self.algebra, &[i])),
        }
    }

    /// 1-based indices `i` with `length(w r_i) < length(w)`.
    pub fn right_descents(&self) -> Vec<usize> {
        match &self.repr {
            Repr::Perm(p) => (1..p.len()).filter(|&i| p[i - 1] > p[i]).collect(),
            Repr::Word(_) => {
                let len = self.length();
                (1..=self.algebra.rank())
                    .filter(|&i| self.times_simple(i as u8).length() < len)
                    .collect()
            }
        }
    }

    /// A reduced word for this element.
    pub fn reduced_word(&self) -> Vec<usize> {
        match &self.repr {
            Repr::Perm(p) => {
                // Bubble sort; each swap of an inverted adjacent pair peels one
                // letter off the right end of the word.
                let mut p = p.clone();
                let mut letters = Vec::new();
                while let Some(i) = (1..p.len()).find(|&i| p[i - 1] > p[i]) {
                    p.swap(i - 1, i);
                    letters.push(i);
                }
                letters.reverse();
                letters
            }
            Repr::Word(w) => w.iter().map(|&i| i as usize).collect(),
        }
    }

    /// Every reduced word of this element, in lexicographic order.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.collect_reduced_words(&mut Vec::new(), &mut out);
        out.sort();
        out
    }

    fn collect_reduced_words(&self, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if self.is_identity() {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for i in self.right_descents() {
            suffix.push(i);
            self.times_simple(i as u8)
                .collect_reduced_words(suffix, out);
            suffix.pop();
        }
    }

    /// Action on a weight.
    pub fn act(&self, mu: &Weight) -> Weight {
        assert_eq!(mu.rank(), self.algebra.rank(), "weight rank mismatch");
        match &self.repr {
            Repr::Perm(p) => {
                let n = self.algebra.rank();
                let mut x = vec![0i64; n + 1];
                for k in (0..n).rev() {
                    x[k] = x[k + 1] + mu.labels()[k];
                }
                let mut y = vec![0i64; n + 1];
                for (k, &target) in p.iter().enumerate() {
                    y[target as usize] = x[k];
                }
                Weight::new((0..n).map(|k| y[k] - y[k + 1]).collect())
            }
            Repr::Word(w) => act_by_word(&self.algebra.cartan(), w, mu),
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.reduced_word();
        if word.is_empty() {
            return f.write_str("1");
        }
        for (k, i) in word.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "r{i}")?;
        }
        Ok(())
    }
}

/// All elements of the Weyl group, sorted. `A_n` is capped by
/// [`enumeration_cap`].
pub fn enumerate_group(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    enumerate_group_with_cap(rs, enumeration_cap())
}

pub fn enumerate_group_with_cap(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let algebra = rs.algebra();
    match algebra.family() {
        Family::A => {
            let n = algebra.rank();
            if n > cap {
                return Err(Error::RankLimitExceeded { rank: n, cap });
            }
            let mut out = Vec::with_capacity(algebra.weyl_order() as usize);
            let mut perm: Vec<u8> = (0..=n as u8).collect();
            loop {
                out.push(WeylElement {
                    algebra,
                    repr: Repr::Perm(perm.clone()),
                });
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            Ok(out)
        }
        _ => {
            let mut out: Vec<WeylElement> = Rank2Table::get(algebra)
                .words
                .iter()
                .map(|w| WeylElement {
                    algebra,
                    repr: Repr::Word(w.clone()),
                })
                .collect();
            out.sort();
            Ok(out)
        }
    }
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The element of maximal length.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    let algebra = rs.algebra();
    match algebra.family() {
        Family::A => WeylElement {
            algebra,
            repr: Repr::Perm((0..=algebra.rank() as u8).rev().collect()),
        },
        _ => {
            let table = Rank2Table::get(algebra);
            let word = table.words.iter().max_by_key(|w| w.len()).unwrap();
            WeylElement {
                algebra,
                repr: Repr::Word(word.clone()),
            }
        }
    }
}

/// The Weyl orbit of `lambda`, by closure under simple reflections.
pub fn orbit(rs: &RootSystem, lambda: &Weight) -> Result<BTreeSet<Weight>> {
    rs.check_weight(lambda)?;
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut frontier = vec![lambda.clone()];
    while let Some(mu) = frontier.pop() {
        for i in 0..rs.rank() {
            if mu.labels()[i] == 0 {
                continue;
            }
            let image = rs.reflect(i, &mu);
            if seen.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    Ok(seen)
}

fn require_type_a(rs: &RootSystem, operation: &'static str) -> Result<()> {
    if rs.algebra().is_type_a() {
        Ok(())
    } else {
        Err(Error::UnsupportedAlgebra {
            operation,
            algebra: rs.algebra(),
        })
    }
}

fn check_pair(rs: &RootSystem, i: usize, j: usize) -> Result<()> {
    if 1 <= i && i <= j && j <= rs.rank() {
        Ok(())
    } else {
        Err(Error::InvalidIndexPair {
            i,
            j,
            rank: rs.rank(),
        })
    }
}

/// `s_{i,j} = r_j r_{j-1} ... r_i`.
pub fn s_elem(rs: &RootSystem, i: usize, j: usize) -> Result<WeylElement> {
    require_type_a(rs, "s_{i,j}")?;
    check_pair(rs, i, j)?;
    let word: Vec<usize> = (i..=j).rev().collect();
    WeylElement::from_word(rs, &word)
}

/// `w_{i,j} = s_{i,j} + s_{i+1,j} + ... + s_{j,j} + 1` in `Z[W]`.
pub fn w_elem(rs: &RootSystem, i: usize, j: usize) -> Result<GroupAlgebraElement> {
    require_type_a(rs, "w_{i,j}")?;
    check_pair(rs, i, j)?;
    let mut out = GroupAlgebraElement::one(rs.algebra());
    for k in i..=j {
        out.add_term(s_elem(rs, k, j)?, BigInt::from(1));
    }
    Ok(out)
}

/// The product `w_{1,1} w_{1,2} ... w_{1,n}` expanded in `Z[W]`.
pub fn weyl_sum_product(rs: &RootSystem) -> Result<GroupAlgebraElement> {
    require_type_a(rs, "the Weyl-sum product")?;
    let cap = enumeration_cap();
    if rs.rank() > cap {
        return Err(Error::RankLimitExceeded {
            rank: rs.rank(),
            cap,
        });
    }
    let mut product = GroupAlgebraElement::one(rs.algebra());
    for j in 1..=rs.rank() {
        product = product.mul(&w_elem(rs, 1, j)?);
    }
    Ok(product)
}

/// Checks that `w_{1,1} ... w_{1,n}` equals the sum of all group elements,
/// each with coefficient exactly one.
pub fn verify_weyl_sum_lemma(rs: &RootSystem) -> Result<bool> {
    let product = weyl_sum_product(rs)?;
    let group = enumerate_group(rs)?;
    Ok(product.len() == group.len()
        && group
            .iter()
            .all(|w| product.coefficient(w) == BigInt::from(1)))
}
