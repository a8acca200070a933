//! The symmetric group `S_n` in one-line notation and its action on the
//! ε-basis lattice `Z^n`.
//!
//! All indices are 1-based: position `i` of a permutation stores `w(i)`,
//! and simple reflections, roots and descents are numbered `1..n`.
//! Composition is `(u ∘ v)(i) = u(v(i))`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation, checking that the
    /// images form a bijection of `1..=n`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotPermutation { n, images });
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `w_0 = (n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        Self {
            images: (1..=n).rev().collect(),
        }
    }

    /// The adjacent transposition `s_i = (i, i+1)` in `S_n`.
    pub fn simple_reflection(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: n.saturating_sub(1),
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Self { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for 1-based `i`.
    ///
    /// Panics if `i` is outside `1..=n`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// Number of inversions `(i, j)` with `i < j` and `w(i) > w(j)`.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions `i` with `w(i) > w(i+1)`, in increasing order.
    pub fn right_descents(&self) -> Vec<usize> {
        self.images
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[0] > pair[1])
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn has_descent_at(&self, i: usize) -> bool {
        i >= 1 && i < self.rank() && self.images[i - 1] > self.images[i]
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_rank(self.rank(), other.rank())?;
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.rank()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x - 1] = k + 1;
        }
        Permutation { images }
    }

    /// `w · s_i`, which swaps the entries at positions `i` and `i+1`.
    pub fn times_simple(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank().saturating_sub(1),
            });
        }
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// Lexicographic successor in one-line order, or `None` for `w_0`.
    pub fn next_lex(&self) -> Option<Permutation> {
        let mut images = self.images.clone();
        let n = images.len();
        if n < 2 {
            return None;
        }
        let mut i = n - 1;
        while i > 0 && images[i - 1] > images[i] {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        let mut j = n - 1;
        while images[j] < images[i - 1] {
            j -= 1;
        }
        images.swap(i - 1, j);
        images[i..].reverse();
        Some(Permutation { images })
    }

    /// The permutation of lexicographic rank `rank` (0-based) among all of
    /// `S_n`. Used to split enumeration into rank intervals.
    pub fn from_lex_rank(n: usize, mut rank: u128) -> Result<Permutation> {
        let total = factorial_u128(n);
        if rank >= total {
            return Err(Error::InvalidInput(format!("rank {rank} >= {n}!")));
        }
        let mut pool: Vec<usize> = (1..=n).collect();
        let mut images = Vec::with_capacity(n);
        for k in (0..n).rev() {
            let block = factorial_u128(k);
            let idx = (rank / block) as usize;
            rank %= block;
            images.push(pool.remove(idx));
        }
        Ok(Permutation { images })
    }

    /// One-line notation without separators for `n <= 9`, space separated
    /// otherwise.
    pub fn compact(&self) -> String {
        let sep = if self.rank() <= 9 { "" } else { " " };
        self.images
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn check_rank(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::RankMismatch { expected, actual });
    }
    Ok(())
}

/// Streams all of `S_n` in lexicographic one-line order.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        self.next = current.next_lex();
        Some(current)
    }
}

/// All `n!` permutations, starting with the identity and ending with `w_0`.
pub fn enumerate(n: usize) -> Permutations {
    Permutations {
        next: Some(Permutation::identity(n)),
    }
}

/// Lexicographic enumeration starting at (and including) `start`.
pub fn enumerate_from(start: Permutation) -> Permutations {
    Permutations { next: Some(start) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// An integer combination `Σ c_i ε_i`; `coeffs[i-1]` is the coefficient of `ε_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    coeffs: Vec<i64>,
}

impl WeightVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![0; n] }
    }

    /// `ε_i` in rank `n`.
    pub fn basis(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let mut coeffs = vec![0; n];
        coeffs[i - 1] = 1;
        Ok(Self { coeffs })
    }

    /// `α_i = ε_i - ε_{i+1}`.
    pub fn simple_root(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: n.saturating_sub(1),
            });
        }
        let mut coeffs = vec![0; n];
        coeffs[i - 1] = 1;
        coeffs[i] = -1;
        Ok(Self { coeffs })
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Sign of the first non-zero coefficient.
    pub fn sign(&self) -> Sign {
        match self.coeffs.iter().find(|&&c| c != 0) {
            None => Sign::Zero,
            Some(c) => match c.cmp(&0) {
                Ordering::Greater => Sign::Positive,
                Ordering::Less => Sign::Negative,
                Ordering::Equal => unreachable!(),
            },
        }
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    /// `w · v` under `w · ε_i = ε_{w(i)}`.
    pub fn act(&self, w: &Permutation) -> Result<WeightVector> {
        check_rank(w.rank(), self.rank())?;
        let mut coeffs = vec![0; self.rank()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[w.images[k] - 1] = c;
        }
        Ok(WeightVector { coeffs })
    }

    fn zip_with(&self, other: &WeightVector, f: impl Fn(i64, i64) -> i64) -> WeightVector {
        assert_eq!(
            self.rank(),
            other.rank(),
            "weight vectors of different rank"
        );
        WeightVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// Free-function form of [`WeightVector::act`].
pub fn act(w: &Permutation, v: &WeightVector) -> Result<WeightVector> {
    v.act(w)
}

/// Height `j - i` of the positive root `ε_i - ε_j`.
pub fn height(i: usize, j: usize) -> Result<usize> {
    if i == 0 {
        return Err(Error::IndexOutOfRange { index: i, max: j });
    }
    if j <= i {
        return Err(Error::IndexOutOfRange { index: j, max: i });
    }
    Ok(j - i)
}

impl Add for &WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: &WeightVector) -> WeightVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;

    fn sub(self, rhs: &WeightVector) -> WeightVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;

    fn neg(self) -> WeightVector {
        WeightVector {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
