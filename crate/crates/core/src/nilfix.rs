//! Fixed quadrics and fixed flags of a regular unipotent subgroup, over
//! exact rationals, and a regularity classifier for `X^I` built on them.
//!
//! The unipotent subgroup is `U' = exp(t·e)` for the single-Jordan-block
//! nilpotent `e` (ones on the superdiagonal). Under `g · A = (gᵀ)⁻¹ A g⁻¹`
//! a symmetric matrix `A` is `U'`-fixed iff `eᵀA + Ae = 0`.
//!
//! The principal `sl_2` partner of `e`, the diagonal `h` with `[h, e] = 2e`,
//! and the torus weights it induces on tangent spaces are not materialised
//! here; the product formula consumes them analytically.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parabolic::SimpleSubset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut out = Self::zeros(m, m);
        for i in 0..m {
            out.set(i, i, BigRational::one());
        }
        out
    }

    /// Row-major integer rows; all rows must have equal length.
    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based entry access.
    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let prod = a * rhs.get(k, c);
                    out.entries[r * rhs.cols + c] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::SizeMismatch(
                "addition of differently sized matrices".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in 0..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column, with that
    /// free variable set to 1.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[f] = BigRational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -reduced.get(row, f).clone();
                }
                x
            })
            .collect()
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::SizeMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for c in col..n {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let cells: Vec<String> =
                    (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// The `m × m` nilpotent Jordan block with ones on the superdiagonal.
pub fn regular_nilpotent(m: usize) -> RationalMatrix {
    let mut e = RationalMatrix::zeros(m, m);
    for i in 0..m.saturating_sub(1) {
        e.set(i, i + 1, BigRational::one());
    }
    e
}

/// `eᵀA + Ae`; zero exactly when `A` is infinitesimally `U'`-fixed.
pub fn infinitesimal_fixed_condition(
    e: &RationalMatrix,
    a: &RationalMatrix,
) -> Result<RationalMatrix> {
    if !e.is_square() || !a.is_square() || e.rows() != a.rows() {
        return Err(Error::SizeMismatch(format!(
            "e is {}x{}, A is {}x{}",
            e.rows(),
            e.cols(),
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    e.transpose().mul(a)?.add(&a.mul(e)?)
}

/// The linear space of `U'`-fixed symmetric forms on an `m`-dimensional block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedQuadricSpace {
    pub block_size: usize,
    pub basis: Vec<RationalMatrix>,
    pub dimension: usize,
    /// Whether some member of the space has non-zero determinant.
    pub has_nondegenerate: bool,
}

impl FixedQuadricSpace {
    /// `Σ params[j] · basis[j]`.
    pub fn member(&self, params: &[BigRational]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.block_size, self.block_size);
        for (b, t) in self.basis.iter().zip(params) {
            out = out
                .add(&b.scale(t))
                .expect("basis matrices share the block size");
        }
        out
    }

    /// The fixed locus in the projectivised space of nondegenerate forms is
    /// empty, a single point, or positive dimensional.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.has_nondegenerate.then(|| self.dimension - 1)
    }
}

/// Upper-triangle coordinates `(r, c)` with `r <= c`, row by row.
fn symmetric_coordinates(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|r| (r..m).map(move |c| (r, c))).collect()
}

fn symmetric_unit(m: usize, r: usize, c: usize) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(m, m);
    a.set(r, c, BigRational::one());
    a.set(c, r, BigRational::one());
    a
}

/// Solves `eᵀA + Ae = 0` over symmetric `m × m` matrices by exact nullspace
/// computation and decides whether the solution space contains a
/// nondegenerate form.
pub fn fixed_quadric_space(m: usize) -> FixedQuadricSpace {
    let e = regular_nilpotent(m);
    let coords = symmetric_coordinates(m);
    // Column j of the system is the image of the j-th symmetric unit; the
    // image is symmetric, so its upper triangle carries every equation.
    let mut system = RationalMatrix::zeros(coords.len(), coords.len());
    for (j, &(r, c)) in coords.iter().enumerate() {
        let image = infinitesimal_fixed_condition(&e, &symmetric_unit(m, r, c))
            .expect("symmetric unit of matching size");
        for (row, &(rr, cc)) in coords.iter().enumerate() {
            system.set(row, j, image.get(rr, cc).clone());
        }
    }
    let basis: Vec<RationalMatrix> = system
        .nullspace()
        .into_iter()
        .map(|x| {
            let mut a = RationalMatrix::zeros(m, m);
            for (value, &(r, c)) in x.into_iter().zip(&coords) {
                a.set(r, c, value.clone());
                a.set(c, r, value);
            }
            a
        })
        .collect();
    let mut space = FixedQuadricSpace {
        block_size: m,
        dimension: basis.len(),
        basis,
        has_nondegenerate: false,
    };
    space.has_nondegenerate = determinant_not_identically_zero(&space);
    space
}

/// `det(Σ t_j B_j)` is a polynomial of degree at most `m` in each `t_j`; it
/// is the zero polynomial iff it vanishes on the grid `{0, ..., m}^d`.
fn determinant_not_identically_zero(space: &FixedQuadricSpace) -> bool {
    let d = space.dimension;
    if d == 0 {
        return space.block_size == 0;
    }
    let points = space.block_size + 1;
    let mut index = vec![0usize; d];
    loop {
        let params: Vec<BigRational> = index
            .iter()
            .map(|&k| BigRational::from_integer(BigInt::from(k)))
            .collect();
        let det = space.member(&params).determinant().expect("square member");
        if !det.is_zero() {
            return true;
        }
        // Odometer step over the grid.
        let mut pos = 0;
        loop {
            if pos == d {
                return false;
            }
            index[pos] += 1;
            if index[pos] < points {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

/// The unique partial flag of type `K^c` fixed by `U'`: the `j`-th space is
/// spanned by the first `dims[j]` standard basis vectors. The last entry is
/// always `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedFlag {
    pub n: usize,
    pub dims: Vec<usize>,
}

impl FixedFlag {
    /// Dimensions of the successive quotients `V_j / V_{j-1}`.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.dims
            .iter()
            .map(|&d| {
                let size = d - prev;
                prev = d;
                size
            })
            .collect()
    }

    /// Coordinate description, e.g. `span(e1..e2)`.
    pub fn describe(&self) -> Vec<String> {
        self.dims
            .iter()
            .map(|&d| format!("span(e1..e{d})"))
            .collect()
    }

    /// Checks `e · V_j ⊆ V_j` for every space of the flag.
    pub fn is_stable(&self) -> bool {
        let e = regular_nilpotent(self.n);
        self.dims.iter().all(|&d| {
            (0..d).all(|col| {
                let mut v = RationalMatrix::zeros(self.n, 1);
                v.set(col, 0, BigRational::one());
                let image = e.mul(&v).expect("sizes agree");
                (d..self.n).all(|r| image.get(r, 0).is_zero())
            })
        })
    }
}

fn flag_of_type(k: &SimpleSubset) -> FixedFlag {
    let n = k.n();
    let mut dims: Vec<usize> = k.complement().members().to_vec();
    if n > 0 {
        dims.push(n);
    }
    FixedFlag { n, dims }
}

/// The `U'`-fixed flag of type `K^c` for special `K`, verified `e`-stable.
pub fn fixed_flag(k: &SimpleSubset) -> Result<FixedFlag> {
    k.ensure_special()?;
    let flag = flag_of_type(k);
    if !flag.is_stable() {
        return Err(Error::InvalidInput(format!(
            "flag {:?} is not e-stable",
            flag.dims
        )));
    }
    Ok(flag)
}

/// Quotient-block sizes of the fixed flag of type `K^c`, for any `K`.
pub fn block_profile(k: &SimpleSubset) -> Vec<usize> {
    flag_of_type(k).block_sizes()
}

const ORACLE_MAX_N: usize = 4;

/// Counts flags of type `K^c` in `F_p^n` whose spaces are all stable under
/// the regular nilpotent reduced mod `p`.
///
/// `p > n` keeps `exp(e)` defined mod `p`, so `e`-stability and
/// `U'`-fixedness agree there.
pub fn fixed_flag_uniqueness_oracle(n: usize, k: &SimpleSubset, p: u64) -> Result<usize> {
    if n > ORACLE_MAX_N {
        return Err(Error::CapExceeded {
            n,
            max: ORACLE_MAX_N,
        });
    }
    if k.n() != n {
        return Err(Error::RankMismatch {
            expected: n,
            actual: k.n(),
        });
    }
    k.ensure_special()?;
    if p <= n as u64 {
        return Err(Error::PrimeTooSmall { p, n });
    }
    if !(2..p)
        .take_while(|d| d * d <= p)
        .all(|d| !p.is_multiple_of(d))
    {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let dims = k.complement().members().to_vec();
    let stable: Vec<Vec<ModSubspace>> = dims
        .iter()
        .map(|&d| {
            ModSubspace::all(n, d, p)
                .into_iter()
                .filter(ModSubspace::is_nilpotent_stable)
                .collect()
        })
        .collect();
    // Count chains V_1 ⊂ ... ⊂ V_t by dynamic programming over the levels.
    let Some(first) = stable.first() else {
        return Ok(1);
    };
    let mut counts: Vec<usize> = vec![1; first.len()];
    for level in 1..stable.len() {
        counts = stable[level]
            .iter()
            .map(|big| {
                stable[level - 1]
                    .iter()
                    .zip(&counts)
                    .filter(|(small, _)| big.contains(small))
                    .map(|(_, c)| c)
                    .sum()
            })
            .collect();
    }
    Ok(counts.iter().sum())
}

/// A subspace of `F_p^n` given by a basis in reduced row echelon form.
#[derive(Debug, Clone)]
struct ModSubspace {
    p: u64,
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl ModSubspace {
    /// Every `d`-dimensional subspace, one RREF representative each.
    fn all(n: usize, d: usize, p: u64) -> Vec<ModSubspace> {
        let mut out = Vec::new();
        for pivots in combinations(n, d) {
            // Free slots: positions right of each pivot that are not pivots.
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    (pc + 1..n)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let total = p.pow(free.len() as u32);
            for code in 0..total {
                let mut rows = vec![vec![0u64; n]; d];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = 1;
                }
                let mut rest = code;
                for &(r, c) in &free {
                    rows[r][c] = rest % p;
                    rest /= p;
                }
                out.push(ModSubspace { p, n, rows });
            }
        }
        out
    }

    fn rank_with(&self, extra: &[Vec<u64>]) -> usize {
        let mut m: Vec<Vec<u64>> = self.rows.iter().chain(extra).cloned().collect();
        rank_mod(&mut m, self.p)
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `e · v` shifts coordinates up: `(e v)_i = v_{i+1}`.
    fn is_nilpotent_stable(&self) -> bool {
        let images: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|v| {
                (0..self.n)
                    .map(|i| if i + 1 < self.n { v[i + 1] } else { 0 })
                    .collect()
            })
            .collect();
        self.rank_with(&images) == self.dim()
    }

    fn contains(&self, other: &ModSubspace) -> bool {
        self.rank_with(&other.rows) == self.dim()
    }
}

fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            go(c + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^{p-2}
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_mod(m: &mut [Vec<u64>], p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let inv = inv_mod(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && other[col] != 0 {
                let f = other[col];
                for (x, &y) in other.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        row += 1;
        if row == m.len() {
            break;
        }
    }
    row
}

/// Evidence that `X^I` has more than one `U'`-fixed point: an orbit `K ⊆ I`
/// and a quotient block of the fixed flag whose nondegenerate fixed forms
/// come in a positive-dimensional family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityWitness {
    pub k: SimpleSubset,
    /// 1-based index of the first basis vector of the block.
    pub block_start: usize,
    pub block: FixedQuadricSpace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    NotRegular(RegularityWitness),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

/// Decides whether `U'` has a unique fixed point on `X^I`.
///
/// For every `K ⊆ I` the `U'`-fixed points of the orbit `O^K` lie over the
/// unique fixed flag of type `K^c`, and a fixed point there is a choice of
/// nondegenerate fixed quadric on every quotient block. The orbit `K = ∅`
/// always contributes the standard flag; `X^I` is regular iff no other
/// orbit contributes anything. Specialness of `I` is never consulted.
pub fn regularity_classifier(i: &SimpleSubset) -> Regularity {
    let mut cache: HashMap<usize, FixedQuadricSpace> = HashMap::new();
    let mut ks = i.subsets();
    ks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for k in ks.iter().filter(|k| !k.is_empty()) {
        let sizes = block_profile(k);
        let spaces: Vec<FixedQuadricSpace> = sizes
            .iter()
            .map(|&m| {
                cache
                    .entry(m)
                    .or_insert_with(|| fixed_quadric_space(m))
                    .clone()
            })
            .collect();
        if spaces.iter().any(|s| !s.has_nondegenerate) {
            continue;
        }
        // Every block admits a nondegenerate fixed form, so O^K has fixed
        // points; since K is non-empty some block has size >= 2.
        let mut start = 1;
        for (size, space) in sizes.iter().zip(spaces) {
            if *size >= 2 {
                return Regularity::NotRegular(RegularityWitness {
                    k: k.clone(),
                    block_start: start,
                    block: space,
                });
            }
            start += size;
        }
    }
    Regularity::Regular
}
