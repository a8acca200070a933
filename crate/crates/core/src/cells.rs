//! Torus fixed points and plus cells of the complete quadrics `X` and of
//! the subvarieties `X^I`.
//!
//! The fixed points in the orbit indexed by a special `K` are the minimal
//! coset representatives `w ∈ W^K`. Each carries an R-set
//!
//! ```text
//! R_K(w) = { i ∉ K : w(α_i + w_{0,K}(α_i)) < 0 }
//! ```
//!
//! where `< 0` means the first non-zero ε-coefficient is negative. The plus
//! cell of `(K, w)` has dimension `ℓ(w) + |K| + |R_K(w)|` in `X`, and
//! `ℓ(w) + |K| + |R_K(w) ∩ I|` once intersected with `X^I`.
//!
//! Cell dimensions are not symmetric under `i ↦ n - i`; only the summed
//! polynomials for mirrored `I` agree.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::parabolic::{
    enumerate_special, is_minimal_rep, longest_element, minimal_coset_reps, SimpleSubset,
};
use crate::qpoly::{product_formula, q_factorial, QPolynomial};
use crate::symmetric_group::{Permutation, WeightVector};

/// One torus fixed point `(K, w)` with its cell data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRecord {
    pub k: SimpleSubset,
    pub w: Permutation,
    pub r_set: SimpleSubset,
    pub dim_in_x: usize,
    /// Present when the record was produced for a target `I ⊇ K`.
    pub dim_in_xi: Option<usize>,
}

fn check_rep(k: &SimpleSubset, w: &Permutation) -> Result<()> {
    k.ensure_special()?;
    if w.rank() != k.n() {
        return Err(Error::RankMismatch {
            expected: k.n(),
            actual: w.rank(),
        });
    }
    if !is_minimal_rep(k, w) {
        return Err(Error::NotMinimalRep(w.to_string(), k.to_string()));
    }
    Ok(())
}

fn check_pair(k: &SimpleSubset, i: &SimpleSubset) -> Result<()> {
    i.ensure_special()?;
    if !k.is_subset_of(i) {
        return Err(Error::SubsetViolation {
            k: k.to_string(),
            i: i.to_string(),
        });
    }
    Ok(())
}

/// Precomputed `α_i + w_{0,K}(α_i)` for every `i ∉ K`.
struct TestVectors {
    vectors: Vec<(usize, WeightVector)>,
}

impl TestVectors {
    fn new(k: &SimpleSubset) -> Result<Self> {
        let n = k.n();
        let w0k = longest_element(k)?;
        let vectors = k
            .complement()
            .iter()
            .map(|i| {
                let alpha = WeightVector::simple_root(i, n)?;
                let flipped = alpha.act(&w0k)?;
                Ok((i, &alpha + &flipped))
            })
            .collect::<Result<_>>()?;
        Ok(Self { vectors })
    }

    fn r_set(&self, n: usize, w: &Permutation) -> Result<SimpleSubset> {
        let mut members = Vec::new();
        for (i, v) in &self.vectors {
            if v.act(w)?.is_negative() {
                members.push(*i);
            }
        }
        SimpleSubset::new(n, members)
    }
}

/// `R_K(w)` for special `K` and `w ∈ W^K`.
pub fn r_set(k: &SimpleSubset, w: &Permutation) -> Result<SimpleSubset> {
    check_rep(k, w)?;
    TestVectors::new(k)?.r_set(k.n(), w)
}

/// `s_{K,I}(w) = |R_K(w) ∩ (I - K)|`.
pub fn s_value(k: &SimpleSubset, i: &SimpleSubset, w: &Permutation) -> Result<usize> {
    check_pair(k, i)?;
    let r = r_set(k, w)?;
    Ok(r.intersection(&i.difference(k)).len())
}

/// Dimension of the plus cell of `(K, w)` in `X`.
pub fn plus_cell_dim(k: &SimpleSubset, w: &Permutation) -> Result<usize> {
    let r = r_set(k, w)?;
    Ok(w.length() + k.len() + r.len())
}

/// Dimension of the plus cell of `(K, w)` inside `X^I`:
/// `dim C⁺ - |I^c ∩ R_K(w)|`.
pub fn cell_dim_in_subvariety(
    k: &SimpleSubset,
    w: &Permutation,
    i: &SimpleSubset,
) -> Result<usize> {
    check_pair(k, i)?;
    let r = r_set(k, w)?;
    let dropped = i.complement().intersection(&r).len();
    Ok(w.length() + k.len() + r.len() - dropped)
}

/// Histogram of `exponent(w)` over `W^K`, split across `jobs` workers.
fn sum_over_reps<F>(k: &SimpleSubset, jobs: usize, exponent: F) -> Result<QPolynomial>
where
    F: Fn(&Permutation) -> Result<usize> + Sync,
{
    let reps = minimal_coset_reps(k)?;
    let histogram = |chunk: &[Permutation]| -> Result<Vec<u64>> {
        let mut counts = Vec::new();
        for w in chunk {
            let e = exponent(w)?;
            if counts.len() <= e {
                counts.resize(e + 1, 0);
            }
            counts[e] += 1;
        }
        Ok(counts)
    };
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        if a.len() < b.len() {
            a.resize(b.len(), 0);
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    let counts = if jobs <= 1 || reps.len() < 2 {
        histogram(&reps)?
    } else {
        let chunk = reps.len().div_ceil(jobs);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| {
            reps.par_chunks(chunk)
                .map(histogram)
                .collect::<Result<Vec<_>>>()
                .map(|parts| parts.into_iter().fold(Vec::new(), merge))
        })?
    };
    Ok(QPolynomial::new(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// The `K`-addend `Σ_{w ∈ W^K} q^{ℓ(w) + |K| + s_{K,I}(w)}`.
pub fn k_addend(k: &SimpleSubset, i: &SimpleSubset) -> Result<QPolynomial> {
    k_addend_with_jobs(k, i, 1)
}

pub fn k_addend_with_jobs(k: &SimpleSubset, i: &SimpleSubset, jobs: usize) -> Result<QPolynomial> {
    check_pair(k, i)?;
    let tests = TestVectors::new(k)?;
    let extra = i.difference(k);
    sum_over_reps(k, jobs, |w| {
        let r = tests.r_set(k.n(), w)?;
        Ok(w.length() + k.len() + r.intersection(&extra).len())
    })
}

/// Poincaré polynomial of `X^I` as the double sum over `K ⊆ I`, `w ∈ W^K`.
pub fn poincare_sum(i: &SimpleSubset) -> Result<QPolynomial> {
    poincare_sum_with_jobs(i, 1)
}

pub fn poincare_sum_with_jobs(i: &SimpleSubset, jobs: usize) -> Result<QPolynomial> {
    i.ensure_special()?;
    i.subsets()
        .iter()
        .map(|k| k_addend_with_jobs(k, i, jobs))
        .sum()
}

/// Poincaré polynomial of the full variety `X_n`: every special `K` and
/// every `w ∈ W^K`, weighted by the plus-cell dimension in `X`. Non-special
/// orbits hold no torus fixed points.
pub fn poincare_full_variety(n: usize) -> Result<QPolynomial> {
    poincare_full_variety_with_jobs(n, 1)
}

pub fn poincare_full_variety_with_jobs(n: usize, jobs: usize) -> Result<QPolynomial> {
    enumerate_special(n)
        .iter()
        .map(|k| {
            let tests = TestVectors::new(k)?;
            sum_over_reps(k, jobs, |w| {
                Ok(w.length() + k.len() + tests.r_set(n, w)?.len())
            })
        })
        .sum()
}

/// Sum over cells equals the product formula.
pub fn verify_km(i: &SimpleSubset) -> Result<bool> {
    Ok(poincare_sum(i)? == product_formula(i)?)
}

pub fn verify_km_with_jobs(i: &SimpleSubset, jobs: usize) -> Result<bool> {
    Ok(poincare_sum_with_jobs(i, jobs)? == product_formula(i)?)
}

/// Checks the per-`K` closed form with denominators cleared:
///
/// ```text
/// addend_K · (1+q²)^k · (1+q)^l = q^k · (1+q²)^l · [n]_q!
/// ```
///
/// with `k = |K|`, `l = |I|`.
pub fn per_k_closed_form_check(k: &SimpleSubset, i: &SimpleSubset) -> Result<bool> {
    let addend = k_addend(k, i)?;
    let one_plus_q2 = QPolynomial::from_i64s(&[1, 0, 1]);
    let one_plus_q = QPolynomial::from_i64s(&[1, 1]);
    let (kk, ll) = (k.len() as u32, i.len() as u32);
    let lhs = &(&addend * &one_plus_q2.pow(kk)) * &one_plus_q.pow(ll);
    let rhs = &(&QPolynomial::monomial(k.len()) * &one_plus_q2.pow(ll)) * &q_factorial(i.n());
    Ok(lhs == rhs)
}

/// `s_{K,I}(w) = |(I - K) ∩ Des_R(w)|` for every `w ∈ W^K`.
pub fn descent_characterization_check(k: &SimpleSubset, i: &SimpleSubset) -> Result<bool> {
    check_pair(k, i)?;
    let extra = i.difference(k);
    for w in minimal_coset_reps(k)? {
        let by_descents = extra.iter().filter(|&j| w.has_descent_at(j)).count();
        if s_value(k, i, &w)? != by_descents {
            return Ok(false);
        }
    }
    Ok(true)
}

fn records_for(k: &SimpleSubset, target: Option<&SimpleSubset>) -> Result<Vec<CellRecord>> {
    let tests = TestVectors::new(k)?;
    let dropped_from = target.map(|i| i.complement());
    minimal_coset_reps(k)?
        .into_iter()
        .map(|w| {
            let r = tests.r_set(k.n(), &w)?;
            let dim_in_x = w.length() + k.len() + r.len();
            let dim_in_xi = dropped_from
                .as_ref()
                .map(|ic| dim_in_x - ic.intersection(&r).len());
            Ok(CellRecord {
                k: k.clone(),
                w,
                r_set: r,
                dim_in_x,
                dim_in_xi,
            })
        })
        .collect()
}

/// One record per `(K, w)` with `K ⊆ I`, `w ∈ W^K`, in canonical order.
pub fn fixed_points(i: &SimpleSubset) -> Result<Vec<CellRecord>> {
    i.ensure_special()?;
    let mut out = Vec::new();
    for k in i.subsets() {
        out.extend(records_for(&k, Some(i))?);
    }
    Ok(out)
}

/// Every torus fixed point of the full variety `X_n`; `dim_in_xi` is unset.
pub fn full_variety_fixed_points(n: usize) -> Result<Vec<CellRecord>> {
    let mut out = Vec::new();
    for k in enumerate_special(n) {
        out.extend(records_for(&k, None)?);
    }
    Ok(out)
}

/// Betti numbers `b_{2k}` of `X^I`, position `k`.
pub fn betti(i: &SimpleSubset) -> Result<Vec<BigInt>> {
    Ok(poincare_sum(i)?.coeffs().to_vec())
}
