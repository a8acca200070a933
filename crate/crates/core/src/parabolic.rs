//! Subsets of the simple reflections `[n-1]`, parabolic subgroups `W_K` and
//! minimal coset representatives `W^K`.
//!
//! Only special subsets (no two consecutive members) get the `W_K`
//! machinery; for those `W_K ≅ (Z/2)^{|K|}` and its longest element is a
//! product of commuting transpositions.

use std::fmt;

use crate::error::{Error, Result};
use crate::symmetric_group::{enumerate, Permutation};

/// A subset of `[n-1] = {1, ..., n-1}`, stored as a strictly increasing list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleSubset {
    n: usize,
    members: Vec<usize>,
}

impl SimpleSubset {
    /// Members may come in any order but must be distinct and lie in `[n-1]`.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidInput(format!("duplicate member {}", pair[0])));
            }
        }
        if let Some(&bad) = members.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                max: n.saturating_sub(1),
            });
        }
        Ok(Self { n, members })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            members: Vec::new(),
        }
    }

    /// All of `[n-1]`.
    pub fn full(n: usize) -> Self {
        Self {
            n,
            members: (1..n).collect(),
        }
    }

    fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            n,
            members: (1..n).filter(|&i| mask >> (i - 1) & 1 == 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset_of(&self, other: &SimpleSubset) -> bool {
        self.n == other.n && self.iter().all(|i| other.contains(i))
    }

    /// `[n-1] \ self`.
    pub fn complement(&self) -> SimpleSubset {
        SimpleSubset {
            n: self.n,
            members: (1..self.n).filter(|&i| !self.contains(i)).collect(),
        }
    }

    pub fn intersection(&self, other: &SimpleSubset) -> SimpleSubset {
        SimpleSubset {
            n: self.n,
            members: self.iter().filter(|&i| other.contains(i)).collect(),
        }
    }

    pub fn difference(&self, other: &SimpleSubset) -> SimpleSubset {
        SimpleSubset {
            n: self.n,
            members: self.iter().filter(|&i| !other.contains(i)).collect(),
        }
    }

    /// True iff no two members are consecutive integers.
    pub fn is_special(&self) -> bool {
        self.members.windows(2).all(|p| p[1] - p[0] >= 2)
    }

    pub fn ensure_special(&self) -> Result<()> {
        if self.is_special() {
            Ok(())
        } else {
            Err(Error::NotSpecial(self.to_string()))
        }
    }

    /// Every subset of `self`, in lexicographic order of member lists.
    pub fn subsets(&self) -> Vec<SimpleSubset> {
        let k = self.len();
        let mut out: Vec<SimpleSubset> = (0u64..1 << k)
            .map(|mask| SimpleSubset {
                n: self.n,
                members: (0..k)
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| self.members[b])
                    .collect(),
            })
            .collect();
        out.sort();
        out
    }

    /// Semicolon-joined members, empty string for `∅`.
    pub fn joined(&self, sep: &str) -> String {
        self.members
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{{{}}}", self.joined(","))
        }
    }
}

/// Free-function form of [`SimpleSubset::is_special`].
pub fn is_special(subset: &SimpleSubset) -> bool {
    subset.is_special()
}

/// All `2^{n-1}` subsets of `[n-1]` in lexicographic order.
pub fn all_subsets(n: usize) -> Vec<SimpleSubset> {
    SimpleSubset::full(n).subsets()
}

/// All special subsets of `[n-1]` in lexicographic order.
pub fn enumerate_special(n: usize) -> Vec<SimpleSubset> {
    let m = n.saturating_sub(1);
    let mut out = Vec::new();
    // Walk masks with no two adjacent bits set.
    for mask in 0u64..1 << m {
        if mask & (mask >> 1) == 0 {
            out.push(SimpleSubset::from_mask(n, mask));
        }
    }
    out.sort();
    out
}

/// `w_{0,K} = ∏_{i ∈ K} (i, i+1)`.
pub fn longest_element(k: &SimpleSubset) -> Result<Permutation> {
    k.ensure_special()?;
    let mut images: Vec<usize> = (1..=k.n()).collect();
    for i in k.iter() {
        images.swap(i - 1, i);
    }
    Permutation::new(images)
}

/// The `2^{|K|}` elements of `W_K`, one per subset of `K`.
pub fn parabolic_subgroup(k: &SimpleSubset) -> Result<Vec<Permutation>> {
    k.subsets().iter().map(longest_element).collect()
}

/// True iff `w(i) < w(i+1)` for every `i ∈ K`.
pub fn is_minimal_rep(k: &SimpleSubset, w: &Permutation) -> bool {
    w.rank() == k.n() && k.iter().all(|i| !w.has_descent_at(i))
}

/// `W^K` in lexicographic one-line order.
pub fn minimal_coset_reps(k: &SimpleSubset) -> Result<Vec<Permutation>> {
    k.ensure_special()?;
    Ok(enumerate(k.n()).filter(|w| is_minimal_rep(k, w)).collect())
}

/// Splits `w = u · x` with `u ∈ W^K` and `x ∈ W_K`.
pub fn coset_factorization(
    k: &SimpleSubset,
    w: &Permutation,
) -> Result<(Permutation, Permutation)> {
    k.ensure_special()?;
    if w.rank() != k.n() {
        return Err(Error::RankMismatch {
            expected: k.n(),
            actual: w.rank(),
        });
    }
    let descents = SimpleSubset::new(k.n(), k.iter().filter(|&i| w.has_descent_at(i)))?;
    let x = longest_element(&descents)?;
    let u = w.compose(&x)?;
    Ok((u, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(n: usize, m: &[usize]) -> SimpleSubset {
        SimpleSubset::new(n, m.iter().copied()).unwrap()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn special_predicate() {
        assert!(SimpleSubset::empty(5).is_special());
        assert!(subset(4, &[1, 3]).is_special());
        assert!(!subset(4, &[2, 3]).is_special());
        assert!(!subset(6, &[1, 3, 4]).is_special());
    }

    #[test]
    fn validation() {
        assert!(SimpleSubset::new(3, [3]).is_err());
        assert!(SimpleSubset::new(3, [0]).is_err());
        assert!(SimpleSubset::new(4, [1, 1]).is_err());
        assert_eq!(subset(5, &[3, 1]).members(), &[1, 3]);
    }

    #[test]
    fn special_enumeration_small() {
        assert_eq!(enumerate_special(1), vec![SimpleSubset::empty(1)]);
        assert_eq!(
            enumerate_special(3),
            vec![SimpleSubset::empty(3), subset(3, &[1]), subset(3, &[2])]
        );
        let four = enumerate_special(4);
        assert_eq!(four.len(), 5);
        assert!(four.contains(&subset(4, &[1, 3])));
        // agrees with brute-force filtering
        for n in 1..=8 {
            let brute: Vec<_> = all_subsets(n)
                .into_iter()
                .filter(|s| s.is_special())
                .collect();
            assert_eq!(enumerate_special(n), brute);
        }
    }

    #[test]
    fn fibonacci_counts() {
        let (mut prev, mut cur) = (1usize, 2usize);
        assert_eq!(enumerate_special(1).len(), 1);
        assert_eq!(enumerate_special(2).len(), 2);
        for n in 3..=20 {
            let next = prev + cur;
            assert_eq!(enumerate_special(n).len(), next, "n = {n}");
            prev = cur;
            cur = next;
        }
    }

    #[test]
    fn longest_elements() {
        assert!(longest_element(&SimpleSubset::empty(4))
            .unwrap()
            .is_identity());
        assert_eq!(longest_element(&subset(3, &[1])).unwrap(), perm(&[2, 1, 3]));
        assert_eq!(
            longest_element(&subset(4, &[1, 3])).unwrap(),
            perm(&[2, 1, 4, 3])
        );
        assert!(matches!(
            longest_element(&subset(3, &[1, 2])),
            Err(Error::NotSpecial(_))
        ));
    }

    #[test]
    fn coset_reps_n3() {
        let reps = minimal_coset_reps(&subset(3, &[1])).unwrap();
        assert_eq!(
            reps,
            vec![perm(&[1, 2, 3]), perm(&[1, 3, 2]), perm(&[2, 3, 1])]
        );
        assert_eq!(
            reps.iter().map(|w| w.length()).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );

        let reps = minimal_coset_reps(&subset(3, &[2])).unwrap();
        assert_eq!(
            reps,
            vec![perm(&[1, 2, 3]), perm(&[2, 1, 3]), perm(&[3, 1, 2])]
        );
        assert_eq!(
            reps.iter().map(|w| w.length()).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );

        assert_eq!(
            minimal_coset_reps(&SimpleSubset::empty(3)).unwrap().len(),
            6
        );
        assert!(minimal_coset_reps(&subset(3, &[1, 2])).is_err());
    }

    #[test]
    fn coset_rep_counts() {
        for n in 1..=7 {
            let n_fact: usize = (1..=n).product();
            for k in enumerate_special(n) {
                let reps = minimal_coset_reps(&k).unwrap();
                assert_eq!(reps.len() << k.len(), n_fact, "n = {n}, K = {k}");
            }
        }
    }

    #[test]
    fn unique_factorization_exhaustive() {
        for n in 1..=5 {
            for k in enumerate_special(n) {
                let reps = minimal_coset_reps(&k).unwrap();
                let group = parabolic_subgroup(&k).unwrap();
                for w in enumerate(n) {
                    let (u, x) = coset_factorization(&k, &w).unwrap();
                    assert!(is_minimal_rep(&k, &u));
                    assert_eq!(u.compose(&x).unwrap(), w);
                    assert_eq!(w.length(), u.length() + x.length());
                    // uniqueness: exactly one pair in W^K × W_K multiplies to w
                    let hits = reps
                        .iter()
                        .flat_map(|u| group.iter().map(move |x| u.compose(x).unwrap()))
                        .filter(|p| *p == w)
                        .count();
                    assert_eq!(hits, 1);
                }
            }
        }
    }

    #[test]
    fn subsets_of_special_are_special() {
        for n in 1..=10 {
            for i in enumerate_special(n) {
                assert!(i.subsets().iter().all(|k| k.is_special()));
            }
        }
    }

    #[test]
    fn set_algebra() {
        let i = subset(6, &[1, 3, 5]);
        let k = subset(6, &[3]);
        assert!(k.is_subset_of(&i));
        assert_eq!(i.difference(&k), subset(6, &[1, 5]));
        assert_eq!(k.complement(), subset(6, &[1, 2, 4, 5]));
        assert_eq!(i.intersection(&subset(6, &[2, 3])), k);
        assert_eq!(i.subsets().len(), 8);
        assert_eq!(i.subsets()[0], SimpleSubset::empty(6));
        assert_eq!(format!("{i}"), "{1,3,5}");
        assert_eq!(format!("{}", SimpleSubset::empty(2)), "∅");
    }
}
