//! Exact probability distributions over permutations and their convolution.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Zero};

use crate::error::{Error, Result};
use crate::perm::{DeckSize, Permutation};
use crate::set::PermSet;

/// Exact probability. Denominators stay products of shuffle sizes, so `u128`
/// covers any realistic search depth; overflow is reported, never wrapped.
pub type Prob = Ratio<u128>;

/// Probability map over the permutations of one deck, keyed by rank.
///
/// Entries are sorted by rank, reduced, and strictly positive, so two equal
/// distributions are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distribution {
    n: DeckSize,
    probs: Vec<(u8, Prob)>,
}

impl Distribution {
    pub fn point_mass(p: &Permutation) -> Self {
        Distribution {
            n: p.deck(),
            probs: vec![(p.lex_rank() as u8, Prob::one())],
        }
    }

    pub fn uniform(s: &PermSet) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let p = Prob::new(1, s.len() as u128);
        Ok(Distribution {
            n: s.deck(),
            probs: s.ranks().map(|r| (r as u8, p)).collect(),
        })
    }

    /// Builds a distribution from `(permutation, weight)` pairs; weights for
    /// repeated permutations add up and zero weights are dropped. The total is
    /// not required to be one.
    pub fn from_weights<'a>(
        n: DeckSize,
        weights: impl IntoIterator<Item = (&'a Permutation, Prob)>,
    ) -> Result<Self> {
        let mut acc = vec![Prob::zero(); n.factorial()];
        for (p, w) in weights {
            if p.deck() != n {
                return Err(Error::DeckSizeMismatch(n.get(), p.deck().get()));
            }
            let slot = &mut acc[p.lex_rank()];
            *slot = slot.checked_add(&w).ok_or(Error::Overflow)?;
        }
        Ok(Self::from_dense(n, acc))
    }

    fn from_dense(n: DeckSize, dense: Vec<Prob>) -> Self {
        let probs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(r, p)| (r as u8, p))
            .collect();
        Distribution { n, probs }
    }

    #[inline]
    pub fn deck(&self) -> DeckSize {
        self.n
    }

    /// `(rank, probability)` pairs in rank order.
    pub fn entries(&self) -> &[(u8, Prob)] {
        &self.probs
    }

    pub fn probability(&self, p: &Permutation) -> Prob {
        if p.deck() != self.n {
            return Prob::zero();
        }
        let r = p.lex_rank() as u8;
        self.probs
            .binary_search_by_key(&r, |(k, _)| *k)
            .map(|i| self.probs[i].1)
            .unwrap_or_else(|_| Prob::zero())
    }

    pub fn support(&self) -> PermSet {
        let mask = self.probs.iter().fold(0u128, |m, (r, _)| m | 1u128 << r);
        PermSet::from_mask_unchecked(self.n, mask)
    }

    pub fn total(&self) -> Result<Prob> {
        self.probs
            .iter()
            .try_fold(Prob::zero(), |acc, (_, p)| acc.checked_add(p))
            .ok_or(Error::Overflow)
    }

    /// The support, if every member carries the same probability.
    pub fn as_uniform_set(&self) -> Option<PermSet> {
        let first = self.probs.first()?.1;
        self.probs
            .iter()
            .all(|(_, p)| *p == first)
            .then(|| self.support())
    }

    pub fn max_denominator(&self) -> u128 {
        self.probs
            .iter()
            .map(|(_, p)| *p.denom())
            .max()
            .unwrap_or(1)
    }

    /// Distribution of `b∘a` for independent `b ~ later`, `a ~ earlier`.
    pub fn convolve(later: &Distribution, earlier: &Distribution) -> Result<Distribution> {
        if later.n != earlier.n {
            return Err(Error::DeckSizeMismatch(later.n.get(), earlier.n.get()));
        }
        let n = later.n;
        let mut dense = vec![Prob::zero(); n.factorial()];
        let earlier_perms: Vec<(Permutation, Prob)> = earlier
            .probs
            .iter()
            .map(|&(r, p)| {
                (
                    Permutation::unrank(n, r as usize).expect("rank in range"),
                    p,
                )
            })
            .collect();
        for &(br, bp) in &later.probs {
            let b = Permutation::unrank(n, br as usize).expect("rank in range");
            for (a, ap) in &earlier_perms {
                let w = bp.checked_mul(ap).ok_or(Error::Overflow)?;
                let slot = &mut dense[b.compose_unchecked(a).lex_rank()];
                *slot = slot.checked_add(&w).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self::from_dense(n, dense))
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (r, p)) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let perm = Permutation::unrank(self.n, *r as usize).map_err(|_| fmt::Error)?;
            write!(f, "{perm}: {p}")?;
        }
        f.write_str("}")
    }
}

/// A shuffle: an outcome set together with a distribution over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    support: PermSet,
    dist: Distribution,
}

impl Shuffle {
    /// The uniform shuffle over `s`.
    pub fn uniform_over(s: &PermSet) -> Result<Self> {
        Ok(Shuffle {
            support: *s,
            dist: Distribution::uniform(s)?,
        })
    }

    pub fn deterministic(p: &Permutation) -> Self {
        Shuffle {
            support: PermSet::singleton(p),
            dist: Distribution::point_mass(p),
        }
    }

    pub fn from_distribution(dist: Distribution) -> Result<Self> {
        if dist.entries().is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Shuffle {
            support: dist.support(),
            dist,
        })
    }

    pub fn support(&self) -> &PermSet {
        &self.support
    }

    pub fn distribution(&self) -> &Distribution {
        &self.dist
    }

    pub fn is_uniform(&self) -> bool {
        self.dist.as_uniform_set().is_some()
    }
}

/// Applies `earlier` and then `later`.
pub fn convolve(later: &Shuffle, earlier: &Shuffle) -> Result<Distribution> {
    Distribution::convolve(&later.dist, &earlier.dist)
}
