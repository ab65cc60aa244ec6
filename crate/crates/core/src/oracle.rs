//! Brute-force cross-check for the closure search.
//!
//! Enumerates every atom sequence up to a depth, convolves exactly, and
//! collects the uniform results. No state is shared or deduplicated between
//! sequences, and intermediate distributions may be anything.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::atoms::{generate_atoms, Level};
use crate::closure::SearchConfig;
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::perm::{DeckSize, Permutation};
use crate::set::PermSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub family: BTreeSet<PermSet>,
    /// Number of sequences (including the empty one) evaluated.
    pub sequences: usize,
    /// The `max_states` budget ran out before all sequences were tried.
    pub partial: bool,
}

/// Every uniform set reachable by at most `cfg.max_depth` atoms of `level`,
/// evaluating at most `cfg.max_states` sequences.
pub fn oracle_search(n: DeckSize, level: Level, cfg: &SearchConfig) -> Result<OracleResult> {
    let (Some(max_depth), Some(budget)) = (cfg.max_depth, cfg.max_states) else {
        return Err(Error::UnboundedSearch);
    };
    let atoms: Vec<Distribution> = generate_atoms(n, level)
        .iter()
        .map(|a| Distribution::uniform(a.outcomes()))
        .collect::<Result<_>>()?;

    let mut out = OracleResult {
        family: BTreeSet::new(),
        sequences: 0,
        partial: false,
    };
    let start = Distribution::point_mass(&Permutation::identity(n));
    walk(
        &start,
        0,
        max_depth,
        budget,
        &atoms,
        cfg.denominator_cap,
        &mut out,
    )?;
    Ok(out)
}

fn walk(
    dist: &Distribution,
    depth: usize,
    max_depth: usize,
    budget: usize,
    atoms: &[Distribution],
    cap: Option<u128>,
    out: &mut OracleResult,
) -> Result<()> {
    if out.sequences >= budget {
        out.partial = true;
        return Ok(());
    }
    out.sequences += 1;
    if let Some(s) = dist.as_uniform_set() {
        out.family.insert(s);
    }
    if depth == max_depth {
        return Ok(());
    }
    for atom in atoms {
        let next = Distribution::convolve(atom, dist)?;
        if cap.is_some_and(|c| next.max_denominator() > c) {
            out.partial = true;
            continue;
        }
        walk(&next, depth + 1, max_depth, budget, atoms, cap, out)?;
        if out.partial && out.sequences >= budget {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cards_depth_two() {
        let n = DeckSize::new(2).unwrap();
        let r = oracle_search(
            n,
            Level::new(2).unwrap(),
            &SearchConfig::distribution(2, 1_000),
        )
        .unwrap();
        assert_eq!(r.family.len(), 3);
        assert!(!r.partial);
        // 1 + 3 + 9 sequences
        assert_eq!(r.sequences, 13);
    }

    #[test]
    fn budget_exhaustion_is_partial() {
        let n = DeckSize::new(3).unwrap();
        let r = oracle_search(
            n,
            Level::new(1).unwrap(),
            &SearchConfig::distribution(4, 50),
        )
        .unwrap();
        assert!(r.partial);
        assert_eq!(r.sequences, 50);
    }

    #[test]
    fn needs_bounds() {
        let n = DeckSize::new(3).unwrap();
        assert_eq!(
            oracle_search(n, Level::new(1).unwrap(), &SearchConfig::uniform()),
            Err(Error::UnboundedSearch)
        );
    }
}
