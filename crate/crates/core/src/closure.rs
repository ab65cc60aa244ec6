//! Realizability search: which uniform permutation sets each level reaches.
//!
//! The default search is a breadth-first fixpoint over uniform sets. Starting
//! from `{id}`, a reached set `A` and an atom `B` yield `B·A` whenever that
//! product is again uniform. Because every deterministic permutation is an
//! atom, left multiplication alone covers all interleavings.
//!
//! The search runs level-synchronously: a round expands the whole frontier,
//! then merges candidates in frontier order and atom order. This is the same
//! order a FIFO queue would visit, so the parallel expansion (feature
//! `parallel`) produces bit-identical families and witnesses.
//!
//! A bounded distribution-mode search instead tracks exact distributions, so
//! it also sees sets reached through non-uniform intermediate states.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::atoms::{generate_atoms, AtomicOp, Level};
use crate::dist::{Distribution, Shuffle};
use crate::error::{Error, Result};
use crate::perm::{DeckSize, Permutation};
use crate::set::{PermSet, SymmetricGroup};

/// Largest deck the closure search accepts.
pub const MAX_CLOSURE_DECK: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Every prefix of a witness is itself uniform. Finite; runs to fixpoint.
    UniformIntermediate,
    /// Exact distributions, bounded by depth, state count and denominator.
    Distribution,
}

impl SearchMode {
    pub fn name(self) -> &'static str {
        match self {
            SearchMode::UniformIntermediate => "uniform",
            SearchMode::Distribution => "distribution",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub max_depth: Option<usize>,
    pub max_states: Option<usize>,
    pub denominator_cap: Option<u128>,
    /// Expand each frontier in parallel. Only effective with the `parallel`
    /// feature; results are identical either way.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn uniform() -> Self {
        SearchConfig {
            mode: SearchMode::UniformIntermediate,
            max_depth: None,
            max_states: None,
            denominator_cap: None,
            parallel: false,
        }
    }

    pub fn distribution(max_depth: usize, max_states: usize) -> Self {
        SearchConfig {
            mode: SearchMode::Distribution,
            max_depth: Some(max_depth),
            max_states: Some(max_states),
            denominator_cap: None,
            parallel: false,
        }
    }

    pub fn with_denominator_cap(mut self, cap: u128) -> Self {
        self.denominator_cap = Some(cap);
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == SearchMode::Distribution
            && (self.max_depth.is_none() || self.max_states.is_none())
        {
            return Err(Error::UnboundedSearch);
        }
        Ok(())
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::uniform()
    }
}

/// A sequence of atoms applied first to last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    n: DeckSize,
    steps: Vec<AtomicOp>,
}

impl Witness {
    pub fn new(n: DeckSize, steps: Vec<AtomicOp>) -> Result<Self> {
        if let Some(bad) = steps.iter().find(|s| s.deck() != n) {
            return Err(Error::DeckSizeMismatch(n.get(), bad.deck().get()));
        }
        Ok(Witness { n, steps })
    }

    pub fn deck(&self) -> DeckSize {
        self.n
    }

    pub fn steps(&self) -> &[AtomicOp] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the witness with exact convolution; see [`witness_replay`].
    pub fn replay(&self) -> Result<PermSet> {
        witness_replay(&self.steps, self.n)
    }

    /// The same shuffle written with top-of-deck operations only: every atom
    /// on other positions becomes relabel, standard operation, relabel back.
    /// Adjacent deterministic steps are merged and identities dropped.
    pub fn physical(&self) -> Witness {
        let mut out: Vec<AtomicOp> = Vec::new();
        let mut pending = Permutation::identity(self.n);
        let flush = |pending: &mut Permutation, out: &mut Vec<AtomicOp>| {
            if !pending.is_identity() {
                out.push(AtomicOp::det(pending));
            }
            *pending = Permutation::identity(pending.deck());
        };
        for step in &self.steps {
            if let crate::atoms::AtomParams::Det(p) = step.params() {
                pending = p.compose_unchecked(&pending);
                continue;
            }
            let (pi, std) = step.standard_form();
            pending = pi.inverse().compose_unchecked(&pending);
            flush(&mut pending, &mut out);
            out.push(std);
            pending = pi;
        }
        flush(&mut pending, &mut out);
        Witness {
            n: self.n,
            steps: out,
        }
    }
}

/// Applies the uniform shuffle of each step in order, starting from the
/// identity, and returns the support if the result is uniform.
pub fn witness_replay(steps: &[AtomicOp], n: DeckSize) -> Result<PermSet> {
    let mut dist = Distribution::point_mass(&Permutation::identity(n));
    for step in steps {
        let shuffle = Shuffle::uniform_over(step.outcomes())?;
        dist = Distribution::convolve(shuffle.distribution(), &dist)?;
    }
    dist.as_uniform_set().ok_or(Error::NonUniformReplay)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Node {
    parent: Option<u32>,
    atom: Option<u32>,
    depth: u32,
}

/// Result of a realizability search for one deck size and level.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    n: DeckSize,
    level: Level,
    mode: SearchMode,
    complete: bool,
    atoms: Vec<AtomicOp>,
    nodes: Vec<Node>,
    /// Distribution mode only: the state of each node.
    states: Vec<Distribution>,
    family: Vec<PermSet>,
    family_node: Vec<u32>,
    index: BTreeMap<u128, u32>,
}

impl ClosureResult {
    pub fn deck(&self) -> DeckSize {
        self.n
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }

    /// True iff the search reached a fixpoint without hitting any bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn atoms(&self) -> &[AtomicOp] {
        &self.atoms
    }

    /// Realizable sets in discovery order; `{id}` is first.
    pub fn family(&self) -> &[PermSet] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn contains(&self, s: &PermSet) -> bool {
        s.deck() == self.n && self.index.contains_key(&s.mask())
    }

    pub fn witness(&self, s: &PermSet) -> Option<Witness> {
        if s.deck() != self.n {
            return None;
        }
        let &fi = self.index.get(&s.mask())?;
        Some(self.path(self.family_node[fi as usize]))
    }

    /// The set and atom a uniform-mode set was first reached from.
    pub fn parent(&self, s: &PermSet) -> Option<(PermSet, &AtomicOp)> {
        if self.mode != SearchMode::UniformIntermediate || s.deck() != self.n {
            return None;
        }
        let &fi = self.index.get(&s.mask())?;
        let node = self.nodes[self.family_node[fi as usize] as usize];
        Some((
            self.family[node.parent? as usize],
            &self.atoms[node.atom? as usize],
        ))
    }

    /// Distribution mode: every explored state with the atoms that reach it.
    pub fn explored_states(&self) -> impl Iterator<Item = (&Distribution, Witness)> + '_ {
        self.states
            .iter()
            .enumerate()
            .map(|(i, d)| (d, self.path(i as u32)))
    }

    fn path(&self, mut node: u32) -> Witness {
        let mut steps = Vec::new();
        loop {
            let nd = self.nodes[node as usize];
            match (nd.parent, nd.atom) {
                (Some(p), Some(a)) => {
                    steps.push(self.atoms[a as usize].clone());
                    node = p;
                }
                _ => break,
            }
        }
        steps.reverse();
        Witness { n: self.n, steps }
    }

    fn push_family(&mut self, s: PermSet, node: u32) -> bool {
        if self.index.contains_key(&s.mask()) {
            return false;
        }
        self.index.insert(s.mask(), self.family.len() as u32);
        self.family.push(s);
        self.family_node.push(node);
        true
    }
}

/// Computes the family of uniform sets realizable at `level` on `n` cards.
pub fn closure(n: DeckSize, level: Level, cfg: &SearchConfig) -> Result<ClosureResult> {
    cfg.validate()?;
    if n.get() > MAX_CLOSURE_DECK {
        return Err(Error::ClosureDeckTooLarge(n.get()));
    }
    let mut result = ClosureResult {
        n,
        level,
        mode: cfg.mode,
        complete: true,
        atoms: generate_atoms(n, level),
        nodes: Vec::new(),
        states: Vec::new(),
        family: Vec::new(),
        family_node: Vec::new(),
        index: BTreeMap::new(),
    };
    match cfg.mode {
        SearchMode::UniformIntermediate => uniform_search(&mut result, cfg),
        SearchMode::Distribution => distribution_search(&mut result, cfg),
    }
    Ok(result)
}

fn uniform_search(result: &mut ClosureResult, cfg: &SearchConfig) {
    let group = SymmetricGroup::new(result.n);
    let atom_sets: Vec<PermSet> = result.atoms.iter().map(|a| *a.outcomes()).collect();

    result.nodes.push(Node {
        parent: None,
        atom: None,
        depth: 0,
    });
    result.push_family(PermSet::identity(result.n), 0);
    let mut frontier: Vec<u32> = alloc::vec![0];
    let mut depth = 0usize;

    while !frontier.is_empty() {
        let expand = |&fi: &u32| -> Vec<(u128, u32)> {
            let a = result.family[fi as usize];
            atom_sets
                .iter()
                .enumerate()
                .filter_map(|(ai, b)| {
                    group
                        .product_if_uniform(&a, b)
                        .map(|s| (s.mask(), ai as u32))
                })
                .collect()
        };
        let candidates = expand_frontier(&frontier, cfg.parallel, expand);

        if cfg.max_depth == Some(depth) {
            let fresh = candidates
                .iter()
                .flatten()
                .any(|(mask, _)| !result.index.contains_key(mask));
            if fresh {
                result.complete = false;
            }
            break;
        }

        let mut next = Vec::new();
        for (&parent, cands) in frontier.iter().zip(&candidates) {
            for &(mask, ai) in cands {
                let s = PermSet::from_mask_unchecked(result.n, mask);
                let node = result.nodes.len() as u32;
                if result.push_family(s, node) {
                    result.nodes.push(Node {
                        parent: Some(parent),
                        atom: Some(ai),
                        depth: depth as u32 + 1,
                    });
                    next.push(node);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
}

#[cfg(feature = "parallel")]
fn expand_frontier<F>(frontier: &[u32], parallel: bool, expand: F) -> Vec<Vec<(u128, u32)>>
where
    F: Fn(&u32) -> Vec<(u128, u32)> + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        frontier.par_iter().map(expand).collect()
    } else {
        frontier.iter().map(expand).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn expand_frontier<F>(frontier: &[u32], _parallel: bool, expand: F) -> Vec<Vec<(u128, u32)>>
where
    F: Fn(&u32) -> Vec<(u128, u32)>,
{
    frontier.iter().map(expand).collect()
}

fn distribution_search(result: &mut ClosureResult, cfg: &SearchConfig) {
    let max_depth = cfg.max_depth.expect("validated");
    let max_states = cfg.max_states.expect("validated");
    let atom_dists: Vec<Distribution> = result
        .atoms
        .iter()
        .map(|a| Distribution::uniform(a.outcomes()).expect("atoms are nonempty"))
        .collect();

    let start = Distribution::point_mass(&Permutation::identity(result.n));
    let mut visited: BTreeMap<Distribution, u32> = BTreeMap::new();
    visited.insert(start.clone(), 0);
    result.nodes.push(Node {
        parent: None,
        atom: None,
        depth: 0,
    });
    result.states.push(start);
    let mut frontier: Vec<u32> = alloc::vec![0];
    let mut depth = 0usize;

    'search: while !frontier.is_empty() {
        let mut next = Vec::new();
        for &node in &frontier {
            for (ai, atom) in atom_dists.iter().enumerate() {
                let out = match Distribution::convolve(atom, &result.states[node as usize]) {
                    Ok(d) => d,
                    Err(_) => {
                        result.complete = false;
                        continue;
                    }
                };
                if visited.contains_key(&out) {
                    continue;
                }
                if depth == max_depth {
                    // a new state exists beyond the depth bound
                    result.complete = false;
                    break 'search;
                }
                if cfg
                    .denominator_cap
                    .is_some_and(|cap| out.max_denominator() > cap)
                {
                    result.complete = false;
                    continue;
                }
                if result.states.len() >= max_states {
                    result.complete = false;
                    break 'search;
                }
                let id = result.states.len() as u32;
                visited.insert(out.clone(), id);
                result.nodes.push(Node {
                    parent: Some(node),
                    atom: Some(ai as u32),
                    depth: depth as u32 + 1,
                });
                result.states.push(out);
                next.push(id);
            }
        }
        frontier = next;
        depth += 1;
    }

    for i in 0..result.states.len() {
        if let Some(s) = result.states[i].as_uniform_set() {
            result.push_family(s, i as u32);
        }
    }
}

/// Closures for every level of one deck size, computed once.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    n: DeckSize,
    levels: Vec<ClosureResult>,
}

impl Hierarchy {
    pub fn new(n: DeckSize) -> Result<Self> {
        Self::with_config(n, &SearchConfig::uniform())
    }

    pub fn with_config(n: DeckSize, cfg: &SearchConfig) -> Result<Self> {
        let levels = Level::ALL
            .iter()
            .map(|&l| closure(n, l, cfg))
            .collect::<Result<Vec<_>>>()?;
        Ok(Hierarchy { n, levels })
    }

    pub fn deck(&self) -> DeckSize {
        self.n
    }

    pub fn closure(&self, level: Level) -> &ClosureResult {
        &self.levels[level.value() as usize]
    }

    pub fn membership(&self, level: Level, s: &PermSet) -> Option<Witness> {
        self.closure(level).witness(s)
    }

    /// Smallest level realizing `s`, with its witness; `None` means beyond
    /// level 4.
    pub fn min_level(&self, s: &PermSet) -> Option<(Level, Witness)> {
        Level::ALL
            .iter()
            .find_map(|&l| self.membership(l, s).map(|w| (l, w)))
    }

    pub fn counts(&self) -> [usize; 5] {
        core::array::from_fn(|i| self.levels[i].len())
    }
}

/// Witness for `s` at `level`, or `None` if `s` is not in that closure.
pub fn membership(n: DeckSize, level: Level, s: &PermSet) -> Result<Option<Witness>> {
    if s.deck() != n {
        return Err(Error::DeckSizeMismatch(n.get(), s.deck().get()));
    }
    Ok(closure(n, level, &SearchConfig::uniform())?.witness(s))
}

/// Smallest level whose closure contains `s`; `None` means beyond level 4.
pub fn min_level(n: DeckSize, s: &PermSet) -> Result<Option<Level>> {
    if s.deck() != n {
        return Err(Error::DeckSizeMismatch(n.get(), s.deck().get()));
    }
    for level in Level::ALL {
        if closure(n, level, &SearchConfig::uniform())?.contains(s) {
            return Ok(Some(level));
        }
    }
    Ok(None)
}

/// One row of the realizable-set table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountsRow {
    pub n: u8,
    pub levels: [usize; 5],
    /// Number of nonempty subsets of the symmetric group, `2^{n!} − 1`.
    pub total: u128,
}

/// Realizable-set counts for every deck size up to `max_n` and every level.
pub fn realizable_counts(max_n: DeckSize, parallel: bool) -> Result<Vec<CountsRow>> {
    if max_n.get() > MAX_CLOSURE_DECK {
        return Err(Error::ClosureDeckTooLarge(max_n.get()));
    }
    let cfg = SearchConfig::uniform().with_parallel(parallel);
    (1..=max_n.get() as usize)
        .map(|n| {
            let deck = DeckSize::new(n)?;
            let h = Hierarchy::with_config(deck, &cfg)?;
            Ok(CountsRow {
                n: n as u8,
                levels: h.counts(),
                total: (1u128 << deck.factorial()) - 1,
            })
        })
        .collect()
}

/// One separation claim: `target` is missing at `lower` but present at
/// `higher`.
#[derive(Debug, Clone)]
pub struct SeparationCheck {
    pub name: &'static str,
    pub target: PermSet,
    pub lower: Level,
    pub absent_at_lower: bool,
    pub higher: Level,
    pub witness: Option<Witness>,
    /// The witness replays exactly to `target`.
    pub replay_ok: bool,
}

impl SeparationCheck {
    pub fn passes(&self) -> bool {
        self.absent_at_lower && self.witness.is_some() && self.replay_ok
    }
}

#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub n: DeckSize,
    pub checks: Vec<SeparationCheck>,
}

impl SeparationReport {
    pub fn passes(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(SeparationCheck::passes)
    }
}

/// Separations between adjacent levels that are witnessed on `n` cards:
/// on 3 cards, the rotation group needs cuts and `{id,(1 2 3)}` needs an
/// unequal cut; on 4 cards, `{id,(1 2)(3 4)}` needs a pile cut.
pub fn verify_separations(n: DeckSize) -> Result<SeparationReport> {
    let claims: &[(&'static str, &str, u8, u8)] = match n.get() {
        3 => &[
            ("rc-beyond-ss", "{id,(1 2 3),(1 3 2)}", 1, 2),
            ("unequal-beyond-rpc", "{id,(1 2 3)}", 3, 4),
        ],
        4 => &[("rpc-beyond-rc", "{id,(1 2)(3 4)}", 2, 3)],
        other => return Err(Error::UnsupportedDeckSize(other as usize)),
    };
    let h = Hierarchy::new(n)?;
    let checks = claims
        .iter()
        .map(|&(name, target, lower, higher)| {
            let target = PermSet::parse(target, n)?;
            let lower = Level::new(lower)?;
            let higher = Level::new(higher)?;
            let witness = h.membership(higher, &target);
            let replay_ok = witness
                .as_ref()
                .is_some_and(|w| w.replay().ok() == Some(target));
            Ok(SeparationCheck {
                name,
                target,
                lower,
                absent_at_lower: !h.closure(lower).contains(&target),
                higher,
                witness,
                replay_ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeparationReport { n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn d(n: usize) -> DeckSize {
        DeckSize::new(n).unwrap()
    }

    fn l(v: u8) -> Level {
        Level::new(v).unwrap()
    }

    fn set(s: &str, n: usize) -> PermSet {
        PermSet::parse(s, d(n)).unwrap()
    }

    #[test]
    fn one_card_family_is_identity_only() {
        for level in Level::ALL {
            let r = closure(d(1), level, &SearchConfig::uniform()).unwrap();
            assert_eq!(r.family(), [PermSet::identity(d(1))]);
            assert!(r.is_complete());
        }
    }

    #[test]
    fn three_card_counts() {
        let h = Hierarchy::new(d(3)).unwrap();
        assert_eq!(h.counts(), [6, 25, 27, 27, 33]);
    }

    #[test]
    fn rotation_group_witness_is_one_cut() {
        let w = membership(d(3), l(2), &set("{id,(1 2 3),(1 3 2)}", 3))
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.steps()[0].to_string(), "rc(1 2 3)");
        assert_eq!(
            membership(d(3), l(1), &set("{id,(1 2 3),(1 3 2)}", 3)).unwrap(),
            None
        );
    }

    #[test]
    fn pile_swap_witness_expands_to_three_physical_steps() {
        let target = set("{id,(1 2)(3 4)}", 4);
        assert_eq!(membership(d(4), l(2), &target).unwrap(), None);
        let w = membership(d(4), l(3), &target).unwrap().unwrap();
        let phys = w.physical();
        let rendered: Vec<_> = phys.steps().iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, ["det((2 3))", "rpc(1 2 | 3 4)", "det((2 3))"]);
        assert_eq!(phys.replay().unwrap(), target);
    }

    #[test]
    fn min_level_examples() {
        assert_eq!(
            min_level(d(3), &set("{id,(1 2 3)}", 3)).unwrap(),
            Some(l(4))
        );
        assert_eq!(min_level(d(3), &set("{(1 3)}", 3)).unwrap(), Some(l(0)));
        assert_eq!(min_level(d(3), &set("{id,(1 2)}", 3)).unwrap(), Some(l(1)));
        assert_eq!(min_level(d(3), &set("{id,(1 2),(1 3)}", 3)).unwrap(), None);
    }

    #[test]
    fn staircase_replays_to_full_group() {
        let n = d(3);
        let steps = alloc::vec![
            AtomicOp::rc(n, &[1, 2]).unwrap(),
            AtomicOp::rc(n, &[1, 2, 3]).unwrap(),
        ];
        assert_eq!(witness_replay(&steps, n).unwrap(), PermSet::full(n));
        assert_eq!(witness_replay(&[], n).unwrap(), PermSet::identity(n));
    }

    #[test]
    fn non_uniform_replay_is_an_error() {
        let n = d(3);
        // {id,(1 2)} then {id,(1 3)} then {id,(2 3)}: 8 products over 6 perms
        let steps = alloc::vec![
            AtomicOp::rc(n, &[1, 2]).unwrap(),
            AtomicOp::rc(n, &[1, 3]).unwrap(),
            AtomicOp::rc(n, &[2, 3]).unwrap(),
        ];
        assert_eq!(witness_replay(&steps, n), Err(Error::NonUniformReplay));
    }

    #[test]
    fn closure_rejects_large_decks_and_unbounded_distribution_search() {
        assert!(matches!(
            closure(d(5), l(1), &SearchConfig::uniform()),
            Err(Error::ClosureDeckTooLarge(5))
        ));
        let cfg = SearchConfig {
            max_depth: None,
            ..SearchConfig::distribution(3, 100)
        };
        assert_eq!(
            closure(d(3), l(1), &cfg).unwrap_err(),
            Error::UnboundedSearch
        );
    }

    #[test]
    fn distribution_mode_reports_bounds() {
        // two-card scrambles keep producing new dyadic distributions
        let r = closure(d(3), l(1), &SearchConfig::distribution(2, 10_000)).unwrap();
        assert!(!r.is_complete());
        let r = closure(d(3), l(1), &SearchConfig::distribution(10, 5)).unwrap();
        assert!(!r.is_complete());
        assert_eq!(r.explored_states().count(), 5);
        // one card: nothing to explore
        let r = closure(d(1), l(4), &SearchConfig::distribution(3, 10)).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn uniform_depth_bound_marks_incomplete() {
        let cfg = SearchConfig {
            max_depth: Some(1),
            ..SearchConfig::uniform()
        };
        let r = closure(d(3), l(1), &cfg).unwrap();
        assert!(!r.is_complete());
        assert!(r.len() < 25);
    }

    #[test]
    fn separations() {
        for n in [3, 4] {
            let report = verify_separations(d(n)).unwrap();
            assert!(report.passes(), "{report:?}");
        }
        assert!(verify_separations(d(2)).is_err());
    }

    #[test]
    fn counts_up_to_three() {
        let rows = realizable_counts(d(3), false).unwrap();
        let levels: Vec<[usize; 5]> = rows.iter().map(|r| r.levels).collect();
        assert_eq!(
            levels,
            [[1, 1, 1, 1, 1], [2, 3, 3, 3, 3], [6, 25, 27, 27, 33]]
        );
        let totals: Vec<u128> = rows.iter().map(|r| r.total).collect();
        assert_eq!(totals, [1, 3, 63]);
    }
}
