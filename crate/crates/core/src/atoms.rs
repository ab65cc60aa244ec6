//! Atomic shuffle operations and the families that define each level.
//!
//! | level | atoms                                                        |
//! |-------|--------------------------------------------------------------|
//! | 0     | deterministic permutations                                   |
//! | 1     | level 0 + scramble of any position subset                    |
//! | 2     | level 0 + random cut along any cycle                         |
//! | 3     | level 2 + random pile cut (cyclic shift of equal piles)      |
//! | 4     | level 3 + cut restricted to chosen offsets (unequal piles)   |
//!
//! Atoms act on arbitrary positions rather than only on the top of the deck;
//! since deterministic permutations are free, this is the same as relabelling
//! a standard top-of-deck operation. [`AtomicOp::standard_form`] recovers
//! that relabelling.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, DeckSize, Permutation};
use crate::set::PermSet;

/// Position in the shuffle hierarchy, `0..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(u8);

impl Level {
    pub const ALL: [Level; 5] = [Level(0), Level(1), Level(2), Level(3), Level(4)];
    pub const MAX: Level = Level(4);

    pub fn new(value: u8) -> Result<Self> {
        if value <= 4 {
            Ok(Level(value))
        } else {
            Err(Error::UnsupportedLevel(value))
        }
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    Det,
    Ss,
    Rc,
    Rpc,
    CutSubset,
}

impl AtomKind {
    pub fn name(self) -> &'static str {
        match self {
            AtomKind::Det => "det",
            AtomKind::Ss => "ss",
            AtomKind::Rc => "rc",
            AtomKind::Rpc => "rpc",
            AtomKind::CutSubset => "cut",
        }
    }
}

/// Kind-specific parameters. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AtomParams {
    Det(Permutation),
    /// Scrambled positions, ascending.
    Ss(Vec<u8>),
    /// Ordered cycle: each card moves to the next listed position.
    Rc(Vec<u8>),
    /// Equal-size piles; a shift moves card `j` of pile `i` to card `j` of
    /// pile `i + 1` (cyclically).
    Rpc(Vec<Vec<u8>>),
    /// Ordered cycle `c` and the nonzero exponents allowed besides `c⁰`.
    CutSubset {
        cycle: Vec<u8>,
        offsets: Vec<u8>,
    },
}

/// One atomic shuffle: parameters and its outcome set (uniform over it).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicOp {
    params: AtomParams,
    outcomes: PermSet,
}

impl AtomicOp {
    pub fn det(p: &Permutation) -> Self {
        AtomicOp {
            params: AtomParams::Det(*p),
            outcomes: PermSet::singleton(p),
        }
    }

    /// Scramble of the given positions.
    pub fn ss(n: DeckSize, positions: &[u8]) -> Result<Self> {
        let mut pos = positions.to_vec();
        pos.sort_unstable();
        let mask = position_mask(n, &pos)?;
        let mut outcomes = PermSet::empty(n);
        for p in all_permutations(n) {
            if moved_mask(&p) & !mask == 0 {
                outcomes.insert(&p)?;
            }
        }
        Ok(AtomicOp {
            params: AtomParams::Ss(pos),
            outcomes,
        })
    }

    /// Random cut along the cycle `positions[0] -> positions[1] -> ...`.
    pub fn rc(n: DeckSize, cycle: &[u8]) -> Result<Self> {
        let c = Permutation::cycle(n, cycle)?;
        Ok(AtomicOp {
            params: AtomParams::Rc(cycle.to_vec()),
            outcomes: powers(&c, 0..cycle.len().max(1)),
        })
    }

    /// Random pile cut over equal-size piles.
    pub fn rpc(n: DeckSize, piles: &[Vec<u8>]) -> Result<Self> {
        let shift = pile_shift(n, piles)?;
        Ok(AtomicOp {
            params: AtomParams::Rpc(piles.to_vec()),
            outcomes: powers(&shift, 0..piles.len()),
        })
    }

    /// `{c^a : a ∈ offsets ∪ {0}}` for the cycle `c`; `offsets` must be a
    /// nonempty subset of `1..len(cycle)`.
    pub fn cut_subset(n: DeckSize, cycle: &[u8], offsets: &[u8]) -> Result<Self> {
        let c = Permutation::cycle(n, cycle)?;
        let k = cycle.len();
        let mut offs = offsets.to_vec();
        offs.sort_unstable();
        offs.dedup();
        if offs.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(&bad) = offs.iter().find(|&&a| a == 0 || a as usize >= k) {
            return Err(Error::PositionOutOfRange {
                n: k as u8 - 1,
                pos: bad as usize,
            });
        }
        let exps = core::iter::once(0).chain(offs.iter().map(|&a| a as usize));
        let outcomes = powers(&c, exps);
        Ok(AtomicOp {
            params: AtomParams::CutSubset {
                cycle: cycle.to_vec(),
                offsets: offs,
            },
            outcomes,
        })
    }

    pub fn kind(&self) -> AtomKind {
        match self.params {
            AtomParams::Det(_) => AtomKind::Det,
            AtomParams::Ss(_) => AtomKind::Ss,
            AtomParams::Rc(_) => AtomKind::Rc,
            AtomParams::Rpc(_) => AtomKind::Rpc,
            AtomParams::CutSubset { .. } => AtomKind::CutSubset,
        }
    }

    pub fn params(&self) -> &AtomParams {
        &self.params
    }

    pub fn outcomes(&self) -> &PermSet {
        &self.outcomes
    }

    pub fn deck(&self) -> DeckSize {
        self.outcomes.deck()
    }

    /// `(π, standard)` such that this atom equals `standard` relabelled by π:
    /// `outcomes = π·standard.outcomes·π⁻¹`, where `standard` acts on the top
    /// cards of the deck in their natural order. Physically: apply `π⁻¹`, the
    /// standard operation, then `π`.
    pub fn standard_form(&self) -> (Permutation, AtomicOp) {
        let n = self.deck();
        let (order, standard) = match &self.params {
            AtomParams::Det(_) => return (Permutation::identity(n), self.clone()),
            AtomParams::Ss(pos) => {
                let top: Vec<u8> = (1..=pos.len() as u8).collect();
                (pos.clone(), AtomicOp::ss(n, &top))
            }
            AtomParams::Rc(cycle) => {
                let top: Vec<u8> = (1..=cycle.len() as u8).collect();
                (cycle.clone(), AtomicOp::rc(n, &top))
            }
            AtomParams::Rpc(piles) => {
                let m = piles.first().map_or(0, Vec::len) as u8;
                let top: Vec<Vec<u8>> = (0..piles.len() as u8)
                    .map(|i| (1..=m).map(|j| i * m + j).collect())
                    .collect();
                (piles.concat(), AtomicOp::rpc(n, &top))
            }
            AtomParams::CutSubset { cycle, offsets } => {
                let top: Vec<u8> = (1..=cycle.len() as u8).collect();
                (cycle.clone(), AtomicOp::cut_subset(n, &top, offsets))
            }
        };
        let relabel = relabelling(n, &order);
        (relabel, standard.expect("standard form of a valid atom"))
    }
}

impl fmt::Display for AtomicOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind().name())?;
        match &self.params {
            AtomParams::Det(p) => write!(f, "{p}")?,
            AtomParams::Ss(pos) => write_list(f, pos, " ")?,
            AtomParams::Rc(cycle) => write_list(f, cycle, " ")?,
            AtomParams::Rpc(piles) => {
                for (i, pile) in piles.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write_list(f, pile, " ")?;
                }
            }
            AtomParams::CutSubset { cycle, offsets } => {
                write_list(f, cycle, " ")?;
                f.write_str("; ")?;
                write_list(f, offsets, ",")?;
            }
        }
        f.write_str(")")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[u8], sep: &str) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Permutation sending `i + 1` to `order[i]`, remaining positions in order.
fn relabelling(n: DeckSize, order: &[u8]) -> Permutation {
    let mut images: Vec<u8> = order.to_vec();
    let used = order.iter().fold(0u8, |m, &p| m | 1 << (p - 1));
    images.extend((1..=n.get()).filter(|p| used & (1 << (p - 1)) == 0));
    Permutation::from_images(&images).expect("relabelling is a bijection")
}

fn position_mask(n: DeckSize, positions: &[u8]) -> Result<u8> {
    let mut mask = 0u8;
    for &p in positions {
        if p == 0 || p > n.get() {
            return Err(Error::PositionOutOfRange {
                n: n.get(),
                pos: p as usize,
            });
        }
        if mask & (1 << (p - 1)) != 0 {
            return Err(Error::RepeatedPosition(p as usize));
        }
        mask |= 1 << (p - 1);
    }
    Ok(mask)
}

/// Bitmask of 0-based positions that `p` moves.
fn moved_mask(p: &Permutation) -> u8 {
    p.raw()
        .iter()
        .enumerate()
        .filter(|(i, &v)| *i as u8 != v)
        .fold(0u8, |m, (i, _)| m | 1 << i)
}

fn powers(p: &Permutation, exps: impl IntoIterator<Item = usize>) -> PermSet {
    let mut s = PermSet::empty(p.deck());
    for e in exps {
        s.insert(&p.pow(e)).expect("same deck");
    }
    s
}

fn pile_shift(n: DeckSize, piles: &[Vec<u8>]) -> Result<Permutation> {
    let m = piles.first().map_or(0, Vec::len);
    if piles.len() < 2 || m == 0 || piles.iter().any(|p| p.len() != m) {
        return Err(Error::EmptySet);
    }
    position_mask(n, &piles.concat())?;
    let mut images: Vec<u8> = (1..=n.get()).collect();
    let k = piles.len();
    for i in 0..k {
        for j in 0..m {
            images[(piles[i][j] - 1) as usize] = piles[(i + 1) % k][j];
        }
    }
    Permutation::from_images(&images)
}

/// Ordered cycles of length `k` on the deck, one per cyclic rotation class,
/// in lexicographic order of their position lists (each list starts at its
/// smallest position).
fn cycles_of_length(n: DeckSize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for subset in combinations(n.get(), k) {
        let (head, tail) = subset.split_first().expect("k >= 1");
        for arrangement in arrangements(tail) {
            let mut c = vec![*head];
            c.extend(arrangement);
            out.push(c);
        }
    }
    out
}

/// `k`-subsets of `1..=n`, lexicographic.
fn combinations(n: u8, k: usize) -> Vec<Vec<u8>> {
    fn go(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// All orderings of `items`, lexicographic when `items` is sorted.
fn arrangements(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in arrangements(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// The atoms defining `level` on an `n`-card deck, deduplicated by outcome
/// set. Order is deterministic: deterministic permutations by rank, then
/// scrambles, cuts, pile cuts and restricted cuts in the order they are
/// enumerated below. The search relies on this order for witness choice.
pub fn generate_atoms(n: DeckSize, level: Level) -> Vec<AtomicOp> {
    let mut seen = BTreeSet::new();
    let mut atoms = Vec::new();
    let mut push = |op: AtomicOp, atoms: &mut Vec<AtomicOp>| {
        if seen.insert(op.outcomes.mask()) {
            atoms.push(op);
        }
    };
    let size = n.get() as usize;

    for p in all_permutations(n) {
        push(AtomicOp::det(&p), &mut atoms);
    }
    if level.value() == 1 {
        for k in 2..=size {
            for subset in combinations(n.get(), k) {
                push(AtomicOp::ss(n, &subset).expect("valid subset"), &mut atoms);
            }
        }
    }
    if level.value() >= 2 {
        for k in 2..=size {
            for c in cycles_of_length(n, k) {
                push(AtomicOp::rc(n, &c).expect("valid cycle"), &mut atoms);
            }
        }
    }
    if level.value() >= 3 {
        for p in all_permutations(n) {
            let cycles = p.cycles();
            let k = cycles.first().map_or(0, Vec::len);
            if cycles.len() < 2 || cycles.iter().any(|c| c.len() != k) {
                continue;
            }
            // pile i holds the i-th card of every cycle
            let piles: Vec<Vec<u8>> = (0..k)
                .map(|i| cycles.iter().map(|c| c[i]).collect())
                .collect();
            push(AtomicOp::rpc(n, &piles).expect("valid piles"), &mut atoms);
        }
    }
    if level.value() >= 4 {
        for k in 2..=size {
            let nonzero: Vec<u8> = (1..k as u8).collect();
            for c in cycles_of_length(n, k) {
                for count in 1..k {
                    for offsets in combinations_of(&nonzero, count) {
                        push(
                            AtomicOp::cut_subset(n, &c, &offsets).expect("valid offsets"),
                            &mut atoms,
                        );
                    }
                }
            }
        }
    }
    atoms
}

fn combinations_of(items: &[u8], k: usize) -> Vec<Vec<u8>> {
    combinations(items.len() as u8, k)
        .into_iter()
        .map(|idx| idx.iter().map(|&i| items[(i - 1) as usize]).collect())
        .collect()
}

/// Which complexity slot an outcome set falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomCategory {
    /// A single permutation: not a shuffle at all.
    Deterministic,
    Ss,
    Rc,
    PssRpc,
    Unequal,
    Other,
}

impl AtomCategory {
    /// Index into `(a1, …, a5)`, or `None` for deterministic steps.
    pub fn slot(self) -> Option<usize> {
        match self {
            AtomCategory::Deterministic => None,
            AtomCategory::Ss => Some(0),
            AtomCategory::Rc => Some(1),
            AtomCategory::PssRpc => Some(2),
            AtomCategory::Unequal => Some(3),
            AtomCategory::Other => Some(4),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AtomCategory::Deterministic => "det",
            AtomCategory::Ss => "ss",
            AtomCategory::Rc => "rc",
            AtomCategory::PssRpc => "pss/rpc",
            AtomCategory::Unequal => "unequal",
            AtomCategory::Other => "other",
        }
    }
}

/// Classifies an outcome set as one of the physical shuffle kinds. The first
/// matching kind in the order scramble, cut, pile shuffle, unequal cut wins.
pub fn classify_atomic(s: &PermSet) -> AtomCategory {
    let n = s.deck();
    match s.len() {
        0 => return AtomCategory::Other,
        1 => return AtomCategory::Deterministic,
        _ => {}
    }
    if !s.contains_identity() {
        return AtomCategory::Other;
    }
    let members: Vec<Permutation> = s.iter().collect();

    let moved = members.iter().fold(0u8, |m, p| m | moved_mask(p));
    let moved_positions: Vec<u8> = (1..=n.get())
        .filter(|p| moved & (1 << (p - 1)) != 0)
        .collect();
    if let Ok(ss) = AtomicOp::ss(n, &moved_positions) {
        if ss.outcomes == *s {
            return AtomCategory::Ss;
        }
    }

    let generated = |g: &Permutation| powers(g, 0..g.order());
    for g in &members {
        let ct = g.cycle_type();
        if ct.len() == 1 && ct[0] as usize == s.len() && generated(g) == *s {
            return AtomCategory::Rc;
        }
    }
    for g in &members {
        let ct = g.cycle_type();
        if ct.len() >= 2
            && ct.iter().all(|&l| l == ct[0])
            && ct[0] as usize == s.len()
            && generated(g) == *s
        {
            return AtomCategory::PssRpc;
        }
    }
    if is_pile_scramble(s) {
        return AtomCategory::PssRpc;
    }

    for c in all_permutations(n) {
        let ct = c.cycle_type();
        if ct.len() == 1 {
            let group = generated(&c);
            if s.is_subset(&group) && group != *s {
                return AtomCategory::Unequal;
            }
        }
    }
    AtomCategory::Other
}

/// Whether `s` permutes `k >= 2` piles of `m >= 2` cards arbitrarily.
fn is_pile_scramble(s: &PermSet) -> bool {
    let n = s.deck();
    let size = n.get() as usize;
    for k in 2..=size {
        if (1..=k).product::<usize>() != s.len() {
            continue;
        }
        for m in 2..=size / k {
            for positions in combinations(n.get(), k * m) {
                for layout in arrangements(&positions) {
                    let piles: Vec<Vec<u8>> = layout.chunks(m).map(<[u8]>::to_vec).collect();
                    if pile_scramble_outcomes(n, &piles) == *s {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn pile_scramble_outcomes(n: DeckSize, piles: &[Vec<u8>]) -> PermSet {
    let k = piles.len();
    let mut out = PermSet::empty(n);
    let order: Vec<u8> = (0..k as u8).collect();
    for tau in arrangements(&order) {
        let mut images: Vec<u8> = (1..=n.get()).collect();
        for (i, pile) in piles.iter().enumerate() {
            let target = &piles[tau[i] as usize];
            for (j, &pos) in pile.iter().enumerate() {
                images[(pos - 1) as usize] = target[j];
            }
        }
        out.insert(&Permutation::from_images(&images).expect("pile map is a bijection"))
            .expect("same deck");
    }
    out
}
