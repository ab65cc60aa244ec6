//! Subsets of the symmetric group as bitmasks over lexicographic ranks.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{syntax, Error, Result};
use crate::perm::{all_permutations, parse_perm_at, Cursor, DeckSize, Parity, Permutation};

/// A set of permutations of one deck. Bit `r` is set iff the permutation of
/// lexicographic rank `r` is a member; `5! = 120` fits in a `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermSet {
    n: DeckSize,
    mask: u128,
}

impl PermSet {
    pub fn empty(n: DeckSize) -> Self {
        PermSet { n, mask: 0 }
    }

    pub fn singleton(p: &Permutation) -> Self {
        PermSet {
            n: p.deck(),
            mask: 1u128 << p.lex_rank(),
        }
    }

    pub fn identity(n: DeckSize) -> Self {
        PermSet { n, mask: 1 }
    }

    /// The whole symmetric group.
    pub fn full(n: DeckSize) -> Self {
        PermSet {
            n,
            mask: full_mask(n),
        }
    }

    pub fn from_mask(n: DeckSize, mask: u128) -> Result<Self> {
        if mask & !full_mask(n) != 0 {
            return Err(Error::RankOutOfRange {
                n: n.get(),
                rank: 127 - mask.leading_zeros() as usize,
            });
        }
        Ok(PermSet { n, mask })
    }

    pub(crate) fn from_mask_unchecked(n: DeckSize, mask: u128) -> Self {
        PermSet { n, mask }
    }

    pub fn from_perms<'a>(
        n: DeckSize,
        perms: impl IntoIterator<Item = &'a Permutation>,
    ) -> Result<Self> {
        let mut s = PermSet::empty(n);
        for p in perms {
            s.insert(p)?;
        }
        Ok(s)
    }

    #[inline]
    pub fn deck(&self) -> DeckSize {
        self.n
    }

    #[inline]
    pub fn mask(&self) -> u128 {
        self.mask
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn insert(&mut self, p: &Permutation) -> Result<bool> {
        if p.deck() != self.n {
            return Err(Error::DeckSizeMismatch(self.n.get(), p.deck().get()));
        }
        let bit = 1u128 << p.lex_rank();
        let fresh = self.mask & bit == 0;
        self.mask |= bit;
        Ok(fresh)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.deck() == self.n && self.mask & (1u128 << p.lex_rank()) != 0
    }

    pub fn contains_identity(&self) -> bool {
        self.mask & 1 != 0
    }

    pub fn is_subset(&self, other: &PermSet) -> bool {
        self.n == other.n && self.mask & !other.mask == 0
    }

    /// Member ranks in increasing order.
    pub fn ranks(&self) -> Ranks {
        Ranks(self.mask)
    }

    /// Members in rank order.
    pub fn iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        let n = self.n;
        self.ranks()
            .map(move |r| Permutation::unrank(n, r).expect("mask bits are in range"))
    }

    /// Lowest-rank member.
    pub fn first(&self) -> Option<Permutation> {
        self.iter().next()
    }

    /// `π·S = {π∘s : s ∈ S}` (π applied after every member).
    pub fn left_mul(&self, pi: &Permutation) -> Result<PermSet> {
        self.map_members(pi, |s| pi.compose_unchecked(s))
    }

    /// `S·π = {s∘π : s ∈ S}` (π applied before every member).
    pub fn right_mul(&self, pi: &Permutation) -> Result<PermSet> {
        self.map_members(pi, |s| s.compose_unchecked(pi))
    }

    /// `π·S·π⁻¹`.
    pub fn conjugate(&self, pi: &Permutation) -> Result<PermSet> {
        let inv = pi.inverse();
        self.map_members(pi, |s| pi.compose_unchecked(s).compose_unchecked(&inv))
    }

    fn map_members(
        &self,
        pi: &Permutation,
        f: impl Fn(&Permutation) -> Permutation,
    ) -> Result<PermSet> {
        if pi.deck() != self.n {
            return Err(Error::DeckSizeMismatch(self.n.get(), pi.deck().get()));
        }
        let mut mask = 0u128;
        for s in self.iter() {
            mask |= 1u128 << f(&s).lex_rank();
        }
        Ok(PermSet { n: self.n, mask })
    }

    /// Whether the set holds an even and an odd member respectively.
    pub fn parities(&self) -> (bool, bool) {
        let mut even = false;
        let mut odd = false;
        for p in self.iter() {
            match p.parity() {
                Parity::Even => even = true,
                Parity::Odd => odd = true,
            }
        }
        (even, odd)
    }

    pub fn has_both_parities(&self) -> bool {
        self.parities() == (true, true)
    }

    /// Whether the set is closed under composition (and so a subgroup, the
    /// set being finite and nonempty).
    pub fn is_subgroup(&self) -> bool {
        if !self.contains_identity() {
            return false;
        }
        let members: Vec<Permutation> = self.iter().collect();
        members.iter().all(|a| {
            members
                .iter()
                .all(|b| self.contains(&a.compose_unchecked(b)))
        })
    }

    /// Parses `{perm, perm, ...}`; whitespace around elements is ignored and
    /// repeated elements collapse.
    pub fn parse(text: &str, n: DeckSize) -> Result<PermSet> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        if !cur.eat(b'{') {
            return Err(syntax(cur.pos, "expected '{'"));
        }
        let mut set = PermSet::empty(n);
        loop {
            cur.skip_ws();
            let p = parse_perm_at(&mut cur, n)?;
            set.insert(&p)?;
            cur.skip_ws();
            if cur.eat(b',') {
                continue;
            }
            if cur.eat(b'}') {
                break;
            }
            return Err(syntax(cur.pos, cur.describe_next()));
        }
        cur.skip_ws();
        if !cur.at_end() {
            return Err(syntax(cur.pos, "unexpected trailing input"));
        }
        Ok(set)
    }

    /// Same as the `Display` form.
    pub fn canonical_string(&self) -> String {
        alloc::format!("{self}")
    }
}

/// `{` + members in rank order, comma separated, no spaces + `}`.
impl fmt::Display for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

pub struct Ranks(u128);

impl Iterator for Ranks {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let r = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(r)
    }
}

fn full_mask(n: DeckSize) -> u128 {
    let size = n.factorial();
    if size == 128 {
        u128::MAX
    } else {
        (1u128 << size) - 1
    }
}

/// `{b∘a : a ∈ earlier, b ∈ later}` if every product has the same number of
/// factorizations (so uniform-after-uniform stays uniform), otherwise `None`.
///
/// Computed directly from compositions; [`SymmetricGroup::product_if_uniform`]
/// is the table-driven equivalent used by the search.
pub fn product_if_uniform(earlier: &PermSet, later: &PermSet) -> Result<Option<PermSet>> {
    if earlier.n != later.n {
        return Err(Error::DeckSizeMismatch(earlier.n.get(), later.n.get()));
    }
    let mut counts = [0u16; 120];
    let mut mask = 0u128;
    for b in later.iter() {
        for a in earlier.iter() {
            let r = b.compose_unchecked(&a).lex_rank();
            counts[r] += 1;
            mask |= 1u128 << r;
        }
    }
    let product = PermSet::from_mask_unchecked(earlier.n, mask);
    let expected = earlier.len() * later.len() / product.len().max(1);
    let uniform = product.ranks().all(|r| counts[r] as usize == expected);
    Ok(uniform.then_some(product))
}

/// The symmetric group on one deck with a precomputed multiplication table.
///
/// `table[b * order + a]` is the rank of `b∘a`.
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    n: DeckSize,
    elements: Vec<Permutation>,
    table: Vec<u8>,
}

impl SymmetricGroup {
    pub fn new(n: DeckSize) -> Self {
        let elements = all_permutations(n);
        let order = elements.len();
        let mut table = vec![0u8; order * order];
        for (bi, b) in elements.iter().enumerate() {
            for (ai, a) in elements.iter().enumerate() {
                table[bi * order + ai] = b.compose_unchecked(a).lex_rank() as u8;
            }
        }
        SymmetricGroup { n, elements, table }
    }

    #[inline]
    pub fn deck(&self) -> DeckSize {
        self.n
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, rank: usize) -> &Permutation {
        &self.elements[rank]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Rank of `b∘a` from ranks.
    #[inline]
    pub fn compose_ranks(&self, b: usize, a: usize) -> usize {
        self.table[b * self.elements.len() + a] as usize
    }

    /// `b·S` as a mask.
    #[inline]
    pub fn left_translate(&self, b: usize, mask: u128) -> u128 {
        let row = &self.table[b * self.elements.len()..];
        let mut out = 0u128;
        for a in Ranks(mask) {
            out |= 1u128 << row[a];
        }
        out
    }

    /// Support of `later·earlier`.
    pub fn product(&self, earlier: &PermSet, later: &PermSet) -> PermSet {
        let mut mask = 0u128;
        for b in later.ranks() {
            mask |= self.left_translate(b, earlier.mask);
        }
        PermSet::from_mask_unchecked(self.n, mask)
    }

    /// Table-driven [`product_if_uniform`].
    pub fn product_if_uniform(&self, earlier: &PermSet, later: &PermSet) -> Option<PermSet> {
        debug_assert_eq!(earlier.n, self.n);
        debug_assert_eq!(later.n, self.n);
        if later.len() == 1 {
            // deterministic translation is always uniform
            let b = later.mask.trailing_zeros() as usize;
            return Some(PermSet::from_mask_unchecked(
                self.n,
                self.left_translate(b, earlier.mask),
            ));
        }
        let order = self.elements.len();
        let mut counts = [0u8; 120];
        let mut mask = 0u128;
        for b in later.ranks() {
            let row = &self.table[b * order..(b + 1) * order];
            for a in earlier.ranks() {
                let r = row[a] as usize;
                counts[r] += 1;
                mask |= 1u128 << r;
            }
        }
        let size = mask.count_ones() as usize;
        let total = earlier.len() * later.len();
        if !total.is_multiple_of(size) {
            return None;
        }
        let expected = (total / size) as u8;
        if Ranks(mask).all(|r| counts[r] == expected) {
            Some(PermSet::from_mask_unchecked(self.n, mask))
        } else {
            None
        }
    }
}
