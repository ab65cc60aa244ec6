//! Permutations of a small deck.
//!
//! Positions are 1-based at every public surface (cycle notation, one-line
//! form accessors); the internal map is 0-based. Composition is right to
//! left: `p.compose(&q)` applies `q` first, so `(p∘q)(i) = p(q(i))`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{syntax, Error, Result};

/// Largest deck the algebra supports.
pub const MAX_DECK: u8 = 5;

/// Number of cards in a deck, `1..=5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeckSize(u8);

impl DeckSize {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_DECK as usize).contains(&n) {
            Ok(DeckSize(n as u8))
        } else {
            Err(Error::UnsupportedDeckSize(n))
        }
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    /// `n!`, the order of the symmetric group on this deck.
    pub fn factorial(self) -> usize {
        (1..=self.0 as usize).product()
    }
}

impl fmt::Display for DeckSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection on the positions of an `n`-card deck.
///
/// Slots beyond `n` in the backing array always hold the identity so that
/// derived equality and hashing are structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    n: u8,
    map: [u8; MAX_DECK as usize],
}

const IDENTITY_MAP: [u8; MAX_DECK as usize] = [0, 1, 2, 3, 4];

impl Permutation {
    pub fn identity(n: DeckSize) -> Self {
        Permutation {
            n: n.get(),
            map: IDENTITY_MAP,
        }
    }

    /// Builds a permutation from its 1-based one-line form: `images[i]` is
    /// where position `i + 1` is sent.
    pub fn from_images(images: &[u8]) -> Result<Self> {
        let n = DeckSize::new(images.len())?;
        let mut map = IDENTITY_MAP;
        let mut seen = 0u8;
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > n.get() || seen & (1 << (img - 1)) != 0 {
                return Err(Error::NotABijection(n.get()));
            }
            seen |= 1 << (img - 1);
            map[i] = img - 1;
        }
        Ok(Permutation { n: n.get(), map })
    }

    /// The permutation that cycles `positions` (1-based) in order:
    /// `positions[0] -> positions[1] -> ... -> positions[0]`.
    pub fn cycle(n: DeckSize, positions: &[u8]) -> Result<Self> {
        let mut map = IDENTITY_MAP;
        let mut seen = 0u8;
        for &p in positions {
            check_position(n, p as usize)?;
            if seen & (1 << (p - 1)) != 0 {
                return Err(Error::RepeatedPosition(p as usize));
            }
            seen |= 1 << (p - 1);
        }
        for (i, &p) in positions.iter().enumerate() {
            let next = positions[(i + 1) % positions.len()];
            map[(p - 1) as usize] = next - 1;
        }
        Ok(Permutation { n: n.get(), map })
    }

    #[inline]
    pub fn deck(&self) -> DeckSize {
        DeckSize(self.n)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Image of the 1-based position `pos`.
    pub fn image(&self, pos: u8) -> u8 {
        assert!(pos >= 1 && pos <= self.n, "position {pos} out of range");
        self.map[(pos - 1) as usize] + 1
    }

    /// The 1-based one-line form.
    pub fn images(&self) -> Vec<u8> {
        self.map[..self.n as usize].iter().map(|&x| x + 1).collect()
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u8] {
        &self.map[..self.n as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.map == IDENTITY_MAP
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n != other.n {
            return Err(Error::DeckSizeMismatch(self.n, other.n));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let mut map = IDENTITY_MAP;
        for (slot, &j) in map.iter_mut().zip(&other.map).take(self.n as usize) {
            *slot = self.map[j as usize];
        }
        Permutation { n: self.n, map }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = IDENTITY_MAP;
        for i in 0..self.n as usize {
            map[self.map[i] as usize] = i as u8;
        }
        Permutation { n: self.n, map }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.deck());
        for _ in 0..k {
            acc = self.compose_unchecked(&acc);
        }
        acc
    }

    /// Disjoint cycles of length >= 2, each starting at its smallest
    /// position, ordered by that position. Positions are 1-based.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut seen = 0u8;
        for start in 0..self.n {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = start;
            while seen & (1 << cur) == 0 {
                seen |= 1 << cur;
                cyc.push(cur + 1);
                cur = self.map[cur as usize];
            }
            if cyc.len() >= 2 {
                out.push(cyc);
            }
        }
        out
    }

    /// Lengths of the nontrivial cycles, ascending.
    pub fn cycle_type(&self) -> Vec<u8> {
        let mut lens: Vec<u8> = self.cycles().iter().map(|c| c.len() as u8).collect();
        lens.sort_unstable();
        lens
    }

    /// Smallest `k >= 1` with `self^k = id`.
    pub fn order(&self) -> usize {
        self.cycle_type()
            .iter()
            .fold(1usize, |acc, &l| num_integer::lcm(acc, l as usize))
    }

    pub fn parity(&self) -> Parity {
        // a k-cycle is a product of k - 1 transpositions
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Index of the one-line form among all permutations of the deck in
    /// lexicographic order.
    pub fn lex_rank(&self) -> usize {
        let n = self.n as usize;
        let mut rank = 0;
        let mut used = 0u8;
        for i in 0..n {
            let v = self.map[i];
            let smaller_unused = (0..v).filter(|&u| used & (1 << u) == 0).count();
            rank = rank * (n - i) + smaller_unused;
            used |= 1 << v;
        }
        rank
    }

    pub fn unrank(n: DeckSize, rank: usize) -> Result<Permutation> {
        let total = n.factorial();
        if rank >= total {
            return Err(Error::RankOutOfRange { n: n.get(), rank });
        }
        let len = n.get() as usize;
        // mixed-radix digits, most significant first
        let mut digits = [0usize; MAX_DECK as usize];
        let mut r = rank;
        for i in (0..len).rev() {
            let radix = len - i;
            digits[i] = r % radix;
            r /= radix;
        }
        let mut avail: Vec<u8> = (0..n.get()).collect();
        let mut map = IDENTITY_MAP;
        for i in 0..len {
            map[i] = avail.remove(digits[i]);
        }
        Ok(Permutation { n: n.get(), map })
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"` or `"id"`. Positions not
    /// mentioned are fixed.
    pub fn parse(text: &str, n: DeckSize) -> Result<Permutation> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let p = parse_perm_at(&mut cur, n)?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(syntax(cur.pos, "unexpected trailing input"));
        }
        Ok(p)
    }

    /// Conjugate `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        Ok(g.compose(self)?.compose_unchecked(&g.inverse()))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[n={}; {}]", self.n, self)
    }
}

/// Canonical disjoint-cycle form; the identity prints as `id`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn check_position(n: DeckSize, pos: usize) -> Result<()> {
    if pos == 0 || pos > n.get() as usize {
        Err(Error::PositionOutOfRange { n: n.get(), pos })
    } else {
        Ok(())
    }
}

pub(crate) struct Cursor<'a> {
    bytes: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    pub(crate) fn bump(&mut self) {
        self.pos += 1;
    }

    pub(crate) fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn skip_ws(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
        self.pos - start
    }

    pub(crate) fn starts_with(&self, s: &str) -> bool {
        self.bytes[self.pos..].starts_with(s.as_bytes())
    }

    /// Unsigned decimal literal.
    pub(crate) fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as usize))
                .ok_or_else(|| syntax(start, "number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(syntax(start, "expected a number"));
        }
        Ok(value)
    }

    pub(crate) fn describe_next(&self) -> String {
        match self.peek() {
            Some(b) => alloc::format!("unexpected character {:?}", b as char),
            None => String::from("unexpected end of input"),
        }
    }
}

/// `perm := "id" | cycle+`, `cycle := "(" int (WS int)+ ")"`. Whitespace is
/// allowed between cycles but not inside the parentheses.
pub(crate) fn parse_perm_at(cur: &mut Cursor<'_>, n: DeckSize) -> Result<Permutation> {
    if cur.starts_with("id") {
        cur.pos += 2;
        return Ok(Permutation::identity(n));
    }
    if cur.peek() != Some(b'(') {
        return Err(syntax(cur.pos, "expected 'id' or '('"));
    }
    let mut map = IDENTITY_MAP;
    let mut seen = 0u8;
    let mut first = true;
    loop {
        if !first {
            let save = cur.pos;
            cur.skip_ws();
            if cur.peek() != Some(b'(') {
                cur.pos = save;
                break;
            }
        }
        first = false;
        let open = cur.pos;
        cur.bump();
        let mut cyc: Vec<u8> = Vec::new();
        loop {
            let v = cur.number()?;
            if v == 0 || v > n.get() as usize {
                return Err(Error::PositionOutOfRange { n: n.get(), pos: v });
            }
            let bit = 1u8 << (v - 1);
            if seen & bit != 0 {
                return Err(Error::RepeatedPosition(v));
            }
            seen |= bit;
            cyc.push(v as u8 - 1);
            if cur.eat(b')') {
                break;
            }
            if cur.skip_ws() == 0 {
                return Err(syntax(cur.pos, cur.describe_next()));
            }
        }
        if cyc.len() < 2 {
            return Err(syntax(open, "a cycle needs at least two positions"));
        }
        for (i, &p) in cyc.iter().enumerate() {
            map[p as usize] = cyc[(i + 1) % cyc.len()];
        }
    }
    Ok(Permutation { n: n.get(), map })
}

/// Every permutation of the deck, in lexicographic (rank) order.
pub fn all_permutations(n: DeckSize) -> Vec<Permutation> {
    (0..n.factorial())
        .map(|r| Permutation::unrank(n, r).expect("rank in range"))
        .collect()
}
