//! Shuffle-complexity tuples `(a1, …, a5)` for protocols.
//!
//! Slot meanings: scrambles, cuts, pile scrambles or pile cuts, unequal
//! cuts, anything else. Counts may depend affinely on one protocol parameter
//! `n` (the number of inputs, grid size and so on).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::atoms::{classify_atomic, AtomCategory, Level};
use crate::closure::{Hierarchy, MAX_CLOSURE_DECK};
use crate::error::{syntax, Error, Result};
use crate::perm::{Cursor, DeckSize};
use crate::set::PermSet;

/// `coeff·n + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AffineCount {
    pub coeff: u32,
    pub constant: i64,
}

impl AffineCount {
    pub const ZERO: AffineCount = AffineCount {
        coeff: 0,
        constant: 0,
    };

    pub fn constant(value: i64) -> Self {
        AffineCount {
            coeff: 0,
            constant: value,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeff == 0
    }

    pub fn evaluate(&self, n: i64) -> i64 {
        self.coeff as i64 * n + self.constant
    }

    /// Parses `term (("+" | "-") term)*` with `term := int | [int] "n"`.
    pub fn parse(text: &str) -> Result<AffineCount> {
        let mut cur = Cursor::new(text);
        let mut coeff: i64 = 0;
        let mut constant: i64 = 0;
        let mut sign: i64 = 1;
        loop {
            cur.skip_ws();
            let (c, k) = parse_term(&mut cur, text)?;
            coeff = coeff
                .checked_add(sign * c)
                .ok_or_else(|| syntax(cur.pos, "coefficient too large"))?;
            constant = constant
                .checked_add(sign * k)
                .ok_or_else(|| syntax(cur.pos, "constant too large"))?;
            cur.skip_ws();
            if cur.eat(b'+') {
                sign = 1;
            } else if cur.eat(b'-') {
                sign = -1;
            } else if cur.at_end() {
                break;
            } else if matches!(cur.peek(), Some(b'*' | b'^' | b'n' | b'(')) {
                return Err(Error::Nonlinear(String::from(text)));
            } else {
                return Err(syntax(cur.pos, cur.describe_next()));
            }
        }
        if coeff < 0 {
            return Err(Error::NegativeCoefficient);
        }
        let coeff = u32::try_from(coeff).map_err(|_| syntax(0, "coefficient too large"))?;
        Ok(AffineCount { coeff, constant })
    }
}

/// Returns `(coefficient of n, constant)` for one term.
fn parse_term(cur: &mut Cursor<'_>, text: &str) -> Result<(i64, i64)> {
    let start = cur.pos;
    let number = match cur.peek() {
        Some(b'0'..=b'9') => Some(cur.number()? as i64),
        Some(b'n') => None,
        _ => return Err(syntax(start, cur.describe_next())),
    };
    cur.skip_ws();
    if cur.eat(b'n') {
        let after = cur.pos;
        cur.skip_ws();
        if matches!(cur.peek(), Some(b'n' | b'*' | b'^' | b'0'..=b'9')) {
            return Err(Error::Nonlinear(String::from(text)));
        }
        cur.pos = after;
        Ok((number.unwrap_or(1), 0))
    } else {
        Ok((0, number.expect("digit branch")))
    }
}

impl fmt::Display for AffineCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coeff {
            0 => return write!(f, "{}", self.constant),
            1 => f.write_str("n")?,
            c => write!(f, "{c}n")?,
        }
        match self.constant {
            0 => Ok(()),
            k if k > 0 => write!(f, "+{k}"),
            k => write!(f, "-{}", -k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ComplexityTuple(pub [AffineCount; 5]);

impl ComplexityTuple {
    pub fn constant(counts: [u64; 5]) -> Self {
        ComplexityTuple(counts.map(|c| AffineCount::constant(c as i64)))
    }

    pub fn parse<S: AsRef<str>>(components: &[S]) -> Result<Self> {
        if components.len() != 5 {
            return Err(syntax(
                0,
                alloc::format!("expected 5 components, got {}", components.len()),
            ));
        }
        let mut out = [AffineCount::ZERO; 5];
        for (slot, text) in out.iter_mut().zip(components) {
            *slot = AffineCount::parse(text.as_ref())?;
        }
        Ok(ComplexityTuple(out))
    }

    pub fn is_parameterized(&self) -> bool {
        self.0.iter().any(|c| !c.is_constant())
    }

    pub fn evaluate(&self, n: i64) -> Result<[u64; 5]> {
        let mut out = [0u64; 5];
        for (slot, (o, c)) in out.iter_mut().zip(&self.0).enumerate() {
            let value = c.evaluate(n);
            if value < 0 {
                return Err(Error::NegativeCount { slot, n, value });
            }
            *o = value as u64;
        }
        Ok(out)
    }
}

impl fmt::Display for ComplexityTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolRecord {
    pub name: String,
    pub reference: String,
    pub tuple: ComplexityTuple,
}

impl ProtocolRecord {
    pub fn parameterized(&self) -> bool {
        self.tuple.is_parameterized()
    }
}

/// The shuffles one protocol run performs, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleTrace {
    n: DeckSize,
    steps: Vec<PermSet>,
}

impl ShuffleTrace {
    pub fn new(n: DeckSize, steps: Vec<PermSet>) -> Result<Self> {
        for s in &steps {
            if s.deck() != n {
                return Err(Error::DeckSizeMismatch(n.get(), s.deck().get()));
            }
            if s.is_empty() {
                return Err(Error::EmptySet);
            }
        }
        Ok(ShuffleTrace { n, steps })
    }

    pub fn deck(&self) -> DeckSize {
        self.n
    }

    pub fn steps(&self) -> &[PermSet] {
        &self.steps
    }
}

/// Category of one protocol shuffle.
///
/// A step may be an atomic shuffle composed with a deterministic relabel on
/// either side, so every translate `π⁻¹·s` and `s·π⁻¹` (`π ∈ s`) is
/// classified and the lowest category wins. If that is still "other" and a
/// hierarchy is available, the step is placed by its minimal level instead;
/// "other" then means genuinely beyond level 4.
pub fn classify_step(step: &PermSet, hierarchy: Option<&Hierarchy>) -> AtomCategory {
    let mut best = classify_atomic(step);
    for pi in step.iter() {
        let inv = pi.inverse();
        for t in [step.left_mul(&inv), step.right_mul(&inv)]
            .into_iter()
            .flatten()
        {
            best = best.min(classify_atomic(&t));
        }
    }
    if best != AtomCategory::Other {
        return best;
    }
    match hierarchy.and_then(|h| h.min_level(step)) {
        Some((level, _)) => category_of_level(level),
        None => AtomCategory::Other,
    }
}

fn category_of_level(level: Level) -> AtomCategory {
    match level.value() {
        0 => AtomCategory::Deterministic,
        1 => AtomCategory::Ss,
        2 => AtomCategory::Rc,
        3 => AtomCategory::PssRpc,
        _ => AtomCategory::Unequal,
    }
}

/// Category of every step, in order. The level hierarchy is built only if
/// some step needs it and the deck has at most 4 cards.
pub fn classify_trace(trace: &ShuffleTrace) -> Result<Vec<AtomCategory>> {
    let mut hierarchy = None;
    let mut out = Vec::with_capacity(trace.steps.len());
    for step in &trace.steps {
        let mut cat = classify_step(step, None);
        if cat == AtomCategory::Other && trace.n.get() <= MAX_CLOSURE_DECK {
            if hierarchy.is_none() {
                hierarchy = Some(Hierarchy::new(trace.n)?);
            }
            cat = classify_step(step, hierarchy.as_ref());
        }
        out.push(cat);
    }
    Ok(out)
}

/// Counts the trace's shuffles per slot. Deterministic steps are not counted.
pub fn tuple_of_trace(trace: &ShuffleTrace) -> Result<ComplexityTuple> {
    Ok(tuple_of_categories(&classify_trace(trace)?))
}

pub fn tuple_of_categories(categories: &[AtomCategory]) -> ComplexityTuple {
    let mut counts = [0u64; 5];
    for slot in categories.iter().filter_map(|c| c.slot()) {
        counts[slot] += 1;
    }
    ComplexityTuple::constant(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TupleOrder {
    /// Uses no more of any kind, and fewer of some.
    Dominates,
    Dominated,
    Equal,
    Incomparable,
}

impl TupleOrder {
    pub fn name(self) -> &'static str {
        match self {
            TupleOrder::Dominates => "dominates",
            TupleOrder::Dominated => "dominated",
            TupleOrder::Equal => "equal",
            TupleOrder::Incomparable => "incomparable",
        }
    }
}

/// Pareto comparison of the evaluated tuples (fewer operations is better).
pub fn compare_tuples(a: &ComplexityTuple, b: &ComplexityTuple, n: i64) -> Result<TupleOrder> {
    let (x, y) = (a.evaluate(n)?, b.evaluate(n)?);
    let le = x.iter().zip(&y).all(|(p, q)| p <= q);
    let ge = x.iter().zip(&y).all(|(p, q)| p >= q);
    Ok(match (le, ge) {
        (true, true) => TupleOrder::Equal,
        (true, false) => TupleOrder::Dominates,
        (false, true) => TupleOrder::Dominated,
        (false, false) => TupleOrder::Incomparable,
    })
}
