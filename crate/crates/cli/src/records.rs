//! JSON records for atoms, witnesses and counts.
//!
//! Objects are `serde_json::Map`, which keeps keys sorted, so the rendered
//! text is stable.

use cardshuffle_core::{
    AtomParams, AtomicOp, CountsRow, DeckSize, Level, PermSet, Permutation, Witness,
};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("malformed atom record: {0}")]
    Shape(&'static str),
    #[error(transparent)]
    Core(#[from] cardshuffle_core::Error),
    #[error("atom record outcomes {stated} do not match its parameters ({actual})")]
    Outcomes { stated: String, actual: String },
}

/// `{"kind": .., "outcomes": .., "params": {..}}`.
pub fn atom_record(atom: &AtomicOp) -> Value {
    let params = match atom.params() {
        AtomParams::Det(p) => json!({ "perm": p.to_string() }),
        AtomParams::Ss(positions) => json!({ "positions": positions }),
        AtomParams::Rc(cycle) => json!({ "cycle": cycle }),
        AtomParams::Rpc(piles) => json!({ "piles": piles }),
        AtomParams::CutSubset { cycle, offsets } => json!({ "cycle": cycle, "offsets": offsets }),
    };
    json!({
        "kind": atom.kind().name(),
        "outcomes": atom.outcomes().to_string(),
        "params": params,
    })
}

/// Inverse of [`atom_record`]. The stated outcomes must match the atom the
/// parameters describe.
pub fn atom_from_record(record: &Value, n: DeckSize) -> Result<AtomicOp, RecordError> {
    let kind = record["kind"]
        .as_str()
        .ok_or(RecordError::Shape("missing kind"))?;
    let params = &record["params"];
    let atom = match kind {
        "det" => {
            let text = params["perm"]
                .as_str()
                .ok_or(RecordError::Shape("det needs perm"))?;
            AtomicOp::det(&Permutation::parse(text, n)?)
        }
        "ss" => AtomicOp::ss(n, &positions(&params["positions"])?)?,
        "rc" => AtomicOp::rc(n, &positions(&params["cycle"])?)?,
        "rpc" => {
            let piles = params["piles"]
                .as_array()
                .ok_or(RecordError::Shape("rpc needs piles"))?
                .iter()
                .map(positions)
                .collect::<Result<Vec<_>, _>>()?;
            AtomicOp::rpc(n, &piles)?
        }
        "cut" => AtomicOp::cut_subset(
            n,
            &positions(&params["cycle"])?,
            &positions(&params["offsets"])?,
        )?,
        _ => return Err(RecordError::Shape("unknown kind")),
    };
    let stated = record["outcomes"]
        .as_str()
        .ok_or(RecordError::Shape("missing outcomes"))?;
    if PermSet::parse(stated, n)? != *atom.outcomes() {
        return Err(RecordError::Outcomes {
            stated: stated.to_owned(),
            actual: atom.outcomes().to_string(),
        });
    }
    Ok(atom)
}

fn positions(value: &Value) -> Result<Vec<u8>, RecordError> {
    value
        .as_array()
        .ok_or(RecordError::Shape("expected an array of positions"))?
        .iter()
        .map(|v| {
            v.as_u64()
                .and_then(|x| u8::try_from(x).ok())
                .ok_or(RecordError::Shape("position must be a small integer"))
        })
        .collect()
}

pub fn witness_record(witness: &Witness) -> Value {
    Value::Array(witness.steps().iter().map(atom_record).collect())
}

/// One line of `enumerate --json`.
pub fn family_line(set: &PermSet, witness: &Witness) -> Value {
    json!({ "set": set.to_string(), "witness": witness_record(witness) })
}

pub fn count_record(n: DeckSize, level: Level, count: usize) -> Value {
    json!({ "count": count, "level": level.value(), "n": n.get() })
}

pub fn table1_record(rows: &[CountsRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let total = u64::try_from(r.total).expect("closure decks have at most 4 cards");
            json!({ "levels": r.levels, "n": r.n, "total": total })
        })
        .collect();
    json!({ "rows": rows })
}

/// Compact single-line rendering.
pub fn render(value: &Value) -> String {
    serde_json::to_string(value).expect("JSON values always serialize")
}
