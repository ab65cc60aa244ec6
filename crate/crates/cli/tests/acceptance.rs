//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use cardshuffle::{bundled_corpus, load_corpus, serialize_corpus};
use cardshuffle_core::perm::all_permutations;
use cardshuffle_core::{
    closure, oracle_search, DeckSize, Distribution, Hierarchy, Level, PermSet, Permutation,
    SearchConfig, Witness,
};

type Check = Result<(), String>;
type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn d(n: usize) -> DeckSize {
    DeckSize::new(n).unwrap()
}

fn l(v: u8) -> Level {
    Level::new(v).unwrap()
}

fn set(text: &str, n: usize) -> PermSet {
    PermSet::parse(text, d(n)).unwrap()
}

fn bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cardshuffle"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn within(limit: Duration, start: Instant) -> Check {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

/// Replays uniform steps with integer weights: the result is uniform iff all
/// weights agree.
fn replay_weights(w: &Witness) -> Option<PermSet> {
    let n = w.deck();
    let mut weights = BTreeMap::from([(Permutation::identity(n).images(), 1u64)]);
    for step in w.steps() {
        let mut next = BTreeMap::new();
        for (a, wa) in &weights {
            for b in step.outcomes().iter() {
                let c: Vec<u8> = a.iter().map(|&i| b.image(i)).collect();
                *next.entry(c).or_insert(0u64) += wa;
            }
        }
        weights = next;
    }
    let first = *weights.values().next()?;
    if weights.values().any(|&x| x != first) {
        return None;
    }
    let perms: Vec<Permutation> = weights
        .keys()
        .map(|im| Permutation::from_images(im).unwrap())
        .collect();
    Some(PermSet::from_perms(n, perms.iter()).unwrap())
}

fn table1() -> Check {
    let start = Instant::now();
    let text = String::from_utf8(bin(&["table1", "--max-n", "4"])?).unwrap();
    within(Duration::from_secs(60), start)?;
    let rows: Vec<Vec<u64>> = text
        .lines()
        .skip(1)
        .map(|line| {
            line.split_whitespace()
                .map(|c| c.parse().unwrap())
                .collect()
        })
        .collect();
    let expected: Vec<Vec<u64>> = vec![
        vec![1, 1, 1, 1, 1, 1, 1],
        vec![2, 2, 3, 3, 3, 3, 3],
        vec![3, 6, 25, 27, 27, 33, 63],
        vec![4, 24, 564, 1231, 2307, 18249, 16_777_215],
    ];
    ensure(rows == expected, || format!("got\n{text}"))
}

fn separation(n: usize, target: &str, lower: u8, higher: u8, limit: Duration) -> Check {
    let start = Instant::now();
    let s = set(target, n);
    let low = closure(d(n), l(lower), &SearchConfig::uniform()).map_err(|e| e.to_string())?;
    let high = closure(d(n), l(higher), &SearchConfig::uniform()).map_err(|e| e.to_string())?;
    ensure(!low.contains(&s), || {
        format!("{target} present at level {lower}")
    })?;
    let w = high
        .witness(&s)
        .ok_or_else(|| format!("{target} absent at level {higher}"))?;
    within(limit, start)?;
    ensure(w.replay().ok() == Some(s), || {
        format!("witness {w:?} does not replay")
    })?;
    ensure(w.physical().replay().ok() == Some(s), || {
        "physical witness does not replay".into()
    })?;
    ensure(replay_weights(&w) == Some(s), || {
        format!("integer replay of {w:?} disagrees")
    })
}

fn level2_delta() -> Check {
    let h = Hierarchy::new(d(3)).map_err(|e| e.to_string())?;
    let l1: BTreeSet<PermSet> = h.closure(l(1)).family().iter().copied().collect();
    let l2: BTreeSet<PermSet> = h.closure(l(2)).family().iter().copied().collect();
    let delta: BTreeSet<PermSet> = l2.difference(&l1).copied().collect();
    let expected = BTreeSet::from([
        set("{id,(1 2 3),(1 3 2)}", 3),
        set("{(1 2),(1 3),(2 3)}", 3),
    ]);
    ensure(delta == expected, || format!("delta {delta:?}"))
}

fn corpus() -> Check {
    let records = bundled_corpus();
    let expected = [
        ("Five-card trick", "(0,1,0,0,0)"),
        ("Six-card AND", "(0,0,1,0,0)"),
        ("Four-card XOR", "(0,0,1,0,0)"),
        ("Four-card AND", "(1,0,1,0,0)"),
        ("Eight-card majority", "(0,0,2,0,0)"),
        ("Five-card AND", "(3,0,1,2,0)"),
        ("Six-card equality", "(0,1,0,0,0)"),
        ("Six-card majority", "(0,1,1,0,0)"),
        ("2n-card equality", "(0,0,n-1,0,0)"),
        ("Sudoku ZKP (Protocol A)", "(n,0,4n,0,0)"),
        ("Sudoku ZKP (Protocol B)", "(2n,0,2n,0,0)"),
        ("Sudoku ZKP (Protocol C)", "(3n,0,1,0,0)"),
    ];
    let got: Vec<(String, String)> = records
        .iter()
        .map(|r| (r.name.clone(), r.tuple.to_string()))
        .collect();
    let want: Vec<(String, String)> = expected
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    ensure(got == want, || format!("{got:?}"))?;
    let parameterized: Vec<&str> = records
        .iter()
        .filter(|r| r.parameterized())
        .map(|r| r.name.as_str())
        .collect();
    ensure(parameterized.len() == 4, || format!("{parameterized:?}"))?;
    let again = load_corpus(&serialize_corpus(&records)).map_err(|e| e.to_string())?;
    ensure(again == records, || "round trip changed records".into())?;
    let eq = &records[8];
    let at9 = eq.tuple.evaluate(9).map_err(|e| e.to_string())?;
    ensure(at9 == [0, 0, 8, 0, 0], || format!("{at9:?}"))
}

fn properties() -> Check {
    let hierarchies: Vec<Hierarchy> = (1..=4).map(|n| Hierarchy::new(d(n)).unwrap()).collect();

    // (a) nesting
    for h in &hierarchies {
        for pair in Level::ALL.windows(2) {
            let (lo, hi) = (h.closure(pair[0]), h.closure(pair[1]));
            ensure(lo.family().iter().all(|s| hi.contains(s)), || {
                format!("(a) n={} {} not within {}", h.deck(), pair[0], pair[1])
            })?;
        }
    }

    // (b) conjugation and translation invariance, (e) witness replay
    for h in &hierarchies {
        let perms = all_permutations(h.deck());
        for level in Level::ALL {
            let r = h.closure(level);
            for s in r.family() {
                for pi in &perms {
                    for t in [s.conjugate(pi), s.left_mul(pi), s.right_mul(pi)] {
                        ensure(r.contains(&t.unwrap()), || {
                            format!("(b) n={} {level}: {s} moved by {pi}", h.deck())
                        })?;
                    }
                }
                let w = r.witness(s).unwrap();
                ensure(w.replay().ok() == Some(*s), || {
                    format!("(e) n={} {level}: {s}", h.deck())
                })?;
            }
        }
    }

    // (c) distribution-mode paths on three cards, depth 4
    for level in Level::ALL {
        let r = closure(d(3), level, &SearchConfig::distribution(4, 1_000_000))
            .map_err(|e| e.to_string())?;
        for (dist, w) in r.explored_states() {
            let product: u128 = w
                .steps()
                .iter()
                .map(|a| a.outcomes().len() as u128)
                .product();
            ensure(
                dist.entries()
                    .iter()
                    .all(|(_, p)| product.is_multiple_of(*p.denom())),
                || format!("(c) {level}: {dist} denominators vs {product}"),
            )?;
            let mut cur = Distribution::point_mass(&Permutation::identity(d(3)));
            let mut mixed = false;
            for atom in w.steps() {
                let step = Distribution::uniform(atom.outcomes()).unwrap();
                cur = Distribution::convolve(&step, &cur).map_err(|e| e.to_string())?;
                let both = cur.support().has_both_parities();
                ensure(!mixed || both, || {
                    format!("(c) {level}: parity lost on {w:?}")
                })?;
                mixed |= both;
            }
        }
    }

    // (d) oracle finds nothing beyond the uniform-mode family
    for level in [1, 2, 4] {
        let found = oracle_search(d(3), l(level), &SearchConfig::distribution(4, 10_000_000))
            .map_err(|e| e.to_string())?;
        ensure(!found.partial, || {
            format!("(d) level {level} oracle ran out of budget")
        })?;
        let family = hierarchies[2].closure(l(level));
        ensure(found.family.iter().all(|s| family.contains(s)), || {
            format!("(d) level {level}: oracle found extra sets")
        })?;
    }

    // (f) algebra round trips
    for n in 1..=4 {
        let n = d(n);
        for (r, p) in all_permutations(n).iter().enumerate() {
            ensure(p.lex_rank() == r, || format!("(f) rank of {p}"))?;
            ensure(Permutation::unrank(n, r).ok() == Some(*p), || {
                format!("(f) unrank {r}")
            })?;
            ensure(
                Permutation::parse(&p.to_string(), n).ok() == Some(*p),
                || format!("(f) parse {p}"),
            )?;
        }
        for mask in 1..(1u128 << n.factorial()) {
            let s = PermSet::from_mask(n, mask).unwrap();
            ensure(PermSet::parse(&s.to_string(), n).ok() == Some(s), || {
                format!("(f) parse {s}")
            })?;
        }
    }
    Ok(())
}

fn determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("cardshuffle-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let trace = dir.join("t.trace");
    std::fs::write(&trace, "n = 4\n{id,(1 2)(3 4)}\n{id,(1 2 3 4)}\n{(1 3)}\n")
        .map_err(|e| e.to_string())?;
    let trace = trace.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["table1", "--max-n", "4"],
        vec!["table1", "--max-n", "4", "--json"],
        vec!["enumerate", "--n", "4", "--level", "3", "--json"],
        vec![
            "enumerate",
            "--n",
            "3",
            "--level",
            "4",
            "--mode",
            "distribution",
            "--max-depth",
            "3",
        ],
        vec!["classify", "--n", "4", "--set", "{id,(1 2)(3 4)}"],
        vec!["classify", "--n", "3", "--set", "{id}", "--json"],
        vec![
            "realize",
            "--n",
            "3",
            "--level",
            "4",
            "--set",
            "{id,(1 2 3)}",
        ],
        vec!["verify", "--n", "3", "--theorems"],
        vec!["verify", "--n", "4", "--theorems", "--json"],
        vec!["complexity", "eval", "--n", "9", "--json"],
        vec!["complexity", "classify-trace", "--file", trace],
        vec!["dump-atoms", "--n", "4", "--level", "4", "--json"],
    ];
    for args in &commands {
        let (a, b) = (bin(args)?, bin(args)?);
        ensure(a == b, || format!("{args:?} differs between runs"))?;
    }
    let single = bin(&["table1", "--max-n", "4", "--json"])?;
    let parallel = bin(&["table1", "--max-n", "4", "--json", "--parallel"])?;
    ensure(single == parallel, || "parallel table differs".into())?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 table of realizable counts, n <= 4", Box::new(table1)),
        (
            "2 rotation group of 3 cards needs a cut",
            Box::new(|| separation(3, "{id,(1 2 3),(1 3 2)}", 1, 2, Duration::from_secs(1))),
        ),
        (
            "3 pile swap of 4 cards needs a pile cut",
            Box::new(|| separation(4, "{id,(1 2)(3 4)}", 2, 3, Duration::from_secs(5))),
        ),
        (
            "4 {id,(1 2 3)} needs an unequal cut",
            Box::new(|| separation(3, "{id,(1 2 3)}", 3, 4, Duration::from_secs(1))),
        ),
        ("5 level-2 additions on 3 cards", Box::new(level2_delta)),
        ("6 bundled protocol corpus", Box::new(corpus)),
        ("7 property suite", Box::new(properties)),
        ("8 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  criterion {name} ({secs:.2} s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({secs:.2} s): {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
