use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use cardshuffle_core::{
    closure, generate_atoms, oracle_search, DeckSize, Distribution, Hierarchy, Level, PermSet,
    Permutation, SearchConfig,
};

fn d(n: usize) -> DeckSize {
    DeckSize::new(n).unwrap()
}

fn l(v: u8) -> Level {
    Level::new(v).unwrap()
}

type Images = Vec<u8>;

/// `(p∘q)(i) = p(q(i))`, 1-based one-line images.
fn compose(p: &Images, q: &Images) -> Images {
    q.iter().map(|&i| p[i as usize - 1]).collect()
}

fn plain(s: &PermSet) -> BTreeSet<Images> {
    s.iter().map(|p| p.images()).collect()
}

/// Integer weights of the composite of uniform shuffles applied in order.
fn replay_weights(steps: &[BTreeSet<Images>], n: usize) -> BTreeMap<Images, u64> {
    let mut w = BTreeMap::from([((1..=n as u8).collect::<Images>(), 1u64)]);
    for step in steps {
        let mut next = BTreeMap::new();
        for (a, wa) in &w {
            for b in step {
                *next.entry(compose(b, a)).or_insert(0) += wa;
            }
        }
        w = next;
    }
    w
}

fn uniform_support(w: &BTreeMap<Images, u64>) -> Option<BTreeSet<Images>> {
    let first = *w.values().next()?;
    w.values()
        .all(|&x| x == first)
        .then(|| w.keys().cloned().collect())
}

/// Breadth-first closure on plain vectors; a set is kept only if the
/// product with the atom is uniform.
fn naive_family(n: usize, level: u8) -> HashSet<BTreeSet<Images>> {
    let atoms: Vec<BTreeSet<Images>> = generate_atoms(d(n), l(level))
        .iter()
        .map(|a| plain(a.outcomes()))
        .collect();
    let id: BTreeSet<Images> = [(1..=n as u8).collect()].into();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(s) = queue.pop_front() {
        for atom in &atoms {
            let mut counts: BTreeMap<Images, usize> = BTreeMap::new();
            for a in &s {
                for b in atom {
                    *counts.entry(compose(b, a)).or_insert(0) += 1;
                }
            }
            let first = *counts.values().next().unwrap();
            if counts.values().all(|&c| c == first) {
                let next: BTreeSet<Images> = counts.into_keys().collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

fn family_plain(n: usize, level: u8) -> HashSet<BTreeSet<Images>> {
    closure(d(n), l(level), &SearchConfig::uniform())
        .unwrap()
        .family()
        .iter()
        .map(plain)
        .collect()
}

#[test]
fn engine_matches_naive_closure_small_decks() {
    for n in 1..=3 {
        for level in 0..=4 {
            assert_eq!(
                family_plain(n, level),
                naive_family(n, level),
                "n={n} level={level}"
            );
        }
    }
}

#[test]
fn engine_matches_naive_closure_four_cards_low_levels() {
    for level in [1, 2] {
        assert_eq!(
            family_plain(4, level),
            naive_family(4, level),
            "level={level}"
        );
    }
}

#[test]
fn family_nesting() {
    for n in 1..=4 {
        let h = Hierarchy::new(d(n)).unwrap();
        for pair in Level::ALL.windows(2) {
            let lower = h.closure(pair[0]);
            let higher = h.closure(pair[1]);
            assert!(
                lower.family().iter().all(|s| higher.contains(s)),
                "n={n} {} ⊄ {}",
                pair[0],
                pair[1]
            );
        }
    }
}

#[test]
fn level_zero_is_singletons() {
    for n in 1..=4 {
        let r = closure(d(n), l(0), &SearchConfig::uniform()).unwrap();
        assert_eq!(r.len(), d(n).factorial());
        assert!(r.family().iter().all(|s| s.len() == 1));
    }
}

#[test]
fn level_three_adds_nothing_below_four_cards() {
    for n in 1..=3 {
        assert_eq!(family_plain(n, 2), family_plain(n, 3), "n={n}");
    }
}

#[test]
fn families_are_conjugation_and_translation_invariant() {
    for n in 1..=4 {
        let h = Hierarchy::new(d(n)).unwrap();
        let perms = cardshuffle_core::perm::all_permutations(d(n));
        for level in Level::ALL {
            let r = h.closure(level);
            for s in r.family() {
                for pi in &perms {
                    for t in [s.conjugate(pi), s.left_mul(pi), s.right_mul(pi)] {
                        assert!(r.contains(&t.unwrap()), "n={n} {level} {s} by {pi}");
                    }
                }
            }
        }
    }
}

#[test]
fn every_witness_replays() {
    for n in 1..=4 {
        let h = Hierarchy::new(d(n)).unwrap();
        for level in Level::ALL {
            let r = h.closure(level);
            for s in r.family() {
                let w = r.witness(s).unwrap();
                assert!(w.steps().iter().all(|a| r.atoms().contains(a)));
                assert_eq!(w.replay().unwrap(), *s, "n={n} {level}");
                let steps: Vec<_> = w.steps().iter().map(|a| plain(a.outcomes())).collect();
                let support = uniform_support(&replay_weights(&steps, n));
                assert_eq!(support.as_ref(), Some(&plain(s)), "n={n} {level} {s}");
            }
        }
    }
}

#[test]
fn physical_witnesses_replay_on_four_cards() {
    let h = Hierarchy::new(d(4)).unwrap();
    for level in Level::ALL {
        let r = h.closure(level);
        for s in r.family().iter().step_by(7) {
            assert_eq!(r.witness(s).unwrap().physical().replay().unwrap(), *s);
        }
    }
}

#[test]
fn parity_persists_along_witness_dag() {
    for n in 2..=4 {
        let h = Hierarchy::new(d(n)).unwrap();
        for level in Level::ALL {
            let r = h.closure(level);
            for s in r.family() {
                if let Some((parent, _)) = r.parent(s) {
                    if parent.has_both_parities() {
                        assert!(s.has_both_parities(), "n={n} {level}: {parent} -> {s}");
                    }
                }
            }
        }
    }
}

#[test]
fn distribution_paths_keep_parity_and_dyadic_denominators() {
    let n = d(3);
    for level in Level::ALL {
        let cfg = SearchConfig::distribution(4, 200_000);
        let r = closure(n, level, &cfg).unwrap();
        let mut states = 0;
        for (dist, w) in r.explored_states() {
            states += 1;
            let product: u128 = w
                .steps()
                .iter()
                .map(|a| a.outcomes().len() as u128)
                .product();
            for (_, p) in dist.entries() {
                assert_eq!(product % p.denom(), 0, "{level} {dist}");
            }
            let mut cur = Distribution::point_mass(&Permutation::identity(n));
            let mut mixed = false;
            for atom in w.steps() {
                cur =
                    Distribution::convolve(&Distribution::uniform(atom.outcomes()).unwrap(), &cur)
                        .unwrap();
                let both = cur.support().has_both_parities();
                assert!(!mixed || both, "{level}: parity lost along {w:?}");
                mixed |= both;
            }
            assert_eq!(cur, *dist);
        }
        assert!(states > 0);
    }
}

#[test]
fn oracle_finds_nothing_outside_uniform_family() {
    let n = d(3);
    for level in [1, 2, 4] {
        let family: BTreeSet<PermSet> = closure(n, l(level), &SearchConfig::uniform())
            .unwrap()
            .family()
            .iter()
            .copied()
            .collect();
        let found = oracle_search(n, l(level), &SearchConfig::distribution(4, 1_000_000)).unwrap();
        assert!(!found.partial, "level {level}");
        let extra: Vec<_> = found.family.difference(&family).collect();
        assert!(extra.is_empty(), "level {level}: {extra:?}");
    }
}

#[test]
fn four_card_counts() {
    let h = Hierarchy::new(d(4)).unwrap();
    assert_eq!(h.counts(), [24, 564, 1231, 2307, 18249]);
}

#[test]
fn rank_and_text_round_trips() {
    for n in 1..=4 {
        let n = d(n);
        let mut seen = BTreeSet::new();
        for r in 0..n.factorial() {
            let p = Permutation::unrank(n, r).unwrap();
            assert_eq!(p.lex_rank(), r);
            assert_eq!(Permutation::parse(&p.to_string(), n).unwrap(), p);
            assert!(seen.insert(p.images()));
        }
        // every subset for n <= 3, a stride through them for n = 4
        let total = 1u128 << n.factorial();
        let step = if n.get() <= 3 { 1 } else { 9973 };
        let mut mask = 1u128;
        while mask < total {
            let s = PermSet::from_mask(n, mask).unwrap();
            assert_eq!(PermSet::parse(&s.to_string(), n).unwrap(), s);
            mask += step;
        }
    }
}
