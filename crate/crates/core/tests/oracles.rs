//! Independent oracles for the discovery-time laws: exhaustive enumeration
//! of EGSE-B draw sequences and frequency checks of the real M-list engine.

use egse_core::analytics::{to_f64, SearchSpace};
use egse_core::catalog::{Label, ObjectId, RivStore};
use egse_core::exploration::{present, Algorithm, ExclusionPolicy, ExplorationConfig, SessionState};
use egse_core::rng::{stream_rng, trial_seed, Stream};
use egse_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Walks every sequence of without-replacement draws an EGSE-B session can
/// make from a pool of `pool` objects (object 0 hidden), multiplying exact
/// draw probabilities, and accumulates the probability of first seeing the
/// hidden object at each presentation.
fn enumerate_first_passage(pool: usize, r: usize) -> Vec<Rational> {
    fn subsets(items: &[usize], r: usize) -> Vec<Vec<usize>> {
        if r == 0 {
            return vec![vec![]];
        }
        if items.len() < r {
            return vec![];
        }
        let mut out = Vec::new();
        for (i, &first) in items.iter().enumerate() {
            for mut rest in subsets(&items[i + 1..], r - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    fn walk(remaining: Vec<usize>, r: usize, step: usize, prob: Rational, acc: &mut Vec<Rational>) {
        let take = r.min(remaining.len());
        let choices = subsets(&remaining, take);
        let each = &prob / Rational::from_integer(BigInt::from(choices.len()));
        for choice in choices {
            if choice.contains(&0) {
                if acc.len() < step {
                    acc.resize(step, Rational::zero());
                }
                acc[step - 1] += &each;
            } else {
                let rest: Vec<usize> = remaining.iter().copied().filter(|x| !choice.contains(x)).collect();
                walk(rest, r, step + 1, each.clone(), acc);
            }
        }
    }
    let mut acc = Vec::new();
    walk((0..pool).collect(), r, 1, Rational::one(), &mut acc);
    acc
}

#[test]
fn enumeration_reproduces_uniform_pmf() {
    // N ≤ 12, divisible and partial-final-batch pools
    for (n, m, r) in [(10u64, 4u64, 2u64), (11, 4, 2), (12, 5, 3), (9, 3, 1), (12, 6, 4)] {
        let space = SearchSpace::new(n, m, r).unwrap();
        let pmf = enumerate_first_passage(space.pool() as usize, r as usize);
        assert_eq!(pmf.len() as u64, space.support_max(), "support for {n},{m},{r}");
        for (i, p) in pmf.iter().enumerate() {
            assert_eq!(*p, space.pmf_v(i as u64 + 1), "k={} for {n},{m},{r}", i + 1);
        }
        let trace = space.verify_recurrence(space.support_max()).unwrap();
        assert_eq!(trace, pmf);
    }
}

/// Store where object `hidden` ranks last, so only exploration can show it.
fn store_hiding(n: usize, hidden: usize) -> RivStore {
    let values = (0..n).map(|i| if i == hidden { 0.0 } else { 0.1 + i as f64 / n as f64 }).collect();
    RivStore::from_values(n, 1, values).unwrap()
}

fn engine_first_passage(algorithm: Algorithm, sessions: u64, cap: u64) -> Vec<u64> {
    let config = ExplorationConfig::new(10, 4, 0.5).unwrap();
    let hidden = ObjectId(3);
    let store = store_hiding(10, 3);
    let mut counts = vec![0u64; cap as usize + 2];
    for s in 0..sessions {
        let mut rng = stream_rng(trial_seed(2024, s), Stream::Explore);
        let mut state = SessionState::new(10, None, ExclusionPolicy::ExploredOnly);
        let mut k = 0u64;
        loop {
            k += 1;
            let list = present(&config, &store, Label(0), &mut state, algorithm, &mut rng).unwrap();
            assert!(!list.exploit.contains(&hidden));
            if list.contains(hidden) {
                break;
            }
        }
        counts[k.min(cap + 1) as usize] += 1;
    }
    counts
}

#[test]
fn engine_b_matches_uniform_law() {
    let sessions = 40_000;
    let counts = engine_first_passage(Algorithm::B, sessions, 4);
    let space = SearchSpace::new(10, 4, 2).unwrap();
    assert_eq!(counts[5], 0);
    for k in 1..=4u64 {
        let p = to_f64(&space.pmf_v(k));
        let freq = counts[k as usize] as f64 / sessions as f64;
        let se = (p * (1.0 - p) / sessions as f64).sqrt();
        assert!((freq - p).abs() < 4.0 * se, "k={k} freq={freq}");
    }
}

#[test]
fn engine_a_matches_geometric_law() {
    let sessions = 40_000;
    let counts = engine_first_passage(Algorithm::A, sessions, 8);
    let space = SearchSpace::new(10, 4, 2).unwrap();
    for k in 1..=8u64 {
        let p = to_f64(&space.pmf_u(k).unwrap());
        let freq = counts[k as usize] as f64 / sessions as f64;
        let se = (p * (1.0 - p) / sessions as f64).sqrt();
        assert!((freq - p).abs() < 4.0 * se, "k={k} freq={freq} p={p}");
    }
    let tail = 1.0 - space.discovery_within(Algorithm::A, 8);
    let freq = counts[9] as f64 / sessions as f64;
    let se = (tail * (1.0 - tail) / sessions as f64).sqrt();
    assert!((freq - tail).abs() < 4.0 * se);
}

#[test]
fn b_session_explores_each_object_once() {
    let config = ExplorationConfig::new(12, 4, 0.5).unwrap();
    let store = store_hiding(12, 0);
    let mut rng = stream_rng(1, Stream::Explore);
    let mut state = SessionState::new(12, None, ExclusionPolicy::ExploredOnly);
    let mut explored = Vec::new();
    while !state.is_terminated() {
        let list = present(&config, &store, Label(0), &mut state, Algorithm::B, &mut rng).unwrap();
        explored.extend(list.explore);
    }
    explored.sort();
    let exploit_free: Vec<ObjectId> =
        (0..12).map(ObjectId).filter(|id| ![11, 10].contains(&id.0)).collect();
    assert_eq!(explored, exploit_free);
    assert_eq!(state.query_count(), config.support_max() as u64);
}
