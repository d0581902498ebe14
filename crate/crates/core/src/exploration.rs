//! M-list construction.
//!
//! Every presentation is the union of an exploitation part (the `K` objects
//! with the highest RIV for the query label) and an exploration part of `r`
//! objects drawn uniformly without replacement from outside it. The two
//! variants differ only in what the exploration pool excludes:
//!
//! * EGSE-A: only the current exploitation set. Objects may be re-drawn on
//!   later presentations.
//! * EGSE-B: the current exploitation set and everything the session has
//!   already explored ([`SessionState`]). The last presentation may carry
//!   fewer than `r` exploration objects; after it the session is exhausted.

use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::seq::index;
use rand::Rng;

use crate::catalog::{Label, ObjectId, RivStore};
use crate::{Error, Result};

/// Exploration variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Re-selection permitted: constant inclusion probability.
    A,
    /// Explored objects excluded for the rest of the session.
    B,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::A => "EGSE-A",
            Algorithm::B => "EGSE-B",
        }
    }
}

/// What an EGSE-B session adds to its exclusion set after each presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExclusionPolicy {
    /// Only the exploration draws. Exploitation slots are recomputed every
    /// query and never consume exploration budget; this is the model the
    /// closed-form discovery law assumes.
    #[default]
    ExploredOnly,
    /// Exploitation and exploration objects alike (`S ← S ∪ S₁ ∪ S₂`).
    /// Exploitation selection itself is never restricted.
    Strict,
}

/// `(N, M, ε)` with the derived split `r + K = M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExplorationConfig {
    n: usize,
    m: usize,
    epsilon: f64,
    r: usize,
    k: usize,
}

impl ExplorationConfig {
    pub fn new(n: usize, m: usize, epsilon: f64) -> Result<Self> {
        let (r, k) = derive_split(m, epsilon)?;
        if n <= m {
            return Err(Error::config("catalog size N must exceed list length M"));
        }
        if n > u32::MAX as usize {
            return Err(Error::config("catalog size N too large"));
        }
        Ok(Self { n, m, epsilon, r, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    /// Exploration slots.
    pub fn r(&self) -> usize {
        self.r
    }
    /// Exploitation slots.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Presentations an EGSE-B session needs to explore every non-exploited
    /// object: `⌈(N − K) / r⌉`.
    pub fn support_max(&self) -> usize {
        (self.n - self.k).div_ceil(self.r)
    }
}

/// `r = max(1, round(ε·M))` (half rounds up), `K = M − r`.
pub fn derive_split(m: usize, epsilon: f64) -> Result<(usize, usize)> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::config("epsilon must lie in (0, 1)"));
    }
    if m == 0 {
        return Err(Error::config("list length M must be at least 1"));
    }
    let r = (libm::floor(epsilon * m as f64 + 0.5) as usize).clamp(1, m);
    Ok((r, m - r))
}

/// One presented result list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MList {
    pub index: u64,
    pub exploit: Vec<ObjectId>,
    pub explore: Vec<ObjectId>,
}

impl MList {
    pub fn len(&self) -> usize {
        self.exploit.len() + self.explore.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, id: ObjectId) -> bool {
        self.exploit.contains(&id) || self.explore.contains(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = ObjectId> + '_ {
        self.exploit.iter().chain(self.explore.iter()).copied()
    }
}

/// Per-query session bookkeeping.
#[derive(Debug, Clone)]
pub struct SessionState {
    presented: Vec<bool>,
    presented_count: usize,
    query_count: u64,
    max_queries: Option<u64>,
    policy: ExclusionPolicy,
    terminated: bool,
}

impl SessionState {
    pub fn new(n: usize, max_queries: Option<u64>, policy: ExclusionPolicy) -> Self {
        Self {
            presented: alloc::vec![false; n],
            presented_count: 0,
            query_count: 0,
            max_queries,
            policy,
            terminated: false,
        }
    }

    /// Objects in the exclusion set.
    pub fn presented_count(&self) -> usize {
        self.presented_count
    }

    pub fn is_presented(&self, id: ObjectId) -> bool {
        self.presented[id.index()]
    }

    /// Queries served so far (Θ).
    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    pub fn max_queries(&self) -> Option<u64> {
        self.max_queries
    }

    pub fn policy(&self) -> ExclusionPolicy {
        self.policy
    }

    /// Termination flag (Δ).
    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    fn mark(&mut self, id: ObjectId) {
        let slot = &mut self.presented[id.index()];
        if !*slot {
            *slot = true;
            self.presented_count += 1;
        }
    }
}

fn rank_desc(store: &RivStore, label: Label) -> impl Fn(&ObjectId, &ObjectId) -> Ordering + '_ {
    let column = store.column(label);
    move |a, b| column[b.index()].total_cmp(&column[a.index()]).then(a.cmp(b))
}

/// The `k` objects with the highest RIV under `label`, best first. Ties go to
/// the lower object id.
pub fn select_exploit(store: &RivStore, label: Label, k: usize) -> Vec<ObjectId> {
    select_exploit_barring(store, label, k, &[])
}

/// [`select_exploit`] over all objects except `barred`.
pub fn select_exploit_barring(
    store: &RivStore,
    label: Label,
    k: usize,
    barred: &[ObjectId],
) -> Vec<ObjectId> {
    let mut ids: Vec<ObjectId> = (0..store.objects() as u32)
        .map(ObjectId)
        .filter(|id| !barred.contains(id))
        .collect();
    let k = k.min(ids.len());
    if k == 0 {
        return Vec::new();
    }
    let cmp = rank_desc(store, label);
    if k < ids.len() {
        ids.select_nth_unstable_by(k - 1, &cmp);
        ids.truncate(k);
    }
    ids.sort_unstable_by(&cmp);
    ids
}

fn draw<R: Rng + ?Sized>(pool: &[ObjectId], amount: usize, rng: &mut R) -> Vec<ObjectId> {
    index::sample(rng, pool.len(), amount).into_iter().map(|i| pool[i]).collect()
}

/// EGSE-A exploration: `r` objects drawn uniformly without replacement from
/// the `N − K` objects outside `exploit`.
pub fn select_explore_a<R: Rng + ?Sized>(
    n: usize,
    exploit: &[ObjectId],
    r: usize,
    rng: &mut R,
) -> Result<Vec<ObjectId>> {
    let mut in_exploit = alloc::vec![false; n];
    for id in exploit {
        in_exploit[id.index()] = true;
    }
    let pool: Vec<ObjectId> = (0..n as u32).map(ObjectId).filter(|id| !in_exploit[id.index()]).collect();
    if pool.len() < r {
        return Err(Error::config("exploration pool smaller than r"));
    }
    Ok(draw(&pool, r, rng))
}

/// EGSE-B exploration: up to `r` objects drawn uniformly without replacement
/// from the objects neither in `exploit` nor already in the session's
/// exclusion set. The drawn objects join the exclusion set.
pub fn select_explore_b<R: Rng + ?Sized>(
    exploit: &[ObjectId],
    state: &mut SessionState,
    r: usize,
    rng: &mut R,
) -> Result<Vec<ObjectId>> {
    let pool = open_pool(exploit, state);
    if pool.is_empty() {
        return Err(Error::SessionExhausted { queries: state.query_count });
    }
    let drawn = draw(&pool, r.min(pool.len()), rng);
    for &id in &drawn {
        state.mark(id);
    }
    Ok(drawn)
}

fn open_pool(exploit: &[ObjectId], state: &SessionState) -> Vec<ObjectId> {
    let mut closed = state.presented.clone();
    for id in exploit {
        closed[id.index()] = true;
    }
    closed
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| ObjectId(i as u32))
        .collect()
}

/// Builds and presents the next M-list for `label`.
pub fn present<R: Rng + ?Sized>(
    config: &ExplorationConfig,
    store: &RivStore,
    label: Label,
    state: &mut SessionState,
    algorithm: Algorithm,
    rng: &mut R,
) -> Result<MList> {
    present_barring(config, store, label, state, algorithm, &[], rng)
}

/// [`present`] with `barred` objects kept out of the exploitation slots.
/// Barred objects remain eligible for exploration.
pub fn present_barring<R: Rng + ?Sized>(
    config: &ExplorationConfig,
    store: &RivStore,
    label: Label,
    state: &mut SessionState,
    algorithm: Algorithm,
    barred: &[ObjectId],
    rng: &mut R,
) -> Result<MList> {
    if state.terminated {
        return Err(Error::SessionTerminated { queries: state.query_count });
    }
    if store.objects() != config.n() || state.presented.len() != config.n() {
        return Err(Error::config("store, session and config disagree on N"));
    }
    let exploit = select_exploit_barring(store, label, config.k(), barred);
    let explore = match algorithm {
        Algorithm::A => select_explore_a(config.n(), &exploit, config.r(), rng)?,
        Algorithm::B => {
            let drawn = select_explore_b(&exploit, state, config.r(), rng)?;
            if state.policy == ExclusionPolicy::Strict {
                for &id in &exploit {
                    state.mark(id);
                }
            }
            drawn
        }
    };
    state.query_count += 1;
    let capped = state.max_queries.is_some_and(|c| state.query_count >= c);
    let exhausted = algorithm == Algorithm::B && open_pool(&exploit, state).is_empty();
    if capped || exhausted {
        state.terminated = true;
    }
    Ok(MList { index: state.query_count, exploit, explore })
}
