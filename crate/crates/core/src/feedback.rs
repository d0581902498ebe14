//! Simulated user feedback and the index evolution loop.
//!
//! Users click on a few exploitation objects (implicit feedback) and judge
//! every exploration object (explicit feedback). A judged object whose true
//! label matches the query has its RIV raised, any other judged object has
//! it lowered. Values are clamped to `[0, 1]`; the store is never
//! re-normalized after initialization.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use crate::catalog::{self, Catalog, Label, ObjectId, RivStore, DEFAULT_LABELS, DEFAULT_MU, DEFAULT_SIGMA};
use crate::exploration::{self, Algorithm, ExclusionPolicy, ExplorationConfig, MList, SessionState};
use crate::rng::{stream_rng, Stream};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClickModel {
    /// Upper bound of the uniform click count on the exploitation part.
    pub max_clicks: usize,
    pub boost_delta: f64,
    pub penalty_delta: f64,
}

impl Default for ClickModel {
    fn default() -> Self {
        Self { max_clicks: 5, boost_delta: 0.02, penalty_delta: 0.01 }
    }
}

impl ClickModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.boost_delta > 0.0 && self.boost_delta.is_finite()) {
            return Err(Error::config("boost delta must be positive"));
        }
        if !(self.penalty_delta > 0.0 && self.penalty_delta.is_finite()) {
            return Err(Error::config("penalty delta must be positive"));
        }
        Ok(())
    }

    fn judge(&self, store: &mut RivStore, catalog: &Catalog, label: Label, id: ObjectId) {
        let delta =
            if catalog.true_label(id) == label { self.boost_delta } else { -self.penalty_delta };
        store.adjust_clamped(label, id, delta);
    }
}

/// Applies one round of feedback for `mlist` and returns the clicked
/// exploitation objects.
///
/// Draws `c ~ U{0, …, max_clicks}` (capped at the exploitation size) clicked
/// objects uniformly from the exploitation part; every exploration object is
/// judged.
pub fn simulate_feedback<R: Rng + ?Sized>(
    mlist: &MList,
    catalog: &Catalog,
    store: &mut RivStore,
    label: Label,
    model: &ClickModel,
    rng: &mut R,
) -> Vec<ObjectId> {
    let clicks = rng.random_range(0..=model.max_clicks).min(mlist.exploit.len());
    let clicked: Vec<ObjectId> = index::sample(rng, mlist.exploit.len(), clicks)
        .into_iter()
        .map(|i| mlist.exploit[i])
        .collect();
    for &id in &clicked {
        model.judge(store, catalog, label, id);
    }
    for &id in &mlist.explore {
        model.judge(store, catalog, label, id);
    }
    clicked
}

/// Fraction of the list whose true label is `label`.
pub fn precision(mlist: &MList, catalog: &Catalog, label: Label) -> f64 {
    if mlist.is_empty() {
        return 0.0;
    }
    let hits = mlist.iter().filter(|&id| catalog.true_label(id) == label).count();
    hits as f64 / mlist.len() as f64
}

/// How the synthetic catalog and its initial index are generated.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogParams {
    pub labels: Vec<String>,
    pub mu: f64,
    pub sigma: f64,
    /// Pre-normalization boost for true-target objects, in `(0, sigma]`.
    pub target_boost: f64,
    /// Query label; the hidden object truly belongs to it.
    pub target: Label,
}

impl Default for CatalogParams {
    fn default() -> Self {
        Self {
            labels: DEFAULT_LABELS.iter().map(|s| String::from(*s)).collect(),
            mu: DEFAULT_MU,
            sigma: DEFAULT_SIGMA,
            target_boost: DEFAULT_SIGMA / 3.0,
            target: Label(0),
        }
    }
}

/// Default query cap `C` of an evolution run.
pub const DEFAULT_MAX_QUERIES: u64 = 5_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionParams {
    pub algorithm: Algorithm,
    pub config: ExplorationConfig,
    pub catalog: CatalogParams,
    pub model: ClickModel,
    /// Keep the hidden object out of the exploitation slots.
    pub worst_case: bool,
    /// Query cap `C`.
    pub max_queries: u64,
    pub policy: ExclusionPolicy,
    /// End the run on the query that first shows the hidden object.
    pub stop_at_discovery: bool,
    pub seed: u64,
}

impl EvolutionParams {
    /// Worst-case run on the default four-label catalog.
    pub fn new(algorithm: Algorithm, config: ExplorationConfig, seed: u64) -> Self {
        Self {
            algorithm,
            config,
            catalog: CatalogParams::default(),
            model: ClickModel::default(),
            worst_case: true,
            max_queries: DEFAULT_MAX_QUERIES,
            policy: ExclusionPolicy::Strict,
            stop_at_discovery: true,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryRecord {
    /// Θ after the query, starting at 1.
    pub query: u64,
    pub precision: f64,
    pub clicked: Vec<ObjectId>,
    pub discovered: bool,
}

/// RIVs under the query label, grouped by true label.
#[derive(Debug, Clone, PartialEq)]
pub struct RivSnapshot {
    pub by_label: Vec<Vec<f64>>,
}

impl RivSnapshot {
    pub fn capture(catalog: &Catalog, store: &RivStore, query: Label) -> Self {
        let mut by_label = alloc::vec![Vec::new(); catalog.label_count()];
        for id in catalog.objects() {
            by_label[catalog.true_label(id).index()].push(store.get(query, id));
        }
        Self { by_label }
    }

    pub fn mean(&self, label: Label) -> f64 {
        let v = &self.by_label[label.index()];
        if v.is_empty() {
            return f64::NAN;
        }
        v.iter().sum::<f64>() / v.len() as f64
    }

    /// Label with the highest mean RIV.
    pub fn top_label(&self) -> Label {
        let mut best = 0;
        for l in 1..self.by_label.len() {
            if self.mean(Label(l as u16)) > self.mean(Label(best as u16)) {
                best = l;
            }
        }
        Label(best as u16)
    }

    /// 10th, 20th, …, 90th percentiles (linear interpolation) of one label.
    pub fn deciles(&self, label: Label) -> [f64; 9] {
        let mut v = self.by_label[label.index()].clone();
        v.sort_unstable_by(f64::total_cmp);
        core::array::from_fn(|i| quantile(&v, (i + 1) as f64 / 10.0))
    }
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0],
        len => {
            let pos = p * (len - 1) as f64;
            let lo = libm::floor(pos) as usize;
            let hi = (lo + 1).min(len - 1);
            sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrace {
    pub algorithm: Algorithm,
    pub hidden: ObjectId,
    pub target: Label,
    pub label_names: Vec<String>,
    pub records: Vec<QueryRecord>,
    pub discovery_query: Option<u64>,
    pub initial: RivSnapshot,
    /// Taken at discovery, or at the end of the run when it never happened.
    pub at_discovery: RivSnapshot,
    /// Whether any exploitation set contained the hidden object.
    pub hidden_exploited: bool,
}

impl EvolutionTrace {
    /// Mean precision over the first `count` queries.
    pub fn head_precision(&self, count: usize) -> f64 {
        mean_precision(self.records.iter().take(count))
    }

    /// Mean precision over the last `count` queries.
    pub fn tail_precision(&self, count: usize) -> f64 {
        let skip = self.records.len().saturating_sub(count);
        mean_precision(self.records.iter().skip(skip))
    }
}

fn mean_precision<'a>(records: impl Iterator<Item = &'a QueryRecord>) -> f64 {
    let (sum, n) = records.fold((0.0, 0usize), |(s, n), r| (s + r.precision, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

/// Builds the catalog and initial index for `params`: Gaussian draws, target
/// boost, min-max normalization, then the hidden object is planted.
pub fn prepare(params: &EvolutionParams) -> Result<(Catalog, RivStore, ObjectId)> {
    let cp = &params.catalog;
    let mut catalog = Catalog::build(params.config.n(), &cp.labels, params.seed)?;
    let mut store = catalog::draw_rivs(&catalog, cp.mu, cp.sigma, params.seed)?;
    catalog::boost_target_rivs(&mut store, &catalog, cp.target, cp.target_boost, cp.sigma)?;
    store.normalize()?;
    let hidden = catalog::plant_hidden_object(&mut catalog, &mut store, cp.target, params.seed)?;
    Ok((catalog, store, hidden))
}

/// Presents lists for the target label, applying feedback after each one,
/// until the hidden object shows up (or the cap / EGSE-B exhaustion ends
/// the session).
pub fn run_evolution(params: &EvolutionParams) -> Result<EvolutionTrace> {
    params.model.validate()?;
    if params.max_queries == 0 {
        return Err(Error::config("max queries must be at least 1"));
    }
    let (catalog, mut store, hidden) = prepare(params)?;
    let target = params.catalog.target;
    let initial = RivSnapshot::capture(&catalog, &store, target);

    let mut state = SessionState::new(catalog.len(), Some(params.max_queries), params.policy);
    let mut explore_rng = stream_rng(params.seed, Stream::Explore);
    let mut click_rng = stream_rng(params.seed, Stream::Clicks);
    let barred: &[ObjectId] = if params.worst_case { core::slice::from_ref(&hidden) } else { &[] };

    let mut records = Vec::new();
    let mut discovery_query = None;
    let mut at_discovery = None;
    let mut hidden_exploited = false;
    while !state.is_terminated() {
        let mlist = exploration::present_barring(
            &params.config,
            &store,
            target,
            &mut state,
            params.algorithm,
            barred,
            &mut explore_rng,
        )?;
        hidden_exploited |= mlist.exploit.contains(&hidden);
        let discovered = discovery_query.is_none() && mlist.contains(hidden);
        let precision = precision(&mlist, &catalog, target);
        let clicked = simulate_feedback(&mlist, &catalog, &mut store, target, &params.model, &mut click_rng);
        records.push(QueryRecord { query: mlist.index, precision, clicked, discovered });
        if discovered {
            discovery_query = Some(mlist.index);
            at_discovery = Some(RivSnapshot::capture(&catalog, &store, target));
            if params.stop_at_discovery {
                break;
            }
        }
    }
    let at_discovery = at_discovery.unwrap_or_else(|| RivSnapshot::capture(&catalog, &store, target));
    Ok(EvolutionTrace {
        algorithm: params.algorithm,
        hidden,
        target,
        label_names: catalog.label_names().to_vec(),
        records,
        discovery_query,
        initial,
        at_discovery,
        hidden_exploited,
    })
}
