//! Synthetic labeled catalog and the relevance index store.
//!
//! Objects carry a true label and a stored label. The stored label is what
//! the index "believes"; it only differs from the truth for the planted
//! hidden object. The [`RivStore`] holds one relevance index value per
//! `(label, object)` pair and is the state that user feedback evolves.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::rng::{stream_rng, Stream};
use crate::{Error, Result};

/// Categories of the default catalog.
pub const DEFAULT_LABELS: [&str; 4] = ["grand piano", "upright piano", "classical guitar", "harp"];

/// Default Gaussian mean for initial RIVs.
pub const DEFAULT_MU: f64 = 0.5;
/// Default Gaussian standard deviation for initial RIVs.
pub const DEFAULT_SIGMA: f64 = 0.15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub u32);

impl ObjectId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index into a catalog's label list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u16);

impl Label {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    labels: Vec<String>,
    true_label: Vec<Label>,
    stored_label: Vec<Label>,
}

impl Catalog {
    /// Builds a catalog of `n` objects split as evenly as possible across
    /// `labels`.
    ///
    /// Labels are assigned in contiguous blocks (the first `n % |labels|`
    /// labels get one extra object) and the blocks are then shuffled with the
    /// catalog-layout stream of `seed`.
    pub fn build<S: AsRef<str>>(n: usize, labels: &[S], seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("catalog needs at least one object"));
        }
        if labels.is_empty() {
            return Err(Error::config("catalog needs at least one label"));
        }
        if labels.len() > u16::MAX as usize {
            return Err(Error::config("too many labels"));
        }
        if n > u32::MAX as usize {
            return Err(Error::config("too many objects"));
        }
        let names: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let base = n / names.len();
        let extra = n % names.len();
        let mut true_label = Vec::with_capacity(n);
        for l in 0..names.len() {
            let count = base + usize::from(l < extra);
            true_label.extend(core::iter::repeat(Label(l as u16)).take(count));
        }
        let mut rng = stream_rng(seed, Stream::CatalogLayout);
        true_label.shuffle(&mut rng);
        let stored_label = true_label.clone();
        Ok(Self { labels: names, true_label, stored_label })
    }

    /// Catalog over [`DEFAULT_LABELS`].
    pub fn with_default_labels(n: usize, seed: u64) -> Result<Self> {
        Self::build(n, &DEFAULT_LABELS, seed)
    }

    pub fn len(&self) -> usize {
        self.true_label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.true_label.is_empty()
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label_names(&self) -> &[String] {
        &self.labels
    }

    pub fn label_name(&self, label: Label) -> &str {
        &self.labels[label.index()]
    }

    pub fn label_by_name(&self, name: &str) -> Option<Label> {
        self.labels.iter().position(|l| l == name).map(|i| Label(i as u16))
    }

    pub fn true_label(&self, id: ObjectId) -> Label {
        self.true_label[id.index()]
    }

    pub fn stored_label(&self, id: ObjectId) -> Label {
        self.stored_label[id.index()]
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.len() as u32).map(ObjectId)
    }

    pub fn objects_with_true_label(&self, label: Label) -> impl Iterator<Item = ObjectId> + '_ {
        self.objects().filter(move |&id| self.true_label(id) == label)
    }

    /// Number of objects per true label, in label order.
    pub fn true_label_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.labels.len()];
        for l in &self.true_label {
            counts[l.index()] += 1;
        }
        counts
    }

    fn check_label(&self, label: Label) -> Result<()> {
        if label.index() >= self.labels.len() {
            return Err(Error::config("label outside catalog label set"));
        }
        Ok(())
    }
}

/// Relevance index values, one per `(label, object)` pair, stored label-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RivStore {
    objects: usize,
    labels: usize,
    values: Vec<f64>,
}

impl RivStore {
    /// Store filled with `value`.
    pub fn filled(objects: usize, labels: usize, value: f64) -> Self {
        Self { objects, labels, values: alloc::vec![value; objects * labels] }
    }

    /// Store from label-major values (`values[label * objects + object]`).
    pub fn from_values(objects: usize, labels: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != objects * labels {
            return Err(Error::config("value count does not match objects × labels"));
        }
        Ok(Self { objects, labels, values })
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn labels(&self) -> usize {
        self.labels
    }

    #[inline]
    pub fn get(&self, label: Label, id: ObjectId) -> f64 {
        self.values[label.index() * self.objects + id.index()]
    }

    #[inline]
    pub fn set(&mut self, label: Label, id: ObjectId, value: f64) {
        self.values[label.index() * self.objects + id.index()] = value;
    }

    /// Adds `delta` and clamps the result to `[0, 1]`.
    #[inline]
    pub fn adjust_clamped(&mut self, label: Label, id: ObjectId, delta: f64) {
        let v = &mut self.values[label.index() * self.objects + id.index()];
        *v = (*v + delta).clamp(0.0, 1.0);
    }

    /// All RIVs under one label, indexed by object.
    pub fn column(&self, label: Label) -> &[f64] {
        let start = label.index() * self.objects;
        &self.values[start..start + self.objects]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Min-max normalization over the whole store:
    /// `v ← (v − min) / (max − min)`.
    pub fn normalize(&mut self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::config("cannot normalize an empty store"));
        }
        let (lo, hi) = (self.min(), self.max());
        let range = hi - lo;
        if range.is_nan() || range <= 0.0 {
            return Err(Error::DegenerateRange { count: self.values.len(), value: lo });
        }
        for v in &mut self.values {
            *v = ((*v - lo) / range).clamp(0.0, 1.0);
        }
        Ok(())
    }
}

/// Raw Gaussian RIVs, one independent `N(mu, sigma)` draw per
/// `(label, object)` pair, not yet normalized.
pub fn draw_rivs(catalog: &Catalog, mu: f64, sigma: f64, seed: u64) -> Result<RivStore> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::config("sigma must be positive"));
    }
    if !mu.is_finite() {
        return Err(Error::config("mu must be finite"));
    }
    let normal = Normal::new(mu, sigma).map_err(|_| Error::config("invalid Gaussian parameters"))?;
    let mut rng = stream_rng(seed, Stream::RivDraw);
    let total = catalog.len() * catalog.label_count();
    let values = (0..total).map(|_| normal.sample(&mut rng)).collect();
    Ok(RivStore { objects: catalog.len(), labels: catalog.label_count(), values })
}

/// Gaussian RIVs followed by min-max normalization.
pub fn init_rivs(catalog: &Catalog, mu: f64, sigma: f64, seed: u64) -> Result<RivStore> {
    let mut store = draw_rivs(catalog, mu, sigma, seed)?;
    store.normalize()?;
    Ok(store)
}

/// Raises the RIV under `target` of every object whose true label is
/// `target` by `delta`. Meant for raw (pre-normalization) stores.
///
/// `delta` must lie in `(0, sigma]`, `sigma` being the initialization
/// standard deviation.
pub fn boost_target_rivs(
    store: &mut RivStore,
    catalog: &Catalog,
    target: Label,
    delta: f64,
    sigma: f64,
) -> Result<()> {
    catalog.check_label(target)?;
    if !(delta > 0.0 && delta <= sigma) {
        return Err(Error::config("boost delta must lie in (0, sigma]"));
    }
    for id in catalog.objects_with_true_label(target) {
        let v = store.get(target, id);
        store.set(target, id, v + delta);
    }
    Ok(())
}

/// Picks the hidden object `X` among objects whose true label is `target`,
/// gives it a misleading stored label and pushes its RIV under `target` down
/// to the store minimum so it starts outside the exploitation set.
pub fn plant_hidden_object(
    catalog: &mut Catalog,
    store: &mut RivStore,
    target: Label,
    seed: u64,
) -> Result<ObjectId> {
    catalog.check_label(target)?;
    if catalog.label_count() < 2 {
        return Err(Error::config("a misleading label needs at least two labels"));
    }
    let candidates: Vec<ObjectId> = catalog.objects_with_true_label(target).collect();
    if candidates.is_empty() {
        return Err(Error::config("no object carries the target label"));
    }
    let mut rng = stream_rng(seed, Stream::HiddenObject);
    let hidden = candidates[rng.random_range(0..candidates.len())];
    let mut wrong = rng.random_range(0..catalog.label_count() - 1) as u16;
    if wrong >= target.0 {
        wrong += 1;
    }
    catalog.stored_label[hidden.index()] = Label(wrong);
    let floor = store.min();
    store.set(target, hidden, floor);
    Ok(hidden)
}
