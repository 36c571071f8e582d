//! Difference measures between a generated slice and its reference paintings.
//!
//! Every unified score compares each generated image with each painting of
//! the same prompt (the full cartesian pairing) using absolute differences,
//! and normalizes by a maximum taken over the compared images and paintings
//! together, so each score lies in `[0, 1]` and 0 means "same as the base".

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{CorpusSlice, SliceKey};
use crate::model::{
    AnnotationRecord, BaseReference, Component, Gender, GeneratorId, InvalidField, PromptId,
    ScoringConfig, SentimentGrid, StdEstimator, StdMode, AGE_GROUPS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("no generated/painting pair has a sentiment grid on both sides")]
    NoComparablePairs,
    #[error("overall score needs component `{0}`, which is unavailable")]
    MissingComponent(Component),
    #[error("no base paintings for prompt {0}")]
    MissingBase(PromptId),
    #[error("invalid configuration: {0}")]
    Config(#[from] InvalidField),
    #[error("{generator}/{prompt}: {source}")]
    Cell {
        generator: GeneratorId,
        prompt: PromptId,
        #[source]
        source: Box<MetricsError>,
    },
}

/// A non-empty group of annotations that belongs to one prompt.
pub trait AnnotationSet {
    fn prompt(&self) -> PromptId;
    fn records(&self) -> impl Iterator<Item = &AnnotationRecord> + '_;
}

impl AnnotationSet for CorpusSlice {
    fn prompt(&self) -> PromptId {
        CorpusSlice::prompt(self)
    }

    fn records(&self) -> impl Iterator<Item = &AnnotationRecord> + '_ {
        self.annotations().iter()
    }
}

impl AnnotationSet for BaseReference {
    fn prompt(&self) -> PromptId {
        BaseReference::prompt(self)
    }

    fn records(&self) -> impl Iterator<Item = &AnnotationRecord> + '_ {
        self.paintings().iter().map(|p| &p.annotation)
    }
}

// ---------------------------------------------------------------------------
// Per-image measures
// ---------------------------------------------------------------------------

/// Number of detections with confidence at or above `threshold`.
pub fn count_people(a: &AnnotationRecord, threshold: f64) -> u32 {
    a.confident(threshold).count() as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GenderCounts {
    pub female: u32,
    pub male: u32,
}

impl GenderCounts {
    pub fn get(&self, gender: Gender) -> u32 {
        match gender {
            Gender::Female => self.female,
            Gender::Male => self.male,
        }
    }
}

pub fn gender_counts(a: &AnnotationRecord, threshold: f64) -> GenderCounts {
    a.confident(threshold)
        .fold(GenderCounts::default(), |mut acc, d| {
            match d.gender() {
                Gender::Female => acc.female += 1,
                Gender::Male => acc.male += 1,
            }
            acc
        })
}

/// Histogram of estimated ages over the confident detections.
pub fn age_bins(a: &AnnotationRecord, cfg: &ScoringConfig) -> [u32; AGE_GROUPS] {
    let mut bins = [0; AGE_GROUPS];
    for d in a.confident(cfg.confidence_threshold) {
        bins[cfg.age_bins.index_of(d.estimated_age())] += 1;
    }
    bins
}

/// The per-image quantities every score is built from.
struct Profile<'a> {
    count: u32,
    genders: GenderCounts,
    ages: [u32; AGE_GROUPS],
    sentiment: f64,
    grid: Option<&'a SentimentGrid>,
}

impl<'a> Profile<'a> {
    fn of(a: &'a AnnotationRecord, cfg: &ScoringConfig) -> Self {
        let threshold = cfg.confidence_threshold;
        Self {
            count: count_people(a, threshold),
            genders: gender_counts(a, threshold),
            ages: age_bins(a, cfg),
            sentiment: a.sentiment(),
            grid: a.sentiment_grid(),
        }
    }
}

fn grids<'a>(profiles: &[Profile<'a>]) -> Vec<Option<&'a SentimentGrid>> {
    profiles.iter().map(|p| p.grid).collect()
}

fn profiles<'a>(set: &'a impl AnnotationSet, cfg: &ScoringConfig) -> Vec<Profile<'a>> {
    set.records().map(|a| Profile::of(a, cfg)).collect()
}

// ---------------------------------------------------------------------------
// Summary statistics
// ---------------------------------------------------------------------------

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Standard deviation around the mean. A sample estimate of fewer than two
/// values is 0.
pub fn std_dev(values: &[f64], estimator: StdEstimator) -> f64 {
    let n = values.len();
    let dof = match estimator {
        StdEstimator::Sample if n < 2 => return 0.0,
        StdEstimator::Sample => n - 1,
        StdEstimator::Population if n == 0 => return 0.0,
        StdEstimator::Population => n,
    };
    let m = mean(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / dof as f64).sqrt()
}

/// Raw-count statistics of one slice (or of the paintings of a base).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SliceStats {
    pub n_mean: f64,
    pub n_std: f64,
    pub m_mean: f64,
    pub m_std: f64,
    pub f_mean: f64,
    pub f_std: f64,
}

fn pairwise_abs(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| (x - y).abs()))
        .collect()
}

fn spread(own: &[f64], base: &[f64], mode: StdMode, estimator: StdEstimator) -> f64 {
    match mode {
        StdMode::PairwiseDistance => std_dev(&pairwise_abs(own, base), estimator),
        StdMode::RawCounts => std_dev(own, estimator),
    }
}

struct CountColumns {
    people: Vec<f64>,
    males: Vec<f64>,
    females: Vec<f64>,
}

impl CountColumns {
    fn of(profiles: &[Profile<'_>]) -> Self {
        Self {
            people: profiles.iter().map(|p| f64::from(p.count)).collect(),
            males: profiles.iter().map(|p| f64::from(p.genders.male)).collect(),
            females: profiles
                .iter()
                .map(|p| f64::from(p.genders.female))
                .collect(),
        }
    }
}

/// Means of the generated counts, and spreads according to `cfg.std_mode`:
/// either of the pairwise |generated − painting| distances or of the
/// generated counts alone.
pub fn slice_stats(
    generated: &impl AnnotationSet,
    base: &impl AnnotationSet,
    cfg: &ScoringConfig,
) -> SliceStats {
    let g = CountColumns::of(&profiles(generated, cfg));
    let b = CountColumns::of(&profiles(base, cfg));
    let (mode, est) = (cfg.std_mode, cfg.std_estimator);
    SliceStats {
        n_mean: mean(&g.people),
        n_std: spread(&g.people, &b.people, mode, est),
        m_mean: mean(&g.males),
        m_std: spread(&g.males, &b.males, mode, est),
        f_mean: mean(&g.females),
        f_std: spread(&g.females, &b.females, mode, est),
    }
}

/// Statistics of the paintings themselves; spreads are always over raw counts.
pub fn base_stats(base: &impl AnnotationSet, cfg: &ScoringConfig) -> SliceStats {
    let b = CountColumns::of(&profiles(base, cfg));
    let est = cfg.std_estimator;
    SliceStats {
        n_mean: mean(&b.people),
        n_std: std_dev(&b.people, est),
        m_mean: mean(&b.males),
        m_std: std_dev(&b.males, est),
        f_mean: mean(&b.females),
        f_std: std_dev(&b.females, est),
    }
}

// ---------------------------------------------------------------------------
// Unified scores
// ---------------------------------------------------------------------------

fn mean_over_pairs<'a, T: 'a>(g: &'a [T], b: &'a [T], f: impl Fn(&T, &T) -> f64) -> f64 {
    let total: f64 = g.iter().flat_map(|x| b.iter().map(|y| f(x, y))).sum();
    total / (g.len() * b.len()) as f64
}

fn count_score(g: &[Profile<'_>], b: &[Profile<'_>]) -> f64 {
    let max = g.iter().chain(b).map(|p| p.count).max().unwrap_or(0);
    if max == 0 {
        return 0.0;
    }
    let max = f64::from(max);
    let norm_mean = |ps: &[Profile<'_>]| {
        ps.iter().map(|p| f64::from(p.count)).sum::<f64>() / ps.len() as f64 / max
    };
    (norm_mean(g) - norm_mean(b)).abs()
}

fn gender_score_of(g: &[Profile<'_>], b: &[Profile<'_>], which: Gender) -> f64 {
    let max = g
        .iter()
        .chain(b)
        .map(|p| p.genders.get(which))
        .max()
        .unwrap_or(0);
    if max == 0 {
        return 0.0;
    }
    let max = f64::from(max);
    mean_over_pairs(g, b, |x, y| {
        (f64::from(x.genders.get(which)) - f64::from(y.genders.get(which))).abs() / max
    })
}

fn age_score_of(g: &[Profile<'_>], b: &[Profile<'_>]) -> f64 {
    let max = g.iter().chain(b).map(|p| p.count).max().unwrap_or(0);
    if max == 0 {
        return 0.0;
    }
    let denom = 2.0 * f64::from(max);
    let score = mean_over_pairs(g, b, |x, y| {
        let l1: u32 = x
            .ages
            .iter()
            .zip(&y.ages)
            .map(|(p, q)| p.abs_diff(*q))
            .sum();
        f64::from(l1) / denom
    });
    if score > 1.0 {
        log::warn!("age score {score} exceeded 1 and was clamped");
    }
    score.clamp(0.0, 1.0)
}

fn sentiment_score_of(g: &[Profile<'_>], b: &[Profile<'_>]) -> f64 {
    mean_over_pairs(g, b, |x, y| (x.sentiment - y.sentiment).abs())
}

fn patch_score_of(
    g: &[Option<&SentimentGrid>],
    b: &[Option<&SentimentGrid>],
) -> Result<f64, MetricsError> {
    let mut total = 0.0;
    let mut compared = 0usize;
    let mut skipped = 0usize;
    for x in g {
        for y in b {
            match (x, y) {
                (Some(gx), Some(gy)) => {
                    let diff: f64 = gx
                        .values()
                        .iter()
                        .zip(gy.values())
                        .map(|(p, q)| (p - q).abs())
                        .sum();
                    total += diff / gx.values().len() as f64;
                    compared += 1;
                }
                _ => skipped += 1,
            }
        }
    }
    if skipped > 0 {
        log::warn!("patch sentiment: skipped {skipped} pair(s) lacking a sentiment grid");
    }
    if compared == 0 {
        return Err(MetricsError::NoComparablePairs);
    }
    Ok(total / compared as f64)
}

/// |mean count(G)/M − mean count(B)/M| where M is the largest count in G ∪ B.
pub fn unified_count_score(
    generated: &impl AnnotationSet,
    base: &impl AnnotationSet,
    cfg: &ScoringConfig,
) -> f64 {
    count_score(&profiles(generated, cfg), &profiles(base, cfg))
}

pub fn gender_score(
    generated: &impl AnnotationSet,
    base: &impl AnnotationSet,
    cfg: &ScoringConfig,
    which: Gender,
) -> f64 {
    gender_score_of(&profiles(generated, cfg), &profiles(base, cfg), which)
}

/// Mean over pairs of the L1 distance between age histograms, divided by
/// twice the largest head count (the largest L1 two images can reach).
pub fn age_score(
    generated: &impl AnnotationSet,
    base: &impl AnnotationSet,
    cfg: &ScoringConfig,
) -> f64 {
    age_score_of(&profiles(generated, cfg), &profiles(base, cfg))
}

pub fn sentiment_score(generated: &impl AnnotationSet, base: &impl AnnotationSet) -> f64 {
    let g: Vec<f64> = generated
        .records()
        .map(AnnotationRecord::sentiment)
        .collect();
    let b: Vec<f64> = base.records().map(AnnotationRecord::sentiment).collect();
    mean_over_pairs(&g, &b, |x, y| (x - y).abs())
}

/// Mean over pairs of the mean per-patch absolute difference. Pairs where
/// either side lacks a grid are skipped.
pub fn patch_sentiment_score(
    generated: &impl AnnotationSet,
    base: &impl AnnotationSet,
) -> Result<f64, MetricsError> {
    let g: Vec<_> = generated
        .records()
        .map(AnnotationRecord::sentiment_grid)
        .collect();
    let b: Vec<_> = base
        .records()
        .map(AnnotationRecord::sentiment_grid)
        .collect();
    patch_score_of(&g, &b)
}

/// The six normalized difference scores of one (generator, prompt) cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnifiedScores {
    pub count: f64,
    pub female: f64,
    pub male: f64,
    pub age: f64,
    pub sentiment: f64,
    /// `None` when no pair carried sentiment grids on both sides.
    pub patch: Option<f64>,
}

impl UnifiedScores {
    pub fn get(&self, component: Component) -> Option<f64> {
        match component {
            Component::Count => Some(self.count),
            Component::Female => Some(self.female),
            Component::Male => Some(self.male),
            Component::Age => Some(self.age),
            Component::Sentiment => Some(self.sentiment),
            Component::PatchSentiment => self.patch,
        }
    }
}

pub fn unified_scores(
    generated: &impl AnnotationSet,
    base: &impl AnnotationSet,
    cfg: &ScoringConfig,
) -> UnifiedScores {
    let g = profiles(generated, cfg);
    let b = profiles(base, cfg);
    UnifiedScores {
        count: count_score(&g, &b),
        female: gender_score_of(&g, &b, Gender::Female),
        male: gender_score_of(&g, &b, Gender::Male),
        age: age_score_of(&g, &b),
        sentiment: sentiment_score_of(&g, &b),
        patch: patch_score_of(&grids(&g), &grids(&b)).ok(),
    }
}

/// Unweighted mean of the configured components.
pub fn overall_score(scores: &UnifiedScores, cfg: &ScoringConfig) -> Result<f64, MetricsError> {
    let values = cfg
        .overall_components
        .iter()
        .map(|&c| scores.get(c).ok_or(MetricsError::MissingComponent(c)))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(MetricsError::Config(InvalidField::new(
            "overall_components",
            "at least one component is required",
        )));
    }
    Ok(mean(&values))
}

// ---------------------------------------------------------------------------
// Score tables
// ---------------------------------------------------------------------------

/// One generator's scores for one prompt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellScores {
    pub generator: GeneratorId,
    pub prompt: PromptId,
    pub images: usize,
    pub stats: SliceStats,
    pub scores: UnifiedScores,
    pub overall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseRow {
    pub prompt: PromptId,
    pub paintings: usize,
    pub stats: SliceStats,
}

/// A generator's overall score averaged across the prompts it was scored on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorOverall {
    pub generator: GeneratorId,
    pub prompts: usize,
    pub overall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    /// The configuration the table was computed with.
    pub config: ScoringConfig,
    /// Sorted by (generator, prompt).
    pub cells: Vec<CellScores>,
    /// Sorted by prompt; one per prompt that has cells.
    pub bases: Vec<BaseRow>,
    /// Sorted by generator.
    pub generator_overall: Vec<GeneratorOverall>,
}

impl ScoreTable {
    pub fn empty(config: ScoringConfig) -> Self {
        Self {
            config,
            cells: Vec::new(),
            bases: Vec::new(),
            generator_overall: Vec::new(),
        }
    }

    pub fn cell(&self, generator: &GeneratorId, prompt: PromptId) -> Option<&CellScores> {
        self.cells
            .iter()
            .find(|c| &c.generator == generator && c.prompt == prompt)
    }

    pub fn base(&self, prompt: PromptId) -> Option<&BaseRow> {
        self.bases.iter().find(|b| b.prompt == prompt)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

fn score_cell(
    slice: &CorpusSlice,
    base: &BaseReference,
    cfg: &ScoringConfig,
) -> Result<CellScores, MetricsError> {
    let scores = unified_scores(slice, base, cfg);
    let overall = overall_score(&scores, cfg).map_err(|e| MetricsError::Cell {
        generator: slice.generator().clone(),
        prompt: slice.prompt(),
        source: Box::new(e),
    })?;
    Ok(CellScores {
        generator: slice.generator().clone(),
        prompt: slice.prompt(),
        images: slice.len(),
        stats: slice_stats(slice, base, cfg),
        scores,
        overall,
    })
}

/// Score every slice against the base of its prompt.
///
/// Cells may be evaluated in parallel; the table is ordered by key either way.
pub fn score_corpus(
    slices: &BTreeMap<SliceKey, CorpusSlice>,
    bases: &BTreeMap<PromptId, BaseReference>,
    cfg: &ScoringConfig,
) -> Result<ScoreTable, MetricsError> {
    cfg.validate()?;
    let jobs = slices
        .values()
        .map(|slice| {
            bases
                .get(&slice.prompt())
                .map(|base| (slice, base))
                .ok_or(MetricsError::MissingBase(slice.prompt()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    #[cfg(feature = "parallel")]
    let cells = {
        use rayon::prelude::*;
        jobs.par_iter()
            .map(|(slice, base)| score_cell(slice, base, cfg))
            .collect::<Result<Vec<_>, _>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let cells = jobs
        .iter()
        .map(|(slice, base)| score_cell(slice, base, cfg))
        .collect::<Result<Vec<_>, _>>()?;

    let mut prompts: Vec<PromptId> = cells.iter().map(|c| c.prompt).collect();
    prompts.sort();
    prompts.dedup();
    let base_rows = prompts
        .into_iter()
        .map(|p| {
            let base = &bases[&p];
            BaseRow {
                prompt: p,
                paintings: base.len(),
                stats: base_stats(base, cfg),
            }
        })
        .collect();

    let mut per_generator: BTreeMap<&GeneratorId, Vec<f64>> = BTreeMap::new();
    for cell in &cells {
        per_generator
            .entry(&cell.generator)
            .or_default()
            .push(cell.overall);
    }
    let generator_overall = per_generator
        .into_iter()
        .map(|(generator, values)| GeneratorOverall {
            generator: generator.clone(),
            prompts: values.len(),
            overall: mean(&values),
        })
        .collect();

    Ok(ScoreTable {
        config: cfg.clone(),
        cells,
        bases: base_rows,
        generator_overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Painting, PersonDetection};

    fn gid(s: &str) -> GeneratorId {
        GeneratorId::new(s).unwrap()
    }

    fn person(conf: f64, gender: Gender, age: (u32, u32)) -> PersonDetection {
        PersonDetection::new([0.0, 0.0, 10.0, 10.0], conf, gender, age.0, age.1).unwrap()
    }

    fn record(id: &str, gen: &str, dets: Vec<PersonDetection>, sentiment: f64) -> AnnotationRecord {
        AnnotationRecord::new(id, gid(gen), PromptId::P1, (64, 64), sentiment)
            .unwrap()
            .with_detections(dets)
    }

    fn males(n: usize) -> Vec<PersonDetection> {
        (0..n)
            .map(|_| person(0.9, Gender::Male, (30, 30)))
            .collect()
    }

    fn slice(recs: Vec<AnnotationRecord>) -> CorpusSlice {
        let g = recs[0].generator().clone();
        CorpusSlice::new(g, PromptId::P1, recs).unwrap()
    }

    fn base(recs: Vec<AnnotationRecord>) -> BaseReference {
        BaseReference::new(
            PromptId::P1,
            recs.into_iter()
                .map(|annotation| Painting {
                    painter: "p".into(),
                    title: "t".into(),
                    year: "1600".into(),
                    annotation,
                })
                .collect(),
        )
        .unwrap()
    }

    fn with_counts(prefix: &str, gen: &str, counts: &[usize]) -> Vec<AnnotationRecord> {
        counts
            .iter()
            .enumerate()
            .map(|(i, &n)| record(&format!("{prefix}{i}"), gen, males(n), 0.5))
            .collect()
    }

    #[test]
    fn count_people_threshold_is_inclusive() {
        let r = record(
            "a",
            "MJ",
            vec![
                person(0.95, Gender::Male, (1, 2)),
                person(0.80, Gender::Male, (1, 2)),
                person(0.79, Gender::Male, (1, 2)),
            ],
            0.5,
        );
        assert_eq!(count_people(&r, 0.8), 2);
        assert_eq!(count_people(&record("b", "MJ", vec![], 0.5), 0.8), 0);
        let low = record(
            "c",
            "MJ",
            vec![
                person(0.5, Gender::Male, (1, 2)),
                person(0.6, Gender::Female, (1, 2)),
            ],
            0.5,
        );
        assert_eq!(count_people(&low, 0.0), 2);
    }

    #[test]
    fn gender_counts_skip_low_confidence() {
        let r = record(
            "a",
            "MJ",
            vec![
                person(0.9, Gender::Female, (1, 2)),
                person(0.9, Gender::Female, (1, 2)),
                person(0.9, Gender::Male, (1, 2)),
            ],
            0.5,
        );
        assert_eq!(gender_counts(&r, 0.8), GenderCounts { female: 2, male: 1 });
        let r = record(
            "b",
            "MJ",
            vec![
                person(0.9, Gender::Female, (1, 2)),
                person(0.5, Gender::Female, (1, 2)),
                person(0.9, Gender::Male, (1, 2)),
            ],
            0.5,
        );
        assert_eq!(gender_counts(&r, 0.8), GenderCounts { female: 1, male: 1 });
        assert_eq!(
            gender_counts(&record("c", "MJ", vec![], 0.5), 0.8),
            GenderCounts::default()
        );
    }

    #[test]
    fn age_bins_default_decades() {
        let cfg = ScoringConfig::default();
        let r = record(
            "a",
            "MJ",
            vec![
                person(0.9, Gender::Male, (25, 32)),
                person(0.9, Gender::Female, (5, 5)),
            ],
            0.5,
        );
        let bins = age_bins(&r, &cfg);
        assert_eq!(bins, [1, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(age_bins(&record("b", "MJ", vec![], 0.5), &cfg), [0; 10]);
        let old = record("c", "MJ", vec![person(0.9, Gender::Male, (95, 95))], 0.5);
        assert_eq!(age_bins(&old, &cfg)[9], 1);
    }

    #[test]
    fn std_examples() {
        // two-pass: mean 2.2, squared deviations 1.44+0.04+0.04+0.64+0.64 = 2.8
        let counts = [1.0, 2.0, 2.0, 3.0, 3.0];
        assert!((std_dev(&counts, StdEstimator::Sample) - (2.8f64 / 4.0).sqrt()).abs() < 1e-12);
        assert!((std_dev(&counts, StdEstimator::Population) - (2.8f64 / 5.0).sqrt()).abs() < 1e-12);
        assert_eq!(std_dev(&[3.0], StdEstimator::Sample), 0.0);
        assert_eq!(std_dev(&[], StdEstimator::Population), 0.0);
    }

    #[test]
    fn pairwise_std_example() {
        let cfg = ScoringConfig::default();
        let g = slice(with_counts("g", "MJ", &[2, 3]));
        let b = base(with_counts("b", "base", &[2, 4]));
        // distances |2-2|, |2-4|, |3-2|, |3-4| = 0, 2, 1, 1
        let stats = slice_stats(&g, &b, &cfg);
        assert!((stats.n_std - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(stats.n_mean, 2.5);
        assert_eq!(stats.f_mean, 0.0);
        let raw = ScoringConfig {
            std_mode: StdMode::RawCounts,
            ..ScoringConfig::default()
        };
        assert!((slice_stats(&g, &b, &raw).n_std - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn base_stats_use_raw_counts() {
        let cfg = ScoringConfig::default();
        let b = base(with_counts("b", "base", &[1, 2, 2, 3, 3]));
        let stats = base_stats(&b, &cfg);
        assert!((stats.n_mean - 2.2).abs() < 1e-12);
        assert_eq!(format!("{:.4}", stats.n_std), "0.8367");
    }

    #[test]
    fn identical_singletons_have_zero_spread() {
        let cfg = ScoringConfig::default();
        let g = slice(with_counts("g", "MJ", &[4]));
        let b = base(with_counts("b", "base", &[4]));
        assert_eq!(slice_stats(&g, &b, &cfg).n_std, 0.0);
    }

    #[test]
    fn count_score_identity_and_empty() {
        let cfg = ScoringConfig::default();
        let g = slice(with_counts("g", "MJ", &[1, 3]));
        let b = base(with_counts("b", "base", &[2, 2]));
        assert_eq!(unified_count_score(&g, &b, &cfg), 0.0);
        let g = slice(with_counts("g", "MJ", &[0, 0]));
        let b = base(with_counts("b", "base", &[0]));
        assert_eq!(unified_count_score(&g, &b, &cfg), 0.0);
    }

    #[test]
    fn gender_score_single_pair() {
        let cfg = ScoringConfig::default();
        let fem = |n| {
            (0..n)
                .map(|_| person(0.9, Gender::Female, (20, 20)))
                .collect()
        };
        let g = slice(vec![record("g", "MJ", fem(2), 0.5)]);
        let b = base(vec![record("b", "base", fem(3), 0.5)]);
        assert!((gender_score(&g, &b, &cfg, Gender::Female) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(gender_score(&g, &b, &cfg, Gender::Male), 0.0);
    }

    #[test]
    fn age_score_examples() {
        let cfg = ScoringConfig::default();
        // a: bins {0-9: 1, 20-29: 1}; b: {20-29: 1}; maxN = 2
        let g = slice(vec![record(
            "g",
            "MJ",
            vec![
                person(0.9, Gender::Male, (5, 5)),
                person(0.9, Gender::Male, (25, 25)),
            ],
            0.5,
        )]);
        let b = base(vec![record(
            "b",
            "base",
            vec![person(0.9, Gender::Male, (22, 24))],
            0.5,
        )]);
        assert!((age_score(&g, &b, &cfg) - 0.25).abs() < 1e-12);
        assert_eq!(
            age_score(&g, &base(vec![g.annotations()[0].clone()]), &cfg),
            0.0
        );

        let g = slice(vec![record("g", "MJ", males(3), 0.5)]);
        let b = base(vec![record("b", "base", vec![], 0.5)]);
        assert!((age_score(&g, &b, &cfg) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sentiment_score_examples() {
        let g = slice(vec![
            record("a", "MJ", vec![], 0.2),
            record("b", "MJ", vec![], 0.4),
        ]);
        let b = base(vec![record("c", "base", vec![], 0.3)]);
        assert!((sentiment_score(&g, &b) - 0.1).abs() < 1e-12);
        let g = slice(vec![record("a", "MJ", vec![], 0.0)]);
        let b = base(vec![record("c", "base", vec![], 1.0)]);
        assert_eq!(sentiment_score(&g, &b), 1.0);
    }

    #[test]
    fn patch_score_examples() {
        let with_grid = |id: &str, gen: &str, v: f64| {
            record(id, gen, vec![], 0.5).with_grid(SentimentGrid::filled(v).unwrap())
        };
        let g = slice(vec![with_grid("a", "MJ", 0.5)]);
        let b = base(vec![with_grid("b", "base", 0.25)]);
        assert!((patch_sentiment_score(&g, &b).unwrap() - 0.25).abs() < 1e-12);
        let g = slice(vec![with_grid("a", "MJ", 0.0)]);
        let b = base(vec![with_grid("b", "base", 1.0)]);
        assert_eq!(patch_sentiment_score(&g, &b).unwrap(), 1.0);

        // the grid-less image is skipped, not counted as zero difference
        let g = slice(vec![
            with_grid("a", "MJ", 0.5),
            record("x", "MJ", vec![], 0.5),
        ]);
        let b = base(vec![with_grid("b", "base", 0.25)]);
        assert!((patch_sentiment_score(&g, &b).unwrap() - 0.25).abs() < 1e-12);

        let g = slice(vec![record("a", "MJ", vec![], 0.5)]);
        assert_eq!(
            patch_sentiment_score(&g, &b).unwrap_err(),
            MetricsError::NoComparablePairs
        );
    }

    #[test]
    fn overall_examples() {
        let cfg = ScoringConfig::default();
        let zeros = UnifiedScores {
            count: 0.0,
            female: 0.0,
            male: 0.0,
            age: 0.0,
            sentiment: 0.0,
            patch: Some(0.0),
        };
        assert_eq!(overall_score(&zeros, &cfg).unwrap(), 0.0);
        let s = UnifiedScores {
            count: 0.1,
            female: 0.2,
            male: 0.3,
            age: 0.0,
            sentiment: 0.2,
            patch: Some(0.4),
        };
        assert!((overall_score(&s, &cfg).unwrap() - 0.2).abs() < 1e-12);
        let one = ScoringConfig {
            overall_components: [Component::Age].into_iter().collect(),
            ..ScoringConfig::default()
        };
        let s = UnifiedScores { age: 0.37, ..s };
        assert_eq!(overall_score(&s, &one).unwrap(), 0.37);
        let s = UnifiedScores { patch: None, ..s };
        assert_eq!(
            overall_score(&s, &cfg).unwrap_err(),
            MetricsError::MissingComponent(Component::PatchSentiment)
        );
    }

    #[test]
    fn score_corpus_requires_bases() {
        let cfg = ScoringConfig::default();
        let slices = crate::ingest::group_slices(with_counts("g", "MJ", &[1]));
        let err = score_corpus(&slices, &BTreeMap::new(), &cfg).unwrap_err();
        assert_eq!(err, MetricsError::MissingBase(PromptId::P1));
    }

    #[test]
    fn score_corpus_reports_cells_missing_a_component() {
        let cfg = ScoringConfig::default();
        let slices = crate::ingest::group_slices(with_counts("g", "MJ", &[1]));
        let bases = BTreeMap::from([(PromptId::P1, base(with_counts("b", "base", &[1])))]);
        match score_corpus(&slices, &bases, &cfg).unwrap_err() {
            MetricsError::Cell { source, .. } => {
                assert_eq!(
                    *source,
                    MetricsError::MissingComponent(Component::PatchSentiment)
                )
            }
            other => panic!("unexpected {other:?}"),
        }
        let no_patch = ScoringConfig {
            overall_components: Component::ALL
                .into_iter()
                .filter(|c| *c != Component::PatchSentiment)
                .collect(),
            ..ScoringConfig::default()
        };
        let table = score_corpus(&slices, &bases, &no_patch).unwrap();
        assert_eq!(table.cells.len(), 1);
        assert_eq!(table.cells[0].overall, 0.0);
    }
}
