//! Head-count histograms and gender × age population pyramids.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ingest::CorpusSlice;
use crate::metrics::{count_people, AnnotationSet};
use crate::model::{BaseReference, Gender, GeneratorId, PromptId, ScoringConfig, AGE_GROUPS};

/// Share of images (in percent) showing each observed number of people.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountHistogram {
    pub generator: GeneratorId,
    pub prompt: PromptId,
    pub images: usize,
    pub proportions: BTreeMap<u32, f64>,
}

impl CountHistogram {
    pub fn total_percent(&self) -> f64 {
        self.proportions.values().sum()
    }
}

fn histogram_of(
    set: &impl AnnotationSet,
    generator: GeneratorId,
    cfg: &ScoringConfig,
) -> CountHistogram {
    let mut tally: BTreeMap<u32, usize> = BTreeMap::new();
    let mut images = 0;
    for a in set.records() {
        *tally
            .entry(count_people(a, cfg.confidence_threshold))
            .or_default() += 1;
        images += 1;
    }
    let n = images as f64;
    CountHistogram {
        generator,
        prompt: set.prompt(),
        images,
        proportions: tally
            .into_iter()
            .map(|(count, k)| (count, 100.0 * k as f64 / n))
            .collect(),
    }
}

pub fn count_histogram(slice: &CorpusSlice, cfg: &ScoringConfig) -> CountHistogram {
    histogram_of(slice, slice.generator().clone(), cfg)
}

/// Histogram over the reference paintings, labelled with generator `base`.
pub fn base_histogram(base: &BaseReference, cfg: &ScoringConfig) -> CountHistogram {
    histogram_of(base, GeneratorId::new("base").expect("non-empty id"), cfg)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PyramidSource {
    Base,
    Generator(GeneratorId),
}

impl fmt::Display for PyramidSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PyramidSource::Base => f.write_str("base"),
            PyramidSource::Generator(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidBin {
    pub label: String,
    pub female: u32,
    pub male: u32,
}

/// Detections accumulated over a whole slice (or base), split by age group
/// and gender.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopulationPyramid {
    pub source: PyramidSource,
    pub prompt: PromptId,
    pub bins: Vec<PyramidBin>,
}

impl PopulationPyramid {
    pub fn total(&self) -> u32 {
        self.bins.iter().map(|b| b.female + b.male).sum()
    }

    /// Bin-wise sum with another pyramid over the same age groups.
    pub fn merged(&self, other: &PopulationPyramid) -> PopulationPyramid {
        assert_eq!(
            self.bins.len(),
            other.bins.len(),
            "pyramids use different age groups"
        );
        PopulationPyramid {
            source: self.source.clone(),
            prompt: self.prompt,
            bins: self
                .bins
                .iter()
                .zip(&other.bins)
                .map(|(a, b)| PyramidBin {
                    label: a.label.clone(),
                    female: a.female + b.female,
                    male: a.male + b.male,
                })
                .collect(),
        }
    }
}

fn pyramid_of(
    set: &impl AnnotationSet,
    source: PyramidSource,
    cfg: &ScoringConfig,
) -> PopulationPyramid {
    let mut counts = [(0u32, 0u32); AGE_GROUPS];
    for a in set.records() {
        for d in a.confident(cfg.confidence_threshold) {
            let cell = &mut counts[cfg.age_bins.index_of(d.estimated_age())];
            match d.gender() {
                Gender::Female => cell.0 += 1,
                Gender::Male => cell.1 += 1,
            }
        }
    }
    PopulationPyramid {
        source,
        prompt: set.prompt(),
        bins: cfg
            .age_bins
            .labels()
            .into_iter()
            .zip(counts)
            .map(|(label, (female, male))| PyramidBin {
                label,
                female,
                male,
            })
            .collect(),
    }
}

pub fn population_pyramid(slice: &CorpusSlice, cfg: &ScoringConfig) -> PopulationPyramid {
    pyramid_of(
        slice,
        PyramidSource::Generator(slice.generator().clone()),
        cfg,
    )
}

pub fn base_pyramid(base: &BaseReference, cfg: &ScoringConfig) -> PopulationPyramid {
    pyramid_of(base, PyramidSource::Base, cfg)
}
