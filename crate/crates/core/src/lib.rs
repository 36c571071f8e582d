//! Scoring engine for corpora of generated biblical images.
//!
//! Generated images and reference paintings arrive as annotation records
//! (person detections with gender and age range, a sentiment value and an
//! optional 8×8 patch-sentiment grid). The engine groups them per
//! (generator, prompt), compares every generated image with every painting
//! of the same prompt, and reports normalized difference scores in `[0, 1]`
//! where lower means closer to the paintings.
//!
//! Modules:
//! - [`model`]: validated domain types and the scoring configuration.
//! - [`ingest`]: annotation and base-file parsing, slice grouping.
//! - [`prompts`]: the five prompt passages and stopword truncation.
//! - [`metrics`]: per-image counts, raw-count statistics, unified scores.
//! - [`distributions`]: head-count histograms and population pyramids.
//! - [`report`]: Markdown, CSV and JSON output.

pub mod distributions;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod prompts;
pub mod report;

pub use distributions::{
    base_histogram, base_pyramid, count_histogram, population_pyramid, CountHistogram,
    PopulationPyramid, PyramidSource,
};
pub use ingest::{
    group_slices, load_base, parse_annotations, serialize_annotations, CorpusSlice, IngestError,
    Parsed, SliceKey,
};
pub use metrics::{
    score_corpus, AnnotationSet, MetricsError, ScoreTable, SliceStats, UnifiedScores,
};
pub use model::{
    AnnotationRecord, BaseReference, Component, Gender, GeneratorId, PersonDetection, PromptId,
    ScoringConfig, SentimentGrid, StdEstimator, StdMode,
};
pub use prompts::{list_prompts, truncate_prompt, StopwordList, TruncateError};
