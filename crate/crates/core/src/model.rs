//! Domain types shared by the ingest, scoring and reporting layers.
//!
//! Every type that carries an invariant is constructed through a validating
//! constructor (or `TryFrom` its raw wire form), so a value that exists is a
//! value that is valid. None of these types perform I/O.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A field that failed validation, named by its path in the wire format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("field `{field}`: {reason}")]
pub struct InvalidField {
    pub field: String,
    pub reason: String,
}

impl InvalidField {
    pub fn new(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Prefix the field path, e.g. `confidence` -> `detections[2].confidence`.
    pub fn within(mut self, parent: &str) -> Self {
        self.field = format!("{parent}.{}", self.field);
        self
    }
}

fn unit_interval(field: &str, value: f64) -> Result<f64, InvalidField> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(InvalidField::new(
            field,
            format!("must be within [0, 1], got {value}"),
        ))
    }
}

// ---------------------------------------------------------------------------
// Prompts and generators
// ---------------------------------------------------------------------------

/// One of the five biblical passages used as prompts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PromptId {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl PromptId {
    pub const ALL: [PromptId; 5] = [
        PromptId::P1,
        PromptId::P2,
        PromptId::P3,
        PromptId::P4,
        PromptId::P5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PromptId::P1 => "p1",
            PromptId::P2 => "p2",
            PromptId::P3 => "p3",
            PromptId::P4 => "p4",
            PromptId::P5 => "p5",
        }
    }
}

impl fmt::Display for PromptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown prompt id `{0}` (expected one of p1, p2, p3, p4, p5)")]
pub struct UnknownPrompt(pub String);

impl FromStr for PromptId {
    type Err = UnknownPrompt;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PromptId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownPrompt(s.to_string()))
    }
}

impl TryFrom<String> for PromptId {
    type Error = UnknownPrompt;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<PromptId> for String {
    fn from(id: PromptId) -> Self {
        id.as_str().to_string()
    }
}

/// A prompt passage together with its optional reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSpec {
    pub id: PromptId,
    pub title: String,
    pub full_text: String,
    pub truncated_text: Option<String>,
}

/// Short generator code as it appears in annotation files (`MJ`, `DALLE`, ...).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorId(String);

impl GeneratorId {
    pub fn new(id: impl Into<String>) -> Result<Self, InvalidField> {
        let id = id.into();
        if id.trim().is_empty() {
            return Err(InvalidField::new("generator", "must not be empty"));
        }
        Ok(Self(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorFamily {
    Dalle,
    Midjourney,
    StableDiffusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub id: GeneratorId,
    /// Column heading used in reports.
    pub display_name: String,
    pub family: GeneratorFamily,
    pub version: String,
    pub declared_image_count: u32,
}

/// The generators of the reference corpus, in report column order.
pub fn generator_catalog() -> Vec<GeneratorInfo> {
    use GeneratorFamily::*;
    let rows: [(&str, &str, GeneratorFamily, &str, u32); 9] = [
        ("MJ", "Midjourney", Midjourney, "V5.1", 616),
        ("DALLE", "DALL·E 2", Dalle, "V1 beta", 500),
        ("CV", "CV", StableDiffusion, "V1.4", 1000),
        ("PH", "PH", StableDiffusion, "V1.1", 1000),
        ("SAI", "SAI", StableDiffusion, "V2.1", 1000),
        ("DA", "DA", StableDiffusion, "V2.0", 500),
        ("NS", "NS", StableDiffusion, "V1.1", 500),
        ("SG", "SG", StableDiffusion, "V1.4", 1000),
        ("RW", "RW", StableDiffusion, "V1.5", 1000),
    ];
    rows.into_iter()
        .map(|(id, name, family, version, count)| GeneratorInfo {
            id: GeneratorId(id.to_string()),
            display_name: name.to_string(),
            family,
            version: version.to_string(),
            declared_image_count: count,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Annotations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "&'static str")]
pub enum Gender {
    Female,
    Male,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Female => "female",
            Gender::Male => "male",
        }
    }
}

impl From<Gender> for &'static str {
    fn from(g: Gender) -> Self {
        g.as_str()
    }
}

impl TryFrom<String> for Gender {
    type Error = InvalidField;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        match value.as_str() {
            "female" => Ok(Gender::Female),
            "male" => Ok(Gender::Male),
            other => Err(InvalidField::new(
                "gender",
                format!("unknown label `{other}` (expected \"male\" or \"female\")"),
            )),
        }
    }
}

/// Wire form of a detection, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawDetection {
    pub bbox: [f64; 4],
    pub confidence: f64,
    pub gender: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gender_confidence: Option<f64>,
    pub age_min: u32,
    pub age_max: u32,
}

/// One detected person.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDetection", into = "RawDetection")]
pub struct PersonDetection {
    bbox: [f64; 4],
    confidence: f64,
    gender: Gender,
    gender_confidence: Option<f64>,
    age_min: u32,
    age_max: u32,
}

impl PersonDetection {
    pub fn new(
        bbox: [f64; 4],
        confidence: f64,
        gender: Gender,
        age_min: u32,
        age_max: u32,
    ) -> Result<Self, InvalidField> {
        let [x0, y0, x1, y1] = bbox;
        if !bbox.iter().all(|v| v.is_finite()) {
            return Err(InvalidField::new("bbox", "coordinates must be finite"));
        }
        if x0 >= x1 || y0 >= y1 {
            return Err(InvalidField::new(
                "bbox",
                format!("expected x0 < x1 and y0 < y1, got {bbox:?}"),
            ));
        }
        unit_interval("confidence", confidence)?;
        if age_min > age_max {
            return Err(InvalidField::new(
                "age_min",
                format!("age_min {age_min} exceeds age_max {age_max}"),
            ));
        }
        Ok(Self {
            bbox,
            confidence,
            gender,
            gender_confidence: None,
            age_min,
            age_max,
        })
    }

    pub fn with_gender_confidence(mut self, value: f64) -> Result<Self, InvalidField> {
        self.gender_confidence = Some(unit_interval("gender_confidence", value)?);
        Ok(self)
    }

    pub fn bbox(&self) -> [f64; 4] {
        self.bbox
    }

    pub fn confidence(&self) -> f64 {
        self.confidence
    }

    pub fn gender(&self) -> Gender {
        self.gender
    }

    pub fn gender_confidence(&self) -> Option<f64> {
        self.gender_confidence
    }

    pub fn age_range(&self) -> (u32, u32) {
        (self.age_min, self.age_max)
    }

    /// Point estimate of the age: the midpoint of the predicted range.
    pub fn estimated_age(&self) -> f64 {
        (f64::from(self.age_min) + f64::from(self.age_max)) / 2.0
    }

    pub fn passes(&self, threshold: f64) -> bool {
        self.confidence >= threshold
    }
}

impl TryFrom<RawDetection> for PersonDetection {
    type Error = InvalidField;

    fn try_from(raw: RawDetection) -> Result<Self, Self::Error> {
        let gender = Gender::try_from(raw.gender)?;
        let det = PersonDetection::new(raw.bbox, raw.confidence, gender, raw.age_min, raw.age_max)?;
        match raw.gender_confidence {
            Some(c) => det.with_gender_confidence(c),
            None => Ok(det),
        }
    }
}

impl From<PersonDetection> for RawDetection {
    fn from(d: PersonDetection) -> Self {
        RawDetection {
            bbox: d.bbox,
            confidence: d.confidence,
            gender: d.gender.as_str().to_string(),
            gender_confidence: d.gender_confidence,
            age_min: d.age_min,
            age_max: d.age_max,
        }
    }
}

/// Side length of the patch grid.
pub const GRID_SIDE: usize = 8;
pub const GRID_CELLS: usize = GRID_SIDE * GRID_SIDE;

/// Per-patch sentiment values on a fixed 8×8 grid, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct SentimentGrid {
    values: Vec<f64>,
}

impl SentimentGrid {
    pub fn new(values: Vec<f64>) -> Result<Self, InvalidField> {
        if values.len() != GRID_CELLS {
            return Err(InvalidField::new(
                "sentiment_grid",
                format!("expected {GRID_CELLS} values, got {}", values.len()),
            ));
        }
        for (i, v) in values.iter().enumerate() {
            let (r, c) = (i / GRID_SIDE, i % GRID_SIDE);
            unit_interval(&format!("sentiment_grid[{r}][{c}]"), *v)?;
        }
        Ok(Self { values })
    }

    pub fn filled(value: f64) -> Result<Self, InvalidField> {
        Self::new(vec![value; GRID_CELLS])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * GRID_SIDE + col]
    }
}

impl TryFrom<Vec<Vec<f64>>> for SentimentGrid {
    type Error = InvalidField;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, Self::Error> {
        if rows.len() != GRID_SIDE {
            return Err(InvalidField::new(
                "sentiment_grid",
                format!("expected {GRID_SIDE} rows, got {}", rows.len()),
            ));
        }
        if let Some((r, row)) = rows
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != GRID_SIDE)
        {
            return Err(InvalidField::new(
                format!("sentiment_grid[{r}]"),
                format!("expected {GRID_SIDE} columns, got {}", row.len()),
            ));
        }
        Self::new(rows.into_iter().flatten().collect())
    }
}

impl From<SentimentGrid> for Vec<Vec<f64>> {
    fn from(grid: SentimentGrid) -> Self {
        grid.values.chunks(GRID_SIDE).map(<[f64]>::to_vec).collect()
    }
}

/// Wire form of an annotation record, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawAnnotation {
    pub image_id: String,
    pub generator: String,
    pub prompt: String,
    pub width: u32,
    pub height: u32,
    pub detections: Vec<RawDetection>,
    pub sentiment: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sentiment_grid: Option<Vec<Vec<f64>>>,
}

/// Everything the annotators reported about one image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAnnotation", into = "RawAnnotation")]
pub struct AnnotationRecord {
    image_id: String,
    generator: GeneratorId,
    prompt: PromptId,
    width: u32,
    height: u32,
    detections: Vec<PersonDetection>,
    sentiment: f64,
    sentiment_grid: Option<SentimentGrid>,
}

impl AnnotationRecord {
    /// A record with no detections and no patch grid; extend it with
    /// [`with_detections`](Self::with_detections) and
    /// [`with_grid`](Self::with_grid).
    pub fn new(
        image_id: impl Into<String>,
        generator: GeneratorId,
        prompt: PromptId,
        (width, height): (u32, u32),
        sentiment: f64,
    ) -> Result<Self, InvalidField> {
        let image_id = image_id.into();
        if image_id.is_empty() {
            return Err(InvalidField::new("image_id", "must not be empty"));
        }
        if width == 0 {
            return Err(InvalidField::new("width", "must be positive"));
        }
        if height == 0 {
            return Err(InvalidField::new("height", "must be positive"));
        }
        unit_interval("sentiment", sentiment)?;
        Ok(Self {
            image_id,
            generator,
            prompt,
            width,
            height,
            detections: Vec::new(),
            sentiment,
            sentiment_grid: None,
        })
    }

    pub fn with_detections(mut self, detections: Vec<PersonDetection>) -> Self {
        self.detections = detections;
        self
    }

    pub fn with_grid(mut self, grid: SentimentGrid) -> Self {
        self.sentiment_grid = Some(grid);
        self
    }

    pub fn image_id(&self) -> &str {
        &self.image_id
    }

    pub fn generator(&self) -> &GeneratorId {
        &self.generator
    }

    pub fn prompt(&self) -> PromptId {
        self.prompt
    }

    pub fn size(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn detections(&self) -> &[PersonDetection] {
        &self.detections
    }

    pub fn sentiment(&self) -> f64 {
        self.sentiment
    }

    pub fn sentiment_grid(&self) -> Option<&SentimentGrid> {
        self.sentiment_grid.as_ref()
    }

    /// Detections at or above the confidence threshold.
    pub fn confident(&self, threshold: f64) -> impl Iterator<Item = &PersonDetection> {
        self.detections.iter().filter(move |d| d.passes(threshold))
    }
}

impl TryFrom<RawAnnotation> for AnnotationRecord {
    type Error = InvalidField;

    fn try_from(raw: RawAnnotation) -> Result<Self, Self::Error> {
        let generator = GeneratorId::new(raw.generator)?;
        let prompt = raw
            .prompt
            .parse::<PromptId>()
            .map_err(|e| InvalidField::new("prompt", e.to_string()))?;
        let detections = raw
            .detections
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                PersonDetection::try_from(d).map_err(|e| e.within(&format!("detections[{i}]")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let record = AnnotationRecord::new(
            raw.image_id,
            generator,
            prompt,
            (raw.width, raw.height),
            raw.sentiment,
        )?
        .with_detections(detections);
        match raw.sentiment_grid {
            Some(rows) => Ok(record.with_grid(SentimentGrid::try_from(rows)?)),
            None => Ok(record),
        }
    }
}

impl From<AnnotationRecord> for RawAnnotation {
    fn from(a: AnnotationRecord) -> Self {
        RawAnnotation {
            image_id: a.image_id,
            generator: a.generator.0,
            prompt: a.prompt.as_str().to_string(),
            width: a.width,
            height: a.height,
            detections: a.detections.into_iter().map(RawDetection::from).collect(),
            sentiment: a.sentiment,
            sentiment_grid: a.sentiment_grid.map(Vec::from),
        }
    }
}

// ---------------------------------------------------------------------------
// Base references
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Painting {
    pub painter: String,
    pub title: String,
    pub year: String,
    pub annotation: AnnotationRecord,
}

/// The number of reference paintings per prompt in the original study.
pub const EXPECTED_PAINTINGS: usize = 5;

/// Reference paintings for one prompt.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaseReference {
    prompt: PromptId,
    paintings: Vec<Painting>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("base for prompt {0} has no paintings")]
    EmptyBase(PromptId),
    #[error("painting {index} ({title}) is annotated with prompt {found}, expected {expected}")]
    PromptMismatch {
        index: usize,
        title: String,
        expected: PromptId,
        found: PromptId,
    },
}

impl BaseReference {
    pub fn new(prompt: PromptId, paintings: Vec<Painting>) -> Result<Self, BaseError> {
        if paintings.is_empty() {
            return Err(BaseError::EmptyBase(prompt));
        }
        if let Some((index, p)) = paintings
            .iter()
            .enumerate()
            .find(|(_, p)| p.annotation.prompt() != prompt)
        {
            return Err(BaseError::PromptMismatch {
                index,
                title: p.title.clone(),
                expected: prompt,
                found: p.annotation.prompt(),
            });
        }
        Ok(Self { prompt, paintings })
    }

    pub fn prompt(&self) -> PromptId {
        self.prompt
    }

    pub fn paintings(&self) -> &[Painting] {
        &self.paintings
    }

    pub fn len(&self) -> usize {
        self.paintings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paintings.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Scoring configuration
// ---------------------------------------------------------------------------

/// Number of age groups.
pub const AGE_GROUPS: usize = 10;

/// Lower edges of the ten age groups. Group `i` covers `[edges[i], edges[i+1])`
/// and the last group is open-ended, so the bins tile `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct AgeBins {
    lower_edges: [u32; AGE_GROUPS],
}

impl AgeBins {
    pub fn new(lower_edges: &[u32]) -> Result<Self, InvalidField> {
        let edges: [u32; AGE_GROUPS] = lower_edges.try_into().map_err(|_| {
            InvalidField::new(
                "age_bin_edges",
                format!(
                    "expected {AGE_GROUPS} lower edges, got {}",
                    lower_edges.len()
                ),
            )
        })?;
        if edges[0] != 0 {
            return Err(InvalidField::new("age_bin_edges", "first edge must be 0"));
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(InvalidField::new(
                "age_bin_edges",
                "edges must be strictly increasing",
            ));
        }
        Ok(Self { lower_edges: edges })
    }

    pub fn decades() -> Self {
        let mut lower_edges = [0; AGE_GROUPS];
        for (i, e) in lower_edges.iter_mut().enumerate() {
            *e = 10 * i as u32;
        }
        Self { lower_edges }
    }

    pub fn lower_edges(&self) -> &[u32; AGE_GROUPS] {
        &self.lower_edges
    }

    pub fn index_of(&self, age: f64) -> usize {
        self.lower_edges
            .iter()
            .rposition(|&edge| f64::from(edge) <= age)
            .unwrap_or(0)
    }

    /// Labels such as `0-9`, `10-19`, ..., `90+`.
    pub fn labels(&self) -> Vec<String> {
        (0..AGE_GROUPS)
            .map(|i| match self.lower_edges.get(i + 1) {
                Some(next) => format!("{}-{}", self.lower_edges[i], next - 1),
                None => format!("{}+", self.lower_edges[i]),
            })
            .collect()
    }
}

impl Default for AgeBins {
    fn default() -> Self {
        Self::decades()
    }
}

impl TryFrom<Vec<u32>> for AgeBins {
    type Error = InvalidField;

    fn try_from(value: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(&value)
    }
}

impl From<AgeBins> for Vec<u32> {
    fn from(bins: AgeBins) -> Self {
        bins.lower_edges.to_vec()
    }
}

/// What the generator-row standard deviations measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StdMode {
    /// Spread of |count(a) - count(b)| over all generated × painting pairs.
    #[default]
    PairwiseDistance,
    /// Spread of the generated counts alone.
    RawCounts,
}

impl FromStr for StdMode {
    type Err = InvalidField;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "pairwise_distance" | "pairwise" => Ok(StdMode::PairwiseDistance),
            "raw_counts" | "raw" => Ok(StdMode::RawCounts),
            other => Err(InvalidField::new(
                "std_mode",
                format!("unknown mode `{other}` (expected pairwise_distance or raw_counts)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StdEstimator {
    /// Divide by n - 1.
    #[default]
    Sample,
    /// Divide by n.
    Population,
}

/// A unified score that can take part in the overall average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Count,
    Female,
    Male,
    Age,
    Sentiment,
    PatchSentiment,
}

impl Component {
    pub const ALL: [Component; 6] = [
        Component::Count,
        Component::Female,
        Component::Male,
        Component::Age,
        Component::Sentiment,
        Component::PatchSentiment,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::Count => "count",
            Component::Female => "female",
            Component::Male => "male",
            Component::Age => "age",
            Component::Sentiment => "sentiment",
            Component::PatchSentiment => "patch_sentiment",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const DEFAULT_CONFIDENCE_THRESHOLD: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScoringConfig {
    /// Detections below this confidence are ignored everywhere.
    pub confidence_threshold: f64,
    #[serde(rename = "age_bin_edges")]
    pub age_bins: AgeBins,
    pub std_mode: StdMode,
    pub std_estimator: StdEstimator,
    pub overall_components: BTreeSet<Component>,
    /// Decimal places used when presenting numbers.
    pub rounding: u32,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        Self {
            confidence_threshold: DEFAULT_CONFIDENCE_THRESHOLD,
            age_bins: AgeBins::decades(),
            std_mode: StdMode::default(),
            std_estimator: StdEstimator::default(),
            overall_components: Component::ALL.into_iter().collect(),
            rounding: 4,
        }
    }
}

impl ScoringConfig {
    pub fn validate(&self) -> Result<(), InvalidField> {
        unit_interval("confidence_threshold", self.confidence_threshold)?;
        if self.overall_components.is_empty() {
            return Err(InvalidField::new(
                "overall_components",
                "at least one component is required",
            ));
        }
        if self.rounding > 12 {
            return Err(InvalidField::new("rounding", "at most 12 decimal places"));
        }
        Ok(())
    }
}
