//! Reading, validating and grouping annotation and base-painting files.
//!
//! Annotation files hold one JSON record per line. Base files are a single
//! JSON document:
//!
//! ```json
//! { "prompts": { "p2": { "paintings": [
//!     { "painter": "...", "title": "...", "year": "1563", "annotation": { ... } }
//! ] } } }
//! ```

use std::collections::{BTreeMap, HashMap};
use std::io::{self, BufRead, Read, Write};

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::model::{
    AnnotationRecord, BaseError, BaseReference, GeneratorId, InvalidField, Painting, PromptId,
    RawAnnotation, EXPECTED_PAINTINGS,
};

const RECORD_FIELDS: &[&str] = &[
    "image_id",
    "generator",
    "prompt",
    "width",
    "height",
    "detections",
    "sentiment",
    "sentiment_grid",
];

const DETECTION_FIELDS: &[&str] = &[
    "bbox",
    "confidence",
    "gender",
    "gender_confidence",
    "age_min",
    "age_max",
];

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: malformed record: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("line {line}: duplicate image_id `{id}`")]
    DuplicateImageId { id: String, line: usize },
    #[error("{}field `{field}`: {reason}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    SchemaViolation {
        line: Option<usize>,
        field: String,
        reason: String,
    },
    #[error("base for prompt {0} has no paintings")]
    EmptyBase(PromptId),
}

impl IngestError {
    fn schema(line: Option<usize>, err: InvalidField) -> Self {
        IngestError::SchemaViolation {
            line,
            field: err.field,
            reason: err.reason,
        }
    }

    /// The 1-based line the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            IngestError::MalformedLine { line, .. }
            | IngestError::DuplicateImageId { line, .. } => Some(*line),
            IngestError::SchemaViolation { line, .. } => *line,
            _ => None,
        }
    }
}

/// Parsed content plus the non-fatal diagnostics raised while reading it.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

fn warn(warnings: &mut Vec<String>, message: String) {
    log::warn!("{message}");
    warnings.push(message);
}

fn unknown_keys<'a>(value: &'a Value, known: &[&str]) -> Vec<&'a str> {
    match value.as_object() {
        Some(map) => map
            .keys()
            .map(String::as_str)
            .filter(|k| !known.contains(k))
            .collect(),
        None => Vec::new(),
    }
}

/// Deserialize `value` into `T`, reporting failures with the JSON path of the
/// offending field.
fn decode<T: for<'de> Deserialize<'de>>(value: Value) -> Result<T, InvalidField> {
    serde_path_to_error::deserialize(value).map_err(|err| {
        let path = err.path().to_string();
        let field = if path == "." {
            "record".to_string()
        } else {
            path
        };
        InvalidField::new(field, err.into_inner().to_string())
    })
}

fn parse_record(value: Value) -> Result<AnnotationRecord, InvalidField> {
    let raw: RawAnnotation = decode(value)?;
    AnnotationRecord::try_from(raw)
}

fn record_unknown_fields(value: &Value) -> Vec<String> {
    let mut found: Vec<String> = unknown_keys(value, RECORD_FIELDS)
        .into_iter()
        .map(str::to_string)
        .collect();
    if let Some(dets) = value.get("detections").and_then(Value::as_array) {
        for (i, d) in dets.iter().enumerate() {
            found.extend(
                unknown_keys(d, DETECTION_FIELDS)
                    .into_iter()
                    .map(|k| format!("detections[{i}].{k}")),
            );
        }
    }
    found
}

/// Parse a line-delimited annotation stream.
///
/// Blank lines are skipped. Records come back in file order; unknown fields
/// are ignored and reported as warnings.
pub fn parse_annotations<R: BufRead>(
    reader: R,
) -> Result<Parsed<Vec<AnnotationRecord>>, IngestError> {
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&line).map_err(|e| IngestError::MalformedLine {
            line: line_no,
            message: e.to_string(),
        })?;
        if !value.is_object() {
            return Err(IngestError::MalformedLine {
                line: line_no,
                message: "expected a JSON object".to_string(),
            });
        }
        let unknown = record_unknown_fields(&value);
        if !unknown.is_empty() {
            warn(
                &mut warnings,
                format!(
                    "line {line_no}: ignoring unknown field(s): {}",
                    unknown.join(", ")
                ),
            );
        }
        let record = parse_record(value).map_err(|e| IngestError::schema(Some(line_no), e))?;
        if seen
            .insert(record.image_id().to_string(), line_no)
            .is_some()
        {
            return Err(IngestError::DuplicateImageId {
                id: record.image_id().to_string(),
                line: line_no,
            });
        }
        records.push(record);
    }
    Ok(Parsed {
        value: records,
        warnings,
    })
}

/// Write records in the line-delimited wire format, one per line.
pub fn write_annotations<W: Write>(records: &[AnnotationRecord], mut out: W) -> io::Result<()> {
    for record in records {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn serialize_annotations(records: &[AnnotationRecord]) -> String {
    let mut buf = Vec::new();
    write_annotations(records, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

// ---------------------------------------------------------------------------
// Slices
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("slice {generator}/{prompt} has no annotations")]
    EmptySlice {
        generator: GeneratorId,
        prompt: PromptId,
    },
    #[error(
        "image `{image_id}` belongs to {found_generator}/{found_prompt}, not {generator}/{prompt}"
    )]
    KeyMismatch {
        image_id: String,
        generator: GeneratorId,
        prompt: PromptId,
        found_generator: GeneratorId,
        found_prompt: PromptId,
    },
}

/// All generated annotations for one (generator, prompt) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSlice {
    generator: GeneratorId,
    prompt: PromptId,
    annotations: Vec<AnnotationRecord>,
}

impl CorpusSlice {
    pub fn new(
        generator: GeneratorId,
        prompt: PromptId,
        annotations: Vec<AnnotationRecord>,
    ) -> Result<Self, SliceError> {
        if annotations.is_empty() {
            return Err(SliceError::EmptySlice { generator, prompt });
        }
        if let Some(a) = annotations
            .iter()
            .find(|a| a.generator() != &generator || a.prompt() != prompt)
        {
            return Err(SliceError::KeyMismatch {
                image_id: a.image_id().to_string(),
                found_generator: a.generator().clone(),
                found_prompt: a.prompt(),
                generator,
                prompt,
            });
        }
        Ok(Self {
            generator,
            prompt,
            annotations,
        })
    }

    pub fn generator(&self) -> &GeneratorId {
        &self.generator
    }

    pub fn prompt(&self) -> PromptId {
        self.prompt
    }

    pub fn annotations(&self) -> &[AnnotationRecord] {
        &self.annotations
    }

    pub fn len(&self) -> usize {
        self.annotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.annotations.is_empty()
    }
}

pub type SliceKey = (GeneratorId, PromptId);

/// Partition records by (generator, prompt). Keys iterate in sorted order and
/// records keep their input order within a slice.
pub fn group_slices(records: Vec<AnnotationRecord>) -> BTreeMap<SliceKey, CorpusSlice> {
    let mut groups: BTreeMap<SliceKey, Vec<AnnotationRecord>> = BTreeMap::new();
    for record in records {
        groups
            .entry((record.generator().clone(), record.prompt()))
            .or_default()
            .push(record);
    }
    groups
        .into_iter()
        .map(|((generator, prompt), annotations)| {
            let slice = CorpusSlice {
                generator: generator.clone(),
                prompt,
                annotations,
            };
            ((generator, prompt), slice)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Base file
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct RawBaseFile {
    prompts: BTreeMap<String, RawPromptBase>,
}

#[derive(Deserialize)]
struct RawPromptBase {
    paintings: Vec<RawPainting>,
}

#[derive(Deserialize)]
struct RawPainting {
    painter: String,
    title: String,
    year: String,
    annotation: Value,
}

/// Load the reference paintings, one [`BaseReference`] per prompt present.
///
/// A prompt with a painting count other than five is accepted with a warning.
pub fn load_base<R: Read>(
    reader: R,
) -> Result<Parsed<BTreeMap<PromptId, BaseReference>>, IngestError> {
    let value: Value =
        serde_json::from_reader(reader).map_err(|e| IngestError::SchemaViolation {
            line: None,
            field: "document".to_string(),
            reason: e.to_string(),
        })?;
    let mut warnings = Vec::new();
    let unknown = unknown_keys(&value, &["prompts"]);
    if !unknown.is_empty() {
        warn(
            &mut warnings,
            format!("base: ignoring unknown field(s): {}", unknown.join(", ")),
        );
    }
    let raw: RawBaseFile = decode(value).map_err(|e| IngestError::schema(None, e))?;

    let mut bases = BTreeMap::new();
    for (key, prompt_base) in raw.prompts {
        let prompt: PromptId =
            key.parse().map_err(
                |e: crate::model::UnknownPrompt| IngestError::SchemaViolation {
                    line: None,
                    field: format!("prompts.{key}"),
                    reason: e.to_string(),
                },
            )?;
        let mut paintings = Vec::with_capacity(prompt_base.paintings.len());
        for (i, p) in prompt_base.paintings.into_iter().enumerate() {
            let path = format!("prompts.{key}.paintings[{i}].annotation");
            let unknown = record_unknown_fields(&p.annotation);
            if !unknown.is_empty() {
                warn(
                    &mut warnings,
                    format!("{path}: ignoring unknown field(s): {}", unknown.join(", ")),
                );
            }
            let annotation = parse_record(p.annotation)
                .map_err(|e| IngestError::schema(None, e.within(&path)))?;
            paintings.push(Painting {
                painter: p.painter,
                title: p.title,
                year: p.year,
                annotation,
            });
        }
        let count = paintings.len();
        let base = BaseReference::new(prompt, paintings).map_err(|e| match e {
            BaseError::EmptyBase(p) => IngestError::EmptyBase(p),
            other @ BaseError::PromptMismatch { index, .. } => IngestError::SchemaViolation {
                line: None,
                field: format!("prompts.{key}.paintings[{index}].annotation.prompt"),
                reason: other.to_string(),
            },
        })?;
        if count != EXPECTED_PAINTINGS {
            warn(
                &mut warnings,
                format!("base for prompt {prompt} has {count} painting(s), expected {EXPECTED_PAINTINGS}"),
            );
        }
        bases.insert(prompt, base);
    }
    Ok(Parsed {
        value: bases,
        warnings,
    })
}
