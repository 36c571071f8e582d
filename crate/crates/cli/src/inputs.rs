//! Loading annotation and base files, with errors mapped to exit codes.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use log::warn;
use vdd_core::ingest::Parsed;
use vdd_core::{
    group_slices, load_base, parse_annotations, AnnotationRecord, BaseReference, CorpusSlice,
    IngestError, PromptId, SliceKey,
};

use crate::{CliResult, Failure};

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .with_context(|| format!("cannot open {}", path.display()))
        .map_err(Failure::io)
}

fn ingest_failure(path: &Path, err: IngestError) -> Failure {
    let code = match err {
        IngestError::Io(_) => crate::exit::IO,
        _ => crate::exit::VALIDATION,
    };
    Failure {
        code,
        error: anyhow!(err).context(path.display().to_string()),
    }
}

fn log_warnings<T>(path: &Path, parsed: Parsed<T>) -> T {
    for w in &parsed.warnings {
        warn!("{}: {w}", path.display());
    }
    parsed.value
}

pub fn load_annotations(path: &Path) -> CliResult<Vec<AnnotationRecord>> {
    let parsed = parse_annotations(open(path)?).map_err(|e| ingest_failure(path, e))?;
    Ok(log_warnings(path, parsed))
}

/// Reads every file and groups the records; image ids must be unique across
/// all files.
pub fn load_generated(paths: &[PathBuf]) -> CliResult<BTreeMap<SliceKey, CorpusSlice>> {
    let mut seen: HashMap<String, &Path> = HashMap::new();
    let mut all = Vec::new();
    for path in paths {
        for record in load_annotations(path)? {
            if let Some(first) = seen.insert(record.image_id().to_owned(), path) {
                return Err(Failure::validation(anyhow!(
                    "{}: image_id `{}` already appears in {}",
                    path.display(),
                    record.image_id(),
                    first.display()
                )));
            }
            all.push(record);
        }
    }
    if all.is_empty() {
        return Err(Failure::validation(anyhow!(
            "no annotation records in the generated files"
        )));
    }
    Ok(group_slices(all))
}

pub fn load_base_file(path: &Path) -> CliResult<BTreeMap<PromptId, BaseReference>> {
    let parsed = load_base(open(path)?).map_err(|e| ingest_failure(path, e))?;
    Ok(log_warnings(path, parsed))
}

fn looks_like_base(text: &str) -> bool {
    matches!(
        serde_json::from_str::<serde_json::Value>(text),
        Ok(serde_json::Value::Object(map)) if map.contains_key("prompts")
    )
}

/// Validates one file, detecting whether it is a base document or JSONL.
/// Returns a one-line summary on success.
pub fn validate_file(path: &Path) -> CliResult<String> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::io)?;
    if looks_like_base(&text) {
        let parsed = load_base(text.as_bytes()).map_err(|e| ingest_failure(path, e))?;
        let warnings = parsed.warnings.len();
        let bases = log_warnings(path, parsed);
        let paintings: usize = bases.values().map(BaseReference::len).sum();
        Ok(format!(
            "base, {} prompts, {paintings} paintings, {warnings} warnings",
            bases.len()
        ))
    } else {
        let parsed = parse_annotations(text.as_bytes()).map_err(|e| ingest_failure(path, e))?;
        let warnings = parsed.warnings.len();
        let records = log_warnings(path, parsed);
        Ok(format!(
            "annotations, {} records, {warnings} warnings",
            records.len()
        ))
    }
}
