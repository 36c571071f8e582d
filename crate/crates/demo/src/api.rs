use std::collections::BTreeMap;

use serde::Serialize;
use vdd_core::distributions::{base_pyramid, count_histogram, population_pyramid};
use vdd_core::ingest::{load_base, parse_annotations};
use vdd_core::prompts::{list_prompts, prompt, truncate_prompt, StopwordList};
use vdd_core::report::{column_order, emit_overall_csv, emit_score_table_md};
use vdd_core::{
    group_slices, score_corpus, BaseReference, CorpusSlice, CountHistogram, PopulationPyramid,
    PromptId, ScoringConfig, SliceKey,
};

pub const SAMPLE_GENERATED: &str = include_str!("../../../data/sample/generated.jsonl");
pub const SAMPLE_BASE: &str = include_str!("../../../data/sample/base.json");

#[derive(Serialize)]
struct PromptEntry {
    id: PromptId,
    title: String,
    text: String,
    chars: usize,
}

pub fn prompts_json() -> String {
    let entries: Vec<PromptEntry> = list_prompts()
        .into_iter()
        .map(|p| PromptEntry {
            id: p.id,
            chars: p.full_text.chars().count(),
            title: p.title,
            text: p.full_text,
        })
        .collect();
    serde_json::to_string(&entries).expect("prompt list serializes")
}

#[derive(Serialize)]
struct Truncation {
    text: String,
    chars: usize,
    removed: usize,
}

pub fn truncate(prompt_id: &str, limit: usize) -> Result<String, String> {
    let id: PromptId = prompt_id.parse().map_err(|e| format!("{e}"))?;
    let full = prompt(id).full_text;
    let text = truncate_prompt(&full, limit, StopwordList::english()).map_err(|e| e.to_string())?;
    let result = Truncation {
        chars: text.chars().count(),
        removed: full.split_whitespace().count() - text.split_whitespace().count(),
        text,
    };
    Ok(serde_json::to_string(&result).expect("truncation serializes"))
}

fn config(tau: f64, std_mode: &str) -> Result<ScoringConfig, String> {
    let cfg = ScoringConfig {
        confidence_threshold: tau,
        std_mode: std_mode.parse().map_err(|e| format!("{e}"))?,
        ..ScoringConfig::default()
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

type Loaded = (
    BTreeMap<SliceKey, CorpusSlice>,
    BTreeMap<PromptId, BaseReference>,
);

fn load(generated_jsonl: &str, base_json: &str) -> Result<Loaded, String> {
    let records = parse_annotations(generated_jsonl.as_bytes())
        .map_err(|e| format!("generated: {e}"))?
        .value;
    if records.is_empty() {
        return Err("generated: no records".into());
    }
    let bases = if base_json.trim().is_empty() {
        BTreeMap::new()
    } else {
        load_base(base_json.as_bytes())
            .map_err(|e| format!("base: {e}"))?
            .value
    };
    Ok((group_slices(records), bases))
}

#[derive(Serialize)]
struct OverallEntry {
    generator: String,
    overall: f64,
}

#[derive(Serialize)]
struct ScoreResult {
    markdown: String,
    csv: String,
    overall: Vec<OverallEntry>,
}

pub fn score(
    generated_jsonl: &str,
    base_json: &str,
    tau: f64,
    std_mode: &str,
) -> Result<String, String> {
    let cfg = config(tau, std_mode)?;
    let (slices, bases) = load(generated_jsonl, base_json)?;
    let table = score_corpus(&slices, &bases, &cfg).map_err(|e| e.to_string())?;
    let overall = column_order(table.generator_overall.iter().map(|g| &g.generator))
        .into_iter()
        .filter_map(|g| {
            let row = table.generator_overall.iter().find(|r| r.generator == g)?;
            Some(OverallEntry {
                generator: g.to_string(),
                overall: row.overall,
            })
        })
        .collect();
    let result = ScoreResult {
        markdown: emit_score_table_md(&table),
        csv: emit_overall_csv(&table),
        overall,
    };
    Ok(serde_json::to_string(&result).expect("scores serialize"))
}

#[derive(Serialize)]
struct Distributions {
    histograms: Vec<CountHistogram>,
    pyramids: Vec<PopulationPyramid>,
}

pub fn distributions(generated_jsonl: &str, base_json: &str, tau: f64) -> Result<String, String> {
    let cfg = config(tau, "pairwise_distance")?;
    let (slices, bases) = load(generated_jsonl, base_json)?;
    let histograms = slices.values().map(|s| count_histogram(s, &cfg)).collect();
    let mut pyramids: Vec<_> = bases.values().map(|b| base_pyramid(b, &cfg)).collect();
    pyramids.extend(slices.values().map(|s| population_pyramid(s, &cfg)));
    pyramids.sort_by(|a, b| (a.prompt, &a.source).cmp(&(b.prompt, &b.source)));
    Ok(serde_json::to_string(&Distributions {
        histograms,
        pyramids,
    })
    .expect("distributions serialize"))
}
