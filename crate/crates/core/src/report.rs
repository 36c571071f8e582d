//! Markdown, CSV and JSON renderings of score tables and distributions.
//!
//! All output is a pure function of its inputs: numbers are formatted with a
//! `.` separator and rounded half-up at presentation time only.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::distributions::{CountHistogram, PopulationPyramid};
use crate::metrics::{CellScores, ScoreTable, SliceStats, UnifiedScores};
use crate::model::{generator_catalog, GeneratorId, PromptId, ScoringConfig};
use crate::prompts;

/// Version of the JSON results document layout.
pub const RESULTS_SCHEMA_VERSION: u32 = 1;

/// Round half-up to `places` decimals.
///
/// The scaled value is first snapped to a 1e-6 grid so that binary
/// representation error (`0.12345 * 1e4 = 1234.4999…`) does not flip a tie.
pub fn round_half_up(x: f64, places: u32) -> f64 {
    let scale = 10f64.powi(places as i32);
    let snapped = ((x * scale) * 1e6).round() / 1e6;
    let rounded = snapped.round() / scale;
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

pub fn format_decimal(x: f64, places: u32) -> String {
    format!("{:.*}", places as usize, round_half_up(x, places))
}

/// Generators in report column order: the known catalog first, then any
/// others alphabetically.
pub fn column_order<'a>(generators: impl IntoIterator<Item = &'a GeneratorId>) -> Vec<GeneratorId> {
    let catalog = generator_catalog();
    let rank = |g: &GeneratorId| {
        catalog
            .iter()
            .position(|info| &info.id == g)
            .unwrap_or(catalog.len())
    };
    let mut ids: Vec<GeneratorId> = generators.into_iter().cloned().collect();
    ids.sort_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| a.cmp(b)));
    ids.dedup();
    ids
}

fn display_name(g: &GeneratorId) -> String {
    generator_catalog()
        .into_iter()
        .find(|info| &info.id == g)
        .map(|info| info.display_name)
        .unwrap_or_else(|| g.to_string())
}

fn escape_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

type StatField = fn(&SliceStats) -> f64;
type ScoreField = fn(&UnifiedScores) -> Option<f64>;

const STAT_ROWS: [(&str, StatField); 6] = [
    ("M-STD", |s| s.m_std),
    ("M-Mean", |s| s.m_mean),
    ("F-STD", |s| s.f_std),
    ("F-Mean", |s| s.f_mean),
    ("N-STD", |s| s.n_std),
    ("N-Mean", |s| s.n_mean),
];

const SCORE_ROWS: [(&str, ScoreField); 6] = [
    ("S-Count", |u| Some(u.count)),
    ("S-Female", |u| Some(u.female)),
    ("S-Male", |u| Some(u.male)),
    ("S-Age", |u| Some(u.age)),
    ("S-Sentiment", |u| Some(u.sentiment)),
    ("S-Patch", |u| u.patch),
];

/// Format a row of generator values, bolding the maximum and underlining
/// the minimum (compared after rounding). Nothing is marked when all
/// values are equal.
fn marked_cells(values: &[Option<f64>], places: u32) -> Vec<String> {
    let rounded: Vec<Option<f64>> = values
        .iter()
        .map(|v| v.map(|x| round_half_up(x, places)))
        .collect();
    let present = rounded.iter().flatten().copied();
    let max = present.clone().fold(f64::NEG_INFINITY, f64::max);
    let min = present.fold(f64::INFINITY, f64::min);
    let mark = max > min;
    rounded
        .iter()
        .map(|v| match v {
            None => "n/a".to_string(),
            Some(x) => {
                let text = format!("{:.*}", places as usize, x);
                if mark && *x == max {
                    format!("**{text}**")
                } else if mark && *x == min {
                    format!("<u>{text}</u>")
                } else {
                    text
                }
            }
        })
        .collect()
}

fn table_header(first: &str, columns: &[String]) -> String {
    let mut out = format!("| {first} |");
    for c in columns {
        out.push_str(&format!(" {} |", escape_cell(c)));
    }
    out.push_str("\n|---|");
    for _ in columns {
        out.push_str("---|");
    }
    out.push('\n');
    out
}

fn table_row(label: &str, cells: &[String]) -> String {
    let mut out = format!("| {label} |");
    for c in cells {
        out.push_str(&format!(" {c} |"));
    }
    out.push('\n');
    out
}

/// Markdown report: one block per prompt with the raw-count rows and the
/// unified scores (base column first), then the overall-score table.
pub fn emit_score_table_md(table: &ScoreTable) -> String {
    let places = table.config.rounding;
    let mut out = String::from("# Scores\n");
    if table.is_empty() {
        return out;
    }

    let generators = column_order(table.cells.iter().map(|c| &c.generator));
    let mut by_prompt: BTreeMap<PromptId, BTreeMap<&GeneratorId, &CellScores>> = BTreeMap::new();
    for cell in &table.cells {
        by_prompt
            .entry(cell.prompt)
            .or_default()
            .insert(&cell.generator, cell);
    }

    for (prompt, cells) in &by_prompt {
        let columns: Vec<&GeneratorId> = generators
            .iter()
            .filter(|g| cells.contains_key(g))
            .collect();
        let spec = prompts::prompt(*prompt);
        out.push_str(&format!("\n## Prompt {prompt}: {}\n\n", spec.title));
        let mut headings = vec!["Base".to_string()];
        headings.extend(columns.iter().map(|g| display_name(g)));
        out.push_str(&table_header("Measure", &headings));

        let base = table.base(*prompt);
        for (label, field) in STAT_ROWS {
            let base_cell = base
                .map(|b| format_decimal(field(&b.stats), places))
                .unwrap_or_else(|| "-".to_string());
            let values: Vec<Option<f64>> = columns
                .iter()
                .map(|g| Some(field(&cells[g].stats)))
                .collect();
            let mut row = vec![base_cell];
            row.extend(marked_cells(&values, places));
            out.push_str(&table_row(label, &row));
        }
        for (label, field) in SCORE_ROWS {
            let values: Vec<Option<f64>> =
                columns.iter().map(|g| field(&cells[g].scores)).collect();
            let mut row = vec!["-".to_string()];
            row.extend(marked_cells(&values, places));
            out.push_str(&table_row(label, &row));
        }
        let values: Vec<Option<f64>> = columns.iter().map(|g| Some(cells[g].overall)).collect();
        let mut row = vec!["-".to_string()];
        row.extend(marked_cells(&values, places));
        out.push_str(&table_row("Overall", &row));
    }

    out.push_str("\n## Overall\n\n");
    let headings: Vec<String> = generators.iter().map(display_name).collect();
    out.push_str(&table_header("Prompt", &headings));
    for (prompt, cells) in &by_prompt {
        let values: Vec<Option<f64>> = generators
            .iter()
            .map(|g| cells.get(g).map(|c| c.overall))
            .collect();
        out.push_str(&table_row(
            &format!("Prompt {prompt}"),
            &marked_cells(&values, places),
        ));
    }
    let overall: Vec<Option<f64>> = generators
        .iter()
        .map(|g| {
            table
                .generator_overall
                .iter()
                .find(|o| &o.generator == g)
                .map(|o| o.overall)
        })
        .collect();
    out.push_str(&table_row("Overall", &marked_cells(&overall, places)));
    out
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(writer: csv::Writer<Vec<u8>>) -> String {
    let bytes = writer.into_inner().expect("flushing to a Vec cannot fail");
    String::from_utf8(bytes).expect("CSV fields are UTF-8")
}

/// `prompt,generator,overall` rows, then one `overall` row per generator.
pub fn emit_overall_csv(table: &ScoreTable) -> String {
    let places = table.config.rounding;
    let order = column_order(table.cells.iter().map(|c| &c.generator));
    let rank = |g: &GeneratorId| order.iter().position(|o| o == g);
    let mut cells: Vec<&CellScores> = table.cells.iter().collect();
    cells.sort_by_key(|c| (c.prompt, rank(&c.generator)));

    let mut w = csv_writer();
    let write = |w: &mut csv::Writer<Vec<u8>>, row: [&str; 3]| {
        w.write_record(row).expect("writing to a Vec cannot fail")
    };
    write(&mut w, ["prompt", "generator", "overall"]);
    for c in cells {
        write(
            &mut w,
            [
                c.prompt.as_str(),
                c.generator.as_str(),
                &format_decimal(c.overall, places),
            ],
        );
    }
    for g in &order {
        if let Some(o) = table.generator_overall.iter().find(|o| &o.generator == g) {
            write(
                &mut w,
                ["overall", g.as_str(), &format_decimal(o.overall, places)],
            );
        }
    }
    finish(w)
}

/// `generator,prompt,people,percent` rows, one per observed head count.
pub fn emit_histograms_csv(histograms: &[CountHistogram], places: u32) -> String {
    let mut w = csv_writer();
    w.write_record(["generator", "prompt", "people", "percent"])
        .expect("writing to a Vec cannot fail");
    for h in histograms {
        for (count, pct) in &h.proportions {
            w.write_record([
                h.generator.as_str(),
                h.prompt.as_str(),
                &count.to_string(),
                &format_decimal(*pct, places),
            ])
            .expect("writing to a Vec cannot fail");
        }
    }
    finish(w)
}

/// `source,prompt,age_group,female,male` rows, one per age group.
pub fn emit_pyramids_csv(pyramids: &[PopulationPyramid]) -> String {
    let mut w = csv_writer();
    w.write_record(["source", "prompt", "age_group", "female", "male"])
        .expect("writing to a Vec cannot fail");
    for p in pyramids {
        let source = p.source.to_string();
        for bin in &p.bins {
            w.write_record([
                source.as_str(),
                p.prompt.as_str(),
                &bin.label,
                &bin.female.to_string(),
                &bin.male.to_string(),
            ])
            .expect("writing to a Vec cannot fail");
        }
    }
    finish(w)
}

/// Self-describing bundle of every result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsDoc {
    pub schema_version: u32,
    pub config: ScoringConfig,
    pub scores: ScoreTable,
    pub histograms: Vec<CountHistogram>,
    pub pyramids: Vec<PopulationPyramid>,
}

pub fn emit_results_doc(
    table: &ScoreTable,
    histograms: &[CountHistogram],
    pyramids: &[PopulationPyramid],
) -> String {
    let doc = ResultsDoc {
        schema_version: RESULTS_SCHEMA_VERSION,
        config: table.config.clone(),
        scores: table.clone(),
        histograms: histograms.to_vec(),
        pyramids: pyramids.to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("results are serializable");
    text.push('\n');
    text
}

pub fn parse_results_doc(text: &str) -> Result<ResultsDoc, serde_json::Error> {
    serde_json::from_str(text)
}
