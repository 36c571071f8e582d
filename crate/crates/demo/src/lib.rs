//! Browser bindings for the scoring engine.
//!
//! Every export takes and returns plain strings (JSON or text) so the page
//! needs no glue beyond what `wasm-bindgen` generates. The `api` module holds
//! the logic and is tested natively.

use wasm_bindgen::prelude::*;

pub mod api;

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Bundled sample corpus (JSONL).
#[wasm_bindgen(js_name = sampleGenerated)]
pub fn sample_generated() -> String {
    api::SAMPLE_GENERATED.to_owned()
}

/// Bundled sample base paintings (JSON).
#[wasm_bindgen(js_name = sampleBase)]
pub fn sample_base() -> String {
    api::SAMPLE_BASE.to_owned()
}

/// `[{id, title, text, chars}]` for the five prompts.
#[wasm_bindgen(js_name = listPrompts)]
pub fn list_prompts() -> String {
    api::prompts_json()
}

/// `{text, chars, removed}` for a prompt shortened to `limit` characters.
#[wasm_bindgen(js_name = truncatePrompt)]
pub fn truncate_prompt(prompt_id: &str, limit: usize) -> Result<String, JsError> {
    js(api::truncate(prompt_id, limit))
}

/// `{markdown, csv, overall}` for the given corpus.
#[wasm_bindgen(js_name = scoreCorpus)]
pub fn score_corpus(
    generated_jsonl: &str,
    base_json: &str,
    tau: f64,
    std_mode: &str,
) -> Result<String, JsError> {
    js(api::score(generated_jsonl, base_json, tau, std_mode))
}

/// `{histograms, pyramids}` for the given corpus.
#[wasm_bindgen(js_name = distributions)]
pub fn distributions(generated_jsonl: &str, base_json: &str, tau: f64) -> Result<String, JsError> {
    js(api::distributions(generated_jsonl, base_json, tau))
}
