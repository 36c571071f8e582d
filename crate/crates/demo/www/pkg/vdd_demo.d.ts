/* tslint:disable */
/* eslint-disable */

/**
 * `{histograms, pyramids}` for the given corpus.
 */
export function distributions(generated_jsonl: string, base_json: string, tau: number): string;

/**
 * `[{id, title, text, chars}]` for the five prompts.
 */
export function listPrompts(): string;

/**
 * Bundled sample base paintings (JSON).
 */
export function sampleBase(): string;

/**
 * Bundled sample corpus (JSONL).
 */
export function sampleGenerated(): string;

/**
 * `{markdown, csv, overall}` for the given corpus.
 */
export function scoreCorpus(generated_jsonl: string, base_json: string, tau: number, std_mode: string): string;

/**
 * `{text, chars, removed}` for a prompt shortened to `limit` characters.
 */
export function truncatePrompt(prompt_id: string, limit: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly distributions: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly listPrompts: () => [number, number];
    readonly sampleBase: () => [number, number];
    readonly sampleGenerated: () => [number, number];
    readonly scoreCorpus: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly truncatePrompt: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
