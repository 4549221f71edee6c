/* tslint:disable */
/* eslint-disable */

/**
 * The bipartite graph of an instance.
 */
export function describe(instance: string): string;

/**
 * Instance text: `condorcet`, `condorcet-lq3` or a seeded random instance.
 */
export function generate(kind: string, seed: number, applicants: number, projects: number): string;

/**
 * A perfect Pareto optimal matching, if one exists.
 */
export function solve(instance: string): string;

/**
 * Searches for a matching more popular than (`mode = "popular"`) or
 * dominating (`mode = "pareto"`) the given one.
 */
export function verify(instance: string, matching: string, mode: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly describe: (a: number, b: number) => [number, number];
    readonly generate: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly solve: (a: number, b: number) => [number, number];
    readonly verify: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
