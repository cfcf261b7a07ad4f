/* tslint:disable */
/* eslint-disable */

export function angleHistogram(form: string, limit: number, bins: number): string;

/**
 * `[a₀, b₀, …, measure]` for the sign union of `sin((ν+1)θ)` shrunk by `ε`.
 */
export function signUnion(nu: number, epsilon: number, primed: boolean): Float64Array;

export function weylDiscrepancy(theta1: number, theta2: number, n: number): number;

export function weylPoints(theta1: number, theta2: number, n: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly angleHistogram: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly signUnion: (a: number, b: number, c: number) => [number, number, number, number];
    readonly weylDiscrepancy: (a: number, b: number, c: number) => [number, number, number];
    readonly weylPoints: (a: number, b: number, c: number) => [number, number, number, number];
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
