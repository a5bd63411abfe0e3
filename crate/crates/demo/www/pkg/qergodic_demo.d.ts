/* tslint:disable */
/* eslint-disable */

/**
 * A walk on the cyclic group of order `weights.len()` with the given step law.
 */
export function cyclic_walk(weights: Float64Array, steps: number): string;

/**
 * A pure state on the 2×2 block of the Kac–Paljutkin algebra, optionally mixed with
 * the counit to make the walk lazy.
 */
export function kp_pure_walk(theta: number, phi: number, laziness: number, steps: number): string;

/**
 * The walk on the dual of `S3` given by the two-dimensional irrep and the unit vector
 * with Bloch angles `(theta, phi)`.
 */
export function s3_dual_walk(theta: number, phi: number, steps: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly cyclic_walk: (a: number, b: number, c: number) => [number, number];
    readonly kp_pure_walk: (a: number, b: number, c: number, d: number) => [number, number];
    readonly s3_dual_walk: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
