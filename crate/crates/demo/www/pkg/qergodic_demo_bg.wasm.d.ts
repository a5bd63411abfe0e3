/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const cyclic_walk: (a: number, b: number, c: number) => [number, number];
export const kp_pure_walk: (a: number, b: number, c: number, d: number) => [number, number];
export const s3_dual_walk: (a: number, b: number, c: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
