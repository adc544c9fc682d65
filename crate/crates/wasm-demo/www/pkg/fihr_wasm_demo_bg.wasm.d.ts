/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curves_free: (a: number, b: number) => void;
export const __wbg_lifetime_free: (a: number, b: number) => void;
export const comr_surface: (a: number, b: number, c: number) => [number, number, number, number];
export const curves_grades: (a: number) => [number, number];
export const curves_labels: (a: number) => [number, number];
export const curves_x: (a: number) => [number, number];
export const lifetime: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const lifetime_alive: (a: number) => [number, number];
export const lifetime_fnd: (a: number) => [number, number];
export const lifetime_hna: (a: number) => [number, number];
export const lifetime_residual: (a: number) => [number, number];
export const lifetime_throughput_kb: (a: number) => number;
export const membership_curves: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_start: () => void;
