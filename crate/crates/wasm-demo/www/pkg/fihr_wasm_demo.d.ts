/* tslint:disable */
/* eslint-disable */

/**
 * Sampled grades of every term of one variable.
 */
export class Curves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Term-major: the grades of term `t` occupy `t * x.len() .. (t + 1) * x.len()`.
     */
    readonly grades: Float64Array;
    readonly labels: string[];
    readonly x: Float64Array;
}

/**
 * Mean per-round curves over the requested runs.
 */
export class Lifetime {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly alive: Float64Array;
    readonly fnd: number | undefined;
    readonly hna: number | undefined;
    readonly residual: Float64Array;
    readonly throughput_kb: number;
}

export function comr_surface(scenario: string, n: number): Float64Array;

export function lifetime(scenario: string, protocol: string, rounds: number, runs: number, seed: number, fault_rate: number): Lifetime;

export function membership_curves(scenario: string, variable: string, samples: number): Curves;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curves_free: (a: number, b: number) => void;
    readonly __wbg_lifetime_free: (a: number, b: number) => void;
    readonly comr_surface: (a: number, b: number, c: number) => [number, number, number, number];
    readonly curves_grades: (a: number) => [number, number];
    readonly curves_labels: (a: number) => [number, number];
    readonly curves_x: (a: number) => [number, number];
    readonly lifetime: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly lifetime_alive: (a: number) => [number, number];
    readonly lifetime_fnd: (a: number) => [number, number];
    readonly lifetime_hna: (a: number) => [number, number];
    readonly lifetime_residual: (a: number) => [number, number];
    readonly lifetime_throughput_kb: (a: number) => number;
    readonly membership_curves: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
