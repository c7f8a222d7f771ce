/* tslint:disable */
/* eslint-disable */

/**
 * Result of projecting a matrix onto the nuclear-norm ball.
 */
export class Projection {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Projected matrix, row-major.
     */
    readonly entries: Float64Array;
    readonly nuclear_norm: number;
    readonly sigma_in: Float64Array;
    readonly sigma_out: Float64Array;
    /**
     * Amount subtracted from every singular value.
     */
    readonly threshold: number;
}

/**
 * Recorded rows of one solver run, column by column.
 */
export class Trajectory {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly capacities: Float64Array;
    /**
     * Averaged flow after the last iteration, one entry per edge.
     */
    readonly final_flow: Float64Array;
    readonly objective: Float64Array;
    /**
     * LP reference value of the instance.
     */
    readonly optimum: number;
    readonly q_norm: Float64Array;
    readonly t: Float64Array;
    readonly violation: Float64Array;
}

/**
 * `2e`, the extended value of `max{e^-x, e^x}` at `x = +-2` from `[-1, 1]`.
 */
export function expmax_reference(): number;

export function extension_curve(_function: string, lo: number, hi: number, from: number, to: number, samples: number): Float64Array;

export function minflow_trajectory(formulation: string, horizon: number, points: number): Trajectory;

export function project_nuclear(entries: Float64Array, rows: number, cols: number, gamma: number): Projection;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_projection_free: (a: number, b: number) => void;
    readonly __wbg_trajectory_free: (a: number, b: number) => void;
    readonly expmax_reference: () => number;
    readonly extension_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly minflow_trajectory: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly project_nuclear: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly projection_entries: (a: number) => [number, number];
    readonly projection_nuclear_norm: (a: number) => number;
    readonly projection_sigma_in: (a: number) => [number, number];
    readonly projection_sigma_out: (a: number) => [number, number];
    readonly projection_threshold: (a: number) => number;
    readonly trajectory_capacities: (a: number) => [number, number];
    readonly trajectory_final_flow: (a: number) => [number, number];
    readonly trajectory_objective: (a: number) => [number, number];
    readonly trajectory_optimum: (a: number) => number;
    readonly trajectory_q_norm: (a: number) => [number, number];
    readonly trajectory_t: (a: number) => [number, number];
    readonly trajectory_violation: (a: number) => [number, number];
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
