/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_projection_free: (a: number, b: number) => void;
export const __wbg_trajectory_free: (a: number, b: number) => void;
export const expmax_reference: () => number;
export const extension_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const minflow_trajectory: (a: number, b: number, c: number, d: number) => [number, number, number];
export const project_nuclear: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const projection_entries: (a: number) => [number, number];
export const projection_nuclear_norm: (a: number) => number;
export const projection_sigma_in: (a: number) => [number, number];
export const projection_sigma_out: (a: number) => [number, number];
export const projection_threshold: (a: number) => number;
export const trajectory_capacities: (a: number) => [number, number];
export const trajectory_final_flow: (a: number) => [number, number];
export const trajectory_objective: (a: number) => [number, number];
export const trajectory_optimum: (a: number) => number;
export const trajectory_q_norm: (a: number) => [number, number];
export const trajectory_t: (a: number) => [number, number];
export const trajectory_violation: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
