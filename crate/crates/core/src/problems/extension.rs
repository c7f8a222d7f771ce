//! Lipschitz extension of a one-dimensional function beyond its domain.

/// Points on the initial grid over `[lo, hi]`.
const GRID: usize = 2001;

/// `inf_{z in [lo, hi]} f(z) + lip |x - z|`.
///
/// For convex `f` with Lipschitz constant at most `lip` the inner objective
/// is convex in `z`, so a grid scan followed by golden-section refinement
/// on the bracketing cell finds the infimum. Inside `[lo, hi]` the result
/// coincides with `f`.
pub fn mcshane_whitney_extend_1d<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    lip: f64,
    x: f64,
) -> f64 {
    debug_assert!(lo < hi);
    let inner = |z: f64| f(z) + lip * (x - z).abs();
    let width = (hi - lo) / (GRID - 1) as f64;
    let node = |k: usize| {
        if k == GRID - 1 {
            hi
        } else {
            lo + k as f64 * width
        }
    };
    let mut best_k = 0;
    let mut best = inner(lo);
    for k in 1..GRID {
        let v = inner(node(k));
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let mut a = node(best_k.saturating_sub(1));
    let mut b = node((best_k + 1).min(GRID - 1));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (inner(c), inner(d));
    while b - a > 1e-13 * (1.0 + a.abs().max(b.abs())) {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = inner(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = inner(d);
        }
    }
    best.min(fc).min(fd).min(inner(0.5 * (a + b)))
}
