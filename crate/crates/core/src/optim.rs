//! Coordinate-ascent maximization with golden-section line searches.
//!
//! The witness objective is smooth and low-dimensional, so cyclic sweeps
//! with a careful 1-d search per angle are enough; global coverage comes
//! from multi-start, not from this routine.

const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;
const LINE_EVALS: usize = 28;

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
/// Returns `(x_max, f_max)` over the probed points.
pub(crate) fn golden_section_max(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    max_evals: usize,
) -> (f64, f64) {
    let resp = 2.0 - GOLDEN_RATIO;
    let mut x1 = lo + resp * (hi - lo);
    let mut x2 = hi - resp * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;
    while evals < max_evals && (hi - lo).abs() > 1e-15 {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + resp * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - resp * (hi - lo);
            f2 = f(x2);
        }
        evals += 1;
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct AscentResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Cyclic coordinate ascent from `x0`. Each coordinate is line-searched on
/// a bracket of half-width `half_width` around its current value; sweeps
/// repeat until one improves the objective by less than `tol` or the
/// evaluation budget runs out.
pub(crate) fn coordinate_ascent(
    f: &mut impl FnMut(&[f64]) -> f64,
    x0: Vec<f64>,
    half_width: f64,
    tol: f64,
    max_evals: usize,
) -> AscentResult {
    let mut x = x0;
    let mut best = f(&x);
    let mut evals = 1;
    loop {
        let sweep_start = best;
        for i in 0..x.len() {
            if evals + LINE_EVALS > max_evals {
                return AscentResult {
                    x,
                    value: best,
                    evals,
                    converged: false,
                };
            }
            let center = x[i];
            let (xi, fi) = golden_section_max(
                |t| {
                    x[i] = t;
                    f(&x)
                },
                center - half_width,
                center + half_width,
                LINE_EVALS,
            );
            evals += LINE_EVALS;
            if fi > best {
                best = fi;
                x[i] = xi;
            } else {
                x[i] = center;
            }
        }
        if best - sweep_start < tol {
            return AscentResult {
                x,
                value: best,
                evals,
                converged: true,
            };
        }
    }
}

/// SplitMix64 step, used to derive independent per-restart seeds.
pub(crate) fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
