//! Adaptive Gauss–Kronrod quadrature (7/15 pair, QUADPACK-style).
//!
//! Globally adaptive: the segment with the largest error estimate is bisected
//! until the summed estimate meets the tolerance. Refinement order and the
//! final position-ordered compensated summation are deterministic, so results
//! are bit-reproducible for a fixed segment schedule.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::numeric::neumaier_sum;

/// Kronrod nodes on [0, 1] half-interval (indices 1, 3, 5 and the center are
/// the embedded Gauss-7 nodes).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Gauss-7 weights, paired with XGK[1], XGK[3], XGK[5] and the center.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod-15 weights for XGK plus the center.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One G7/K15 evaluation over [a, b]: (value, error estimate, ∫|f| estimate).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut f_lo = [0.0f64; 7];
    let mut f_hi = [0.0f64; 7];
    for i in 0..7 {
        let dx = half * XGK[i];
        f_lo[i] = f(center - dx);
        f_hi[i] = f(center + dx);
    }

    let mut kronrod = WGK[7] * f_center;
    let mut res_abs = WGK[7] * f_center.abs();
    for i in 0..7 {
        kronrod += WGK[i] * (f_lo[i] + f_hi[i]);
        res_abs += WGK[i] * (f_lo[i].abs() + f_hi[i].abs());
    }
    let mut gauss = WG[3] * f_center;
    for (j, &w) in WG.iter().take(3).enumerate() {
        gauss += w * (f_lo[2 * j + 1] + f_hi[2 * j + 1]);
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for i in 0..7 {
        res_asc += WGK[i] * ((f_lo[i] - mean).abs() + (f_hi[i] - mean).abs());
    }

    let value = kronrod * half;
    let err = rescale_error(
        (kronrod - gauss) * half,
        res_abs * half.abs(),
        res_asc * half.abs(),
    );
    (value, err, res_abs * half.abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    res_abs: f64,
    seq: u64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadOutcome {
    pub value: f64,
    pub abs_err: f64,
}

/// Integrates `f` over a union of finite segments.
///
/// Succeeds when the summed error estimate drops below
/// `max(abs_tol, rel_tol · |value|)`; fails with the partial result otherwise.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    segments: &[(f64, f64)],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadOutcome> {
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let push = |heap: &mut BinaryHeap<Segment>, a: f64, b: f64, seq: &mut u64| -> Result<()> {
        let (value, err, res_abs) = qk15(f, a, b);
        if !value.is_finite() {
            return Err(Error::Domain(format!(
                "integrand produced a non-finite value on [{a}, {b}]"
            )));
        }
        heap.push(Segment {
            a,
            b,
            value,
            err,
            res_abs,
            seq: *seq,
        });
        *seq += 1;
        Ok(())
    };

    for &(a, b) in segments {
        if a == b {
            continue;
        }
        push(&mut heap, a, b, &mut seq)?;
    }
    if heap.is_empty() {
        return Ok(QuadOutcome {
            value: 0.0,
            abs_err: 0.0,
        });
    }

    let totals = |heap: &BinaryHeap<Segment>| {
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.err).sum();
        (value, err)
    };

    loop {
        let (value, err) = totals(&heap);
        let target = abs_tol.max(rel_tol * value.abs());
        if err <= target {
            break;
        }
        let worst = heap.peek().expect("heap non-empty");
        // Splitting a machine-limited segment cannot reduce the estimate:
        // each half inherits the 50·eps·res_abs floor.
        let machine_limited = worst.err <= 51.0 * f64::EPSILON * worst.res_abs;
        let mid = 0.5 * (worst.a + worst.b);
        let exhausted = !(worst.a < mid && mid < worst.b);
        if machine_limited || exhausted || heap.len() >= max_panels {
            return Err(Error::AccuracyFailure {
                value: finish(heap),
                err,
                tol: target,
            });
        }
        let worst = heap.pop().expect("heap non-empty");
        push(&mut heap, worst.a, mid, &mut seq)?;
        push(&mut heap, mid, worst.b, &mut seq)?;
    }

    let err: f64 = heap.iter().map(|s| s.err).sum();
    Ok(QuadOutcome {
        value: finish(heap),
        abs_err: err,
    })
}

/// Position-ordered compensated sum of the panel values.
fn finish(heap: BinaryHeap<Segment>) -> f64 {
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a).then(x.b.total_cmp(&y.b)));
    neumaier_sum(segs.iter().map(|s| s.value))
}

/// Single-interval convenience wrapper.
#[cfg(test)]
pub(crate) fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadOutcome> {
    adaptive(&f, &[(a, b)], abs_tol, rel_tol, 4000)
}
