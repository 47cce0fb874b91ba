//! Adaptive Gauss-Kronrod 7/15 quadrature over certified integrands.
//!
//! The rule error is estimated by the Gauss/Kronrod difference and added to
//! the radius with a safety factor of ten. Panels are visited depth first in
//! a fixed order so results are bit-reproducible.

use crate::cert::CertValue;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
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

/// Factor applied to the Gauss/Kronrod difference before it enters the radius.
pub const ERROR_INFLATION: f64 = 10.0;

/// Controls for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Absolute error target for the whole interval.
    pub abs_tol: f64,
    /// Maximum bisection depth per initial panel.
    pub max_depth: u32,
    /// Width of the initial uniform panels.
    pub initial_panel: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, max_depth: 30, initial_panel: 1.0 }
    }
}

/// One 15-point Kronrod panel: the certified Kronrod sum and `|K - G|`.
fn gk15<S, F>(f: &F, a: S, b: S) -> Result<(CertValue<S>, S)>
where
    S: Scalar,
    F: Fn(S) -> Result<CertValue<S>>,
{
    let half = (b - a) * S::lit(0.5);
    let center = a + half;
    let fc = f(center)?;
    let mut kron = fc * CertValue::lit(WGK[7]);
    let mut gauss = fc.mid * S::lit(WG[3]);
    for j in 0..7 {
        let dx = half * S::lit(XGK[j]);
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        let pair = f1 + f2;
        kron += pair * CertValue::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair.mid * S::lit(WG[j / 2]);
        }
    }
    let h = CertValue::exact(half).inflate(half.ulp());
    let kron = kron * h;
    let err = (kron.mid - gauss * half).abs();
    Ok((kron, err))
}

fn adapt<S, F>(f: &F, a: S, b: S, tol: S, depth: u32, max_depth: u32) -> Result<CertValue<S>>
where
    S: Scalar,
    F: Fn(S) -> Result<CertValue<S>>,
{
    let (k, err) = gk15(f, a, b)?;
    if err <= tol || depth >= max_depth {
        return Ok(k.inflate(err * S::lit(ERROR_INFLATION)));
    }
    let m = a + (b - a) * S::lit(0.5);
    let half_tol = tol * S::lit(0.5);
    let left = adapt(f, a, m, half_tol, depth + 1, max_depth)?;
    let right = adapt(f, m, b, half_tol, depth + 1, max_depth)?;
    Ok(left + right)
}

/// Certified integral of `f` over `[a, b]`, splitting first at each of
/// `breaks` that lies strictly inside.
pub fn integrate<S, F>(f: F, a: S, b: S, breaks: &[S], opts: QuadOptions) -> Result<CertValue<S>>
where
    S: Scalar,
    F: Fn(S) -> Result<CertValue<S>>,
{
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::Domain(format!("bad integration interval [{a}, {b}]")));
    }
    let mut cuts = vec![a];
    let mut inner: Vec<S> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.extend(inner);
    cuts.push(b);

    let width = b - a;
    let step = S::lit(opts.initial_panel);
    let mut total = CertValue::exact(S::zero());
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let pieces = ((hi - lo) / step).ceil().max(S::one()).to_usize().unwrap_or(1);
        let piece_tol = S::lit(opts.abs_tol) * (hi - lo) / width / S::from_usize_lossy(pieces);
        for i in 0..pieces {
            let x0 = lo + (hi - lo) * S::from_usize_lossy(i) / S::from_usize_lossy(pieces);
            let x1 = if i + 1 == pieces { hi } else { lo + (hi - lo) * S::from_usize_lossy(i + 1) / S::from_usize_lossy(pieces) };
            total += adapt(&f, x0, x1, piece_tol, 0, opts.max_depth)?;
        }
    }
    Ok(total)
}
