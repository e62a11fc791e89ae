//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

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

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of an adaptive integration with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    depth: usize,
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(centre - dx) + f(centre + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).norm();
    (value, error)
}

/// Integrates `f` over `[a, b]` until the summed error estimate drops below
/// `tol` (absolute).
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64, max_depth: usize) -> Result<Quadrature>
where
    F: Fn(f64) -> Complex64,
{
    integrate_breaks(f, &[a, b], tol, max_depth)
}

/// Like [`integrate`] with user supplied initial break points.
pub fn integrate_breaks<F>(f: F, breaks: &[f64], tol: f64, max_depth: usize) -> Result<Quadrature>
where
    F: Fn(f64) -> Complex64,
{
    assert!(breaks.len() >= 2);
    let mut panels: Vec<Panel> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let (value, error) = kronrod(&f, w[0], w[1]);
            Panel { a: w[0], b: w[1], value, error, depth: 0 }
        })
        .collect();
    let mut evaluations = 15 * panels.len();
    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        if !total_err.is_finite() {
            return Err(Error::Budget("non-finite quadrature estimate".into()));
        }
        if total_err <= tol {
            let value = panels.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
            return Ok(Quadrature { value, error: total_err, evaluations });
        }
        let (idx, worst) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, p)| (i, *p))
            .expect("at least one panel");
        if worst.depth >= max_depth {
            return Err(Error::Budget(format!(
                "quadrature error {total_err:e} above {tol:e} at depth {max_depth}"
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = kronrod(&f, worst.a, mid);
        let (rv, re) = kronrod(&f, mid, worst.b);
        evaluations += 30;
        panels[idx] = Panel { a: worst.a, b: mid, value: lv, error: le, depth: worst.depth + 1 };
        panels.push(Panel { a: mid, b: worst.b, value: rv, error: re, depth: worst.depth + 1 });
    }
}
