use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// Exponential integral E₁(x) for x > 0.
pub fn exp_int_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("E1 needs x > 0, got {x}")));
    }
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for n in 1..100 {
            let nf = n as f64;
            term *= -x / nf;
            let add = -term / nf;
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        return Ok(-EULER_GAMMA - x.ln() + sum);
    }
    // modified Lentz on the continued fraction e^{−x}/(x + 1 − 1/(x + 3 − 4/(x + 5 − …)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::Budget(format!("E1 continued fraction at {x}")))
}
