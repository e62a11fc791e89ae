//! Differential forms on the torus fibration in the coframe
//! {dt, dt̄, dθ_β∨, dθ_β}, and their real counterparts in (Re t, Im t, θ_β∨, θ_β).

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const DT: usize = 0;
pub const DT_BAR: usize = 1;
pub const D_THETA_BETA_VEE: usize = 2;
pub const D_THETA_BETA: usize = 3;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Σ c_k e^k.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OneForm(pub [Complex64; 4]);

impl OneForm {
    pub fn basis(k: usize) -> Self {
        let mut c = [ZERO; 4];
        c[k] = Complex64::new(1.0, 0.0);
        OneForm(c)
    }

    pub fn new(dt: Complex64, dt_bar: Complex64, d_theta_beta_vee: Complex64, d_theta_beta: Complex64) -> Self {
        OneForm([dt, dt_bar, d_theta_beta_vee, d_theta_beta])
    }

    /// Complex conjugate form: conj(a dt) = ā dt̄, the angles are real.
    pub fn conj(&self) -> Self {
        let c = self.0;
        OneForm([c[1].conj(), c[0].conj(), c[2].conj(), c[3].conj()])
    }

    pub fn wedge(&self, o: &OneForm) -> TwoForm {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[i] * o.0[j] - self.0[j] * o.0[i];
            }
        }
        TwoForm(m)
    }

    /// Components on (dx, dy, dθ_β∨, dθ_β) with dt = dx + i dy.
    pub fn to_real_coframe(&self) -> [Complex64; 4] {
        let c = self.0;
        [c[0] + c[1], I * (c[0] - c[1]), c[2], c[3]]
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for OneForm {
    type Output = OneForm;
    fn add(self, o: OneForm) -> OneForm {
        OneForm(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for OneForm {
    type Output = OneForm;
    fn sub(self, o: OneForm) -> OneForm {
        OneForm(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Neg for OneForm {
    type Output = OneForm;
    fn neg(self) -> OneForm {
        OneForm(self.0.map(|c| -c))
    }
}

impl Mul<OneForm> for Complex64 {
    type Output = OneForm;
    fn mul(self, f: OneForm) -> OneForm {
        OneForm(f.0.map(|c| self * c))
    }
}

impl Mul<OneForm> for f64 {
    type Output = OneForm;
    fn mul(self, f: OneForm) -> OneForm {
        OneForm(f.0.map(|c| self * c))
    }
}

/// Antisymmetric coefficient matrix; the form is Σ_{i<j} c_ij e^i∧e^j.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TwoForm(pub [[Complex64; 4]; 4]);

impl TwoForm {
    pub fn zero() -> Self {
        TwoForm([[ZERO; 4]; 4])
    }

    /// Coefficient on e^i∧e^j.
    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    /// Adds c·e^i∧e^j, keeping antisymmetry.
    pub fn add_term(&mut self, i: usize, j: usize, c: Complex64) {
        self.0[i][j] += c;
        self.0[j][i] -= c;
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        TwoForm(self.0.map(|row| row.map(&f)))
    }

    /// Complex conjugate form (swap dt ↔ dt̄ and conjugate).
    pub fn conj(&self) -> Self {
        let swap = |k: usize| match k {
            DT => DT_BAR,
            DT_BAR => DT,
            other => other,
        };
        TwoForm(std::array::from_fn(|i| std::array::from_fn(|j| self.0[swap(i)][swap(j)].conj())))
    }

    /// Coefficient-wise real part in this coframe.
    pub fn re(&self) -> Self {
        self.map(|c| Complex64::new(c.re, 0.0))
    }

    /// Coefficient-wise imaginary part in this coframe.
    pub fn im(&self) -> Self {
        self.map(|c| Complex64::new(c.im, 0.0))
    }

    /// Coefficients on dx∧dy, dx∧dθ_β∨, …, with dt = dx + i dy.
    pub fn to_real_coframe(&self) -> [[Complex64; 4]; 4] {
        // e^k = Σ_r T_kr f^r
        let mut t = [[ZERO; 4]; 4];
        t[0][0] = Complex64::new(1.0, 0.0);
        t[0][1] = I;
        t[1][0] = Complex64::new(1.0, 0.0);
        t[1][1] = -I;
        t[2][2] = Complex64::new(1.0, 0.0);
        t[3][3] = Complex64::new(1.0, 0.0);
        let mut out = [[ZERO; 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (s, v) in row.iter_mut().enumerate() {
                let mut acc = ZERO;
                for k in 0..4 {
                    for l in 0..4 {
                        acc += t[k][r] * self.0[k][l] * t[l][s];
                    }
                }
                *v = acc;
            }
        }
        out
    }

    /// Inverse of [`TwoForm::to_real_coframe`]: dx = (dt + dt̄)/2, dy = (dt − dt̄)/2i.
    pub fn from_real_coframe(r: &[[Complex64; 4]; 4]) -> Self {
        let half = Complex64::new(0.5, 0.0);
        let mut s = [[ZERO; 4]; 4];
        s[0][0] = half;
        s[0][1] = half;
        s[1][0] = -I * half;
        s[1][1] = I * half;
        s[2][2] = Complex64::new(1.0, 0.0);
        s[3][3] = Complex64::new(1.0, 0.0);
        TwoForm(std::array::from_fn(|k| {
            std::array::from_fn(|l| {
                let mut acc = ZERO;
                for a in 0..4 {
                    for b in 0..4 {
                        acc += s[a][k] * r[a][b] * s[b][l];
                    }
                }
                acc
            })
        }))
    }

    /// Real antisymmetric matrix for a real form; None if an imaginary part
    /// exceeds `tol` relative to the largest coefficient.
    pub fn to_real_matrix(&self, tol: f64) -> Option<Matrix4<f64>> {
        let c = self.to_real_coframe();
        let scale = c.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
        if c.iter().flatten().any(|z| z.im.abs() > tol * scale) {
            return None;
        }
        Some(Matrix4::from_fn(|i, j| c[i][j].re))
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference.
    pub fn distance(&self, o: &TwoForm) -> f64 {
        (*self - *o).max_norm()
    }
}

impl Add for TwoForm {
    type Output = TwoForm;
    fn add(self, o: TwoForm) -> TwoForm {
        TwoForm(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] + o.0[i][j])))
    }
}

impl Sub for TwoForm {
    type Output = TwoForm;
    fn sub(self, o: TwoForm) -> TwoForm {
        TwoForm(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] - o.0[i][j])))
    }
}

impl Neg for TwoForm {
    type Output = TwoForm;
    fn neg(self) -> TwoForm {
        self.map(|c| -c)
    }
}

impl Mul<TwoForm> for Complex64 {
    type Output = TwoForm;
    fn mul(self, f: TwoForm) -> TwoForm {
        f.map(|c| self * c)
    }
}

impl Mul<TwoForm> for f64 {
    type Output = TwoForm;
    fn mul(self, f: TwoForm) -> TwoForm {
        f.map(|c| self * c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

/// Symmetric metric in (Re t, Im t, θ_β∨, θ_β).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricMatrix(pub Matrix4<f64>);

impl MetricMatrix {
    pub fn zero() -> Self {
        MetricMatrix(Matrix4::zeros())
    }

    /// Adds w·|α|² = w·Re(α ⊗ ᾱ).
    pub fn add_square(&mut self, w: f64, alpha: &OneForm) {
        let u = alpha.to_real_coframe();
        for i in 0..4 {
            for j in 0..4 {
                self.0[(i, j)] += w * (u[i] * u[j].conj()).re;
            }
        }
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        let e = SymmetricEigen::new(self.0).eigenvalues;
        let mut v = [e[0], e[1], e[2], e[3]];
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    pub fn definiteness(&self) -> Definiteness {
        let e = self.eigenvalues();
        let scale = e.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if e.iter().any(|x| x.abs() <= 1e-14 * scale) || scale == 0.0 {
            Definiteness::Degenerate
        } else if e[0] > 0.0 {
            Definiteness::Positive
        } else if e[3] < 0.0 {
            Definiteness::Negative
        } else {
            Definiteness::Indefinite
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.0 == self.0.transpose()
    }

    pub fn max_abs_diff(&self, o: &MetricMatrix) -> f64 {
        (self.0 - o.0).abs().max()
    }

    pub fn as_rows(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }
}
