//! Exact calculus for θ = z d/dz on expressions
//! Σ R(z)·ℓ^j·Li₁(z)^a·Li₂(z)^b·Li₃(z)^c, ℓ = log z, with rational
//! coefficients R(z) = P(z)/(1 − z)^m. Uses θℓ = 1, θLi_s = Li_{s−1} and
//! Li₀ = z/(1 − z), so identities such as θ²(1 − z)θ²ϖ = 0 reduce to
//! cancellations of integer polynomials.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};

/// P(z)/(1 − z)^m with P given by its coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn {
    pub num: Vec<Rational64>,
    pub den_pow: u32,
}

impl RationalFn {
    pub fn constant(c: Rational64) -> Self {
        RationalFn { num: vec![c], den_pow: 0 }
    }

    fn trim(mut self) -> Self {
        while self.num.last().is_some_and(|c| c.is_zero()) {
            self.num.pop();
        }
        // cancel common factors of (1 − z)
        while self.den_pow > 0 && !self.num.is_empty() {
            match divide_one_minus_z(&self.num) {
                Some(q) => {
                    self.num = q;
                    self.den_pow -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    fn raise(&self, den_pow: u32) -> Vec<Rational64> {
        let mut p = self.num.clone();
        for _ in self.den_pow..den_pow {
            p = mul_one_minus_z(&p);
        }
        p
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        let m = self.den_pow.max(o.den_pow);
        let (a, b) = (self.raise(m), o.raise(m));
        let n = a.len().max(b.len());
        let num = (0..n)
            .map(|k| *a.get(k).unwrap_or(&Rational64::zero()) + *b.get(k).unwrap_or(&Rational64::zero()))
            .collect();
        RationalFn { num, den_pow: m }.trim()
    }

    pub fn scale(&self, c: Rational64) -> RationalFn {
        RationalFn { num: self.num.iter().map(|x| *x * c).collect(), den_pow: self.den_pow }.trim()
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        let mut num = vec![Rational64::zero(); self.num.len() + o.num.len()];
        for (i, a) in self.num.iter().enumerate() {
            for (j, b) in o.num.iter().enumerate() {
                num[i + j] += *a * *b;
            }
        }
        RationalFn { num, den_pow: self.den_pow + o.den_pow }.trim()
    }

    /// θ(P/(1 − z)^m) = ((1 − z)θP + m z P)/(1 − z)^{m+1}.
    pub fn theta(&self) -> RationalFn {
        let tp: Vec<Rational64> = self.num.iter().enumerate().map(|(k, c)| *c * Rational64::from(k as i64)).collect();
        let mut num = mul_one_minus_z(&tp);
        let m = Rational64::from(self.den_pow as i64);
        num.resize(num.len().max(self.num.len() + 1), Rational64::zero());
        for (k, c) in self.num.iter().enumerate() {
            num[k + 1] += m * *c;
        }
        RationalFn { num, den_pow: self.den_pow + 1 }.trim()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.num.iter().rev() {
            acc = acc * z + Complex64::new(*c.numer() as f64 / *c.denom() as f64, 0.0);
        }
        acc / (Complex64::new(1.0, 0.0) - z).powu(self.den_pow)
    }
}

fn mul_one_minus_z(p: &[Rational64]) -> Vec<Rational64> {
    let mut out = vec![Rational64::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k] += *c;
        out[k + 1] -= *c;
    }
    out
}

fn divide_one_minus_z(p: &[Rational64]) -> Option<Vec<Rational64>> {
    // P(1) = 0 iff (1 − z) | P
    let at_one: Rational64 = p.iter().copied().sum();
    if !at_one.is_zero() {
        return None;
    }
    // P = (1 − z)Q  ⇒  q_k = Σ_{i≤k} p_i
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut run = Rational64::zero();
    for c in &p[..p.len() - 1] {
        run += *c;
        q.push(run);
    }
    Some(q)
}

/// Powers of (ℓ, Li₁, Li₂, Li₃).
pub type Monomial = [u8; 4];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Expr {
    pub terms: BTreeMap<Monomial, RationalFn>,
}

impl Expr {
    pub fn term(m: Monomial, c: Rational64) -> Expr {
        let mut e = Expr::default();
        e.push(m, RationalFn::constant(c));
        e
    }

    pub fn push(&mut self, m: Monomial, r: RationalFn) {
        let next = match self.terms.get(&m) {
            Some(old) => old.add(&r),
            None => r.trim(),
        };
        if next.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, next);
        }
    }

    pub fn plus(mut self, o: &Expr) -> Expr {
        for (m, r) in &o.terms {
            self.push(*m, r.clone());
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn theta(&self) -> Expr {
        let li0 = RationalFn { num: vec![Rational64::zero(), Rational64::one()], den_pow: 1 };
        let mut out = Expr::default();
        for (m, r) in &self.terms {
            out.push(*m, r.theta());
            let [j, a, b, c] = *m;
            if j > 0 {
                out.push([j - 1, a, b, c], r.scale(Rational64::from(j as i64)));
            }
            if a > 0 {
                out.push([j, a - 1, b, c], r.mul(&li0).scale(Rational64::from(a as i64)));
            }
            if b > 0 {
                out.push([j, a + 1, b - 1, c], r.scale(Rational64::from(b as i64)));
            }
            if c > 0 {
                out.push([j, a, b + 1, c - 1], r.scale(Rational64::from(c as i64)));
            }
        }
        out
    }

    pub fn times_one_minus_z(&self) -> Expr {
        let f = RationalFn { num: vec![Rational64::one(), -Rational64::one()], den_pow: 0 };
        let mut out = Expr::default();
        for (m, r) in &self.terms {
            out.push(*m, r.mul(&f));
        }
        out
    }

    /// Numerical value given z, ℓ = log z and Li₁, Li₂, Li₃ at z.
    pub fn eval(&self, z: Complex64, ell: Complex64, lis: [Complex64; 3]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, r)| {
                r.eval(z) * ell.powu(m[0] as u32) * lis[0].powu(m[1] as u32) * lis[1].powu(m[2] as u32) * lis[2].powu(m[3] as u32)
            })
            .sum()
    }
}

/// L = θ²(1 − z)θ².
pub fn picard_fuchs(e: &Expr) -> Expr {
    e.theta().theta().times_one_minus_z().theta().theta()
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// (2πi)^k ϖ^k for k = 0..3 as symbolic expressions.
pub fn scaled_periods() -> [Expr; 4] {
    [
        Expr::term([0, 0, 0, 0], r(1, 1)),
        Expr::term([1, 0, 0, 0], r(1, 1)),
        Expr::term([2, 0, 0, 0], r(1, 2)).plus(&Expr::term([0, 0, 1, 0], r(1, 1))),
        Expr::term([3, 0, 0, 0], r(-1, 6))
            .plus(&Expr::term([1, 0, 1, 0], r(-1, 1)))
            .plus(&Expr::term([0, 0, 0, 1], r(2, 1))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periods_are_annihilated() {
        for p in scaled_periods() {
            assert!(picard_fuchs(&p).is_zero());
        }
    }

    #[test]
    fn non_solutions_survive() {
        // ℓ⁴ and Li₃ alone are not solutions
        assert!(!picard_fuchs(&Expr::term([4, 0, 0, 0], r(1, 1))).is_zero());
        assert!(!picard_fuchs(&Expr::term([0, 0, 0, 1], r(1, 1))).is_zero());
    }

    #[test]
    fn theta_of_li0() {
        // θ Li₁ = Li₀ = z/(1 − z); θ Li₀ = z/(1 − z)²
        let e = Expr::term([0, 1, 0, 0], r(1, 1)).theta().theta();
        let z = Complex64::new(0.3, 0.2);
        let v = e.eval(z, z.ln(), [Complex64::new(0.0, 0.0); 3]);
        let expected = z / ((Complex64::new(1.0, 0.0) - z) * (Complex64::new(1.0, 0.0) - z));
        assert!((v - expected).norm() < 1e-15);
    }
}
