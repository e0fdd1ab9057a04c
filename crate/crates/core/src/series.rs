//! Truncated Laurent series in one variable and a scalar abstraction that lets
//! the closed-form energies be evaluated either on numbers or on series.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Number of stored coefficients.
pub const TERMS: usize = 12;

/// `Σ_j c[j] x^(val + j)`, known up to `x^(val + TERMS - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Laurent {
    pub val: i32,
    pub c: [f64; TERMS],
}

impl Laurent {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; TERMS];
        c[0] = v;
        Self { val: 0, c }
    }

    /// `x0 + x`, the expansion variable around `x0`.
    pub fn variable(x0: f64) -> Self {
        let mut c = [0.0; TERMS];
        c[0] = x0;
        c[1] = 1.0;
        Self { val: 0, c }
    }

    /// `1/x`, the large-argument variable.
    pub fn inverse_variable() -> Self {
        let mut c = [0.0; TERMS];
        c[0] = 1.0;
        Self { val: -1, c }
    }

    /// Coefficient of `x^power`; zero below the valuation and beyond precision.
    pub fn coeff(&self, power: i32) -> f64 {
        let j = power - self.val;
        if j < 0 || j >= TERMS as i32 {
            0.0
        } else {
            self.c[j as usize]
        }
    }

    /// Highest power carried with full precision.
    pub fn precision(&self) -> i32 {
        self.val + TERMS as i32 - 1
    }

    fn strip(self) -> Result<Self> {
        let k = self
            .c
            .iter()
            .position(|&x| x != 0.0)
            .ok_or_else(|| Error::Singular("series vanishes identically".into()))?;
        let mut c = [0.0; TERMS];
        c[..TERMS - k].copy_from_slice(&self.c[k..]);
        Ok(Self {
            val: self.val + k as i32,
            c,
        })
    }

    pub fn try_recip(self) -> Result<Self> {
        let s = self.strip()?;
        let b0 = s.c[0];
        let mut r = [0.0; TERMS];
        r[0] = 1.0 / b0;
        for n in 1..TERMS {
            let acc: f64 = (1..=n).map(|k| s.c[k] * r[n - k]).sum();
            r[n] = -acc / b0;
        }
        Ok(Self { val: -s.val, c: r })
    }

    pub fn try_sqrt(self) -> Result<Self> {
        let s = self.strip()?;
        if s.val % 2 != 0 || s.c[0] <= 0.0 {
            return Err(Error::Domain(
                "square root of a series needs an even valuation and positive leading term".into(),
            ));
        }
        let c0 = s.c[0];
        let t: Vec<f64> = s.c.iter().map(|x| x / c0).collect();
        let mut r = [0.0; TERMS];
        r[0] = 1.0;
        for n in 1..TERMS {
            let acc: f64 = (1..n).map(|k| r[k] * r[n - k]).sum();
            r[n] = (t[n] - acc) / 2.0;
        }
        let k = c0.sqrt();
        for x in &mut r {
            *x *= k;
        }
        Ok(Self { val: s.val / 2, c: r })
    }

    /// Principal `acos`, for series without negative powers and `|c₀| < 1`.
    pub fn try_acos(self) -> Result<Self> {
        if self.val < 0 {
            return Err(Error::Domain("acos of a series with a pole".into()));
        }
        let p: Vec<f64> = (0..TERMS as i32).map(|j| self.coeff(j)).collect();
        if p[0].abs() >= 1.0 {
            return Err(Error::Domain("acos argument outside (-1, 1)".into()));
        }
        let ps = Self::from_power(&p);
        let w = (Self::constant(1.0) - ps * ps).try_sqrt()?;
        let mut dp = [0.0; TERMS];
        for j in 1..TERMS {
            dp[j - 1] = j as f64 * p[j];
        }
        let g = Self { val: 0, c: dp } / w;
        let mut r = [0.0; TERMS];
        r[0] = p[0].acos();
        for j in 1..TERMS {
            r[j] = -g.coeff(j as i32 - 1) / j as f64;
        }
        Ok(Self { val: 0, c: r })
    }

    fn from_power(p: &[f64]) -> Self {
        let mut c = [0.0; TERMS];
        c.copy_from_slice(&p[..TERMS]);
        Self { val: 0, c }
    }
}

impl Add for Laurent {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let val = self.val.min(o.val);
        let mut c = [0.0; TERMS];
        for (j, x) in c.iter_mut().enumerate() {
            let p = val + j as i32;
            *x = self.coeff(p) + o.coeff(p);
        }
        Self { val, c }
    }
}

impl Sub for Laurent {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Laurent {
    type Output = Self;
    fn neg(mut self) -> Self {
        for x in &mut self.c {
            *x = -*x;
        }
        self
    }
}

impl Mul for Laurent {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; TERMS];
        for (n, x) in c.iter_mut().enumerate() {
            *x = (0..=n).map(|k| self.c[k] * o.c[n - k]).sum();
        }
        Self {
            val: self.val + o.val,
            c,
        }
    }
}

/// Panics when the divisor vanishes identically; callers guard first.
impl Div for Laurent {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.try_recip().expect("division by a vanishing series")
    }
}

impl Add<f64> for Laurent {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        self + Self::constant(o)
    }
}

impl Sub<f64> for Laurent {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        self + Self::constant(-o)
    }
}

impl Mul<f64> for Laurent {
    type Output = Self;
    fn mul(mut self, o: f64) -> Self {
        for x in &mut self.c {
            *x *= o;
        }
        self
    }
}

impl Div<f64> for Laurent {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        self * (1.0 / o)
    }
}

/// Field-like scalar used by the closed-form energies.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn lift(v: f64) -> Self;
    fn sqrt(self) -> Result<Self>;
    fn acos(self) -> Result<Self>;
    /// True within 1e-12 of zero (relative to the other coefficients for series).
    fn near_zero(&self) -> bool;

    fn powi(self, n: u32) -> Self {
        (0..n).fold(Self::lift(1.0), |acc, _| acc * self)
    }
}

impl Scalar for f64 {
    fn lift(v: f64) -> Self {
        v
    }
    fn sqrt(self) -> Result<Self> {
        if self < 0.0 {
            Err(Error::Domain(format!("square root of {self}")))
        } else {
            Ok(f64::sqrt(self))
        }
    }
    fn acos(self) -> Result<Self> {
        if self.abs() > 1.0 {
            Err(Error::Domain(format!("acos of {self}")))
        } else {
            Ok(f64::acos(self))
        }
    }
    fn near_zero(&self) -> bool {
        self.abs() <= 1e-12
    }
}

impl Scalar for Laurent {
    fn lift(v: f64) -> Self {
        Self::constant(v)
    }
    fn sqrt(self) -> Result<Self> {
        self.try_sqrt()
    }
    fn acos(self) -> Result<Self> {
        self.try_acos()
    }
    fn near_zero(&self) -> bool {
        let scale = self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        match self.c.iter().find(|x| **x != 0.0) {
            Some(lead) => lead.abs() <= 1e-12 * scale,
            None => true,
        }
    }
}
