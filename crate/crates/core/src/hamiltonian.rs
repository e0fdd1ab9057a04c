//! The reduced three-body Hamiltonian acting on a single correlated exponential,
//! expanded into monomials in `(r₁, r₂, r₁₂)`.

use std::collections::BTreeMap;

use crate::system::{ExponentTriple, SystemSpec};

/// `coef · r₁^p[0] r₂^p[1] r₁₂^p[2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coef: f64,
    pub pow: [u32; 3],
}

/// Sparse polynomial in the three interparticle distances.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly3 {
    pub terms: Vec<Monomial>,
}

impl Poly3 {
    pub fn monomial(coef: f64, pow: [u32; 3]) -> Self {
        Self {
            terms: vec![Monomial { coef, pow }],
        }
    }

    pub fn push(&mut self, coef: f64, pow: [u32; 3]) {
        if coef != 0.0 {
            self.terms.push(Monomial { coef, pow });
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<[u32; 3], f64> = BTreeMap::new();
        for x in &self.terms {
            for y in &o.terms {
                let p = [
                    x.pow[0] + y.pow[0],
                    x.pow[1] + y.pow[1],
                    x.pow[2] + y.pow[2],
                ];
                *acc.entry(p).or_insert(0.0) += x.coef * y.coef;
            }
        }
        Self {
            terms: acc
                .into_iter()
                .filter(|(_, c)| *c != 0.0)
                .map(|(pow, coef)| Monomial { coef, pow })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::monomial(1.0, [0, 0, 0]), |acc, _| acc.mul(self))
    }

    /// `(r₁ + r₂)ⁿ r₁₂ᵏ`.
    pub fn sum_power(n: u32, k: u32) -> Self {
        let s = Self {
            terms: vec![
                Monomial {
                    coef: 1.0,
                    pow: [1, 0, 0],
                },
                Monomial {
                    coef: 1.0,
                    pow: [0, 1, 0],
                },
            ],
        };
        s.pow(n).mul(&Self::monomial(1.0, [0, 0, k]))
    }

    /// `16 S²` for the triangle with sides `(r₁, r₂, r₁₂)`.
    pub fn sixteen_area_squared() -> Self {
        let mut p = Self::default();
        p.push(-1.0, [4, 0, 0]);
        p.push(-1.0, [0, 4, 0]);
        p.push(-1.0, [0, 0, 4]);
        p.push(2.0, [2, 2, 0]);
        p.push(2.0, [2, 0, 2]);
        p.push(2.0, [0, 2, 2]);
        p
    }

    pub fn eval(&self, r: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.coef
                    * r[0].powi(t.pow[0] as i32)
                    * r[1].powi(t.pow[1] as i32)
                    * r[2].powi(t.pow[2] as i32)
            })
            .sum()
    }
}

/// Inverse masses and pair charge products entering the reduced operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub inv_m1: f64,
    pub inv_m2: f64,
    pub inv_m3: f64,
    pub q13: f64,
    pub q23: f64,
    pub q12: f64,
}

impl Couplings {
    pub fn of(system: &SystemSpec) -> Self {
        let inv_m3 = if system.is_static() {
            0.0
        } else {
            1.0 / system.big_m
        };
        Self {
            inv_m1: 1.0 / system.m1,
            inv_m2: 1.0 / system.m2,
            inv_m3,
            q13: system.e1 * system.z,
            q23: system.e2 * system.z,
            q12: system.e1 * system.e2,
        }
    }
}

/// `r₁ r₂ r₁₂ · (Hφ)/φ` for `φ = exp(-a r₁ - b r₂ - c r₁₂)` in `d` dimensions.
pub fn reduced_h_terms(t: &ExponentTriple, k: &Couplings, d: u32) -> Poly3 {
    let (a, b, c) = (t.a, t.b, t.c);
    let mu13 = k.inv_m1 + k.inv_m3;
    let mu23 = k.inv_m2 + k.inv_m3;
    let mu12 = k.inv_m1 + k.inv_m2;
    let dm1 = f64::from(d) - 1.0;
    let mut p = Poly3::default();
    p.push(-0.5 * (mu13 * a * a + mu23 * b * b + mu12 * c * c), [1, 1, 1]);
    p.push(0.5 * mu13 * dm1 * a + k.q13, [0, 1, 1]);
    p.push(0.5 * mu23 * dm1 * b + k.q23, [1, 0, 1]);
    p.push(0.5 * mu12 * dm1 * c + k.q12, [1, 1, 0]);
    // r₂(r₁² + r₁₂² − r₂²)
    let x1 = -0.5 * k.inv_m1 * a * c;
    p.push(x1, [2, 1, 0]);
    p.push(x1, [0, 1, 2]);
    p.push(-x1, [0, 3, 0]);
    // r₁(r₂² + r₁₂² − r₁²)
    let x2 = -0.5 * k.inv_m2 * b * c;
    p.push(x2, [1, 2, 0]);
    p.push(x2, [1, 0, 2]);
    p.push(-x2, [3, 0, 0]);
    // r₁₂(r₁² + r₂² − r₁₂²)
    let x3 = -0.5 * k.inv_m3 * a * b;
    p.push(x3, [2, 0, 1]);
    p.push(x3, [0, 2, 1]);
    p.push(-x3, [0, 0, 3]);
    p
}

/// `r₁ r₂ r₁₂`, the overlap integrand after absorbing the radial weight.
pub fn overlap_terms() -> Poly3 {
    Poly3::monomial(1.0, [1, 1, 1])
}

/// Direct and exchange exponent pairs of the (1 + P₁₂)-symmetrized trial.
///
/// A symmetric trial collapses to a single block.
pub fn blocks(t1: &ExponentTriple, t2: &ExponentTriple) -> Vec<(ExponentTriple, ExponentTriple)> {
    if t1 == t2 {
        vec![(*t1, *t1)]
    } else {
        let ts = [*t1, *t2];
        let mut v = Vec::with_capacity(4);
        for ti in &ts {
            for tj in &ts {
                v.push((*ti, *tj));
            }
        }
        v
    }
}
