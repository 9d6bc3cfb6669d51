//! Truncated power series with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    /// Coefficient of `z^j` at index `j`; all terms of degree `> order` are unknown.
    pub coeffs: Vec<BigRational>,
    pub order: usize,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
            order,
        }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// `c z^k`.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn coeff(&self, j: usize) -> &BigRational {
        &self.coeffs[j]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, BigRational::zero());
        PowerSeries {
            coeffs: c,
            order: order.min(self.order),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let coeffs = (0..=order)
            .map(|j| &self.coeffs[j] + &o.coeffs[j])
            .collect();
        PowerSeries { coeffs, order }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let coeffs = (0..=order)
            .map(|j| &self.coeffs[j] - &o.coeffs[j])
            .collect();
        PowerSeries { coeffs, order }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            order: self.order,
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order);
        for j in k..=self.order {
            s.coeffs[j] = self.coeffs[j - k].clone();
        }
        s
    }

    /// Substitutes `z -> c z`.
    pub fn dilate(&self, c: &BigRational) -> Self {
        let mut p = BigRational::one();
        let mut s = self.clone();
        for x in s.coeffs.iter_mut() {
            *x = &*x * &p;
            p = &p * c;
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs, order }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.order);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Multiplicative inverse by Newton iteration `g <- g(2 - f g)`.
    ///
    /// Panics if the constant term is zero.
    pub fn inverse(&self) -> Self {
        assert!(
            !self.coeffs[0].is_zero(),
            "series with zero constant term has no inverse"
        );
        let mut g = Self::constant(self.coeffs[0].recip(), 0);
        let mut prec = 0;
        while prec < self.order {
            prec = (2 * prec + 1).min(self.order);
            let f = self.truncate(prec);
            let g_ext = PowerSeries {
                coeffs: {
                    let mut c = g.coeffs.clone();
                    c.resize(prec + 1, BigRational::zero());
                    c
                },
                order: prec,
            };
            let fg = f.mul(&g_ext);
            let two_minus = Self::constant(rat(2), prec).sub(&fg);
            g = g_ext.mul(&two_minus);
        }
        g
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients; `None` if any is fractional or negative.
    pub fn to_naturals(&self) -> Option<Vec<num_bigint::BigUint>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() && !c.is_negative() {
                    c.to_integer().to_biguint()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Solves `F = 1 + z (a F + b F^2)` for the power series root with `F(0) = 1`
/// by Newton iteration on `G(F) = z(aF + bF^2) - F + 1`.
pub fn newton_quadratic(a: &BigRational, b: &BigRational, order: usize) -> PowerSeries {
    let mut f = PowerSeries::one(0);
    let mut prec = 0;
    while prec < order {
        prec = (2 * prec + 1).min(order);
        let mut fc = f.coeffs.clone();
        fc.resize(prec + 1, BigRational::zero());
        let fx = PowerSeries {
            coeffs: fc,
            order: prec,
        };
        let f2 = fx.mul(&fx);
        let g = fx
            .scale(a)
            .add(&f2.scale(b))
            .shift(1)
            .sub(&fx)
            .add(&PowerSeries::one(prec));
        // G'(F) = z(a + 2bF) - 1
        let dg = PowerSeries::constant(a.clone(), prec)
            .add(&fx.scale(&(b * rat(2))))
            .shift(1)
            .sub(&PowerSeries::one(prec));
        f = fx.sub(&g.mul(&dg.inverse()));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_minus_z() {
        let f = PowerSeries::one(6).sub(&PowerSeries::monomial(rat(1), 1, 6));
        let g = f.inverse();
        assert!(g.coeffs.iter().all(|c| *c == rat(1)));
        assert_eq!(f.mul(&g), PowerSeries::one(6));
    }

    #[test]
    fn catalan_root() {
        let c = newton_quadratic(&rat(0), &rat(1), 7);
        let v: Vec<i64> = c
            .coeffs
            .iter()
            .map(|x| x.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(v, [1, 1, 2, 5, 14, 42, 132, 429]);
    }
}
