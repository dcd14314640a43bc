//! Truncated formal power series with exact integer coefficients.
//!
//! A series knows its coefficients `c_0..=c_N`; `N` is its truncation order.
//! Binary operations truncate to the smaller order, so a result never claims
//! a coefficient its inputs could not determine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::paths::ballot;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// Series known up to `x^(coeffs.len() - 1)`. Panics on an empty vector.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        IntSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        IntSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigInt::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    /// `x · self`, which is known to one order higher.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        IntSeries { coeffs }
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `self ∘ inner`. The inner series must have zero constant term. The
    /// result is known to `min(M, (N + 1)·v - 1)` where `M` is the inner order,
    /// `N` the outer order, and `v` the inner valuation.
    pub fn compose(&self, inner: &IntSeries) -> Result<IntSeries> {
        if !inner.coeffs[0].is_zero() {
            return invalid("cannot compose with a series whose constant term is nonzero");
        }
        let order = match inner.valuation() {
            None => inner.order(),
            Some(v) => inner.order().min((self.order() + 1) * v - 1),
        };
        let inner = inner.clone().truncate(order);
        let mut acc = IntSeries::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn reciprocal(&self) -> Result<IntSeries> {
        let f0 = &self.coeffs[0];
        if f0.abs() != BigInt::one() {
            return invalid(format!("constant term {f0} is not a unit in the integers"));
        }
        let n = self.order();
        let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
        g.push(f0.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &g[k - i];
            }
            // f0 is its own inverse
            g.push(-(acc * f0));
        }
        Ok(IntSeries { coeffs: g })
    }
}

impl Add for &IntSeries {
    type Output = IntSeries;

    fn add(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order().min(rhs.order());
        IntSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &IntSeries {
    type Output = IntSeries;

    fn sub(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order().min(rhs.order());
        IntSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &IntSeries {
    type Output = IntSeries;

    fn mul(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k).fold(BigInt::zero(), |acc, i| {
                    if self.coeffs[i].is_zero() {
                        acc
                    } else {
                        acc + &self.coeffs[i] * &rhs.coeffs[k - i]
                    }
                })
            })
            .collect();
        IntSeries { coeffs }
    }
}

impl Neg for &IntSeries {
    type Output = IntSeries;

    fn neg(self) -> IntSeries {
        IntSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::perm::write_comma_list(f, &self.coeffs)
    }
}

/// `C(x)` from `C_{n+1} = Σ C_i C_{n-i}`.
pub fn catalan_series(order: usize) -> IntSeries {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for n in 0..order {
        let next = (0..=n).fold(BigInt::zero(), |acc, i| acc + &c[i] * &c[n - i]);
        c.push(next);
    }
    IntSeries { coeffs: c }
}

/// `x C(x)`.
fn x_catalan(order: usize) -> IntSeries {
    catalan_series(order).shift().truncate(order)
}

/// `G(x) = x C(x C(x))`, the indecomposable avoider counts.
pub fn g_series(order: usize) -> IntSeries {
    let inner = catalan_series(order)
        .compose(&x_catalan(order))
        .expect("x C(x) has zero constant term");
    inner.shift().truncate(order)
}

/// `F(x) = 1 / (1 - G(x))`, all avoider counts.
pub fn f_series(order: usize) -> IntSeries {
    (&IntSeries::one(order) - &g_series(order))
        .reciprocal()
        .expect("1 - G has constant term 1")
}

/// `u_n = Σ_{k=0}^{n-2} C_{n-1-k} · ballot(k, n-2-k)` with `u_0 = 0`, `u_1 = 1`.
pub fn u_by_formula(n: u64) -> BigUint {
    match n {
        0 => BigUint::zero(),
        1 => BigUint::one(),
        _ => (0..=n - 2)
            .map(|k| ballot(n - 1 - k, 0) * ballot(k, (n - 2 - k) as i64))
            .sum(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    /// `a ↦ 1 / (1 - A(x))`; requires `a_0 = 0`.
    Invert,
    /// `a ↦ A(x C(x))`.
    Catalan,
}

/// Applies a sequence transform to `seq`, read as the coefficients of a series
/// of order `seq.len() - 1`.
pub fn transform(seq: &[BigInt], which: Transform) -> Result<Vec<BigInt>> {
    if seq.is_empty() {
        return Ok(Vec::new());
    }
    let a = IntSeries::new(seq.to_vec());
    let out = match which {
        Transform::Invert => {
            if !a.coeffs[0].is_zero() {
                return invalid("the invert transform needs a zero constant term");
            }
            (&IntSeries::one(a.order()) - &a).reciprocal()?
        }
        Transform::Catalan => a.compose(&x_catalan(a.order()))?,
    };
    Ok(out.into_coefficients())
}

/// OEIS b-file lines `n a(n)`, indices starting at `offset`.
pub fn bfile<T: fmt::Display>(seq: &[T], offset: i64) -> String {
    let mut out = String::new();
    for (i, v) in seq.iter().enumerate() {
        out.push_str(&format!("{} {}\n", offset + i as i64, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_series(4).coefficients(), ints(&[1, 1, 2, 5, 14]).as_slice());
        for n in 0..=10 {
            assert_eq!(catalan_series(10).coeff(n), &BigInt::from(ballot(n as u64, 0)));
        }
    }

    #[test]
    fn compose_examples() {
        assert_eq!(g_series(5).coefficients(), ints(&[0, 1, 1, 3, 11, 44]).as_slice());
        let f = IntSeries::from_i64s(&[3, -1, 4, 1, 5]);
        assert_eq!(f.compose(&IntSeries::x(4)).unwrap(), f);
        let geometric = IntSeries::from_i64s(&[1; 5]);
        let x2 = IntSeries::from_i64s(&[0, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            geometric.compose(&x2).unwrap().coefficients(),
            ints(&[1, 0, 1, 0, 1, 0, 1, 0, 1]).as_slice()
        );
        assert!(geometric.compose(&IntSeries::one(3)).is_err());
    }

    #[test]
    fn compose_order_follows_inner_valuation() {
        let f = IntSeries::from_i64s(&[1, 1, 1]);
        assert_eq!(f.compose(&IntSeries::x(10)).unwrap().order(), 2);
        let x2 = IntSeries::from_i64s(&[0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(f.compose(&x2).unwrap().order(), 5);
        assert_eq!(f.compose(&IntSeries::zero(4)).unwrap().coefficients(), ints(&[1, 0, 0, 0, 0]).as_slice());
    }

    #[test]
    fn reciprocal_examples() {
        let one_minus_x = IntSeries::from_i64s(&[1, -1, 0, 0, 0]);
        assert_eq!(one_minus_x.reciprocal().unwrap().coefficients(), ints(&[1, 1, 1, 1, 1]).as_slice());
        let one_plus_x = IntSeries::from_i64s(&[1, 1, 0, 0, 0]);
        assert_eq!(one_plus_x.reciprocal().unwrap().coefficients(), ints(&[1, -1, 1, -1, 1]).as_slice());
        assert_eq!(f_series(4).coefficients(), ints(&[1, 1, 2, 6, 22]).as_slice());
        assert!(IntSeries::from_i64s(&[2, 1]).reciprocal().is_err());
        assert!(IntSeries::from_i64s(&[-1, 1]).reciprocal().is_ok());
    }

    #[test]
    fn u_formula_examples() {
        let u: Vec<u64> = (0..=5).map(|n| u64::try_from(u_by_formula(n)).unwrap()).collect();
        assert_eq!(u, vec![0, 1, 1, 3, 11, 44]);
    }

    #[test]
    fn transform_examples() {
        let cat = catalan_series(5).into_coefficients();
        let mut g = vec![BigInt::zero()];
        g.extend(transform(&cat, Transform::Catalan).unwrap().into_iter().take(5));
        assert_eq!(g, ints(&[0, 1, 1, 3, 11, 44]));
        let f = transform(&g[..5], Transform::Invert).unwrap();
        assert_eq!(f, ints(&[1, 1, 2, 6, 22]));
        assert_eq!(transform(&ints(&[0, 0, 0]), Transform::Invert).unwrap(), ints(&[1, 0, 0]));
        assert!(transform(&ints(&[1, 0]), Transform::Invert).is_err());
    }

    #[test]
    fn bfile_format() {
        assert_eq!(bfile(&[1, 1, 2], 0), "0 1\n1 1\n2 2\n");
        assert_eq!(bfile(&[7], 3), "3 7\n");
    }

    #[test]
    fn exact_identities_to_order_forty() {
        let g = g_series(40);
        let f = f_series(40);
        assert_eq!(&f * &(&IntSeries::one(40) - &g), IntSeries::one(40));
        for n in 0..=40 {
            assert_eq!(g.coeff(n), &BigInt::from(u_by_formula(n as u64)), "n = {n}");
        }
        // past 64 bits by n = 40
        assert!(g.coeff(40).bits() > 64);
    }
}
