//! f-vectors, h-vectors, their generating polynomials, and the Euler
//! characteristic.
//!
//! For a complex of dimension `d - 1` the f-polynomial is
//! `t^d + f_0 t^{d-1} + ... + f_{d-1}`, with the leading 1 standing for the
//! empty face, and the h-polynomial is `f(t - 1)`. Both are kept as dense
//! coefficient lists in descending powers of `t`. All arithmetic is exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::exact::{binomial, sign};

/// Integer polynomial with coefficients in descending powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// `coeffs[0]` multiplies the highest power.
    pub fn from_descending(coeffs: Vec<BigInt>) -> Self {
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree of the coefficient list (its length minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::from_descending(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_descending(out)
    }

    /// `p(t + shift)`, by Horner's rule over polynomials.
    pub fn shifted(&self, shift: &BigInt) -> Polynomial {
        let mut acc: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            // acc := acc * (t + shift) + c
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] += a;
                next[i + 1] += a * shift;
            }
            *next.last_mut().expect("nonempty") += c;
            acc = next;
        }
        Polynomial::from_descending(acc)
    }
}

/// Face counts `(f_0, ..., f_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(counts: Vec<u64>) -> Self {
        FVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// `d = dim + 1`, the number of entries.
    pub fn d(&self) -> usize {
        self.0.len()
    }

    /// `f_i`, zero beyond the top dimension.
    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `f_{i-1}` with the convention `f_{-1} = 1`.
    fn shifted_get(&self, i: usize) -> BigInt {
        if i == 0 {
            BigInt::one()
        } else {
            BigInt::from(self.0[i - 1])
        }
    }

    /// The f-polynomial `t^d + f_0 t^{d-1} + ... + f_{d-1}`.
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_descending((0..=self.d()).map(|i| self.shifted_get(i)).collect())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.polynomial().eval(t)
    }

    /// `h_k = Σ_{i ≤ k} (-1)^{k-i} C(d-i, k-i) f_{i-1}`, the coefficients of
    /// `f(t - 1)`.
    pub fn h_vector(&self) -> HVector {
        let d = self.d() as u64;
        let coeffs = (0..=d)
            .map(|k| {
                (0..=k).fold(BigInt::zero(), |acc, i| {
                    acc + sign(k - i) * binomial(d - i, k - i) * self.shifted_get(i as usize)
                })
            })
            .collect();
        HVector(coeffs)
    }

    /// `Σ (-1)^i f_i`; zero for the empty complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| sign(i as u64) * f as i64)
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

/// Coefficients `(h_0, ..., h_d)` of the h-polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector(Vec<BigInt>);

impl HVector {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_descending(self.0.clone())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.polynomial().eval(t)
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

pub fn f_vector(k: &SimplicialComplex) -> FVector {
    FVector(k.face_counts())
}

pub fn f_polynomial(k: &SimplicialComplex) -> Polynomial {
    f_vector(k).polynomial()
}

/// `f_K(t)`; 1 for the empty complex.
pub fn f_poly_eval(k: &SimplicialComplex, t: &BigInt) -> BigInt {
    f_vector(k).eval(t)
}

pub fn h_vector(k: &SimplicialComplex) -> HVector {
    f_vector(k).h_vector()
}

pub fn h_polynomial(k: &SimplicialComplex) -> Polynomial {
    h_vector(k).polynomial()
}

pub fn h_poly_eval(k: &SimplicialComplex, t: &BigInt) -> BigInt {
    h_vector(k).eval(t)
}

pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    f_vector(k).euler_characteristic()
}
