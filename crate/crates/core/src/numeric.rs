//! High-precision complex evaluation used to cross-check symbolic identities.
//!
//! Sample points are Gaussian rationals, so rational-function coefficients are
//! evaluated exactly; only `exp` is approximated. Values are binary fixed point
//! `(re + i·im) / 2^bits` over big integers.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{fmt_rational, to_f64, Polynomial, Rational, RationalFunction};

/// Radius around a denominator root inside which sampling is refused.
pub const POLE_EXCLUSION_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("sample point {point} is within {radius:e} of a pole")]
    PoleAtSample { point: GaussianRational, radius: f64 },
    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(u32),
}

/// `re + i·im` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let norm = &o.re * &o.re + &o.im * &o.im;
        if norm.is_zero() {
            return None;
        }
        Some(Self {
            re: (&self.re * &o.re + &self.im * &o.im) / &norm,
            im: (&self.im * &o.re - &self.re * &o.im) / &norm,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { re: &self.re * c, im: &self.im * c }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
    }
}

crate::algebra::serialize_display!(GaussianRational);

pub fn eval_poly(p: &Polynomial, z: &GaussianRational) -> GaussianRational {
    p.coeffs().iter().rev().fold(GaussianRational::zero(), |acc, c| acc.mul(z).add(&GaussianRational::real(c.clone())))
}

/// Exact value of a rational function at `z`; `None` at a pole.
pub fn eval_rational_function(r: &RationalFunction, z: &GaussianRational) -> Option<GaussianRational> {
    eval_poly(r.num(), z).div(&eval_poly(r.den(), z))
}

/// Complex value in binary fixed point: `(re + i·im) / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HpComplex {
    re: BigInt,
    im: BigInt,
    bits: u32,
}

impl HpComplex {
    pub fn zero(bits: u32) -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Self { re: BigInt::one() << bits, im: BigInt::zero(), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn from_gaussian(g: &GaussianRational, bits: u32) -> Self {
        let fix = |x: &Rational| (x.numer() << bits) / x.denom();
        Self { re: fix(&g.re), im: fix(&g.im), bits }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Self { re: &self.re + &o.re, im: &self.im + &o.im, bits: self.bits }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Self { re: &self.re - &o.re, im: &self.im - &o.im, bits: self.bits }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Self { re: re >> self.bits, im: im >> self.bits, bits: self.bits }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Drops to a coarser fixed point.
    pub fn truncate_to(&self, bits: u32) -> Self {
        assert!(bits <= self.bits);
        let shift = self.bits - bits;
        Self { re: &self.re >> shift, im: &self.im >> shift, bits }
    }

    fn div_small(&self, k: u64) -> Self {
        Self { re: &self.re / k, im: &self.im / k, bits: self.bits }
    }

    fn part_to_f64(&self, x: &BigInt) -> f64 {
        Rational::new(x.clone(), BigInt::one() << self.bits).to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.part_to_f64(&self.re), self.part_to_f64(&self.im))
    }

    /// `|x|` rounded to `f64`.
    pub fn norm_f64(&self) -> f64 {
        self.part_to_f64(&self.re).hypot(self.part_to_f64(&self.im))
    }
}

/// `e^w` for a Gaussian rational `w`, accurate to roughly `2^-bits` relative.
///
/// Scales `w` down by `2^s` so the Taylor series converges fast, then squares
/// the result back up `s` times with enough guard bits to absorb the
/// amplification.
pub fn exp(w: &GaussianRational, bits: u32) -> HpComplex {
    let m = to_f64(&w.re).abs() + to_f64(&w.im).abs();
    let s: u32 = if m < 0.25 { 0 } else { (m.log2().ceil() as i64 + 2).max(0) as u32 };
    let work = bits + s + 32;
    let y = HpComplex::from_gaussian(&w.scale(&Rational::new(BigInt::one(), BigInt::one() << s)), work);
    let mut sum = HpComplex::one(work);
    let mut term = HpComplex::one(work);
    let mut k = 1u64;
    loop {
        term = term.mul(&y).div_small(k);
        if term.re.is_zero() && term.im.is_zero() {
            break;
        }
        sum = sum.add(&term);
        k += 1;
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    sum.truncate_to(bits)
}

/// Approximate complex roots of `p` (Durand-Kerner). Only used to keep
/// sample points away from poles, so double precision is enough.
pub fn approximate_roots(p: &Polynomial) -> Vec<Complex64> {
    let Some(deg) = p.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let lc = to_f64(p.leading_coeff().expect("nonzero"));
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(|c| Complex64::new(to_f64(c) / lc, 0.0)).collect();
    if deg == 1 {
        return vec![-coeffs[0]];
    }
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..1000 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// True when `z` is a root of `den` or within [`POLE_EXCLUSION_RADIUS`] of one.
pub fn near_root(den: &Polynomial, z: &GaussianRational) -> bool {
    if den.is_constant() {
        return false;
    }
    if eval_poly(den, z).is_zero() {
        return true;
    }
    let zc = z.to_complex64();
    approximate_roots(den).iter().any(|r| (r - zc).norm() < POLE_EXCLUSION_RADIUS)
}
