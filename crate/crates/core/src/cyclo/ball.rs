//! Rigorous numerical enclosures of cyclotomic numbers under the embedding
//! `ζ_N ↦ e^{2πi/N}`, using binary fixed point on big integers.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CycNum;
use crate::error::{Error, Result};

/// Extra working bits beyond the requested precision.
const GUARD_BITS: u32 = 40;
/// Per-value error bound on the fixed-point `cos`/`sin`, in working ulps (log2).
const TRIG_ERR_LOG2: u32 = 21;

/// A disc `{z : |z - mid| <= radius}` with all quantities scaled by `2^-scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: BigInt,
    pub im: BigInt,
    pub radius: BigInt,
    pub scale: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealSign {
    Negative,
    Zero,
    Positive,
}

fn to_f64_scaled(x: &BigInt, scale: u32) -> f64 {
    let bits = x.bits() as u32;
    if bits > 62 {
        let shift = bits - 62;
        let top = (x >> shift).to_f64().unwrap();
        top * 2f64.powi(shift as i32 - scale as i32)
    } else {
        x.to_f64().unwrap() * 2f64.powi(-(scale as i32))
    }
}

impl ComplexBall {
    pub fn re_f64(&self) -> f64 {
        to_f64_scaled(&self.re, self.scale)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64_scaled(&self.im, self.scale)
    }

    /// Radius rounded up to the next representable `f64`.
    pub fn radius_f64(&self) -> f64 {
        let r = to_f64_scaled(&self.radius, self.scale);
        r * (1.0 + f64::EPSILON) + f64::MIN_POSITIVE
    }

    /// Whether `(re, im)` lies within the disc, allowing `slack` for the
    /// rounding of the caller's own value.
    pub fn contains_approx(&self, re: f64, im: f64, slack: f64) -> bool {
        let dr = self.re_f64() - re;
        let di = self.im_f64() - im;
        (dr * dr + di * di).sqrt() <= self.radius_f64() + slack
    }

    /// Enclosure of the product of two enclosures at the same scale.
    pub fn mul(&self, other: &ComplexBall) -> ComplexBall {
        assert_eq!(self.scale, other.scale);
        let s = self.scale;
        let re = (&self.re * &other.re - &self.im * &other.im) >> s;
        let im = (&self.re * &other.im + &self.im * &other.re) >> s;
        let abs_a = self.re.abs() + self.im.abs();
        let abs_b = other.re.abs() + other.im.abs();
        let err = &abs_a * &other.radius + &abs_b * &self.radius + &self.radius * &other.radius;
        // +2 covers the floor in the midpoint coordinates, +1 the floor of err
        let radius = (err >> s) + 3;
        ComplexBall { re, im, radius, scale: s }
    }

    /// True when the two discs intersect.
    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        assert_eq!(self.scale, other.scale);
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        let r = &self.radius + &other.radius;
        &dr * &dr + &di * &di <= &r * &r
    }

    fn real_sign(&self) -> Option<RealSign> {
        if self.re > self.radius {
            Some(RealSign::Positive)
        } else if -&self.re > self.radius {
            Some(RealSign::Negative)
        } else {
            None
        }
    }
}

/// Fixed-point division, truncating toward zero.
fn fdiv(a: &BigInt, b: &BigInt) -> BigInt {
    a / b
}

/// `atan(1/x) * 2^w` by the alternating series.
fn atan_inv(x: u64, w: u32) -> BigInt {
    let one = BigInt::one() << w;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = fdiv(&one, &x);
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power = fdiv(&power, &x2);
        if power.is_zero() {
            break;
        }
        let term = fdiv(&power, &BigInt::from(2 * k + 1));
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `π * 2^w` by Machin's formula.
fn pi_fixed(w: u32) -> BigInt {
    (atan_inv(5, w) * 16) - (atan_inv(239, w) * 4)
}

/// `(cos θ, sin θ) * 2^w` for fixed-point `|θ| <= π`.
fn cos_sin(theta: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let t2 = (theta * theta) >> w;
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut cterm = one;
    let mut sterm = theta.clone();
    let mut k: u64 = 1;
    loop {
        cterm = fdiv(&((&cterm * &t2) >> w), &BigInt::from((2 * k - 1) * (2 * k)));
        sterm = fdiv(&((&sterm * &t2) >> w), &BigInt::from((2 * k) * (2 * k + 1)));
        if cterm.is_zero() && sterm.is_zero() {
            break;
        }
        if k % 2 == 1 {
            cos -= &cterm;
            sin -= &sterm;
        } else {
            cos += &cterm;
            sin += &sterm;
        }
        k += 1;
    }
    (cos, sin)
}

/// `e^{2πik/n} * 2^w`.
fn unit_root(k: u64, n: u64, w: u32) -> (BigInt, BigInt) {
    let k = k % n;
    if k == 0 {
        return (BigInt::one() << w, BigInt::zero());
    }
    if 4 * k == n {
        return (BigInt::zero(), BigInt::one() << w);
    }
    if 2 * k == n {
        return (-(BigInt::one() << w), BigInt::zero());
    }
    if 4 * k == 3 * n {
        return (BigInt::zero(), -(BigInt::one() << w));
    }
    // map the angle into [-π, π]
    let signed = if 2 * k > n { k as i64 - n as i64 } else { k as i64 };
    let theta = fdiv(&(pi_fixed(w) * BigInt::from(2 * signed)), &BigInt::from(n));
    cos_sin(&theta, w)
}

/// Evaluates `a` at `ζ_N = e^{2πi/N}` to about `precision` bits.
///
/// The returned radius is a rigorous bound on the distance to the true value.
pub fn numeric_eval(a: &CycNum, precision: u32) -> ComplexBall {
    assert!(precision >= 53, "precision must be at least 53 bits");
    assert!(precision <= 60_000, "precision beyond supported range");
    let w = precision + GUARD_BITS;
    let n = a.conductor() as u64;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    let mut radius = BigInt::zero();
    for (k, c) in a.num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // coefficient to fixed point, truncated
        let cf = fdiv(&(c << w), &a.den);
        let (cr, ci) = unit_root(k as u64, n, w);
        re += (&cf * &cr) >> w;
        im += (&cf * &ci) >> w;
        let cabs = (c.abs() + &a.den - BigInt::one()) / &a.den;
        radius += ((cabs + 1u32) << TRIG_ERR_LOG2) + 4u32;
    }
    ComplexBall { re, im, radius, scale: w }
}

/// Sign of a real (conjugation-fixed) cyclotomic number.
///
/// Zero is decided exactly; otherwise precision doubles until the enclosure
/// excludes zero.
pub fn real_sign(a: &CycNum) -> Result<RealSign> {
    if a.conj() != *a {
        return Err(Error::NotSelfConjugate);
    }
    if a.is_zero() {
        return Ok(RealSign::Zero);
    }
    if let Some(q) = a.as_rational() {
        return Ok(match q.numer().sign() {
            Sign::Minus => RealSign::Negative,
            _ => RealSign::Positive,
        });
    }
    let mut bits = 64;
    loop {
        if let Some(s) = numeric_eval(a, bits).real_sign() {
            return Ok(s);
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_is_exact_center() {
        let b = numeric_eval(&CycNum::one(7), 53);
        assert_eq!(b.re_f64(), 1.0);
        assert_eq!(b.im_f64(), 0.0);
    }

    #[test]
    fn zeta4_is_i() {
        let b = numeric_eval(&CycNum::zeta(4), 53);
        assert!(b.contains_approx(0.0, 1.0, 0.0));
        assert!(b.radius_f64() <= 2f64.powi(-40));
    }

    #[test]
    fn golden_ratio() {
        let phi = CycNum::from_int_coeffs(5, &[0, 0, -1, -1]);
        let b = numeric_eval(&phi, 53);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((b.re_f64() - golden).abs() < 1e-9);
        assert!(b.im_f64().abs() < 1e-12);
        assert!(b.radius_f64() < 1e-9);
    }

    #[test]
    fn pi_digits() {
        let p = pi_fixed(100);
        let approx = to_f64_scaled(&p, 100);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn roots_of_unity_match_libm() {
        for n in [3u32, 5, 7, 8, 12, 16, 80] {
            for k in 0..n as i64 {
                let z = CycNum::zeta_pow(n, k);
                let b = numeric_eval(&z, 53);
                let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                assert!(b.contains_approx(ang.cos(), ang.sin(), 1e-14), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn signs() {
        let s = CycNum::zeta(8).add(&CycNum::zeta_pow(8, 7));
        let two = CycNum::from_int(8, 2);
        assert_eq!(real_sign(&CycNum::zero(8)).unwrap(), RealSign::Zero);
        assert_eq!(real_sign(&two.sub(&s)).unwrap(), RealSign::Positive);
        assert_eq!(real_sign(&s.sub(&two)).unwrap(), RealSign::Negative);
        assert!(matches!(real_sign(&CycNum::zeta(8)), Err(Error::NotSelfConjugate)));
    }

    #[test]
    fn sign_of_tiny_difference() {
        // φ^40 - round(φ^40) is tiny: |ψ^40| ~ 4e-9; needs the escalation
        let phi = CycNum::from_int_coeffs(5, &[0, 0, -1, -1]);
        let lucas40 = num_bigint::BigInt::from(228826127u64);
        let rational = CycNum::from_rational(5, &num_rational::BigRational::from_integer(lucas40));
        // φ^40 + ψ^40 = L_40, so φ^40 - L_40 = -ψ^40 < 0
        let diff = phi.pow(40).sub(&rational);
        assert_eq!(real_sign(&diff).unwrap(), RealSign::Negative);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn product_enclosure(n in 1u32..=24, xs in proptest::collection::vec(-9i64..=9, 24), ys in proptest::collection::vec(-9i64..=9, 24)) {
            let a = CycNum::from_int_coeffs(n, &xs[..n as usize]);
            let b = CycNum::from_int_coeffs(n, &ys[..n as usize]);
            let ba = numeric_eval(&a, 64);
            let bb = numeric_eval(&b, 64);
            let bab = numeric_eval(&a.mul(&b), 64);
            prop_assert!(bab.overlaps(&ba.mul(&bb)));
        }

        #[test]
        fn embedding_preserves_value(n in 1u32..=12, k in 2u32..=4, xs in proptest::collection::vec(-9i64..=9, 12)) {
            let a = CycNum::from_int_coeffs(n, &xs[..n as usize]);
            let e = a.embed(n * k).unwrap();
            let ba = numeric_eval(&a, 64);
            let be = numeric_eval(&e, 64);
            prop_assert!(ba.overlaps(&be));
        }
    }
}
