//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` obtained by
//! reducing modulo the `N`-th cyclotomic polynomial, with a single positive
//! common denominator. The representation is canonical, so equality is
//! coefficient comparison.

mod ball;
mod matrix;
mod poly;
mod serial;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use ball::{numeric_eval, real_sign, ComplexBall, RealSign};
pub use matrix::CycMatrix;
pub use poly::{cyclotomic_polynomial, euler_phi, lcm};
pub use serial::{format_rational, parse_rational};

/// Precomputed reduction data for one conductor.
#[derive(Debug)]
struct Field {
    conductor: u32,
    degree: usize,
    /// `reduce[k]` holds `x^k mod Φ_N` for `0 <= k < N`.
    reduce: Vec<Vec<i64>>,
    /// Residues coprime to `N`, i.e. the Galois group.
    units: Vec<u32>,
}

impl Field {
    fn build(n: u32) -> Field {
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;
        let mut reduce = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        if degree > 0 {
            cur[0] = 1;
        }
        for _ in 0..n {
            reduce.push(cur.clone());
            // multiply by x, then eliminate x^degree using the monic modulus
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * phi[i];
                }
            }
        }
        let units = (1..=n).filter(|k| k.gcd(&n) == 1).map(|k| k % n).collect();
        Field { conductor: n, degree, reduce, units }
    }
}

fn field(n: u32) -> Arc<Field> {
    static TABLE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = table.read().unwrap().get(&n) {
        return f.clone();
    }
    let built = Arc::new(Field::build(n));
    table.write().unwrap().entry(n).or_insert(built).clone()
}

/// An element of `Q(ζ_N)` in canonical form.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(conductor: u32) -> CycNum {
        assert!(conductor >= 1, "conductor must be positive");
        let field = field(conductor);
        let num = vec![BigInt::zero(); field.degree];
        CycNum { field, num, den: BigInt::one() }
    }

    pub fn one(conductor: u32) -> CycNum {
        CycNum::from_int(conductor, 1)
    }

    pub fn from_int(conductor: u32, value: i64) -> CycNum {
        let mut z = CycNum::zero(conductor);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_rational(conductor: u32, value: &BigRational) -> CycNum {
        let mut z = CycNum::zero(conductor);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        z
    }

    /// `ζ_N^k`; negative exponents are taken modulo `N`.
    pub fn zeta_pow(conductor: u32, k: i64) -> CycNum {
        let mut buf = vec![BigInt::zero(); conductor as usize];
        buf[k.rem_euclid(conductor as i64) as usize] = BigInt::one();
        CycNum::from_cyclic(field(conductor), buf, BigInt::one())
    }

    pub fn zeta(conductor: u32) -> CycNum {
        CycNum::zeta_pow(conductor, 1)
    }

    /// Reduces `Σ raw[k] ζ_N^k` to canonical form. Any length is accepted;
    /// exponents wrap modulo `N`.
    pub fn canonicalize(conductor: u32, raw: &[BigRational]) -> CycNum {
        let n = conductor as usize;
        let den = raw.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut buf = vec![BigInt::zero(); n];
        for (k, c) in raw.iter().enumerate() {
            if !c.is_zero() {
                buf[k % n] += c.numer() * (&den / c.denom());
            }
        }
        CycNum::from_cyclic(field(conductor), buf, den)
    }

    pub fn from_int_coeffs(conductor: u32, raw: &[i64]) -> CycNum {
        let n = conductor as usize;
        let mut buf = vec![BigInt::zero(); n];
        for (k, &c) in raw.iter().enumerate() {
            buf[k % n] += c;
        }
        CycNum::from_cyclic(field(conductor), buf, BigInt::one())
    }

    /// Reduces a length-`N` buffer indexed by exponent.
    fn from_cyclic(field: Arc<Field>, mut buf: Vec<BigInt>, den: BigInt) -> CycNum {
        let d = field.degree;
        for k in d..buf.len() {
            if buf[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut buf[k]);
            for (i, &r) in field.reduce[k].iter().enumerate() {
                if r != 0 {
                    buf[i] += &c * r;
                }
            }
        }
        buf.truncate(d);
        let mut z = CycNum { field, num: buf, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// `φ(N)`, the length of the coefficient vector.
    pub fn degree(&self) -> usize {
        self.field.degree
    }

    /// Coordinates in the power basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check_same(&self, other: &CycNum) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "cyclotomic operands over different conductors; embed first"
        );
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        self.check_same(other);
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            let mut z = CycNum { field: self.field.clone(), num, den: self.den.clone() };
            z.normalize();
            return z;
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        let mut z = CycNum { field: self.field.clone(), num, den: &self.den * &other.den };
        z.normalize();
        z
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        self.check_same(other);
        let n = self.field.conductor as usize;
        if self.is_rational() && self.den.is_one() {
            return other.scale_int(&self.num[0]);
        }
        if other.is_rational() && other.den.is_one() {
            return self.scale_int(&other.num[0]);
        }
        let mut buf = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                buf[k] += a * b;
            }
        }
        CycNum::from_cyclic(self.field.clone(), buf, &self.den * &other.den)
    }

    fn scale_int(&self, k: &BigInt) -> CycNum {
        let mut z = CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
        };
        z.normalize();
        z
    }

    pub fn scale(&self, q: &BigRational) -> CycNum {
        let mut z = CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        z.normalize();
        z
    }

    /// Galois automorphism `ζ ↦ ζ^j`, `gcd(j, N) = 1`.
    pub fn galois(&self, j: u32) -> CycNum {
        let n = self.field.conductor as usize;
        assert_eq!(
            (j as usize).gcd(&n),
            1,
            "galois exponent must be coprime to the conductor"
        );
        let mut buf = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                buf[(i * j as usize) % n] += c;
            }
        }
        CycNum::from_cyclic(self.field.clone(), buf, self.den.clone())
    }

    /// Complex conjugation, `ζ ↦ ζ^{N-1}`.
    pub fn conj(&self) -> CycNum {
        let n = self.field.conductor;
        if n <= 2 {
            return self.clone();
        }
        self.galois(n - 1)
    }

    /// Field norm down to `Q` together with the product of the non-identity
    /// conjugates (the adjugate), so that `a * adj = norm`.
    fn norm_and_adjugate(&self) -> (BigRational, CycNum) {
        let mut adj = CycNum::one(self.conductor());
        for &j in &self.field.units {
            if j != 1 % self.field.conductor {
                adj = adj.mul(&self.galois(j));
            }
        }
        let norm = self.mul(&adj);
        let norm = norm
            .as_rational()
            .expect("norm of a cyclotomic number must be rational");
        (norm, adj)
    }

    pub fn norm(&self) -> BigRational {
        self.norm_and_adjugate().0
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNum::from_rational(self.conductor(), &q.recip()));
        }
        let (norm, adj) = self.norm_and_adjugate();
        Ok(adj.scale(&norm.recip()))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.conductor());
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

    /// Image under `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, target: u32) -> Result<CycNum> {
        let n = self.field.conductor;
        if target == 0 || target % n != 0 {
            return Err(Error::ConductorMismatch { from: n, to: target });
        }
        if target == n {
            return Ok(self.clone());
        }
        let step = (target / n) as usize;
        let mut buf = vec![BigInt::zero(); target as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                buf[i * step] = c.clone();
            }
        }
        Ok(CycNum::from_cyclic(field(target), buf, self.den.clone()))
    }

    /// Sum of products `Σ a_i b_i`, reducing once at the end when all
    /// denominators are 1.
    pub fn dot<'a, I>(conductor: u32, pairs: I) -> CycNum
    where
        I: IntoIterator<Item = (&'a CycNum, &'a CycNum)>,
    {
        let f = field(conductor);
        let n = conductor as usize;
        let mut buf = vec![BigInt::zero(); n];
        let mut rest: Option<CycNum> = None;
        for (a, b) in pairs {
            a.check_same(b);
            debug_assert_eq!(a.conductor(), conductor);
            if a.den.is_one() && b.den.is_one() {
                for (i, x) in a.num.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.num.iter().enumerate() {
                        if !y.is_zero() {
                            buf[(i + j) % n] += x * y;
                        }
                    }
                }
            } else {
                let p = a.mul(b);
                rest = Some(match rest {
                    Some(r) => r.add(&p),
                    None => p,
                });
            }
        }
        let acc = CycNum::from_cyclic(f, buf, BigInt::one());
        match rest {
            Some(r) => acc.add(&r),
            None => acc,
        }
    }

    pub fn sum<'a, I>(conductor: u32, items: I) -> CycNum
    where
        I: IntoIterator<Item = &'a CycNum>,
    {
        items
            .into_iter()
            .fold(CycNum::zero(conductor), |acc, x| acc.add(x))
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        self.field.conductor == other.field.conductor
            && self.den == other.den
            && self.num == other.num
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(N={}, {})", self.conductor(), self)
    }
}

/// Rationals print as a single number; everything else as the exact
/// coefficient vector.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", format_rational(&q));
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, "]")
    }
}

impl Add<&CycNum> for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum::add(self, rhs)
    }
}

impl Sub<&CycNum> for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum::sub(self, rhs)
    }
}

impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        CycNum::mul(self, rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = CycNum::add(self, rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int_vec(z: &CycNum) -> Vec<BigRational> {
        z.coeffs()
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = CycNum::canonicalize(4, &[q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(z, CycNum::from_int(4, -1));
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let z = CycNum::from_int_coeffs(5, &[1, 1, 1, 1, 1]);
        assert!(z.is_zero());
    }

    #[test]
    fn golden_ratio_form() {
        let phi = CycNum::from_int_coeffs(5, &[0, 0, -1, -1]);
        // canonical basis has degree 4, so ζ^2 and ζ^3 are basis elements
        assert_eq!(int_vec(&phi), vec![q(0, 1), q(0, 1), q(-1, 1), q(-1, 1)]);
        // φ² = φ + 1
        let lhs = phi.mul(&phi);
        let rhs = phi.add(&CycNum::one(5));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conj_zeta8() {
        assert_eq!(CycNum::zeta(8).conj(), CycNum::zeta_pow(8, 7));
    }

    #[test]
    fn sqrt2_squared() {
        let s = CycNum::zeta(8).add(&CycNum::zeta_pow(8, 7));
        assert_eq!(s.mul(&s), CycNum::from_int(8, 2));
    }

    #[test]
    fn inverse_of_root_of_unity() {
        for n in [3u32, 5, 8, 12, 16] {
            let z = CycNum::zeta(n);
            assert_eq!(z.inv().unwrap(), CycNum::zeta_pow(n, n as i64 - 1));
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(CycNum::zero(7).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_general() {
        let a = CycNum::canonicalize(12, &[q(1, 2), q(-3, 1), q(0, 1), q(2, 7)]);
        let ai = a.inv().unwrap();
        assert!(a.mul(&ai).is_one());
    }

    #[test]
    fn embed_examples() {
        let m1 = CycNum::from_int(2, -1).embed(4).unwrap();
        assert_eq!(m1, CycNum::from_int(4, -1));
        let z3 = CycNum::zeta(3).embed(6).unwrap();
        assert_eq!(z3, CycNum::zeta_pow(6, 2));
        // ζ_6^2 = ζ_6 - 1 in the canonical basis of Q(ζ_6)
        assert_eq!(z3, CycNum::from_int_coeffs(6, &[-1, 1]));
        assert!(CycNum::zero(5).embed(15).unwrap().is_zero());
        assert!(matches!(
            CycNum::zeta(4).embed(6),
            Err(Error::ConductorMismatch { from: 4, to: 6 })
        ));
    }

    #[test]
    fn rational_denominators_normalize() {
        let a = CycNum::canonicalize(3, &[q(1, 2), q(1, 2)]);
        let b = CycNum::canonicalize(3, &[q(1, 2), q(-1, 2)]);
        assert_eq!(a.add(&b), CycNum::one(3));
        assert_eq!(a.den, BigInt::from(2));
    }

    #[test]
    fn pow_root_of_unity() {
        assert!(CycNum::zeta(16).pow(16).is_one());
        assert!(!CycNum::zeta(16).pow(8).is_one());
    }

    #[test]
    fn dot_matches_naive() {
        let a = CycNum::from_int_coeffs(9, &[1, 2, 0, -1]);
        let b = CycNum::canonicalize(9, &[q(1, 3), q(0, 1), q(5, 1)]);
        let c = CycNum::zeta_pow(9, 7);
        let naive = a.mul(&b).add(&c.mul(&a)).add(&b.mul(&c));
        let fast = CycNum::dot(9, [(&a, &b), (&c, &a), (&b, &c)]);
        assert_eq!(naive, fast);
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        (1u32..=24).prop_flat_map(|n| {
            proptest::collection::vec((-6i64..=6, 1i64..=4), n as usize)
                .prop_map(move |cs| {
                    let raw: Vec<BigRational> = cs.iter().map(|&(a, b)| q(a, b)).collect();
                    CycNum::canonicalize(n, &raw)
                })
        })
    }

    fn arb_pair() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
        (1u32..=24).prop_flat_map(|n| {
            let one = proptest::collection::vec((-5i64..=5, 1i64..=3), n as usize);
            (one.clone(), one.clone(), one).prop_map(move |(a, b, c)| {
                let mk = |v: Vec<(i64, i64)>| {
                    let raw: Vec<BigRational> = v.iter().map(|&(x, y)| q(x, y)).collect();
                    CycNum::canonicalize(n, &raw)
                };
                (mk(a), mk(b), mk(c))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conj_is_involution(a in arb_cyc()) {
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn ring_laws((a, b, c) in arb_pair()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.conj().mul(&b.conj()), a.mul(&b).conj());
            prop_assert_eq!(a.conj().add(&b.conj()), a.add(&b).conj());
        }

        #[test]
        fn inverse_roundtrip(a in arb_cyc()) {
            prop_assume!(!a.is_zero());
            let ai = a.inv().unwrap();
            prop_assert!(a.mul(&ai).is_one());
            prop_assert_eq!(ai.conj(), a.conj().inv().unwrap());
        }

        #[test]
        fn canonical_form_is_congruence((a, b, _c) in arb_pair(), shift in 0usize..4) {
            // adding a multiple of the vanishing relation Σ ζ^{k·N/p} (over a raw,
            // non-canonical representation) must not change the canonical value
            let n = a.conductor() as usize;
            let mut raw = a.coeffs();
            raw.resize(n, BigRational::zero());
            let p = (2..=n).find(|p| n % p == 0);
            if let Some(p) = p {
                let step = n / p;
                for k in 0..p {
                    let idx = (k * step + shift) % n;
                    raw[idx] += BigRational::one();
                }
            }
            let a2 = CycNum::canonicalize(a.conductor(), &raw);
            if n > 1 {
                prop_assert_eq!(&a2, &a);
            }
            prop_assert_eq!(a2.mul(&b), a.mul(&b));
        }

        #[test]
        fn embed_is_ring_hom((a, b, _c) in arb_pair(), k in 1u32..4) {
            let m = a.conductor() * k;
            let ea = a.embed(m).unwrap();
            let eb = b.embed(m).unwrap();
            prop_assert_eq!(a.mul(&b).embed(m).unwrap(), ea.mul(&eb));
            prop_assert_eq!(a.conj().embed(m).unwrap(), ea.conj());
        }
    }
}
