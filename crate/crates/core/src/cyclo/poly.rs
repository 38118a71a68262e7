//! Integer polynomial helpers for cyclotomic polynomials.

use num_integer::Integer;

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    assert!(n >= 1, "totient of 0 is undefined");
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The `n`-th cyclotomic polynomial, coefficients from the constant term up.
///
/// Computed by exact division of `x^n - 1` by `Φ_d` for every proper divisor `d`.
/// Panics for `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial requires n >= 1");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = div_exact_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact division by a monic divisor. Panics if the remainder is nonzero.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quo = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quo[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
    quo
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..=120 {
            let p = cyclotomic_polynomial(n);
            assert_eq!(p.len() - 1, euler_phi(n), "n = {n}");
            assert_eq!(*p.last().unwrap(), 1);
        }
    }

    #[test]
    fn phi_105_has_a_two() {
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        let p = cyclotomic_polynomial(105);
        assert!(p.iter().any(|&c| c == -2));
    }

    #[test]
    #[should_panic]
    fn zero_rejected() {
        cyclotomic_polynomial(0);
    }
}
