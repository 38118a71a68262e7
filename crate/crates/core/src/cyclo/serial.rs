//! Text form of cyclotomic numbers: an array of `"p/q"` (or `"p"`) strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CycNum;
use crate::error::{Error, Result};

/// Lowest terms, positive denominator, denominator omitted when 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

impl CycNum {
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(format_rational).collect()
    }

    /// Parses a coefficient array. Arrays shorter or longer than `φ(N)` are
    /// read as raw exponent coefficients and canonicalized.
    pub fn from_strings(conductor: u32, items: &[String]) -> Result<CycNum> {
        if conductor == 0 {
            return Err(Error::Malformed("conductor must be positive".into()));
        }
        let raw = items
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycNum::canonicalize(conductor, &raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&parse_rational(" 7 ").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn cycnum_text_roundtrip() {
        let z = CycNum::from_int_coeffs(5, &[0, 0, -1, -1]);
        let s = z.to_strings();
        assert_eq!(s, vec!["0", "0", "-1", "-1"]);
        assert_eq!(CycNum::from_strings(5, &s).unwrap(), z);
    }
}
