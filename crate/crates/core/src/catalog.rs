//! Built-in example categories.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::cyclo::CycNum;
use crate::doubles::{drinfeld_double, AbelianGroup};
use crate::error::{Error, Result};
use crate::fusion::{CategoryData, FusionRules, PremodularData};
use crate::structure::deligne_product;

pub const KEYS: [&str; 11] = [
    "vec",
    "semion",
    "fib",
    "ising",
    "rep-z2-sym",
    "toric",
    "dz3",
    "dz4",
    "dz5",
    "dz9",
    "fib-x-ising",
];

/// Known properties of an entry. Tests re-derive each of them.
#[derive(Clone, Debug)]
pub struct Expected {
    pub modular: bool,
    /// Number of prime factors; `None` when not modular.
    pub prime_factors: Option<usize>,
    pub dim: CycNum,
    pub center_size: usize,
    pub subcat_count: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub data: PremodularData,
    pub expected: Expected,
}

pub fn keys() -> &'static [&'static str] {
    &KEYS
}

fn golden(conductor: u32) -> CycNum {
    // -ζ5² - ζ5³
    CycNum::from_int_coeffs(5, &[0, 0, -1, -1]).embed(conductor).unwrap()
}

fn z2_fusion() -> FusionRules {
    FusionRules::from_entries(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)]).unwrap()
}

fn vect() -> CategoryData {
    CategoryData {
        name: "vec".into(),
        conductor: 1,
        labels: vec!["1".into()],
        unit: 0,
        dual: vec![0],
        fusion: FusionRules::from_entries(1, [(0, 0, 0, 1)]).unwrap(),
        dims: vec![CycNum::one(1)],
        twists: vec![CycNum::one(1)],
    }
}

fn semion() -> CategoryData {
    CategoryData {
        name: "semion".into(),
        conductor: 4,
        labels: vec!["1".into(), "s".into()],
        unit: 0,
        dual: vec![0, 1],
        fusion: z2_fusion(),
        dims: vec![CycNum::one(4); 2],
        twists: vec![CycNum::one(4), CycNum::zeta(4)],
    }
}

fn rep_z2_sym() -> CategoryData {
    CategoryData {
        name: "rep-z2-sym".into(),
        conductor: 2,
        labels: vec!["1".into(), "g".into()],
        unit: 0,
        dual: vec![0, 1],
        fusion: z2_fusion(),
        dims: vec![CycNum::one(2); 2],
        twists: vec![CycNum::one(2); 2],
    }
}

fn fib() -> CategoryData {
    CategoryData {
        name: "fib".into(),
        conductor: 5,
        labels: vec!["1".into(), "τ".into()],
        unit: 0,
        dual: vec![0, 1],
        fusion: FusionRules::from_entries(
            2,
            [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)],
        )
        .unwrap(),
        dims: vec![CycNum::one(5), golden(5)],
        twists: vec![CycNum::one(5), CycNum::zeta_pow(5, 2)],
    }
}

fn ising() -> CategoryData {
    let (one, eps, sigma) = (0, 1, 2);
    let entries = [
        (one, one, one, 1),
        (one, eps, eps, 1),
        (eps, one, eps, 1),
        (one, sigma, sigma, 1),
        (sigma, one, sigma, 1),
        (eps, eps, one, 1),
        (eps, sigma, sigma, 1),
        (sigma, eps, sigma, 1),
        (sigma, sigma, one, 1),
        (sigma, sigma, eps, 1),
    ];
    CategoryData {
        name: "ising".into(),
        conductor: 16,
        labels: vec!["1".into(), "ε".into(), "σ".into()],
        unit: one,
        dual: vec![0, 1, 2],
        fusion: FusionRules::from_entries(3, entries).unwrap(),
        // √2 = ζ8 + ζ8⁷
        dims: vec![
            CycNum::one(16),
            CycNum::one(16),
            CycNum::zeta_pow(16, 2).add(&CycNum::zeta_pow(16, 14)),
        ],
        twists: vec![CycNum::one(16), CycNum::from_int(16, -1), CycNum::zeta(16)],
    }
}

fn double(key: &str, n: u32) -> Result<PremodularData> {
    Ok(drinfeld_double(&AbelianGroup::cyclic(n)?)?.with_name(key))
}

fn build(key: &str) -> Result<PremodularData> {
    match key {
        "vec" => PremodularData::new(vect()),
        "semion" => PremodularData::new(semion()),
        "fib" => PremodularData::new(fib()),
        "ising" => PremodularData::new(ising()),
        "rep-z2-sym" => PremodularData::new(rep_z2_sym()),
        "toric" => double(key, 2),
        "dz3" => double(key, 3),
        "dz4" => double(key, 4),
        "dz5" => double(key, 5),
        "dz9" => double(key, 9),
        "fib-x-ising" => Ok(deligne_product(&get("fib")?, &get("ising")?)?.with_name(key)),
        other => Err(Error::UnknownKey(other.to_string())),
    }
}

fn cache() -> &'static Mutex<HashMap<String, PremodularData>> {
    static CACHE: OnceLock<Mutex<HashMap<String, PremodularData>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Validated data for a catalog key.
pub fn get(key: &str) -> Result<PremodularData> {
    if let Some(d) = cache().lock().unwrap().get(key) {
        return Ok(d.clone());
    }
    let d = build(key)?;
    cache().lock().unwrap().insert(key.to_string(), d.clone());
    Ok(d)
}

fn expected(key: &str) -> Expected {
    let int = |n: i64| CycNum::from_int(1, n);
    // dim fib = 1 + φ² = φ + 2
    let fib_dim = golden(5).add(&CycNum::from_int(5, 2));
    let (modular, prime_factors, dim, center_size, subcat_count) = match key {
        "vec" => (true, Some(0), int(1), 1, 1),
        "semion" => (true, Some(1), int(2), 1, 2),
        "fib" => (true, Some(1), fib_dim, 1, 2),
        "ising" => (true, Some(1), int(4), 1, 3),
        "rep-z2-sym" => (false, None, int(2), 2, 2),
        "toric" => (true, Some(1), int(4), 1, 5),
        "dz3" => (true, Some(2), int(9), 1, 6),
        "dz4" => (true, Some(1), int(16), 1, 15),
        "dz5" => (true, Some(2), int(25), 1, 8),
        "dz9" => (true, Some(2), int(81), 1, 23),
        "fib-x-ising" => (true, Some(2), fib_dim.scale(&num_rational::BigRational::from_integer(4.into())), 1, 6),
        _ => unreachable!("unknown catalog key"),
    };
    Expected { modular, prime_factors, dim, center_size, subcat_count }
}

pub fn entry(key: &str) -> Result<CatalogEntry> {
    let k = KEYS
        .iter()
        .copied()
        .find(|k| *k == key)
        .ok_or_else(|| Error::UnknownKey(key.to_string()))?;
    Ok(CatalogEntry { key: k, data: get(k)?, expected: expected(k) })
}

pub fn entries() -> Result<Vec<CatalogEntry>> {
    KEYS.iter().map(|k| entry(k)).collect()
}
