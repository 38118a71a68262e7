//! Premodular categories as numerical data: fusion rules, duals, quantum
//! dimensions and twists, with the S-matrix derived from them.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::cyclo::{real_sign, CycMatrix, CycNum, RealSign};
use crate::error::{Error, Result};
use crate::report::Report;

/// Fusion multiplicities `N_{xy}^z`, dense with a per-pair sparse index.
#[derive(Clone, PartialEq, Eq)]
pub struct FusionRules {
    rank: usize,
    dense: Vec<u32>,
    products: Vec<Vec<(usize, u32)>>,
}

impl FusionRules {
    pub fn from_entries<I>(rank: usize, entries: I) -> Result<FusionRules>
    where
        I: IntoIterator<Item = (usize, usize, usize, u32)>,
    {
        let mut dense = vec![0u32; rank * rank * rank];
        for (x, y, z, n) in entries {
            for i in [x, y, z] {
                if i >= rank {
                    return Err(Error::IndexOutOfRange { index: i, rank });
                }
            }
            dense[(x * rank + y) * rank + z] = n;
        }
        Ok(FusionRules::from_dense(rank, dense))
    }

    pub fn from_fn(rank: usize, f: impl Fn(usize, usize, usize) -> u32) -> FusionRules {
        let mut dense = Vec::with_capacity(rank * rank * rank);
        for x in 0..rank {
            for y in 0..rank {
                for z in 0..rank {
                    dense.push(f(x, y, z));
                }
            }
        }
        FusionRules::from_dense(rank, dense)
    }

    fn from_dense(rank: usize, dense: Vec<u32>) -> FusionRules {
        let products = (0..rank * rank)
            .map(|xy| {
                (0..rank)
                    .filter_map(|z| {
                        let n = dense[xy * rank + z];
                        (n > 0).then_some((z, n))
                    })
                    .collect()
            })
            .collect();
        FusionRules { rank, dense, products }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        self.dense[(x * self.rank + y) * self.rank + z]
    }

    /// Nonzero `(z, N_{xy}^z)` in increasing `z`.
    pub fn product(&self, x: usize, y: usize) -> &[(usize, u32)] {
        &self.products[x * self.rank + y]
    }

    /// All nonzero entries in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        (0..self.rank * self.rank).flat_map(move |xy| {
            self.products[xy]
                .iter()
                .map(move |&(z, n)| (xy / self.rank, xy % self.rank, z, n))
        })
    }

    /// Multiplicities of `(x ⊗ y) ⊗ z`.
    fn triple_left(&self, x: usize, y: usize, z: usize) -> Vec<(usize, u64)> {
        let mut acc: HashMap<usize, u64> = HashMap::new();
        for &(w, n) in self.product(x, y) {
            for &(u, m) in self.product(w, z) {
                *acc.entry(u).or_default() += n as u64 * m as u64;
            }
        }
        let mut v: Vec<_> = acc.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Multiplicities of `x ⊗ (y ⊗ z)`.
    fn triple_right(&self, x: usize, y: usize, z: usize) -> Vec<(usize, u64)> {
        let mut acc: HashMap<usize, u64> = HashMap::new();
        for &(w, n) in self.product(y, z) {
            for &(u, m) in self.product(x, w) {
                *acc.entry(u).or_default() += n as u64 * m as u64;
            }
        }
        let mut v: Vec<_> = acc.into_iter().collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Debug for FusionRules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionRules")
            .field("rank", &self.rank)
            .field("nonzero", &self.entries().count())
            .finish()
    }
}

/// Unvalidated category data as read from a file or assembled in code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryData {
    pub name: String,
    pub conductor: u32,
    pub labels: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub fusion: FusionRules,
    pub dims: Vec<CycNum>,
    pub twists: Vec<CycNum>,
}

impl CategoryData {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub at: String,
}

/// Violated data axioms; empty iff the data is a valid premodular category.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, invariant: &str) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }

    pub fn find(&self, invariant: &str, at: &str) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant && v.at == at)
    }

    fn add(&mut self, invariant: &'static str, at: impl Into<String>) {
        self.violations.push(Violation { invariant, at: at.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{} at {}", v.invariant, v.at)?;
        }
        Ok(())
    }
}

fn tuple(labels: &[String], idx: &[usize]) -> String {
    let parts: Vec<&str> = idx.iter().map(|&i| labels[i].as_str()).collect();
    format!("({})", parts.join(","))
}

fn structure_check(data: &CategoryData, report: &mut ValidationReport) {
    let r = data.rank();
    if r == 0 {
        report.add("structure", "rank is zero");
    }
    if data.conductor == 0 {
        report.add("structure", "conductor is zero");
    }
    if data.dual.len() != r {
        report.add("structure", format!("dual has length {}, rank is {r}", data.dual.len()));
    }
    if data.dims.len() != r {
        report.add("structure", format!("dims has length {}, rank is {r}", data.dims.len()));
    }
    if data.twists.len() != r {
        report.add("structure", format!("twists has length {}, rank is {r}", data.twists.len()));
    }
    if data.fusion.rank() != r {
        report.add("structure", format!("fusion has rank {}, rank is {r}", data.fusion.rank()));
    }
    if data.unit >= r.max(1) {
        report.add("structure", format!("unit index {} out of range", data.unit));
    }
    if let Some(&bad) = data.dual.iter().find(|&&d| d >= r) {
        report.add("structure", format!("dual index {bad} out of range"));
    }
    for (i, v) in data.dims.iter().chain(&data.twists).enumerate() {
        if v.conductor() != data.conductor {
            report.add("structure", format!("value #{i} has conductor {}", v.conductor()));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for l in &data.labels {
        if !seen.insert(l) {
            report.add("structure", format!("duplicate label {l:?}"));
        }
    }
}

/// Checks every data-level axiom of a premodular category exactly.
pub fn validate(data: &CategoryData) -> ValidationReport {
    let mut report = ValidationReport::default();
    structure_check(data, &mut report);
    if !report.is_valid() {
        return report;
    }
    let r = data.rank();
    let l = &data.labels;
    let n = &data.fusion;
    let u = data.unit;

    for x in 0..r {
        for z in 0..r {
            let delta = (x == z) as u32;
            if n.get(u, x, z) != delta || n.get(x, u, z) != delta {
                report.add("unit law", tuple(l, &[x, z]));
            }
        }
    }
    for x in 0..r {
        for y in x + 1..r {
            if (0..r).any(|z| n.get(x, y, z) != n.get(y, x, z)) {
                report.add("commutativity", tuple(l, &[x, y]));
            }
        }
    }
    let assoc: Vec<String> = (0..r)
        .into_par_iter()
        .flat_map_iter(|x| {
            (0..r).flat_map(move |y| {
                (0..r).filter_map(move |z| {
                    (n.triple_left(x, y, z) != n.triple_right(x, y, z))
                        .then(|| tuple(l, &[x, y, z]))
                })
            })
        })
        .collect();
    for at in assoc {
        report.add("associativity", at);
    }
    for x in 0..r {
        if data.dual[data.dual[x]] != x {
            report.add("dual involution", tuple(l, &[x]));
        }
    }
    if data.dual[u] != u {
        report.add("dual unit", tuple(l, &[u]));
    }
    for x in 0..r {
        for y in 0..r {
            if n.get(x, y, u) != (y == data.dual[x]) as u32 {
                report.add("duality", tuple(l, &[x, y]));
            }
        }
    }

    let d = &data.dims;
    if !d[u].is_one() {
        report.add("unit dimension", tuple(l, &[u]));
    }
    for x in 0..r {
        if d[x] != d[data.dual[x]] {
            report.add("dual dimension", tuple(l, &[x]));
        }
    }
    let hom: Vec<String> = (0..r)
        .into_par_iter()
        .flat_map_iter(|x| {
            (0..r).filter_map(move |y| {
                let lhs = d[x].mul(&d[y]);
                let mut rhs = CycNum::zero(data.conductor);
                for &(z, m) in n.product(x, y) {
                    rhs = rhs.add(&d[z].mul(&CycNum::from_int(data.conductor, m as i64)));
                }
                (lhs != rhs).then(|| tuple(l, &[x, y]))
            })
        })
        .collect();
    for at in hom {
        report.add("dimension homomorphism", at);
    }

    let w = &data.twists;
    if !w[u].is_one() {
        report.add("unit twist", tuple(l, &[u]));
    }
    for x in 0..r {
        if w[x] != w[data.dual[x]] {
            report.add("dual twist", tuple(l, &[x]));
        }
        if !w[x].pow(data.conductor as u64).is_one() {
            report.add("twist root of unity", tuple(l, &[x]));
        }
    }

    if report.is_valid() {
        let s = s_formula(data);
        for x in 0..r {
            for y in x + 1..r {
                if s.get(x, y) != s.get(y, x) {
                    report.add("S symmetry", tuple(l, &[x, y]));
                }
            }
        }
    }
    report
}

/// `S(X,Y) = Σ_Z N_{XY}^Z ω_Z d(Z) / (ω_X ω_Y)`. Twists must be roots of
/// unity so that their inverses are their conjugates.
fn s_formula(data: &CategoryData) -> CycMatrix {
    let r = data.rank();
    let c = data.conductor;
    let inv_twist: Vec<CycNum> = data.twists.iter().map(CycNum::conj).collect();
    let weighted: Vec<CycNum> = data.twists.iter().zip(&data.dims).map(|(w, d)| w.mul(d)).collect();
    let rows: Vec<Vec<CycNum>> = (0..r)
        .into_par_iter()
        .map(|x| {
            (0..r)
                .map(|y| {
                    let mut acc = CycNum::zero(c);
                    for &(z, m) in data.fusion.product(x, y) {
                        let term = if m == 1 {
                            weighted[z].clone()
                        } else {
                            weighted[z].mul(&CycNum::from_int(c, m as i64))
                        };
                        acc = acc.add(&term);
                    }
                    acc.mul(&inv_twist[x]).mul(&inv_twist[y])
                })
                .collect()
        })
        .collect();
    CycMatrix::from_rows(c, rows)
}

/// The S-matrix of valid data.
pub fn compute_s(data: &CategoryData) -> Result<CycMatrix> {
    let report = validate(data);
    if !report.is_valid() {
        return Err(Error::InvalidData(report));
    }
    Ok(s_formula(data))
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Validated premodular data with its S-matrix.
///
/// Immutable after construction. Each construction gets a fresh identity used
/// to tie subcategories to their parent; clones share it.
#[derive(Clone)]
pub struct PremodularData {
    id: u64,
    data: CategoryData,
    s: CycMatrix,
    /// `transparent[x*r+y]` iff `S(x,y) = d(x) d(y)`.
    transparent: Vec<bool>,
}

impl PremodularData {
    pub fn new(data: CategoryData) -> Result<PremodularData> {
        let s = compute_s(&data)?;
        let r = data.rank();
        let transparent = (0..r * r)
            .into_par_iter()
            .map(|xy| {
                let (x, y) = (xy / r, xy % r);
                *s.get(x, y) == data.dims[x].mul(&data.dims[y])
            })
            .collect();
        let id = NEXT_ID.fetch_add(1, Ordering::Relaxed);
        Ok(PremodularData { id, data, s, transparent })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn raw(&self) -> &CategoryData {
        &self.data
    }

    pub fn into_raw(self) -> CategoryData {
        self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn conductor(&self) -> u32 {
        self.data.conductor
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.data.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.data
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn unit(&self) -> usize {
        self.data.unit
    }

    pub fn dual(&self, x: usize) -> usize {
        self.data.dual[x]
    }

    pub fn fusion(&self) -> &FusionRules {
        &self.data.fusion
    }

    pub fn n(&self, x: usize, y: usize, z: usize) -> u32 {
        self.data.fusion.get(x, y, z)
    }

    pub fn dims(&self) -> &[CycNum] {
        &self.data.dims
    }

    pub fn dim(&self, x: usize) -> &CycNum {
        &self.data.dims[x]
    }

    pub fn twists(&self) -> &[CycNum] {
        &self.data.twists
    }

    pub fn twist(&self, x: usize) -> &CycNum {
        &self.data.twists[x]
    }

    pub fn s_matrix(&self) -> &CycMatrix {
        &self.s
    }

    pub fn s(&self, x: usize, y: usize) -> &CycNum {
        self.s.get(x, y)
    }

    /// Trivial monodromy at data level: `S(x,y) = d(x) d(y)`.
    pub fn is_transparent(&self, x: usize, y: usize) -> bool {
        self.transparent[x * self.rank() + y]
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PremodularData {
        self.data.name = name.into();
        self
    }

    pub(crate) fn tuple(&self, idx: &[usize]) -> String {
        tuple(&self.data.labels, idx)
    }
}

impl fmt::Debug for PremodularData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PremodularData")
            .field("name", &self.data.name)
            .field("rank", &self.rank())
            .field("conductor", &self.conductor())
            .field("labels", &self.data.labels)
            .finish()
    }
}

impl PartialEq for PremodularData {
    /// Equal data, ignoring name and identity.
    fn eq(&self, other: &PremodularData) -> bool {
        let (a, b) = (&self.data, &other.data);
        a.conductor == b.conductor
            && a.labels == b.labels
            && a.unit == b.unit
            && a.dual == b.dual
            && a.fusion == b.fusion
            && a.dims == b.dims
            && a.twists == b.twists
    }
}

/// `dim C = Σ d(X)²`.
pub fn dim_category(data: &PremodularData) -> CycNum {
    CycNum::dot(data.conductor(), data.dims().iter().zip(data.dims()))
}

/// Permutation matrix of the duality `X ↦ X̄`.
pub fn charge_conjugation(data: &PremodularData) -> CycMatrix {
    let c = data.conductor();
    CycMatrix::from_fn(data.rank(), data.rank(), c, |x, y| {
        CycNum::from_int(c, (y == data.dual(x)) as i64)
    })
}

/// Whether every dimension is real and positive under the standard embedding.
pub fn is_unitary(data: &PremodularData) -> bool {
    data.dims()
        .iter()
        .all(|d| matches!(real_sign(d), Ok(RealSign::Positive)))
}

fn collect_failures<F>(r: usize, check: F) -> Vec<String>
where
    F: Fn(usize, usize, usize) -> Option<String> + Sync,
{
    (0..r)
        .into_par_iter()
        .flat_map_iter(|a| (0..r).flat_map(move |b| (0..r).map(move |c| (a, b, c))))
        .filter_map(|(a, b, c)| check(a, b, c))
        .collect()
}

/// Checks the S-matrix identities of a premodular category over all index
/// triples:
///
/// * `s-row-product`: `S(U,Y) S(X,Y) = d(Y) Σ_W N_{UX}^W S(W,Y)`
/// * `s-column-product`: `S(X,Y) S(X,Z) = d(X) Σ_W N_{YZ}^W S(X,W)`
/// * `s-square-center`: `Σ_X S(X,Y) S(X,Z) = dim C · Σ_{W central} N_{YZ}^W d(W)`
/// * `s-square-charge` (trivial center only): `S² = dim C · C`
/// * `s-conjugation` (unitary data only): `conj S(X,Y) = S(X,Ȳ) = S(X̄,Y)`
pub fn verify_smatrix_identities(data: &PremodularData) -> Report {
    let mut report = Report::new();
    let r = data.rank();
    let c = data.conductor();
    let s = data.s_matrix();
    let scope = data.name();

    let row_sum = |pairs: &[(usize, u32)], f: &dyn Fn(usize) -> CycNum| {
        let mut acc = CycNum::zero(c);
        for &(w, m) in pairs {
            let v = f(w);
            acc = if m == 1 { acc.add(&v) } else { acc.add(&v.mul(&CycNum::from_int(c, m as i64))) };
        }
        acc
    };

    let fails = collect_failures(r, |u, x, y| {
        let lhs = s.get(u, y).mul(s.get(x, y));
        let rhs = data.dim(y).mul(&row_sum(data.fusion().product(u, x), &|w| s.get(w, y).clone()));
        (lhs != rhs).then(|| data.tuple(&[u, x, y]))
    });
    report.tally("s-row-product", scope, r * r * r, fails);

    let fails = collect_failures(r, |x, y, z| {
        let lhs = s.get(x, y).mul(s.get(x, z));
        let rhs = data.dim(x).mul(&row_sum(data.fusion().product(y, z), &|w| s.get(x, w).clone()));
        (lhs != rhs).then(|| data.tuple(&[x, y, z]))
    });
    report.tally("s-column-product", scope, r * r * r, fails);

    let dim = dim_category(data);
    let center = crate::subcat::center(data);
    let in_center: Vec<bool> = (0..r).map(|x| center.contains(x)).collect();
    let square = s.matmul(s);
    let mut fails = Vec::new();
    for y in 0..r {
        for z in 0..r {
            let mut acc = CycNum::zero(c);
            for &(w, m) in data.fusion().product(y, z) {
                if in_center[w] {
                    acc = acc.add(&data.dim(w).mul(&CycNum::from_int(c, m as i64)));
                }
            }
            if *square.get(y, z) != dim.mul(&acc) {
                fails.push(data.tuple(&[y, z]));
            }
        }
    }
    report.tally("s-square-center", scope, r * r, fails);

    if center.len() == 1 {
        let expected = charge_conjugation(data).scale(&dim);
        let mut fails = Vec::new();
        for y in 0..r {
            for z in 0..r {
                if square.get(y, z) != expected.get(y, z) {
                    fails.push(data.tuple(&[y, z]));
                }
            }
        }
        report.tally("s-square-charge", scope, r * r, fails);
    }

    if is_unitary(data) {
        let mut fails = Vec::new();
        for x in 0..r {
            for y in 0..r {
                let cj = s.get(x, y).conj();
                if cj != *s.get(x, data.dual(y)) || cj != *s.get(data.dual(x), y) {
                    fails.push(data.tuple(&[x, y]));
                }
            }
        }
        report.tally("s-conjugation", scope, r * r, fails);
    }
    report
}
