//! Tensor subcategories as fusion- and dual-closed label subsets, and the
//! centralizer calculus on them.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::fusion::{dim_category, CategoryData, FusionRules, PremodularData};
use crate::report::Report;

/// A closed subset of the simple objects of one category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubCat {
    parent: u64,
    members: Vec<usize>,
}

impl SubCat {
    /// Checks closure under the unit, duals and fusion.
    pub fn from_members(data: &PremodularData, members: &[usize]) -> Result<SubCat> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= data.rank()) {
            return Err(Error::IndexOutOfRange { index: bad, rank: data.rank() });
        }
        let members: Vec<usize> = set.into_iter().collect();
        if let Some(problem) = closure_defect(data, &members) {
            return Err(Error::InvalidSubcat(problem));
        }
        Ok(SubCat { parent: data.id(), members })
    }

    pub fn trivial(data: &PremodularData) -> SubCat {
        SubCat { parent: data.id(), members: vec![data.unit()] }
    }

    pub fn whole(data: &PremodularData) -> SubCat {
        SubCat { parent: data.id(), members: (0..data.rank()).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &SubCat) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Intersections of closed subsets are closed.
    pub fn intersect(&self, other: &SubCat) -> SubCat {
        assert_eq!(self.parent, other.parent, "intersecting subcategories of different parents");
        SubCat {
            parent: self.parent,
            members: self.members.iter().copied().filter(|&x| other.contains(x)).collect(),
        }
    }

    pub fn labels(&self, data: &PremodularData) -> Vec<String> {
        self.members.iter().map(|&x| data.label(x).to_string()).collect()
    }

    /// `{a, b, c}` with label names.
    pub fn display(&self, data: &PremodularData) -> String {
        format!("{{{}}}", self.labels(data).join(", "))
    }

    fn check_parent(&self, data: &PremodularData) -> Result<()> {
        if self.parent != data.id() {
            return Err(Error::InvalidSubcat("subcategory belongs to another category".into()));
        }
        Ok(())
    }
}

fn closure_defect(data: &PremodularData, members: &[usize]) -> Option<String> {
    let inside = |x: usize| members.binary_search(&x).is_ok();
    if !inside(data.unit()) {
        return Some("unit missing".into());
    }
    for &x in members {
        if !inside(data.dual(x)) {
            return Some(format!("dual of {} missing", data.label(x)));
        }
        for &y in members {
            for &(z, _) in data.fusion().product(x, y) {
                if !inside(z) {
                    return Some(format!(
                        "{} appears in {} ⊗ {} but is missing",
                        data.label(z),
                        data.label(x),
                        data.label(y)
                    ));
                }
            }
        }
    }
    None
}

/// Smallest closed subset containing the seeds.
pub fn generated(data: &PremodularData, seeds: &[usize]) -> Result<SubCat> {
    let r = data.rank();
    if let Some(&bad) = seeds.iter().find(|&&x| x >= r) {
        return Err(Error::IndexOutOfRange { index: bad, rank: r });
    }
    let mut inside = vec![false; r];
    let mut members = Vec::new();
    let mut queue = Vec::new();
    let add = |x: usize, inside: &mut Vec<bool>, queue: &mut Vec<usize>| {
        if !inside[x] {
            inside[x] = true;
            queue.push(x);
        }
    };
    add(data.unit(), &mut inside, &mut queue);
    for &s in seeds {
        add(s, &mut inside, &mut queue);
    }
    while let Some(x) = queue.pop() {
        members.push(x);
        add(data.dual(x), &mut inside, &mut queue);
        // products with everything already processed, including x itself
        for i in 0..members.len() {
            let y = members[i];
            for &(z, _) in data.fusion().product(x, y) {
                add(z, &mut inside, &mut queue);
            }
        }
    }
    members.sort_unstable();
    Ok(SubCat { parent: data.id(), members })
}

/// Join of two subcategories: the closure of their union.
pub fn join(data: &PremodularData, a: &SubCat, b: &SubCat) -> Result<SubCat> {
    if a.parent != b.parent {
        return Err(Error::ParentMismatch);
    }
    a.check_parent(data)?;
    let seeds: Vec<usize> = a.members.iter().chain(&b.members).copied().collect();
    generated(data, &seeds)
}

/// Objects with trivial monodromy against all of `k`:
/// `x ∈ C(K)` iff `S(x,y) = d(x) d(y)` for every `y ∈ K`.
pub fn centralizer(data: &PremodularData, k: &SubCat) -> Result<SubCat> {
    k.check_parent(data)?;
    let members: Vec<usize> = (0..data.rank())
        .filter(|&x| k.members.iter().all(|&y| data.is_transparent(x, y)))
        .collect();
    if let Some(problem) = closure_defect(data, &members) {
        return Err(Error::InternalInconsistency(format!(
            "centralizer of {} is not closed: {problem}",
            k.display(data)
        )));
    }
    Ok(SubCat { parent: data.id(), members })
}

/// The Müger center, `Z₂(C) = C_C(C)`.
pub fn center(data: &PremodularData) -> SubCat {
    centralizer(data, &SubCat::whole(data)).expect("whole category is a valid subcategory")
}

/// `Z₂(K) = K ∩ C_C(K)`, computed inside the ambient category.
pub fn relative_center(data: &PremodularData, k: &SubCat) -> Result<SubCat> {
    Ok(k.intersect(&centralizer(data, k)?))
}

/// `dim K = Σ_{x ∈ K} d(x)²`.
pub fn dim_subcat(data: &PremodularData, k: &SubCat) -> CycNum {
    let dims: Vec<&CycNum> = k.members.iter().map(|&x| data.dim(x)).collect();
    CycNum::dot(data.conductor(), dims.iter().copied().zip(dims.iter().copied()))
}

/// The subcategory as a standalone category, re-indexed in member order.
pub fn restrict(data: &PremodularData, k: &SubCat) -> Result<PremodularData> {
    k.check_parent(data)?;
    if let Some(problem) = closure_defect(data, &k.members) {
        return Err(Error::InvalidSubcat(problem));
    }
    if k.len() == data.rank() {
        return Ok(data.clone());
    }
    let mut index = vec![usize::MAX; data.rank()];
    for (i, &x) in k.members.iter().enumerate() {
        index[x] = i;
    }
    let m = &k.members;
    let fusion = FusionRules::from_fn(m.len(), |a, b, c| data.n(m[a], m[b], m[c]));
    let raw = CategoryData {
        name: format!("{}[{}]", data.name(), k.labels(data).join(",")),
        conductor: data.conductor(),
        labels: k.labels(data),
        unit: index[data.unit()],
        dual: m.iter().map(|&x| index[data.dual(x)]).collect(),
        fusion,
        dims: m.iter().map(|&x| data.dim(x).clone()).collect(),
        twists: m.iter().map(|&x| data.twist(x).clone()).collect(),
    };
    PremodularData::new(raw)
}

/// Both modularity criteria, evaluated independently.
#[derive(Clone, Debug)]
pub struct ModularityVerdict {
    pub modular: bool,
    /// Center of the category (for a subcategory: `K ∩ C_C(K)` in the parent).
    pub center: SubCat,
    pub det_s: CycNum,
    pub dim: CycNum,
}

/// Modularity by trivial center and by `det S ≠ 0`; the two must agree.
pub fn is_modular(data: &PremodularData) -> Result<ModularityVerdict> {
    let dim = dim_category(data);
    if dim.is_zero() {
        return Err(Error::ZeroDimension);
    }
    let center = center(data);
    let det_s = data.s_matrix().det_exact()?;
    let by_center = center.is_trivial();
    let by_det = !det_s.is_zero();
    if by_center != by_det {
        return Err(Error::InternalInconsistency(format!(
            "{}: center {} but det S = {}",
            data.name(),
            center.display(data),
            det_s
        )));
    }
    Ok(ModularityVerdict { modular: by_det, center, det_s, dim })
}

/// Modularity of `k` viewed as a premodular category in its own right.
pub fn is_modular_sub(data: &PremodularData, k: &SubCat) -> Result<ModularityVerdict> {
    let sub = restrict(data, k)?;
    let v = is_modular(&sub)?;
    let center = SubCat {
        parent: data.id(),
        members: v.center.members.iter().map(|&i| k.members[i]).collect(),
    };
    Ok(ModularityVerdict { center, ..v })
}

/// `Σ_{y ∈ K} d(y) S(x,y)`.
pub fn chi_sum(data: &PremodularData, k: &SubCat, x: usize) -> Result<CycNum> {
    k.check_parent(data)?;
    if x >= data.rank() {
        return Err(Error::IndexOutOfRange { index: x, rank: data.rank() });
    }
    Ok(CycNum::dot(
        data.conductor(),
        k.members.iter().map(|&y| (data.dim(y), data.s(x, y))),
    ))
}

#[derive(Clone, Debug)]
pub struct CentralityCheck {
    /// `S(x,y) = d(x) d(y)` for all `y`.
    pub transparent: bool,
    /// `Σ_y S(x,y) d(y)`.
    pub weighted_sum: CycNum,
}

impl CentralityCheck {
    pub fn consistent(&self) -> bool {
        self.transparent == !self.weighted_sum.is_zero()
    }
}

/// Evaluates the two characterizations of a central object separately.
pub fn centrality_equivalence(data: &PremodularData, x: usize) -> Result<CentralityCheck> {
    if x >= data.rank() {
        return Err(Error::IndexOutOfRange { index: x, rank: data.rank() });
    }
    if dim_category(data).is_zero() {
        return Err(Error::ZeroDimension);
    }
    let transparent = (0..data.rank()).all(|y| data.is_transparent(x, y));
    let weighted_sum = chi_sum(data, &SubCat::whole(data), x)?;
    Ok(CentralityCheck { transparent, weighted_sum })
}

/// Every subcategory: singly generated ones closed under joins, sorted by
/// size then members.
pub fn enumerate_subcats(data: &PremodularData) -> Vec<SubCat> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let singles: Vec<SubCat> = (0..data.rank())
        .into_par_iter()
        .map(|x| generated(data, &[x]).expect("index in range"))
        .collect();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for s in singles {
        if found.insert(s.members.clone()) {
            frontier.push(s.members);
        }
    }
    // joining new elements against everything found so far reaches the fixpoint
    while !frontier.is_empty() {
        let known: Vec<Vec<usize>> = found.iter().cloned().collect();
        let joins: Vec<Vec<usize>> = frontier
            .par_iter()
            .flat_map_iter(|a| {
                known.iter().filter_map(move |b| {
                    if a == b {
                        return None;
                    }
                    let seeds: Vec<usize> = a.iter().chain(b).copied().collect();
                    Some(generated(data, &seeds).expect("index in range").members)
                })
            })
            .collect();
        frontier.clear();
        for j in joins {
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut all: Vec<SubCat> = found
        .into_iter()
        .map(|members| SubCat { parent: data.id(), members })
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    all
}

/// Double centralizer checks over the whole lattice of a modular category:
///
/// * `double-centralizer`: `C(C(K)) = K`
/// * `dimension-product`: `dim K · dim C(K) = dim C`
/// * `center-of-centralizer`: `Z₂(C(K)) = Z₂(K)`
/// * `modular-centralizer`: `K` modular implies `C(K)` modular
/// * `symmetric-center`: `K ⊆ C(K)` implies `Z₂(C(K)) = K`
pub fn verify_dct(data: &PremodularData) -> Result<Report> {
    if !is_modular(data)?.modular {
        return Err(Error::NotModular);
    }
    let dim = dim_category(data);
    let lattice = enumerate_subcats(data);
    let per_k: Vec<Result<Report>> = lattice
        .par_iter()
        .map(|k| {
            let mut report = Report::new();
            let name = format!("{} K={}", data.name(), k.display(data));
            let kc = centralizer(data, k)?;
            let kcc = centralizer(data, &kc)?;
            report.push("double-centralizer", &name, kcc == *k);
            let prod = dim_subcat(data, k).mul(&dim_subcat(data, &kc));
            report.push("dimension-product", &name, prod == dim);
            let z_k = k.intersect(&kc);
            let z_kc = kc.intersect(&kcc);
            report.push("center-of-centralizer", &name, z_k == z_kc);
            if is_modular_sub(data, k)?.modular {
                report.push("modular-centralizer", &name, is_modular_sub(data, &kc)?.modular);
            }
            if k.is_subset(&kc) {
                report.push("symmetric-center", &name, z_kc == *k);
            }
            Ok(report)
        })
        .collect();
    let mut report = Report::new();
    for r in per_k {
        report.extend(r?);
    }
    Ok(report)
}

/// Lattice laws of the centralizer: `C(K₁ ∨ K₂) = C(K₁) ∩ C(K₂)`,
/// antitonicity, and `K ⊆ C(C(K))`.
pub fn verify_centralizer_lattice(data: &PremodularData) -> Result<Report> {
    let lattice = enumerate_subcats(data);
    let cents: Vec<SubCat> = lattice
        .iter()
        .map(|k| centralizer(data, k))
        .collect::<Result<_>>()?;
    let mut join_fails = Vec::new();
    let mut anti_fails = Vec::new();
    let mut pairs = 0;
    for (i, a) in lattice.iter().enumerate() {
        for (j, b) in lattice.iter().enumerate() {
            pairs += 1;
            let inst = || format!("{} ∨ {}", a.display(data), b.display(data));
            let jn = join(data, a, b)?;
            if centralizer(data, &jn)? != cents[i].intersect(&cents[j]) {
                join_fails.push(inst());
            }
            if a.is_subset(b) && !cents[j].is_subset(&cents[i]) {
                anti_fails.push(inst());
            }
        }
    }
    let mut report = Report::new();
    report.tally("centralizer-of-join", data.name(), pairs, join_fails);
    report.tally("centralizer-antitone", data.name(), pairs, anti_fails);
    let mut fails = Vec::new();
    for (k, c) in lattice.iter().zip(&cents) {
        if !k.is_subset(&centralizer(data, c)?) {
            fails.push(k.display(data));
        }
    }
    report.tally("centralizer-extensive", data.name(), lattice.len(), fails);
    Ok(report)
}
