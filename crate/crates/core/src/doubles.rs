//! Finite abelian groups, their characters, and the modular data of the
//! Drinfeld double `D(G)` for abelian `G`.

use std::fmt;

use rayon::prelude::*;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::fusion::{CategoryData, FusionRules, PremodularData};
use crate::report::Report;
use crate::structure::{deligne_product, equivalent};
use crate::subcat::{self, SubCat};

/// Default cap on the rank `|G|²` of doubles the classifiers will build.
pub const DEFAULT_RANK_BUDGET: usize = 256;

/// `Z/n₁ × … × Z/n_k`, elements as residue tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    /// Factors equal to 1 are dropped; 0 is rejected.
    pub fn new(factors: &[u32]) -> Result<AbelianGroup> {
        if factors.iter().any(|&n| n == 0) {
            return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
        }
        let factors: Vec<u32> = factors.iter().copied().filter(|&n| n > 1).collect();
        let order = factors.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n as u64));
        match order {
            Some(o) if o <= u32::MAX as u64 => Ok(AbelianGroup { factors }),
            _ => Err(Error::InvalidGroup("group order too large".into())),
        }
    }

    pub fn cyclic(n: u32) -> Result<AbelianGroup> {
        AbelianGroup::new(&[n])
    }

    pub fn trivial() -> AbelianGroup {
        AbelianGroup { factors: vec![] }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1, |acc, &n| crate::cyclo::lcm(acc, n))
    }

    /// Element with the given index in mixed radix, first factor most significant.
    pub fn element(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.factors.len()];
        for (i, &n) in self.factors.iter().enumerate().rev() {
            out[i] = (index % n as usize) as u32;
            index /= n as usize;
        }
        out
    }

    pub fn index(&self, element: &[u32]) -> usize {
        self.factors
            .iter()
            .zip(element)
            .fold(0, |acc, (&n, &a)| acc * n as usize + (a % n) as usize)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.factors.iter().zip(a.iter().zip(b)).map(|(&n, (&x, &y))| (x + y) % n).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        self.factors.iter().zip(a).map(|(&n, &x)| (n - x % n) % n).collect()
    }

    /// Exponent `e` with `⟨χ_b, g_a⟩ = ζ_E^e`, `E` the group exponent.
    pub fn pairing(&self, character: &[u32], element: &[u32]) -> u64 {
        let e = self.exponent() as u64;
        self.factors
            .iter()
            .zip(character.iter().zip(element))
            .map(|(&n, (&b, &a))| (e / n as u64) * a as u64 * b as u64)
            .sum::<u64>()
            % e
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join("×"))
    }
}

fn tuple_text(t: &[u32]) -> String {
    if t.is_empty() {
        return "0".into();
    }
    t.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(".")
}

/// Index of the simple object `(g, χ)` of `D(G)`.
pub fn double_index(group: &AbelianGroup, g: &[u32], chi: &[u32]) -> usize {
    group.index(g) * group.order() + group.index(chi)
}

/// `⟨σ,g⟩⟨χ,h⟩` for the objects `(g,χ)` and `(h,σ)` of `D(G)`.
pub fn double_s_entry(group: &AbelianGroup, x: usize, y: usize) -> CycNum {
    let o = group.order();
    let (g, chi) = (group.element(x / o), group.element(x % o));
    let (h, sigma) = (group.element(y / o), group.element(y % o));
    let e = group.pairing(&sigma, &g) + group.pairing(&chi, &h);
    CycNum::zeta_pow(group.exponent(), e as i64)
}

/// Modular data of `D(G)-mod` for abelian `G`: objects `G × Ĝ`, all of
/// dimension one, fusion by the group law, twist `ω_(g,χ) = ⟨χ,g⟩`.
pub fn drinfeld_double(group: &AbelianGroup) -> Result<PremodularData> {
    let o = group.order();
    let e = group.exponent();
    let rank = o * o;
    let split = |x: usize| (group.element(x / o), group.element(x % o));
    let labels = (0..rank)
        .map(|x| {
            let (g, c) = split(x);
            format!("{}|{}", tuple_text(&g), tuple_text(&c))
        })
        .collect();
    let dual = (0..rank)
        .map(|x| {
            let (g, c) = split(x);
            double_index(group, &group.neg(&g), &group.neg(&c))
        })
        .collect();
    let entries: Vec<(usize, usize, usize, u32)> = (0..rank)
        .flat_map(|x| (0..rank).map(move |y| (x, y)))
        .map(|(x, y)| {
            let (g, c) = split(x);
            let (h, s) = split(y);
            (x, y, double_index(group, &group.add(&g, &h), &group.add(&c, &s)), 1)
        })
        .collect();
    let twists = (0..rank)
        .map(|x| {
            let (g, c) = split(x);
            CycNum::zeta_pow(e, group.pairing(&c, &g) as i64)
        })
        .collect();
    let raw = CategoryData {
        name: format!("D({group})"),
        conductor: e,
        labels,
        unit: 0,
        dual,
        fusion: FusionRules::from_entries(rank, entries)?,
        dims: vec![CycNum::one(e); rank],
        twists,
    };
    let data = PremodularData::new(raw)?;
    let mismatch = (0..rank * rank)
        .into_par_iter()
        .find_any(|&xy| *data.s(xy / rank, xy % rank) != double_s_entry(group, xy / rank, xy % rank));
    if let Some(xy) = mismatch {
        return Err(Error::InternalInconsistency(format!(
            "S of D({group}) disagrees with the character pairing at {}",
            data.tuple(&[xy / rank, xy % rank])
        )));
    }
    if !subcat::center(&data).is_trivial() {
        return Err(Error::InternalInconsistency(format!("D({group}) has nontrivial center")));
    }
    Ok(data)
}

/// An isomorphism `α: G → Ĝ`, given by a residue matrix:
/// `α(a)_i = Σ_j M[i][j] a_j mod n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isom {
    group: AbelianGroup,
    matrix: Vec<Vec<u64>>,
}

impl Isom {
    /// Validates well-definedness, the homomorphism property and bijectivity
    /// by enumeration.
    pub fn new(group: &AbelianGroup, matrix: Vec<Vec<u64>>) -> Result<Isom> {
        let k = group.factors().len();
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidGroup("isomorphism matrix has wrong shape".into()));
        }
        let iso = Isom { group: group.clone(), matrix };
        // well defined: n_j e_j must map to zero
        for (j, &nj) in group.factors().iter().enumerate() {
            for (i, &ni) in group.factors().iter().enumerate() {
                if (iso.matrix[i][j] * nj as u64) % ni as u64 != 0 {
                    return Err(Error::InvalidGroup("matrix does not define a homomorphism".into()));
                }
            }
        }
        let mut hit = vec![false; group.order()];
        for a in 0..group.order() {
            let img = group.index(&iso.apply(&group.element(a)));
            if hit[img] {
                return Err(Error::InvalidGroup("matrix is not bijective".into()));
            }
            hit[img] = true;
        }
        Ok(iso)
    }

    /// `α_m(g) = (h ↦ ζ_n^{m g h})` on `Z/n`.
    pub fn cyclic(n: u32, m: u64) -> Result<Isom> {
        let g = AbelianGroup::cyclic(n)?;
        Isom::new(&g, vec![vec![m % n as u64]])
    }

    /// All `α_m` for `m` a unit modulo `n`.
    pub fn all_cyclic(n: u32) -> Vec<Isom> {
        (1..n as u64)
            .filter(|&m| num_integer::Integer::gcd(&m, &(n as u64)) == 1)
            .map(|m| Isom::cyclic(n, m).expect("units are isomorphisms"))
            .collect()
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, a: &[u32]) -> Vec<u32> {
        self.group
            .factors()
            .iter()
            .enumerate()
            .map(|(i, &ni)| {
                let s: u64 = self.matrix[i].iter().zip(a).map(|(&m, &x)| m * x as u64).sum();
                (s % ni as u64) as u32
            })
            .collect()
    }

    /// `ᾱ(g) = α(g)⁻¹`.
    pub fn inverse_valued(&self) -> Isom {
        let matrix = self
            .matrix
            .iter()
            .zip(self.group.factors())
            .map(|(row, &ni)| row.iter().map(|&m| (ni as u64 - m % ni as u64) % ni as u64).collect())
            .collect();
        Isom { group: self.group.clone(), matrix }
    }

    /// Labels `{(g, α(g))}` of `D(G)`, sorted.
    pub fn graph(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.group.order())
            .map(|a| {
                let g = self.group.element(a);
                double_index(&self.group, &g, &self.apply(&g))
            })
            .collect();
        v.sort_unstable();
        v
    }
}

/// `(ja, jb)` is transparent in the subcategory generated by `(a, b)` of
/// `D(Z/p^n)` iff `2jab ≡ 0 (mod p^n)`.
pub fn transparency_criterion(p: u64, n: u32, a: u64, b: u64, j: u64) -> bool {
    let q = p.pow(n) as u128;
    (2 * j as u128 * a as u128 * b as u128) % q == 0
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[derive(Clone, Debug)]
pub struct ModularSubcat {
    pub subcat: SubCat,
    pub labels: Vec<String>,
    /// `m` such that the subcategory is the graph of `α_m`.
    pub multiplier: Option<u64>,
    /// Multiplier of its centralizer.
    pub centralizer_multiplier: Option<u64>,
    pub prime: bool,
}

#[derive(Clone, Debug)]
pub struct CyclicClassification {
    pub p: u64,
    pub n: u32,
    pub rank: usize,
    pub lattice_size: usize,
    pub expected_count: usize,
    pub modular: Vec<ModularSubcat>,
    pub report: Report,
}

impl CyclicClassification {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": format!("Z/{}", self.p.pow(self.n)),
            "p": self.p,
            "n": self.n,
            "rank": self.rank,
            "lattice_size": self.lattice_size,
            "expected_count": self.expected_count,
            "prime": self.modular.is_empty(),
            "modular_subcategories": self.modular.iter().map(|m| serde_json::json!({
                "labels": m.labels,
                "multiplier": m.multiplier,
                "centralizer_multiplier": m.centralizer_multiplier,
                "prime": m.prime,
            })).collect::<Vec<_>>(),
            "checks": self.report.to_json()["checks"],
            "summary": self.report.to_json()["summary"],
        })
    }
}

/// Whether `k` (as a category) has no proper nontrivial modular subcategory.
fn subcat_is_prime(data: &PremodularData, k: &SubCat) -> Result<bool> {
    let sub = subcat::restrict(data, k)?;
    for s in subcat::enumerate_subcats(&sub) {
        if s.is_trivial() || s.len() == sub.rank() {
            continue;
        }
        if subcat::is_modular_sub(&sub, &s)?.modular {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds every proper nontrivial modular subcategory of `D(Z/p^n)` and checks
/// it against the isomorphisms `Z/p^n → dual`: none for `p = 2`, otherwise
/// exactly the graphs `K_α`, each prime, with `C(K_α) = K_ᾱ`.
pub fn classify_modular_subcats_cyclic(
    p: u64,
    n: u32,
    budget: usize,
) -> Result<CyclicClassification> {
    if !is_prime(p) {
        return Err(Error::InvalidGroup(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidGroup("exponent n must be positive".into()));
    }
    let q = p.checked_pow(n).filter(|&q| q <= u32::MAX as u64);
    let q = q.ok_or_else(|| Error::InvalidGroup("p^n too large".into()))?;
    let rank = (q as u128 * q as u128).min(usize::MAX as u128) as usize;
    if rank > budget {
        return Err(Error::BudgetExceeded { rank, budget });
    }
    let group = AbelianGroup::cyclic(q as u32)?;
    let data = drinfeld_double(&group)?;
    let lattice = subcat::enumerate_subcats(&data);
    let expected_count = if p == 2 { 0 } else { (q - q / p) as usize };

    let isoms = Isom::all_cyclic(q as u32);
    let graphs: Vec<(u64, Vec<usize>)> =
        isoms.iter().map(|a| (a.matrix()[0][0], a.graph())).collect();
    let multiplier_of = |k: &SubCat| {
        graphs.iter().find(|(_, g)| g.as_slice() == k.members()).map(|(m, _)| *m)
    };

    let candidates: Vec<&SubCat> = lattice
        .iter()
        .filter(|k| !k.is_trivial() && k.len() < data.rank())
        .collect();
    let verdicts: Vec<Result<bool>> = candidates
        .par_iter()
        .map(|k| subcat::is_modular_sub(&data, k).map(|v| v.modular))
        .collect();
    let mut modular = Vec::new();
    for (k, v) in candidates.iter().zip(verdicts) {
        if v? {
            let cent = subcat::centralizer(&data, k)?;
            modular.push(ModularSubcat {
                subcat: (*k).clone(),
                labels: k.labels(&data),
                multiplier: multiplier_of(k),
                centralizer_multiplier: multiplier_of(&cent),
                prime: subcat_is_prime(&data, k)?,
            });
        }
    }

    let scope = format!("D(Z/{q})");
    let mut report = Report::new();
    report.push(
        "modular-count",
        format!("{scope}: found {}, expected {expected_count}", modular.len()),
        modular.len() == expected_count,
    );
    for m in &modular {
        let inst = format!("{scope} K={{{}}}", m.labels.join(", "));
        report.push("graph-of-isomorphism", &inst, m.multiplier.is_some());
        report.push("prime-factor", &inst, m.prime);
        report.push("rank", &inst, m.subcat.len() == q as usize);
        let paired = match (m.multiplier, m.centralizer_multiplier) {
            (Some(a), Some(b)) => (a + b) % q == 0,
            _ => false,
        };
        report.push("centralizer-pairing", &inst, paired);
    }
    if p != 2 {
        let covered = graphs
            .iter()
            .filter(|(mult, _)| modular.iter().any(|m| m.multiplier == Some(*mult)))
            .count();
        report.push(
            "isomorphism-coverage",
            format!("{scope}: {covered} of {} isomorphisms", graphs.len()),
            covered == graphs.len(),
        );
    }

    // transparency in cyclic subgroups {(ja, jb)} against the closed-form criterion
    let qq = q as usize;
    let fails: Vec<String> = (0..qq * qq)
        .into_par_iter()
        .map(|ab| -> Result<Vec<String>> {
            let (a, b) = ((ab / qq) as u64, (ab % qq) as u64);
            let gen = double_index(&group, &[a as u32], &[b as u32]);
            let k = subcat::generated(&data, &[gen])?;
            let z = subcat::relative_center(&data, &k)?;
            let mut out = Vec::new();
            for j in 0..q {
                let x = double_index(&group, &[((j * a) % q) as u32], &[((j * b) % q) as u32]);
                if z.contains(x) != transparency_criterion(p, n, a, b, j) {
                    out.push(format!("(a,b,j)=({a},{b},{j})"));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.tally("transparency-criterion", &scope, qq * qq * qq, fails);

    Ok(CyclicClassification {
        p,
        n,
        rank: data.rank(),
        lattice_size: lattice.len(),
        expected_count,
        modular,
        report,
    })
}

/// `D(Z/n₁ × … × Z/n_k)` against `D(Z/n₁) ⊠ … ⊠ D(Z/n_k)`.
pub fn product_group_double_check(orders: &[u32], budget: usize) -> Result<Report> {
    let group = AbelianGroup::new(orders)?;
    let rank = group.order() * group.order();
    if rank > budget {
        return Err(Error::BudgetExceeded { rank, budget });
    }
    let whole = drinfeld_double(&group)?;
    let mut product = drinfeld_double(&AbelianGroup::trivial())?;
    for &n in orders {
        product = deligne_product(&product, &drinfeld_double(&AbelianGroup::cyclic(n)?)?)?;
    }
    let mut report = Report::new();
    let inst = format!("{} ≃ {}", whole.name(), product.name());
    report.push("double-of-product", inst, equivalent(&whole, &product).is_some());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_basics() {
        let g = AbelianGroup::new(&[2, 1, 3]).unwrap();
        assert_eq!(g.factors(), &[2, 3]);
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
        for i in 0..6 {
            assert_eq!(g.index(&g.element(i)), i);
        }
        assert_eq!(g.add(&[1, 2], &[1, 2]), vec![0, 1]);
        assert_eq!(g.neg(&[1, 1]), vec![1, 2]);
        assert!(AbelianGroup::new(&[0]).is_err());
        assert_eq!(AbelianGroup::trivial().exponent(), 1);
    }

    #[test]
    fn pairing_is_bimultiplicative() {
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        let e = g.exponent() as u64;
        for x in 0..8 {
            for y in 0..8 {
                for z in 0..8 {
                    let (a, b, c) = (g.element(x), g.element(y), g.element(z));
                    let lhs = g.pairing(&a, &g.add(&b, &c));
                    let rhs = (g.pairing(&a, &b) + g.pairing(&a, &c)) % e;
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // nondegenerate: only the trivial character pairs trivially with everything
        let trivial: Vec<usize> = (0..8)
            .filter(|&c| (0..8).all(|x| g.pairing(&g.element(c), &g.element(x)) == 0))
            .collect();
        assert_eq!(trivial, vec![0]);
    }

    #[test]
    fn toric_code() {
        let d = drinfeld_double(&AbelianGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(d.rank(), 4);
        let expected = [1, 1, 1, -1];
        for (x, &w) in expected.iter().enumerate() {
            assert_eq!(*d.twist(x), CycNum::from_int(2, w));
        }
        // S((a,b),(c,d)) = (-1)^{ad+bc}
        for x in 0..4 {
            for y in 0..4 {
                let (a, b, c, dd) = (x / 2, x % 2, y / 2, y % 2);
                let sign = if (a * dd + b * c) % 2 == 0 { 1 } else { -1 };
                assert_eq!(*d.s(x, y), CycNum::from_int(2, sign));
            }
        }
    }

    #[test]
    fn trivial_double_is_vect() {
        let d = drinfeld_double(&AbelianGroup::trivial()).unwrap();
        assert_eq!(d.rank(), 1);
        assert_eq!(d.conductor(), 1);
    }

    #[test]
    fn dz3_s_entries() {
        let g = AbelianGroup::cyclic(3).unwrap();
        let d = drinfeld_double(&g).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                let (a, b, c, dd) = (x / 3, x % 3, y / 3, y % 3);
                assert_eq!(*d.s(x, y), CycNum::zeta_pow(3, (a * dd + b * c) as i64));
            }
        }
        assert_eq!(crate::fusion::dim_category(&d), CycNum::from_int(3, 9));
    }

    #[test]
    fn dual_is_negation() {
        let g = AbelianGroup::cyclic(3).unwrap();
        let d = drinfeld_double(&g).unwrap();
        // (1,2) ↦ (2,1)
        assert_eq!(d.dual(double_index(&g, &[1], &[2])), double_index(&g, &[2], &[1]));
    }

    #[test]
    fn transparency_examples() {
        assert!(transparency_criterion(2, 1, 1, 1, 1));
        assert!(!transparency_criterion(3, 1, 1, 1, 1));
        for (p, n, a, b) in [(3, 2, 4, 7), (5, 1, 2, 3), (2, 2, 1, 3)] {
            assert!(transparency_criterion(p, n, a, b, 0));
        }
    }

    #[test]
    fn isom_validation() {
        assert!(Isom::cyclic(9, 3).is_err());
        let a = Isom::cyclic(5, 2).unwrap();
        assert_eq!(a.inverse_valued().matrix()[0][0], 3);
        assert_eq!(Isom::all_cyclic(9).len(), 6);
        let g = AbelianGroup::new(&[2, 2]).unwrap();
        assert!(Isom::new(&g, vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(Isom::new(&g, vec![vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn classify_small() {
        let c = classify_modular_subcats_cyclic(2, 1, DEFAULT_RANK_BUDGET).unwrap();
        assert!(c.modular.is_empty());
        assert!(c.report.all_pass(), "{}", c.report);
        let c = classify_modular_subcats_cyclic(3, 1, DEFAULT_RANK_BUDGET).unwrap();
        assert_eq!(c.modular.len(), 2);
        assert!(c.report.all_pass(), "{}", c.report);
    }

    #[test]
    fn classify_rejects() {
        assert!(matches!(classify_modular_subcats_cyclic(4, 1, 256), Err(Error::InvalidGroup(_))));
        assert!(matches!(
            classify_modular_subcats_cyclic(17, 1, 256),
            Err(Error::BudgetExceeded { rank: 289, budget: 256 })
        ));
    }
}
