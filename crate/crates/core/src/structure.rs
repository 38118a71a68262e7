//! Deligne products, braiding reversal, splitting along modular
//! subcategories, prime factorization and equivalence search.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::cyclo::{lcm, real_sign, CycNum, RealSign};
use crate::error::{Error, Result};
use crate::fusion::{dim_category, is_unitary, CategoryData, FusionRules, PremodularData};
use crate::report::Report;
use crate::subcat::{self, SubCat};

fn product_label(a: &str, b: &str) -> String {
    let wrap = |s: &str| if s.contains('*') { format!("({s})") } else { s.to_string() };
    format!("{}*{}", wrap(a), wrap(b))
}

fn embedded(values: &[CycNum], conductor: u32) -> Vec<CycNum> {
    values
        .iter()
        .map(|v| v.embed(conductor).expect("conductor divides the lcm"))
        .collect()
}

/// `A ⊠ B`: objects are pairs `(a, b)` indexed `a * rank(B) + b`, and all
/// numerical data multiplies. The conductor is the lcm of the two.
pub fn deligne_product(a: &PremodularData, b: &PremodularData) -> Result<PremodularData> {
    let c = lcm(a.conductor(), b.conductor());
    let (ra, rb) = (a.rank(), b.rank());
    let idx = |i: usize, j: usize| i * rb + j;
    let mut entries = Vec::new();
    for i in 0..ra {
        for i2 in 0..ra {
            for &(i3, n) in a.fusion().product(i, i2) {
                for j in 0..rb {
                    for j2 in 0..rb {
                        for &(j3, m) in b.fusion().product(j, j2) {
                            entries.push((idx(i, j), idx(i2, j2), idx(i3, j3), n * m));
                        }
                    }
                }
            }
        }
    }
    let (da, db) = (embedded(a.dims(), c), embedded(b.dims(), c));
    let (wa, wb) = (embedded(a.twists(), c), embedded(b.twists(), c));
    let pairs = || (0..ra).flat_map(|i| (0..rb).map(move |j| (i, j)));
    let raw = CategoryData {
        name: format!("{}⊠{}", a.name(), b.name()),
        conductor: c,
        labels: pairs().map(|(i, j)| product_label(a.label(i), b.label(j))).collect(),
        unit: idx(a.unit(), b.unit()),
        dual: pairs().map(|(i, j)| idx(a.dual(i), b.dual(j))).collect(),
        fusion: FusionRules::from_entries(ra * rb, entries)?,
        dims: pairs().map(|(i, j)| da[i].mul(&db[j])).collect(),
        twists: pairs().map(|(i, j)| wa[i].mul(&wb[j])).collect(),
    };
    let product = PremodularData::new(raw)?;
    let r = ra * rb;
    let bad = (0..r * r).into_par_iter().find_any(|&xy| {
        let (x, y) = (xy / r, xy % r);
        let expected = a
            .s(x / rb, y / rb)
            .embed(c)
            .unwrap()
            .mul(&b.s(x % rb, y % rb).embed(c).unwrap());
        *product.s(x, y) != expected
    });
    if let Some(xy) = bad {
        return Err(Error::InternalInconsistency(format!(
            "S of {} is not the product of the factors' S at {}",
            product.name(),
            product.tuple(&[xy / r, xy % r])
        )));
    }
    Ok(product)
}

/// Same fusion and dimensions with inverted twists (reversed braiding).
pub fn reverse(data: &PremodularData) -> Result<PremodularData> {
    let mut raw = data.raw().clone();
    raw.twists = raw.twists.iter().map(CycNum::conj).collect();
    raw.name = match raw.name.strip_suffix("~") {
        Some(base) => base.to_string(),
        None => format!("{}~", raw.name),
    };
    PremodularData::new(raw)
}

/// `C ⊠ C̃`, the double of a modular category.
pub fn double_of_modular(data: &PremodularData) -> Result<PremodularData> {
    if !subcat::is_modular(data)?.modular {
        return Err(Error::NotModular);
    }
    let double = deligne_product(data, &reverse(data)?)?;
    let v = subcat::is_modular(&double)?;
    let d = dim_category(data);
    let expected = d.mul(&d).embed(double.conductor())?;
    if !v.modular || v.dim != expected {
        return Err(Error::InternalInconsistency(format!(
            "double of {} is not modular of dimension (dim C)²",
            data.name()
        )));
    }
    Ok(double)
}

/// Witness that `C ≃ K ⊠ L`: `map[k * right_rank + l]` is the object of `C`
/// corresponding to `(k, l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelBijection {
    pub left_rank: usize,
    pub right_rank: usize,
    pub map: Vec<usize>,
}

impl LabelBijection {
    pub fn get(&self, k: usize, l: usize) -> usize {
        self.map[k * self.right_rank + l]
    }
}

/// Checks that `map: Γ_A → Γ_B` is a bijection preserving the unit, duals,
/// fusion, dimensions, twists and S. Values are compared in the lcm field.
pub fn check_bijection(
    a: &PremodularData,
    b: &PremodularData,
    map: &[usize],
) -> std::result::Result<(), String> {
    let r = a.rank();
    if b.rank() != r || map.len() != r {
        return Err(format!("rank {} vs {}", r, b.rank()));
    }
    let mut hit = vec![false; r];
    for &m in map {
        if m >= r || hit[m] {
            return Err("map is not a bijection".into());
        }
        hit[m] = true;
    }
    if map[a.unit()] != b.unit() {
        return Err("unit not preserved".into());
    }
    for x in 0..r {
        if map[a.dual(x)] != b.dual(map[x]) {
            return Err(format!("dual of {} not preserved", a.label(x)));
        }
    }
    for x in 0..r {
        for y in 0..r {
            let mut pa: Vec<(usize, u32)> =
                a.fusion().product(x, y).iter().map(|&(z, n)| (map[z], n)).collect();
            pa.sort_unstable();
            if pa.as_slice() != b.fusion().product(map[x], map[y]) {
                return Err(format!("fusion differs at {}", a.tuple(&[x, y])));
            }
        }
    }
    let c = lcm(a.conductor(), b.conductor());
    let (da, db) = (embedded(a.dims(), c), embedded(b.dims(), c));
    let (wa, wb) = (embedded(a.twists(), c), embedded(b.twists(), c));
    for x in 0..r {
        if da[x] != db[map[x]] {
            return Err(format!("dimension of {} differs", a.label(x)));
        }
        if wa[x] != wb[map[x]] {
            return Err(format!("twist of {} differs", a.label(x)));
        }
    }
    let bad = (0..r * r).into_par_iter().find_any(|&xy| {
        let (x, y) = (xy / r, xy % r);
        a.s(x, y).embed(c).unwrap() != b.s(map[x], map[y]).embed(c).unwrap()
    });
    if let Some(xy) = bad {
        return Err(format!("S differs at {}", a.tuple(&[xy / r, xy % r])));
    }
    Ok(())
}

/// Result of splitting a modular category along a modular subcategory.
#[derive(Clone, Debug)]
pub struct Split {
    pub left: PremodularData,
    pub right: PremodularData,
    pub left_subcat: SubCat,
    pub right_subcat: SubCat,
    pub bijection: LabelBijection,
}

/// `C ≃ K ⊠ C_C(K)` for modular `C` and modular `K`, with the label map
/// `(k, l) ↦` the unique simple summand of `k ⊗ l`.
pub fn split_along(data: &PremodularData, k: &SubCat) -> Result<Split> {
    if !subcat::is_modular(data)?.modular || !subcat::is_modular_sub(data, k)?.modular {
        return Err(Error::NotModular);
    }
    let l = subcat::centralizer(data, k)?;
    let left = subcat::restrict(data, k)?;
    let right = subcat::restrict(data, &l)?;
    let mut map = Vec::with_capacity(k.len() * l.len());
    for &x in k.members() {
        for &y in l.members() {
            match data.fusion().product(x, y) {
                [(z, 1)] => map.push(*z),
                other => {
                    return Err(Error::SplitFailure(format!(
                        "{} ⊗ {} has {} summands",
                        data.label(x),
                        data.label(y),
                        other.iter().map(|&(_, n)| n).sum::<u32>()
                    )))
                }
            }
        }
    }
    let bijection = LabelBijection { left_rank: k.len(), right_rank: l.len(), map };
    let product = deligne_product(&left, &right)?;
    check_bijection(&product, data, &bijection.map).map_err(Error::SplitFailure)?;
    Ok(Split { left, right, left_subcat: k.clone(), right_subcat: l, bijection })
}

/// How the factors recombine into the original category.
#[derive(Clone, Debug)]
pub enum WitnessTree {
    /// The trivial category: empty product.
    Unit,
    /// A prime factor, by index into `Factorization::factors`.
    Leaf(usize),
    Split {
        bijection: LabelBijection,
        left: Box<WitnessTree>,
        right: Box<WitnessTree>,
    },
}

impl WitnessTree {
    fn remap(&mut self, f: &dyn Fn(usize) -> usize) {
        match self {
            WitnessTree::Unit => {}
            WitnessTree::Leaf(i) => *i = f(*i),
            WitnessTree::Split { left, right, .. } => {
                left.remap(f);
                right.remap(f);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Factorization {
    /// Prime factors sorted by rank, then dimensions.
    pub factors: Vec<PremodularData>,
    pub tree: WitnessTree,
}

impl Factorization {
    fn prime(data: &PremodularData) -> Factorization {
        Factorization { factors: vec![data.clone()], tree: WitnessTree::Leaf(0) }
    }

    fn unit() -> Factorization {
        Factorization { factors: vec![], tree: WitnessTree::Unit }
    }

    fn combine(bijection: LabelBijection, left: Factorization, right: Factorization) -> Factorization {
        let offset = left.factors.len();
        let mut rtree = right.tree;
        rtree.remap(&|i| i + offset);
        let mut f = Factorization {
            factors: left.factors.into_iter().chain(right.factors).collect(),
            tree: WitnessTree::Split { bijection, left: Box::new(left.tree), right: Box::new(rtree) },
        };
        f.sort();
        f
    }

    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.factors.len()).collect();
        let keys: Vec<(usize, Vec<String>)> = self.factors.iter().map(sort_key).collect();
        order.sort_by(|&i, &j| keys[i].cmp(&keys[j]).then(i.cmp(&j)));
        let mut new_pos = vec![0; order.len()];
        for (pos, &old) in order.iter().enumerate() {
            new_pos[old] = pos;
        }
        self.tree.remap(&|i| new_pos[i]);
        let mut old: Vec<Option<PremodularData>> = self.factors.drain(..).map(Some).collect();
        self.factors = order.iter().map(|&i| old[i].take().unwrap()).collect();
    }

    /// Recombines the factors along the witness tree. Returns the product and
    /// the map from its objects to the objects of the factored category.
    pub fn recombine(&self) -> Result<(PremodularData, Vec<usize>)> {
        fn go(f: &Factorization, t: &WitnessTree) -> Result<(PremodularData, Vec<usize>)> {
            match t {
                WitnessTree::Unit => {
                    let vect = crate::catalog::get("vec")?;
                    Ok((vect, vec![0]))
                }
                WitnessTree::Leaf(i) => {
                    let d = f.factors[*i].clone();
                    let id = (0..d.rank()).collect();
                    Ok((d, id))
                }
                WitnessTree::Split { bijection, left, right } => {
                    let (l, lmap) = go(f, left)?;
                    let (r, rmap) = go(f, right)?;
                    let product = deligne_product(&l, &r)?;
                    let rr = r.rank();
                    let map = (0..product.rank())
                        .map(|x| bijection.get(lmap[x / rr], rmap[x % rr]))
                        .collect();
                    Ok((product, map))
                }
            }
        }
        go(self, &self.tree)
    }

    /// Recombines and checks the composed witness against `original`.
    pub fn verify(&self, original: &PremodularData) -> std::result::Result<(), String> {
        let (product, map) = self.recombine().map_err(|e| e.to_string())?;
        check_bijection(&product, original, &map)
    }

    /// Indented text tree.
    pub fn tree_text(&self, original: &PremodularData) -> String {
        fn go(f: &Factorization, t: &WitnessTree, name: &str, depth: usize, out: &mut String) {
            let pad = "  ".repeat(depth);
            match t {
                WitnessTree::Unit => out.push_str(&format!("{pad}{name} = Vect (empty product)\n")),
                WitnessTree::Leaf(i) => {
                    let d = &f.factors[*i];
                    out.push_str(&format!("{pad}{} [prime, rank {}]\n", d.name(), d.rank()));
                }
                WitnessTree::Split { left, right, bijection } => {
                    out.push_str(&format!(
                        "{pad}{name} ≃ ({} objects) ⊠ ({} objects)\n",
                        bijection.left_rank, bijection.right_rank
                    ));
                    go(f, left, "K", depth + 1, out);
                    go(f, right, "C(K)", depth + 1, out);
                }
            }
        }
        let mut out = String::new();
        go(self, &self.tree, original.name(), 0, &mut out);
        out
    }
}

fn sort_key(d: &PremodularData) -> (usize, Vec<String>) {
    let mut dims: Vec<String> = d.dims().iter().map(|x| x.to_string()).collect();
    dims.sort();
    (d.rank(), dims)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    First,
    All,
}

/// Proper nontrivial modular subcategories, smallest first.
pub fn proper_modular_subcats(data: &PremodularData) -> Result<Vec<SubCat>> {
    let candidates: Vec<SubCat> = subcat::enumerate_subcats(data)
        .into_iter()
        .filter(|k| !k.is_trivial() && k.len() < data.rank())
        .collect();
    let verdicts: Vec<Result<bool>> = candidates
        .par_iter()
        .map(|k| subcat::is_modular_sub(data, k).map(|v| v.modular))
        .collect();
    let mut out = Vec::new();
    for (k, v) in candidates.into_iter().zip(verdicts) {
        if v? {
            out.push(k);
        }
    }
    Ok(out)
}

fn factorize_first(data: &PremodularData) -> Result<Factorization> {
    if data.rank() == 1 {
        return Ok(Factorization::unit());
    }
    let Some(k) = proper_modular_subcats(data)?.into_iter().next() else {
        return Ok(Factorization::prime(data));
    };
    let split = split_along(data, &k)?;
    let left = factorize_first(&split.left)?;
    let right = factorize_first(&split.right)?;
    Ok(Factorization::combine(split.bijection, left, right))
}

fn factorize_all(data: &PremodularData) -> Result<Vec<Factorization>> {
    if data.rank() == 1 {
        return Ok(vec![Factorization::unit()]);
    }
    let ks = proper_modular_subcats(data)?;
    if ks.is_empty() {
        return Ok(vec![Factorization::prime(data)]);
    }
    // one first step per equivalence class of (K, C(K)) pairs
    let mut chosen: Vec<Split> = Vec::new();
    for k in &ks {
        let s = split_along(data, k)?;
        let dup = chosen.iter().any(|c| {
            (equivalent(&c.left, &s.left).is_some() && equivalent(&c.right, &s.right).is_some())
                || (equivalent(&c.left, &s.right).is_some()
                    && equivalent(&c.right, &s.left).is_some())
        });
        if !dup {
            chosen.push(s);
        }
    }
    let mut results = Vec::new();
    for s in chosen {
        let lefts = factorize_all(&s.left)?;
        let rights = factorize_all(&s.right)?;
        for l in &lefts {
            for r in &rights {
                results.push(Factorization::combine(s.bijection.clone(), l.clone(), r.clone()));
            }
        }
    }
    Ok(dedup_factorizations(results))
}

fn same_factors(a: &Factorization, b: &Factorization) -> bool {
    if a.factors.len() != b.factors.len() {
        return false;
    }
    let ka: Vec<_> = a.factors.iter().map(fingerprint_key).collect();
    let kb: Vec<_> = b.factors.iter().map(fingerprint_key).collect();
    let mut sa = ka.clone();
    let mut sb = kb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    // perfect matching under equivalence, by backtracking
    fn matchup(a: &[PremodularData], b: &[PremodularData], i: usize, used: &mut [bool]) -> bool {
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if !used[j] && equivalent(&a[i], &b[j]).is_some() {
                used[j] = true;
                if matchup(a, b, i + 1, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    matchup(&a.factors, &b.factors, 0, &mut vec![false; b.factors.len()])
}

fn dedup_factorizations(all: Vec<Factorization>) -> Vec<Factorization> {
    let mut out: Vec<Factorization> = Vec::new();
    for f in all {
        if !out.iter().any(|g| same_factors(g, &f)) {
            out.push(f);
        }
    }
    out
}

/// Prime factorization of a modular category. `First` returns one
/// factorization; `All` every distinct unordered multiset of prime factors.
pub fn prime_factorize(data: &PremodularData, mode: FactorMode) -> Result<Vec<Factorization>> {
    if !subcat::is_modular(data)?.modular {
        return Err(Error::NotModular);
    }
    match mode {
        FactorMode::First => Ok(vec![factorize_first(data)?]),
        FactorMode::All => {
            let mut all = factorize_all(data)?;
            all.sort_by_key(|f| f.factors.iter().map(fingerprint_key).collect::<Vec<_>>());
            Ok(all)
        }
    }
}

/// Per-object invariants preserved by any equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ObjectPrint {
    dim: Vec<String>,
    twist: Vec<String>,
    self_dual: bool,
    square_size: u64,
    row_size: u64,
}

fn object_prints(d: &PremodularData, conductor: u32) -> Vec<ObjectPrint> {
    let r = d.rank();
    (0..r)
        .map(|x| ObjectPrint {
            dim: d.dim(x).embed(conductor).unwrap().to_strings(),
            twist: d.twist(x).embed(conductor).unwrap().to_strings(),
            self_dual: d.dual(x) == x,
            square_size: d.fusion().product(x, x).iter().map(|&(_, n)| n as u64).sum(),
            row_size: (0..r)
                .flat_map(|y| d.fusion().product(x, y))
                .map(|&(_, n)| n as u64)
                .sum(),
        })
        .collect()
}

/// Conductor-independent summary used to order and bucket categories.
fn fingerprint_key(d: &PremodularData) -> (usize, Vec<(String, String)>) {
    let mut v: Vec<(String, String)> = d
        .dims()
        .iter()
        .zip(d.twists())
        .map(|(dim, w)| {
            let bd = crate::cyclo::numeric_eval(dim, 53);
            let bw = crate::cyclo::numeric_eval(w, 53);
            (
                format!("{:.9}", bd.re_f64()),
                format!("{:.9},{:.9}", bw.re_f64() + 0.0, bw.im_f64() + 0.0),
            )
        })
        .collect();
    v.sort();
    (d.rank(), v)
}

/// Searches for a bijection of objects preserving unit, duals, fusion,
/// dimensions and twists (hence S). Backtracking over objects ordered so that
/// most are forced as summands of products of earlier ones.
pub fn equivalent(a: &PremodularData, b: &PremodularData) -> Option<Vec<usize>> {
    let r = a.rank();
    if b.rank() != r {
        return None;
    }
    let c = lcm(a.conductor(), b.conductor());
    let pa = object_prints(a, c);
    let pb = object_prints(b, c);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut classes: HashMap<&ObjectPrint, Vec<usize>> = HashMap::new();
    for (y, p) in pb.iter().enumerate() {
        classes.entry(p).or_default().push(y);
    }
    let class_size = |x: usize| classes.get(&pa[x]).map_or(0, Vec::len);

    // order objects: derived ones (summand of a product of earlier ones) first
    let mut order: Vec<usize> = vec![a.unit()];
    let mut derived: Vec<Option<(usize, usize)>> = vec![None];
    let mut placed = vec![false; r];
    placed[a.unit()] = true;
    while order.len() < r {
        let mut next = None;
        'search: for i in 0..order.len() {
            for j in 0..=i {
                for &(z, _) in a.fusion().product(order[i], order[j]) {
                    if !placed[z] {
                        next = Some((z, Some((order[i], order[j]))));
                        break 'search;
                    }
                }
            }
        }
        let (x, from) = next.unwrap_or_else(|| {
            let x = (0..r)
                .filter(|&x| !placed[x])
                .min_by_key(|&x| (class_size(x), x))
                .unwrap();
            (x, None)
        });
        placed[x] = true;
        order.push(x);
        derived.push(from);
    }

    struct Search<'s> {
        a: &'s PremodularData,
        b: &'s PremodularData,
        pa: &'s [ObjectPrint],
        pb: &'s [ObjectPrint],
        order: &'s [usize],
        derived: &'s [Option<(usize, usize)>],
        classes: &'s HashMap<&'s ObjectPrint, Vec<usize>>,
        map: Vec<usize>,
        used: Vec<bool>,
        assigned: Vec<usize>,
    }

    impl Search<'_> {
        fn consistent(&self, x: usize) -> bool {
            let fx = self.map[x];
            let (a, b) = (self.a, self.b);
            let dx = a.dual(x);
            if self.map[dx] != usize::MAX && self.map[dx] != b.dual(fx) {
                return false;
            }
            for &y in &self.assigned {
                let fy = self.map[y];
                for &z in &self.assigned {
                    let fz = self.map[z];
                    if a.n(x, y, z) != b.n(fx, fy, fz) || a.n(y, z, x) != b.n(fy, fz, fx) {
                        return false;
                    }
                }
            }
            true
        }

        fn run(&mut self, pos: usize) -> bool {
            if pos == self.order.len() {
                return true;
            }
            let x = self.order[pos];
            let candidates: Vec<usize> = match self.derived[pos] {
                Some((y, z)) => {
                    let want = self.a.n(y, z, x);
                    self.b
                        .fusion()
                        .product(self.map[y], self.map[z])
                        .iter()
                        .filter(|&&(w, n)| n == want && self.pb[w] == self.pa[x])
                        .map(|&(w, _)| w)
                        .collect()
                }
                None => self.classes.get(&self.pa[x]).cloned().unwrap_or_default(),
            };
            for fx in candidates {
                if self.used[fx] {
                    continue;
                }
                self.map[x] = fx;
                self.used[fx] = true;
                self.assigned.push(x);
                if self.consistent(x) && self.run(pos + 1) {
                    return true;
                }
                self.assigned.pop();
                self.used[fx] = false;
                self.map[x] = usize::MAX;
            }
            false
        }
    }

    if pa[a.unit()] != pb[b.unit()] {
        return None;
    }
    let mut search = Search {
        a,
        b,
        pa: &pa,
        pb: &pb,
        order: &order,
        derived: &derived,
        classes: &classes,
        map: vec![usize::MAX; r],
        used: vec![false; r],
        assigned: Vec::new(),
    };
    // the unit must go to the unit
    search.map[a.unit()] = b.unit();
    search.used[b.unit()] = true;
    search.assigned.push(a.unit());
    if !search.consistent(a.unit()) || !search.run(1) {
        return None;
    }
    let map = search.map;
    check_bijection(a, b, &map).ok().map(|_| map)
}

/// `dim C ≥ dim K · dim Z₂(K)` for every subcategory of a unitary modular
/// category, with equality exactly when `C(K) = Z₂(K)`.
pub fn verify_bound(data: &PremodularData) -> Result<Report> {
    if !subcat::is_modular(data)?.modular {
        return Err(Error::NotModular);
    }
    if !is_unitary(data) {
        return Err(Error::NotUnitary);
    }
    let dim = dim_category(data);
    let lattice = subcat::enumerate_subcats(data);
    let rows: Vec<Result<(String, bool, bool)>> = lattice
        .par_iter()
        .map(|k| {
            let kc = subcat::centralizer(data, k)?;
            let z = k.intersect(&kc);
            let delta = dim.sub(&subcat::dim_subcat(data, k).mul(&subcat::dim_subcat(data, &z)));
            let sign = real_sign(&delta)?;
            let inst = format!("{} K={} Δ={}", data.name(), k.display(data), delta);
            Ok((inst, sign != RealSign::Negative, (sign == RealSign::Zero) == (kc == z)))
        })
        .collect();
    let mut report = Report::new();
    for row in rows {
        let (inst, nonneg, eq) = row?;
        report.push("dimension-bound", &inst, nonneg);
        report.push("bound-equality", &inst, eq);
    }
    Ok(report)
}

/// `Δ = dim C − dim K · dim Z₂(K)` for one subcategory.
pub fn bound_gap(data: &PremodularData, k: &SubCat) -> Result<CycNum> {
    let z = subcat::relative_center(data, k)?;
    Ok(dim_category(data).sub(&subcat::dim_subcat(data, k).mul(&subcat::dim_subcat(data, &z))))
}

/// Dimension of the modular closure, `dim C / dim Z₂(C)`.
pub fn closure_dimension(data: &PremodularData) -> Result<CycNum> {
    let z = subcat::center(data);
    let dz = subcat::dim_subcat(data, &z);
    if dz.is_zero() {
        return Err(Error::ZeroDimension);
    }
    dim_category(data).div(&dz)
}

/// Multiset of factor names, for display.
pub fn factor_names(f: &Factorization) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for d in &f.factors {
        *m.entry(d.name().to_string()).or_default() += 1;
    }
    m
}
