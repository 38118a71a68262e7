use mtc_core::catalog;
use mtc_core::cyclo::{lcm, CycNum};
use mtc_core::doubles::{drinfeld_double, AbelianGroup};
use mtc_core::fusion::dim_category;
use mtc_core::structure::{
    self, check_bijection, deligne_product, double_of_modular, equivalent, prime_factorize,
    reverse, split_along, FactorMode,
};
use mtc_core::subcat::{self, SubCat};
use mtc_core::{Error, PremodularData};

fn sub(d: &PremodularData, labels: &[&str]) -> SubCat {
    let idx: Vec<usize> = labels.iter().map(|l| d.index_of(l).unwrap()).collect();
    SubCat::from_members(d, &idx).unwrap()
}

fn same_value(a: &CycNum, b: &CycNum) -> bool {
    let c = lcm(a.conductor(), b.conductor());
    a.embed(c).unwrap() == b.embed(c).unwrap()
}

#[test]
fn product_with_vect_is_identity() {
    let ising = catalog::get("ising").unwrap();
    let p = deligne_product(&ising, &catalog::get("vec").unwrap()).unwrap();
    assert_eq!(p.rank(), 3);
    let id: Vec<usize> = (0..3).collect();
    check_bijection(&p, &ising, &id).unwrap();
}

#[test]
fn product_dimension_and_s() {
    let fib = catalog::get("fib").unwrap();
    let ising = catalog::get("ising").unwrap();
    let p = deligne_product(&fib, &ising).unwrap();
    assert_eq!(p.conductor(), 80);
    let expected = dim_category(&fib).mul(&CycNum::from_int(5, 4));
    assert!(same_value(&dim_category(&p), &expected));
    for x in 0..p.rank() {
        for y in 0..p.rank() {
            let want = fib.s(x / 3, y / 3).embed(80).unwrap().mul(&ising.s(x % 3, y % 3).embed(80).unwrap());
            assert_eq!(p.s(x, y), &want);
        }
    }
    assert_eq!(p.label(5), "τ*σ");
}

#[test]
fn product_is_commutative_up_to_witness() {
    let a = catalog::get("semion").unwrap();
    let b = catalog::get("fib").unwrap();
    let ab = deligne_product(&a, &b).unwrap();
    let ba = deligne_product(&b, &a).unwrap();
    assert!(equivalent(&ab, &ba).is_some());
}

#[test]
fn modular_iff_factors_modular() {
    let keys = ["semion", "fib", "rep-z2-sym", "ising"];
    for a in keys {
        for b in keys {
            let da = catalog::get(a).unwrap();
            let db = catalog::get(b).unwrap();
            let p = deligne_product(&da, &db).unwrap();
            let want = subcat::is_modular(&da).unwrap().modular && subcat::is_modular(&db).unwrap().modular;
            assert_eq!(subcat::is_modular(&p).unwrap().modular, want, "{a} ⊠ {b}");
        }
    }
}

#[test]
fn reversal() {
    let fib = catalog::get("fib").unwrap();
    let rev = reverse(&fib).unwrap();
    assert_eq!(rev.twist(1), &CycNum::zeta_pow(5, 3));
    assert_eq!(rev.s(1, 1), &fib.s(1, 1).conj());
    assert!(subcat::is_modular(&rev).unwrap().modular);
    assert_eq!(reverse(&rev).unwrap(), fib);
    assert!(equivalent(&fib, &rev).is_none());

    let sym = catalog::get("rep-z2-sym").unwrap();
    assert_eq!(reverse(&sym).unwrap(), sym);
    let ising = catalog::get("ising").unwrap();
    assert_eq!(reverse(&ising).unwrap().twist(2), &CycNum::zeta_pow(16, -1));
}

#[test]
fn doubles_of_modular() {
    let v = double_of_modular(&catalog::get("vec").unwrap()).unwrap();
    assert_eq!(v.rank(), 1);
    let i = double_of_modular(&catalog::get("ising").unwrap()).unwrap();
    assert_eq!(i.rank(), 9);
    assert_eq!(dim_category(&i), CycNum::from_int(16, 16));
    let fib = catalog::get("fib").unwrap();
    let f = double_of_modular(&fib).unwrap();
    assert_eq!(f.rank(), 4);
    let d = dim_category(&fib);
    assert_eq!(dim_category(&f), d.mul(&d));
    assert!(matches!(
        double_of_modular(&catalog::get("rep-z2-sym").unwrap()),
        Err(Error::NotModular)
    ));
}

#[test]
fn split_trivial() {
    let d = catalog::get("ising").unwrap();
    let s = split_along(&d, &SubCat::trivial(&d)).unwrap();
    assert_eq!(s.right_subcat, SubCat::whole(&d));
    assert_eq!(s.bijection.map, vec![0, 1, 2]);
}

#[test]
fn split_dz3_along_diagonal() {
    let d = catalog::get("dz3").unwrap();
    let k = sub(&d, &["0|0", "1|1", "2|2"]);
    let s = split_along(&d, &k).unwrap();
    assert_eq!(s.right_subcat, sub(&d, &["0|0", "1|2", "2|1"]));
    // ((j,j),(k,2k)) ↦ (j+k, j+2k)
    for j in 0..3 {
        for kk in 0..3 {
            let target = format!("{}|{}", (j + kk) % 3, (j + 2 * kk) % 3);
            let got = s.bijection.get(j, kk);
            assert_eq!(d.label(got), target);
        }
    }
}

#[test]
fn split_requires_modular_subcategory() {
    let d = catalog::get("ising").unwrap();
    let k = sub(&d, &["1", "ε"]);
    assert!(matches!(split_along(&d, &k), Err(Error::NotModular)));
}

#[test]
fn split_product_recovers_factors() {
    let d = catalog::get("fib-x-ising").unwrap();
    let k = sub(&d, &["1*1", "τ*1"]);
    let s = split_along(&d, &k).unwrap();
    assert!(equivalent(&s.left, &catalog::get("fib").unwrap()).is_some());
    assert!(equivalent(&s.right, &catalog::get("ising").unwrap()).is_some());
    let back = deligne_product(&s.left, &s.right).unwrap();
    check_bijection(&back, &d, &s.bijection.map).unwrap();
}

#[test]
fn primes() {
    for key in ["fib", "ising", "semion", "toric", "dz4"] {
        let d = catalog::get(key).unwrap();
        let f = prime_factorize(&d, FactorMode::First).unwrap();
        assert_eq!(f[0].factors.len(), 1, "{key}");
        assert!(structure::proper_modular_subcats(&d).unwrap().is_empty(), "{key}");
    }
    let v = prime_factorize(&catalog::get("vec").unwrap(), FactorMode::First).unwrap();
    assert!(v[0].factors.is_empty());
    assert!(matches!(
        prime_factorize(&catalog::get("rep-z2-sym").unwrap(), FactorMode::First),
        Err(Error::NotModular)
    ));
}

#[test]
fn dz3_factorization() {
    let d = catalog::get("dz3").unwrap();
    let f = prime_factorize(&d, FactorMode::First).unwrap().remove(0);
    assert_eq!(f.factors.len(), 2);
    assert!(f.factors.iter().all(|p| p.rank() == 3));
    f.verify(&d).unwrap();
    for p in &f.factors {
        assert!(subcat::is_modular(p).unwrap().modular);
        assert!(structure::proper_modular_subcats(p).unwrap().is_empty());
    }
    assert_eq!(prime_factorize(&d, FactorMode::All).unwrap().len(), 1);
}

#[test]
fn dz5_has_two_factorizations() {
    let d = catalog::get("dz5").unwrap();
    let all = prime_factorize(&d, FactorMode::All).unwrap();
    assert_eq!(all.len(), 2);
    for f in &all {
        f.verify(&d).unwrap();
        assert_eq!(f.factors.len(), 2);
    }
    // the two factorizations share no factor up to equivalence
    for a in &all[0].factors {
        for b in &all[1].factors {
            assert!(equivalent(a, b).is_none());
        }
    }
}

#[test]
fn fib_x_ising_is_unique() {
    let d = catalog::get("fib-x-ising").unwrap();
    let all = prime_factorize(&d, FactorMode::All).unwrap();
    assert_eq!(all.len(), 1);
    let f = &all[0];
    f.verify(&d).unwrap();
    assert!(equivalent(&f.factors[0], &catalog::get("fib").unwrap()).is_some());
    assert!(equivalent(&f.factors[1], &catalog::get("ising").unwrap()).is_some());
}

#[test]
fn equivalence_examples() {
    let d = catalog::get("ising").unwrap();
    assert_eq!(equivalent(&d, &d), Some(vec![0, 1, 2]));
    let z6 = drinfeld_double(&AbelianGroup::cyclic(6).unwrap()).unwrap();
    let p = deligne_product(
        &catalog::get("toric").unwrap(),
        &catalog::get("dz3").unwrap(),
    )
    .unwrap();
    let w = equivalent(&p, &z6).unwrap();
    check_bijection(&p, &z6, &w).unwrap();
    assert!(equivalent(&catalog::get("semion").unwrap(), &catalog::get("rep-z2-sym").unwrap()).is_none());
}

#[test]
fn bound_examples() {
    let ising = catalog::get("ising").unwrap();
    let k = sub(&ising, &["1", "ε"]);
    assert!(structure::bound_gap(&ising, &k).unwrap().is_zero());
    let gap = structure::bound_gap(&ising, &SubCat::trivial(&ising)).unwrap();
    assert_eq!(gap, CycNum::from_int(16, 3));
    assert!(structure::verify_bound(&ising).unwrap().all_pass());

    let d = catalog::get("dz3").unwrap();
    let ka = sub(&d, &["0|0", "1|1", "2|2"]);
    assert_eq!(structure::bound_gap(&d, &ka).unwrap(), CycNum::from_int(3, 6));
    assert!(structure::verify_bound(&d).unwrap().all_pass());

    let v = catalog::get("vec").unwrap();
    assert!(structure::bound_gap(&v, &SubCat::trivial(&v)).unwrap().is_zero());
}

#[test]
fn closure_dimensions() {
    let sym = catalog::get("rep-z2-sym").unwrap();
    assert!(structure::closure_dimension(&sym).unwrap().is_one());
    let ising = catalog::get("ising").unwrap();
    let k = subcat::restrict(&ising, &sub(&ising, &["1", "ε"])).unwrap();
    assert!(structure::closure_dimension(&k).unwrap().is_one());
    let fib = catalog::get("fib").unwrap();
    assert_eq!(structure::closure_dimension(&fib).unwrap(), dim_category(&fib));
}
