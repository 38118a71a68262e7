//! Verification suites over a single data set.

use rayon::prelude::*;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::fusion::{dim_category, is_unitary, verify_smatrix_identities, PremodularData};
use crate::report::Report;
use crate::structure::verify_bound;
use crate::subcat::{self, SubCat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Dct,
    Bound,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "dct" => Ok(Suite::Dct),
            "bound" => Ok(Suite::Bound),
            "all" => Ok(Suite::All),
            other => Err(Error::Malformed(format!("unknown suite {other:?}"))),
        }
    }
}

/// `Σ_{y∈K} d(y) S(x,y) = d(x) · dim K · [x ∈ C(K)]` for every `K` and `x`.
fn chi_sum_checks(data: &PremodularData, lattice: &[SubCat]) -> Result<Report> {
    let r = data.rank();
    let c = data.conductor();
    let rows: Vec<Result<Vec<String>>> = lattice
        .par_iter()
        .map(|k| {
            let kc = subcat::centralizer(data, k)?;
            let dk = subcat::dim_subcat(data, k);
            let mut fails = Vec::new();
            for x in 0..r {
                let lhs = subcat::chi_sum(data, k, x)?;
                let rhs = if kc.contains(x) { data.dim(x).mul(&dk) } else { CycNum::zero(c) };
                if lhs != rhs {
                    fails.push(format!("{} K={} X={}", data.name(), k.display(data), data.label(x)));
                }
            }
            Ok(fails)
        })
        .collect();
    let mut fails = Vec::new();
    for row in rows {
        fails.extend(row?);
    }
    let mut report = Report::new();
    report.tally("chi-sum", data.name(), lattice.len() * r, fails);
    Ok(report)
}

fn centrality_checks(data: &PremodularData) -> Result<Report> {
    let mut report = Report::new();
    if dim_category(data).is_zero() {
        return Ok(report);
    }
    let mut fails = Vec::new();
    for x in 0..data.rank() {
        if !subcat::centrality_equivalence(data, x)?.consistent() {
            fails.push(format!("{} X={}", data.name(), data.label(x)));
        }
    }
    report.tally("centrality-equivalence", data.name(), data.rank(), fails);
    Ok(report)
}

/// Trivial center and `det S ≠ 0` agree on the data and on every
/// subcategory viewed on its own.
fn modularity_checks(data: &PremodularData, lattice: &[SubCat]) -> Result<Report> {
    let outcomes: Vec<Result<Option<String>>> = lattice
        .par_iter()
        .map(|k| {
            let sub = subcat::restrict(data, k)?;
            match subcat::is_modular(&sub) {
                Ok(_) | Err(Error::ZeroDimension) => Ok(None),
                Err(Error::InternalInconsistency(_)) => {
                    Ok(Some(format!("{} K={}", data.name(), k.display(data))))
                }
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut fails = Vec::new();
    for o in outcomes {
        fails.extend(o?);
    }
    let mut report = Report::new();
    report.tally("modularity-criteria", data.name(), lattice.len(), fails);
    Ok(report)
}

/// S-matrix identities, the characteristic-function sums, the two
/// characterizations of central objects, agreement of the modularity
/// criteria, and the centralizer lattice laws.
pub fn lemma_suite(data: &PremodularData) -> Result<Report> {
    let lattice = subcat::enumerate_subcats(data);
    let mut report = verify_smatrix_identities(data);
    report.extend(chi_sum_checks(data, &lattice)?);
    report.extend(centrality_checks(data)?);
    report.extend(modularity_checks(data, &lattice)?);
    report.extend(subcat::verify_centralizer_lattice(data)?);
    Ok(report)
}

pub fn run_suite(data: &PremodularData, suite: Suite) -> Result<Report> {
    match suite {
        Suite::Lemmas => lemma_suite(data),
        Suite::Dct => subcat::verify_dct(data),
        Suite::Bound => verify_bound(data),
        Suite::All => {
            let mut report = lemma_suite(data)?;
            let modular = subcat::is_modular(data)?.modular;
            if modular {
                report.extend(subcat::verify_dct(data)?);
                if is_unitary(data) {
                    report.extend(verify_bound(data)?);
                }
            }
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn small_entries_pass_everything() {
        for key in ["vec", "semion", "fib", "ising", "rep-z2-sym", "toric", "dz3"] {
            let d = catalog::get(key).unwrap();
            let r = run_suite(&d, Suite::All).unwrap();
            assert!(r.all_pass(), "{key}:\n{r}");
            assert!(r.passed() > 0);
        }
    }

    #[test]
    fn dct_needs_modular() {
        let d = catalog::get("rep-z2-sym").unwrap();
        assert!(matches!(run_suite(&d, Suite::Dct), Err(Error::NotModular)));
        assert!(matches!(run_suite(&d, Suite::Bound), Err(Error::NotModular)));
    }

    #[test]
    fn suite_names() {
        assert_eq!("dct".parse::<Suite>().unwrap(), Suite::Dct);
        assert!("nope".parse::<Suite>().is_err());
    }
}
