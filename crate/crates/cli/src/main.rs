//! `mtc`: inspect and verify premodular category data files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use mtc_core::catalog;
use mtc_core::cyclo::{numeric_eval, CycNum};
use mtc_core::doubles::{self, AbelianGroup, DEFAULT_RANK_BUDGET};
use mtc_core::fusion::{dim_category, is_unitary};
use mtc_core::io;
use mtc_core::report::Report;
use mtc_core::structure::{self, FactorMode};
use mtc_core::subcat::{self, SubCat};
use mtc_core::verify::{self, Suite};
use mtc_core::{Error, PremodularData};

#[derive(Parser)]
#[command(name = "mtc", version, about = "Exact premodular and modular category data")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, dimension, modularity and center.
    Info { file: PathBuf },
    /// The S-matrix, exact or as numeric enclosures.
    Smatrix {
        file: PathBuf,
        #[arg(long)]
        numeric: bool,
    },
    /// The center (transparent objects).
    Center { file: PathBuf },
    /// Centralizer of the subcategory generated by some objects.
    Centralizer {
        file: PathBuf,
        /// Comma-separated object labels.
        #[arg(long, value_delimiter = ',', required = true)]
        objects: Vec<String>,
    },
    /// Modularity by trivial center and by det S.
    Modular { file: PathBuf },
    /// The lattice of subcategories.
    Subcats {
        file: PathBuf,
        #[arg(long)]
        modular_only: bool,
    },
    /// Prime factorization of a modular category.
    Factor {
        file: PathBuf,
        /// Every distinct factorization instead of one.
        #[arg(long)]
        all: bool,
        /// Write each prime factor as a data file into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Data file of the Drinfeld double of an abelian group.
    Double {
        /// Cyclic factor orders, e.g. `2,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u32>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Data file with the braiding reversed.
    Reverse {
        file: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Data file of the Deligne product.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all", value_parser = ["lemmas", "dct", "bound", "all"])]
        suite: String,
    },
    /// Modular subcategories of D(Z/p^n).
    ClassifyDouble {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_RANK_BUDGET)]
        budget: usize,
    },
    /// List built-in categories, or print/write one.
    Catalog {
        key: Option<String>,
        #[arg(long, requires = "key")]
        emit: Option<PathBuf>,
    },
}

/// Output text and exit status.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, ok: true }
    }
}

fn load(path: &Path) -> Result<PremodularData, Error> {
    io::load(path)
}

/// Rounds values that print as zero to positive zero.
fn tidy(v: f64) -> f64 {
    if v.abs() < 5e-13 {
        0.0
    } else {
        v
    }
}

fn numeric(x: &CycNum) -> String {
    let b = numeric_eval(x, 53);
    let (re, im) = (tidy(b.re_f64()), tidy(b.im_f64()));
    if im.abs() < 1e-12 && b.radius_f64() < 1e-12 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn info(d: &PremodularData, as_json: bool) -> Result<Outcome, Error> {
    let dim = dim_category(d);
    let v = subcat::is_modular(d)?;
    let center = subcat::center(d);
    if as_json {
        return Ok(Outcome::ok(json_text(&json!({
            "name": d.name(),
            "rank": d.rank(),
            "conductor": d.conductor(),
            "labels": d.labels(),
            "dim": dim.to_strings(),
            "dim_numeric": numeric(&dim),
            "modular": v.modular,
            "center": center.labels(d),
            "unitary": is_unitary(d),
        }))));
    }
    let mut out = String::new();
    writeln!(out, "name: {}", d.name()).unwrap();
    writeln!(out, "rank: {}", d.rank()).unwrap();
    writeln!(out, "conductor: {}", d.conductor()).unwrap();
    writeln!(out, "labels: {}", d.labels().join(", ")).unwrap();
    writeln!(out, "dim: {} ≈ {}", dim, numeric(&dim)).unwrap();
    writeln!(out, "modular: {}", if v.modular { "yes" } else { "no" }).unwrap();
    writeln!(out, "center: {}", center.display(d)).unwrap();
    writeln!(out, "unitary: {}", if is_unitary(d) { "yes" } else { "no" }).unwrap();
    Ok(Outcome::ok(out))
}

fn smatrix(d: &PremodularData, use_numeric: bool, as_json: bool) -> Outcome {
    let r = d.rank();
    if as_json {
        let rows: Vec<Vec<Value>> = (0..r)
            .map(|x| {
                (0..r)
                    .map(|y| {
                        let s = d.s(x, y);
                        if use_numeric {
                            let b = numeric_eval(s, 53);
                            json!({"re": tidy(b.re_f64()), "im": tidy(b.im_f64()), "radius": b.radius_f64()})
                        } else {
                            json!(s.to_strings())
                        }
                    })
                    .collect()
            })
            .collect();
        return Outcome::ok(json_text(&json!({
            "labels": d.labels(),
            "conductor": d.conductor(),
            "S": rows,
        })));
    }
    let mut out = String::new();
    for x in 0..r {
        for y in 0..r {
            let s = d.s(x, y);
            if use_numeric {
                let b = numeric_eval(s, 53);
                writeln!(
                    out,
                    "S({},{}) = {:.12} {:+.12}i ± {:.1e}",
                    d.label(x),
                    d.label(y),
                    tidy(b.re_f64()),
                    tidy(b.im_f64()),
                    b.radius_f64()
                )
                .unwrap();
            } else {
                writeln!(out, "S({},{}) = {}", d.label(x), d.label(y), s).unwrap();
            }
        }
    }
    Outcome::ok(out)
}

fn subcat_text(d: &PremodularData, k: &SubCat, as_json: bool) -> Outcome {
    if as_json {
        Outcome::ok(json_text(&json!(k.labels(d))))
    } else {
        Outcome::ok(format!("{}\n", k.display(d)))
    }
}

fn centralizer(d: &PremodularData, objects: &[String], as_json: bool) -> Result<Outcome, Error> {
    let seeds = objects
        .iter()
        .map(|l| d.index_of(l.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let k = subcat::generated(d, &seeds)?;
    let c = subcat::centralizer(d, &k)?;
    if as_json {
        return Ok(Outcome::ok(json_text(&json!({
            "generated": k.labels(d),
            "centralizer": c.labels(d),
        }))));
    }
    Ok(Outcome::ok(format!("K = {}\nC(K) = {}\n", k.display(d), c.display(d))))
}

fn modular(d: &PremodularData, as_json: bool) -> Result<Outcome, Error> {
    let v = subcat::is_modular(d)?;
    if as_json {
        return Ok(Outcome::ok(json_text(&json!({
            "modular": v.modular,
            "det_s": v.det_s.to_strings(),
            "center": v.center.labels(d),
        }))));
    }
    let det = if v.det_s.is_zero() { "0".to_string() } else { v.det_s.to_string() };
    let head = if v.modular { "modular" } else { "not modular" };
    Ok(Outcome::ok(format!("{head}: det S = {det}; center = {}\n", v.center.display(d))))
}

fn subcats(d: &PremodularData, modular_only: bool, as_json: bool) -> Result<Outcome, Error> {
    let mut rows = Vec::new();
    for k in subcat::enumerate_subcats(d) {
        let m = subcat::is_modular_sub(d, &k)?.modular;
        if modular_only && !m {
            continue;
        }
        rows.push((k.labels(d), k.display(d), k.len(), subcat::dim_subcat(d, &k), m));
    }
    if as_json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(labels, _, rank, dim, m)| {
                json!({"labels": labels, "rank": rank, "dim": dim.to_strings(), "modular": m})
            })
            .collect();
        return Ok(Outcome::ok(json_text(&json!(v))));
    }
    let mut out = String::new();
    for (_, display, rank, dim, m) in &rows {
        let tag = if *m { "modular" } else { "not modular" };
        writeln!(out, "{display} rank {rank} dim {dim} {tag}").unwrap();
    }
    writeln!(out, "{} subcategories", rows.len()).unwrap();
    Ok(Outcome::ok(out))
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn factor(
    d: &PremodularData,
    all: bool,
    emit_dir: Option<&Path>,
    as_json: bool,
) -> Result<Outcome, Error> {
    let mode = if all { FactorMode::All } else { FactorMode::First };
    let results = structure::prime_factorize(d, mode)?;
    if let Some(dir) = emit_dir {
        std::fs::create_dir_all(dir)?;
    }
    let mut text = String::new();
    let mut listing = Vec::new();
    for (i, f) in results.iter().enumerate() {
        if let Err(why) = f.verify(d) {
            return Err(Error::InternalInconsistency(format!("witness check failed: {why}")));
        }
        let mut factors = Vec::new();
        for (j, p) in f.factors.iter().enumerate() {
            let file = match emit_dir {
                Some(dir) => {
                    let path = dir.join(format!("{}-f{}-{}.json", file_stem(d.name()), i + 1, j + 1));
                    io::save(p, &path)?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            factors.push(json!({
                "name": p.name(),
                "rank": p.rank(),
                "labels": p.labels(),
                "file": file,
            }));
        }
        listing.push(json!({"factors": factors}));
        if results.len() > 1 {
            writeln!(text, "factorization {}:", i + 1).unwrap();
        }
        text.push_str(&f.tree_text(d));
    }
    let block = json!({
        "category": d.name(),
        "count": results.len(),
        "factorizations": listing,
    });
    if as_json {
        return Ok(Outcome::ok(json_text(&block)));
    }
    writeln!(text, "{} factorization{}", results.len(), if results.len() == 1 { "" } else { "s" }).unwrap();
    text.push_str(&json_text(&block));
    Ok(Outcome::ok(text))
}

fn emit(d: &PremodularData, to: Option<&Path>) -> Result<Outcome, Error> {
    match to {
        Some(path) => {
            io::save(d, path)?;
            Ok(Outcome::ok(format!("wrote {} ({}, rank {})\n", path.display(), d.name(), d.rank())))
        }
        None => Ok(Outcome::ok(io::to_json_string(d))),
    }
}

fn report_outcome(report: &Report, as_json: bool) -> Outcome {
    let text = if as_json {
        json_text(&report.to_json())
    } else {
        format!(
            "{report}{} passed, {} failed\n",
            report.passed(),
            report.failed()
        )
    };
    Outcome { text, ok: report.all_pass() }
}

fn classify(p: u64, n: u32, budget: usize, as_json: bool) -> Result<Outcome, Error> {
    let c = doubles::classify_modular_subcats_cyclic(p, n, budget)?;
    if as_json {
        return Ok(Outcome { text: json_text(&c.to_json()), ok: c.report.all_pass() });
    }
    let q = p.pow(n);
    let mut out = String::new();
    writeln!(out, "D(Z/{q}): rank {}, {} subcategories", c.rank, c.lattice_size).unwrap();
    if c.modular.is_empty() {
        writeln!(out, "prime: no proper nontrivial modular subcategory").unwrap();
    } else {
        writeln!(out, "{} proper nontrivial modular subcategories:", c.modular.len()).unwrap();
        for m in &c.modular {
            let mult = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
            writeln!(
                out,
                "  α_{} = {{{}}}  centralizer α_{}{}",
                mult(m.multiplier),
                m.labels.join(", "),
                mult(m.centralizer_multiplier),
                if m.prime { "  prime" } else { "" }
            )
            .unwrap();
        }
    }
    let r = report_outcome(&c.report, false);
    out.push_str(&r.text);
    Ok(Outcome { text: out, ok: r.ok })
}

fn catalog_cmd(key: Option<&str>, to: Option<&Path>, as_json: bool) -> Result<Outcome, Error> {
    match key {
        None if as_json => Ok(Outcome::ok(json_text(&json!(catalog::keys())))),
        None => Ok(Outcome::ok(catalog::keys().iter().map(|k| format!("{k}\n")).collect())),
        Some(k) => emit(&catalog::get(k)?, to),
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let j = cli.json;
    match cli.command {
        Command::Info { file } => info(&load(&file)?, j),
        Command::Smatrix { file, numeric } => Ok(smatrix(&load(&file)?, numeric, j)),
        Command::Center { file } => {
            let d = load(&file)?;
            Ok(subcat_text(&d, &subcat::center(&d), j))
        }
        Command::Centralizer { file, objects } => centralizer(&load(&file)?, &objects, j),
        Command::Modular { file } => modular(&load(&file)?, j),
        Command::Subcats { file, modular_only } => subcats(&load(&file)?, modular_only, j),
        Command::Factor { file, all, emit_dir } => factor(&load(&file)?, all, emit_dir.as_deref(), j),
        Command::Double { group, emit: to } => {
            emit(&doubles::drinfeld_double(&AbelianGroup::new(&group)?)?, to.as_deref())
        }
        Command::Reverse { file, emit: to } => emit(&structure::reverse(&load(&file)?)?, to.as_deref()),
        Command::Product { left, right, emit: to } => {
            emit(&structure::deligne_product(&load(&left)?, &load(&right)?)?, to.as_deref())
        }
        Command::Verify { file, suite } => {
            let suite: Suite = suite.parse()?;
            Ok(report_outcome(&verify::run_suite(&load(&file)?, suite)?, j))
        }
        Command::ClassifyDouble { p, n, budget } => classify(p, n, budget, j),
        Command::Catalog { key, emit: to } => catalog_cmd(key.as_deref(), to.as_deref(), j),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
