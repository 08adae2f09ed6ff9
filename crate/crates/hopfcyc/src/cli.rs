//! Batch front end: parse and compile presentations, certify structures,
//! run the invariant homology computations and theorem comparisons, emit
//! tables and certificates.
//!
//! Exit codes: 0 on success, 1 when a verification reports an inequality or
//! violated axiom, 2 on usage or input errors. Diagnostics go to stderr;
//! outputs are deterministic across runs.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::bundle::{load_bundle, resolve, Resolved};
use crate::cotriple::{
    check_comatched_pair, coinvariant_cochain_module, compare_reduced_cocyclic,
};
use crate::cyclic::DEFAULT_DIMENSION_BUDGET;
use crate::error::{Error, Result};
use crate::homology::{cyclic_homology, hochschild_homology, periodic_homology};
use crate::hopf::HopfAlgebra;
use crate::presentation;
use crate::report::{grid_to_csv, read_hopf_text, write_hopf_text, CheckReport, DimensionTable};
use crate::smash::{
    build_cylindrical, certify_cylindrical, diagonal_vs_invariant, ez_compare,
    spectral_sequence,
};
use crate::triple::{
    check_matched_pair, coinvariant_chain_module, compare_reduced_with_coinvariants,
    morita_compare,
};

#[derive(Parser)]
#[command(
    name = "hopfcyc",
    about = "Exact invariant cyclic homology of Hopf (co)triples",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Dimension budget per chain degree.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seed for the randomized property suites (mutation fuzzing).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .hopf presentation and print its normalized form.
    Parse { file: PathBuf },
    /// Compile a finite presentation to structure constants.
    Compile {
        file: PathBuf,
        /// Output path for the structure-constant text (stdout otherwise).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify the Hopf axioms of a presentation or structure file.
    Check {
        file: PathBuf,
        /// Corrupt this many random structure constants; each mutation must
        /// flip at least one axiom.
        #[arg(long, default_value_t = 0)]
        fuzz: usize,
    },
    /// Invariant cyclic homology of a Hopf triple bundle.
    Triple {
        bundle: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Invariant cyclic cohomology of a Hopf cotriple bundle.
    Cotriple {
        bundle: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Cylindrical module, EZ comparison and spectral sequence of a smash
    /// product bundle.
    Smash {
        bundle: PathBuf,
        #[arg(long)]
        pmax: Option<usize>,
        #[arg(long)]
        qmax: Option<usize>,
    },
    /// Reference computations: bar-complex homology and decompositions.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
    /// Theorem comparisons; exit code 1 reports an inequality.
    Compare {
        #[command(subcommand)]
        what: CompareCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Hopf homology H_n(H, M) via the bar complex.
    HopfHomology {
        bundle: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Hopf cohomology H^n(H, V) via the explicit cochain complex.
    HopfCohomology {
        bundle: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Decomposition theorem check (cocommutative homological or
    /// commutative cohomological, chosen by the bundle kind).
    Decompose {
        bundle: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CompareCommand {
    /// Morita invariance: HC of (H,H,M) against (M_k(H),H,M).
    Morita {
        bundle: PathBuf,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Eilenberg-Zilber: total vs diagonal cyclic homology of the smash
    /// cylindrical module.
    Ez {
        bundle: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Reduced model against the coinvariant subspace construction.
    Reduced {
        bundle: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Diagonal of the cylindrical module against the invariant chains.
    Diagonal {
        bundle: PathBuf,
        #[arg(long)]
        nmax: Option<usize>,
    },
}

/// Run the CLI; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version on stdout with success
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn emit_report(cli: &Cli, report: &CheckReport) -> Result<()> {
    let text = report.to_json();
    match &cli.report {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent()
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| PathBuf::from("."))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let budget = cli.budget.unwrap_or(DEFAULT_DIMENSION_BUDGET);
    match &cli.command {
        Command::Parse { file } => {
            let text = std::fs::read_to_string(file)?;
            let p = presentation::parse(&text)?;
            println!("generators: {}", p.generators.join(" "));
            println!("field: {}", p.field);
            println!("rules: {}", p.rules.len());
            for r in &p.rules {
                println!(
                    "  {} -> {}",
                    p.word_to_string(&r.lhs),
                    p.combination_to_string(&r.rhs)
                );
            }
            for (g, d) in p.coproducts.iter().enumerate() {
                let terms: Vec<String> = d
                    .0
                    .iter()
                    .map(|((a, b), c)| {
                        format!(
                            "({c})*{}|{}",
                            p.word_to_string(a),
                            p.word_to_string(b)
                        )
                    })
                    .collect();
                println!("coproduct {} = {}", p.generators[g], terms.join(" + "));
            }
            Ok(Outcome::Pass)
        }
        Command::Compile { file, output } => {
            let text = std::fs::read_to_string(file)?;
            let p = presentation::parse(&text)?;
            let h = presentation::compile(&p, presentation::DEFAULT_BASIS_BOUND)?;
            let cert = h.check_hopf();
            let body = write_hopf_text(&h);
            match output {
                Some(path) => std::fs::write(path, &body)?,
                None => print!("{body}"),
            }
            if !cert.ok() {
                eprintln!("axiom violations: {:?}", cert.violations);
                return Ok(Outcome::Fail);
            }
            eprintln!("compiled: dimension {}, all Hopf axioms pass", h.dim());
            Ok(Outcome::Pass)
        }
        Command::Check { file, fuzz } => {
            let h = load_hopf(file)?;
            let cert = h.check_hopf();
            let mut witnesses = cert.violations.clone();
            let mut undetected = 0usize;
            if *fuzz > 0 {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
                for _ in 0..*fuzz {
                    let mutated = mutate_structure(&h, &mut rng);
                    if mutated.check_hopf().ok() {
                        undetected += 1;
                        witnesses.push("a mutation went undetected".to_string());
                    }
                }
            }
            let passed = cert.ok() && undetected == 0;
            let report = CheckReport {
                kind: "hopf-axioms".to_string(),
                passed,
                certificates: json!({
                    "dimension": h.dim(),
                    "violations": cert.violations,
                    "mutations_tested": fuzz,
                    "mutations_undetected": undetected,
                }),
                witnesses,
            };
            emit_report(cli, &report)?;
            Ok(if passed { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Triple { bundle, nmax } => {
            let mut b = load_bundle(bundle)?;
            if let Some(n) = nmax {
                b.nmax = Some(*n);
            }
            if cli.budget.is_some() {
                b.budget = Some(budget);
            }
            let Resolved::Triple {
                triple,
                n_max,
                budget,
            } = resolve(&b, &base_dir(bundle))?
            else {
                return Err(Error::structure("bundle kind is not `triple`"));
            };
            let pair = check_matched_pair(&triple.hopf, &triple.module, &triple.sigma)?;
            let coinv = coinvariant_chain_module(&triple, n_max, budget, pair.compatible())?;
            let (table, status) = match &coinv.module {
                Some(m) => {
                    let hh = hochschild_homology(m)?;
                    let hc = cyclic_homology(m)?;
                    let hp = periodic_homology(m, 1).ok();
                    (
                        DimensionTable::assemble(
                            "invariant cyclic homology",
                            n_max,
                            Some(&hh),
                            Some(&hc),
                            hp.as_deref(),
                        ),
                        format!("{:?}", m.status),
                    )
                }
                None => (
                    DimensionTable::assemble("coinvariant dims only", n_max, None, None, None),
                    "operators do not restrict".to_string(),
                ),
            };
            print!("{}", table.to_csv());
            let report = CheckReport {
                kind: "triple".to_string(),
                passed: pair.compatible(),
                certificates: json!({
                    "matched_pair": {
                        "sigma_fixes_module": pair.sigma_fixes_module,
                        "involution": pair.involution,
                    },
                    "status": status,
                    "coinvariant_dims": coinv.dims(),
                    "n_max": n_max,
                }),
                witnesses: coinv.restriction_failures.clone(),
            };
            emit_report(cli, &report)?;
            Ok(Outcome::Pass)
        }
        Command::Cotriple { bundle, nmax } => {
            let mut b = load_bundle(bundle)?;
            if let Some(n) = nmax {
                b.nmax = Some(*n);
            }
            let Resolved::Cotriple {
                cotriple,
                n_max,
                budget,
            } = resolve(&b, &base_dir(bundle))?
            else {
                return Err(Error::structure("bundle kind is not `cotriple`"));
            };
            let pair =
                check_comatched_pair(&cotriple.hopf, &cotriple.comodule, &cotriple.delta)?;
            let coinv =
                coinvariant_cochain_module(&cotriple, n_max, budget, pair.compatible())?;
            match &coinv.module {
                Some(m) => {
                    let hh = hochschild_homology(m)?;
                    let hc = cyclic_homology(m)?;
                    let table = DimensionTable::assemble(
                        "invariant cyclic cohomology",
                        n_max,
                        Some(&hh),
                        Some(&hc),
                        None,
                    );
                    print!("{}", table.to_csv());
                }
                None => eprintln!("operators do not descend; only quotient dims computed"),
            }
            let report = CheckReport {
                kind: "cotriple".to_string(),
                passed: pair.compatible(),
                certificates: json!({
                    "comatched_pair": {
                        "delta_fixes_comodule": pair.delta_fixes_comodule,
                        "involution": pair.involution,
                    },
                    "quotient_dims": coinv.dims(),
                    "n_max": n_max,
                }),
                witnesses: coinv.descent_failures.clone(),
            };
            emit_report(cli, &report)?;
            Ok(Outcome::Pass)
        }
        Command::Smash { bundle, pmax, qmax } => {
            let b = load_bundle(bundle)?;
            let Resolved::Smash {
                smash,
                module,
                sigma,
                p_max,
                q_max,
                n_max: _,
                budget,
            } = resolve(&b, &base_dir(bundle))?
            else {
                return Err(Error::structure("bundle kind is not `smash`"));
            };
            let p_max = pmax.unwrap_or(p_max);
            let q_max = qmax.unwrap_or(q_max);
            let x = build_cylindrical(&smash, &module, &sigma, p_max, q_max, budget)?;
            let cyl = certify_cylindrical(&x)?;
            let ez = ez_compare(&x)?;
            let ss = spectral_sequence(&smash, &module, &sigma, p_max, q_max, budget)?;
            print!("{}", grid_to_csv("E1", &ss.e1));
            print!("{}", grid_to_csv("E2", &ss.e2));
            let passed = cyl.ok() && ez.equal && ss.e1 == ss.e1_oracle;
            let report = CheckReport {
                kind: "smash".to_string(),
                passed,
                certificates: json!({
                    "cylindrical": {
                        "columns": cyl.column_failures,
                        "rows": cyl.row_failures,
                        "commutation": cyl.commutation_failures,
                        "twist_identity": cyl.twist_identity,
                    },
                    "ez": { "tot": ez.tot_hc, "diagonal": ez.diagonal_hc, "equal": ez.equal },
                    "e1_matches_bar_oracle": ss.e1 == ss.e1_oracle,
                    "p_max": p_max,
                    "q_max": q_max,
                }),
                witnesses: Vec::new(),
            };
            emit_report(cli, &report)?;
            Ok(if passed { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Oracle { what } => oracle_command(cli, what, budget),
        Command::Compare { what } => compare_command(cli, what, budget),
    }
}

fn oracle_command(cli: &Cli, what: &OracleCommand, _budget: usize) -> Result<Outcome> {
    match what {
        OracleCommand::HopfHomology { bundle, nmax } => {
            let mut b = load_bundle(bundle)?;
            if let Some(n) = nmax {
                b.nmax = Some(*n);
            }
            let Resolved::Triple {
                triple,
                n_max,
                budget,
            } = resolve(&b, &base_dir(bundle))?
            else {
                return Err(Error::structure("oracle hopf-homology needs a triple bundle"));
            };
            let dims =
                crate::oracle::hopf_homology(&triple.hopf, &triple.module, n_max, budget)?;
            let table =
                DimensionTable::assemble("hopf homology", n_max, Some(&dims), None, None);
            print!("{}", table.to_csv());
            Ok(Outcome::Pass)
        }
        OracleCommand::HopfCohomology { bundle, nmax } => {
            let mut b = load_bundle(bundle)?;
            if let Some(n) = nmax {
                b.nmax = Some(*n);
            }
            let Resolved::Cotriple {
                cotriple,
                n_max,
                budget,
            } = resolve(&b, &base_dir(bundle))?
            else {
                return Err(Error::structure(
                    "oracle hopf-cohomology needs a cotriple bundle",
                ));
            };
            let dims = crate::oracle::hopf_cohomology(
                &cotriple.hopf,
                &cotriple.comodule,
                n_max,
                budget,
            )?;
            let table =
                DimensionTable::assemble("hopf cohomology", n_max, Some(&dims), None, None);
            print!("{}", table.to_csv());
            Ok(Outcome::Pass)
        }
        OracleCommand::Decompose { bundle, nmax } => {
            let mut b = load_bundle(bundle)?;
            if let Some(n) = nmax {
                b.nmax = Some(*n);
            }
            let resolved = resolve(&b, &base_dir(bundle))?;
            let (rep, kind) = match resolved {
                Resolved::Triple {
                    triple,
                    n_max,
                    budget,
                } => (
                    crate::oracle::decomposition_check_cocommutative(
                        &triple.hopf,
                        &triple.module,
                        n_max,
                        budget,
                    )?,
                    "cocommutative decomposition",
                ),
                Resolved::Cotriple {
                    cotriple,
                    n_max,
                    budget,
                } => (
                    crate::oracle::decomposition_check_commutative(
                        &cotriple.hopf,
                        &cotriple.comodule,
                        n_max,
                        budget,
                    )?,
                    "commutative decomposition",
                ),
                Resolved::Smash { .. } => {
                    return Err(Error::structure(
                        "oracle decompose needs a triple or cotriple bundle",
                    ))
                }
            };
            let report = CheckReport {
                kind: kind.to_string(),
                passed: rep.equal,
                certificates: json!({
                    "invariant_hc": rep.invariant_hc,
                    "oracle": rep.oracle_homology,
                    "direct_sum": rep.direct_sum,
                }),
                witnesses: Vec::new(),
            };
            emit_report(cli, &report)?;
            Ok(if rep.equal { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn compare_command(cli: &Cli, what: &CompareCommand, _budget: usize) -> Result<Outcome> {
    match what {
        CompareCommand::Morita { bundle, k, nmax } => {
            let mut b = load_bundle(bundle)?;
            if let Some(n) = nmax {
                b.nmax = Some(*n);
            }
            let Resolved::Triple {
                triple,
                n_max,
                budget,
            } = resolve(&b, &base_dir(bundle))?
            else {
                return Err(Error::structure("compare morita needs a triple bundle"));
            };
            let rep = morita_compare(
                &triple.hopf,
                &triple.module,
                &triple.sigma,
                *k,
                n_max,
                budget,
            )?;
            let report = CheckReport {
                kind: "morita".to_string(),
                passed: rep.equal,
                certificates: json!({
                    "hc_base": rep.hc_base,
                    "hc_matrix": rep.hc_matrix,
                    "k": k,
                }),
                witnesses: Vec::new(),
            };
            emit_report(cli, &report)?;
            Ok(if rep.equal { Outcome::Pass } else { Outcome::Fail })
        }
        CompareCommand::Ez { bundle, nmax } => {
            let b = load_bundle(bundle)?;
            let Resolved::Smash {
                smash,
                module,
                sigma,
                p_max,
                q_max,
                budget,
                ..
            } = resolve(&b, &base_dir(bundle))?
            else {
                return Err(Error::structure("compare ez needs a smash bundle"));
            };
            let n = nmax.unwrap_or(p_max.min(q_max));
            let x = build_cylindrical(&smash, &module, &sigma, n, n, budget)?;
            let rep = ez_compare(&x)?;
            let report = CheckReport {
                kind: "eilenberg-zilber".to_string(),
                passed: rep.equal,
                certificates: json!({ "tot": rep.tot_hc, "diagonal": rep.diagonal_hc }),
                witnesses: Vec::new(),
            };
            emit_report(cli, &report)?;
            Ok(if rep.equal { Outcome::Pass } else { Outcome::Fail })
        }
        CompareCommand::Reduced { bundle, nmax } => {
            let mut b = load_bundle(bundle)?;
            if let Some(n) = nmax {
                b.nmax = Some(*n);
            }
            let resolved = resolve(&b, &base_dir(bundle))?;
            match resolved {
                Resolved::Triple {
                    triple,
                    n_max,
                    budget,
                } => {
                    let rep = compare_reduced_with_coinvariants(
                        &triple.hopf,
                        &triple.module,
                        &triple.sigma,
                        n_max,
                        budget,
                    )?;
                    let passed = rep.ok();
                    let report = CheckReport {
                        kind: "reduced-model".to_string(),
                        passed,
                        certificates: json!({
                            "coinvariant_dims": rep.coinvariant_dims,
                            "reduced_dims": rep.reduced_dims,
                            "theta_eta": rep.theta_eta_identity,
                            "eta_coinvariant": rep.eta_lands_in_coinvariants,
                            "eta_theta": rep.eta_theta_identity_on_coinvariants,
                        }),
                        witnesses: rep.operators_intertwine,
                    };
                    emit_report(cli, &report)?;
                    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
                }
                Resolved::Cotriple {
                    cotriple,
                    n_max,
                    budget,
                } => {
                    let rep = compare_reduced_cocyclic(&cotriple, n_max, budget)?;
                    let passed = rep.ok();
                    let report = CheckReport {
                        kind: "reduced-cocyclic-model".to_string(),
                        passed,
                        certificates: json!({
                            "quotient_dims": rep.quotient_dims,
                            "reduced_dims": rep.reduced_dims,
                            "down_up": rep.down_up_identity,
                            "up_down": rep.up_down_identity,
                        }),
                        witnesses: rep.operators_intertwine,
                    };
                    emit_report(cli, &report)?;
                    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
                }
                Resolved::Smash { .. } => Err(Error::structure(
                    "compare reduced needs a triple or cotriple bundle",
                )),
            }
        }
        CompareCommand::Diagonal { bundle, nmax } => {
            let b = load_bundle(bundle)?;
            let Resolved::Smash {
                smash,
                module,
                sigma,
                n_max,
                budget,
                ..
            } = resolve(&b, &base_dir(bundle))?
            else {
                return Err(Error::structure("compare diagonal needs a smash bundle"));
            };
            let n = nmax.unwrap_or(n_max.min(2));
            let rep = diagonal_vs_invariant(&smash, &module, &sigma, n, budget)?;
            let passed = rep.ok();
            let report = CheckReport {
                kind: "diagonal-vs-invariant".to_string(),
                passed,
                certificates: json!({
                    "phi_psi": rep.phi_psi_identity,
                    "psi_phi": rep.psi_phi_identity,
                    "coinvariant_dims": rep.coinvariant_dims,
                    "diagonal_dims": rep.diagonal_dims,
                }),
                witnesses: rep.operators_intertwine,
            };
            emit_report(cli, &report)?;
            Ok(if passed { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn load_hopf(path: &Path) -> Result<HopfAlgebra> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().and_then(|e| e.to_str()) == Some("hopf") {
        let p = presentation::parse(&text)?;
        presentation::compile(&p, presentation::DEFAULT_BASIS_BOUND)
    } else {
        read_hopf_text(&text)
    }
}

/// Corrupt one random nonzero structure constant (or plant a spurious one).
fn mutate_structure(h: &HopfAlgebra, rng: &mut impl Rng) -> HopfAlgebra {
    let mut out = h.clone();
    let n = h.dim();
    let field = h.field;
    let bump = |c: &crate::scalar::ExactScalar| {
        let two = field.integer(2);
        let shifted = c.mul(&two).add(&field.one());
        if shifted == *c {
            c.add(&field.one())
        } else {
            shifted
        }
    };
    match rng.gen_range(0..4u8) {
        0 => {
            let col = rng.gen_range(0..n * n);
            let mut v = out.mult.column(col).clone();
            if v.is_zero() {
                v = crate::matrix::SparseVec::unit(rng.gen_range(0..n), field);
            } else {
                let k = rng.gen_range(0..v.0.len());
                v.0[k].1 = bump(&v.0[k].1);
            }
            out.mult.set_column(col, v);
        }
        1 => {
            let col = rng.gen_range(0..n);
            let mut v = out.comult.column(col).clone();
            if v.is_zero() {
                v = crate::matrix::SparseVec::unit(rng.gen_range(0..n * n), field);
            } else {
                let k = rng.gen_range(0..v.0.len());
                v.0[k].1 = bump(&v.0[k].1);
            }
            out.comult.set_column(col, v);
        }
        2 => {
            let col = rng.gen_range(0..n);
            let mut v = out.antipode.column(col).clone();
            if v.is_zero() {
                v = crate::matrix::SparseVec::unit(rng.gen_range(0..n), field);
            } else {
                let k = rng.gen_range(0..v.0.len());
                v.0[k].1 = bump(&v.0[k].1);
            }
            out.antipode.set_column(col, v);
        }
        _ => {
            let col = rng.gen_range(0..n);
            let old = out.counit.get(0, col);
            out.counit
                .set_column(col, crate::matrix::SparseVec::from_entries(vec![(0, bump(&old))]));
        }
    }
    out
}
