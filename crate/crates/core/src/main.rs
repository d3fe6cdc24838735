//! Command-line front end.
//!
//! Exit codes: 0 success, 1 infeasible, 2 invalid input, 3 oracle budget
//! refused.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use toldom::bounded_ds::SolveOutcome;
use toldom::formats::{self, InstanceFile};
use toldom::hardness;
use toldom::model;
use toldom::oracle::{OracleBudget, OracleError};
use toldom::restricted_ds::{InfeasibleReason, RestrictedOutcome};

#[derive(Parser)]
#[command(name = "toldom", about = "Shadow representations and dominating sets for tolerance graphs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a tolerance or multitolerance instance to its shadow representation
    Convert {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// canonicalize the result (make every point inevitable)
        #[arg(long)]
        canonical: bool,
        /// rescale x-coordinates to restore distinctness, re-checking fidelity
        #[arg(long)]
        perturb: bool,
    },
    /// Print the adjacency matrix of an instance
    Adjacency { input: PathBuf },
    /// Minimum dominating set (points and segments allowed)
    SolveDs {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimum dominating set restricted to segments
    SolveBds {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Segment dominating set with prescribed start- and end-pairs
    SolveRbds {
        input: PathBuf,
        #[arg(long)]
        j: String,
        #[arg(long)]
        j2: String,
        #[arg(long)]
        i: String,
        #[arg(long)]
        i2: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Translate a structured cover instance into a shadow representation
    Reduce {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Map a dominating set of a reduced instance back to a cover
    Backmap {
        /// the cover instance the reduction came from
        instance: PathBuf,
        /// a solution document over the reduced representation
        solution: PathBuf,
    },
    /// Validate a document (and optionally a solution against it)
    Verify {
        input: PathBuf,
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Exhaustive reference solver
    Oracle {
        input: PathBuf,
        /// restrict the candidate pool to segments
        #[arg(long)]
        segments_only: bool,
    },
    /// Generate a random instance
    Gen {
        /// tolerance | multitolerance | s3sc
        kind: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// vertex count (tolerance/multitolerance) or gadget count (s3sc)
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// percentage of unbounded vertices
        #[arg(long, default_value_t = 30)]
        unbounded: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a shadow representation as SVG
    Render {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// draw dotted shadow boundaries
        #[arg(long)]
        shadows: bool,
    },
}

fn read_doc(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    formats::from_json(&text).map_err(|e| anyhow!("parsing {}: {e}", path.display()))
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Load a shadow representation from any instance kind, converting
/// interval models on the fly (with the fidelity cross-check).
fn load_rep(doc: &InstanceFile) -> Result<model::ShadowRepresentation> {
    let rep = match doc {
        InstanceFile::Shadow { .. } => formats::doc_to_shadow(doc)?,
        InstanceFile::Tolerance { .. } => {
            let vs = formats::doc_to_tolerance(doc)?;
            model::verify_tolerance_fidelity(&vs).map_err(|e| anyhow!(e))?
        }
        InstanceFile::Multitolerance { .. } => {
            let vs = formats::doc_to_multitolerance(doc)?;
            model::verify_multitolerance_fidelity(&vs).map_err(|e| anyhow!(e))?
        }
        other => bail!("expected an instance document, found {}", formats::kind_name(other)),
    };
    rep.validate().map_err(|e| anyhow!("invalid representation: {e}"))?;
    Ok(rep)
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Convert { input, output, canonical, perturb } => {
            let doc = read_doc(&input)?;
            let mut rep = match &doc {
                InstanceFile::Tolerance { .. } => {
                    let vs = formats::doc_to_tolerance(&doc)?;
                    model::verify_tolerance_fidelity(&vs).map_err(|e| anyhow!(e))?
                }
                InstanceFile::Multitolerance { .. } => {
                    let vs = formats::doc_to_multitolerance(&doc)?;
                    model::verify_multitolerance_fidelity(&vs).map_err(|e| anyhow!(e))?
                }
                other => bail!("convert expects an interval model, found {}", formats::kind_name(other)),
            };
            if perturb {
                let perturbed = model::perturb_distinct_x(&rep);
                perturbed
                    .validate()
                    .map_err(|e| anyhow!("perturbation rejected: {e}"))?;
                // adjacency must be untouched, else the perturbation broke
                // fidelity with the interval model
                let ids = rep.ids();
                for a in &ids {
                    for b in &ids {
                        if a < b
                            && model::shadow_adjacent(&rep, a, b)?
                                != model::shadow_adjacent(&perturbed, a, b)?
                        {
                            bail!("perturbation rejected: adjacency of ({a}, {b}) changed");
                        }
                    }
                }
                rep = perturbed;
            }
            if canonical {
                rep = model::canonicalize(&rep);
            }
            write_out(&output, &formats::to_json(&formats::shadow_to_doc(&rep)))?;
            Ok(0)
        }
        Command::Adjacency { input } => {
            let rep = load_rep(&read_doc(&input)?)?;
            let ids = rep.ids();
            let mut rows = Vec::new();
            for a in &ids {
                let row: Vec<bool> = ids
                    .iter()
                    .map(|b| a != b && model::shadow_adjacent(&rep, a, b).unwrap())
                    .collect();
                rows.push(row);
            }
            let out = serde_json::json!({ "ids": ids, "matrix": rows });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
        Command::SolveDs { input, output } => {
            let rep = load_rep(&read_doc(&input)?)?;
            if !rep.horizontal {
                bail!("the dominating-set solver requires a horizontal representation");
            }
            let report = toldom::dominating_ds::solve_min_dominating_set(&rep)?;
            let note = report
                .canonicalized
                .then(|| "input canonicalized internally".to_string());
            let doc = formats::solution_doc("ds", &rep, &report.solution, note);
            write_out(&output, &formats::to_json(&doc))?;
            Ok(0)
        }
        Command::SolveBds { input, output } => {
            let rep = load_rep(&read_doc(&input)?)?;
            match toldom::bounded_ds::solve_bounded_ds(&rep)? {
                SolveOutcome::Solution(ids) => {
                    let doc = formats::solution_doc("bds", &rep, &ids, None);
                    write_out(&output, &formats::to_json(&doc))?;
                    Ok(0)
                }
                SolveOutcome::SegmentsDoNotDominate => {
                    let doc = formats::infeasible_doc("bds", "L does not dominate (P,L)");
                    write_out(&output, &formats::to_json(&doc))?;
                    Ok(1)
                }
            }
        }
        Command::SolveRbds { input, j, j2, i, i2, output } => {
            let rep = load_rep(&read_doc(&input)?)?;
            match toldom::restricted_ds::solve_restricted(&rep, &j, &j2, &i, &i2)? {
                RestrictedOutcome::Solution(ids) => {
                    let doc = formats::solution_doc("rbds", &rep, &ids, None);
                    write_out(&output, &formats::to_json(&doc))?;
                    Ok(0)
                }
                RestrictedOutcome::Infeasible(reason) => {
                    let note = match reason {
                        InfeasibleReason::BadElement => "bad-element",
                        InfeasibleReason::PairInfeasible => "pair-infeasible",
                    };
                    let doc = formats::infeasible_doc("rbds", note);
                    write_out(&output, &formats::to_json(&doc))?;
                    Ok(1)
                }
            }
        }
        Command::Reduce { input, output } => {
            let inst = formats::doc_to_s3sc(&read_doc(&input)?)?;
            let out = hardness::reduce_f(&inst)?;
            write_out(&output, &formats::to_json(&formats::shadow_to_doc(&out.rep)))?;
            Ok(0)
        }
        Command::Backmap { instance, solution } => {
            let inst = formats::doc_to_s3sc(&read_doc(&instance)?)?;
            let out = hardness::reduce_f(&inst)?;
            let sol = read_doc(&solution)?;
            let chosen: BTreeSet<String> = match &sol {
                InstanceFile::Solution { vertices, status, .. } if status == "ok" => {
                    vertices.iter().cloned().collect()
                }
                _ => bail!("backmap expects a feasible solution document"),
            };
            let cover = hardness::backmap_g(&inst, &out, &chosen)
                .map_err(|e| anyhow!("backmap failed: {e}"))?;
            let sets = inst.sets();
            let names: Vec<Vec<String>> = cover
                .iter()
                .map(|&c| sets[c].iter().map(|e| e.name()).collect())
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "cover_indices": cover.iter().collect::<Vec<_>>(),
                    "cover_sets": names,
                    "size": cover.len(),
                }))?
            );
            Ok(0)
        }
        Command::Verify { input, solution } => {
            let doc = read_doc(&input)?;
            match &doc {
                InstanceFile::S3sc { .. } => {
                    let inst = formats::doc_to_s3sc(&doc)?;
                    hardness::validate_s3sc(&inst)
                        .map_err(|errs| anyhow!("invalid: {}", errs.join("; ")))?;
                }
                _ => {
                    let rep = load_rep(&doc)?;
                    if let Some(sol_path) = &solution {
                        let sol = read_doc(sol_path)?;
                        formats::verify_solution_doc(&rep, &sol).map_err(|e| anyhow!(e))?;
                    }
                }
            }
            println!("ok");
            Ok(0)
        }
        Command::Oracle { input, segments_only } => {
            let rep = load_rep(&read_doc(&input)?)?;
            let arena = model::Arena::from_representation(&rep).map_err(|e| anyhow!(e))?;
            let view = toldom::bounded_ds::Rep::new(&arena, arena.full_mask());
            let pool = if segments_only { view.seg_mask } else { arena.full_mask() };
            let budget = OracleBudget::from_env();
            match toldom::oracle::brute_min_dominating_set(
                &arena,
                &view,
                pool,
                arena.full_mask(),
                &toldom::oracle::PairConstraints::default(),
                &budget,
            ) {
                Ok(toldom::bounded_ds::DomSolution::Feasible(mask)) => {
                    let ids = arena.ids_of_mask(mask);
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "size": ids.len(),
                            "vertices": ids.iter().collect::<Vec<_>>(),
                        }))?
                    );
                    Ok(0)
                }
                Ok(toldom::bounded_ds::DomSolution::Infeasible) => {
                    println!("infeasible");
                    Ok(1)
                }
                Err(e @ OracleError::TooManyElements(..)) | Err(e @ OracleError::TimeCap(..)) => {
                    eprintln!("refused: {e}");
                    Ok(3)
                }
            }
        }
        Command::Gen { kind, seed, n, unbounded, output } => {
            let doc = match kind.as_str() {
                "tolerance" => {
                    formats::tolerance_to_doc(&toldom::generate::generate_tolerance(seed, n, unbounded))
                }
                "multitolerance" => formats::multitolerance_to_doc(
                    &toldom::generate::generate_multitolerance(seed, n, unbounded),
                ),
                "s3sc" => formats::s3sc_to_doc(&hardness::generate_s3sc(seed, n)),
                other => bail!("unknown kind `{other}` (expected tolerance, multitolerance, s3sc)"),
            };
            write_out(&output, &formats::to_json(&doc))?;
            Ok(0)
        }
        Command::Render { input, output, shadows } => {
            let rep = load_rep(&read_doc(&input)?)?;
            let svg = toldom::svg::render_svg(&rep, shadows);
            std::fs::write(&output, svg)
                .with_context(|| format!("writing {}", output.display()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
