//! `subreco` command-line front end.
//!
//! Exit status: 0 feasible/ok, 1 infeasible, 2 inconclusive (budget),
//! 3 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use subreco::check::{check_monotone, check_submodular, CheckMode, CheckVerdict, EXHAUSTIVE_LIMIT};
use subreco::experiment::Outcome;
use subreco::instance::{options_for_file, BuildOptions, ThetaSpec};
use subreco::io::{load_cnf, load_edge_list, load_sequence_csv, ProbabilityMode};
use subreco::oracles::SatAssignment;
use subreco::reductions::{
    inapprox_gadget_spec, minvc_to_usreco_tjar_spec, nae3sat_to_usreco_tar_spec,
    obs52_instance_spec, obs54_instance_spec, obs55_instance_spec, sat_reconfig_to_vc_reconfig,
    vc_to_msreco_spec, VcReconfigInstance,
};
use subreco::{
    load_instance, run_experiment, total_curvature, validate_sequence, AdjacencyRule, Algorithm,
    Error, ExperimentConfig, InstanceSpec, Result, Subset, Verdict,
};

const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "subreco", version, about = "Submodular reconfiguration solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Settings that override the instance file.
#[derive(Args, Clone, Debug, Default)]
struct Overrides {
    /// Adjacency rule: tj, tar or tjar.
    #[arg(long)]
    rule: Option<AdjacencyRule>,
    /// Absolute threshold.
    #[arg(long, conflicts_with = "theta_frac")]
    theta: Option<f64>,
    /// Threshold as a fraction of min{f(X), f(Y)}.
    #[arg(long)]
    theta_frac: Option<f64>,
    /// Interchangeable endpoint size, or fixed cardinality.
    #[arg(long)]
    k: Option<usize>,
    /// Seed for RR-set sampling.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of RR sets to sample.
    #[arg(long)]
    rr_count: Option<usize>,
}

impl Overrides {
    fn theta(&self) -> Option<ThetaSpec> {
        match (self.theta, self.theta_frac) {
            (Some(t), _) => Some(ThetaSpec::value(t)),
            (None, Some(r)) => Some(ThetaSpec::fraction(r)),
            (None, None) => None,
        }
    }

    fn build_options(&self, instance: &Path) -> Result<BuildOptions> {
        if self.rr_count == Some(0) {
            return Err(Error::invalid("--rr-count must be positive"));
        }
        let mut opts = options_for_file(instance);
        opts.seed = self.seed;
        opts.rr_count = self.rr_count;
        Ok(opts)
    }

    fn config(&self, instance: &Path, algorithm: Algorithm) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::new(load_instance(instance)?, algorithm);
        cfg.build = self.build_options(instance)?;
        cfg.rule = self.rule;
        cfg.theta = self.theta();
        cfg.k = self.k;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolveAlgorithm {
    Swap,
    Tjar,
    Astar,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Generator {
    Obs52,
    Obs54,
    Obs55,
    #[value(name = "vc2msreco")]
    VcToMsreco,
    #[value(name = "minvc2tjar")]
    MinvcToTjar,
    #[value(name = "nae2tar")]
    NaeToTar,
    #[value(name = "sat2vc")]
    SatToVc,
    Gadget,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    Submodular,
    Monotone,
}

#[derive(Subcommand)]
enum Command {
    /// Run swap, tjar or A* on an instance.
    Solve {
        algorithm: SolveAlgorithm,
        instance: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        /// A* expansion budget (default 2^min(n, 24)).
        #[arg(long)]
        budget: Option<u64>,
        /// Write the step CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force optimal (or shortest feasible, with a threshold) sequence.
    Exact {
        instance: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a sequence CSV against an instance.
    Validate {
        instance: PathBuf,
        sequence: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Write a generated instance file.
    Gen {
        generator: Generator,
        /// Ground set size for obs54.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Edge list for the vertex cover generators.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// One-indexed cover, e.g. "1,2".
        #[arg(long)]
        cx: Option<String>,
        #[arg(long)]
        cy: Option<String>,
        /// DIMACS formula for the SAT generators.
        #[arg(long)]
        cnf: Option<PathBuf>,
        /// Assignment as a T/F string, e.g. "TTF".
        #[arg(long)]
        sx: Option<String>,
        #[arg(long)]
        sy: Option<String>,
        /// Instance whose oracle the gadget wraps.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        upsilon: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Total curvature of the instance's function.
    Curvature {
        instance: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        rr_count: Option<usize>,
    },
    /// Verify submodularity or monotonicity.
    Check {
        property: Property,
        instance: PathBuf,
        /// Random local checks instead of the full lattice.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        rr_count: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Solve {
            algorithm,
            instance,
            overrides,
            budget,
            out,
        } => {
            let algorithm = match algorithm {
                SolveAlgorithm::Swap => Algorithm::Swap,
                SolveAlgorithm::Tjar => Algorithm::Tjar,
                SolveAlgorithm::Astar => Algorithm::Astar,
            };
            let mut cfg = overrides.config(&instance, algorithm)?;
            cfg.budget = budget;
            report(&cfg, out.as_deref())
        }
        Command::Exact {
            instance,
            overrides,
            out,
        } => report(
            &overrides.config(&instance, Algorithm::Exact)?,
            out.as_deref(),
        ),
        Command::Validate {
            instance,
            sequence,
            overrides,
        } => {
            let cfg = overrides.config(&instance, Algorithm::Exact)?;
            let inst = cfg.effective_spec().build(&cfg.build)?;
            let seq = load_sequence_csv(&sequence, inst.universe_size())?;
            match validate_sequence(&inst, &seq)? {
                Verdict::Ok => {
                    let value = subreco::sequence_value(&inst.oracle, &seq)?;
                    println!("valid length={} value={value}", seq.length());
                    Ok(0)
                }
                Verdict::Fail(v) => {
                    println!("invalid: {v}");
                    Ok(1)
                }
            }
        }
        Command::Gen {
            generator,
            n,
            graph,
            cx,
            cy,
            cnf,
            sx,
            sy,
            base,
            upsilon,
            out,
        } => {
            let spec = generate(generator, n, graph, cx, cy, cnf, sx, sy, base, upsilon)?;
            let text = spec.to_toml()?;
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Curvature {
            instance,
            seed,
            rr_count,
        } => {
            let f = build_oracle(&instance, seed, rr_count)?;
            let start = f.calls();
            let kappa = total_curvature(&f)?;
            println!("curvature={kappa} oracle_calls={}", f.calls() - start);
            Ok(0)
        }
        Command::Check {
            property,
            instance,
            samples,
            seed,
            rr_count,
        } => {
            let f = build_oracle(&instance, seed, rr_count)?;
            let mode = match samples {
                None if f.universe_size() <= EXHAUSTIVE_LIMIT => CheckMode::Exhaustive,
                None => {
                    return Err(Error::invalid(format!(
                        "ground set exceeds {EXHAUSTIVE_LIMIT}; pass --samples and --seed"
                    )))
                }
                Some(samples) => CheckMode::Sampled {
                    samples,
                    seed: seed.ok_or_else(|| Error::invalid("sampled checks need --seed"))?,
                },
            };
            let verdict = match property {
                Property::Submodular => check_submodular(&f, mode)?,
                Property::Monotone => check_monotone(&f, mode)?,
            };
            match verdict {
                CheckVerdict::Ok => {
                    println!("ok");
                    Ok(0)
                }
                CheckVerdict::Violated(c) => {
                    println!("violated: {c:?}");
                    Ok(1)
                }
            }
        }
    }
}

fn build_oracle(
    instance: &Path,
    seed: Option<u64>,
    rr_count: Option<usize>,
) -> Result<subreco::Oracle> {
    let overrides = Overrides {
        seed,
        rr_count,
        ..Overrides::default()
    };
    load_instance(instance)?
        .oracle
        .build(&overrides.build_options(instance)?)
}

fn report(cfg: &ExperimentConfig, out: Option<&Path>) -> Result<u8> {
    let r = run_experiment(cfg)?;
    match out {
        Some(path) => write_file(path, &r.csv())?,
        None => print!("{}", r.csv()),
    }
    eprintln!("{}", r.summary());
    Ok(match r.outcome {
        Outcome::Feasible => 0,
        Outcome::Infeasible => 1,
        Outcome::Inconclusive => 2,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::invalid(format!("this generator needs {flag}")))
}

fn parse_assignment(text: &str, n: usize) -> Result<SatAssignment> {
    let bits = text
        .trim()
        .chars()
        .map(|c| match c {
            'T' | 't' | '1' => Ok(true),
            'F' | 'f' | '0' => Ok(false),
            other => Err(Error::invalid(format!(
                "bad assignment character `{other}`"
            ))),
        })
        .collect::<Result<Vec<bool>>>()?;
    if bits.len() != n {
        return Err(Error::invalid(format!(
            "assignment has {} values, formula has {n} variables",
            bits.len()
        )));
    }
    Ok(SatAssignment(bits))
}

#[allow(clippy::too_many_arguments)]
fn generate(
    generator: Generator,
    n: usize,
    graph: Option<PathBuf>,
    cx: Option<String>,
    cy: Option<String>,
    cnf: Option<PathBuf>,
    sx: Option<String>,
    sy: Option<String>,
    base: Option<PathBuf>,
    upsilon: Option<f64>,
) -> Result<InstanceSpec> {
    let vc_instance = || -> Result<VcReconfigInstance> {
        let g = load_edge_list(
            &required(graph.clone(), "--graph")?,
            false,
            ProbabilityMode::Weight,
        )?;
        let nv = g.vertex_count();
        let cx = Subset::parse_with_offset(nv, &required(cx.clone(), "--cx")?, 1)?;
        let cy = Subset::parse_with_offset(nv, &required(cy.clone(), "--cy")?, 1)?;
        VcReconfigInstance::new(g, cx, cy)
    };
    let sat_inputs = || -> Result<_> {
        let phi = load_cnf(&required(cnf.clone(), "--cnf")?)?;
        let a = parse_assignment(&required(sx.clone(), "--sx")?, phi.num_vars())?;
        let b = parse_assignment(&required(sy.clone(), "--sy")?, phi.num_vars())?;
        Ok((phi, a, b))
    };
    match generator {
        Generator::Obs52 => Ok(obs52_instance_spec()),
        Generator::Obs54 => obs54_instance_spec(n),
        Generator::Obs55 => Ok(obs55_instance_spec()),
        Generator::VcToMsreco => Ok(vc_to_msreco_spec(&vc_instance()?)),
        Generator::MinvcToTjar => Ok(minvc_to_usreco_tjar_spec(&vc_instance()?)),
        Generator::NaeToTar => {
            let (phi, a, b) = sat_inputs()?;
            nae3sat_to_usreco_tar_spec(&phi, &a, &b)
        }
        Generator::SatToVc => {
            let (phi, a, b) = sat_inputs()?;
            Ok(vc_to_msreco_spec(&sat_reconfig_to_vc_reconfig(
                &phi, &a, &b,
            )?))
        }
        Generator::Gadget => {
            let base = required(base, "--base")?;
            let upsilon = required(upsilon, "--upsilon")?;
            let spec = load_instance(&base)?;
            inapprox_gadget_spec(spec.oracle, upsilon, &options_for_file(&base))
        }
    }
}
