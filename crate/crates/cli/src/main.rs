//! Command-line front end: sample random bipartite graphs, analyze
//! component structure, run planarity and genus certificates, evaluate the
//! limiting constants, and drive the seeded experiments.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use bigenus::genus::{exact_genus_with_ceiling, genus_interval, DEFAULT_ROTATION_CEILING};
use bigenus::graph::{read_graph, write_graph, GraphFile};
use bigenus::harness::{aggregate, run_trials, write_outputs, ExperimentConfig, EXPERIMENT_IDS};
use bigenus::planarity::{is_planar, is_planar_bipartite};
use bigenus::projection::two_centre;
use bigenus::sampler::{sample_binomial_graph, sample_bipartite, SeedSpec};
use bigenus::structure::{classify_components, ClassifierThresholds};
use bigenus::theory::{gamma_const, mu, nu};

#[derive(Parser)]
#[command(
    name = "bigenus",
    version,
    about = "Random bipartite graphs near the planarity threshold: sampling, structure, genus"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample a random graph and write it to a file.
    Sample(SampleArgs),
    /// Component classification and structural observables.
    Analyze(AnalyzeArgs),
    /// 2-centre projection: write H and a JSON report.
    Project(ProjectArgs),
    /// Planarity test; exit code 0 when planar, 1 otherwise.
    Planar(PlanarArgs),
    /// Certified genus interval (bipartite inputs) or the exact
    /// rotation-system oracle.
    Genus(GenusArgs),
    /// Evaluate the limiting constants mu, nu, gamma.
    Constants(ConstantsArgs),
    /// Seeded Monte Carlo experiments.
    Experiment {
        #[command(subcommand)]
        cmd: ExperimentCmd,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Bipartite,
    Simple,
}

#[derive(Args)]
struct SampleArgs {
    /// Which model to sample from.
    #[arg(long, value_enum)]
    model: Model,
    /// N1 size (bipartite model).
    #[arg(long)]
    n1: Option<usize>,
    /// N2 size (bipartite model).
    #[arg(long)]
    n2: Option<usize>,
    /// Vertex count (simple model).
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability.
    #[arg(long)]
    p: f64,
    /// Master seed.
    #[arg(long)]
    seed: u64,
    /// Trial index within the seed's family of streams.
    #[arg(long, default_value_t = 0)]
    trial: u64,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input graph file (bipartite).
    #[arg(long = "in")]
    input: PathBuf,
    /// The sampling probability the balance classification refers to.
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    beta0: f64,
    #[arg(long, default_value_t = 1.0)]
    beta1: f64,
    #[arg(long, default_value_t = 2.0)]
    balance_factor: f64,
    /// Emit the report as JSON (default is a short text summary).
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProjectArgs {
    /// Input graph file (bipartite).
    #[arg(long = "in")]
    input: PathBuf,
    /// Where to write the 2-centre H.
    #[arg(long)]
    out: PathBuf,
    /// Where to write the JSON projection report.
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct PlanarArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct GenusArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Ceiling on the rotation-system search of the exact oracle.
    #[arg(long, default_value_t = DEFAULT_ROTATION_CEILING)]
    exact_max_states: f64,
    /// Force the exact oracle instead of the interval certificate.
    #[arg(long)]
    oracle: bool,
    /// j values for the face bound.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3, 4, 5])]
    j_range: Vec<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstFn {
    Mu,
    Nu,
    Gamma,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct ConstantsArgs {
    #[command(subcommand)]
    table: Option<ConstantsSub>,
    /// Which constant to evaluate.
    #[arg(long = "fn", value_enum)]
    func: Option<ConstFn>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ConstantsSub {
    /// Tabulate nu and gamma over a (d, lambda) grid as CSV.
    Table {
        #[arg(long, value_delimiter = ',')]
        d_grid: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        lambda_grid: Vec<f64>,
        /// Accepted for compatibility; output is always CSV on stdout.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Run a configured experiment and write report.json, trials.csv, and
    /// config.resolved.json.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the built-in experiment ids.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Sample(args) => {
            let graph = match args.model {
                Model::Bipartite => {
                    let (Some(n1), Some(n2)) = (args.n1, args.n2) else {
                        bail!("--model bipartite needs --n1 and --n2");
                    };
                    GraphFile::Bipartite(sample_bipartite(
                        n1,
                        n2,
                        args.p,
                        SeedSpec::new(args.seed, args.trial),
                    )?)
                }
                Model::Simple => {
                    let Some(n) = args.n else {
                        bail!("--model simple needs --n");
                    };
                    GraphFile::Simple(sample_binomial_graph(
                        n,
                        args.p,
                        SeedSpec::new(args.seed, args.trial),
                    )?)
                }
            };
            write_graph(&args.out, &graph)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Analyze(args) => {
            let GraphFile::Bipartite(g) = read_graph(&args.input)? else {
                bail!("analyze expects a bipartite graph file");
            };
            let th = ClassifierThresholds {
                beta0: args.beta0,
                beta1: args.beta1,
                balance_factor: args.balance_factor,
            };
            let (_, report) = classify_components(&g, args.p, &th)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "kappa {} = tree {} + unicyclic {} + complex {}; isolated {}; \
                     small balanced trees {}; largest |C∩N1| {} (second {}); \
                     S = {}; e = {}, v = {}",
                    report.kappa,
                    report.kappa_tree,
                    report.kappa_unicyclic,
                    report.kappa_complex,
                    report.kappa_isolated,
                    report.kappa_small_balanced_tree,
                    report.largest_n1_intersection,
                    report.second_largest_n1_intersection,
                    report.s_paths,
                    report.edge_count,
                    report.vertex_count,
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Project(args) => {
            let GraphFile::Bipartite(g) = read_graph(&args.input)? else {
                bail!("project expects a bipartite graph file");
            };
            let rep = two_centre(&g);
            write_graph(&args.out, &GraphFile::Simple(rep.h.clone()))?;
            let mut text = serde_json::to_string_pretty(&rep.summary(&g))?;
            text.push('\n');
            std::fs::write(&args.report, text)
                .with_context(|| format!("writing {}", args.report.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Planar(args) => {
            let planar = match read_graph(&args.input)? {
                GraphFile::Bipartite(g) => is_planar_bipartite(&g),
                GraphFile::Simple(g) => is_planar(&g),
            };
            println!("{}", serde_json::json!({ "planar": planar }));
            Ok(if planar {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Genus(args) => {
            let file = read_graph(&args.input)?;
            if args.oracle {
                let genus = match &file {
                    GraphFile::Bipartite(g) => exact_genus_with_ceiling(
                        &bigenus::graph::flatten_bipartite(g),
                        args.exact_max_states,
                    )?,
                    GraphFile::Simple(g) => exact_genus_with_ceiling(g, args.exact_max_states)?,
                };
                if args.json {
                    println!("{}", serde_json::json!({ "exact_genus": genus }));
                } else {
                    println!("exact genus {genus}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let GraphFile::Bipartite(g) = &file else {
                bail!("the interval certificate needs a bipartite input; use --oracle for simple graphs");
            };
            let iv = genus_interval(g, &args.j_range)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&iv)?);
            } else {
                println!(
                    "genus in [{}, {}], point estimate {:.2}, face bound {} at j = {}",
                    iv.lower, iv.upper, iv.point_estimate, iv.face_upper_bound, iv.j_star
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Constants(args) => {
            if let Some(ConstantsSub::Table {
                d_grid,
                lambda_grid,
                tol,
                ..
            }) = args.table
            {
                println!("d,lambda,nu,nu_tail,nu_converged,gamma,gamma_tail,gamma_converged");
                for &d in &d_grid {
                    for &lambda in &lambda_grid {
                        let n = nu(d, lambda, tol)?;
                        let g = gamma_const(d, lambda, tol)?;
                        println!(
                            "{d},{lambda},{},{},{},{},{},{}",
                            n.value, n.tail_bound, n.converged, g.value, g.tail_bound, g.converged
                        );
                    }
                }
                return Ok(ExitCode::SUCCESS);
            }
            let Some(func) = args.func else {
                bail!("constants needs --fn mu|nu|gamma (or the `table` subcommand)");
            };
            let Some(d) = args.d else {
                bail!("constants needs --d");
            };
            let res = match func {
                ConstFn::Mu => mu(d, args.tol)?,
                ConstFn::Nu => nu(d, args.lambda, args.tol)?,
                ConstFn::Gamma => gamma_const(d, args.lambda, args.tol)?,
            };
            if args.json {
                println!("{}", serde_json::to_string_pretty(&res)?);
            } else {
                println!(
                    "value {} (tail bound {}, {} terms, converged: {})",
                    res.value, res.tail_bound, res.terms_used, res.converged
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Experiment { cmd } => match cmd {
            ExperimentCmd::List => {
                for id in EXPERIMENT_IDS {
                    println!("{}", id.name());
                }
                Ok(ExitCode::SUCCESS)
            }
            ExperimentCmd::Run { config, out } => {
                let text = std::fs::read_to_string(&config)
                    .with_context(|| format!("reading {}", config.display()))?;
                let cfg: ExperimentConfig = serde_json::from_str(&text)?;
                let records = run_trials(&cfg)?;
                let report = aggregate(&records, &cfg)?;
                write_outputs(&out, &report, &records)?;
                for check in &report.checks {
                    println!(
                        "{} {}: observed {} vs bound {}",
                        if check.pass { "PASS" } else { "FAIL" },
                        check.name,
                        check.observed,
                        check.bound
                    );
                }
                println!(
                    "wrote {}, {} trial errors",
                    out.join("report.json").display(),
                    report.trial_errors
                );
                Ok(if report.all_checks_pass() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
    }
}
