use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bangle_core::curve::Curve;
use bangle_core::harness::{
    arc_from_word, run_corpus, shear_along_word, verify_arc_bangle, verify_word, CorpusConfig,
    VerificationReport,
};
use bangle_core::mutation::{parse_flip_word, Coefficients, Seed};
use bangle_core::poly::PosRational;
use bangle_core::shear::dual_shear;
use bangle_core::snakegraph::{msw_function, SnakeData};
use bangle_core::surface::TaggedTriangulation;
use bangle_core::Result;

#[derive(Parser)]
#[command(name = "bangle", version, about = "Snake graphs, bangle functions and shear coordinates on triangulated surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoefficientsArg {
    None,
    Principal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    triangulation: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Snake or band graph data and the bangle function of a curve.
    Compute {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum, default_value = "none")]
        coefficients: CoefficientsArg,
    },
    /// Mutate the seed of a triangulation along a flip word.
    Mutate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        flips: String,
        #[arg(long, value_enum, default_value = "none")]
        coefficients: CoefficientsArg,
    },
    /// Flip identities and g = Sh along a flip word for a closed curve.
    VerifyKeylemma {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        flips: String,
    },
    /// Shear vectors along a flip word and the extended-matrix identity.
    VerifyShear {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        flips: String,
    },
    /// Compare arc functions with cluster variables. Without `--curve`,
    /// every arc of the triangulation reached by the word is checked.
    VerifyArc {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long, default_value = "")]
        flips: String,
    },
    /// Run every check over a corpus directory.
    RunCorpus {
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_word: usize,
        #[arg(long, default_value_t = 0)]
        arc_word: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print passing reports too.
        #[arg(long)]
        verbose: bool,
    },
}

fn load_triangulation(path: &PathBuf) -> Result<TaggedTriangulation> {
    TaggedTriangulation::parse(&std::fs::read_to_string(path)?)
}

fn load_curve(path: &PathBuf, t: &TaggedTriangulation) -> Result<Curve> {
    Curve::parse(&std::fs::read_to_string(path)?, t)
}

/// 1-based flip word as typed on the command line.
fn word(s: &str) -> Result<Vec<usize>> {
    Ok(parse_flip_word(s)?.into_iter().map(|k| k + 1).collect())
}

fn vec_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn rational_text(r: &PosRational) -> String {
    match r.to_laurent() {
        Ok(Some(p)) => p.to_string(),
        _ => r.to_string(),
    }
}

fn print_reports(reports: &[VerificationReport], verbose: bool) -> bool {
    let mut ok = true;
    for r in reports {
        ok &= r.pass;
        if verbose || !r.pass {
            println!("{r}");
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!("{} checks, {} failed", reports.len(), failed);
    ok
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Compute {
            common,
            curve,
            coefficients,
        } => {
            let t = load_triangulation(&common.triangulation)?;
            let c = load_curve(&curve, &t)?;
            let principal = matches!(coefficients, CoefficientsArg::Principal);
            let data = SnakeData::compute(&t, &c)?;
            print!("{}", data.graph);
            let glue: Vec<String> = data.graph.glue.iter().map(|g| g.to_string()).collect();
            println!("gluing word: {}", glue.join(" "));
            println!("perfect matchings: {}", data.matchings.len());
            println!("F = {}", data.f_poly);
            println!("g = {}", vec_text(&data.g));
            println!("h = {}", vec_text(&data.h_vector(&t.adjacency_matrix())?));
            println!("Sh = {}", vec_text(&dual_shear(&t, &c)?));
            println!("x = {}", msw_function(&t, &c, principal)?);
            Ok(true)
        }
        Command::Mutate {
            common,
            flips,
            coefficients,
        } => {
            let t = load_triangulation(&common.triangulation)?;
            let coeff = match coefficients {
                CoefficientsArg::None => Coefficients::None,
                CoefficientsArg::Principal => Coefficients::Principal,
            };
            let seed = Seed::initial(t.adjacency_matrix(), coeff).mutate_word(&parse_flip_word(&flips)?)?;
            println!("B = {}", seed.b);
            if !seed.c.is_empty() {
                let rows: Vec<String> = seed.c.iter().map(|r| vec_text(r)).collect();
                println!("C = [{}]", rows.join(", "));
            }
            for (i, x) in seed.x.iter().enumerate() {
                println!("x{} = {}", i + 1, rational_text(x));
            }
            Ok(true)
        }
        Command::VerifyKeylemma {
            common,
            curve,
            flips,
        } => {
            let t = load_triangulation(&common.triangulation)?;
            let c = load_curve(&curve, &t)?;
            let reports = verify_word(&t, &c, &word(&flips)?, "cli");
            Ok(print_reports(&reports, true))
        }
        Command::VerifyShear {
            common,
            curve,
            flips,
        } => {
            let t = load_triangulation(&common.triangulation)?;
            let c = load_curve(&curve, &t)?;
            let w = word(&flips)?;
            let steps = shear_along_word(&t, &c, &w)?;
            let mut ok = true;
            for (i, (sh, pass)) in steps.iter().enumerate() {
                if i == 0 {
                    println!("step 0: Sh = {}", vec_text(sh));
                } else {
                    ok &= pass;
                    let verdict = if *pass { "PASS" } else { "FAIL" };
                    println!("step {i} (flip {}): Sh = {} {verdict}", w[i - 1], vec_text(sh));
                }
            }
            Ok(ok)
        }
        Command::VerifyArc {
            common,
            curve,
            flips,
        } => {
            let t = load_triangulation(&common.triangulation)?;
            let w = word(&flips)?;
            let reports = match curve {
                Some(path) => {
                    let c = load_curve(&path, &t)?;
                    vec![verify_arc_bangle(&t, &c, &w, "cli")?]
                }
                None => (1..=t.n())
                    .map(|l| {
                        let arc = arc_from_word(&t, &w, l)?;
                        verify_arc_bangle(&t, &arc, &w, &format!("arc {l}"))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            Ok(print_reports(&reports, true))
        }
        Command::RunCorpus {
            corpus,
            max_word,
            arc_word,
            format: _,
            verbose,
        } => {
            let reports = run_corpus(&CorpusConfig {
                dir: corpus,
                max_word,
                arc_word,
            })?;
            Ok(print_reports(&reports, verbose))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
