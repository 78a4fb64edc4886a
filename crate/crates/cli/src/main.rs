use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;

use revform::bounds::{derive_caps, Rational, Template};
use revform::formula::{Budget, Formula, OccurrenceSearch, SearchOutcome, VarBounds, NO_BUDGET};
use revform::freeness::FreenessSpec;
use revform::generator::{enumerate_free, lex_least_free, sample_free, EnumerationSpec};
use revform::morphism::{paper_morphism_21, paper_morphism_9, UniformMorphism};
use revform::replay::{self, CapChoice, ReplayReport, DEFAULT_SOURCE_SPEC};
use revform::word::{encode, Alphabet, Word};

const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "revform", version, about = "Avoidability checks for formulas with reversal")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampling modes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive variable caps from the repetition and directedness bounds.
    Bounds {
        #[arg(long)]
        template: Template,
        #[arg(long)]
        beta: Rational,
        #[arg(long)]
        d: usize,
    },
    /// Run a verification pipeline.
    #[command(subcommand)]
    Replay(ReplayCommand),
    /// Enumerate (beta+, n)-free words.
    Enumerate {
        #[arg(long)]
        alphabet: usize,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Mode::Count)]
        mode: Mode,
    },
    /// Search a word for an occurrence of a formula.
    Find {
        #[arg(long)]
        formula: Formula,
        #[arg(long)]
        word: Word,
        /// Cap on every image length (defaults to the word length).
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Count,
    All,
    LexLeast,
    Sample,
}

#[derive(Args)]
struct NonOccurrenceArgs {
    #[arg(long)]
    source_len: usize,
    /// Use the caps stated with the theorem.
    #[arg(long, conflicts_with = "derived_caps")]
    paper_caps: bool,
    /// Use the caps recomputed from the inequality chain.
    #[arg(long)]
    derived_caps: bool,
    /// Freeness of the source words, as p/q or p/q,n.
    #[arg(long, default_value = DEFAULT_SOURCE_SPEC)]
    source_spec: FreenessSpec,
    #[arg(long, default_value_t = NO_BUDGET)]
    budget: u64,
}

impl NonOccurrenceArgs {
    fn caps(&self) -> CapChoice {
        if self.paper_caps {
            CapChoice::Paper
        } else if self.derived_caps {
            CapChoice::Derived
        } else {
            CapChoice::Max
        }
    }
}

#[derive(Subcommand)]
enum ReplayCommand {
    /// The periodic word over k+1 letters avoids phi_k.
    #[command(name = "thm1-upper")]
    Thm1Upper {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        prefix_len: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
    },
    /// Every long enough word over b letters contains phi_lcm(1..b).
    #[command(name = "thm1-lower")]
    Thm1Lower {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = NO_BUDGET)]
        budget: u64,
    },
    /// xyzy^Ux.zy^Uxy^Uz.y^R in images under the 21-uniform morphism.
    Thm2(NonOccurrenceArgs),
    /// xyzx.yz^Uxy.z^R in images under the 9-uniform morphism.
    Thm3(NonOccurrenceArgs),
    /// psi_k in images under the (k+3)-uniform morphism (exploratory).
    Psi {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        source_len: usize,
        #[arg(long)]
        x_cap: usize,
        #[arg(long, default_value_t = NO_BUDGET)]
        budget: u64,
    },
    /// Longest binary word avoiding xyzy^Ux.zy^Uxy^Uz.
    Nonavoid2 {
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = NO_BUDGET)]
        budget: u64,
    },
    /// Freeness and directedness of the images of all free source words.
    Transfer {
        /// A morphism file, or `paper21` / `paper9`.
        #[arg(long)]
        morphism: String,
        #[arg(long, default_value = DEFAULT_SOURCE_SPEC)]
        source_spec: FreenessSpec,
        #[arg(long)]
        source_len: usize,
        /// Target freeness, as p/q,n.
        #[arg(long)]
        target_spec: FreenessSpec,
        #[arg(long)]
        d: usize,
    },
}

fn load_morphism(spec: &str) -> Result<UniformMorphism> {
    match spec {
        "paper21" => Ok(paper_morphism_21()),
        "paper9" => Ok(paper_morphism_9()),
        path => {
            let path = PathBuf::from(path);
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading morphism file {}", path.display()))?;
            Ok(UniformMorphism::parse_file(&text)?)
        }
    }
}

fn print_report(report: &ReplayReport, json: bool) -> Result<u8> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{report}");
    }
    Ok(report.verdict.exit_code() as u8)
}

fn run_replay(cmd: ReplayCommand, json: bool) -> Result<u8> {
    let report = match cmd {
        ReplayCommand::Thm1Upper { k, prefix_len, cap } => replay::replay_theorem1_upper(k, prefix_len, cap)?,
        ReplayCommand::Thm1Lower { b, max_len, budget } => {
            replay::replay_theorem1_lower(b, max_len, &Budget::new(budget))?
        }
        ReplayCommand::Thm2(a) => replay::replay_thm2(a.source_len, a.caps(), &a.source_spec, &Budget::new(a.budget))?,
        ReplayCommand::Thm3(a) => replay::replay_thm3(a.source_len, a.caps(), &a.source_spec, &Budget::new(a.budget))?,
        ReplayCommand::Psi {
            k,
            source_len,
            x_cap,
            budget,
        } => replay::replay_psi(k, source_len, x_cap, &Budget::new(budget))?,
        ReplayCommand::Nonavoid2 { max_len, budget } => replay::replay_nonavoid2(max_len, &Budget::new(budget))?,
        ReplayCommand::Transfer {
            morphism,
            source_spec,
            source_len,
            target_spec,
            d,
        } => {
            let m = load_morphism(&morphism)?;
            replay::replay_transfer(&m, &source_spec, source_len, &target_spec, d)?
        }
    };
    print_report(&report, json)
}

fn run_enumerate(es: EnumerationSpec, mode: Mode, seed: u64) -> Result<u8> {
    match mode {
        Mode::Count => {
            let stats = enumerate_free(&es, |_| true);
            println!("{}", serde_json::to_string(&stats)?);
        }
        Mode::All => {
            let stats = enumerate_free(&es, |w| {
                println!("{}", encode(w));
                true
            });
            eprintln!("{}", serde_json::to_string(&stats)?);
        }
        Mode::LexLeast => println!("{}", lex_least_free(&es)?),
        Mode::Sample => {
            let mut rng = StdRng::seed_from_u64(seed);
            println!("{}", sample_free(&es, &mut rng)?);
        }
    }
    Ok(0)
}

fn run_find(formula: &Formula, word: &Word, cap: Option<usize>, json: bool) -> Result<u8> {
    let cap = cap.unwrap_or(word.len()).max(1);
    let search = OccurrenceSearch::new(formula, &VarBounds::uniform(formula, cap))?;
    let (outcome, _) = search.find(word.letters());
    match outcome {
        SearchOutcome::Found(a) => {
            if json {
                println!("{}", a.to_json());
            } else {
                for (v, img) in &a.images {
                    println!("{v} -> {img}");
                }
            }
            Ok(0)
        }
        SearchOutcome::NotFound => {
            if json {
                println!("null");
            } else {
                println!("no occurrence");
            }
            Ok(1)
        }
        SearchOutcome::BudgetExhausted => bail!("search budget exhausted"),
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Bounds { template, beta, d } => {
            let report = derive_caps(template, &beta, d)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("template {} beta {} d {}", report.template, report.beta, report.d);
                println!("r = {}  c = {}", report.r, report.c);
                match report.long_var_max {
                    Some(long) => println!("long cap {long}  short cap {}", report.short_var_max),
                    None => println!("no finite bound (r >= 1)  short cap {}", report.short_var_max),
                }
                if let Some(p) = &report.paper_caps {
                    println!(
                        "published: c = {}  long cap {}  short cap {}",
                        p.c, p.long_var_max, p.short_var_max
                    );
                }
            }
            Ok(0)
        }
        Command::Replay(cmd) => run_replay(cmd, cli.json),
        Command::Enumerate {
            alphabet,
            beta,
            n,
            length,
            mode,
        } => {
            let spec = FreenessSpec::parse(&beta, n)?;
            let es = EnumerationSpec::new(Alphabet::new(alphabet)?, spec, length)?;
            run_enumerate(es, mode, cli.seed)
        }
        Command::Find { formula, word, cap } => run_find(&formula, &word, cap, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use revform::replay::Verdict;

    #[test]
    fn verdict_codes() {
        assert_eq!(Verdict::Corroborated.exit_code(), 0);
        assert_eq!(Verdict::Violated.exit_code(), 1);
        assert_eq!(Verdict::Inconclusive.exit_code(), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
