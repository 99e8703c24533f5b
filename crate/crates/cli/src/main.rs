use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use freediv_cli::{
    exit, regress, regression_text, run, to_json, to_text, AnalysisRequest, CliError, Order, Source, Task,
};
use freediv_core::families::{self, parse_manifest, FamilySpec};

#[derive(Parser)]
#[command(name = "freediv", version, about = "Free divisors, Jacobian ideals and blowup algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 300.0)]
    deadline: f64,
    /// Add per-task wall-clock times (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct Input {
    /// Polynomial expression, e.g. "x*y*(x+y)".
    expr: Option<String>,
    /// Comma-separated variable names.
    #[arg(long, value_delimiter = ',')]
    ring: Vec<String>,
    /// Read the expression from a file.
    #[arg(long, conflicts_with = "expr")]
    file: Option<String>,
    /// Use a family member instead, e.g. family1:n=5.
    #[arg(long, conflicts_with_all = ["expr", "file"])]
    family: Option<String>,
    /// Monomial order of the base ring.
    #[arg(long, value_enum, default_value = "grevlex")]
    order: OrderArg,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one polynomial.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Comma-separated subset of divisor, blowup, maxspread, hessian, depth-table, homaloidal.
        #[arg(long, value_delimiter = ',', default_value = "divisor")]
        tasks: Vec<String>,
        /// Largest power for depth tables (default: number of variables).
        #[arg(long)]
        max_power: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a family member and check its expected results.
    Family {
        /// e.g. family1:n=5, family3:alpha=3,beta=2, family4:a=0,1,0,1,0,0,1,0,0, normal_crossing:n=4, example:sextic
        spec: String,
        /// Permit parameters above the default caps.
        #[arg(long)]
        allow_large: bool,
        /// Print the fixture without evaluating its claims.
        #[arg(long)]
        no_check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check every fixture of the corpus (or of a manifest file).
    Regress {
        /// Manifest produced by `freediv manifest`.
        #[arg(long)]
        manifest: Option<String>,
        /// Include fixtures marked slow.
        #[arg(long)]
        include_slow: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print the fixture manifest of the built-in corpus.
    Manifest,
    /// Hessian determinant, its reduced part and that part's freeness.
    HessianExperiment {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
}

fn source(input: &Input) -> Result<Source, CliError> {
    match (&input.expr, &input.file, &input.family) {
        (Some(e), None, None) => Ok(Source::Inline(e.clone())),
        (None, Some(p), None) => Ok(Source::File(p.clone())),
        (None, None, Some(s)) => Ok(Source::Family(s.clone())),
        _ => Err(CliError::usage("give exactly one of an expression, --file or --family")),
    }
}

fn request(input: &Input, tasks: Vec<Task>, max_power: Option<u32>, common: &Common) -> Result<AnalysisRequest, CliError> {
    Ok(AnalysisRequest {
        ring: input.ring.clone(),
        order: match input.order {
            OrderArg::Grevlex => Order::Grevlex,
            OrderArg::Lex => Order::Lex,
        },
        source: source(input)?,
        tasks,
        max_power,
        deadline_secs: common.deadline,
        timing: common.timing,
    })
}

fn render<T: serde::Serialize>(v: &T, format: FormatArg) -> String {
    match format {
        FormatArg::Json => to_json(v),
        FormatArg::Text => to_text(v),
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze { input, tasks, max_power, common } => {
            let tasks = tasks.iter().map(|t| Task::parse(t)).collect::<Result<Vec<_>, _>>().map_err(CliError::usage)?;
            let env = run(&request(&input, tasks, max_power, &common)?)?;
            print!("{}", render(&env, common.format));
            Ok(env.exit_code())
        }
        Command::HessianExperiment { input, common } => {
            let env = run(&request(&input, vec![Task::Hessian], None, &common)?)?;
            print!("{}", render(&env, common.format));
            Ok(env.exit_code())
        }
        Command::Family { spec, allow_large, no_check, common } => {
            let spec: FamilySpec = spec.parse()?;
            let fx = families::build(&spec, allow_large)?;
            if no_check {
                print!("{}", render(&fx, common.format));
                return Ok(exit::OK);
            }
            let rep = regress(std::slice::from_ref(&fx), true, common.deadline, common.timing);
            match common.format {
                FormatArg::Json => print!("{}", to_json(&rep)),
                FormatArg::Text => print!("{}", regression_text(&rep)),
            }
            Ok(rep.exit_code())
        }
        Command::Regress { manifest, include_slow, common } => {
            let fixtures = match manifest {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::usage(format!("cannot read `{path}`: {e}")))?;
                    parse_manifest(&text)?
                }
                None => families::corpus_specs()
                    .iter()
                    .map(|s| families::build(s, true))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let rep = regress(&fixtures, include_slow, common.deadline, common.timing);
            match common.format {
                FormatArg::Json => print!("{}", to_json(&rep)),
                FormatArg::Text => print!("{}", regression_text(&rep)),
            }
            for v in rep.violations() {
                eprintln!("violated: {v}");
            }
            Ok(rep.exit_code())
        }
        Command::Manifest => {
            let fixtures = families::corpus_specs()
                .iter()
                .map(|s| families::build(s, true))
                .collect::<Result<Vec<_>, _>>()?;
            print!("{}", families::manifest_text(&fixtures));
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    ExitCode::from(code as u8)
}
