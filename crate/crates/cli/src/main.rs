use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use braidchi::complex::Window;
use braidchi::diagram::DiscreteRelativeBraid;
use braidchi::pipeline::{self, lift_word, Mode, Options, PipelineError, Source};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Euler-Floer characteristic of discretized relative braid classes.
#[derive(Parser)]
#[command(name = "braidchi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and report homology and χ.
    Chi(RunArgs),
    /// Lift a word to a positive one and print its diagram JSON.
    FromWord(WordArgs),
    /// Run the admissibility checks only.
    Check(RunArgs),
    /// Build the cube complex and dump its cells.
    Complex(RunArgs),
}

#[derive(Args)]
struct WordArgs {
    /// Braid word, e.g. "1 -2 1".
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[arg(long)]
    strands: usize,
    /// Comma-separated free strand labels, e.g. "0,2".
    #[arg(long, default_value = "")]
    free: String,
}

#[derive(Args)]
struct RunArgs {
    /// Diagram JSON file, or "-" for standard input.
    #[arg(long, conflicts_with = "word")]
    input: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, requires = "strands")]
    word: Option<String>,
    #[arg(long)]
    strands: Option<usize>,
    #[arg(long, default_value = "")]
    free: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Component)]
    mode: ModeArg,
    /// Subdivide every period interval into k pieces first.
    #[arg(long)]
    refine: Option<usize>,
    /// Code window for exhaustive mode: slices separated by ",", free
    /// strands by ";", each entry "c" or "lo:hi".
    #[arg(long)]
    window: Option<String>,
    /// Reject unbounded diagrams instead of adding extremal constants.
    #[arg(long)]
    no_augment: bool,
    #[arg(long)]
    json: bool,
    /// Also write the cell dump to this file.
    #[arg(long)]
    emit_cells: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Component,
    Exhaustive,
}

fn parse_free(text: &str) -> Result<Vec<usize>, PipelineError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| PipelineError::Invalid(format!("bad free strand label {s:?}")))
        })
        .collect()
}

fn read_input(path: &Path) -> Result<String, PipelineError> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| PipelineError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(text)
}

impl RunArgs {
    fn source(&self) -> Result<Source, PipelineError> {
        match (&self.input, &self.word) {
            (Some(path), None) => Ok(Source::Diagram(DiscreteRelativeBraid::from_json(
                &read_input(path)?,
            )?)),
            (None, Some(word)) => Ok(Source::Word {
                text: word.clone(),
                strands: self.strands.expect("clap requires --strands"),
                free: parse_free(&self.free)?,
            }),
            _ => Err(PipelineError::Invalid(
                "give either --input or --word".into(),
            )),
        }
    }

    fn options(&self) -> Result<Options, PipelineError> {
        let window = self
            .window
            .as_deref()
            .map(Window::parse)
            .transpose()
            .map_err(|e| PipelineError::Invalid(e.to_string()))?;
        Ok(Options {
            mode: match self.mode {
                ModeArg::Component => Mode::Component,
                ModeArg::Exhaustive => Mode::Exhaustive,
            },
            refine: self.refine,
            augment: !self.no_augment,
            window,
        })
    }
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON serializes")
    );
}

fn write_json(path: &Path, value: &Value) -> Result<(), PipelineError> {
    let text = serde_json::to_string_pretty(value).expect("JSON serializes") + "\n";
    fs::write(path, text).map_err(|e| PipelineError::Invalid(format!("{}: {e}", path.display())))
}

fn chi(args: &RunArgs) -> Result<i32, PipelineError> {
    let analysis = pipeline::run(&args.source()?, &args.options()?)?;
    if let Some(path) = &args.emit_cells {
        write_json(path, &analysis.cell_dump())?;
    }
    let report = analysis.report();
    if args.json {
        print_json(&report);
    } else {
        print_human(&report);
    }
    Ok(analysis.exit_code())
}

fn print_human(report: &Value) {
    let p = &report["pipeline"];
    if let Some(twists) = p["twists"].as_u64() {
        println!("full twists: {twists}");
        println!(
            "positive word: {}",
            p["positive_word"].as_str().unwrap_or("")
        );
    }
    println!(
        "d = {}, {} skeleton and {} free strands, {} crossings",
        p["d"], p["skeleton_strands"], p["free_strands"], p["crossings"]
    );
    for note in p["notes"].as_array().into_iter().flatten() {
        let note = note.as_str().unwrap_or_default();
        if note.starts_with("warning:") {
            println!("{note}");
        } else {
            println!("note: {note}");
        }
    }
    for c in p["components"].as_array().into_iter().flatten() {
        let verdict = if c["proper"] == json!(true) {
            "proper"
        } else {
            "improper"
        };
        println!(
            "component {}: {} cells ({} in exit set), crossing number {}, {verdict}",
            c["id"], c["cells"], c["exit_cells"], c["crossing_number"]
        );
        if c["undecided"] == json!(true) {
            println!(
                "  certificate shared with another component: {}",
                c["certificate"].as_str().unwrap_or("")
            );
        }
    }
    let r = &report["result"];
    if !r.is_null() {
        println!("betti_gf2: {}", r["betti_gf2"]);
        println!("euler: {}", r["euler"]);
    }
    println!("{}", report["interpretation"].as_str().unwrap_or_default());
}

fn from_word(args: &WordArgs) -> Result<i32, PipelineError> {
    let free = parse_free(&args.free)?;
    let (lift, diagram) = lift_word(&args.word, args.strands, &free)?;
    eprintln!("full twists: {}", lift.twists);
    eprintln!("positive word: {}", lift.positive);
    eprintln!("d = {}", diagram.d());
    print_json(&diagram.to_json_value());
    Ok(0)
}

fn check(args: &RunArgs) -> Result<i32, PipelineError> {
    let (checks, code) = pipeline::check(&args.source()?, &args.options()?)?;
    if args.json {
        print_json(&json!({ "checks": checks, "ok": code == 0 }));
    } else {
        for c in &checks {
            println!(
                "{} {}: {}",
                if c.ok { "ok  " } else { "FAIL" },
                c.name,
                c.detail
            );
        }
    }
    Ok(code)
}

fn complex(args: &RunArgs) -> Result<i32, PipelineError> {
    let analysis = pipeline::run(&args.source()?, &args.options()?)?;
    let dump = analysis.cell_dump();
    match &args.emit_cells {
        Some(path) => write_json(path, &dump)?,
        None => print_json(&dump),
    }
    Ok(analysis.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Chi(a) => chi(a),
        Command::FromWord(a) => from_word(a),
        Command::Check(a) => check(a),
        Command::Complex(a) => complex(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
