//! `locale-lab`: classify finite frames, run the theorem suites, walk through
//! the ω-chain counterexample, generate random frames, export DOT.
//!
//! Exit codes: 0 everything passed, 1 a check failed, 2 bad input or I/O,
//! 3 an assembly exceeded the cap.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::builder::TypedValueParser as _;
use clap::{Args, Parser, Subcommand, ValueEnum};

use locale_lab::assembly::{enumerate_assembly, DEFAULT_CAP};
use locale_lab::classify::classify;
use locale_lab::dot::{assembly_dot, frame_dot, space_dot};
use locale_lab::formats::{parse_frame, parse_space, write_frame};
use locale_lab::generate::{fixtures, random_frames};
use locale_lab::omega::{remark, ChainSublocale, REMARK_S, REMARK_T, TRUNCATION_DEPTHS};
use locale_lab::verify::run_batch;
use locale_lab::{with_mutant, FiniteFrame, Mutant};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "locale-lab", version, about = "Finite frames, sublocales and T_D duality")]
struct Cli {
    /// Largest assembly to enumerate
    #[arg(long, global = true, env = "LOCALE_LAB_CAP", default_value_t = DEFAULT_CAP,
          value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Runs with a deliberate defect switched on
    #[arg(long, global = true, hide = true)]
    mutant: Option<Mutant>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Keyvalue,
    Dot,
}

#[derive(Args, Clone)]
struct Generation {
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Largest poset to sample frames from
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=7).map(|v| v as usize))]
    bound: usize,

    /// Number of random frames
    #[arg(long, default_value_t = 200)]
    count: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Classify frames against the relations table
    Analyze {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Where witness files for disagreeing rows go
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run every theorem suite over fixture and random frames
    Verify {
        #[command(flatten)]
        generation: Generation,
        /// Skip the named fixture frames
        #[arg(long)]
        no_fixtures: bool,
        /// Extra frame files to include
        #[arg(long = "frame")]
        frames: Vec<PathBuf>,
        /// Where witness files for failing frames go
        #[arg(long, default_value = "locale-lab-witnesses")]
        out_dir: PathBuf,
    },
    /// The ω-chain example of two D-sublocales meeting in a non-D-sublocale
    Remark {
        #[arg(long, default_value = REMARK_S)]
        s: String,
        #[arg(long, default_value = REMARK_T)]
        t: String,
        /// Truncation depths for the finite cross-check
        #[arg(long = "depth", default_values_t = TRUNCATION_DEPTHS)]
        depths: Vec<u64>,
    },
    /// Write seeded random frames
    Random {
        #[command(flatten)]
        generation: Generation,
        /// One file per frame here; stdout otherwise
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// DOT for a frame, its assembly, or a space
    Dot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DotTarget::Assembly)]
        of: DotTarget,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DotTarget {
    Frame,
    Assembly,
    Space,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_frame(path: &Path) -> Result<FiniteFrame> {
    parse_frame(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_witness(dir: &Path, name: &str, frame: &FiniteFrame, note: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let safe: String = name.chars().map(|c| if c.is_alphanumeric() || c == '-' { c } else { '_' }).collect();
    let path = dir.join(format!("witness-{safe}.frame"));
    let mut text = String::new();
    for line in note.lines() {
        text.push_str(&format!("# {line}\n"));
    }
    text.push_str(&write_frame(frame));
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn analyze(cli: &Cli, files: &[PathBuf], out_dir: Option<&Path>) -> Result<u8> {
    let mut code = 0;
    let mut out = String::new();
    for (i, path) in files.iter().enumerate() {
        let frame = load_frame(path)?;
        if cli.format == Format::Dot {
            match enumerate_assembly(&frame, cli.cap) {
                Ok(a) => out.push_str(&assembly_dot(&a)),
                Err(e) => {
                    eprintln!("{}: {e}", path.display());
                    code = code.max(EXIT_CAP);
                }
            }
            continue;
        }
        let c = classify(&frame, cli.cap);
        if files.len() > 1 {
            if i > 0 {
                out.push('\n');
            }
            match cli.format {
                Format::Keyvalue => out.push_str(&format!("file={}\n", path.display())),
                _ => out.push_str(&format!("== {}\n", path.display())),
            }
        }
        out.push_str(&match cli.format {
            Format::Keyvalue => c.to_keyvalue(),
            _ => c.to_text(),
        });
        if c.any_disagree() {
            code = EXIT_FAIL;
            if let Some(dir) = out_dir {
                let name = path.file_stem().map_or("frame".into(), |s| s.to_string_lossy().into_owned());
                let w = write_witness(dir, &name, &frame, &c.to_keyvalue())?;
                eprintln!("witness written to {}", w.display());
            }
        } else if c.cap_error.is_some() && code == 0 {
            code = EXIT_CAP;
        }
    }
    print!("{out}");
    Ok(code)
}

fn verify(cli: &Cli, g: &Generation, no_fixtures: bool, files: &[PathBuf], out_dir: &Path) -> Result<u8> {
    let mut frames: Vec<(String, FiniteFrame)> = Vec::new();
    if !no_fixtures {
        frames.extend(fixtures().into_iter().map(|(n, f)| (n.to_string(), f)));
    }
    for path in files {
        frames.push((path.display().to_string(), load_frame(path)?));
    }
    frames.extend(
        random_frames(g.seed, g.bound, g.count)
            .into_iter()
            .enumerate()
            .map(|(i, f)| (format!("seed{}-{i:03}", g.seed), f)),
    );
    let report = run_batch(frames, cli.cap);
    println!("{report}");
    for nf in report.failing() {
        let note: Vec<String> = nf
            .report
            .failures()
            .flat_map(|s| s.failures.iter().map(move |m| format!("{}: {m}", s.suite)))
            .collect();
        let w = write_witness(out_dir, &nf.name, &nf.frame, &note.join("\n"))?;
        eprintln!("witness written to {}", w.display());
    }
    Ok(if !report.passed() {
        EXIT_FAIL
    } else if report.cap_exceeded() {
        EXIT_CAP
    } else {
        0
    })
}

fn cmd_remark(s: &str, t: &str, depths: &[u64]) -> Result<u8> {
    let s: ChainSublocale = s.parse().context("parsing S")?;
    let t: ChainSublocale = t.parse().context("parsing T")?;
    let r = remark(&s, &t, depths);
    println!("{r}");
    Ok(if r.truncations.iter().all(|&(_, ok)| ok) { 0 } else { EXIT_FAIL })
}

fn random(g: &Generation, out_dir: Option<&Path>) -> Result<u8> {
    let frames = random_frames(g.seed, g.bound, g.count);
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (i, f) in frames.iter().enumerate() {
                let path = dir.join(format!("frame-{i:03}.frame"));
                fs::write(&path, write_frame(f)).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for (i, f) in frames.iter().enumerate() {
                writeln!(stdout, "# frame {i} (seed {}, bound {})", g.seed, g.bound)?;
                write!(stdout, "{}", write_frame(f))?;
            }
        }
    }
    Ok(0)
}

fn dot(cli: &Cli, path: &Path, of: DotTarget) -> Result<u8> {
    match of {
        DotTarget::Space => {
            let space = parse_space(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            print!("{}", space_dot(&space));
        }
        DotTarget::Frame => print!("{}", frame_dot(&load_frame(path)?)),
        DotTarget::Assembly => match enumerate_assembly(&load_frame(path)?, cli.cap) {
            Ok(a) => print!("{}", assembly_dot(&a)),
            Err(e) => {
                eprintln!("{e}");
                return Ok(EXIT_CAP);
            }
        },
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Analyze { files, out_dir } => analyze(cli, files, out_dir.as_deref()),
        Command::Verify { generation, no_fixtures, frames, out_dir } => {
            verify(cli, generation, *no_fixtures, frames, out_dir)
        }
        Command::Remark { s, t, depths } => {
            if depths.contains(&0) {
                bail!("truncation depth must be at least 1");
            }
            cmd_remark(s, t, depths)
        }
        Command::Random { generation, out_dir } => random(generation, out_dir.as_deref()),
        Command::Dot { file, of } => dot(cli, file, *of),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.mutant {
        Some(m) => with_mutant(m, || run(&cli)),
        None => run(&cli),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
