mod args;
mod render;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Deserialize;

use sl2char::charvariety::{Representation, Triple};
use sl2char::classify::{classify, on_surface, ClassifyConfig};
use sl2char::corpus::acceptance_corpus;
use sl2char::mcgdyn::{orbit_bfs, GeneratingSet, OrbitStatus, TripleTransform};
use sl2char::surface::{monodromy_survey, SurfaceSig};
use sl2char::verify::{run_suite, VerifyConfig};

use args::{
    ClassifyArgs, Cli, Command, CorpusArgs, Format, OrbitArgs, RunArgs, SurveyArgs, VerifyArgs,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_CAP_EXCEEDED: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_IO: u8 = 74;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let config = &cli.config;
    match &cli.command {
        Command::Orbit(a) => cmd_orbit(a, config),
        Command::Classify(a) => cmd_classify(a, config),
        Command::Verify(a) => cmd_verify(a, config),
        Command::Survey(a) => cmd_survey(a, config),
        Command::Corpus(a) => cmd_corpus(a, config),
    }
}

fn emit(config: &RunArgs, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &config.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| fail(EXIT_IO, format!("cannot write output: {e}"))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| {
        fail(
            EXIT_NO_INPUT,
            format!("cannot read {}: {e}", path.display()),
        )
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitRequest {
    seed: Triple,
    #[serde(default)]
    generators: Option<Vec<String>>,
    #[serde(default)]
    cap: Option<usize>,
}

/// A generating-set name, or maps separated by commas.
fn parse_generators<S: AsRef<str>>(names: &[S]) -> Result<Vec<TripleTransform>, Failure> {
    let mut out = Vec::new();
    for part in names.iter().flat_map(|s| s.as_ref().split(',')) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Ok(set) = part.parse::<GeneratingSet>() {
            out.extend(set.transforms());
        } else {
            let t = part
                .parse::<TripleTransform>()
                .map_err(|e| fail(EXIT_USAGE, format!("bad generator '{part}': {e}")))?;
            out.push(t);
        }
    }
    if out.is_empty() {
        return Err(fail(EXIT_USAGE, "no generators given"));
    }
    let mut seen = Vec::new();
    out.retain(|t| {
        let fresh = !seen.contains(t);
        seen.push(*t);
        fresh
    });
    Ok(out)
}

fn cmd_orbit(a: &OrbitArgs, config: &RunArgs) -> Result<u8, Failure> {
    let (seed, gens, cap) = match &a.request {
        Some(path) => {
            let req: OrbitRequest = serde_json::from_str(&read_input(path)?)
                .map_err(|e| fail(EXIT_USAGE, format!("bad request {}: {e}", path.display())))?;
            let gens = match &req.generators {
                Some(g) => parse_generators(g)?,
                None => parse_generators(&[a.gens.as_str()])?,
            };
            let cap = req.cap.unwrap_or(config.cap);
            if cap == 0 {
                return Err(fail(EXIT_USAGE, "cap must be positive"));
            }
            (req.seed, gens, cap)
        }
        None => {
            let text = a.seed.as_deref().unwrap_or_default();
            let seed: Triple = text
                .parse()
                .map_err(|e| fail(EXIT_USAGE, format!("bad seed '{text}': {e}")))?;
            (seed, parse_generators(&[a.gens.as_str()])?, config.cap)
        }
    };
    let result = orbit_bfs(&seed, &gens, cap);
    if let Some(path) = &a.dump {
        fs::write(path, result.dump_lines())
            .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
    }
    let text = match config.format {
        Format::Json => to_json(&result),
        Format::Table => render::orbit_table(&result),
    };
    emit(config, &text)?;
    Ok(match result.status {
        OrbitStatus::Finite => 0,
        OrbitStatus::CapExceeded => EXIT_CAP_EXCEEDED,
    })
}

/// The representation in `path` placed on the surface given by `sig` or,
/// failing that, by the file itself.
fn load_surface_rep(
    path: &Path,
    sig: Option<&str>,
) -> Result<(Representation, SurfaceSig), Failure> {
    let rep: Representation = serde_json::from_str(&read_input(path)?).map_err(|e| {
        fail(
            EXIT_DATA,
            format!("invalid representation {}: {e}", path.display()),
        )
    })?;
    let sig = match sig {
        Some(s) => s
            .parse::<SurfaceSig>()
            .map_err(|e| fail(EXIT_USAGE, format!("bad signature '{s}': {e}")))?,
        None => rep
            .signature()
            .ok_or_else(|| fail(EXIT_USAGE, "the file has no signature; pass --sig g,n"))?,
    };
    let rep = on_surface(&rep, sig).map_err(|e| fail(EXIT_DATA, e.to_string()))?;
    Ok((rep, sig))
}

fn cmd_classify(a: &ClassifyArgs, config: &RunArgs) -> Result<u8, Failure> {
    let (rep, sig) = load_surface_rep(&a.rep_file, a.sig.as_deref())?;
    let cc = ClassifyConfig {
        closure_cap: config.closure_cap,
        pair_factors: a.pair_factors,
        precision: config.precision,
        tol: config.tol,
    };
    let report = classify(&rep, sig, &cc).map_err(|e| fail(EXIT_DATA, e.to_string()))?;
    let text = match config.format {
        Format::Json => to_json(&report),
        Format::Table => render::classify_table(&report),
    };
    emit(config, &text)?;
    Ok(if report.undecided() {
        EXIT_UNDECIDED
    } else {
        0
    })
}

fn cmd_verify(a: &VerifyArgs, config: &RunArgs) -> Result<u8, Failure> {
    let vc = VerifyConfig {
        seed: a.seed,
        cap: config.cap,
        ..VerifyConfig::default()
    };
    let report = run_suite(a.suite, &vc);
    let text = match config.format {
        Format::Json => to_json(&report),
        Format::Table => render::verify_table(&report),
    };
    emit(config, &text)?;
    Ok(if report.passed { 0 } else { EXIT_VERIFY_FAILED })
}

fn cmd_survey(a: &SurveyArgs, config: &RunArgs) -> Result<u8, Failure> {
    let (rep, sig) = load_surface_rep(&a.rep_file, a.sig.as_deref())?;
    let report = monodromy_survey(&rep, sig, a.max_factors, config.k_max)
        .map_err(|e| fail(EXIT_DATA, e.to_string()))?;
    let text = match config.format {
        Format::Json => to_json(&report),
        Format::Table => render::survey_table(&report),
    };
    emit(config, &text)?;
    Ok(0)
}

fn cmd_corpus(a: &CorpusArgs, config: &RunArgs) -> Result<u8, Failure> {
    let corpus = acceptance_corpus();
    let text = match &a.name {
        Some(name) => {
            let entry = corpus
                .iter()
                .find(|e| &e.name == name)
                .ok_or_else(|| fail(EXIT_USAGE, format!("no sample named '{name}'")))?;
            to_json(&entry.rep)
        }
        None => match config.format {
            Format::Json => {
                let list: Vec<serde_json::Value> = corpus
                    .iter()
                    .map(|e| serde_json::json!({ "name": e.name, "kind": e.kind }))
                    .collect();
                to_json(&list)
            }
            Format::Table => render::corpus_table(&corpus),
        },
    };
    emit(config, &text)?;
    Ok(0)
}
