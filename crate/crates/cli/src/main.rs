//! `seymour`: command-line front end for the decomposition toolkit.
//!
//! Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
//! Every report is a thin rendering of library results; `--json` emits a
//! machine-readable envelope carrying the tool version and the SHA-256 of
//! every input file.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use seymour::classify::classify_code;
use seymour::connectivity::{connectivity, find_k_separation, state_profile, Connectivity};
use seymour::dectree::{build_complete_tree, from_json, recompose, to_json, validate, DecompNode, TreeMode};
use seymour::gf2core::{format_code, parse_code, parse_word_list};
use seymour::graphic::{code_from_graph, format_graph, parse_graph, realize_graph};
use seymour::lpgeom::{hunt_pseudocodeword, lp_decode, rational_costs};
use seymour::mldecode::{cost_from_channel, min_distance, Channel, DecodeContext};
use seymour::{BitVec, LinearCode};
use sha2::{Digest, Sha256};

type Failure = Box<dyn Error>;

#[derive(Parser)]
#[command(name = "seymour", version, about = "Decomposition, decoding and classification of binary linear codes")]
struct Cli {
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// 3-sums at exact 3-separations.
    #[value(name = "3")]
    Three,
    /// 3̄-sums at exact 3-separations.
    #[value(name = "3bar")]
    ThreeBar,
}

impl From<Mode> for TreeMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Three => TreeMode::ThreeHomogeneous,
            Mode::ThreeBar => TreeMode::ThreeBarHomogeneous,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a complete decomposition tree.
    Decompose {
        code: PathBuf,
        #[arg(long, value_enum, default_value = "3")]
        mode: Mode,
    },
    /// Rebuild the code at the root of a tree and check the tree rules.
    Recompose {
        tree: PathBuf,
        /// Code the root must equal.
        #[arg(long)]
        code: Option<PathBuf>,
    },
    /// Maximum-likelihood decoding along a 3̄-homogeneous tree.
    Decode {
        code: PathBuf,
        channel: PathBuf,
        /// One received word per line: a 0/1 string or whitespace-separated symbols.
        received: PathBuf,
        /// Tree to decode with; built from the code when absent.
        #[arg(long)]
        tree: Option<PathBuf>,
    },
    /// Minimum distance.
    Mindist {
        code: PathBuf,
        /// Use the tree decoder instead of enumeration.
        #[arg(long)]
        tree: bool,
    },
    /// Graphic, cographic, regular and geometrically perfect flags.
    Classify { code: PathBuf },
    /// Connectivity, a separation of least order and the state profile.
    Sep { code: PathBuf },
    /// Exact LP decoding over the fundamental polytope.
    Lpdecode {
        code: PathBuf,
        /// Costs, one per coordinate, as integers, fractions or decimals.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, required = true)]
        gamma: Vec<String>,
        /// Dual words defining the polytope; the whole dual when absent.
        #[arg(long)]
        h: Option<PathBuf>,
    },
    /// Search for a fractional LP optimum with seeded random costs.
    Hunt {
        code: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Dual words defining the polytope; the whole dual when absent.
        #[arg(long)]
        h: Option<PathBuf>,
    },
    /// Cycle code of a graph.
    Graph2code { graph: PathBuf },
    /// Graph whose cycle code equals the given code, if any.
    Realize { code: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::Recompose { .. } => "recompose",
            Command::Decode { .. } => "decode",
            Command::Mindist { .. } => "mindist",
            Command::Classify { .. } => "classify",
            Command::Sep { .. } => "sep",
            Command::Lpdecode { .. } => "lpdecode",
            Command::Hunt { .. } => "hunt",
            Command::Graph2code { .. } => "graph2code",
            Command::Realize { .. } => "realize",
        }
    }
}

/// Result of one command: a JSON value plus its plain-text rendering.
struct Report {
    result: Value,
    text: String,
}

/// Input files read so far, with their digests.
#[derive(Default)]
struct Inputs {
    seen: Vec<Value>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        self.seen.push(json!({
            "path": path.display().to_string(),
            "sha256": hex::encode(Sha256::digest(&bytes)),
        }));
        Ok(String::from_utf8(bytes).map_err(|_| format!("{} is not UTF-8", path.display()))?)
    }

    fn code(&mut self, path: &Path) -> Result<LinearCode, Failure> {
        Ok(parse_code(&self.read(path)?)?)
    }

    fn tree(&mut self, path: &Path) -> Result<DecompNode, Failure> {
        let value: Value = serde_json::from_str(&self.read(path)?)?;
        // Accept a bare tree or a `decompose --json` report.
        let tree = value.pointer("/result/tree").unwrap_or(&value);
        Ok(from_json(tree)?)
    }

    /// Dual words from a file, or every nonzero dual codeword.
    fn dual_words(&mut self, h: Option<&Path>, code: &LinearCode) -> Result<Vec<BitVec>, Failure> {
        match h {
            Some(path) => Ok(parse_word_list(&self.read(path)?)?),
            None => Ok(code.dual().codewords()?.into_iter().filter(|w| !w.is_zero()).collect()),
        }
    }
}

fn word_string(w: &BitVec) -> String {
    w.to_bools().iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

fn connectivity_value(c: Connectivity) -> Value {
    match c {
        Connectivity::Finite(k) => json!(k),
        Connectivity::Infinite => json!("infinite"),
    }
}

fn parse_received(line: &str) -> Result<Vec<usize>, Failure> {
    let symbols: Option<Vec<usize>> = if line.split_whitespace().nth(1).is_some() {
        line.split_whitespace().map(|s| s.parse().ok()).collect()
    } else {
        line.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    };
    symbols.ok_or_else(|| format!("malformed received word `{line}`").into())
}

fn parse_gamma(values: &[String]) -> Result<Vec<BigRational>, Failure> {
    values
        .iter()
        .flat_map(|v| v.split(',').filter(|s| !s.is_empty()).map(str::trim).collect::<Vec<_>>())
        .map(|s| match s.parse::<BigRational>() {
            Ok(q) => Ok(q),
            Err(_) => {
                let x: f64 = s.parse().map_err(|_| format!("malformed cost `{s}`"))?;
                Ok(rational_costs(&[x])?.remove(0))
            }
        })
        .collect()
}

fn run(command: &Command, seed: u64, inputs: &mut Inputs) -> Result<Report, Failure> {
    Ok(match command {
        Command::Decompose { code, mode } => {
            let code = inputs.code(code)?;
            let tree = build_complete_tree(&code, (*mode).into())?;
            let value = to_json(&tree);
            Report {
                text: serde_json::to_string_pretty(&value)?,
                result: json!({ "tree": value, "nodes": tree.node_count(), "depth": tree.depth() }),
            }
        }
        Command::Recompose { tree, code } => {
            let tree = inputs.tree(tree)?;
            let expected = code.as_deref().map(|p| inputs.code(p)).transpose()?;
            let report = validate(&tree, expected.as_ref());
            if !report.is_valid() {
                let v = &report.violations[0];
                return Err(format!("tree violates {:?} at {}: {}", v.rule, v.path, v.detail).into());
            }
            let rebuilt = recompose(&tree)?;
            let text = format_code(&rebuilt);
            Report { result: json!({ "code": text, "validation": report }), text }
        }
        Command::Decode { code, channel, received, tree } => {
            let code = inputs.code(code)?;
            let channel = Channel::parse(&inputs.read(channel)?)?;
            let received = inputs.read(received)?;
            let tree = match tree {
                Some(path) => inputs.tree(path)?,
                None => build_complete_tree(&code, TreeMode::ThreeBarHomogeneous)?,
            };
            if recompose(&tree)? != code {
                return Err("the tree does not decompose the given code".into());
            }
            let ctx = DecodeContext::default();
            let mut rows = Vec::new();
            let mut text = String::new();
            for line in received.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                let symbols = parse_received(line)?;
                let gamma = cost_from_channel(&symbols, &channel)?;
                let (word, cost) = ctx.linmin_tree(&tree, &gamma)?;
                // Normalizes a negative zero from an empty sum.
                let cost = cost + 0.0;
                text.push_str(&format!("{}  cost {cost}\n", word_string(&word)));
                rows.push(json!({ "received": line, "codeword": word_string(&word), "cost": cost }));
            }
            Report { result: json!({ "decoded": rows }), text: text.trim_end().to_string() }
        }
        Command::Mindist { code, tree } => {
            let code = inputs.code(code)?;
            let d = if *tree {
                let t = build_complete_tree(&code, TreeMode::ThreeBarHomogeneous)?;
                min_distance(&code, Some(&t))?
            } else {
                min_distance(&code, None)?
            };
            let method = if *tree { "tree" } else { "enumeration" };
            Report { result: json!({ "n": code.len(), "k": code.dim(), "d": d, "method": method }), text: d.to_string() }
        }
        Command::Classify { code } => {
            let report = classify_code(&inputs.code(code)?)?;
            let text = format!(
                "graphic={} cographic={} regular={} geometrically_perfect={}",
                report.graphic, report.cographic, report.regular, report.geometrically_perfect
            );
            Report { result: serde_json::to_value(&report)?, text }
        }
        Command::Sep { code } => {
            let code = inputs.code(code)?;
            let lambda = connectivity(&code)?;
            let sep = match lambda {
                Connectivity::Finite(k) => find_k_separation(&code, k, k)?,
                Connectivity::Infinite => None,
            };
            let profile = state_profile(&code);
            let sep_value = sep.as_ref().map(|s| {
                json!({ "side": one_based(&s.side), "order": s.order, "defect": s.defect, "exact": s.exact, "minimal": s.minimal })
            });
            let mut text = format!("lambda={}", connectivity_value(lambda));
            if let Some(s) = &sep {
                text.push_str(&format!("\nseparation J={:?} defect={}", one_based(&s.side), s.defect));
            }
            text.push_str(&format!("\nprofile={profile:?}"));
            Report { result: json!({ "lambda": connectivity_value(lambda), "separation": sep_value, "profile": profile }), text }
        }
        Command::Lpdecode { code, gamma, h } => {
            let code = inputs.code(code)?;
            let words = inputs.dual_words(h.as_deref(), &code)?;
            let gamma = parse_gamma(gamma)?;
            let (vertex, verdict) = lp_decode(&code, &words, &gamma)?;
            let x: Vec<String> = vertex.x.iter().map(ToString::to_string).collect();
            let verdict = serde_json::to_value(verdict)?;
            let text = format!("{} x=[{}] objective={}", verdict.as_str().unwrap_or_default(), x.join(", "), vertex.objective);
            Report { result: json!({ "verdict": verdict, "x": x, "objective": vertex.objective.to_string() }), text }
        }
        Command::Hunt { code, trials, h } => {
            let code = inputs.code(code)?;
            let words = inputs.dual_words(h.as_deref(), &code)?;
            let report = hunt_pseudocodeword(&code, &words, *trials, seed)?;
            let text = match (&report.witness_trial, &report.witness_vertex) {
                (Some(t), Some(x)) => format!("pseudocodeword at trial {t}: x=[{}]", x.join(", ")),
                _ => format!("no fractional vertex in {} trials", report.trials),
            };
            Report { result: serde_json::to_value(&report)?, text }
        }
        Command::Graph2code { graph } => {
            let code = code_from_graph(&parse_graph(&inputs.read(graph)?)?)?;
            let text = format_code(&code);
            Report { result: json!({ "code": text }), text }
        }
        Command::Realize { code } => match realize_graph(&inputs.code(code)?)? {
            Some(g) => {
                let text = format_graph(&g);
                Report { result: json!({ "graphic": true, "graph": text }), text }
            }
            None => Report { result: json!({ "graphic": false, "graph": null }), text: "not graphic".into() },
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut inputs = Inputs::default();
    match run(&cli.command, cli.seed, &mut inputs) {
        Ok(report) => {
            if cli.json {
                let envelope = json!({
                    "tool": "seymour",
                    "version": env!("CARGO_PKG_VERSION"),
                    "command": cli.command.name(),
                    "seed": cli.seed,
                    "inputs": inputs.seen,
                    "result": report.result,
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("report serialization"));
            } else {
                println!("{}", report.text.trim_end());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
