use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use simplegames::canonical::{canonical_analysis, CanonicalOutcome};
use simplegames::catalog::{classify, CatalogParams, CatalogTag, Family, Mode};
use simplegames::certificates::{certificate_for, CaseId};
use simplegames::composition::{compose, find_decompositions, CompositionSpec};
use simplegames::desirability::{desirability, is_complete};
use simplegames::enumerate::{enumerate_games, enumerate_up_to_isomorphism};
use simplegames::harness::{census, run_suite, HarnessOptions, Suite};
use simplegames::io::{self as gio, LabeledGame};
use simplegames::trade::{self, search_certificate};
use simplegames::weights::{farkas_certificate, synthesize_weights};
use simplegames::{Coalition, Error};

#[derive(Parser)]
#[command(name = "simplegames", version, about = "Analyze, compose and decompose simple games")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Listed,
    Indecomposable,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Listed => Mode::Listed,
            ModeArg::Indecomposable => Mode::Indecomposable,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Completeness, desirability classes, dummies, vetoers and passers.
    Analyze {
        /// Game JSON file, or `-` for stdin.
        #[arg(long)]
        game: PathBuf,
    },
    /// Weights when the game is weighted, otherwise a certificate of nonweightedness.
    Weights {
        #[arg(long)]
        game: PathBuf,
    },
    /// Searches for a certificate of nonweightedness, or checks a given one.
    Certificate {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Transform JSON to validate instead of searching.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Substitutes the inner game for the pivot of the outer game.
    Compose {
        #[arg(long)]
        outer: PathBuf,
        /// Pivot label or index in the outer game.
        #[arg(long)]
        pivot: String,
        #[arg(long)]
        inner: PathBuf,
    },
    /// Decompositions with a proper inner game.
    Decompose {
        #[arg(long)]
        game: PathBuf,
        /// List every decomposition instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Catalog membership.
    Classify {
        #[arg(long)]
        game: PathBuf,
    },
    /// Builds a catalog game.
    Make {
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Listed)]
        mode: ModeArg,
    },
    /// Certificate for a composition of a catalog game that is not ideal weighted.
    PaperCert {
        #[arg(long)]
        case: String,
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        inner_size: usize,
    },
    /// Canonical decomposition of an ideal weighted game.
    Canon {
        #[arg(long)]
        game: PathBuf,
    },
    /// Every game on `n` players.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// One representative per isomorphism class.
        #[arg(long)]
        collapse_iso: bool,
        /// Permit n = 5.
        #[arg(long)]
        allow_five: bool,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        triples: usize,
        #[arg(long)]
        allow_five: bool,
    },
}

/// A command's document and whether it passed (exit code 1 when not).
struct Output {
    value: Value,
    /// Rows for CSV output when they differ from `value`.
    rows: Option<Value>,
    passed: bool,
}

impl Output {
    fn ok(value: Value) -> Self {
        Output {
            value,
            rows: None,
            passed: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli.command).and_then(|out| emit(&out, cli.format).map(|()| out.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn fail(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(msg.into())
}

fn lib(e: Error) -> anyhow::Error {
    fail(e.to_string())
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_game(path: &Path) -> anyhow::Result<LabeledGame> {
    gio::parse_game_str(&read_text(path)?).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn labels_of(g: &LabeledGame, c: Coalition) -> Value {
    json!(g.coalition_labels(c))
}

fn run(cmd: &Command) -> anyhow::Result<Output> {
    match cmd {
        Command::Analyze { game } => analyze(&load_game(game)?),
        Command::Weights { game } => weights(&load_game(game)?),
        Command::Certificate { game, max_len, check } => certificate(&load_game(game)?, *max_len, check.as_deref()),
        Command::Compose { outer, pivot, inner } => compose_cmd(&load_game(outer)?, pivot, &load_game(inner)?),
        Command::Decompose { game, all } => decompose(&load_game(game)?, *all),
        Command::Classify { game } => Ok(Output::ok(tag_json(&classify(&load_game(game)?.game)))),
        Command::Make { family, n, k, mode } => {
            let family: Family = family.parse().map_err(lib)?;
            let g = CatalogParams::new(family, n.clone(), k.clone())
                .build((*mode).into())
                .map_err(lib)?;
            Ok(Output::ok(gio::game_to_json(&LabeledGame::new(g))))
        }
        Command::PaperCert { case, n, k, inner_size } => case_certificate(case, n, k, *inner_size),
        Command::Canon { game } => canon(&load_game(game)?),
        Command::Enumerate {
            n,
            collapse_iso,
            allow_five,
        } => {
            let games: Vec<_> = if *collapse_iso {
                enumerate_up_to_isomorphism(*n, *allow_five).map_err(lib)?
            } else {
                enumerate_games(*n, *allow_five).map_err(lib)?.collect()
            };
            let items: Vec<Value> = games
                .into_iter()
                .map(|g| {
                    let mut v = gio::game_to_json(&LabeledGame::new(g.clone()));
                    v["id"] = json!(gio::game_id(&g));
                    v
                })
                .collect();
            Ok(Output::ok(Value::Array(items)))
        }
        Command::Verify {
            suite,
            n,
            seed,
            triples,
            allow_five,
        } => {
            let suite: Suite = suite.parse().map_err(lib)?;
            let opts = HarnessOptions {
                n: *n,
                seed: *seed,
                allow_five: *allow_five,
                triples: *triples,
            };
            verify(suite, &opts)
        }
    }
}

fn analyze(g: &LabeledGame) -> anyhow::Result<Output> {
    let rel = desirability(&g.game);
    let names = |ps: &[usize]| -> Vec<String> { ps.iter().map(|&p| g.labels[p].clone()).collect() };
    let classes: Vec<Vec<String>> = rel.classes().iter().map(|c| names(c)).collect();
    let levels: Option<Vec<Vec<String>>> = rel.levels().map(|ls| ls.iter().map(|c| names(c)).collect());
    Ok(Output::ok(json!({
        "players": g.labels,
        "min_winning": g.game.min_winning().iter().map(|&c| labels_of(g, c)).collect::<Vec<_>>(),
        "complete": is_complete(&g.game),
        "desirability_classes": classes,
        "levels": levels,
        "dummies": labels_of(g, g.game.dummies()),
        "vetoers": labels_of(g, g.game.vetoers()),
        "passers": labels_of(g, g.game.passers()),
    })))
}

fn weights(g: &LabeledGame) -> anyhow::Result<Output> {
    if let Some(rep) = synthesize_weights(&g.game) {
        let mut v = gio::weights_to_json(&rep);
        v["weighted"] = json!(true);
        v["players"] = json!(g.labels);
        return Ok(Output::ok(v));
    }
    let cert = farkas_certificate(&g.game).map_err(lib)?;
    Ok(Output::ok(json!({
        "weighted": false,
        "certificate": gio::transform_to_json(&cert, &g.labels),
    })))
}

fn certificate(g: &LabeledGame, max_len: usize, check: Option<&Path>) -> anyhow::Result<Output> {
    if let Some(path) = check {
        let v: Value = serde_json::from_str(&read_text(path)?).map_err(|e| fail(e.to_string()))?;
        let t = gio::parse_transform(&v, g).map_err(lib)?;
        let nonweighted = trade::is_certificate_of_nonweightedness(&g.game, &t).map_err(lib)?;
        let incomplete = trade::is_certificate_of_incompleteness(&g.game, &t).map_err(lib)?;
        return Ok(Output {
            value: json!({
                "certificate_of_nonweightedness": nonweighted,
                "certificate_of_incompleteness": incomplete,
            }),
            rows: None,
            passed: nonweighted,
        });
    }
    Ok(Output::ok(match search_certificate(&g.game, max_len).map_err(lib)? {
        Some(t) => gio::transform_to_json(&t, &g.labels),
        None => json!(format!("none found ≤ {max_len}")),
    }))
}

fn resolve_player(g: &LabeledGame, s: &str) -> anyhow::Result<usize> {
    if let Some(i) = g.labels.iter().position(|l| l == s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(i) if i < g.game.n() => Ok(i),
        _ => Err(fail(format!("no player {s} in the outer game"))),
    }
}

fn compose_cmd(outer: &LabeledGame, pivot: &str, inner: &LabeledGame) -> anyhow::Result<Output> {
    let p = resolve_player(outer, pivot)?;
    let spec = CompositionSpec::new(outer.game.clone(), p, inner.game.clone()).map_err(lib)?;
    let game = compose(&spec).map_err(lib)?;
    let mut labels: Vec<String> = outer
        .labels
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != p)
        .map(|(_, l)| l.clone())
        .collect();
    let clash = inner.labels.iter().any(|l| labels.contains(l));
    labels.extend(inner.labels.iter().map(|l| {
        if clash {
            format!("{}.{l}", outer.labels[p])
        } else {
            l.clone()
        }
    }));
    let g = LabeledGame::with_labels(game, labels).map_err(lib)?;
    Ok(Output::ok(gio::game_to_json(&g)))
}

fn decompose(g: &LabeledGame, all: bool) -> anyhow::Result<Output> {
    let ds = find_decompositions(&g.game).map_err(lib)?;
    let items: Vec<Value> = ds
        .iter()
        .take(if all { usize::MAX } else { 1 })
        .map(|d| {
            let outer_players: Vec<usize> = (0..g.game.n()).filter(|&p| !d.support.contains(p)).collect();
            let mut outer_labels: Vec<String> = outer_players.iter().map(|&p| g.labels[p].clone()).collect();
            outer_labels.push("g".into());
            let inner_labels: Vec<String> = d.support.members().map(|p| g.labels[p].clone()).collect();
            let outer = LabeledGame::with_labels(d.spec.outer.clone(), outer_labels).map_err(lib)?;
            let inner = LabeledGame::with_labels(d.spec.inner.clone(), inner_labels).map_err(lib)?;
            Ok(json!({
                "support": labels_of(g, d.support),
                "outer": gio::game_to_json(&outer),
                "pivot": "g",
                "inner": gio::game_to_json(&inner),
            }))
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(Output::ok(if all {
        Value::Array(items)
    } else {
        items
            .into_iter()
            .next()
            .unwrap_or_else(|| json!({"indecomposable": true}))
    }))
}

fn tag_json(tag: &CatalogTag) -> Value {
    match tag {
        CatalogTag::Catalog(p) => json!({"family": p.family.name(), "n": p.n, "k": p.k}),
        CatalogTag::NotInCatalog => json!("not in catalog"),
    }
}

fn case_certificate(case: &str, n: &[usize], k: &[usize], inner_size: usize) -> anyhow::Result<Output> {
    let case: CaseId = case.parse().map_err(lib)?;
    let family = match case.family() {
        Some(f) => f,
        None => infer_family(n, k)?,
    };
    let params = CatalogParams::new(family, n.to_vec(), k.to_vec());
    let inner = case.default_inner(inner_size).map_err(lib)?;
    let cert = certificate_for(case, &params, &inner).map_err(lib)?;
    let valid = cert.validate().map_err(lib)?;
    let labels = gio::default_labels(cert.composite.n());
    Ok(Output {
        value: json!({
            "case": case.name(),
            "outer": {"family": family.name(), "n": n, "k": k},
            "pivot": cert.spec.pivot,
            "inner": gio::game_to_json(&LabeledGame::new(inner)),
            "kind": format!("{:?}", cert.kind),
            "construction": format!("{:?}", cert.variant),
            "composite": gio::game_to_json(&LabeledGame::new(cert.composite.clone())),
            "transform": gio::transform_to_json(&cert.transform, &labels),
            "valid": valid,
        }),
        rows: None,
        passed: valid,
    })
}

/// For cases that apply to every family, the first refined family accepting the parameters.
fn infer_family(n: &[usize], k: &[usize]) -> anyhow::Result<Family> {
    [Family::B1, Family::B2, Family::B3, Family::T1, Family::T3]
        .into_iter()
        .find(|&f| {
            CatalogParams::new(f, n.to_vec(), k.to_vec())
                .validate(Mode::Indecomposable)
                .is_ok()
        })
        .ok_or_else(|| fail("parameters fit no indecomposable catalog family"))
}

fn canon(g: &LabeledGame) -> anyhow::Result<Output> {
    Ok(Output::ok(match canonical_analysis(&g.game) {
        Ok(CanonicalOutcome::Form(f)) => {
            let mut v = serde_json::to_value(&f)?;
            v["ideal_weighted"] = json!(true);
            v["text"] = json!(f.to_string());
            // trailing A2 heads of a coreless form stand for one A_{run+1} factor
            v["coreless_anti_unanimity_run"] = json!(f.coreless_anti_unanimity_run());
            v
        }
        Ok(CanonicalOutcome::NotIdealWeighted(r)) => json!({"ideal_weighted": false, "reason": r.as_str()}),
        Err(Error::DummiesPresent(d)) => json!({
            "ideal_weighted": false,
            "reason": "dummies present",
            "dummies": d.iter().map(|&p| g.labels[p].clone()).collect::<Vec<_>>(),
        }),
        Err(e) => return Err(lib(e)),
    }))
}

fn verify(suite: Suite, opts: &HarnessOptions) -> anyhow::Result<Output> {
    let report = run_suite(suite, opts).map_err(lib)?;
    let passed = report.passed;
    let rows = if suite == Suite::Census {
        serde_json::to_value(census(opts.n, opts.allow_five).map_err(lib)?)?
    } else {
        let summary: Vec<Value> = report
            .criteria
            .iter()
            .map(|c| {
                json!({
                    "criterion": c.id,
                    "passed": c.passed,
                    "checked": c.checked,
                    "failures": c.failure_count,
                    "elapsed_ms": c.elapsed_ms as u64,
                    "title": c.title,
                })
            })
            .collect();
        Value::Array(summary)
    };
    let mut value = serde_json::to_value(&report)?;
    if suite == Suite::Census {
        value["records"] = rows.clone();
    }
    Ok(Output {
        value,
        rows: Some(rows),
        passed,
    })
}

fn emit(out: &Output, format: Format) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    match format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&out.value)?)?,
        Format::Csv => write_csv(&mut w, out.rows.as_ref().unwrap_or(&out.value))?,
    }
    Ok(())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Arrays of objects become tables; other documents become key/value rows.
fn write_csv(w: &mut impl Write, v: &Value) -> anyhow::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let header: Vec<String> = items[0]
                .as_object()
                .map(|o| o.keys().cloned().collect())
                .unwrap_or_default();
            out.write_record(&header)?;
            for item in items {
                let o = item.as_object().ok_or_else(|| anyhow!("mixed rows"))?;
                out.write_record(header.iter().map(|h| o.get(h).map(cell).unwrap_or_default()))?;
            }
        }
        Value::Array(items) => {
            out.write_record(["value"])?;
            for item in items {
                out.write_record([cell(item)])?;
            }
        }
        Value::Object(o) => write_pairs(&mut out, o)?,
        other => {
            out.write_record(["value"])?;
            out.write_record([cell(other)])?;
        }
    }
    out.flush()?;
    Ok(())
}

fn write_pairs<W: Write>(out: &mut csv::Writer<W>, o: &Map<String, Value>) -> anyhow::Result<()> {
    out.write_record(["key", "value"])?;
    for (k, v) in o {
        out.write_record([k.as_str(), &cell(v)])?;
    }
    Ok(())
}
