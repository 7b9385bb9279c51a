use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hdbuchi::arena::{GameArena, Player};
use hdbuchi::construct::{delay_k, trim, DEFAULT_STATE_CAP};
use hdbuchi::determinize::{determinize_hd_with, normalize, PipelineTrace};
use hdbuchi::games::{self, DEFAULT_ARENA_CAP};
use hdbuchi::hd::{self, TransitionStrategy};
use hdbuchi::oracles::{self, GenKind, GenSpec};
use hdbuchi::solver::{solve_01, solve_02, Rank};
use hdbuchi::{taf, Error, LetterMap, ParityAutomaton};

#[derive(Parser)]
#[command(name = "hdbuchi", version, about = "Games and determinisation for history-deterministic Büchi automata")]
struct Cli {
    /// Print a single JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Upper bound on vertices of exponential constructions
    /// (k-token and lookahead arenas, iterated delays).
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide history-determinism of a Büchi automaton.
    CheckHd {
        file: PathBuf,
        /// Print the winning side's positional strategy in the Joker game.
        #[arg(long)]
        witness: bool,
    },
    /// Build an equivalent deterministic Büchi automaton.
    Determinize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the normalisation trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        no_verify: bool,
    },
    /// Build and solve one game.
    SolveGame {
        file: PathBuf,
        #[arg(long, value_enum)]
        game: GameKind,
        /// Second automaton for simulation, step-ahead and sprint games.
        #[arg(long)]
        other: Option<PathBuf>,
        /// Tokens or lookahead.
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        /// Eve's strategy for joker-fixed.
        #[arg(long, value_enum, default_value_t = FixedStrategy::Switch)]
        strategy: FixedStrategy,
        /// Adam's letter per state for hd-adam, e.g. `p=a,q=b`.
        #[arg(long)]
        letters: Option<String>,
        /// Skip the lasso check that reachable states accept every word.
        #[arg(long)]
        assume_universal: bool,
        /// Print the arena.
        #[arg(long)]
        dump: bool,
    },
    /// Restrict an HD automaton to a good subautomaton.
    MakeGood {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normalise a good automaton.
    Normalize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Delay an automaton by `k` letters.
    Delay {
        file: PathBuf,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a random automaton.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0.4)]
        accept_prob: f64,
        #[arg(long, default_value_t = 0.0)]
        sabotage: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the deterministic witness, if the family has one.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Compare the languages of two automata.
    VerifyEquiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Lasso)]
        method: Method,
        /// Largest spoke and cycle length, as `u,v`.
        #[arg(long, default_value = "4,4")]
        bound: String,
    },
    /// Summarise an automaton.
    Stats { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GameKind {
    G1,
    Joker,
    KToken,
    Lookahead,
    Simulation,
    Stepahead,
    Sprint,
    JokerFixed,
    HdAdam,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixedStrategy {
    /// Move to Adam's state when the tokens are apart.
    Switch,
    /// Keep to self-loops.
    Stay,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    UniversalSd,
    DbaCopies,
    RawRandom,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    ExactHd,
    Lasso,
}

/// Either a library error or a local I/O failure.
enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(Value, String, bool), Failure>;

fn read(path: &Path) -> Result<ParityAutomaton, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    taf::parse_bytes(&bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_trace(path: &Option<PathBuf>, trace: &PipelineTrace) -> Result<(), Failure> {
    if let Some(p) = path {
        write(p, &serde_json::to_string_pretty(trace).expect("trace serialises"))?;
    }
    Ok(())
}

/// Writes `a` to `output` or returns its TAF text for stdout.
fn emit(a: &ParityAutomaton, output: &Option<PathBuf>) -> Result<String, Failure> {
    let text = taf::serialize(a);
    match output {
        Some(p) => {
            write(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn rank_json(r: Rank) -> Value {
    match r {
        Rank::Finite(x) => json!(x),
        Rank::Top => Value::Null,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = cli.json;
    match run(cli) {
        Ok((doc, text, positive)) => {
            if json_mode {
                println!("{doc}");
            } else {
                print!("{text}");
            }
            ExitCode::from(if positive { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit { .. } => 3,
                Error::Integrity(_) | Error::NotGood(_) => 4,
                _ => 2,
            })
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let cap = cli.cap;
    match cli.command {
        Command::CheckHd { file, witness } => {
            let a = read(&file)?;
            let hd = hd::is_hd_buchi(&a)?;
            let verdict = if hd { "HD" } else { "not-HD" };
            let mut text = format!("{verdict}\n");
            let mut doc = json!({ "hd": hd });
            if witness {
                let w = hd::joker_witness(&a)?;
                for line in &w.lines {
                    text.push_str(&format!("# {line}\n"));
                }
                doc["witness"] = json!({ "winner": w.winner.to_string(), "strategy": w.lines });
            }
            Ok((doc, text, hd))
        }
        Command::Determinize {
            file,
            output,
            trace,
            no_verify,
        } => {
            let a = read(&file)?;
            match determinize_hd_with(&a, !no_verify) {
                Ok((d, t)) => {
                    write_trace(&trace, &t)?;
                    let text = emit(&d, &output)?;
                    let doc = json!({
                        "states": d.num_states(),
                        "transitions": d.transitions().len(),
                        "iterations": t.iterations.len(),
                        "automaton": taf::serialize(&d),
                    });
                    Ok((doc, text, true))
                }
                Err(Error::NotHd) => {
                    let w = hd::joker_witness(&a)?;
                    eprintln!("error: the automaton is not history-deterministic; Adam wins the Joker game with:");
                    for line in &w.lines {
                        eprintln!("  {line}");
                    }
                    Ok((json!({ "hd": false, "certificate": w.lines }), "not-HD\n".into(), false))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::SolveGame {
            file,
            game,
            other,
            k,
            strategy,
            letters,
            assume_universal,
            dump,
        } => {
            let a = read(&file)?;
            let b = match &other {
                Some(p) => read(p)?,
                None => a.clone(),
            };
            solve_game(&a, &b, game, k, strategy, letters, assume_universal, dump, cap)
        }
        Command::MakeGood { file, output } => {
            let a = read(&file)?;
            let g = hd::make_good(&a)?;
            let text = emit(&g, &output)?;
            Ok((json!({ "automaton": taf::serialize(&g) }), text, true))
        }
        Command::Normalize { file, output, trace } => {
            let a = read(&file)?;
            let report = hd::goodness(&a)?;
            if !report.is_good {
                return Err(Error::Precondition("normalisation needs a good automaton; run make-good first".into()).into());
            }
            let (h, t) = normalize(&a)?;
            write_trace(&trace, &t)?;
            let text = emit(&h, &output)?;
            Ok((json!({ "automaton": taf::serialize(&h), "trace": t }), text, true))
        }
        Command::Delay { file, k, output } => {
            let a = read(&file)?;
            let d = delay_k(&a, k, cap.unwrap_or(DEFAULT_STATE_CAP))?;
            let text = emit(&d, &output)?;
            Ok((json!({ "automaton": taf::serialize(&d) }), text, true))
        }
        Command::Gen {
            kind,
            states,
            alphabet,
            copies,
            density,
            accept_prob,
            sabotage,
            output,
            witness,
        } => {
            let kind = match kind {
                Kind::UniversalSd => GenKind::UniversalSd,
                Kind::DbaCopies => GenKind::DbaCopies,
                Kind::RawRandom => GenKind::RawRandom,
            };
            let spec = GenSpec {
                copies,
                density,
                accept_prob,
                sabotage,
                ..GenSpec::new(kind, states, alphabet, cli.seed)
            };
            let g = oracles::gen(&spec)?;
            if let (Some(p), Some(w)) = (&witness, &g.witness) {
                write(p, &taf::serialize(w))?;
            }
            let text = emit(&g.automaton, &output)?;
            let doc = json!({
                "spec": spec,
                "automaton": taf::serialize(&g.automaton),
                "witness": g.witness.as_ref().map(taf::serialize),
            });
            Ok((doc, text, true))
        }
        Command::VerifyEquiv { a, b, method, bound } => {
            let (x, y) = (read(&a)?, read(&b)?);
            match method {
                Method::ExactHd => {
                    let eq = hd::hd_language_equiv(&x, &y)?;
                    let text = if eq { "equivalent\n" } else { "different\n" };
                    Ok((json!({ "equivalent": eq, "exact": true }), text.into(), eq))
                }
                Method::Lasso => {
                    let (u, v) = parse_bound(&bound)?;
                    match oracles::bounded_lasso_equiv(&x, &y, u, v)? {
                        None => Ok((json!({ "equivalent": true, "exact": false }), "equivalent within bound\n".into(), true)),
                        Some(w) => {
                            let shown = w.render(x.alphabet()).to_string();
                            Ok((
                                json!({ "equivalent": false, "exact": true, "counterexample": shown }),
                                format!("different\ncounterexample {shown}\n"),
                                false,
                            ))
                        }
                    }
                }
            }
        }
        Command::Stats { file } => {
            let a = read(&file)?;
            let reachable = trim(&a).num_states();
            let (lo, hi) = a.index();
            let doc = json!({
                "states": a.num_states(),
                "reachable_states": reachable,
                "letters": a.num_letters(),
                "transitions": a.transitions().len(),
                "index": [lo, hi],
                "deterministic": a.is_deterministic(),
                "complete": a.is_complete(),
            });
            let text = format!(
                "states {}\nreachable {}\nletters {}\ntransitions {}\nindex {} {}\ndeterministic {}\ncomplete {}\n",
                a.num_states(),
                reachable,
                a.num_letters(),
                a.transitions().len(),
                lo,
                hi,
                a.is_deterministic(),
                a.is_complete()
            );
            Ok((doc, text, true))
        }
    }
}

fn parse_bound(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("bound must look like 4,4, got {s:?}"));
    let (u, v) = s.split_once(',').ok_or_else(bad)?;
    let u = u.trim().parse().map_err(|_| bad())?;
    let v: usize = v.trim().parse().map_err(|_| bad())?;
    if v == 0 {
        return Err(bad());
    }
    Ok((u, v))
}

#[allow(clippy::too_many_arguments)]
fn solve_game(
    a: &ParityAutomaton,
    b: &ParityAutomaton,
    game: GameKind,
    k: usize,
    strategy: FixedStrategy,
    letters: Option<String>,
    assume_universal: bool,
    dump: bool,
    cap: Option<usize>,
) -> Outcome {
    let verdict = |winner: Player, extra: Value| -> Outcome {
        let mut doc = json!({ "winner_initial": winner.to_string() });
        if let (Value::Object(d), Value::Object(e)) = (&mut doc, extra) {
            d.extend(e);
        }
        Ok((doc, format!("{winner}\n"), true))
    };
    let arena: GameArena = match game {
        GameKind::JokerFixed => {
            let s = match strategy {
                FixedStrategy::Switch => TransitionStrategy::chase(a),
                FixedStrategy::Stay => TransitionStrategy::stay(a),
            };
            let eve = hd::verify_fixed_joker_strategy(a, &s)?;
            return verdict(if eve { Player::Eve } else { Player::Adam }, json!({ "rank_initial": null }));
        }
        GameKind::HdAdam => {
            let text = letters.ok_or_else(|| Failure::Usage("hd-adam needs --letters".into()))?;
            let map = LetterMap::parse(a, &text)?;
            let adam = hd::verify_adam_letter_strategy(a, &map, assume_universal)?;
            return verdict(if adam { Player::Adam } else { Player::Eve }, json!({ "rank_initial": null }));
        }
        GameKind::G1 => games::build_g1(a)?,
        GameKind::Joker => games::build_joker(a)?,
        GameKind::KToken => games::build_k_token_capped(a, k, cap.unwrap_or(DEFAULT_ARENA_CAP))?,
        GameKind::Lookahead => games::build_lookahead_capped(a, k, cap.unwrap_or(DEFAULT_STATE_CAP))?,
        GameKind::Simulation => games::build_simulation(a, b)?,
        GameKind::Stepahead => games::build_stepahead(a, b)?,
        GameKind::Sprint => games::build_sprint(a, a.initial(), b, b.initial())?,
    };
    let start = Instant::now();
    let solution = if matches!(game, GameKind::Sprint) { solve_01(&arena)? } else { solve_02(&arena)? };
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let v = arena.initial();
    let winner = solution.winner[v];
    let (mut doc, mut text, positive) = verdict(
        winner,
        json!({
            "rank_initial": rank_json(solution.rank[v]),
            "vertices": arena.num_vertices(),
            "edges": arena.num_edges(),
            "time_ms": elapsed,
        }),
    )?;
    if dump {
        let listing = arena.dump();
        doc["dump"] = json!(listing);
        text = listing + &text;
    }
    Ok((doc, text, positive))
}
