//! Command-line front end. [`run`] parses arguments and returns the text
//! for stdout and stderr together with the exit code, so the binary is a
//! thin wrapper and the commands can be driven in-process.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::crystal::{crystal_edges, demazure_top_down, member_by_word, CeilingCache};
use crate::error::Error;
use crate::fock::{divided_vector, mod_p_reduce, standard_coefficient, standard_vector};
use crate::roof::{demazure_bottom_up_with, member, reduced_word_from_extremal, roof};
use crate::sets::{IntegerSet, Word};
use crate::verify::{self, Report, Suite, STANDARD_SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "semiwedge", version, about = "Roof operator, Demazure crystals and Fock-space expansions for affine sl(n)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Modulus n, for words and sweeps.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Order m of the highest-weight set L_m.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Height bound for sweeps.
    #[arg(long, global = true)]
    pub height: Option<u64>,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for sweeps and bottom-up generation.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the up trace, the roof and a reduced word for it.
    Roof {
        set: String,
        /// Also compute the ceiling independently and compare.
        #[arg(long)]
        ceiling: bool,
    },
    /// Print the ceiling of a set.
    Ceiling { set: String },
    /// List a Demazure crystal, given a word or an extremal set.
    Demazure {
        /// Residues such as "2,1,0" or "s2 s1 s0" (needs --n).
        #[arg(long, conflicts_with = "top")]
        word: Option<String>,
        /// An n-stable set w(L_m).
        #[arg(long)]
        top: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::TopDown)]
        mode: Mode,
        /// Write the crystal graph in DOT format to this file.
        #[arg(long)]
        dot: Option<String>,
        /// Only decide membership of this set.
        #[arg(long)]
        contains: Option<String>,
    },
    /// Expand v_J (or v'_J) in the basis of wedges.
    Expand {
        set: String,
        /// Use divided powers.
        #[arg(long)]
        divided: bool,
        /// Reduce coefficients modulo a prime.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Coefficient of the wedge of K in v_J.
    Coeff { set: String, target: String },
    /// Run an invariant sweep.
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
        /// Word-length bound for the word-indexed sweeps.
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    TopDown,
    BottomUp,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Theorem1,
    Prop3,
    Character,
    Upinv,
    UpinvFormula,
    Generators,
    All,
}

/// What a command produced.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failed {
    code: i32,
    message: String,
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InexactDivision => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        };
        Failed {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failed {
    Failed {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<Outcome, Failed>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Roof { set, ceiling } => cmd_roof(g, set, *ceiling),
        Command::Ceiling { set } => cmd_ceiling(g, set),
        Command::Demazure {
            word,
            top,
            mode,
            dot,
            contains,
        } => cmd_demazure(g, word.as_deref(), top.as_deref(), *mode, dot.as_deref(), contains.as_deref()),
        Command::Expand {
            set,
            divided,
            modulus,
        } => cmd_expand(g, set, *divided, *modulus),
        Command::Coeff { set, target } => cmd_coeff(g, set, target),
        Command::Verify { suite, length } => cmd_verify(g, *suite, *length),
    }
}

fn parse_set(text: &str) -> Result<IntegerSet, Failed> {
    text.parse::<IntegerSet>().map_err(Failed::from)
}

fn ok(stdout: String) -> CmdResult {
    Ok(Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    })
}

fn json_out(value: Value) -> CmdResult {
    ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("json")))
}

fn cmd_roof(g: &GlobalOpts, text: &str, with_ceiling: bool) -> CmdResult {
    let set = parse_set(text)?;
    let r = roof(&set)?;
    let word = reduced_word_from_extremal(&r.set)?;
    let ceiling = with_ceiling.then(|| CeilingCache::new().ceiling(&set));
    if g.json {
        let mut doc = json!({
            "input": set,
            "trace": r.trace,
            "roof": r.set,
            "word": word.residues(),
        });
        if let Some(c) = &ceiling {
            doc["ceiling"] = json!(c);
            doc["agrees"] = json!(*c == r.set);
        }
        return json_out(doc);
    }
    let mut out = String::new();
    writeln!(out, "trace ({} steps):", r.trace.len()).unwrap();
    for (idx, step) in r.trace.iter().enumerate() {
        writeln!(out, "  {:>3}: ({},{})", idx + 1, step.p, step.q).unwrap();
    }
    writeln!(out, "roof: {}", r.set).unwrap();
    writeln!(out, "word ({} letters): {}", word.len(), word).unwrap();
    if let Some(c) = ceiling {
        writeln!(out, "ceiling: {}", c).unwrap();
        writeln!(out, "agrees: {}", c == r.set).unwrap();
    }
    ok(out)
}

fn cmd_ceiling(g: &GlobalOpts, text: &str) -> CmdResult {
    let set = parse_set(text)?;
    if !set.is_n_bounded() {
        return Err(Error::NotBounded.into());
    }
    let c = CeilingCache::new().ceiling(&set);
    if g.json {
        return json_out(json!({ "input": set, "ceiling": c }));
    }
    ok(format!("{}\n", c))
}

fn dot_graph(sets: &BTreeSet<IntegerSet>) -> String {
    let mut out = String::from("digraph crystal {\n");
    for s in sets {
        writeln!(out, "  \"{}\";", s).unwrap();
    }
    for (a, i, b) in crystal_edges(sets) {
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", a, b, i).unwrap();
    }
    out.push_str("}\n");
    out
}

fn cmd_demazure(
    g: &GlobalOpts,
    word: Option<&str>,
    top: Option<&str>,
    mode: Mode,
    dot: Option<&str>,
    contains: Option<&str>,
) -> CmdResult {
    let (word, top) = match (word, top) {
        (Some(text), None) => {
            let n = g.n.ok_or_else(|| usage("--word needs --n"))?;
            let m = g.m.unwrap_or(0);
            let word = Word::parse(n, text)?;
            let top = word.demazure_extremal(m);
            (Some(word), top)
        }
        (None, Some(text)) => {
            let top = parse_set(text)?;
            if !top.is_n_stable() {
                return Err(Error::NotStable.into());
            }
            (None, top)
        }
        _ => return Err(usage("give exactly one of --word or --top")),
    };

    if let Some(text) = contains {
        let j = parse_set(text)?;
        let by_roof = member(&j, &top)?;
        let by_word = word.as_ref().filter(|w| w.is_reduced_at(top.order())).map(|w| member_by_word(&j, w));
        if by_word.map_or(false, |b| b != by_roof) {
            return Err(Failed {
                code: EXIT_INVARIANT,
                message: format!("membership tests disagree for {}", j),
            });
        }
        if g.json {
            return json_out(json!({ "set": j, "top": top, "member": by_roof }));
        }
        return ok(format!("{}\n", by_roof));
    }

    let word = match word {
        Some(w) => w,
        None => reduced_word_from_extremal(&top)?,
    };
    let m = top.order();
    let crystal = match mode {
        Mode::TopDown => demazure_top_down(&word, m)?,
        Mode::BottomUp => demazure_bottom_up_with(&top, g.jobs)?,
        Mode::Both => {
            let a = demazure_top_down(&word, m)?;
            let b = demazure_bottom_up_with(&top, g.jobs)?;
            if a != b {
                let only_a: Vec<String> = a.difference(&b).map(|s| s.to_string()).collect();
                let only_b: Vec<String> = b.difference(&a).map(|s| s.to_string()).collect();
                return Err(Failed {
                    code: EXIT_INVARIANT,
                    message: format!(
                        "generators disagree\n  top-down only: {}\n  bottom-up only: {}",
                        only_a.join(" | "),
                        only_b.join(" | ")
                    ),
                });
            }
            a
        }
    };
    if let Some(path) = dot {
        std::fs::write(path, dot_graph(&crystal))
            .map_err(|e| usage(format!("cannot write {}: {}", path, e)))?;
    }
    if g.json {
        let elements: Vec<String> = crystal.iter().map(|s| s.to_string()).collect();
        return json_out(json!({
            "word": word.residues(),
            "top": top,
            "count": crystal.len(),
            "elements": elements,
        }));
    }
    let mut out = String::new();
    for s in &crystal {
        writeln!(out, "{}", s).unwrap();
    }
    ok(out)
}

fn cmd_expand(g: &GlobalOpts, text: &str, divided: bool, modulus: Option<u64>) -> CmdResult {
    let set = parse_set(text)?;
    let v = if divided {
        divided_vector(&set)?
    } else {
        standard_vector(&set)?
    };
    match modulus {
        Some(p) => {
            let r = mod_p_reduce(&v, p)?;
            if g.json {
                let terms: Vec<Value> = r
                    .terms()
                    .rev()
                    .map(|(k, c)| json!({ "coefficient": c.to_string(), "set": k }))
                    .collect();
                return json_out(json!({ "prime": p, "terms": terms }));
            }
            ok(r.to_dump())
        }
        None if g.json => json_out(json!({ "terms": v })),
        None => ok(v.to_dump()),
    }
}

fn cmd_coeff(g: &GlobalOpts, text: &str, target: &str) -> CmdResult {
    let set = parse_set(text)?;
    let k = parse_set(target)?;
    let c = standard_coefficient(&set, &k)?;
    if g.json {
        return json_out(json!({ "set": set, "target": k, "coefficient": c.to_string() }));
    }
    ok(format!("{}\n", c))
}

fn set_suites(g: &GlobalOpts) -> Result<Vec<Suite>, Failed> {
    match (g.n, g.m, g.height) {
        (None, None, None) => Ok(STANDARD_SUITES.to_vec()),
        (Some(n), m, h) => Ok(vec![Suite::new(n, m.unwrap_or(0), h.unwrap_or(6))]),
        _ => Err(usage("--m and --height need --n")),
    }
}

fn cmd_verify(g: &GlobalOpts, suite: SuiteName, length: usize) -> CmdResult {
    let suites = set_suites(g)?;
    let word_moduli: Vec<u32> = g.n.map_or(vec![2, 3], |n| vec![n]);
    let m = g.m.unwrap_or(0);
    let jobs = g.jobs;
    let mut reports: Vec<Report> = Vec::new();
    let wants = |s: SuiteName| suite == s || (suite == SuiteName::All && s != SuiteName::UpinvFormula);
    for &s in &suites {
        if wants(SuiteName::Theorem1) {
            reports.push(verify::theorem1(s, jobs)?);
        }
        if wants(SuiteName::Prop3) {
            reports.push(verify::prop3(s, jobs)?);
        }
        if wants(SuiteName::Upinv) {
            reports.push(verify::upinv(s, jobs)?);
        }
        if wants(SuiteName::UpinvFormula) {
            reports.push(verify::upinv_formula(s, jobs)?);
        }
    }
    for &n in &word_moduli {
        if wants(SuiteName::Generators) {
            reports.push(verify::generators(n, m, length, jobs)?);
        }
        if wants(SuiteName::Character) {
            reports.push(verify::character(n, m, length, jobs)?);
        }
    }
    let clean = reports.iter().all(Report::is_clean);
    let code = if clean { EXIT_OK } else { EXIT_INVARIANT };
    // timings go to stderr so that stdout is reproducible
    let stderr: String = reports
        .iter()
        .map(|r| format!("{}: {} ms\n", r.name, r.elapsed_ms))
        .collect();
    let stdout = if g.json {
        let docs: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "n": r.n,
                    "m": r.m,
                    "bound": r.bound,
                    "checked": r.checked,
                    "failures": r.failures,
                })
            })
            .collect();
        format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({ "clean": clean, "reports": docs })).unwrap()
        )
    } else {
        let mut out = String::new();
        for r in &reports {
            writeln!(
                out,
                "{} n={} m={} bound={}: {} checked, {} failures",
                r.name,
                r.n,
                r.m,
                r.bound,
                r.checked,
                r.failures.len()
            )
            .unwrap();
            if let Some(f) = r.minimal_counterexample() {
                writeln!(out, "  minimal counterexample: {}", f.input).unwrap();
                writeln!(out, "  {}", f.detail).unwrap();
            }
        }
        writeln!(out, "{}", if clean { "clean" } else { "FAILED" }).unwrap();
        out
    };
    Ok(Outcome { code, stdout, stderr })
}
