//! Command-line front end.
//!
//! Exit codes: 0 when the command succeeds and every checked identity holds,
//! 1 when an identity fails (the failing lines carry both sides), 2 for usage,
//! parse or precondition errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::document::{parse_quiver, serialize_quiver, QuiverDocument};
use crate::error::{Error, Result};
use crate::framed::{
    check_grass_acyclicity, complex_euler_comparison, framed_decomposition_comparison,
    linked_framed_comparison, linking_identity, normalized_framed_t, normalized_framed_tu,
    FramedIndex,
};
use crate::mutations::{add_twocycle, link, unlink, MutationResult};
use crate::qcoef::QHalfRational;
use crate::quiver::{TwoCyclePointer, VertexPairPointer};
use crate::series::{
    coefficient_a, lemma21_comparisons, series_a, series_comparisons, MotivicSeries,
    TruncationPolicy,
};
use crate::strata::{
    normalized_stratum_series, telescoping_comparisons, unlinking_comparisons, Side, StratumIndex,
};
use crate::verdict::{Comparison, Verdict};

#[derive(Parser, Debug)]
#[command(
    name = "quiverlink",
    version,
    about = "Unlinking, linking and motivic series of quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Quiver file
    #[arg(short = 'q', long = "quiver", value_name = "FILE")]
    quiver: Option<PathBuf>,
    /// Write output here instead of standard output
    #[arg(short = 'o', long = "output", value_name = "FILE")]
    output: Option<PathBuf>,
    /// Truncation bound on the weighted degree
    #[arg(long, default_value_t = 6, value_name = "N")]
    max_weight: u32,
    /// Expansion order for series-expansion checks
    #[arg(long, default_value_t = 40, value_name = "M")]
    order: i64,
}

#[derive(Args, Debug, Clone)]
struct TwoCycleArgs {
    /// Label of the arrow c: v0 -> v1
    #[arg(long = "c", requires = "d_label", conflicts_with = "twocycle")]
    c_label: Option<String>,
    /// Label of the arrow d: v1 -> v0
    #[arg(long = "d", requires = "c_label")]
    d_label: Option<String>,
    /// Name of a `twocycle` declaration in the file
    #[arg(long)]
    twocycle: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct PairArgs {
    #[arg(long, requires = "v1", conflicts_with = "pair")]
    v0: Option<String>,
    #[arg(long, requires = "v0")]
    v1: Option<String>,
    /// Name of a `pair` declaration in the file
    #[arg(long)]
    pair: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical form of a quiver file
    Show {
        #[command(flatten)]
        common: Common,
    },
    /// Unlink a two-cycle
    Unlink {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tc: TwoCycleArgs,
        /// Print the arrow label map instead of the quiver
        #[arg(long)]
        label_map: bool,
    },
    /// Link a pair of vertices
    Link {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: PairArgs,
        /// Print the arrow label map instead of the quiver
        #[arg(long)]
        label_map: bool,
    },
    /// Add a two-cycle between a pair of vertices
    Twocycle {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Dump the truncated motivic series
    Series {
        #[command(flatten)]
        common: Common,
    },
    /// Expand a coefficient around s = 0
    Expand {
        #[command(flatten)]
        common: Common,
        /// Dimension vector `vertex:count,...` of a motivic coefficient
        #[arg(long, conflicts_with = "value")]
        dim: Option<String>,
        /// A rational function in canonical rendering
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// Check an identity coefficient by coefficient
    Verify {
        #[command(subcommand)]
        check: Verify,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// A_Q against the unlinked series with x_star = x_v0 x_v1
    Unlink {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tc: TwoCycleArgs,
    },
    /// A_Q against the linked series with x_square = s^-1 x_v0 x_v1
    Link {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// A_Q against the adjacency series (symmetric quivers)
    Lemma21 {
        #[command(flatten)]
        common: Common,
    },
    /// Ideal filtration telescoping and stratum positivity
    Filtration {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        tc: TwoCycleArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    /// Framed decomposition, its positivity, and the linked-coefficient shadow
    Framed {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 4)]
        max_k: u32,
    },
    /// Euler characteristic of the framed complex on Q^TU
    Euler {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Acyclicity of the Grassmannian complex for n = 1..=N
    Acyclicity {
        #[arg(long, default_value_t = 15)]
        n: u32,
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// A_Q against a series dump
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "DUMP")]
        against: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SideArg {
    Right,
    Left,
    Both,
}

enum Outcome {
    Success,
    Violated,
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Violated) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

struct Sink {
    out: Box<dyn Write>,
}

impl Sink {
    fn open(path: Option<&Path>) -> Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(
                fs::File::create(p).map_err(|e| io_error(p, e))?,
            )),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Sink { out })
    }

    fn line(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}").map_err(|e| Error::Precondition(format!("write failed: {e}")))
    }

    fn text(&mut self, text: &str) -> Result<()> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Precondition(format!("write failed: {e}")))
    }

    fn finish(mut self) -> Result<()> {
        self.out
            .flush()
            .map_err(|e| Error::Precondition(format!("write failed: {e}")))
    }
}

fn io_error(p: &Path, e: io::Error) -> Error {
    Error::Precondition(format!("{}: {e}", p.display()))
}

fn load(common: &Common) -> Result<QuiverDocument> {
    let path = common
        .quiver
        .as_ref()
        .ok_or_else(|| Error::Precondition("a quiver file is required (-q FILE)".into()))?;
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_quiver(&text).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn resolve_twocycle(doc: &QuiverDocument, tc: &TwoCycleArgs) -> Result<TwoCyclePointer> {
    match (&tc.c_label, &tc.d_label, &tc.twocycle) {
        (Some(c), Some(d), _) => TwoCyclePointer::from_labels(&doc.quiver, c, d),
        (_, _, Some(name)) => doc
            .twocycle(name)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("no two-cycle named `{name}`"))),
        _ => Err(Error::Precondition(
            "give --c and --d, or --twocycle".into(),
        )),
    }
}

fn resolve_pair(doc: &QuiverDocument, p: &PairArgs) -> Result<VertexPairPointer> {
    match (&p.v0, &p.v1, &p.pair) {
        (Some(a), Some(b), _) => VertexPairPointer::from_ids(&doc.quiver, a, b),
        (_, _, Some(name)) => doc
            .pair(name)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("no pair named `{name}`"))),
        _ => Err(Error::Precondition("give --v0 and --v1, or --pair".into())),
    }
}

fn mutation_document(res: &MutationResult) -> QuiverDocument {
    let mut doc = QuiverDocument::new(res.quiver.clone());
    if let Some(tc) = res.distinguished {
        doc.twocycles.push(("distinguished".into(), tc));
    }
    doc
}

fn status<K>(c: &Comparison<K>) -> String {
    if c.holds() {
        "OK".into()
    } else {
        format!("FAIL lhs={} rhs={}", c.lhs, c.rhs)
    }
}

/// Writes one line per comparison and reports whether all of them hold.
fn report<K>(
    sink: &mut Sink,
    comparisons: &[Comparison<K>],
    label: impl Fn(&K) -> String,
) -> Result<bool> {
    let mut ok = true;
    for c in comparisons {
        ok &= c.holds();
        sink.line(&format!("{} {}", label(&c.at), status(c)))?;
    }
    Ok(ok)
}

fn positivity_line(
    sink: &mut Sink,
    label: String,
    value: &QHalfRational,
    order: i64,
) -> Result<bool> {
    let ok = value.expands_even_nonnegative(order)?;
    if ok {
        sink.line(&format!("{label} OK"))?;
    } else {
        sink.line(&format!("{label} FAIL value={value}"))?;
    }
    Ok(ok)
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Success
    } else {
        Outcome::Violated
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Show { common } => {
            let doc = load(&common)?;
            let q = &doc.quiver;
            let mut sink = Sink::open(common.output.as_deref())?;
            sink.text(&serialize_quiver(&doc))?;
            sink.line(&format!(
                "# {} vertices, {} arrows, {}",
                q.vertex_count(),
                q.arrows().len(),
                if q.is_symmetric() {
                    "symmetric"
                } else {
                    "not symmetric"
                }
            ))?;
            for (v, row) in q.vertices().iter().zip(q.adjacency_matrix()) {
                let row: Vec<String> = row.iter().map(u64::to_string).collect();
                sink.line(&format!("# {v}: {}", row.join(" ")))?;
            }
            sink.finish()?;
            Ok(Outcome::Success)
        }
        Command::Unlink {
            common,
            tc,
            label_map,
        } => {
            let doc = load(&common)?;
            let res = unlink(&doc.quiver, &resolve_twocycle(&doc, &tc)?)?;
            write_mutation(&common, &res, label_map)
        }
        Command::Link {
            common,
            pair,
            label_map,
        } => {
            let doc = load(&common)?;
            let res = link(&doc.quiver, &resolve_pair(&doc, &pair)?)?;
            write_mutation(&common, &res, label_map)
        }
        Command::Twocycle { common, pair } => {
            let doc = load(&common)?;
            let res = add_twocycle(&doc.quiver, &resolve_pair(&doc, &pair)?)?;
            write_mutation(&common, &res, false)
        }
        Command::Series { common } => {
            let doc = load(&common)?;
            let q = Arc::new(doc.quiver);
            let policy = TruncationPolicy::uniform(&q, common.max_weight);
            let mut sink = Sink::open(common.output.as_deref())?;
            sink.text(&series_a(q, policy)?.dump())?;
            sink.finish()?;
            Ok(Outcome::Success)
        }
        Command::Expand { common, dim, value } => {
            let value = match (dim, value) {
                (Some(d), None) => {
                    let doc = load(&common)?;
                    coefficient_a(&doc.quiver, &doc.quiver.parse_dim(&d)?)
                }
                (None, Some(v)) => v.parse()?,
                _ => return Err(Error::Precondition("give --dim or --value".into())),
            };
            let mut sink = Sink::open(common.output.as_deref())?;
            sink.line(&format!("# {value}"))?;
            for (e, c) in value.laurent_expand(common.order)? {
                sink.line(&format!("s^{e}\t{c}"))?;
            }
            sink.line(&format!("# + O(s^{})", common.order + 1))?;
            sink.finish()?;
            Ok(Outcome::Success)
        }
        Command::Verify { check } => verify(check),
    }
}

fn write_mutation(common: &Common, res: &MutationResult, label_map: bool) -> Result<Outcome> {
    let mut sink = Sink::open(common.output.as_deref())?;
    if label_map {
        sink.text(&res.label_map_text())?;
    } else {
        sink.text(&serialize_quiver(&mutation_document(res)))?;
    }
    sink.finish()?;
    Ok(Outcome::Success)
}

fn verify(check: Verify) -> Result<Outcome> {
    match check {
        Verify::Unlink { common, tc } => {
            let doc = load(&common)?;
            let q = &doc.quiver;
            let ptr = resolve_twocycle(&doc, &tc)?;
            let comparisons =
                unlinking_comparisons(q, &ptr, &TruncationPolicy::uniform(q, common.max_weight))?;
            let mut sink = Sink::open(common.output.as_deref())?;
            let ok = report(&mut sink, &comparisons, |d| {
                format!("UNLINK {}", q.format_dim(d))
            })?;
            sink.finish()?;
            Ok(outcome(ok))
        }
        Verify::Link { common, pair } => {
            let doc = load(&common)?;
            let q = &doc.quiver;
            let p = resolve_pair(&doc, &pair)?;
            let check = linking_identity(q, &p, &TruncationPolicy::uniform(q, common.max_weight))?;
            let mut sink = Sink::open(common.output.as_deref())?;
            let mut ok = true;
            for (sub, framed) in check.substitution.iter().zip(&check.framed_route) {
                let d = q.format_dim(&sub.at);
                ok &= sub.holds() && framed.holds();
                let line = match (sub.holds(), framed.holds()) {
                    (true, true) => format!("LINK {d} OK"),
                    (false, _) => format!("LINK {d} {}", status(sub)),
                    (true, false) => format!(
                        "LINK {d} FAIL route=framed lhs={} rhs={}",
                        framed.lhs, framed.rhs
                    ),
                };
                sink.line(&line)?;
            }
            sink.finish()?;
            Ok(outcome(ok))
        }
        Verify::Lemma21 { common } => {
            let doc = load(&common)?;
            let q = &doc.quiver;
            let comparisons =
                lemma21_comparisons(q, &TruncationPolicy::uniform(q, common.max_weight))?;
            let mut sink = Sink::open(common.output.as_deref())?;
            let ok = report(&mut sink, &comparisons, |d| {
                format!("LEMMA21 {}", q.format_dim(d))
            })?;
            sink.finish()?;
            Ok(outcome(ok))
        }
        Verify::Filtration { common, tc, side } => {
            let doc = load(&common)?;
            let q = &doc.quiver;
            let u = unlink(q, &resolve_twocycle(&doc, &tc)?)?;
            let sides: &[(Side, &str)] = match side {
                SideArg::Right => &[(Side::Right, "right")],
                SideArg::Left => &[(Side::Left, "left")],
                SideArg::Both => &[(Side::Right, "right"), (Side::Left, "left")],
            };
            let mut sink = Sink::open(common.output.as_deref())?;
            let mut ok = true;
            for d in TruncationPolicy::uniform(q, common.max_weight).region() {
                let dl = q.format_dim(&d);
                for &(s, name) in sides {
                    let comparisons = telescoping_comparisons(&u, &d, s)?;
                    ok &= report(&mut sink, &comparisons, |p| {
                        format!("FILTRATION {dl} {name} p={p}")
                    })?;
                }
                for e in u.fibre_u(&d)? {
                    let idx = StratumIndex::of_fibre_element(&u, &e)?;
                    let n = normalized_stratum_series(&u, q, &idx)?;
                    ok &= positivity_line(
                        &mut sink,
                        format!("STRATUM {dl} ell={}", idx.ell),
                        &n,
                        common.order,
                    )?;
                }
            }
            sink.finish()?;
            Ok(outcome(ok))
        }
        Verify::Framed {
            common,
            pair,
            max_k,
        } => {
            let doc = load(&common)?;
            let q = &doc.quiver;
            let p = resolve_pair(&doc, &pair)?;
            let t = add_twocycle(q, &p)?;
            let tu = unlink(&t.quiver, &t.distinguished.expect("two-cycle recorded"))?;
            let l = link(q, &p)?;
            let region = TruncationPolicy::uniform(q, common.max_weight).region();
            let mut sink = Sink::open(common.output.as_deref())?;
            let mut ok = true;
            for d in &region {
                let dl = q.format_dim(d);
                for k in 0..=max_k {
                    let idx = FramedIndex { d: d.clone(), k };
                    let c = framed_decomposition_comparison(&t, &tu, &idx)?;
                    ok &= c.holds();
                    sink.line(&format!("FRAMED {dl} k={k} {}", status(&c)))?;
                    let n = normalized_framed_t(&t, &idx)?;
                    ok &= positivity_line(
                        &mut sink,
                        format!("FRAMED-T {dl} k={k} positive"),
                        &n,
                        common.order,
                    )?;
                    for e in tu.fibre_u(d)? {
                        let n = normalized_framed_tu(&tu, &e, k)?;
                        let el = tu.quiver.format_dim(&e);
                        ok &= positivity_line(
                            &mut sink,
                            format!("FRAMED-TU {el} k={k} positive"),
                            &n,
                            common.order,
                        )?;
                    }
                    let c = linked_framed_comparison(&l, &t, d, k)?;
                    ok &= c.holds();
                    sink.line(&format!("LINKED {dl} k={k} {}", status(&c)))?;
                }
            }
            sink.finish()?;
            Ok(outcome(ok))
        }
        Verify::Euler { common, pair } => {
            let doc = load(&common)?;
            let q = &doc.quiver;
            let p = resolve_pair(&doc, &pair)?;
            let t = add_twocycle(q, &p)?;
            let tu = unlink(&t.quiver, &t.distinguished.expect("two-cycle recorded"))?;
            let policy = tu.extend_policy(&TruncationPolicy::uniform(q, common.max_weight))?;
            let comparisons = policy
                .region()
                .iter()
                .map(|e| complex_euler_comparison(&tu, e, q))
                .collect::<Result<Vec<_>>>()?;
            let mut sink = Sink::open(common.output.as_deref())?;
            let ok = report(&mut sink, &comparisons, |e| {
                format!("EULER {}", tu.quiver.format_dim(e))
            })?;
            sink.finish()?;
            Ok(outcome(ok))
        }
        Verify::Acyclicity { n, output } => {
            if n == 0 {
                return Err(Error::Precondition("--n must be at least 1".into()));
            }
            let mut sink = Sink::open(output.as_deref())?;
            let mut ok = true;
            for m in 1..=n {
                let line = match check_grass_acyclicity(m)? {
                    Verdict::Holds => format!("ACYC n={m} OK"),
                    Verdict::Counterexample { lhs, .. } => {
                        ok = false;
                        format!("ACYC n={m} FAIL value={lhs}")
                    }
                };
                sink.line(&line)?;
            }
            sink.finish()?;
            Ok(outcome(ok))
        }
        Verify::Series { common, against } => {
            let doc = load(&common)?;
            let q = Arc::new(doc.quiver);
            let policy = TruncationPolicy::uniform(&q, common.max_weight);
            let text = fs::read_to_string(&against).map_err(|e| io_error(&against, e))?;
            let dumped = MotivicSeries::parse_dump(q.clone(), policy.clone(), &text)?;
            let computed = series_a(q.clone(), policy)?;
            let comparisons = series_comparisons(&computed, &dumped)?;
            let mut sink = Sink::open(common.output.as_deref())?;
            let ok = report(&mut sink, &comparisons, |d| {
                format!("SERIES {}", q.format_dim(d))
            })?;
            sink.finish()?;
            Ok(outcome(ok))
        }
    }
}
