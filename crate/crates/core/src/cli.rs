//! Command-line front end: `verify`, `torsion`, `family`, `search`, `evidence`.
//!
//! Exit codes: 0 success, 1 domain-negative result (not a triple, degenerate
//! parameter), 2 usage or parse error, 3 I/O failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::ec::Order;
use crate::error::Error;
use crate::families::FamilyParam;
use crate::qarith::Rat;
use crate::search::{rank_evidence, scan, scan_resumable, write_records, CandidateRecord, RankConclusion};
use crate::torsion::{
    classify_triple, lemma_2s, lemma_3s_value, lemma_4s_factors, order_consistency, ThreePart,
};
use crate::triples::Triple;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dioph", version, about = "Elliptic curves induced by rational Diophantine triples")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include mixed-sign rows in search output.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Write output here instead of standard output. For `search` the file
    /// is resumed if it already holds records.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    #[arg(allow_hyphen_values = true)]
    pub a: Rat,
    #[arg(allow_hyphen_values = true)]
    pub b: Rat,
    #[arg(allow_hyphen_values = true)]
    pub c: Rat,
}

impl TripleArgs {
    fn validate(&self) -> Result<Triple, Error> {
        Triple::validate(self.a.clone(), self.b.clone(), self.c.clone())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a, b, c form a rational Diophantine triple.
    Verify(TripleArgs),
    /// Torsion of the induced curve, with the closed-form order predicates.
    Torsion(TripleArgs),
    /// Generate a triple from a parametrized family and report its torsion.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Walk multiples of P1 on Y^2 = X^3 + X^2 + X + 1 looking for same-sign triples.
    Search {
        #[arg(long = "max-n", value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
    /// Bounded search for rational points on the induced curve.
    Evidence {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        height: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// {a, -1/a, c} with a = (ut + 1)/(t - u).
    Mixed {
        #[arg(allow_hyphen_values = true)]
        u: Rat,
        #[arg(allow_hyphen_values = true)]
        t: Rat,
    },
    /// Z/2 x Z/6 family in r.
    #[command(alias = "z2z6")]
    Z2z6a {
        #[arg(allow_hyphen_values = true)]
        r: Rat,
    },
    /// Z/2 x Z/6 family in t.
    Z2z6t {
        #[arg(allow_hyphen_values = true)]
        t: Rat,
    },
    /// Z/2 x Z/8 family in T.
    Z2z8 {
        #[arg(allow_hyphen_values = true)]
        t: Rat,
    },
}

impl FamilyCommand {
    fn param(&self) -> FamilyParam {
        match self {
            FamilyCommand::Mixed { u, t } => FamilyParam::MixedSign { u: u.clone(), t: t.clone() },
            FamilyCommand::Z2z6a { r } => FamilyParam::Z2Z6a { r: r.clone() },
            FamilyCommand::Z2z6t { t } => FamilyParam::Z2Z6t { t: t.clone() },
            FamilyCommand::Z2z8 { t } => FamilyParam::Z2Z8T { t: t.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub valid: bool,
    pub r: Option<Rat>,
    pub s: Option<Rat>,
    pub t: Option<Rat>,
    pub signs: Option<[i8; 3]>,
    pub regular: Option<String>,
    pub error: Option<String>,
}

impl VerifyReport {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        match Triple::validate(a.clone(), b.clone(), c.clone()) {
            Ok(t) => {
                let [r, s, tt] = t.roots().map(Rat::clone);
                VerifyReport {
                    a,
                    b,
                    c,
                    valid: true,
                    r: Some(r),
                    s: Some(s),
                    t: Some(tt),
                    signs: Some(t.sign_pattern()),
                    regular: t.is_regular().map(|s| s.to_string()),
                    error: None,
                }
            }
            Err(e) => VerifyReport {
                a,
                b,
                c,
                valid: false,
                r: None,
                s: None,
                t: None,
                signs: None,
                regular: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPoint {
    pub name: String,
    pub x: Rat,
    pub y: Rat,
    pub order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    /// `(ab, ac, bc)` in `y^2 = (x+ab)(x+ac)(x+bc)`.
    pub shifts: [Rat; 3],
    pub points: Vec<NamedPoint>,
    pub lemma_2s: bool,
    pub lemma_3s_value: Rat,
    pub lemma_4s_factors: [Rat; 3],
    pub torsion: String,
    pub three_part: String,
    pub j: Rat,
    pub consistent: bool,
    pub mismatches: Vec<String>,
}

fn order_str(o: Order) -> String {
    o.to_string()
}

impl TorsionReport {
    pub fn new(t: &Triple) -> Self {
        let curve = t.induced_curve();
        let cp = t.canonical_points();
        let points = cp
            .all()
            .into_iter()
            .map(|(name, p)| NamedPoint {
                name: name.to_string(),
                x: p.x().cloned().unwrap_or_default(),
                y: p.y().cloned().unwrap_or_default(),
                order: order_str(curve.order_of(p).expect("canonical point")),
            })
            .collect();
        let class = classify_triple(t);
        let consistency = order_consistency(t);
        let three_part = match &class.three_part {
            ThreePart::Witnessed(p) => format!("witnessed by {p}"),
            ThreePart::Excluded => "excluded by 4-torsion".to_string(),
            ThreePart::NotDetected => "not detected by probes".to_string(),
        };
        TorsionReport {
            a: t.a().clone(),
            b: t.b().clone(),
            c: t.c().clone(),
            shifts: curve.shifts().expect("factored").clone(),
            points,
            lemma_2s: lemma_2s(t),
            lemma_3s_value: lemma_3s_value(t),
            lemma_4s_factors: lemma_4s_factors(t),
            torsion: class.class.to_string(),
            three_part,
            j: curve.j_invariant(),
            consistent: consistency.is_consistent(),
            mismatches: consistency.mismatches,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: String,
    pub params: Vec<Rat>,
    pub report: TorsionReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidencePoint {
    pub x: Rat,
    pub y: Rat,
    pub order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub height_bound: u64,
    pub points: Vec<EvidencePoint>,
    pub rank_at_least_one: bool,
    pub conclusion: String,
}

impl EvidenceReport {
    pub fn new(t: &Triple, height: u64) -> Result<Self, Error> {
        let ev = rank_evidence(&t.induced_curve(), height)?;
        let mut points: Vec<EvidencePoint> = ev
            .torsion
            .iter()
            .map(|(p, o)| EvidencePoint {
                x: p.x().cloned().unwrap_or_default(),
                y: p.y().cloned().unwrap_or_default(),
                order: order_str(*o),
            })
            .collect();
        points.extend(ev.infinite.iter().map(|p| EvidencePoint {
            x: p.x().cloned().unwrap_or_default(),
            y: p.y().cloned().unwrap_or_default(),
            order: order_str(Order::Infinite),
        }));
        Ok(EvidenceReport {
            a: t.a().clone(),
            b: t.b().clone(),
            c: t.c().clone(),
            height_bound: height,
            points,
            rank_at_least_one: ev.conclusion == RankConclusion::AtLeastOne,
            conclusion: ev.conclusion.to_string(),
        })
    }
}

fn csv_row(fields: &[String]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(fields).expect("in-memory write");
    let mut line = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
    line.pop();
    line
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn signs_str(s: &[i8; 3]) -> String {
    s.iter()
        .map(|&x| if x > 0 { "+" } else { "-" })
        .collect::<Vec<_>>()
        .join("")
}

fn render_verify(rep: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(rep).expect("serializable") + "\n",
        Format::Csv => {
            let head = ["a", "b", "c", "valid", "r", "s", "t", "signs", "regular", "error"];
            let row = [
                rep.a.to_string(),
                rep.b.to_string(),
                rep.c.to_string(),
                rep.valid.to_string(),
                opt(&rep.r),
                opt(&rep.s),
                opt(&rep.t),
                rep.signs.as_ref().map(signs_str).unwrap_or_default(),
                opt(&rep.regular),
                opt(&rep.error),
            ];
            format!("{}\n{}\n", head.join(","), csv_row(&row))
        }
        Format::Text => {
            let mut s = format!("triple {{{}, {}, {}}}: ", rep.a, rep.b, rep.c);
            if rep.valid {
                let _ = writeln!(s, "valid");
                let _ = writeln!(s, "r, s, t = {}, {}, {}", opt(&rep.r), opt(&rep.s), opt(&rep.t));
                let _ = writeln!(s, "signs: {}", rep.signs.as_ref().map(signs_str).unwrap_or_default());
                match &rep.regular {
                    Some(sign) => {
                        let _ = writeln!(s, "regular({sign}): c = a + b {sign} 2r");
                    }
                    None => {
                        let _ = writeln!(s, "not regular");
                    }
                }
            } else {
                let _ = writeln!(s, "invalid: {}", opt(&rep.error));
            }
            s
        }
    }
}

fn render_torsion(rep: &TorsionReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(rep).expect("serializable") + "\n",
        Format::Csv => {
            let mut head = vec!["a", "b", "c", "torsion", "three_part", "lemma_2s", "lemma_3s_value"];
            head.extend(["lemma_4s_1", "lemma_4s_2", "lemma_4s_3", "j", "consistent"]);
            let mut row = vec![
                rep.a.to_string(),
                rep.b.to_string(),
                rep.c.to_string(),
                rep.torsion.clone(),
                rep.three_part.clone(),
                rep.lemma_2s.to_string(),
                rep.lemma_3s_value.to_string(),
            ];
            row.extend(rep.lemma_4s_factors.iter().map(Rat::to_string));
            row.extend([rep.j.to_string(), rep.consistent.to_string()]);
            for p in &rep.points {
                row.push(p.order.clone());
            }
            let names: Vec<String> = rep.points.iter().map(|p| format!("order_{}", p.name)).collect();
            let head: Vec<String> = head.into_iter().map(String::from).chain(names).collect();
            format!("{}\n{}\n", csv_row(&head), csv_row(&row))
        }
        Format::Text => {
            let mut s = String::new();
            let [p, q, w] = &rep.shifts;
            let _ = writeln!(s, "triple {{{}, {}, {}}}", rep.a, rep.b, rep.c);
            let _ = writeln!(s, "curve  y^2 = (x + {p})(x + {q})(x + {w})");
            for pt in &rep.points {
                let _ = writeln!(s, "  {:<3} ({}, {})  order {}", pt.name, pt.x, pt.y, pt.order);
            }
            let _ = writeln!(s, "2S = O predicate: {}", rep.lemma_2s);
            let _ = writeln!(s, "3S = O value:     {}", rep.lemma_3s_value);
            let [f1, f2, f3] = &rep.lemma_4s_factors;
            let _ = writeln!(s, "order-4 factors:  {f1}, {f2}, {f3}");
            let _ = writeln!(s, "j-invariant:      {}", rep.j);
            let _ = writeln!(s, "torsion: {} (3-part {})", rep.torsion, rep.three_part);
            if rep.consistent {
                let _ = writeln!(s, "consistency: ok");
            } else {
                let _ = writeln!(s, "consistency: MISMATCH {}", rep.mismatches.join("; "));
            }
            s
        }
    }
}

fn render_family(rep: &FamilyReport, format: Format) -> String {
    let params: Vec<String> = rep.params.iter().map(Rat::to_string).collect();
    match format {
        Format::Json => serde_json::to_string(rep).expect("serializable") + "\n",
        Format::Csv => {
            let inner = render_torsion(&rep.report, Format::Csv);
            let mut lines = inner.lines();
            let head = lines.next().unwrap_or_default();
            let row = lines.next().unwrap_or_default();
            format!(
                "family,params,{head}\n{},{row}\n",
                csv_row(&[rep.family.clone(), params.join(" ")])
            )
        }
        Format::Text => format!(
            "family {} ({})\n{}",
            rep.family,
            params.join(", "),
            render_torsion(&rep.report, Format::Text)
        ),
    }
}

fn render_evidence(rep: &EvidenceReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(rep).expect("serializable") + "\n",
        Format::Csv => {
            let mut s = String::from("x,y,order\n");
            for p in &rep.points {
                let _ = writeln!(s, "{}", csv_row(&[p.x.to_string(), p.y.to_string(), p.order.clone()]));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "curve of {{{}, {}, {}}}, x = p/q with max(|p|, q) <= {}\n",
                rep.a, rep.b, rep.c, rep.height_bound
            );
            for p in &rep.points {
                let _ = writeln!(s, "  ({}, {})  order {}", p.x, p.y, p.order);
            }
            let _ = writeln!(s, "{}", rep.conclusion);
            s
        }
    }
}

const RECORD_FIELDS: [&str; 12] = [
    "n", "r", "root_branch", "a", "b", "c", "all_positive", "torsion", "s_order", "j", "skipped",
    "skip_reason",
];

fn render_records(records: &[CandidateRecord], format: Format) -> String {
    match format {
        Format::Json => {
            let mut buf = Vec::new();
            write_records(&mut buf, records).expect("in-memory write");
            String::from_utf8(buf).expect("utf-8 json")
        }
        Format::Csv => {
            let mut s = RECORD_FIELDS.join(",") + "\n";
            for r in records {
                let row = [
                    r.n.to_string(),
                    opt(&r.r),
                    opt(&r.root_branch),
                    opt(&r.a),
                    opt(&r.b),
                    opt(&r.c),
                    opt(&r.all_positive),
                    opt(&r.torsion),
                    opt(&r.s_order),
                    opt(&r.j),
                    r.skipped.to_string(),
                    opt(&r.skip_reason),
                ];
                let _ = writeln!(s, "{}", csv_row(&row));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in records {
                if r.skipped {
                    let _ = writeln!(s, "n={:<3} skipped: {}", r.n, opt(&r.skip_reason));
                } else {
                    let _ = writeln!(
                        s,
                        "n={:<3} r={} [{}] {}\n      a={}\n      b={}\n      c={}\n      torsion {}, S' order {}",
                        r.n,
                        opt(&r.r),
                        opt(&r.root_branch),
                        if r.all_positive == Some(true) { "all positive" } else { "mixed signs" },
                        opt(&r.a),
                        opt(&r.b),
                        opt(&r.c),
                        opt(&r.torsion),
                        opt(&r.s_order),
                    );
                }
            }
            s
        }
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn run_search(cli: &Cli, max_n: u64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let (candidates, skipped) = match (&cli.out, cli.format) {
        (Some(path), Format::Json) => {
            let summary = scan_resumable(path, max_n, cli.verbose).map_err(|e| match e {
                Error::Io(e) => e,
                other => io::Error::new(io::ErrorKind::InvalidData, other.to_string()),
            })?;
            if summary.resumed_from > 0 {
                writeln!(stderr, "resumed after n = {}", summary.resumed_from)?;
            }
            (summary.candidates, summary.skipped)
        }
        _ => {
            let records = scan(max_n, cli.verbose);
            emit(&cli.out, stdout, &render_records(&records, cli.format))?;
            (
                records.iter().filter(|r| r.is_candidate()).count(),
                records.iter().filter(|r| r.skipped).count(),
            )
        }
    };
    writeln!(
        stderr,
        "search up to n = {max_n}: {candidates} all-positive candidate(s), {skipped} skip record(s)"
    )?;
    Ok(EXIT_OK)
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let negative = |stderr: &mut dyn Write, e: &Error| -> io::Result<i32> {
        writeln!(stderr, "error: {e}")?;
        Ok(EXIT_NEGATIVE)
    };
    match &cli.command {
        Command::Verify(args) => {
            let rep = VerifyReport::new(args.a.clone(), args.b.clone(), args.c.clone());
            emit(&cli.out, stdout, &render_verify(&rep, cli.format))?;
            Ok(if rep.valid { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Torsion(args) => match args.validate() {
            Ok(t) => {
                emit(&cli.out, stdout, &render_torsion(&TorsionReport::new(&t), cli.format))?;
                Ok(EXIT_OK)
            }
            Err(e) => negative(stderr, &e),
        },
        Command::Family(cmd) => {
            let param = cmd.param();
            match param.generate() {
                Ok(t) => {
                    let rep = FamilyReport {
                        family: param.tag().to_string(),
                        params: param.values(),
                        report: TorsionReport::new(&t),
                    };
                    emit(&cli.out, stdout, &render_family(&rep, cli.format))?;
                    Ok(EXIT_OK)
                }
                Err(e) => negative(stderr, &e),
            }
        }
        Command::Search { max_n } => run_search(cli, *max_n, stdout, stderr),
        Command::Evidence { triple, height } => {
            match triple.validate().and_then(|t| EvidenceReport::new(&t, *height)) {
                Ok(rep) => {
                    emit(&cli.out, stdout, &render_evidence(&rep, cli.format))?;
                    Ok(EXIT_OK)
                }
                Err(e) => negative(stderr, &e),
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "i/o error: {e}");
            EXIT_IO
        }
    }
}
