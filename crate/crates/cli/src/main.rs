//! `kneading`: command-line front end for the kneading library.
//!
//! Exit codes: 0 on success (an inadmissible verdict is a successful answer),
//! 1 on a domain error, 2 on a usage error or malformed literal.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kneading::tent::parse_slope;
use kneading::{
    backward_admissible, c_word, classify_prefix, forward_admissible, height, lhe_rhe, make_tent,
    max_backward_itinerary, parse_fraction, validate_kappa, BiSeqEP, Fraction, KneadingResult, KneadingType,
    PrefixClass, SeqEP, Verdict, Word,
};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kneading", version, about = "Kneading theory and inverse-limit admissibility for tent maps")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// The cutting word c_q.
    Cq {
        #[arg(value_parser = fraction_arg)]
        q: Fraction,
    },
    /// The left height endpoint (w_q 1)^∞.
    Lhe {
        #[arg(value_parser = fraction_arg)]
        q: Fraction,
    },
    /// The right height endpoint w_q 0 (ŵ_q 1)^∞.
    Rhe {
        #[arg(value_parser = fraction_arg)]
        q: Fraction,
    },
    /// The height of a sequence.
    Height {
        #[arg(value_parser = seq_arg)]
        sequence: SeqEP,
    },
    /// The kneading type of a sequence or of a finite kneading prefix.
    #[command(group(clap::ArgGroup::new("input").required(true).args(["kappa", "prefix"])))]
    Classify {
        #[arg(long, value_parser = seq_arg)]
        kappa: Option<SeqEP>,
        #[arg(long, value_parser = word_arg)]
        prefix: Option<Word>,
    },
    /// The kneading sequence of the tent map with slope λ.
    Kneading {
        #[arg(value_parser = slope_arg)]
        lambda: BigRational,
        #[arg(long)]
        depth: usize,
    },
    /// Forward admissibility of a bi-infinite sequence.
    CheckForward {
        #[arg(long, value_parser = seq_arg)]
        kappa: SeqEP,
        #[arg(value_parser = biseq_arg)]
        sequence: BiSeqEP,
    },
    /// Backward admissibility of a bi-infinite sequence.
    CheckBackward {
        #[arg(long, value_parser = seq_arg)]
        kappa: SeqEP,
        #[arg(value_parser = biseq_arg)]
        sequence: BiSeqEP,
    },
    /// The maximum backward itinerary for an interior-type κ, with a witness.
    MaxBackward {
        #[arg(long, value_parser = seq_arg)]
        kappa: SeqEP,
    },
    /// A verified orbit x_{−D}, …, x_D realizing a bi-infinite sequence.
    Realize {
        #[arg(long, value_parser = slope_arg)]
        lambda: BigRational,
        #[arg(value_parser = biseq_arg)]
        sequence: BiSeqEP,
        #[arg(long)]
        depth: usize,
    },
    /// Maximum backward itineraries for every κ listed in FILE.
    Scan {
        #[arg(long, value_parser = fraction_arg)]
        q: Fraction,
        /// One sequence literal per line; `#` starts a comment.
        #[arg(long)]
        kappas: PathBuf,
        /// Write the CSV rows here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fraction_arg(s: &str) -> Result<Fraction, String> {
    parse_fraction(s).map_err(|e| e.to_string())
}

fn seq_arg(s: &str) -> Result<SeqEP, String> {
    s.parse().map_err(|e: kneading::ParseError| e.to_string())
}

fn biseq_arg(s: &str) -> Result<BiSeqEP, String> {
    s.parse().map_err(|e: kneading::ParseError| e.to_string())
}

fn word_arg(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: kneading::ParseError| e.to_string())
}

fn slope_arg(s: &str) -> Result<BigRational, String> {
    parse_slope(s).ok_or_else(|| format!("invalid slope {s:?}"))
}

enum Failure {
    Domain(String),
    Usage(String),
}

fn domain(e: impl ToString) -> Failure {
    Failure::Domain(e.to_string())
}

/// A command's answer in the three output formats.
struct Report {
    plain: Vec<String>,
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    fn single(plain: String, fields: Vec<(&'static str, String)>) -> Self {
        let json = Value::Object(fields.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect());
        Report {
            plain: vec![plain],
            json,
            header: fields.iter().map(|(k, _)| *k).collect(),
            rows: vec![fields.into_iter().map(|(_, v)| v).collect()],
        }
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_fail = |e: csv::Error| domain(e);
    w.write_record(header).map_err(io_fail)?;
    for row in rows {
        w.write_record(row).map_err(io_fail)?;
    }
    let bytes = w.into_inner().map_err(|e| domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

fn validate(kappa: SeqEP) -> Result<kneading::Kappa, Failure> {
    validate_kappa(kappa.clone()).map_err(|e| Failure::Domain(format!("κ = {kappa}: {e}")))
}

fn verdict_report(kind: &str, kappa: &SeqEP, s: &BiSeqEP, v: Verdict) -> Report {
    let plain = if v.admissible {
        format!("admissible ({kind})")
    } else {
        let at = v.shift_index.map(|r| format!(" at r = {r}")).unwrap_or_default();
        let condition = v.condition.map(|c| c.label()).unwrap_or("?");
        format!("inadmissible ({kind}): {condition}{at}: {}", v.detail)
    };
    let mut json = serde_json::to_value(&v).expect("verdict serializes");
    json["kappa"] = json!(kappa.to_string());
    json["sequence"] = json!(s.to_string());
    json["check"] = json!(kind);
    let row = vec![
        kind.to_string(),
        kappa.to_string(),
        s.to_string(),
        v.admissible.to_string(),
        v.condition.map(|c| c.label().to_string()).unwrap_or_default(),
        v.shift_index.map(|r| r.to_string()).unwrap_or_default(),
        v.detail.clone(),
    ];
    Report {
        plain: vec![plain],
        json,
        header: vec!["check", "kappa", "sequence", "admissible", "condition", "shift_index", "detail"],
        rows: vec![row],
    }
}

fn type_fields(t: &KneadingType) -> (String, String) {
    let name = match t {
        KneadingType::RationalLeftEndpoint(_) => "left-endpoint",
        KneadingType::RationalRightEndpoint(_) => "right-endpoint",
        KneadingType::RationalInterior(_) => "interior",
    };
    (name.to_string(), t.height().to_string())
}

/// Sequence literals of a κ list, with their 1-based line numbers.
fn read_kappas(path: &Path) -> Result<Vec<(usize, SeqEP)>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let literal = line.split('#').next().unwrap_or("").trim();
        if literal.is_empty() {
            continue;
        }
        let s = seq_arg(literal).map_err(|e| Failure::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push((i + 1, s));
    }
    Ok(out)
}

fn scan(q: Fraction, kappas: &Path, out: Option<&Path>) -> Result<Report, Failure> {
    let entries = read_kappas(kappas)?;
    let rows: Vec<Result<Vec<String>, Failure>> = entries
        .par_iter()
        .map(|(line, s)| {
            let fail = |e: String| Failure::Domain(format!("{}:{line}: κ = {s}: {e}", kappas.display()));
            let kappa = validate_kappa(s.clone()).map_err(|e| fail(e.to_string()))?;
            if kappa.kind() != KneadingType::RationalInterior(q) {
                return Err(fail(format!("type is {}, not interior {q}", kappa.kind())));
            }
            let (max, witness) = max_backward_itinerary(&kappa).map_err(|e| fail(e.to_string()))?;
            Ok(vec![s.to_string(), q.to_string(), max.to_string(), witness.to_string()])
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let header = vec!["kappa", "q", "max_backward", "witness"];
    if let Some(path) = out {
        fs::write(path, csv_text(&header, &rows)?).map_err(|e| domain(format!("{}: {e}", path.display())))?;
    }
    let plain = rows.iter().map(|r| format!("{} -> {} (witness {})", r[0], r[2], r[3])).collect();
    let json = Value::Array(
        rows.iter()
            .map(|r| json!({ "kappa": r[0], "q": r[1], "max_backward": r[2], "witness": r[3] }))
            .collect(),
    );
    Ok(Report { plain, json, header, rows })
}

fn run(command: Command) -> Result<Report, Failure> {
    Ok(match command {
        Command::Cq { q } => {
            let c = c_word(q).map_err(domain)?.to_string();
            Report::single(c.clone(), vec![("q", q.to_string()), ("c", c)])
        }
        Command::Lhe { q } => {
            let s = lhe_rhe(q).map_err(domain)?.0.to_string();
            Report::single(s.clone(), vec![("q", q.to_string()), ("lhe", s)])
        }
        Command::Rhe { q } => {
            let s = lhe_rhe(q).map_err(domain)?.1.to_string();
            Report::single(s.clone(), vec![("q", q.to_string()), ("rhe", s)])
        }
        Command::Height { sequence } => {
            let h = height(&sequence).map_err(domain)?.to_string();
            Report::single(h.clone(), vec![("sequence", sequence.to_string()), ("height", h)])
        }
        Command::Classify { kappa: Some(kappa), .. } => {
            let k = validate(kappa.clone())?;
            let (t, q) = type_fields(&k.kind());
            Report::single(k.kind().to_string(), vec![("kappa", kappa.to_string()), ("type", t), ("q", q)])
        }
        Command::Classify { prefix: Some(prefix), .. } => match classify_prefix(&prefix).map_err(domain)? {
            PrefixClass::Certified(kind) => {
                let (t, q) = type_fields(&kind);
                let fields = vec![("prefix", prefix.to_string()), ("type", t), ("lo", q.clone()), ("hi", q)];
                Report::single(kind.to_string(), fields)
            }
            PrefixClass::Undecided(b) => {
                let plain = format!("undecided: height in [{}, {}]", b.lo, b.hi);
                let fields = vec![
                    ("prefix", prefix.to_string()),
                    ("type", "undecided".to_string()),
                    ("lo", b.lo.to_string()),
                    ("hi", b.hi.to_string()),
                ];
                Report::single(plain, fields)
            }
        },
        Command::Classify { .. } => unreachable!("clap requires --kappa or --prefix"),
        Command::Kneading { lambda, depth } => {
            let f = make_tent(lambda.clone()).map_err(domain)?;
            match f.kneading(depth).map_err(domain)? {
                KneadingResult::Prefix(w) => {
                    let w = w.to_string();
                    let fields = vec![("lambda", lambda.to_string()), ("kind", "prefix".into()), ("kneading", w.clone())];
                    Report::single(w, fields)
                }
                KneadingResult::Exact { sequence, epsilon } => {
                    let s = sequence.to_string();
                    let fields = vec![
                        ("lambda", lambda.to_string()),
                        ("kind", "exact".into()),
                        ("kneading", s.clone()),
                        ("epsilon", epsilon.to_string()),
                    ];
                    Report::single(format!("{s} (ε = {epsilon})"), fields)
                }
            }
        }
        Command::CheckForward { kappa, sequence } => {
            let k = validate(kappa.clone())?;
            verdict_report("forward", &kappa, &sequence, forward_admissible(&sequence, &k))
        }
        Command::CheckBackward { kappa, sequence } => {
            let k = validate(kappa.clone())?;
            verdict_report("backward", &kappa, &sequence, backward_admissible(&sequence, &k))
        }
        Command::MaxBackward { kappa } => {
            let k = validate(kappa.clone())?;
            let (max, witness) = max_backward_itinerary(&k).map_err(domain)?;
            let (max, witness) = (max.to_string(), witness.to_string());
            Report {
                plain: vec![max.clone(), witness.clone()],
                json: json!({ "kappa": kappa.to_string(), "max_backward": max, "witness": witness }),
                header: vec!["kappa", "max_backward", "witness"],
                rows: vec![vec![kappa.to_string(), max, witness]],
            }
        }
        Command::Realize { lambda, sequence, depth } => {
            let f = make_tent(lambda).map_err(domain)?;
            let real = f.realize_backward(&sequence, depth).map_err(domain)?;
            let rows: Vec<Vec<String>> = real
                .orbit
                .iter()
                .map(|p| {
                    let x = &p.point.value;
                    vec![p.index.to_string(), x.numer().to_string(), x.denom().to_string(), p.symbol.to_string()]
                })
                .collect();
            let plain = real.orbit.iter().map(|p| format!("x_{} = {}  S = {}", p.index, p.point.value, p.symbol)).collect();
            let json = Value::Array(
                real.orbit
                    .iter()
                    .map(|p| json!({ "r": p.index, "x": p.point.value.to_string(), "symbol": p.symbol }))
                    .collect(),
            );
            Report { plain, json, header: vec!["r", "numerator", "denominator", "symbol"], rows }
        }
        Command::Scan { q, kappas, out } => scan(q, &kappas, out.as_deref())?,
    })
}

fn render(report: &Report, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Plain => report.plain.iter().map(|l| format!("{l}\n")).collect(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).expect("JSON values serialize")),
        Format::Csv => csv_text(&report.header, &report.rows)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command).and_then(|r| render(&r, cli.format)) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
