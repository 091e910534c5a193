use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};
use surd_sails::cfrac::{convergents, expand, serret_matrix, value};
use surd_sails::criterion::classify;
use surd_sails::geometry::{
    emit_svg, fixed_line_surds, lagrange_automorphism, sail_from_surd, QuadraticForm, Viewport,
};
use surd_sails::survey::reduced_surds;
use surd_sails::Classification;

use crate::parse::{parse_cf, parse_range, parse_operand};
use crate::{Command, Failure};

type Outcome = Result<String, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Expand { operand, format } => {
            let x = parse_operand(&operand)?.surd();
            let cf = expand(&x);
            Ok(if format.json {
                record(json!({ "surd": x.to_string(), "cf": cf.to_json(), "text": cf.to_string() }))
            } else {
                format!("{cf}\n")
            })
        }
        Command::Value { cf, format } => {
            let cf = parse_cf(&cf)?;
            let x = value(&cf);
            Ok(if format.json {
                record(json!({ "cf": cf.to_json(), "surd": x.to_string() }))
            } else {
                format!("{x}\n")
            })
        }
        Command::Classify { operand, format } => {
            let c = classify(&parse_operand(&operand)?.surd())?;
            Ok(if format.json { record(c.to_json()) } else { classification_text(&c) })
        }
        Command::Convergents { operand, n, format } => {
            let x = parse_operand(&operand)?.surd();
            let conv = convergents(&expand(&x), n);
            Ok(if format.json {
                let rows: Vec<Value> = conv
                    .iter()
                    .map(|c| json!([c.p.to_string(), c.q.to_string()]))
                    .collect();
                record(json!({ "surd": x.to_string(), "convergents": rows }))
            } else {
                conv.iter()
                    .enumerate()
                    .map(|(k, c)| format!("{k}\t{}/{}\n", c.p, c.q))
                    .collect()
            })
        }
        Command::Equiv { first, second, format } => {
            let x = parse_operand(&first)?.surd();
            let y = parse_operand(&second)?.surd();
            // the certificate maps x to y
            let cert = match serret_matrix(&y, &x) {
                Ok(m) => Some(m),
                Err(surd_sails::Error::NotEquivalent(..)) => None,
                Err(e) => return Err(e.into()),
            };
            Ok(match (format.json, cert) {
                (true, cert) => record(json!({
                    "first": x.to_string(),
                    "second": y.to_string(),
                    "equivalent": cert.is_some(),
                    "certificate": cert.map(|m| m.to_string()),
                })),
                (false, Some(m)) => format!("equivalent: true\ncertificate: {m}\n"),
                (false, None) => "equivalent: false\n".to_string(),
            })
        }
        Command::Auto { a, b, c, format } => {
            let int = |s: &str| {
                s.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Failure::Input(format!("'{s}' is not an integer")))
            };
            let form = QuadraticForm::from_polynomial(&int(&a)?, &int(&b)?, &int(&c)?)?;
            let m = lagrange_automorphism(&form)?;
            let (expanding, contracting) = fixed_line_surds(&m)?;
            Ok(if format.json {
                record(json!({
                    "form": [form.a.to_string(), form.b.to_string(), form.c.to_string()],
                    "automorphism": m.to_string(),
                    "trace": m.trace().to_string(),
                    "expanding": expanding.to_string(),
                    "contracting": contracting.to_string(),
                }))
            } else {
                format!(
                    "form: ({}, {}, {})\nautomorphism: {m}\ntrace: {}\nexpanding slope: {expanding}\ncontracting slope: {contracting}\n",
                    form.a,
                    form.b,
                    form.c,
                    m.trace()
                )
            })
        }
        Command::Sail { operand, range, svg, format } => {
            let x = parse_operand(&operand)?.surd();
            let (k0, k1) = parse_range(&range)?;
            let (even, odd) = sail_from_surd(&x, k0..=k1);
            if let Some(path) = svg {
                let sails = [even.clone(), odd.clone()];
                write_atomically(&path, emit_svg(&sails, Viewport::around(&sails)).as_bytes())?;
            }
            let full = even.merge(&odd)?;
            Ok(if format.json {
                record(json!({
                    "surd": x.to_string(),
                    "range": [k0, k1],
                    "sails": [even.to_json(), odd.to_json()],
                }))
            } else {
                let mut out = format!("sail of {x} for {k0} <= k <= {k1}\nk\tsail\tvertex\ta_k\n");
                for (k, v) in full.vertices() {
                    let letter = full.letter(k).map_or("-".to_string(), |a| a.to_string());
                    let side = if k.rem_euclid(2) == 0 { "K1" } else { "K2" };
                    let _ = writeln!(out, "{k}\t{side}\t{v}\t{letter}");
                }
                out
            })
        }
        Command::Survey { dmax, json, csv } => survey(dmax, json, csv),
    }
}

fn record(v: Value) -> String {
    format!("{v}\n")
}

fn classification_text(c: &Classification) -> String {
    let join = |xs: Vec<String>| if xs.is_empty() { "none".to_string() } else { xs.join(", ") };
    let mut out = String::new();
    let _ = writeln!(out, "surd: {}", c.surd);
    let period: Vec<String> = c.period.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "period: ({})", period.join(", "));
    let _ = writeln!(out, "flags: {}", join(c.flags.iter().map(ToString::to_string).collect()));
    let _ = writeln!(out, "centers: {}", join(c.centers.iter().map(ToString::to_string).collect()));
    for (flag, w) in &c.witnesses {
        let (name, v) = flag.invariant(&w.omega);
        let _ = writeln!(
            out,
            "witness {flag}: omega = {}, {name} = {v}, certificate {}",
            w.omega, w.certificate
        );
    }
    out
}

fn worker_count() -> Result<usize, Failure> {
    match std::env::var("SURD_SAILS_THREADS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Input(format!("SURD_SAILS_THREADS={s} is not a count"))),
        // 0 lets rayon pick
        Err(_) => Ok(0),
    }
}

fn survey(dmax: u64, json_out: Option<Option<std::path::PathBuf>>, csv_out: Option<std::path::PathBuf>) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count()?)
        .build()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let surds = reduced_surds(dmax);
    // order of `surds` is kept by the indexed collect
    let rows: Vec<(u64, Classification)> = pool.install(|| {
        surds
            .par_iter()
            .map(|(disc, x)| classify(x).map(|c| (*disc, c)))
            .collect::<surd_sails::Result<_>>()
    })?;

    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for (_, c) in &rows {
        let flags: String = c.flags.iter().map(|f| f.letter()).collect();
        *tally.entry(if flags.is_empty() { "-".into() } else { flags }).or_default() += 1;
    }
    let mut summary = format!("reduced surds with discriminant <= {dmax}: {}\n", rows.len());
    for (flags, n) in &tally {
        let _ = writeln!(summary, "flags {flags}: {n}");
    }

    let records = || -> Value {
        rows.iter()
            .map(|(disc, c)| {
                let mut v = c.to_json();
                v["disc"] = json!(disc);
                v
            })
            .collect()
    };
    match (json_out, csv_out) {
        (Some(None), _) => Ok(record(records())),
        (Some(Some(path)), _) => {
            write_atomically(&path, format!("{}\n", records()).as_bytes())?;
            Ok(summary)
        }
        (None, Some(path)) => {
            write_atomically(&path, &csv_bytes(&rows)?)?;
            Ok(summary)
        }
        (None, None) => Ok(summary),
    }
}

fn csv_bytes(rows: &[(u64, Classification)]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Input(e.to_string());
    w.write_record(["disc", "surd", "period", "flags", "centers"]).map_err(csv_err)?;
    for (disc, c) in rows {
        let period: Vec<String> = c.period.iter().map(ToString::to_string).collect();
        let flags: String = c.flags.iter().map(|f| f.letter()).collect();
        let centers: Vec<String> = c.centers.iter().map(ToString::to_string).collect();
        w.write_record([
            disc.to_string(),
            c.surd.to_string(),
            period.join(" "),
            flags,
            centers.join(" "),
        ])
        .map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Failure::Input(e.to_string()))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Failure::Input(e.error.to_string()))?;
    Ok(())
}
