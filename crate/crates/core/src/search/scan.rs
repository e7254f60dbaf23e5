use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{point_to_r, r_to_triples, E1Context, RootBranch};
use crate::ec::{Order, Point};
use crate::error::{Error, Result};
use crate::qarith::Rat;
use crate::torsion::{classify_triple, lemma_4s_factors, TorsionClass};
use crate::triples::Triple;

/// One line of the candidate stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub n: u64,
    pub r: Option<Rat>,
    pub root_branch: Option<RootBranch>,
    pub a: Option<Rat>,
    pub b: Option<Rat>,
    pub c: Option<Rat>,
    pub all_positive: Option<bool>,
    pub torsion: Option<TorsionClass>,
    #[serde(with = "order_serde")]
    pub s_order: Option<Order>,
    pub j: Option<Rat>,
    pub skipped: bool,
    pub skip_reason: Option<String>,
}

mod order_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    use crate::ec::Order;

    pub fn serialize<S: Serializer>(o: &Option<Order>, s: S) -> Result<S::Ok, S::Error> {
        match o {
            None => s.serialize_none(),
            Some(Order::Finite(n)) => n.serialize(s),
            Some(Order::Infinite) => s.serialize_str("infinite"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Order>, D::Error> {
        match Value::deserialize(d)? {
            Value::Null => Ok(None),
            Value::String(s) if s == "infinite" => Ok(Some(Order::Infinite)),
            Value::Number(n) => n
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .map(|n| Some(Order::Finite(n)))
                .ok_or_else(|| D::Error::custom("order out of range")),
            other => Err(D::Error::custom(format!("bad order {other}"))),
        }
    }
}

impl CandidateRecord {
    fn skip(n: u64, r: Option<Rat>, reason: impl Into<String>) -> Self {
        CandidateRecord {
            n,
            r,
            root_branch: None,
            a: None,
            b: None,
            c: None,
            all_positive: None,
            torsion: None,
            s_order: None,
            j: None,
            skipped: true,
            skip_reason: Some(reason.into()),
        }
    }

    pub fn is_candidate(&self) -> bool {
        !self.skipped && self.all_positive == Some(true)
    }

    /// The triple carried by a non-skip record, revalidated.
    pub fn triple(&self) -> Option<Result<Triple>> {
        match (&self.a, &self.b, &self.c) {
            (Some(a), Some(b), Some(c)) => Some(Triple::validate(a.clone(), b.clone(), c.clone())),
            _ => None,
        }
    }
}

/// Records for `n * P1`. Every `n` yields at least one record, so a stream
/// can be resumed from its highest `n`.
pub fn process_multiple(n: u64, pt: &Point, verbose: bool) -> Vec<CandidateRecord> {
    let r = match point_to_r(pt) {
        Ok(r) => r,
        Err(e) => return vec![CandidateRecord::skip(n, None, e.to_string())],
    };
    let triples = match r_to_triples(&r) {
        Ok(t) => t,
        Err(e) => return vec![CandidateRecord::skip(n, Some(r), e.to_string())],
    };
    let mut out: Vec<CandidateRecord> = Vec::new();
    let mut seen: Vec<Triple> = Vec::new();
    for bt in triples {
        let same_sign = bt.triple.all_same_sign();
        if !same_sign && !verbose {
            continue;
        }
        let triple = if same_sign && bt.triple.a().is_negative() {
            bt.triple.negated()
        } else {
            bt.triple
        };
        if seen.iter().any(|t| t.same_set(&triple)) {
            continue;
        }
        let curve = triple.induced_curve();
        let s_order = curve
            .order_of(&triple.canonical_points().s)
            .expect("S' lies on the induced curve");
        let torsion = classify_triple(&triple).class;
        if s_order != Order::Finite(4)
            || torsion != TorsionClass::Z2xZ8
            || !lemma_4s_factors(&triple)[0].is_zero()
        {
            out.push(CandidateRecord::skip(
                n,
                Some(r.clone()),
                format!("torsion check failed: S' order {s_order}, class {torsion}"),
            ));
            continue;
        }
        out.push(CandidateRecord {
            n,
            r: Some(r.clone()),
            root_branch: Some(bt.branch),
            a: Some(triple.a().clone()),
            b: Some(triple.b().clone()),
            c: Some(triple.c().clone()),
            all_positive: Some(same_sign),
            torsion: Some(torsion),
            s_order: Some(s_order),
            j: Some(curve.j_invariant()),
            skipped: false,
            skip_reason: None,
        });
        seen.push(triple);
    }
    if out.is_empty() {
        out.push(CandidateRecord::skip(n, Some(r), "no same-sign triple"));
    }
    out
}

fn scan_range(ladder: &[Point], from: u64, verbose: bool) -> Vec<Vec<CandidateRecord>> {
    ladder
        .par_iter()
        .enumerate()
        .skip(from as usize)
        .map(|(i, pt)| process_multiple(i as u64 + 1, pt, verbose))
        .collect()
}

/// Records for `n = 1..=n_max`, in order of `n`.
pub fn scan(n_max: u64, verbose: bool) -> Vec<CandidateRecord> {
    let ladder = E1Context::new().ladder(n_max);
    scan_range(&ladder, 0, verbose).into_iter().flatten().collect()
}

pub fn write_records<W: Write>(mut w: W, records: &[CandidateRecord]) -> Result<()> {
    let mut buf = Vec::new();
    for rec in records {
        serde_json::to_writer(&mut buf, rec)?;
        buf.push(b'\n');
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(r: R) -> Result<Vec<CandidateRecord>> {
    let mut out = Vec::new();
    for line in BufReader::new(r).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    /// Highest `n` already present before this run.
    pub resumed_from: u64,
    pub processed: u64,
    pub candidates: usize,
    pub skipped: usize,
}

/// Loads the complete prefix of an existing stream. A malformed tail means
/// the last block was interrupted; that block is dropped and recomputed.
fn load_prefix(path: &Path) -> Result<(Vec<CandidateRecord>, u64)> {
    let Ok(file) = File::open(path) else {
        return Ok((Vec::new(), 0));
    };
    let mut records = Vec::new();
    let mut torn = false;
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CandidateRecord>(&line) {
            Ok(rec) if !torn => records.push(rec),
            _ => torn = true,
        }
    }
    if torn {
        if let Some(last) = records.last().map(|r| r.n) {
            records.retain(|r| r.n != last);
        }
    }
    let done = records.iter().map(|r| r.n).max().unwrap_or(0);
    Ok((records, done))
}

/// Appends records for every `n` not yet in the stream at `path`, one
/// `write_all` per `n`.
pub fn scan_resumable(path: &Path, n_max: u64, verbose: bool) -> Result<ScanSummary> {
    let (existing, done) = load_prefix(path)?;
    let mut file = OpenOptions::new()
        .create(true)
        .read(true)
        .write(true)
        .truncate(false)
        .open(path)?;
    // Rewrite the kept prefix so a torn tail never survives.
    file.set_len(0)?;
    file.seek(SeekFrom::Start(0))?;
    write_records(&mut file, &existing)?;

    let mut summary = ScanSummary {
        resumed_from: done,
        ..Default::default()
    };
    let count = |summary: &mut ScanSummary, recs: &[CandidateRecord]| {
        summary.candidates += recs.iter().filter(|r| r.is_candidate()).count();
        summary.skipped += recs.iter().filter(|r| r.skipped).count();
    };
    count(&mut summary, &existing);
    if n_max > done {
        let ladder = E1Context::new().ladder(n_max);
        for block in scan_range(&ladder, done, verbose) {
            write_records(&mut file, &block)?;
            summary.processed += 1;
            count(&mut summary, &block);
        }
    }
    file.sync_all().map_err(Error::from)?;
    Ok(summary)
}
