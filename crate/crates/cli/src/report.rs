//! Verification records and their CSV/JSON emission.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;

pub const CSV_HEADER: [&str; 7] = ["suite", "claim", "computed", "expected", "provenance", "verdict", "ms"];

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// An independent oracle or brute force.
    Derived,
    /// A value stated in the source literature.
    Published,
    /// Immediate from the definitions.
    Trivial,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Derived => "derived",
            Provenance::Published => "published",
            Provenance::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational; never affects the exit code.
    Report,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Report => "report",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: String,
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub provenance: Provenance,
    pub verdict: Verdict,
    pub ms: Option<u64>,
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

impl Record {
    /// Pass iff `computed == expected`.
    pub fn check<T: Serialize + PartialEq>(
        suite: &str,
        claim: impl Into<String>,
        computed: T,
        expected: T,
        provenance: Provenance,
    ) -> Self {
        let pass = computed == expected;
        Self::judged(suite, claim, &computed, &expected, provenance, pass)
    }

    /// A record whose verdict is decided by the caller.
    pub fn judged<C: Serialize, E: Serialize>(
        suite: &str,
        claim: impl Into<String>,
        computed: &C,
        expected: &E,
        provenance: Provenance,
        pass: bool,
    ) -> Self {
        Self {
            suite: suite.into(),
            claim: claim.into(),
            computed: compact(computed),
            expected: compact(expected),
            provenance,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            ms: None,
        }
    }

    pub fn report<C: Serialize>(suite: &str, claim: impl Into<String>, computed: &C, provenance: Provenance) -> Self {
        Self {
            suite: suite.into(),
            claim: claim.into(),
            computed: compact(computed),
            expected: String::new(),
            provenance,
            verdict: Verdict::Report,
            ms: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Stamps elapsed time on records when timing is requested.
pub fn stamp(records: &mut [Record], start: Instant, timing: bool) {
    if timing {
        let ms = start.elapsed().as_millis() as u64;
        records.iter_mut().for_each(|r| r.ms = Some(ms));
    }
}

pub fn all_pass(records: &[Record]) -> bool {
    !records.iter().any(Record::failed)
}

pub fn write_csv<W: Write>(out: W, records: &[Record]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let ms = r.ms.map(|m| m.to_string()).unwrap_or_default();
        w.write_record([
            r.suite.as_str(),
            &r.claim,
            &r.computed,
            &r.expected,
            r.provenance.tag(),
            r.verdict.tag(),
            &ms,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, records: &[Record]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}
