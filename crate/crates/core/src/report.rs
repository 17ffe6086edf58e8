//! Claim reports and the known-discrepancy allowlist.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::group::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Skipped => "skipped",
        })
    }
}

/// One counterexample to one part of a claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub part: String,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub title: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    /// Number of cases examined.
    pub checked: u64,
    /// Number of failing cases; only the first few per part become witnesses.
    pub failures: u64,
    pub witnesses: Vec<Witness>,
    /// Every failing part is on the allowlist.
    pub known_discrepancy: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ClaimReport {
    pub fn skipped(claim_id: &str, title: &str, group: Option<&GroupSpec>, why: String) -> Self {
        ClaimReport {
            claim_id: claim_id.into(),
            title: title.into(),
            status: Status::Skipped,
            group: group.cloned(),
            checked: 0,
            failures: 0,
            witnesses: vec![],
            known_discrepancy: false,
            note: Some(why),
            elapsed_ms: None,
        }
    }

    /// Refuted outside the allowlist.
    pub fn is_unexpected(&self) -> bool {
        self.status == Status::Refuted && !self.known_discrepancy
    }

    pub fn failing_parts(&self) -> Vec<&str> {
        let mut parts: Vec<&str> = self.witnesses.iter().map(|w| w.part.as_str()).collect();
        parts.sort();
        parts.dedup();
        parts
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{:<24} {:<9} {}",
            self.claim_id,
            self.status.to_string(),
            self.title
        );
        if self.known_discrepancy {
            out.push_str(" [known discrepancy]");
        }
        out.push_str(&format!("\n    checked {} case(s)", self.checked));
        if self.failures > 0 {
            out.push_str(&format!(", {} failure(s)", self.failures));
        }
        if let Some(n) = &self.note {
            out.push_str(&format!("\n    note: {n}"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("\n    [{}] {}", w.part, w.detail));
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("\n    {ms} ms"));
        }
        out
    }
}

/// A claim part that is expected to fail as stated.
#[derive(Clone, Debug, Deserialize)]
pub struct AllowEntry {
    pub claim_id: String,
    pub parts: Vec<String>,
    pub reason: String,
}

pub fn allowlist() -> &'static [AllowEntry] {
    static LIST: OnceLock<Vec<AllowEntry>> = OnceLock::new();
    LIST.get_or_init(|| {
        serde_json::from_str(include_str!("../data/known_discrepancies.json"))
            .expect("shipped allowlist parses")
    })
}

pub fn is_allowed(claim_id: &str, part: &str) -> bool {
    allowlist()
        .iter()
        .any(|e| e.claim_id == claim_id && e.parts.iter().any(|p| p == part))
}

pub fn allow_reason(claim_id: &str) -> Option<&'static str> {
    allowlist()
        .iter()
        .find(|e| e.claim_id == claim_id)
        .map(|e| e.reason.as_str())
}

/// Accumulates cases for one claim.
pub struct Checker {
    claim_id: String,
    title: String,
    group: Option<GroupSpec>,
    checked: u64,
    failures: u64,
    witnesses: Vec<Witness>,
    note: Option<String>,
}

const WITNESSES_PER_PART: usize = 3;

impl Checker {
    pub fn new(claim_id: &str, title: &str, group: Option<&GroupSpec>) -> Self {
        Self {
            claim_id: claim_id.into(),
            title: title.into(),
            group: group.cloned(),
            checked: 0,
            failures: 0,
            witnesses: vec![],
            note: None,
        }
    }

    /// Records one case; `witness` is only evaluated on failure.
    pub fn check(&mut self, part: &str, ok: bool, witness: impl FnOnce() -> (String, Value)) {
        self.checked += 1;
        if !ok {
            self.fail(part, witness);
        }
    }

    pub fn fail(&mut self, part: &str, witness: impl FnOnce() -> (String, Value)) {
        self.failures += 1;
        let shown = self.witnesses.iter().filter(|w| w.part == part).count();
        if shown < WITNESSES_PER_PART {
            let (detail, data) = witness();
            self.witnesses.push(Witness {
                part: part.into(),
                detail,
                data,
            });
        }
    }

    pub fn add_checked(&mut self, n: u64) {
        self.checked += n;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.note = Some(note.into());
    }

    pub fn finish(self) -> ClaimReport {
        let status = if self.witnesses.is_empty() {
            Status::Verified
        } else {
            Status::Refuted
        };
        let known = status == Status::Refuted
            && self
                .witnesses
                .iter()
                .all(|w| is_allowed(&self.claim_id, &w.part));
        let note = self.note.or_else(|| {
            known
                .then(|| allow_reason(&self.claim_id).map(str::to_string))
                .flatten()
        });
        ClaimReport {
            claim_id: self.claim_id,
            title: self.title,
            status,
            group: self.group,
            checked: self.checked,
            failures: self.failures,
            witnesses: self.witnesses,
            known_discrepancy: known,
            note,
            elapsed_ms: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allowlist_parses_and_matches() {
        assert!(!allowlist().is_empty());
        assert!(is_allowed("lemma-7.5.1", "distinct"));
        assert!(!is_allowed("lemma-7.5.1", "no-such-part"));
    }

    #[test]
    fn checker_statuses() {
        let mut c = Checker::new("lemma-7.5.1", "t", None);
        c.check("distinct", true, || unreachable!());
        assert_eq!(c.finish().status, Status::Verified);

        let mut c = Checker::new("lemma-7.5.1", "t", None);
        for _ in 0..10 {
            c.check("distinct", false, || ("x".into(), Value::Null));
        }
        let r = c.finish();
        assert_eq!(r.status, Status::Refuted);
        assert!(r.known_discrepancy && !r.is_unexpected());
        assert_eq!(r.witnesses.len(), WITNESSES_PER_PART);
        assert_eq!(r.failures, 10);

        let mut c = Checker::new("cor-8.12", "t", None);
        c.check("closed", false, || ("x".into(), Value::Null));
        assert!(c.finish().is_unexpected());
    }
}
