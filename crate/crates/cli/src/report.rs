//! Human-readable and machine-readable reports.

use std::fmt::Write as _;
use std::time::Duration;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use chowcalc_core::abelian::{DiagGroup, FgAbGroup};
use chowcalc_core::chowcalc::{DegreeValue, ExactSequence, MixedGroup, Piece, Rule, SequenceReport};
use chowcalc_core::spectral::PageEntry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    HypothesisFailed,
}

/// A group in structured form. Big integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub text: String,
    pub torus_rank: usize,
    pub torus_finite: Vec<String>,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub graded: bool,
    pub pieces: Vec<PieceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub source: String,
    pub kind: String,
    pub text: String,
    pub rank: usize,
    pub torsion: Vec<String>,
}

fn strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(BigInt::to_string).collect()
}

fn parse_all(xs: &[String]) -> Option<Vec<BigInt>> {
    xs.iter().map(|x| x.parse().ok()).collect()
}

impl GroupJson {
    pub fn from_mixed(g: &MixedGroup) -> Self {
        GroupJson {
            text: g.to_string(),
            torus_rank: g.torus.torus_rank(),
            torus_finite: strings(g.torus.finite().torsion()),
            free_rank: g.discrete.free_rank(),
            torsion: strings(g.discrete.torsion()),
            graded: g.graded,
            pieces: g.pieces.iter().map(PieceJson::from_piece).collect(),
        }
    }

    pub fn from_entry(e: &PageEntry) -> Self {
        Self::from_mixed(&MixedGroup::from_pieces(vec![Piece {
            source: String::new(),
            value: e.clone(),
        }]))
    }

    /// Rebuilds the invariants (provenance is kept only as text).
    pub fn to_mixed(&self) -> Option<MixedGroup> {
        let finite = FgAbGroup::new(0, parse_all(&self.torus_finite)?).ok()?;
        let torus = DiagGroup::new(self.torus_rank, finite).ok()?;
        let discrete = FgAbGroup::new(self.free_rank, parse_all(&self.torsion)?).ok()?;
        let mut g = MixedGroup::from_pieces(vec![
            Piece { source: String::new(), value: PageEntry::Torus(torus) },
            Piece { source: String::new(), value: PageEntry::Discrete(discrete) },
        ]);
        g.graded = self.graded;
        Some(g)
    }
}

impl PieceJson {
    fn from_piece(p: &Piece) -> Self {
        let (kind, rank, torsion) = match &p.value {
            PageEntry::Torus(g) => ("torus", g.torus_rank(), strings(g.finite().torsion())),
            PageEntry::Discrete(g) => ("discrete", g.free_rank(), strings(g.torsion())),
        };
        PieceJson {
            source: p.source.clone(),
            kind: kind.into(),
            text: p.value.to_string(),
            rank,
            torsion,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub m: i64,
    pub group: GroupJson,
    pub rule: String,
}

impl DegreeRow {
    pub fn new(m: i64, v: &DegreeValue) -> Self {
        DegreeRow {
            m,
            group: GroupJson::from_mixed(&v.value),
            rule: v.rule.to_string(),
        }
    }

    pub fn forced_zero(m: i64, rule: Rule) -> Self {
        DegreeRow {
            m,
            group: GroupJson::from_mixed(&MixedGroup::trivial()),
            rule: rule.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub name: String,
    pub group: GroupJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub label: String,
    pub terms: Vec<TermJson>,
    pub rank_balance: i64,
    pub consistent: bool,
}

impl SequenceJson {
    fn from_sequence(s: &ExactSequence) -> Self {
        SequenceJson {
            label: s.label.clone(),
            terms: s
                .terms
                .iter()
                .map(|(name, g)| TermJson { name: name.clone(), group: GroupJson::from_mixed(g) })
                .collect(),
            rank_balance: s.rank_balance(),
            consistent: s.is_consistent(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Entry {
    pub p: i64,
    pub q: i64,
    pub group: GroupJson,
}

/// Everything printed for one run. `timing` is left out of the machine
/// output so that it is reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub mode: String,
    pub dimension: usize,
    pub status: Status,
    /// Which statement produced the values.
    pub path: Option<String>,
    /// The group being computed, e.g. `CHC^1(X,m)`.
    pub target: String,
    /// `m` from 1 down to `1 - d`.
    pub table: Vec<DegreeRow>,
    /// `CHC^1(E,m)` when the main table is about `X`.
    pub divisor_table: Vec<DegreeRow>,
    pub outside_range: Vec<String>,
    pub checklist: Vec<CheckJson>,
    pub caveats: Vec<String>,
    pub sequences: Vec<SequenceJson>,
    pub e2_page: Vec<E2Entry>,
    pub failure: Option<String>,
    #[serde(skip)]
    pub timing: Option<Duration>,
}

impl Report {
    pub(crate) fn set_sequences(&mut self, r: &SequenceReport) {
        self.path = Some(r.path.to_string());
        self.checklist = r
            .checklist
            .iter()
            .map(|c| CheckJson { name: c.name.into(), holds: c.holds })
            .collect();
        self.caveats = r.caveats.clone();
        self.sequences = r.sequences.iter().map(SequenceJson::from_sequence).collect();
    }

    pub(crate) fn set_e2(&mut self, entries: &[((i64, i64), PageEntry)]) {
        self.e2_page = entries
            .iter()
            .map(|((p, q), e)| E2Entry { p: *p, q: *q, group: GroupJson::from_entry(e) })
            .collect();
    }

    /// Deterministic JSON, newline terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "chowcalc report ({} mode, dimension {})", self.mode, self.dimension);
        if let Some(p) = &self.path {
            let _ = writeln!(out, "applied: {p}");
        }
        match self.status {
            Status::Ok => {}
            Status::HypothesisFailed => {
                let _ = writeln!(
                    out,
                    "status: hypotheses not satisfied, no group values ({})",
                    self.failure.as_deref().unwrap_or("")
                );
            }
        }
        let table = |out: &mut String, title: &str, rows: &[DegreeRow]| {
            if rows.is_empty() {
                return;
            }
            let _ = writeln!(out, "\n{title}");
            let width = rows.iter().map(|r| r.group.text.len()).max().unwrap_or(1).max(5);
            for r in rows {
                let _ = writeln!(out, "  m = {:>3}  {:<width$}  {}", r.m, r.group.text, r.rule);
            }
        };
        table(&mut out, &self.target, &self.table);
        table(&mut out, "CHC^1(E,m)", &self.divisor_table);
        for line in &self.outside_range {
            let _ = writeln!(out, "  {line}");
        }
        if !self.checklist.is_empty() {
            let _ = writeln!(out, "\nhypotheses");
            for c in &self.checklist {
                let _ = writeln!(out, "  [{}] {}", if c.holds { "x" } else { " " }, c.name);
            }
        }
        if !self.caveats.is_empty() {
            let _ = writeln!(out, "\ncaveats");
            for c in &self.caveats {
                let _ = writeln!(out, "  - {c}");
            }
        }
        if !self.sequences.is_empty() {
            let _ = writeln!(out, "\nexact sequences");
            for s in &self.sequences {
                let terms: Vec<String> = s.terms.iter().map(|t| format!("{} = {}", t.name, t.group.text)).collect();
                let _ = writeln!(
                    out,
                    "  {} (rank balance {}, {}):\n    0 -> {} -> 0",
                    s.label,
                    s.rank_balance,
                    if s.consistent { "consistent" } else { "INCONSISTENT" },
                    terms.join(" -> ")
                );
            }
        }
        if !self.e2_page.is_empty() {
            let _ = writeln!(out, "\nE2 page");
            for e in &self.e2_page {
                let _ = writeln!(out, "  E2({},{}) = {}", e.p, e.q, e.group.text);
            }
        }
        if let Some(t) = self.timing {
            let _ = writeln!(out, "\ncomputed in {:.3} ms", t.as_secs_f64() * 1e3);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chowcalc_core::abelian::DiagGroup;

    fn graded() -> MixedGroup {
        MixedGroup::from_pieces(vec![
            Piece { source: "E2(1,-1)".into(), value: PageEntry::Torus(DiagGroup::torus(1)) },
            Piece {
                source: "E2(0,0)".into(),
                value: PageEntry::Discrete(FgAbGroup::new(2, vec![BigInt::from(6)]).unwrap()),
            },
        ])
    }

    #[test]
    fn group_json_round_trip() {
        let g = graded();
        let j = GroupJson::from_mixed(&g);
        assert!(j.graded);
        assert!(j.text.starts_with("gr:"), "{}", j.text);
        assert_eq!(j.pieces.len(), 2);
        assert!(j.to_mixed().unwrap().same_invariants(&g));
        let back: GroupJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn bad_numbers_do_not_rebuild() {
        let mut j = GroupJson::from_mixed(&graded());
        j.torsion = vec!["six".into()];
        assert!(j.to_mixed().is_none());
    }

    #[test]
    fn timing_stays_out_of_json() {
        let mut r = Report {
            schema_version: 1,
            mode: "divisor".into(),
            dimension: 3,
            status: Status::Ok,
            path: None,
            target: "CHC^1(E,m)".into(),
            table: vec![DegreeRow::forced_zero(-2, Rule::VanishesBelowDimension)],
            divisor_table: Vec::new(),
            outside_range: Vec::new(),
            checklist: Vec::new(),
            caveats: Vec::new(),
            sequences: Vec::new(),
            e2_page: Vec::new(),
            failure: None,
            timing: Some(Duration::from_millis(5)),
        };
        let json = r.to_json();
        assert!(!json.contains("timing"));
        assert!(r.render_text().contains("computed in"));
        r.timing = None;
        assert_eq!(Report::from_json(&json).unwrap(), r);
    }
}
