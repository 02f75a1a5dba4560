//! Moves and reconfiguration sequences under the TAR(k) rule.
//!
//! File format:
//!
//! ```text
//! s tar <k> <length>
//! d <v1> <v2> ...
//! + <v>
//! - <v>
//! ```

use std::fmt::{self, Write as _};

use crate::domination::Coverage;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Add,
    Remove,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub vertex: Vertex,
}

impl Move {
    pub fn add(vertex: Vertex) -> Self {
        Self { kind: MoveKind::Add, vertex }
    }

    pub fn remove(vertex: Vertex) -> Self {
        Self { kind: MoveKind::Remove, vertex }
    }

    pub fn inverse(self) -> Self {
        let kind = match self.kind {
            MoveKind::Add => MoveKind::Remove,
            MoveKind::Remove => MoveKind::Add,
        };
        Self { kind, ..self }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.kind {
            MoveKind::Add => '+',
            MoveKind::Remove => '-',
        };
        write!(f, "{sign} {}", self.vertex + 1)
    }
}

/// Applies a single move, rejecting a redundant add or an absent removal.
pub fn apply_move(s: &VertexSet, mv: Move) -> Result<VertexSet> {
    let mut out = s.clone();
    apply_in_place(&mut out, mv)?;
    Ok(out)
}

fn apply_in_place(s: &mut VertexSet, mv: Move) -> Result<()> {
    match mv.kind {
        MoveKind::Add if !s.insert(mv.vertex) => Err(Error::RedundantAdd(mv.vertex)),
        MoveKind::Remove if !s.remove(mv.vertex) => Err(Error::AbsentRemove(mv.vertex)),
        _ => Ok(()),
    }
}

/// A start set, a list of moves and the budget `k` the sequence claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigSequence {
    pub start: VertexSet,
    pub moves: Vec<Move>,
    pub k: usize,
}

impl ReconfigSequence {
    pub fn empty(start: VertexSet, k: usize) -> Self {
        Self {
            start,
            moves: Vec::new(),
            k,
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// All sets `D_0, ..., D_ℓ` visited by the sequence.
    pub fn states(&self) -> Result<Vec<VertexSet>> {
        let mut cur = self.start.clone();
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(cur.clone());
        for &mv in &self.moves {
            apply_in_place(&mut cur, mv)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<VertexSet> {
        let mut cur = self.start.clone();
        for &mv in &self.moves {
            apply_in_place(&mut cur, mv)?;
        }
        Ok(cur)
    }

    /// Largest intermediate set size (moves must be well-formed).
    pub fn max_size(&self) -> Result<usize> {
        let mut size = self.start.len();
        let mut max = size;
        let mut cur = self.start.clone();
        for &mv in &self.moves {
            apply_in_place(&mut cur, mv)?;
            size = cur.len();
            max = max.max(size);
        }
        Ok(max)
    }

    /// The same walk traversed backwards, under the same `k`.
    pub fn reversed(&self) -> Result<ReconfigSequence> {
        Ok(ReconfigSequence {
            start: self.end()?,
            moves: self.moves.iter().rev().map(|m| m.inverse()).collect(),
            k: self.k,
        })
    }

    /// Appends `next`, which must start where `self` ends.
    pub fn concat(&self, next: &ReconfigSequence) -> Result<ReconfigSequence> {
        let end = self.end()?;
        if end != next.start {
            return Err(Error::InvalidSequence(format!(
                "cannot join: first ends at {}, second starts at {}",
                end.braced(),
                next.start.braced()
            )));
        }
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&next.moves);
        Ok(ReconfigSequence {
            start: self.start.clone(),
            moves,
            k: self.k.max(next.k),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("s tar {} {}\n", self.k, self.moves.len());
        if self.start.is_empty() {
            out.push_str("d\n");
        } else {
            let _ = writeln!(out, "d {}", self.start);
        }
        for mv in &self.moves {
            let _ = writeln!(out, "{mv}");
        }
        out
    }

    /// Parses the sequence format. Ids are not range-checked here; the
    /// verifier reports out-of-range vertices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut start: Option<VertexSet> = None;
        let mut moves = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "s" => {
                    if header.is_some() {
                        return Err(Error::parse(line_no, "duplicate header"));
                    }
                    if toks.len() != 4 || toks[1] != "tar" {
                        return Err(Error::parse(line_no, "expected `s tar <k> <length>`"));
                    }
                    header = Some((num(toks[2], line_no)?, num(toks[3], line_no)?));
                }
                "d" => {
                    if header.is_none() || start.is_some() {
                        return Err(Error::parse(line_no, "`d` line must follow the header once"));
                    }
                    let set = VertexSet::parse(&toks[1..].join(" "), None)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    start = Some(set);
                }
                "+" | "-" => {
                    if start.is_none() {
                        return Err(Error::parse(line_no, "move before the `d` line"));
                    }
                    if toks.len() != 2 {
                        return Err(Error::parse(line_no, "expected `+ <v>` or `- <v>`"));
                    }
                    let id = num(toks[1], line_no)?;
                    if id == 0 {
                        return Err(Error::parse(line_no, "vertex ids are 1-based"));
                    }
                    moves.push(if toks[0] == "+" {
                        Move::add(id - 1)
                    } else {
                        Move::remove(id - 1)
                    });
                }
                other => return Err(Error::parse(line_no, format!("unknown line type `{other}`"))),
            }
        }
        let (k, len) = header.ok_or_else(|| Error::parse(0, "missing `s tar` header"))?;
        let start = start.ok_or_else(|| Error::parse(0, "missing `d` line"))?;
        if moves.len() != len {
            return Err(Error::parse(
                text.lines().count(),
                format!("header declares {len} moves, found {}", moves.len()),
            ));
        }
        Ok(Self { start, moves, k })
    }
}

fn num(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad number `{tok}`")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationReason {
    NotDominating { undominated: Vertex },
    TooLarge { size: usize, k: usize },
    BadMove(String),
    VertexOutOfRange(Vertex),
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationReason::NotDominating { undominated } => {
                write!(f, "not dominating (vertex {} undominated)", undominated + 1)
            }
            ViolationReason::TooLarge { size, k } => write!(f, "size {size} > k = {k}"),
            ViolationReason::BadMove(msg) => write!(f, "bad move: {msg}"),
            ViolationReason::VertexOutOfRange(v) => write!(f, "vertex {} out of range", v + 1),
        }
    }
}

/// `step` 0 is the start set; step `i` is the set after move `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub step: usize,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    /// Budget the sequence was checked against.
    pub k: usize,
    pub violation: Option<Violation>,
    pub length: usize,
    /// Largest set size among the steps replayed.
    pub max_size: usize,
    /// Final set, when every move could be applied.
    pub end: Option<VertexSet>,
    /// `None` when no expected end was supplied.
    pub end_matches: Option<bool>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid)?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "length: {}", self.length)?;
        writeln!(f, "max size: {}", self.max_size)?;
        if let Some(end) = &self.end {
            writeln!(f, "end: {}", end.braced())?;
        }
        if let Some(m) = self.end_matches {
            writeln!(f, "end matches expected: {m}")?;
        }
        if let Some(v) = &self.violation {
            writeln!(f, "violation at step {}: {}", v.step, v.reason)?;
        }
        Ok(())
    }
}

/// Replays `seq` against `g` under its own `k`.
pub fn verify_sequence(
    g: &Graph,
    seq: &ReconfigSequence,
    expected_end: Option<&VertexSet>,
) -> VerificationReport {
    verify_sequence_at(g, seq, seq.k, expected_end)
}

/// Replays `seq` under an explicit budget `k`. Violations are reported, not
/// raised; replay continues past domination/size violations so `max_size`
/// covers the whole walk, but stops at a malformed move.
pub fn verify_sequence_at(
    g: &Graph,
    seq: &ReconfigSequence,
    k: usize,
    expected_end: Option<&VertexSet>,
) -> VerificationReport {
    let mut report = VerificationReport {
        valid: false,
        k,
        violation: None,
        length: seq.moves.len(),
        max_size: seq.start.len(),
        end: None,
        end_matches: None,
    };
    let mut first: Option<Violation> = None;
    let note = |first: &mut Option<Violation>, step: usize, reason: ViolationReason| {
        first.get_or_insert(Violation { step, reason });
    };
    let check = |first: &mut Option<Violation>, step: usize, cur: &VertexSet, cov: &Coverage| {
        if cur.len() > k {
            note(first, step, ViolationReason::TooLarge { size: cur.len(), k });
        }
        if let Some(undominated) = g.vertices().find(|&v| !cov.is_dominated(v)) {
            note(first, step, ViolationReason::NotDominating { undominated });
        }
    };

    if let Some(v) = seq.start.last().filter(|&v| v >= g.n()) {
        report.violation = Some(Violation {
            step: 0,
            reason: ViolationReason::VertexOutOfRange(v),
        });
        return report;
    }
    let mut cur = seq.start.clone();
    let mut cov = Coverage::new(g, &cur);
    check(&mut first, 0, &cur, &cov);

    for (i, &mv) in seq.moves.iter().enumerate() {
        let step = i + 1;
        if mv.vertex >= g.n() {
            note(&mut first, step, ViolationReason::VertexOutOfRange(mv.vertex));
            report.violation = first;
            return report;
        }
        if let Err(e) = apply_in_place(&mut cur, mv) {
            note(&mut first, step, ViolationReason::BadMove(e.to_string()));
            report.violation = first;
            return report;
        }
        match mv.kind {
            MoveKind::Add => cov.add(mv.vertex),
            MoveKind::Remove => cov.remove(mv.vertex),
        }
        report.max_size = report.max_size.max(cur.len());
        check(&mut first, step, &cur, &cov);
    }

    report.end_matches = expected_end.map(|e| *e == cur);
    report.valid = first.is_none() && report.end_matches != Some(false);
    report.violation = first;
    report.end = Some(cur);
    report
}

/// Incrementally records moves while tracking the current set.
///
/// Used by the constructions; rejects malformed moves and budget overruns
/// as they happen.
#[derive(Clone, Debug)]
pub(crate) struct Walk {
    start: VertexSet,
    current: VertexSet,
    moves: Vec<Move>,
    k: usize,
}

impl Walk {
    pub fn new(start: &VertexSet, k: usize) -> Result<Self> {
        if start.len() > k {
            return Err(Error::BudgetExceeded { size: start.len(), k });
        }
        Ok(Self {
            start: start.clone(),
            current: start.clone(),
            moves: Vec::new(),
            k,
        })
    }

    pub fn current(&self) -> &VertexSet {
        &self.current
    }

    pub fn add(&mut self, v: Vertex) -> Result<()> {
        if !self.current.insert(v) {
            return Err(Error::RedundantAdd(v));
        }
        if self.current.len() > self.k {
            return Err(Error::BudgetExceeded {
                size: self.current.len(),
                k: self.k,
            });
        }
        self.moves.push(Move::add(v));
        Ok(())
    }

    pub fn remove(&mut self, v: Vertex) -> Result<()> {
        if !self.current.remove(v) {
            return Err(Error::AbsentRemove(v));
        }
        self.moves.push(Move::remove(v));
        Ok(())
    }

    pub fn add_all(&mut self, vs: impl IntoIterator<Item = Vertex>) -> Result<()> {
        vs.into_iter().try_for_each(|v| self.add(v))
    }

    pub fn remove_all(&mut self, vs: impl IntoIterator<Item = Vertex>) -> Result<()> {
        vs.into_iter().try_for_each(|v| self.remove(v))
    }

    /// Replays another sequence's moves from the current set.
    pub fn follow(&mut self, seq: &ReconfigSequence) -> Result<()> {
        if seq.start != self.current {
            return Err(Error::ClaimViolated(format!(
                "walk is at {}, sequence starts at {}",
                self.current.braced(),
                seq.start.braced()
            )));
        }
        for &mv in &seq.moves {
            match mv.kind {
                MoveKind::Add => self.add(mv.vertex)?,
                MoveKind::Remove => self.remove(mv.vertex)?,
            }
        }
        Ok(())
    }

    pub fn finish(self) -> ReconfigSequence {
        ReconfigSequence {
            start: self.start,
            moves: self.moves,
            k: self.k,
        }
    }
}

/// Final self-check every construction runs before returning.
pub(crate) fn certify(
    g: &Graph,
    seq: ReconfigSequence,
    expected_end: &VertexSet,
    what: &str,
) -> Result<ReconfigSequence> {
    let report = verify_sequence(g, &seq, Some(expected_end));
    if report.valid {
        Ok(seq)
    } else {
        Err(Error::ClaimViolated(format!(
            "{what} produced an invalid sequence: {}",
            report
                .violation
                .map(|v| format!("step {}: {}", v.step, v.reason))
                .unwrap_or_else(|| "end set mismatch".into())
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_path, gen_star};

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::from_one_based(ids.iter().copied())
    }

    fn seq(start: &[usize], moves: &[(char, usize)], k: usize) -> ReconfigSequence {
        ReconfigSequence {
            start: set(start),
            moves: moves
                .iter()
                .map(|&(c, v)| if c == '+' { Move::add(v - 1) } else { Move::remove(v - 1) })
                .collect(),
            k,
        }
    }

    #[test]
    fn apply_moves() {
        assert_eq!(apply_move(&set(&[1, 3]), Move::add(1)).unwrap(), set(&[1, 2, 3]));
        assert_eq!(apply_move(&set(&[1, 2, 3]), Move::remove(0)).unwrap(), set(&[2, 3]));
        assert!(matches!(
            apply_move(&set(&[2]), Move::remove(2)),
            Err(Error::AbsentRemove(2))
        ));
        assert!(matches!(
            apply_move(&set(&[2]), Move::add(1)),
            Err(Error::RedundantAdd(1))
        ));
    }

    #[test]
    fn verify_valid_path_walk() {
        let p3 = gen_path(3).unwrap();
        let s = seq(&[1, 3], &[('+', 2), ('-', 1), ('-', 3)], 3);
        let r = verify_sequence(&p3, &s, Some(&set(&[2])));
        assert!(r.valid);
        assert_eq!(r.length, 3);
        assert_eq!(r.max_size, 3);
        assert_eq!(r.end, Some(set(&[2])));
        assert_eq!(r.end_matches, Some(true));
    }

    #[test]
    fn verify_reports_first_violation() {
        let p3 = gen_path(3).unwrap();
        let r = verify_sequence(&p3, &seq(&[1, 3], &[('-', 1)], 3), None);
        assert!(!r.valid);
        let v = r.violation.unwrap();
        assert_eq!(v.step, 1);
        assert_eq!(v.reason, ViolationReason::NotDominating { undominated: 0 });

        let k13 = gen_star(3).unwrap();
        let r = verify_sequence(&k13, &seq(&[2, 3, 4], &[('+', 1)], 3), None);
        assert_eq!(
            r.violation.unwrap(),
            Violation {
                step: 1,
                reason: ViolationReason::TooLarge { size: 4, k: 3 }
            }
        );

        let r = verify_sequence(&p3, &seq(&[2], &[('-', 3)], 3), None);
        assert!(matches!(r.violation.unwrap().reason, ViolationReason::BadMove(_)));
        assert_eq!(r.end, None);

        let r = verify_sequence(&p3, &seq(&[2], &[('+', 9)], 3), None);
        assert_eq!(r.violation.unwrap().reason, ViolationReason::VertexOutOfRange(8));

        // wrong expected end alone makes it invalid
        let r = verify_sequence(&p3, &seq(&[2], &[], 3), Some(&set(&[1, 3])));
        assert!(!r.valid && r.violation.is_none());
    }

    #[test]
    fn smaller_external_budget() {
        let p3 = gen_path(3).unwrap();
        let s = seq(&[1, 3], &[('+', 2), ('-', 1), ('-', 3)], 3);
        let r = verify_sequence_at(&p3, &s, 2, None);
        assert!(!r.valid);
        assert_eq!(r.k, 2);
        assert_eq!(r.violation.unwrap().step, 1);
    }

    #[test]
    fn reverse_flips_and_reorders() {
        let s = seq(&[1, 3], &[('+', 2), ('-', 1)], 3);
        let r = s.reversed().unwrap();
        assert_eq!(r, seq(&[2, 3], &[('+', 1), ('-', 2)], 3));
        assert_eq!(r.reversed().unwrap(), s);
        let e = seq(&[1], &[], 2);
        assert_eq!(e.reversed().unwrap(), e);
    }

    #[test]
    fn concat_requires_matching_endpoint() {
        let a = seq(&[1, 3], &[('+', 2)], 3);
        let b = seq(&[1, 2, 3], &[('-', 1)], 3);
        let c = a.concat(&b).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.end().unwrap(), set(&[2, 3]));
        assert!(b.concat(&a).is_err());
    }

    #[test]
    fn text_format() {
        let s = seq(&[1, 3], &[('+', 2), ('-', 1), ('-', 3)], 3);
        let text = s.to_text();
        assert_eq!(text, "s tar 3 3\nd 1 3\n+ 2\n- 1\n- 3\n");
        assert_eq!(ReconfigSequence::parse(&text).unwrap(), s);
        let empty = ReconfigSequence::empty(VertexSet::new(), 0);
        assert_eq!(ReconfigSequence::parse(&empty.to_text()).unwrap(), empty);
        assert!(ReconfigSequence::parse("s tar 3 2\nd 1\n+ 2\n").is_err());
        assert!(ReconfigSequence::parse("d 1\n").is_err());
        assert!(ReconfigSequence::parse("s tar 3 1\nd 1\n* 2\n").is_err());
    }
}
