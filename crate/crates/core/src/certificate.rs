//! Cobordism certificates: replayable move sequences, their validation and
//! their transport between a long knot and its closure.
//!
//! Text form, one step per line between the two diagram lines:
//!
//! ```text
//! start: O1-U2+U1-O2+U3+O4-O3+U4-
//! saddle c1=0 p=4 c2=0 q=8
//! r2- a=1 b=2
//! r2- a=1 b=2
//! death c=1
//! end: ()
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::canonical::canonical_form;
use crate::code::{parse_gauss, render_gauss, ParseError};
use crate::gauss::GaussDiagram;
use crate::moves::{apply_move_with, Move, MoveError, MoveKind, MoveRules};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Counters {
    pub saddles: usize,
    pub births: usize,
    pub deaths: usize,
}

impl Counters {
    pub fn of(steps: &[Move]) -> Self {
        let mut c = Counters::default();
        for m in steps {
            c.record(m.kind());
        }
        c
    }

    pub fn record(&mut self, kind: MoveKind) {
        match kind {
            MoveKind::Saddle => self.saddles += 1,
            MoveKind::Birth => self.births += 1,
            MoveKind::Death => self.deaths += 1,
            _ => {}
        }
    }

    /// Whether the cobordism has the Euler characteristic of an annulus.
    pub fn is_annulus(&self) -> bool {
        self.saddles == self.births + self.deaths
    }

    /// Whether the cobordism has the Euler characteristic of a disk.
    pub fn is_disk(&self) -> bool {
        self.births + self.deaths == self.saddles + 1
    }
}

impl fmt::Display for Counters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} b={} d={}", self.saddles, self.births, self.deaths)
    }
}

/// Connected pieces of the cobordism surface traced by a move sequence.
///
/// Every live component carries the label of the piece it lies on; labels are
/// kept in first-appearance order. Pieces whose components have all died are
/// counted in `capped`. With connected ends and a single piece, the count
/// rules force genus zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pieces {
    labels: Vec<u8>,
    capped: usize,
}

impl Pieces {
    /// One piece per component of the starting diagram.
    pub fn new(components: usize) -> Self {
        Pieces {
            labels: (0..components as u8).collect(),
            capped: 0,
        }
    }

    /// Updates the labels for `m`, which must apply to a diagram with
    /// matching component count.
    pub fn record(&mut self, m: &Move) {
        match *m {
            Move::Saddle { c1, c2, .. } if c1 == c2 => self.labels.push(self.labels[c1]),
            Move::Saddle { c1, c2, .. } => {
                let (lo, hi) = (c1.min(c2), c1.max(c2));
                let (keep, gone) = (self.labels[lo], self.labels[hi]);
                self.labels.remove(hi);
                for l in &mut self.labels {
                    if *l == gone {
                        *l = keep;
                    }
                }
            }
            Move::Birth => self.labels.push(u8::MAX),
            Move::Death { comp } => {
                let l = self.labels.remove(comp);
                if !self.labels.contains(&l) {
                    self.capped += 1;
                }
            }
            _ => return,
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        let mut map: Vec<(u8, u8)> = Vec::new();
        for l in &mut self.labels {
            let next = map.len() as u8;
            *l = match map.iter().find(|(old, _)| old == l) {
                Some(&(_, new)) => new,
                None => {
                    map.push((*l, next));
                    next
                }
            };
        }
    }

    /// Pieces carrying live components.
    pub fn live(&self) -> usize {
        self.labels
            .iter()
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn capped(&self) -> usize {
        self.capped
    }

    pub fn count(&self) -> usize {
        self.live() + self.capped
    }

    /// Whether every live component lies on one piece and none was capped.
    pub fn is_connected_open(&self) -> bool {
        self.capped == 0 && self.live() <= 1
    }

    /// Piece counts of a whole sequence starting from `start_components`.
    pub fn of(start_components: usize, steps: &[Move]) -> Self {
        let mut p = Pieces::new(start_components);
        for m in steps {
            p.record(m);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub start: GaussDiagram,
    pub steps: Vec<Move>,
    pub end: GaussDiagram,
}

impl Certificate {
    pub fn counters(&self) -> Counters {
        Counters::of(&self.steps)
    }

    /// Applies every step to `start`, returning all intermediate diagrams
    /// (including `start`).
    pub fn replay(&self, rules: &MoveRules) -> Result<Vec<GaussDiagram>, (usize, MoveError)> {
        let mut out = vec![self.start.clone()];
        for (i, m) in self.steps.iter().enumerate() {
            let next = apply_move_with(out.last().unwrap(), m, rules).map_err(|e| (i, e))?;
            out.push(next);
        }
        Ok(out)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", render_gauss(&self.start))?;
        for m in &self.steps {
            writeln!(f, "{m}")?;
        }
        writeln!(f, "end: {}", render_gauss(&self.end))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateSyntaxError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: {source}")]
    Diagram { line: usize, source: ParseError },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
}

impl FromStr for Certificate {
    type Err = CertificateSyntaxError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut start = None;
        let mut end = None;
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            if end.is_some() {
                return Err(CertificateSyntaxError::Line {
                    line,
                    message: "content after `end:`".into(),
                });
            }
            if let Some(code) = s.strip_prefix("start:") {
                if start.is_some() || !steps.is_empty() {
                    return Err(CertificateSyntaxError::Line {
                        line,
                        message: "`start:` must come first".into(),
                    });
                }
                start = Some(
                    parse_gauss(code)
                        .map_err(|source| CertificateSyntaxError::Diagram { line, source })?,
                );
            } else if let Some(code) = s.strip_prefix("end:") {
                if start.is_none() {
                    return Err(CertificateSyntaxError::Missing("start"));
                }
                end = Some(
                    parse_gauss(code)
                        .map_err(|source| CertificateSyntaxError::Diagram { line, source })?,
                );
            } else {
                if start.is_none() {
                    return Err(CertificateSyntaxError::Missing("start"));
                }
                let m = s
                    .parse::<Move>()
                    .map_err(|e| CertificateSyntaxError::Line {
                        line,
                        message: e.to_string(),
                    })?;
                steps.push(m);
            }
        }
        Ok(Certificate {
            start: start.ok_or(CertificateSyntaxError::Missing("start"))?,
            steps,
            end: end.ok_or(CertificateSyntaxError::Missing("end"))?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// An annulus between two knots: `s = b + d`.
    Concordance,
    /// A disk bounded by the start knot: `b + d - s = 1`, ending empty.
    SliceDisk,
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "concordance" => Ok(Claim::Concordance),
            "slice-disk" => Ok(Claim::SliceDisk),
            other => Err(format!(
                "unknown claim `{other}` (expected concordance or slice-disk)"
            )),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Concordance => "concordance",
            Claim::SliceDisk => "slice-disk",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Concordance,
    SliceDisk,
    Invalid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Concordance => "concordance",
            Verdict::SliceDisk => "slice-disk",
            Verdict::Invalid => "invalid",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// A step does not apply to the diagram it meets.
    Step { index: usize, error: MoveError },
    /// The replay ends somewhere other than the stated end.
    EndMismatch { reached: String, expected: String },
    /// The counters break the rule for the claim.
    CountRule { claim: Claim, counters: Counters },
    /// A concordance needs single-component ends of the same kind.
    NotKnots {
        start_components: usize,
        end_components: usize,
    },
    /// A slice disk must start at a knot and end at the empty diagram.
    NotDisk {
        start_components: usize,
        end_components: usize,
    },
    /// The traced surface falls apart into several pieces, so the counts
    /// do not pin down its genus.
    Disconnected { pieces: usize },
}

impl Failure {
    /// Failures where the replay itself is sound but the ends cannot carry
    /// the claim.
    pub fn is_claim_shape(&self) -> bool {
        matches!(
            self,
            Failure::NotKnots { .. } | Failure::NotDisk { .. } | Failure::Disconnected { .. }
        )
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Step { index, error } => write!(f, "step {} ({error})", index + 1),
            Failure::EndMismatch { reached, expected } => {
                write!(f, "replay reaches `{reached}`, certificate states `{expected}`")
            }
            Failure::CountRule { claim: Claim::Concordance, counters } => {
                write!(f, "saddles must equal births + deaths ({counters})")
            }
            Failure::CountRule { claim: Claim::SliceDisk, counters } => {
                write!(f, "births + deaths - saddles must be 1 ({counters})")
            }
            Failure::NotKnots { start_components, end_components } => write!(
                f,
                "concordance ends must be knots of the same kind ({start_components} and {end_components} components)"
            ),
            Failure::NotDisk { start_components, end_components } => write!(
                f,
                "slice disk must run from a knot to the empty diagram ({start_components} and {end_components} components)"
            ),
            Failure::Disconnected { pieces } => write!(f, "the traced surface has {pieces} pieces, expected one"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub failure: Option<Failure>,
    pub verdict: Verdict,
    pub counters: Counters,
}

pub fn validate_certificate(c: &Certificate, claim: Claim) -> ValidationReport {
    validate_certificate_with(c, claim, &MoveRules::default())
}

pub fn validate_certificate_with(
    c: &Certificate,
    claim: Claim,
    rules: &MoveRules,
) -> ValidationReport {
    let counters = c.counters();
    let fail = |failure| ValidationReport {
        ok: false,
        failure: Some(failure),
        verdict: Verdict::Invalid,
        counters,
    };

    let reached = match c.replay(rules) {
        Ok(mut trail) => trail.pop().unwrap(),
        Err((index, error)) => return fail(Failure::Step { index, error }),
    };
    if canonical_form(&reached) != canonical_form(&c.end) {
        return fail(Failure::EndMismatch {
            reached: render_gauss(&reached),
            expected: render_gauss(&c.end),
        });
    }
    let (start_components, end_components) = (c.start.component_count(), c.end.component_count());
    match claim {
        Claim::Concordance => {
            if !counters.is_annulus() {
                return fail(Failure::CountRule { claim, counters });
            }
            if start_components != 1 || end_components != 1 || c.start.kind() != c.end.kind() {
                return fail(Failure::NotKnots {
                    start_components,
                    end_components,
                });
            }
        }
        Claim::SliceDisk => {
            if !counters.is_disk() {
                return fail(Failure::CountRule { claim, counters });
            }
            if start_components != 1 || end_components != 0 || c.end.is_long() {
                return fail(Failure::NotDisk {
                    start_components,
                    end_components,
                });
            }
        }
    }
    let pieces = Pieces::of(start_components, &c.steps).count();
    if pieces != 1 {
        return fail(Failure::Disconnected { pieces });
    }
    let verdict = match claim {
        Claim::Concordance => Verdict::Concordance,
        Claim::SliceDisk => Verdict::SliceDisk,
    };
    ValidationReport {
        ok: true,
        failure: None,
        verdict,
        counters,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("input certificate is invalid: {0}")]
    Invalid(Failure),
    #[error("certificate does not start at a long knot")]
    NotLong,
    #[error("certificate does not end at the unknot")]
    NotToUnknot,
    #[error("certificate does not start at the closure of the given long knot")]
    WrongStart,
    #[error("could not re-derive step {0} on the transported diagram")]
    Rederive(usize),
}

/// A slicing of a long knot slices its closure with the same moves.
pub fn transport_long_to_closure(c: &Certificate) -> Result<Certificate, TransportError> {
    if !c.start.is_long() {
        return Err(TransportError::NotLong);
    }
    let report = validate_certificate(c, Claim::Concordance);
    if let Some(f) = report.failure {
        return Err(TransportError::Invalid(f));
    }
    if canonical_form(&c.end) != canonical_form(&GaussDiagram::long_unknot()) {
        return Err(TransportError::NotToUnknot);
    }
    // closure commutes with every move under the arc conventions in `moves`
    let out = Certificate {
        start: c.start.closure().expect("long start"),
        steps: c.steps.clone(),
        end: GaussDiagram::unknot(),
    };
    debug_assert!(validate_certificate(&out, Claim::Concordance).ok);
    Ok(out)
}

/// A slicing of the closure of `long` yields a slicing of `long`: one saddle
/// joining the two ends of the strand splits off the closure as a separate
/// circle, which is then carried to a chordless circle and removed.
pub fn transport_closure_to_long(
    c: &Certificate,
    long: &GaussDiagram,
) -> Result<Certificate, TransportError> {
    if !long.is_long() || long.component_count() != 1 {
        return Err(TransportError::NotLong);
    }
    let report = validate_certificate(c, Claim::Concordance);
    if let Some(f) = report.failure {
        return Err(TransportError::Invalid(f));
    }
    if c.end.is_long() || canonical_form(&c.end) != canonical_form(&GaussDiagram::unknot()) {
        return Err(TransportError::NotToUnknot);
    }
    let closure = long.closure().expect("long");
    if canonical_form(&closure) != canonical_form(&c.start) {
        return Err(TransportError::WrongStart);
    }

    let len = long.components()[0].len();
    let split = Move::Saddle {
        c1: 0,
        p: 0,
        c2: 0,
        q: len,
    };
    let mut steps = vec![split];
    if closure == c.start {
        steps.extend(c.steps.iter().map(|m| m.shift_components(1)));
    } else {
        // same diagram up to rotation and relabeling: follow the reference
        // replay by canonical keys
        let reference = c
            .replay(&MoveRules::default())
            .map_err(|(i, _)| TransportError::Rederive(i))?;
        let mut current =
            apply_move_with(long, &split, &MoveRules::default()).expect("strand split");
        for (i, m) in c.steps.iter().enumerate() {
            let target = canonical_form(&lift(&reference[i + 1]));
            let (found, next) = rederive(&current, m.kind(), |d| canonical_form(d) == target)
                .ok_or(TransportError::Rederive(i))?;
            steps.push(found);
            current = next;
        }
    }
    steps.push(Move::Death { comp: 1 });
    let out = Certificate {
        start: long.clone(),
        steps,
        end: GaussDiagram::long_unknot(),
    };
    debug_assert!(validate_certificate(&out, Claim::Concordance).ok, "{out}");
    Ok(out)
}

// The round diagram `d` placed next to an empty strand.
fn lift(d: &GaussDiagram) -> GaussDiagram {
    let mut comps = vec![Vec::new()];
    comps.extend(d.components().iter().cloned());
    d.rebuild(crate::gauss::Kind::Long, comps)
}

/// Finds a move of the given kind on `d` whose result satisfies `accept`.
/// Saddles are searched over every arc pair, including both readings of a
/// closed component's arc 0.
pub(crate) fn rederive(
    d: &GaussDiagram,
    kind: MoveKind,
    accept: impl Fn(&GaussDiagram) -> bool,
) -> Option<(Move, GaussDiagram)> {
    let rules = MoveRules::default();
    let candidates: Vec<Move> = if kind == MoveKind::Saddle {
        let gaps: Vec<(usize, usize)> = (0..d.component_count())
            .flat_map(|c| (0..=d.components()[c].len()).map(move |p| (c, p)))
            .collect();
        let mut v = Vec::new();
        for (i, &(c1, p)) in gaps.iter().enumerate() {
            for &(c2, q) in &gaps[i..] {
                v.push(Move::Saddle { c1, p, c2, q });
            }
        }
        v
    } else {
        crate::moves::enumerate_moves_with(d, crate::moves::MoveKinds::of(&[kind]), &rules)
    };
    candidates.into_iter().find_map(|m| {
        let next = apply_move_with(d, &m, &rules).ok()?;
        accept(&next).then_some((m, next))
    })
}
