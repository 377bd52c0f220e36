//! Reidemeister moves and cobordism moves on Gauss diagrams.
//!
//! Arc `p` of a component is the gap just before endpoint `p`. The open
//! strand of a long diagram has arcs `0..=len` (arc 0 is the left end, arc
//! `len` the right end). A closed component has `max(len, 1)` arcs; `len` is
//! accepted as another name for arc 0.
//!
//! Move patterns:
//!
//! * R1: a crossing whose two endpoints are adjacent.
//! * R2: crossings `a`, `b` of opposite sign whose over endpoints are adjacent
//!   on one arc and whose under endpoints are adjacent on another, in either
//!   order.
//! * R3: crossings `a` (top over middle), `b` (top over bottom) and `c`
//!   (middle over bottom) with adjacent pairs `{O_a, O_b}`, `{U_a, O_c}` and
//!   `{U_b, U_c}`. The move swaps each pair. Whether a triangle can be
//!   realised by a slide depends on the signs and the order inside each pair,
//!   see [`R3Mode`].
//! * Saddle: an oriented band between two arcs. On one component it splits
//!   off the piece between the arcs, on two components it merges them.
//! * Birth adds a chordless circle, death removes one.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gauss::{Endpoint, GaussDiagram, Role, Sign, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Delete,
    R2Delete,
    R3,
    R1Insert,
    R2Insert,
    Saddle,
    Birth,
    Death,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::R1Delete,
        MoveKind::R2Delete,
        MoveKind::R3,
        MoveKind::R1Insert,
        MoveKind::R2Insert,
        MoveKind::Saddle,
        MoveKind::Birth,
        MoveKind::Death,
    ];

    pub fn is_reidemeister(self) -> bool {
        !matches!(self, MoveKind::Saddle | MoveKind::Birth | MoveKind::Death)
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// A set of move kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MoveKinds(u8);

impl MoveKinds {
    pub const NONE: MoveKinds = MoveKinds(0);
    pub const ALL: MoveKinds = MoveKinds(0xff);
    pub const REIDEMEISTER: MoveKinds = MoveKinds(0b1_1111);
    /// R1 and R2 deletions.
    pub const DELETIONS: MoveKinds = MoveKinds(0b11);
    pub const COBORDISM: MoveKinds = MoveKinds(0b1110_0000);

    pub fn of(kinds: &[MoveKind]) -> Self {
        MoveKinds(kinds.iter().fold(0, |acc, k| acc | k.bit()))
    }

    pub fn contains(self, k: MoveKind) -> bool {
        self.0 & k.bit() != 0
    }

    pub fn with(self, k: MoveKind) -> Self {
        MoveKinds(self.0 | k.bit())
    }

    pub fn without(self, k: MoveKind) -> Self {
        MoveKinds(self.0 & !k.bit())
    }
}

/// Which R3 triangles are admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum R3Mode {
    /// Triangles whose signs match their strand orders. With `tau`, `mu`,
    /// `beta` = +1 when `a` precedes `b` on top, `a` precedes `c` on the
    /// middle and `b` precedes `c` on the bottom strand, a slide exists iff
    /// `sign(b) sign(c) = tau mu` and `sign(a) sign(c) = tau beta`.
    #[default]
    Oriented,
    /// Only the variant with all three pairs in forward order (all signs
    /// then agree). For debugging.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MoveRules {
    pub r3: R3Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    R1Delete {
        x: u32,
    },
    R1Insert {
        comp: usize,
        arc: usize,
        sign: Sign,
        over_first: bool,
    },
    R2Delete {
        a: u32,
        b: u32,
    },
    /// New crossings `a` (sign `sign`) and `b` (sign `-sign`). `O_a O_b` goes
    /// to `over`, `U_a U_b` (or `U_b U_a` unless `same_order`) to `under`.
    /// `under_first` orders the two pairs when they share an arc.
    R2Insert {
        over: (usize, usize),
        under: (usize, usize),
        sign: Sign,
        same_order: bool,
        under_first: bool,
    },
    R3 {
        a: u32,
        b: u32,
        c: u32,
    },
    Saddle {
        c1: usize,
        p: usize,
        c2: usize,
        q: usize,
    },
    Birth,
    Death {
        comp: usize,
    },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Delete { .. } => MoveKind::R1Delete,
            Move::R1Insert { .. } => MoveKind::R1Insert,
            Move::R2Delete { .. } => MoveKind::R2Delete,
            Move::R2Insert { .. } => MoveKind::R2Insert,
            Move::R3 { .. } => MoveKind::R3,
            Move::Saddle { .. } => MoveKind::Saddle,
            Move::Birth => MoveKind::Birth,
            Move::Death { .. } => MoveKind::Death,
        }
    }

    /// The same move with every component index shifted by `by`.
    pub fn shift_components(&self, by: usize) -> Move {
        match *self {
            Move::R1Insert {
                comp,
                arc,
                sign,
                over_first,
            } => Move::R1Insert {
                comp: comp + by,
                arc,
                sign,
                over_first,
            },
            Move::R2Insert {
                over,
                under,
                sign,
                same_order,
                under_first,
            } => Move::R2Insert {
                over: (over.0 + by, over.1),
                under: (under.0 + by, under.1),
                sign,
                same_order,
                under_first,
            },
            Move::Saddle { c1, p, c2, q } => Move::Saddle {
                c1: c1 + by,
                p,
                c2: c2 + by,
                q,
            },
            Move::Death { comp } => Move::Death { comp: comp + by },
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("no crossing {0}")]
    NoCrossing(u32),
    #[error("no component {0}")]
    NoComponent(usize),
    #[error("arc {arc} is out of range on component {comp}")]
    ArcOutOfRange { comp: usize, arc: usize },
    #[error("move does not apply: {0}")]
    NotApplicable(String),
    #[error("component {0} has endpoints; only chordless circles die")]
    DeathNotChordless(usize),
    #[error("the open strand cannot die")]
    DeathOnStrand,
}

fn not_applicable(msg: impl Into<String>) -> MoveError {
    MoveError::NotApplicable(msg.into())
}

// -- adjacency helpers -- //

fn next_slot(d: &GaussDiagram, (c, p): Slot) -> Option<Slot> {
    let len = d.components()[c].len();
    if d.is_closed(c) {
        (len >= 2).then_some((c, (p + 1) % len))
    } else {
        (p + 1 < len).then_some((c, p + 1))
    }
}

fn prev_slot(d: &GaussDiagram, (c, p): Slot) -> Option<Slot> {
    let len = d.components()[c].len();
    if d.is_closed(c) {
        (len >= 2).then_some((c, (p + len - 1) % len))
    } else {
        p.checked_sub(1).map(|q| (c, q))
    }
}

fn precedes(d: &GaussDiagram, s: Slot, t: Slot) -> bool {
    next_slot(d, s) == Some(t)
}

fn adjacent(d: &GaussDiagram, s: Slot, t: Slot) -> bool {
    precedes(d, s, t) || precedes(d, t, s)
}

/// Orientation values (+1 / -1) an adjacent pair `(s, t)` admits.
fn pair_orders(d: &GaussDiagram, s: Slot, t: Slot) -> Vec<i64> {
    let mut v = Vec::with_capacity(2);
    if precedes(d, s, t) {
        v.push(1);
    }
    if precedes(d, t, s) {
        v.push(-1);
    }
    v
}

fn at(d: &GaussDiagram, (c, p): Slot) -> Endpoint {
    d.components()[c][p]
}

fn check_id(d: &GaussDiagram, id: u32) -> Result<(), MoveError> {
    if id == 0 || id as usize > d.crossing_count() {
        Err(MoveError::NoCrossing(id))
    } else {
        Ok(())
    }
}

fn check_arc(d: &GaussDiagram, comp: usize, arc: usize) -> Result<(), MoveError> {
    let c = d.component(comp).ok_or(MoveError::NoComponent(comp))?;
    if arc > c.len() {
        return Err(MoveError::ArcOutOfRange { comp, arc });
    }
    Ok(())
}

fn r1_applies(d: &GaussDiagram, slots: &[[Slot; 2]], x: u32) -> bool {
    let [o, u] = slots[x as usize - 1];
    adjacent(d, o, u)
}

fn r2_applies(d: &GaussDiagram, slots: &[[Slot; 2]], a: u32, b: u32) -> bool {
    if a == b || d.sign(a) == d.sign(b) {
        return false;
    }
    let [oa, ua] = slots[a as usize - 1];
    let [ob, ub] = slots[b as usize - 1];
    adjacent(d, oa, ob) && adjacent(d, ua, ub)
}

fn r3_applies(d: &GaussDiagram, slots: &[[Slot; 2]], a: u32, b: u32, c: u32, mode: R3Mode) -> bool {
    if a == b || b == c || a == c {
        return false;
    }
    let [oa, ua] = slots[a as usize - 1];
    let [ob, ub] = slots[b as usize - 1];
    let [oc, uc] = slots[c as usize - 1];
    let (top, mid, bot) = (
        pair_orders(d, oa, ob),
        pair_orders(d, ua, oc),
        pair_orders(d, ub, uc),
    );
    if top.is_empty() || mid.is_empty() || bot.is_empty() {
        return false;
    }
    let (sa, sb, sc) = (d.sign(a).value(), d.sign(b).value(), d.sign(c).value());
    for &tau in &top {
        for &mu in &mid {
            for &beta in &bot {
                let ok = match mode {
                    R3Mode::Oriented => sb * sc == tau * mu && sa * sc == tau * beta,
                    R3Mode::Strict => tau == 1 && mu == 1 && beta == 1 && sa == sb && sb == sc,
                };
                if ok {
                    return true;
                }
            }
        }
    }
    false
}

// -- enumeration -- //

pub fn enumerate_moves(d: &GaussDiagram, kinds: MoveKinds) -> Vec<Move> {
    enumerate_moves_with(d, kinds, &MoveRules::default())
}

/// Every applicable move of the requested kinds, deletions first, then R3,
/// insertions and cobordism moves.
pub fn enumerate_moves_with(d: &GaussDiagram, kinds: MoveKinds, rules: &MoveRules) -> Vec<Move> {
    let mut out = Vec::new();
    let slots = d.crossing_slots();
    let n = d.crossing_count() as u32;

    if kinds.contains(MoveKind::R1Delete) {
        out.extend(
            (1..=n)
                .filter(|&x| r1_applies(d, &slots, x))
                .map(|x| Move::R1Delete { x }),
        );
    }

    if kinds.contains(MoveKind::R2Delete) {
        let mut found = BTreeSet::new();
        for a in 1..=n {
            let oa = slots[a as usize - 1][0];
            for s in [next_slot(d, oa), prev_slot(d, oa)].into_iter().flatten() {
                let e = at(d, s);
                if e.role == Role::Over && e.id > a && r2_applies(d, &slots, a, e.id) {
                    found.insert((a, e.id));
                }
            }
        }
        out.extend(found.into_iter().map(|(a, b)| Move::R2Delete { a, b }));
    }

    if kinds.contains(MoveKind::R3) {
        let mut found = BTreeSet::new();
        for a in 1..=n {
            let [oa, ua] = slots[a as usize - 1];
            for sb in [next_slot(d, oa), prev_slot(d, oa)].into_iter().flatten() {
                let eb = at(d, sb);
                if eb.role != Role::Over || eb.id == a {
                    continue;
                }
                let b = eb.id;
                for sc in [next_slot(d, ua), prev_slot(d, ua)].into_iter().flatten() {
                    let ec = at(d, sc);
                    if ec.role != Role::Over || ec.id == a || ec.id == b {
                        continue;
                    }
                    if r3_applies(d, &slots, a, b, ec.id, rules.r3) {
                        found.insert((a, b, ec.id));
                    }
                }
            }
        }
        out.extend(found.into_iter().map(|(a, b, c)| Move::R3 { a, b, c }));
    }

    let gaps: Vec<(usize, usize)> = (0..d.component_count())
        .flat_map(|c| (0..d.arc_count(c)).map(move |p| (c, p)))
        .collect();

    if kinds.contains(MoveKind::R1Insert) {
        for &(comp, arc) in &gaps {
            for sign in [Sign::Pos, Sign::Neg] {
                for over_first in [true, false] {
                    out.push(Move::R1Insert {
                        comp,
                        arc,
                        sign,
                        over_first,
                    });
                }
            }
        }
    }

    if kinds.contains(MoveKind::R2Insert) {
        for &over in &gaps {
            for &under in &gaps {
                for sign in [Sign::Pos, Sign::Neg] {
                    for same_order in [true, false] {
                        out.push(Move::R2Insert {
                            over,
                            under,
                            sign,
                            same_order,
                            under_first: false,
                        });
                        if over == under {
                            out.push(Move::R2Insert {
                                over,
                                under,
                                sign,
                                same_order,
                                under_first: true,
                            });
                        }
                    }
                }
            }
        }
    }

    if kinds.contains(MoveKind::Saddle) {
        for (i, &(c1, p)) in gaps.iter().enumerate() {
            for &(c2, q) in &gaps[i + 1..] {
                out.push(Move::Saddle { c1, p, c2, q });
            }
        }
    }

    if kinds.contains(MoveKind::Birth) {
        out.push(Move::Birth);
    }

    if kinds.contains(MoveKind::Death) {
        for c in 0..d.component_count() {
            if d.is_closed(c) && d.components()[c].is_empty() {
                out.push(Move::Death { comp: c });
            }
        }
    }

    out
}

// -- application -- //

pub fn apply_move(d: &GaussDiagram, m: &Move) -> Result<GaussDiagram, MoveError> {
    apply_move_with(d, m, &MoveRules::default())
}

pub fn apply_move_with(
    d: &GaussDiagram,
    m: &Move,
    rules: &MoveRules,
) -> Result<GaussDiagram, MoveError> {
    let kind = d.kind();
    let n = d.crossing_count() as u32;
    match *m {
        Move::R1Delete { x } => {
            check_id(d, x)?;
            if !r1_applies(d, &d.crossing_slots(), x) {
                return Err(not_applicable(format!(
                    "endpoints of crossing {x} are not adjacent"
                )));
            }
            Ok(remove_crossings(d, &[x]))
        }
        Move::R2Delete { a, b } => {
            check_id(d, a)?;
            check_id(d, b)?;
            if !r2_applies(d, &d.crossing_slots(), a, b) {
                return Err(not_applicable(format!(
                    "crossings {a} and {b} do not form a bigon"
                )));
            }
            Ok(remove_crossings(d, &[a, b]))
        }
        Move::R3 { a, b, c } => {
            for id in [a, b, c] {
                check_id(d, id)?;
            }
            let slots = d.crossing_slots();
            if !r3_applies(d, &slots, a, b, c, rules.r3) {
                return Err(not_applicable(format!(
                    "crossings {a}, {b}, {c} do not form a slidable triangle"
                )));
            }
            let [oa, ua] = slots[a as usize - 1];
            let [ob, ub] = slots[b as usize - 1];
            let [oc, uc] = slots[c as usize - 1];
            let mut comps = d.components().to_vec();
            for (s, t) in [(oa, ob), (ua, oc), (ub, uc)] {
                let tmp = comps[s.0][s.1];
                comps[s.0][s.1] = comps[t.0][t.1];
                comps[t.0][t.1] = tmp;
            }
            Ok(d.rebuild(kind, comps))
        }
        Move::R1Insert {
            comp,
            arc,
            sign,
            over_first,
        } => {
            check_arc(d, comp, arc)?;
            let x = n + 1;
            let pair = if over_first {
                [Endpoint::over(x), Endpoint::under(x)]
            } else {
                [Endpoint::under(x), Endpoint::over(x)]
            };
            let mut comps = d.components().to_vec();
            comps[comp].splice(arc..arc, pair);
            Ok(GaussDiagram::assemble(kind, comps, |id| {
                if id == x {
                    sign
                } else {
                    d.sign(id)
                }
            }))
        }
        Move::R2Insert {
            over,
            under,
            sign,
            same_order,
            under_first,
        } => {
            check_arc(d, over.0, over.1)?;
            check_arc(d, under.0, under.1)?;
            let (a, b) = (n + 1, n + 2);
            let overs = [Endpoint::over(a), Endpoint::over(b)];
            let unders = if same_order {
                [Endpoint::under(a), Endpoint::under(b)]
            } else {
                [Endpoint::under(b), Endpoint::under(a)]
            };
            let mut comps = d.components().to_vec();
            if over == under {
                let block: Vec<Endpoint> = if under_first {
                    unders.iter().chain(&overs).copied().collect()
                } else {
                    overs.iter().chain(&unders).copied().collect()
                };
                comps[over.0].splice(over.1..over.1, block);
            } else if over.0 == under.0 && over.1 < under.1 {
                comps[under.0].splice(under.1..under.1, unders);
                comps[over.0].splice(over.1..over.1, overs);
            } else {
                comps[over.0].splice(over.1..over.1, overs);
                comps[under.0].splice(under.1..under.1, unders);
            }
            Ok(GaussDiagram::assemble(kind, comps, |id| {
                if id == a {
                    sign
                } else if id == b {
                    sign.flip()
                } else {
                    d.sign(id)
                }
            }))
        }
        Move::Saddle { c1, p, c2, q } => {
            check_arc(d, c1, p)?;
            check_arc(d, c2, q)?;
            let mut comps = d.components().to_vec();
            if c1 == c2 {
                let (lo, hi) = (p.min(q), p.max(q));
                let seq = &d.components()[c1];
                let inner = seq[lo..hi].to_vec();
                let mut outer = seq[hi..].to_vec();
                outer.extend_from_slice(&seq[..lo]);
                comps[c1] = outer;
                comps.push(inner);
            } else {
                let ((lo, plo), (hi, phi)) = if c1 < c2 {
                    ((c1, p), (c2, q))
                } else {
                    ((c2, q), (c1, p))
                };
                let host = &d.components()[lo];
                let guest = &d.components()[hi];
                let mut word = host[..plo].to_vec();
                word.extend_from_slice(&guest[phi..]);
                word.extend_from_slice(&guest[..phi]);
                word.extend_from_slice(&host[plo..]);
                comps[lo] = word;
                comps.remove(hi);
            }
            Ok(d.rebuild(kind, comps))
        }
        Move::Birth => {
            let mut comps = d.components().to_vec();
            comps.push(Vec::new());
            Ok(d.rebuild(kind, comps))
        }
        Move::Death { comp } => {
            let c = d.component(comp).ok_or(MoveError::NoComponent(comp))?;
            if !d.is_closed(comp) {
                return Err(MoveError::DeathOnStrand);
            }
            if !c.is_empty() {
                return Err(MoveError::DeathNotChordless(comp));
            }
            let mut comps = d.components().to_vec();
            comps.remove(comp);
            Ok(d.rebuild(kind, comps))
        }
    }
}

fn remove_crossings(d: &GaussDiagram, ids: &[u32]) -> GaussDiagram {
    let comps = d
        .components()
        .iter()
        .map(|c| c.iter().filter(|e| !ids.contains(&e.id)).copied().collect())
        .collect();
    d.rebuild(d.kind(), comps)
}

pub fn saddle(
    d: &GaussDiagram,
    c1: usize,
    p: usize,
    c2: usize,
    q: usize,
) -> Result<GaussDiagram, MoveError> {
    apply_move(d, &Move::Saddle { c1, p, c2, q })
}

pub fn birth(d: &GaussDiagram) -> Result<GaussDiagram, MoveError> {
    apply_move(d, &Move::Birth)
}

pub fn death(d: &GaussDiagram, comp: usize) -> Result<GaussDiagram, MoveError> {
    apply_move(d, &Move::Death { comp })
}

// -- text form -- //

fn sign_str(s: Sign) -> char {
    s.symbol()
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::R1Delete { x } => write!(f, "r1- x={x}"),
            Move::R1Insert {
                comp,
                arc,
                sign,
                over_first,
            } => write!(
                f,
                "r1+ c={comp} pos={arc} sign={} order={}",
                sign_str(sign),
                if over_first { "OU" } else { "UO" }
            ),
            Move::R2Delete { a, b } => write!(f, "r2- a={a} b={b}"),
            Move::R2Insert {
                over,
                under,
                sign,
                same_order,
                under_first,
            } => {
                write!(
                    f,
                    "r2+ c1={} p={} c2={} q={} sign={} order={}",
                    over.0,
                    over.1,
                    under.0,
                    under.1,
                    sign_str(sign),
                    if same_order { "same" } else { "rev" }
                )?;
                if under_first {
                    write!(f, " first=U")?;
                }
                Ok(())
            }
            Move::R3 { a, b, c } => write!(f, "r3 a={a} b={b} c={c}"),
            Move::Saddle { c1, p, c2, q } => write!(f, "saddle c1={c1} p={p} c2={c2} q={q}"),
            Move::Birth => write!(f, "birth"),
            Move::Death { comp } => write!(f, "death c={comp}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad move `{line}`: {reason}")]
pub struct MoveSyntaxError {
    pub line: String,
    pub reason: String,
}

impl FromStr for Move {
    type Err = MoveSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| MoveSyntaxError {
            line: s.trim().to_string(),
            reason,
        };
        let mut words = s.split_whitespace();
        let head = words.next().ok_or_else(|| err("empty line".into()))?;
        let mut fields = HashMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, found `{w}`")))?;
            if fields.insert(k, v).is_some() {
                return Err(err(format!("duplicate field `{k}`")));
            }
        }
        let mut take = |k: &str| {
            fields
                .remove(k)
                .ok_or_else(|| err(format!("missing field `{k}`")))
        };
        fn num<T: FromStr>(
            v: &str,
            k: &str,
            err: &dyn Fn(String) -> MoveSyntaxError,
        ) -> Result<T, MoveSyntaxError> {
            v.parse()
                .map_err(|_| err(format!("field `{k}` is not a number: `{v}`")))
        }
        let sign = |v: &str| match v {
            "+" => Ok(Sign::Pos),
            "-" => Ok(Sign::Neg),
            _ => Err(err(format!("bad sign `{v}`"))),
        };
        let m = match head {
            "r1-" => Move::R1Delete {
                x: num(take("x")?, "x", &err)?,
            },
            "r1+" => {
                let comp = num(take("c")?, "c", &err)?;
                let arc = num(take("pos")?, "pos", &err)?;
                let sign = sign(take("sign")?)?;
                let over_first = match take("order")? {
                    "OU" => true,
                    "UO" => false,
                    v => return Err(err(format!("bad order `{v}`"))),
                };
                Move::R1Insert {
                    comp,
                    arc,
                    sign,
                    over_first,
                }
            }
            "r2-" => Move::R2Delete {
                a: num(take("a")?, "a", &err)?,
                b: num(take("b")?, "b", &err)?,
            },
            "r2+" => {
                let over = (num(take("c1")?, "c1", &err)?, num(take("p")?, "p", &err)?);
                let under = (num(take("c2")?, "c2", &err)?, num(take("q")?, "q", &err)?);
                let sign = sign(take("sign")?)?;
                let same_order = match take("order")? {
                    "same" => true,
                    "rev" => false,
                    v => return Err(err(format!("bad order `{v}`"))),
                };
                let under_first = match fields.remove("first") {
                    None | Some("O") => false,
                    Some("U") => true,
                    Some(v) => return Err(err(format!("bad first `{v}`"))),
                };
                Move::R2Insert {
                    over,
                    under,
                    sign,
                    same_order,
                    under_first,
                }
            }
            "r3" => Move::R3 {
                a: num(take("a")?, "a", &err)?,
                b: num(take("b")?, "b", &err)?,
                c: num(take("c")?, "c", &err)?,
            },
            "saddle" => Move::Saddle {
                c1: num(take("c1")?, "c1", &err)?,
                p: num(take("p")?, "p", &err)?,
                c2: num(take("c2")?, "c2", &err)?,
                q: num(take("q")?, "q", &err)?,
            },
            "birth" => Move::Birth,
            "death" => Move::Death {
                comp: num(take("c")?, "c", &err)?,
            },
            other => return Err(err(format!("unknown move `{other}`"))),
        };
        if let Some(k) = fields.keys().next() {
            return Err(err(format!("unexpected field `{k}`")));
        }
        Ok(m)
    }
}
