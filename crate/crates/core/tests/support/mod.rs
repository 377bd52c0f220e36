//! Shared helpers for the integration tests: an independent face counter,
//! random diagram generators and the fixed corpus.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use vkc::{
    apply_move, enumerate_moves, parse_gauss, Endpoint, GaussDiagram, Kind, Move, MoveKind,
    MoveKinds, Role, Sign,
};

pub const CORPUS: &str = include_str!("../data/corpus.txt");

pub fn corpus() -> Vec<GaussDiagram> {
    CORPUS
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| parse_gauss(l.trim()).unwrap_or_else(|e| panic!("corpus line `{l}`: {e}")))
        .collect()
}

pub fn g(code: &str) -> GaussDiagram {
    parse_gauss(code).unwrap_or_else(|e| panic!("`{code}`: {e}"))
}

// -- face oracle -- //
//
// Walks the boundary of the band surface directly on the diagram: a boundary
// walker runs along one side of an arc, keeping the face on its left, so it
// goes forward on the left side and backward on the right side. At a crossing
// it turns left onto the other strand. Whether that strand heads to the left
// of the incoming one is fixed by the sign and the incoming role: for a
// positive crossing, (over, under) is a positive frame, so the under strand
// heads left of the over strand and the over strand heads right of the under
// strand.

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Side {
    Left,
    Right,
}

/// Face count of the band surface, chordless circles excluded.
pub fn oracle_faces(d: &GaussDiagram) -> usize {
    oracle_walk(d).len()
}

/// Boundary walks as lists of (component, arc, side); arc `i` of a component
/// is the stretch ending at endpoint `i`.
fn oracle_walk(d: &GaussDiagram) -> Vec<Vec<(usize, usize, Side)>> {
    assert!(!d.is_long(), "oracle needs a round diagram");
    let comps = d.components();
    let mut partner = std::collections::HashMap::new();
    for (c, comp) in comps.iter().enumerate() {
        for (i, e) in comp.iter().enumerate() {
            partner
                .entry(e.id)
                .or_insert_with(Vec::new)
                .push((c, i, e.role));
        }
    }
    let other = |c: usize, i: usize| {
        let id = comps[c][i].id;
        *partner[&id]
            .iter()
            .find(|&&(c2, i2, _)| (c2, i2) != (c, i))
            .unwrap()
    };
    let heads_left = |c: usize, i: usize| {
        let e = comps[c][i];
        let s = d.sign(e.id) == Sign::Pos;
        (e.role == Role::Over) == s
    };
    let step = |(c, a, side): (usize, usize, Side)| {
        let m = comps[c].len();
        let at = match side {
            Side::Left => a,
            Side::Right => (a + m - 1) % m,
        };
        let (c2, i2, _) = other(c, at);
        let m2 = comps[c2].len();
        let left = heads_left(c, at);
        match (side, left) {
            (Side::Left, true) | (Side::Right, false) => (c2, (i2 + 1) % m2, Side::Left),
            (Side::Left, false) | (Side::Right, true) => (c2, i2, Side::Right),
        }
    };
    let mut seen = std::collections::HashSet::new();
    let mut walks = Vec::new();
    for (c, comp) in comps.iter().enumerate() {
        for a in 0..comp.len() {
            for side in [Side::Left, Side::Right] {
                let mut s = (c, a, side);
                if seen.contains(&s) {
                    continue;
                }
                let mut walk = Vec::new();
                while seen.insert(s) {
                    walk.push(s);
                    s = step(s);
                }
                walks.push(walk);
            }
        }
    }
    walks
}

/// Sum over band-surface pieces of (2 - (F - n)) / 2, from the oracle faces.
pub fn oracle_genus(d: &GaussDiagram) -> u64 {
    let comps = d.components();
    // components sharing a crossing lie on one piece
    let k = comps.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for a in 0..k {
        for b in a + 1..k {
            if comps[a]
                .iter()
                .any(|e| comps[b].iter().any(|f| f.id == e.id))
            {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut crossings = vec![0i64; k];
    let mut faces = vec![0i64; k];
    for (c, comp) in comps.iter().enumerate() {
        let r = find(&mut parent, c);
        crossings[r] += comp.len() as i64;
    }
    for walk in oracle_walk(d) {
        let r = find(&mut parent, walk[0].0);
        faces[r] += 1;
    }
    (0..k)
        .filter(|&r| crossings[r] > 0)
        .map(|r| {
            let n = crossings[r] / 2;
            let chi = faces[r] - n;
            assert!(chi <= 2 && chi % 2 == 0, "oracle piece with chi {chi}");
            ((2 - chi) / 2) as u64
        })
        .sum()
}

// -- generators -- //

/// A random diagram with up to `max_crossings` crossings spread over
/// `closed` closed components (plus the strand when `long`).
pub fn random_diagram<R: Rng>(
    rng: &mut R,
    max_crossings: usize,
    closed: usize,
    long: bool,
) -> GaussDiagram {
    let n = rng.gen_range(0..=max_crossings);
    let mut ends: Vec<Endpoint> = (1..=n as u32)
        .flat_map(|id| [Endpoint::over(id), Endpoint::under(id)])
        .collect();
    ends.shuffle(rng);
    let slots = closed + usize::from(long);
    let slots = slots.max(1);
    let mut comps: Vec<Vec<Endpoint>> = vec![Vec::new(); slots];
    for e in ends {
        let c = rng.gen_range(0..slots);
        comps[c].push(e);
    }
    let signs: Vec<(u32, Sign)> = (1..=n as u32)
        .map(|id| {
            (
                id,
                if rng.gen_bool(0.5) {
                    Sign::Pos
                } else {
                    Sign::Neg
                },
            )
        })
        .collect();
    let kind = if long { Kind::Long } else { Kind::Round };
    GaussDiagram::from_parts(kind, comps, &signs).expect("generated diagram is valid")
}

pub fn random_knot<R: Rng>(rng: &mut R, max_crossings: usize) -> GaussDiagram {
    random_diagram(rng, max_crossings, 1, false)
}

pub fn random_long_knot<R: Rng>(rng: &mut R, max_crossings: usize) -> GaussDiagram {
    random_diagram(rng, max_crossings, 0, true)
}

/// Applies `steps` random insertion moves (R1 and R2) to `start`, staying
/// within `max_crossings`.
pub fn scramble<R: Rng>(
    rng: &mut R,
    start: &GaussDiagram,
    steps: usize,
    max_crossings: usize,
) -> GaussDiagram {
    let kinds = MoveKinds::of(&[MoveKind::R1Insert, MoveKind::R2Insert]);
    let mut d = start.clone();
    for _ in 0..steps {
        let moves: Vec<Move> = enumerate_moves(&d, kinds)
            .into_iter()
            .filter(|m| {
                let grow = if m.kind() == MoveKind::R1Insert { 1 } else { 2 };
                d.crossing_count() + grow <= max_crossings
            })
            .collect();
        let Some(m) = moves.choose(rng) else { break };
        d = apply_move(&d, m).expect("enumerated move applies");
    }
    d
}

/// A random applicable move of the given kinds, if any.
pub fn random_move<R: Rng>(rng: &mut R, d: &GaussDiagram, kinds: MoveKinds) -> Option<Move> {
    enumerate_moves(d, kinds).choose(rng).copied()
}

// -- certificates -- //

/// Random R-moves that keep `d` within `max_crossings` and leave the
/// component `keep_empty` (if any) chordless.
fn r_walk<R: Rng>(
    rng: &mut R,
    d: &mut GaussDiagram,
    steps: &mut Vec<Move>,
    len: usize,
    max_crossings: usize,
    keep_empty: Option<usize>,
) {
    for _ in 0..len {
        let options: Vec<(Move, GaussDiagram)> = enumerate_moves(d, MoveKinds::REIDEMEISTER)
            .into_iter()
            .filter_map(|m| {
                let next = apply_move(d, &m).ok()?;
                let ok = next.crossing_count() <= max_crossings
                    && keep_empty.is_none_or(|c| next.components()[c].is_empty());
                ok.then_some((m, next))
            })
            .collect();
        let Some((m, next)) = options.choose(rng).cloned() else {
            return;
        };
        steps.push(m);
        *d = next;
    }
}

/// A random valid concordance certificate from the knot `start`: R-move
/// walks, optionally with a birth whose circle is merged back by a saddle,
/// and optionally a chordless circle split off by a saddle and capped.
pub fn random_concordance<R: Rng>(
    rng: &mut R,
    start: &GaussDiagram,
    max_crossings: usize,
) -> vkc::Certificate {
    assert_eq!(start.component_count(), 1);
    let mut d = start.clone();
    let mut steps = Vec::new();
    let walk = |rng: &mut R| rng.gen_range(0..4);
    let n = walk(rng);
    r_walk(rng, &mut d, &mut steps, n, max_crossings, None);
    if rng.gen_bool(0.5) {
        steps.push(Move::Birth);
        d = apply_move(&d, &Move::Birth).unwrap();
        let n = walk(rng);
        r_walk(rng, &mut d, &mut steps, n, max_crossings, None);
        let p = rng.gen_range(0..d.arc_count(0));
        let q = rng.gen_range(0..d.arc_count(1));
        // either orientation of the band names the same merge
        let m = if rng.gen_bool(0.5) {
            Move::Saddle { c1: 0, p, c2: 1, q }
        } else {
            Move::Saddle {
                c1: 1,
                p: q,
                c2: 0,
                q: p,
            }
        };
        d = apply_move(&d, &m).unwrap();
        steps.push(m);
        let n = walk(rng);
        r_walk(rng, &mut d, &mut steps, n, max_crossings, None);
    }
    if rng.gen_bool(0.5) {
        let p = rng.gen_range(0..d.arc_count(0));
        let m = Move::Saddle {
            c1: 0,
            p,
            c2: 0,
            q: p,
        };
        d = apply_move(&d, &m).unwrap();
        steps.push(m);
        let n = walk(rng);
        r_walk(rng, &mut d, &mut steps, n, max_crossings, Some(1));
        steps.push(Move::Death { comp: 1 });
        d = apply_move(&d, &Move::Death { comp: 1 }).unwrap();
    }
    let n = walk(rng);
    r_walk(rng, &mut d, &mut steps, n, max_crossings, None);
    vkc::Certificate {
        start: start.clone(),
        steps,
        end: d,
    }
}

/// A random concordance from `start` to the (long) unknot: the cobordism blocks of
/// [`random_concordance`] followed by an R-move reduction. `None` when the
/// reduction does not reach a diagram without crossings.
pub fn random_slicing<R: Rng>(
    rng: &mut R,
    start: &GaussDiagram,
    max_crossings: usize,
) -> Option<vkc::Certificate> {
    let mut c = random_concordance(rng, start, max_crossings);
    let budget = vkc::SearchBudget {
        max_crossings,
        max_depth: 12,
        max_nodes: 50_000,
        ..Default::default()
    };
    let r = vkc::reduce(&c.end, &budget);
    if r.best.crossing_count() != 0 {
        return None;
    }
    c.steps.extend(r.certificate.steps);
    c.end = if start.is_long() {
        GaussDiagram::long_unknot()
    } else {
        GaussDiagram::unknot()
    };
    Some(c)
}

/// A few random insertions on the long unknot.
pub fn random_long_unknot<R: Rng>(rng: &mut R, steps: usize, max_crossings: usize) -> GaussDiagram {
    scramble(rng, &GaussDiagram::long_unknot(), steps, max_crossings)
}
