//! Canonical keys: a byte encoding of a diagram up to rotation of closed
//! components, reordering of closed components and relabeling of crossings.
//!
//! The key is the lexicographically least token sequence over all admissible
//! (order, rotation) choices, with crossings labelled by first appearance in
//! that reading. Closed components are read longest first; chordless circles
//! only contribute their count. The open strand of a long diagram is always
//! read first and never rotated.

use std::fmt;

use crate::gauss::{Endpoint, GaussDiagram, Kind, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

#[derive(Clone)]
struct Partial {
    used: Vec<bool>,
    labels: Vec<u16>,
    next: u16,
}

impl Partial {
    fn token(&mut self, e: Endpoint, sign: Sign) -> u16 {
        let slot = &mut self.labels[e.id as usize];
        if *slot == 0 {
            self.next += 1;
            *slot = self.next;
        }
        let role = u16::from(e.role == Role::Under);
        let sign = u16::from(sign == Sign::Neg);
        (*slot << 2) | (role << 1) | sign
    }
}

pub fn canonical_form(d: &GaussDiagram) -> CanonicalKey {
    assert!(
        d.crossing_count() < 1 << 13,
        "diagram too large for a canonical key"
    );
    let comps = d.components();
    let first_closed = usize::from(d.is_long());

    let mut lengths: Vec<usize> = comps[first_closed..]
        .iter()
        .map(Vec::len)
        .filter(|&l| l > 0)
        .collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    let chordless = comps[first_closed..]
        .iter()
        .filter(|c| c.is_empty())
        .count();

    let mut header: Vec<u16> = vec![if d.kind() == Kind::Long { 1 } else { 0 }];
    if d.is_long() {
        header.push(comps[0].len() as u16);
    }
    header.push(lengths.len() as u16);
    header.extend(lengths.iter().map(|&l| l as u16));
    header.push(chordless as u16);

    let mut body: Vec<u16> = Vec::with_capacity(2 * d.crossing_count());
    let mut beam = vec![Partial {
        used: vec![false; comps.len()],
        labels: vec![0; d.crossing_count() + 1],
        next: 0,
    }];

    if d.is_long() {
        let p = &mut beam[0];
        p.used[0] = true;
        for &e in &comps[0] {
            body.push(p.token(e, d.sign(e.id)));
        }
    }

    for &len in &lengths {
        let mut best: Option<Vec<u16>> = None;
        let mut next_beam: Vec<Partial> = Vec::new();
        let mut scratch = Vec::with_capacity(len);
        for cand in &beam {
            for (ci, comp) in comps.iter().enumerate() {
                if cand.used[ci] || comp.len() != len {
                    continue;
                }
                for rot in 0..len {
                    let mut p = cand.clone();
                    scratch.clear();
                    let mut worse = false;
                    // still tied with `best` on the prefix read so far
                    let mut tied = best.is_some();
                    for k in 0..len {
                        let e = comp[(rot + k) % len];
                        let t = p.token(e, d.sign(e.id));
                        if tied {
                            let b = best.as_ref().unwrap()[k];
                            if t > b {
                                worse = true;
                                break;
                            }
                            tied = t == b;
                        }
                        scratch.push(t);
                    }
                    if worse {
                        continue;
                    }
                    p.used[ci] = true;
                    match &best {
                        Some(b) if scratch > *b => {}
                        Some(b) if scratch == *b => next_beam.push(p),
                        _ => {
                            best = Some(scratch.clone());
                            next_beam.clear();
                            next_beam.push(p);
                        }
                    }
                }
            }
        }
        body.extend(best.expect("component of the required length"));
        dedup_partials(&mut next_beam);
        beam = next_beam;
    }

    let mut bytes = Vec::with_capacity(2 * (header.len() + body.len()));
    for v in header.into_iter().chain(body) {
        bytes.extend_from_slice(&v.to_be_bytes());
    }
    CanonicalKey(bytes)
}

// Different choices can reach the same partial state (symmetric diagrams);
// keep one of each so the beam stays small.
fn dedup_partials(beam: &mut Vec<Partial>) {
    if beam.len() < 2 {
        return;
    }
    let mut seen = std::collections::HashSet::new();
    beam.retain(|p| seen.insert((p.used.clone(), p.labels.clone())));
}
