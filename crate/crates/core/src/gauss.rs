//! Gauss diagrams for round and long virtual links.
//!
//! Only classical crossings are recorded. Virtual crossings carry no data and
//! every detour or mixed move acts as the identity on this representation.
//!
//! Crossing ids are kept in first-appearance order (components in order,
//! positions in order, starting at 1). Every constructor renumbers, so two
//! diagrams that differ only by a relabeling compare equal.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

/// One passage of a component through a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub id: u32,
    pub role: Role,
}

impl Endpoint {
    pub fn over(id: u32) -> Self {
        Endpoint {
            id,
            role: Role::Over,
        }
    }

    pub fn under(id: u32) -> Self {
        Endpoint {
            id,
            role: Role::Under,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Round,
    /// Component 0 is the open strand, read left to right.
    Long,
}

/// Location of an endpoint: (component index, position index).
pub type Slot = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingRecord {
    pub id: u32,
    pub sign: Sign,
    pub over: Slot,
    pub under: Slot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Stats {
    pub crossings: usize,
    pub components: usize,
    pub writhe: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {id} appears {count} times (expected 2)")]
    Multiplicity { id: u32, count: usize },
    #[error("crossing {id} has two {role:?} endpoints")]
    DuplicateRole { id: u32, role: Role },
    #[error("crossing {id} carries both signs")]
    SignMismatch { id: u32 },
    #[error("crossing id 0 is not allowed")]
    ZeroId,
    #[error("a long diagram needs an open strand")]
    MissingStrand,
    #[error("{0}")]
    Unsupported(&'static str),
    #[error("no component {0}")]
    NoComponent(usize),
    #[error("arc {arc} is out of range on component {component}")]
    ArcOutOfRange { component: usize, arc: usize },
}

/// A virtual link diagram as signed chords on circles (and one open strand
/// for long diagrams).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    kind: Kind,
    components: Vec<Vec<Endpoint>>,
    // indexed by id - 1
    signs: Vec<Sign>,
}

impl GaussDiagram {
    /// The empty round link (no components).
    pub fn empty() -> Self {
        GaussDiagram {
            kind: Kind::Round,
            components: Vec::new(),
            signs: Vec::new(),
        }
    }

    /// A single chordless circle.
    pub fn unknot() -> Self {
        GaussDiagram {
            kind: Kind::Round,
            components: vec![Vec::new()],
            signs: Vec::new(),
        }
    }

    /// The long unknot: an open strand without crossings.
    pub fn long_unknot() -> Self {
        GaussDiagram {
            kind: Kind::Long,
            components: vec![Vec::new()],
            signs: Vec::new(),
        }
    }

    /// Builds and validates a diagram from raw components with arbitrary ids.
    /// `signs` lists one entry per endpoint occurrence as `(id, sign)`; both
    /// occurrences of an id must agree.
    pub fn from_parts(
        kind: Kind,
        components: Vec<Vec<Endpoint>>,
        signs: &[(u32, Sign)],
    ) -> Result<Self, DiagramError> {
        if kind == Kind::Long && components.is_empty() {
            return Err(DiagramError::MissingStrand);
        }
        let max_id = components.iter().flatten().map(|e| e.id).max().unwrap_or(0) as usize;
        let mut seen = vec![(0usize, false, false); max_id + 1];
        for e in components.iter().flatten() {
            if e.id == 0 {
                return Err(DiagramError::ZeroId);
            }
            let entry = &mut seen[e.id as usize];
            entry.0 += 1;
            let flag = match e.role {
                Role::Over => &mut entry.1,
                Role::Under => &mut entry.2,
            };
            if *flag {
                return Err(DiagramError::DuplicateRole {
                    id: e.id,
                    role: e.role,
                });
            }
            *flag = true;
        }
        for (id, entry) in seen.iter().enumerate().skip(1) {
            if entry.0 != 0 && entry.0 != 2 {
                return Err(DiagramError::Multiplicity {
                    id: id as u32,
                    count: entry.0,
                });
            }
        }
        let mut sign_of: Vec<Option<Sign>> = vec![None; max_id + 1];
        for &(id, s) in signs {
            let Some(slot) = sign_of.get_mut(id as usize) else {
                continue;
            };
            match slot {
                Some(prev) if *prev != s => return Err(DiagramError::SignMismatch { id }),
                _ => *slot = Some(s),
            }
        }
        for (id, entry) in seen.iter().enumerate().skip(1) {
            if entry.0 == 2 && sign_of[id].is_none() {
                return Err(DiagramError::Multiplicity {
                    id: id as u32,
                    count: 0,
                });
            }
        }
        Ok(Self::assemble(kind, components, |id| {
            sign_of[id as usize].unwrap()
        }))
    }

    /// Renumbers ids by first appearance. Callers guarantee the pairing
    /// invariants.
    pub(crate) fn assemble(
        kind: Kind,
        mut components: Vec<Vec<Endpoint>>,
        sign_of: impl Fn(u32) -> Sign,
    ) -> Self {
        let max_id = components.iter().flatten().map(|e| e.id).max().unwrap_or(0) as usize;
        let mut relabel = vec![0u32; max_id + 1];
        let mut signs = Vec::new();
        for e in components.iter_mut().flatten() {
            let slot = &mut relabel[e.id as usize];
            if *slot == 0 {
                signs.push(sign_of(e.id));
                *slot = signs.len() as u32;
            }
            e.id = *slot;
        }
        let d = GaussDiagram {
            kind,
            components,
            signs,
        };
        debug_assert!(d.check().is_ok(), "assembled invalid diagram {d:?}");
        d
    }

    /// Verifies the pairing and back-reference invariants.
    pub fn check(&self) -> Result<(), DiagramError> {
        if self.kind == Kind::Long && self.components.is_empty() {
            return Err(DiagramError::MissingStrand);
        }
        let mut over = vec![0usize; self.signs.len()];
        let mut under = vec![0usize; self.signs.len()];
        for e in self.components.iter().flatten() {
            let idx = e.id as usize;
            if idx == 0 || idx > self.signs.len() {
                return Err(DiagramError::Multiplicity { id: e.id, count: 1 });
            }
            match e.role {
                Role::Over => over[idx - 1] += 1,
                Role::Under => under[idx - 1] += 1,
            }
        }
        for i in 0..self.signs.len() {
            if over[i] != 1 || under[i] != 1 {
                let id = i as u32 + 1;
                let role = if over[i] > 1 { Role::Over } else { Role::Under };
                if over[i] + under[i] != 2 {
                    return Err(DiagramError::Multiplicity {
                        id,
                        count: over[i] + under[i],
                    });
                }
                return Err(DiagramError::DuplicateRole { id, role });
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_long(&self) -> bool {
        self.kind == Kind::Long
    }

    pub fn components(&self) -> &[Vec<Endpoint>] {
        &self.components
    }

    pub fn component(&self, c: usize) -> Option<&[Endpoint]> {
        self.components.get(c).map(Vec::as_slice)
    }

    /// Whether component `c` is read cyclically.
    pub fn is_closed(&self, c: usize) -> bool {
        !(self.kind == Kind::Long && c == 0)
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn sign(&self, id: u32) -> Sign {
        self.signs[id as usize - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    pub fn stats(&self) -> Stats {
        Stats {
            crossings: self.crossing_count(),
            components: self.component_count(),
            writhe: self.writhe(),
        }
    }

    /// `[over slot, under slot]` for every crossing, indexed by id - 1.
    pub fn crossing_slots(&self) -> Vec<[Slot; 2]> {
        let mut out = vec![[(0, 0); 2]; self.signs.len()];
        for (c, comp) in self.components.iter().enumerate() {
            for (p, e) in comp.iter().enumerate() {
                let k = match e.role {
                    Role::Over => 0,
                    Role::Under => 1,
                };
                out[e.id as usize - 1][k] = (c, p);
            }
        }
        out
    }

    pub fn crossing(&self, id: u32) -> CrossingRecord {
        let mut over = (0, 0);
        let mut under = (0, 0);
        for (c, comp) in self.components.iter().enumerate() {
            for (p, e) in comp.iter().enumerate() {
                if e.id == id {
                    match e.role {
                        Role::Over => over = (c, p),
                        Role::Under => under = (c, p),
                    }
                }
            }
        }
        CrossingRecord {
            id,
            sign: self.sign(id),
            over,
            under,
        }
    }

    pub fn crossings(&self) -> Vec<CrossingRecord> {
        self.crossing_slots()
            .into_iter()
            .enumerate()
            .map(|(i, [over, under])| CrossingRecord {
                id: i as u32 + 1,
                sign: self.signs[i],
                over,
                under,
            })
            .collect()
    }

    /// Number of arcs (insertion gaps) that enumeration visits on component
    /// `c`: the strand has `len + 1`, a closed component `max(len, 1)`.
    pub fn arc_count(&self, c: usize) -> usize {
        let len = self.components[c].len();
        if self.is_closed(c) {
            len.max(1)
        } else {
            len + 1
        }
    }

    pub(crate) fn rebuild(&self, kind: Kind, components: Vec<Vec<Endpoint>>) -> Self {
        Self::assemble(kind, components, |id| self.sign(id))
    }

    // -- unary and binary operations -- //

    /// Reverses the orientation of every component.
    pub fn reverse(&self) -> Self {
        let comps = self
            .components
            .iter()
            .map(|c| c.iter().rev().copied().collect())
            .collect();
        self.rebuild(self.kind, comps)
    }

    pub fn mirror(&self, mode: MirrorMode) -> Result<Self, DiagramError> {
        match mode {
            MirrorMode::Switch => {
                let comps = self
                    .components
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|e| Endpoint {
                                id: e.id,
                                role: e.role.flip(),
                            })
                            .collect()
                    })
                    .collect();
                Ok(Self::assemble(self.kind, comps, |id| self.sign(id).flip()))
            }
            MirrorMode::Reflect => {
                if !self.is_long() {
                    return Err(DiagramError::Unsupported("reflection needs a long diagram"));
                }
                let comps = self
                    .components
                    .iter()
                    .map(|c| c.iter().rev().copied().collect())
                    .collect();
                Ok(Self::assemble(self.kind, comps, |id| self.sign(id).flip()))
            }
        }
    }

    /// The concordance inverse of a long knot: reverse of the reflection.
    pub fn inverse(&self) -> Result<Self, DiagramError> {
        Ok(self.mirror(MirrorMode::Reflect)?.reverse())
    }

    /// Concatenates two long diagrams, `self` on the left.
    pub fn connected_sum(&self, right: &GaussDiagram) -> Result<Self, DiagramError> {
        if !self.is_long() || !right.is_long() {
            return Err(DiagramError::Unsupported(
                "connected sum needs two long diagrams",
            ));
        }
        let shift = self.crossing_count() as u32;
        let lift = |c: &Vec<Endpoint>| -> Vec<Endpoint> {
            c.iter()
                .map(|e| Endpoint {
                    id: e.id + shift,
                    role: e.role,
                })
                .collect()
        };
        let mut strand = self.components[0].clone();
        strand.extend(lift(&right.components[0]));
        let mut comps = vec![strand];
        comps.extend(self.components[1..].iter().cloned());
        comps.extend(right.components[1..].iter().map(lift));
        Ok(Self::assemble(Kind::Long, comps, |id| {
            if id > shift {
                right.sign(id - shift)
            } else {
                self.sign(id)
            }
        }))
    }

    /// Joins the ends of the open strand.
    pub fn closure(&self) -> Result<Self, DiagramError> {
        if !self.is_long() {
            return Err(DiagramError::Unsupported("closure needs a long diagram"));
        }
        Ok(GaussDiagram {
            kind: Kind::Round,
            components: self.components.clone(),
            signs: self.signs.clone(),
        })
    }

    /// Opens component `component` at arc `arc` (the gap before endpoint
    /// `arc`), making it the strand of a long diagram.
    pub fn cut(&self, component: usize, arc: usize) -> Result<Self, DiagramError> {
        if self.is_long() {
            return Err(DiagramError::Unsupported("cut needs a round diagram"));
        }
        let comp = self
            .components
            .get(component)
            .ok_or(DiagramError::NoComponent(component))?;
        if arc >= comp.len().max(1) {
            return Err(DiagramError::ArcOutOfRange { component, arc });
        }
        let mut strand = comp[arc..].to_vec();
        strand.extend_from_slice(&comp[..arc]);
        let mut comps = vec![strand];
        comps.extend(
            self.components
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != component)
                .map(|(_, c)| c.clone()),
        );
        Ok(self.rebuild(Kind::Long, comps))
    }

    /// Forgets signs and over/under roles.
    pub fn flatten(&self) -> FlatDiagram {
        FlatDiagram {
            kind: self.kind,
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|e| e.id).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MirrorMode {
    /// Exchange over and under at every crossing (flips every sign).
    Switch,
    /// Reflect a long diagram through a vertical line.
    Reflect,
}

/// Chord pairing only: the forgetful image of a [`GaussDiagram`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatDiagram {
    pub kind: Kind,
    pub components: Vec<Vec<u32>>,
}

impl FlatDiagram {
    pub fn chord_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Relabels chords by first appearance.
    pub fn normalized(&self) -> Self {
        let mut map = std::collections::HashMap::new();
        let components = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|id| {
                        let next = map.len() as u32 + 1;
                        *map.entry(*id).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        FlatDiagram {
            kind: self.kind,
            components,
        }
    }

    pub fn reverse(&self) -> Self {
        FlatDiagram {
            kind: self.kind,
            components: self
                .components
                .iter()
                .map(|c| c.iter().rev().copied().collect())
                .collect(),
        }
        .normalized()
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render_gauss(self))
    }
}
