//! Budgeted certificate search over the move graph.
//!
//! A search state is a diagram up to canonical form together with the
//! cobordism counters spent to reach it and the pieces of the surface traced
//! so far. States are deduplicated when first generated, so no two equal
//! states are both expanded. Slicing and reduction run best-first (fewest crossings, then
//! shallowest); equivalence runs breadth-first from both ends.
//!
//! Frontier nodes are expanded in fixed-size batches. Successor generation
//! for a batch may run on several workers, but results are merged into the
//! dedup table in pop order on one thread, so the outcome does not depend on
//! the worker count.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canonical::{canonical_form, CanonicalKey};
use crate::certificate::{rederive, Certificate, Claim, Counters, Pieces};
use crate::code::render_gauss;
use crate::gauss::GaussDiagram;
use crate::moves::{apply_move_with, enumerate_moves_with, Move, MoveKind, MoveKinds, MoveRules};
use crate::surface::carter_genus;

const BATCH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_crossings: usize,
    pub max_components: usize,
    pub max_saddles: usize,
    pub max_births: usize,
    pub max_deaths: usize,
    /// Cap on expanded states.
    pub max_nodes: usize,
    /// Cap on certificate length.
    pub max_depth: usize,
    pub workers: usize,
    pub rules: MoveRules,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_crossings: 8,
            max_components: 3,
            max_saddles: 1,
            max_births: 1,
            max_deaths: 1,
            max_nodes: 200_000,
            max_depth: 14,
            workers: 1,
            rules: MoveRules::default(),
        }
    }
}

impl SearchBudget {
    /// Whether every cap of `self` is at least the matching cap of `other`.
    pub fn dominates(&self, other: &SearchBudget) -> bool {
        self.max_crossings >= other.max_crossings
            && self.max_components >= other.max_components
            && self.max_saddles >= other.max_saddles
            && self.max_births >= other.max_births
            && self.max_deaths >= other.max_deaths
            && self.max_nodes >= other.max_nodes
            && self.max_depth >= other.max_depth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    /// Every state within the budget was expanded without success.
    Exhausted,
    /// The node cap stopped the search.
    BudgetHit,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Found => "found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::BudgetHit => "budget-hit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: usize,
    pub dedup: usize,
    /// Successors dropped because the goal is out of reach within the depth cap.
    pub pruned: usize,
    pub elapsed: Duration,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes={} dedup={} ms={}",
            self.nodes,
            self.dedup,
            self.elapsed.as_millis()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    /// The one-line stats record.
    pub fn record(&self) -> String {
        format!("status={} {}", self.status, self.stats)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduceOutcome {
    pub best: GaussDiagram,
    pub genus_bound: u64,
    /// R-moves from the input to `best`.
    pub certificate: Certificate,
    pub status: SearchStatus,
    pub stats: SearchStats,
}

// -- shared machinery -- //

struct Trail {
    parent: Vec<u32>,
    moves: Vec<Option<Move>>,
}

impl Trail {
    fn new() -> Self {
        Trail {
            parent: vec![u32::MAX],
            moves: vec![None],
        }
    }

    fn push(&mut self, parent: u32, m: Move) -> u32 {
        self.parent.push(parent);
        self.moves.push(Some(m));
        (self.parent.len() - 1) as u32
    }

    fn path(&self, mut idx: u32) -> Vec<Move> {
        let mut out = Vec::new();
        while let Some(m) = self.moves[idx as usize] {
            out.push(m);
            idx = self.parent[idx as usize];
        }
        out.reverse();
        out
    }

    fn chain(&self, mut idx: u32) -> Vec<u32> {
        let mut out = vec![idx];
        while self.parent[idx as usize] != u32::MAX {
            idx = self.parent[idx as usize];
            out.push(idx);
        }
        out
    }
}

struct State {
    diagram: GaussDiagram,
    counters: Counters,
    pieces: Pieces,
    depth: usize,
    trail: u32,
}

struct Successor {
    mv: Move,
    diagram: GaussDiagram,
    counters: Counters,
    pieces: Pieces,
    key: CanonicalKey,
}

/// Dedup identity of a state. Piece labels follow component order, so they
/// only combine with the canonical key when they carry no information; other
/// states are told apart by their exact code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Seen {
    key: CanonicalKey,
    counters: Counters,
    split: Option<(String, Pieces)>,
}

impl Seen {
    fn new(key: CanonicalKey, diagram: &GaussDiagram, counters: Counters, pieces: &Pieces) -> Self {
        let trivial = counters == Counters::default() || pieces.is_connected_open();
        let split = (!trivial).then(|| (render_gauss(diagram), pieces.clone()));
        Seen {
            key,
            counters,
            split,
        }
    }
}

/// Whether the pieces can still end up as one surface.
fn can_connect(p: &Pieces) -> bool {
    p.capped() == 0 || (p.capped() == 1 && p.live() == 0)
}

fn allowed_kinds(state: &State, base: MoveKinds, budget: &SearchBudget) -> MoveKinds {
    let mut kinds = base;
    let n = state.diagram.crossing_count();
    if n + 1 > budget.max_crossings {
        kinds = kinds.without(MoveKind::R1Insert);
    }
    if n + 2 > budget.max_crossings {
        kinds = kinds.without(MoveKind::R2Insert);
    }
    let c = state.counters;
    if c.saddles >= budget.max_saddles {
        kinds = kinds.without(MoveKind::Saddle);
    }
    // an annulus needs b + d = s <= max_saddles at the end
    let closed_budget = c.births + c.deaths >= budget.max_saddles;
    if c.births >= budget.max_births || closed_budget {
        kinds = kinds.without(MoveKind::Birth);
    }
    if c.deaths >= budget.max_deaths || closed_budget {
        kinds = kinds.without(MoveKind::Death);
    }
    if state.diagram.component_count() >= budget.max_components {
        kinds = kinds.without(MoveKind::Birth);
    }
    kinds
}

type MovesLeft<'a> = &'a (dyn Fn(&GaussDiagram, Counters) -> usize + Sync);

/// Successors of `state` within the budget, and how many were dropped by the
/// `moves_left` bound.
fn expand(
    state: &State,
    base: MoveKinds,
    budget: &SearchBudget,
    moves_left: MovesLeft,
) -> (Vec<Successor>, usize) {
    let kinds = allowed_kinds(state, base, budget);
    let mut pruned = 0;
    let succs = enumerate_moves_with(&state.diagram, kinds, &budget.rules)
        .into_iter()
        .filter_map(|mv| {
            let diagram = apply_move_with(&state.diagram, &mv, &budget.rules).ok()?;
            if diagram.component_count() > budget.max_components
                || diagram.crossing_count() > budget.max_crossings
            {
                return None;
            }
            let mut pieces = state.pieces.clone();
            pieces.record(&mv);
            if !can_connect(&pieces) {
                return None;
            }
            let mut counters = state.counters;
            counters.record(mv.kind());
            if state.depth + 1 + moves_left(&diagram, counters) > budget.max_depth {
                pruned += 1;
                return None;
            }
            let key = canonical_form(&diagram);
            Some(Successor {
                mv,
                diagram,
                counters,
                pieces,
                key,
            })
        })
        .collect();
    (succs, pruned)
}

fn expand_batch(
    batch: &[State],
    base: MoveKinds,
    budget: &SearchBudget,
    moves_left: MovesLeft,
    pool: Option<&rayon::ThreadPool>,
) -> Vec<(Vec<Successor>, usize)> {
    match pool {
        Some(pool) => pool.install(|| {
            batch
                .par_iter()
                .map(|s| expand(s, base, budget, moves_left))
                .collect()
        }),
        None => batch
            .iter()
            .map(|s| expand(s, base, budget, moves_left))
            .collect(),
    }
}

fn make_pool(workers: usize) -> Option<rayon::ThreadPool> {
    if workers <= 1 {
        return None;
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .ok()
}

type Priority = Reverse<(usize, usize, u64)>;

struct Run {
    status: SearchStatus,
    found: Option<u32>,
    trail: Trail,
    stats: SearchStats,
}

/// Best-first search from `start`. `on_visit` sees every newly generated
/// state (and the start, with trail index 0) and returns true to stop with
/// success.
fn best_first(
    start: &GaussDiagram,
    base: MoveKinds,
    budget: &SearchBudget,
    moves_left: impl Fn(&GaussDiagram, Counters) -> usize + Sync,
    mut on_visit: impl FnMut(u32, &GaussDiagram, &CanonicalKey, Counters, &Pieces) -> bool,
) -> Run {
    let clock = Instant::now();
    let pool = make_pool(budget.workers);
    let mut stats = SearchStats::default();
    let mut trail = Trail::new();
    let mut seen: HashSet<Seen> = HashSet::new();
    let mut frontier: BinaryHeap<(Priority, u32)> = BinaryHeap::new();
    let mut parked: HashMap<u32, State> = HashMap::new();
    let mut seq = 0u64;
    let mut dropped = false;

    let root_key = canonical_form(start);
    let root_pieces = Pieces::new(start.component_count());
    if on_visit(0, start, &root_key, Counters::default(), &root_pieces) {
        stats.elapsed = clock.elapsed();
        return Run {
            status: SearchStatus::Found,
            found: Some(0),
            trail,
            stats,
        };
    }
    seen.insert(Seen::new(
        root_key,
        start,
        Counters::default(),
        &root_pieces,
    ));
    if budget.max_depth > 0 && moves_left(start, Counters::default()) <= budget.max_depth {
        frontier.push((Reverse((start.crossing_count(), 0, seq)), 0));
        parked.insert(
            0,
            State {
                diagram: start.clone(),
                counters: Counters::default(),
                pieces: root_pieces,
                depth: 0,
                trail: 0,
            },
        );
    }

    while !frontier.is_empty() {
        if stats.nodes >= budget.max_nodes {
            stats.elapsed = clock.elapsed();
            return Run {
                status: SearchStatus::BudgetHit,
                found: None,
                trail,
                stats,
            };
        }
        let take = BATCH.min(budget.max_nodes - stats.nodes);
        let mut batch = Vec::with_capacity(take);
        while batch.len() < take {
            let Some((_, id)) = frontier.pop() else { break };
            batch.push(parked.remove(&id).expect("parked state"));
        }
        stats.nodes += batch.len();
        let expanded = expand_batch(&batch, base, budget, &moves_left, pool.as_ref());
        for (state, (succs, pruned)) in batch.iter().zip(expanded) {
            let depth = state.depth + 1;
            stats.pruned += pruned;
            for s in succs {
                let entry = Seen::new(s.key, &s.diagram, s.counters, &s.pieces);
                if seen.contains(&entry) {
                    stats.dedup += 1;
                    continue;
                }
                let idx = trail.push(state.trail, s.mv);
                if on_visit(idx, &s.diagram, &entry.key, s.counters, &s.pieces) {
                    stats.elapsed = clock.elapsed();
                    return Run {
                        status: SearchStatus::Found,
                        found: Some(idx),
                        trail,
                        stats,
                    };
                }
                seen.insert(entry);
                if depth < budget.max_depth {
                    seq += 1;
                    frontier.push((Reverse((s.diagram.crossing_count(), depth, seq)), idx));
                    parked.insert(
                        idx,
                        State {
                            diagram: s.diagram,
                            counters: s.counters,
                            pieces: s.pieces,
                            depth,
                            trail: idx,
                        },
                    );
                }
            }
        }
        // only the best `remaining` entries can still be popped
        let remaining = budget.max_nodes - stats.nodes;
        if remaining > 0 && frontier.len() > 2 * remaining.max(BATCH) {
            let mut entries = std::mem::take(&mut frontier).into_sorted_vec();
            for (_, id) in entries.drain(..entries.len() - remaining) {
                parked.remove(&id);
            }
            dropped = true;
            frontier = entries.into();
        }
    }
    stats.elapsed = clock.elapsed();
    Run {
        status: if dropped {
            SearchStatus::BudgetHit
        } else {
            SearchStatus::Exhausted
        },
        found: None,
        trail,
        stats,
    }
}

// -- public searches -- //

/// A lower bound on the moves from `d` to the unknot with balanced counters:
/// R1/R2 deletions remove at most two crossings each, and the cobordism moves
/// (which never touch crossings) change the component count and the
/// imbalance `s - b - d` by one each.
fn slice_moves_left(d: &GaussDiagram, c: Counters) -> usize {
    let imbalance = (c.saddles as i64 - (c.births + c.deaths) as i64).unsigned_abs() as usize;
    let components = d.component_count().abs_diff(1);
    d.crossing_count().div_ceil(2) + imbalance.max(components)
}

/// Searches for a concordance from a round knot to the unknot.
pub fn search_slice(d: &GaussDiagram, budget: &SearchBudget) -> SearchOutcome {
    let goal = canonical_form(&GaussDiagram::unknot());
    let run = best_first(
        d,
        MoveKinds::ALL,
        budget,
        slice_moves_left,
        |_, _, key, counters, pieces| *key == goal && counters.is_annulus() && pieces.count() == 1,
    );
    let certificate = run.found.map(|idx| Certificate {
        start: d.clone(),
        steps: run.trail.path(idx),
        end: GaussDiagram::unknot(),
    });
    debug_assert!(certificate
        .as_ref()
        .is_none_or(|c| crate::validate_certificate_with(c, Claim::Concordance, &budget.rules).ok));
    SearchOutcome {
        status: run.status,
        certificate,
        stats: run.stats,
    }
}

/// R-move search for the diagram with fewest crossings (then least Carter
/// genus) and the least Carter genus seen. Stops early at a diagram without
/// crossings.
pub fn reduce(d: &GaussDiagram, budget: &SearchBudget) -> ReduceOutcome {
    let genus = |g: &GaussDiagram| {
        let round = if g.is_long() {
            g.closure().unwrap()
        } else {
            g.clone()
        };
        carter_genus(&round).expect("round diagram")
    };
    let mut best_rank = (d.crossing_count(), genus(d));
    let mut best = (0u32, d.clone());
    let mut genus_bound = best_rank.1;
    let run = best_first(
        d,
        MoveKinds::REIDEMEISTER,
        budget,
        |_, _| 0,
        |idx, g, _, _, _| {
            let rank = (g.crossing_count(), genus(g));
            genus_bound = genus_bound.min(rank.1);
            if rank < best_rank {
                best_rank = rank;
                best = (idx, g.clone());
            }
            rank.0 == 0
        },
    );
    let (idx, best) = best;
    let certificate = Certificate {
        start: d.clone(),
        steps: run.trail.path(idx),
        end: best.clone(),
    };
    ReduceOutcome {
        best,
        genus_bound,
        certificate,
        status: run.status,
        stats: run.stats,
    }
}

/// Meet-in-the-middle R-move search for a certificate from `a` to `b`.
pub fn search_equivalent(
    a: &GaussDiagram,
    b: &GaussDiagram,
    budget: &SearchBudget,
) -> SearchOutcome {
    let clock = Instant::now();
    let pool = make_pool(budget.workers);
    let mut stats = SearchStats::default();
    let key_a = canonical_form(a);
    let key_b = canonical_form(b);
    if key_a == key_b {
        stats.elapsed = clock.elapsed();
        return SearchOutcome {
            status: SearchStatus::Found,
            certificate: Some(Certificate {
                start: a.clone(),
                steps: Vec::new(),
                end: b.clone(),
            }),
            stats,
        };
    }
    if a.kind() != b.kind() {
        stats.elapsed = clock.elapsed();
        return SearchOutcome {
            status: SearchStatus::Exhausted,
            certificate: None,
            stats,
        };
    }
    // strict R3 is not closed under inversion, so only search forwards
    let bidirectional = budget.rules.r3 == crate::moves::R3Mode::Oriented;

    struct Side {
        trail: Trail,
        seen: HashMap<CanonicalKey, u32>,
        layer: Vec<State>,
        depth: usize,
    }
    let new_side = |d: &GaussDiagram, key: CanonicalKey| {
        let mut seen = HashMap::new();
        seen.insert(key, 0);
        Side {
            trail: Trail::new(),
            seen,
            layer: vec![State {
                diagram: d.clone(),
                counters: Counters::default(),
                pieces: Pieces::new(d.component_count()),
                depth: 0,
                trail: 0,
            }],
            depth: 0,
        }
    };
    let mut sides = [new_side(a, key_a), new_side(b, key_b.clone())];
    if !bidirectional {
        sides[1].layer.clear();
    }

    let meet: Option<(u32, u32)> = 'search: loop {
        let can = |s: &Side, other: &Side| {
            !s.layer.is_empty() && s.depth + other.depth < budget.max_depth
        };
        let pick = match (can(&sides[0], &sides[1]), can(&sides[1], &sides[0])) {
            (false, false) => break 'search None,
            (true, false) => 0,
            (false, true) => 1,
            (true, true) => usize::from(sides[1].layer.len() < sides[0].layer.len()),
        };
        let layer = std::mem::take(&mut sides[pick].layer);
        let mut next = Vec::new();
        for chunk in layer.chunks(BATCH) {
            if stats.nodes >= budget.max_nodes {
                stats.elapsed = clock.elapsed();
                return SearchOutcome {
                    status: SearchStatus::BudgetHit,
                    certificate: None,
                    stats,
                };
            }
            let chunk = &chunk[..chunk.len().min(budget.max_nodes - stats.nodes)];
            stats.nodes += chunk.len();
            let expanded = expand_batch(
                chunk,
                MoveKinds::REIDEMEISTER,
                budget,
                &|_, _| 0,
                pool.as_ref(),
            );
            for (state, (succs, _)) in chunk.iter().zip(expanded) {
                for s in succs {
                    if sides[pick].seen.contains_key(&s.key) {
                        stats.dedup += 1;
                        continue;
                    }
                    let idx = sides[pick].trail.push(state.trail, s.mv);
                    if let Some(&other) = sides[1 - pick].seen.get(&s.key) {
                        break 'search Some(if pick == 0 {
                            (idx, other)
                        } else {
                            (other, idx)
                        });
                    }
                    sides[pick].seen.insert(s.key, idx);
                    next.push(State {
                        diagram: s.diagram,
                        counters: s.counters,
                        pieces: s.pieces,
                        depth: state.depth + 1,
                        trail: idx,
                    });
                }
            }
        }
        sides[pick].layer = next;
        sides[pick].depth += 1;
    };

    let Some((fwd, bwd)) = meet else {
        stats.elapsed = clock.elapsed();
        return SearchOutcome {
            status: SearchStatus::Exhausted,
            certificate: None,
            stats,
        };
    };
    let mut steps = sides[0].trail.path(fwd);
    let mut current = a.clone();
    for m in &steps {
        current = apply_move_with(&current, m, &budget.rules).expect("forward path replays");
    }
    // walk the backward tree towards `b`, re-deriving each inverse step on
    // the actual diagram
    let chain = sides[1].trail.chain(bwd);
    let back_keys: HashMap<u32, CanonicalKey> =
        sides[1].seen.iter().map(|(k, &i)| (i, k.clone())).collect();
    for idx in chain.into_iter().skip(1) {
        let target = if idx == 0 {
            key_b.clone()
        } else {
            back_keys[&idx].clone()
        };
        let found = [
            MoveKind::R1Delete,
            MoveKind::R2Delete,
            MoveKind::R3,
            MoveKind::R1Insert,
            MoveKind::R2Insert,
        ]
        .into_iter()
        .find_map(|k| rederive(&current, k, |g| canonical_form(g) == target));
        let (m, next) = found.expect("inverse of an R-move");
        steps.push(m);
        current = next;
    }
    stats.elapsed = clock.elapsed();
    SearchOutcome {
        status: SearchStatus::Found,
        certificate: Some(Certificate {
            start: a.clone(),
            steps,
            end: b.clone(),
        }),
        stats,
    }
}
