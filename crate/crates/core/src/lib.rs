//! Virtual knots and links as Gauss diagrams.
//!
//! * [`gauss`]: the diagram model and the knot operations (reverse, mirror,
//!   inverse, connected sum, closure, cut).
//! * [`code`]: the Gauss-code text format.
//! * [`canonical`]: canonical keys for deduplication.
//! * [`surface`]: the Carter band surface and its genus.
//! * [`moves`]: Reidemeister, saddle, birth and death moves.
//! * [`certificate`]: replayable cobordism certificates and their validation.
//! * [`search`]: budgeted certificate search.
//! * [`kishino`]: the bundled Kishino knot and its slicing.

pub mod canonical;
pub mod certificate;
pub mod code;
pub mod gauss;
pub mod kishino;
pub mod moves;
pub mod search;
pub mod surface;

pub use canonical::{canonical_form, CanonicalKey};
pub use certificate::{
    transport_closure_to_long, transport_long_to_closure, validate_certificate,
    validate_certificate_with, Certificate, Claim, Counters, Failure, Pieces, ValidationReport,
    Verdict,
};
pub use code::{parse_gauss, render_gauss, ParseError};
pub use gauss::{
    CrossingRecord, DiagramError, Endpoint, FlatDiagram, GaussDiagram, Kind, MirrorMode, Role,
    Sign, Stats,
};
pub use moves::{
    apply_move, apply_move_with, enumerate_moves, enumerate_moves_with, Move, MoveError, MoveKind,
    MoveKinds, MoveRules, R3Mode,
};
pub use search::{
    reduce, search_equivalent, search_slice, ReduceOutcome, SearchBudget, SearchOutcome,
    SearchStatus,
};
pub use surface::{
    build_map, carter_genus, carter_report, genus_upper_bound, CarterReport, CombinatorialMap,
};
