//! Exact combinatorics of quasi-BPS categories for symmetric quivers.
//!
//! Quiver constructions, weight-lattice zonotopes, generator enumeration for
//! magic and quasi-BPS windows, the weight-decomposition algorithm, and
//! enumeration and ordering of semiorthogonal-decomposition summands. All
//! arithmetic is exact.

pub mod bps;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod quiver;
pub mod rational;
pub mod sod;
pub mod structure;
pub mod zonotope;

pub use bps::{
    compare_summands, dd_generators, decompose_weight, from_summand, is_good_weight, magic_generators, to_summand,
    Decomposition, PartitionPath, PathLevel, SummandLabel, SummandOrder,
};
pub use error::{Error, Result};
pub use sod::{
    compositions, framed_summands, knorrer_shift_check, preprojective_summands, unframed_summands, KnorrerReport,
    LabelEntry, OrderSource, SlopeWindow, SodReport, WindowSpec,
};
pub use lattice::{
    block_cocharacter, n_lambda, rep_weights, rho, tau_sigma, theta_weights, Cocharacter, DimVec, GenericWeight, Space,
    Weight, WeightMultiset,
};
pub use quiver::{AssumptionFlags, EdgeTag, Quiver, USpec, FRAMING};
pub use rational::{GenericReal, Q};
pub use structure::{
    alpha_q, codim_bound, dim_p, gorenstein_flags, serre_report, support_gate, CodimBound, DimP, StructureFlags,
    StructureReport, SupportGate,
};
pub use zonotope::{v_polytope, w_polytope, Facet, FacetCap, Segment, Zonotope};
