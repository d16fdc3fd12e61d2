//! Dispersion orders and concentration-based variability measures for
//! discrete distributions.
//!
//! The central object is the Lévy concentration function
//! `Q_X(eps) = sup_x P(x <= X <= x + eps)`. `X` is less weakly dispersive
//! than `Y` when `Q_X >= Q_Y` pointwise. The crate computes `Q` exactly for
//! finite supports, decides that order alongside the discrete dispersive,
//! stochastic, likelihood ratio and randomness orders, and evaluates the
//! measures `nu_r` and `nu_rob` built from `Q`.
//!
//! ```
//! use discdisp::{make_distribution, weak_dispersive_compare, Relation};
//!
//! let p = make_distribution(&[0.0, 1.0, 2.0], &[0.6, 0.2, 0.2]).unwrap();
//! let q = make_distribution(&[0.0, 1.0, 2.0], &[0.3, 0.5, 0.2]).unwrap();
//! assert_eq!(weak_dispersive_compare(&p, &q).relation, Relation::Less);
//! ```

pub mod cli;
pub mod concentration;
pub mod dist;
pub mod error;
pub mod fixtures;
pub mod measures;
pub mod orders;
pub mod prob;

pub use concentration::{
    combined_range_steps, common_step, concentration_at, concentration_function, dm_sequence, window_sup,
    DmSequence, StepFunction,
};
pub use dist::{
    affine, convolve, convolve_capped, family, from_counts, is_unimodal, lattice_info, make_distribution,
    map_monotone, Backend, Distribution, Family, LatticeInfo, TailBudget, DEFAULT_MAX_SUPPORT,
};
pub use error::{Error, Result};
pub use measures::{
    centered_rmoment_min, classical_measures, entropy, measure_report, nu_r, nu_rob, MeasureOptions, MeasureReport,
    NuRobVariant, QuantileType, Sample,
};
pub use orders::{
    ek_discrete_compare, ek_relevant_pairs, identifying_sequence, lr_compare, randomness_compare,
    stochastic_compare, weak_dispersive_compare, IdentifyingSequence, OrderVerdict, Relation, Witness,
};
pub use prob::{Prob, DIST_RTOL, PROB_TOL};
