//! Spectral means `p(tA)f` of constant-coefficient elliptic operators on a
//! periodic grid, and the function-space norms used to measure their
//! convergence.

pub mod distributions;
pub mod error;
pub mod grid;
pub mod hypotheses;
pub mod means;
pub mod multiplier;
pub mod smooth;
pub mod spaces;
pub mod symbols;

pub use error::{Error, Result};
pub use grid::{
    forward_transform, inverse_transform, lp_norm, pair, spectral_l2_norm, GridFunction, GridSpec,
    SpectrumFunction,
};
pub use hypotheses::{
    assemble_hypothesis_report, check_derivative_decay, check_integrability, check_theorem2,
    HypothesisParameters, HypothesisReport, Target, TheoremId,
};
pub use means::{make_gaussian_mean, make_riesz_mean, make_smooth_cutoff_mean, MeanFunction};
pub use symbols::HomogeneousSymbol;
pub use multiplier::{
    apply_multiplier, bessel_order, converge_error, mollify, spectral_derivative, spectral_mean, standard_bump,
    MultiplierPlan,
};
pub use spaces::{BesovParams, NormSpec};
pub use distributions::{
    classify_membership, distribution_convergence, mean_of_distribution, negative_liouville_norm,
    pair_distribution, spectrum_of_distribution, verify_duality, Atom, CompactDistribution,
};
