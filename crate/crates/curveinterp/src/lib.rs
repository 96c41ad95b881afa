//! Exact-arithmetic tools for incidence problems of curves in projective
//! space: closed-form feasibility criteria, a constructive genus-0
//! interpolation solver, splitting types of restricted tangent bundles on
//! `P^1`, and desk-scale verification of the interpolation property on nodal
//! degenerations, computed as kernels of explicit matrices over a prime field.

pub mod euler_model;
pub mod field;
pub mod matrix;
pub mod nodal_glue;
pub mod numerology;
pub mod poly;
pub mod rational_maps;
pub mod rng;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] field::FieldError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("node mismatch: {0}")]
    NodeMismatch(String),
    #[error("resampling budget exhausted: {0}")]
    ResamplingBudget(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("internal error: {0}")]
    Internal(String),
}
