//! Exact-arithmetic library for coefficients of multiple Dirichlet series
//! over F_q(t).
//!
//! The crate computes the twisted-multiplicative coefficients
//! a(f_1,...,f_r; q, chi, M) attached to a symmetric integer matrix M and a
//! character chi of order n, two ways: closed-form evaluators for three
//! special matrices, and a generic inductive solver that recovers the
//! Weil-number data J(d_1,...,d_r) from power-sum sequences. Everything is
//! exact: field elements live in dlog tables, character and Gauss-sum values
//! in Q(zeta_np), and magnitude tests are certified interval comparisons.
//!
//! Module map:
//! - [`interval`]: dyadic ball arithmetic, certified comparisons
//! - [`cyclo`]: Q(zeta_N) and the formal sqrt(q) extension
//! - [`ffield`]: F_{q^m} towers, chi, psi, norms and traces
//! - [`polyarith`]: monic polynomials, resultants, residue symbols, factoring
//! - [`gauss`]: g_chi(f1,f2), base Gauss sums, the b and H helper functions
//! - [`weil`]: WeilSet algebra and recovery from power sums
//! - [`coeff`]: presets, twisted-multiplicative composition, the solver
//! - [`series`]: lambda tables, rational generating functions, comparisons
//! - [`verify`]: named verification suites shared by the CLI and tests

pub mod cyclo;
pub mod ffield;
pub mod interval;
pub mod polyarith;

pub mod gauss;
pub mod weil;

pub mod coeff;
pub mod series;
pub mod verify;

pub use cyclo::{CycError, CycNum, SqrtQ};
pub use ffield::{FieldError, FieldSpec, FqElem};
pub use polyarith::{Factorization, MonicPoly, Poly};
