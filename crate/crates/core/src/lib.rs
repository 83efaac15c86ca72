//! Exact-arithmetic engine for reversible polynomial vector fields near a
//! simple elliptic or saddle equilibrium: computes truncated normal forms,
//! builds the order-by-order change of coordinates and time-reparametrization
//! realizing the normal form as a Hamiltonian vector field, and emits
//! certificates whose claims can be re-verified independently and exactly.
//!
//! Module map:
//! - [`polyalg`]: exact polynomial and linear algebra (the universal carrier).
//! - [`field`]: vector fields, involutions, reversibility and Hamiltonicity
//!   checks, pushforwards, time-reparametrization.
//! - [`normalform`]: the homological operator, resonance detection, and the
//!   degree-by-degree normal-form reduction.
//! - [`hamiltonize`]: the induction producing a Hamiltonian realization
//!   `Y = J∇H` with its transformation `(Ψ, ρ)`.
//! - [`certificate`]: the self-contained proof object and its text format.
//! - [`verify`]: solver-independent exact re-verification plus a
//!   floating-point energy-drift harness.

pub mod certificate;
pub mod field;
pub mod hamiltonize;
pub mod normalform;
pub mod polyalg;
pub mod verify;
