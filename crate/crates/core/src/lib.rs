//! A numerical workbench for Toeplitz operators on Landau levels and on the
//! Bergman space of the unit ball.
//!
//! The library builds the operators in closed form (no generic
//! high-dimensional quadrature enters any matrix element), computes Fredholm
//! indices of their graded truncations, and independently evaluates the
//! topological side of the story: winding numbers on the circle and the odd
//! Chern character integral on `S^3`.
//!
//! Modules:
//!
//! * [`specfun`] - special functions and exact closed-form integrals,
//! * [`symbols`] - the symbol algebra on the sphere at infinity,
//! * [`landau`] - creation/annihilation calculus, level bases, kernels,
//! * [`bergman`] - Bergman weights and the Landau comparison,
//! * [`toeplitz`] - graded matrix assembly of compressions and commutators,
//! * [`index`] - Fredholm detection, kernel/cokernel counting, trace formula,
//! * [`chern`] - winding numbers and odd Chern character quadrature.
//!
//! Normalization note: annihilation operators here are
//! `q_j = 2 d/d(conj z_j) + z_j/2` (see [`landau`]), the unique scaling for
//! which the vacuum `exp(-|z|^2/4)`, the commutation relations
//! `[q_i, q_j*] = 2 delta_ij`, and the monomial basis normalizations are
//! simultaneously consistent.

pub mod bergman;
pub mod chern;
pub mod error;
pub mod index;
pub mod landau;
pub mod linalg;
pub mod multi_index;
pub mod sampling;
pub mod specfun;
pub mod symbols;
pub mod toeplitz;

pub use error::{Error, Result};
pub use multi_index::MultiIndex;
