//! Exact classification toolkit for quadratic forms and Azumaya algebras over
//! Laurent polynomial rings R_n = k[t_1^{±1},…,t_n^{±1}].
//!
//! Everything here is exact, symbolic computation — no floating point.
//! The toolkit has two halves:
//!
//! * [`quadform`] — canonical "loop" normal forms ⊕_I ⟨t_I⟩ q_I for diagonal
//!   quadratic forms with monomial-unit coefficients, Springer and Witt
//!   decomposition over the iterated Laurent series field
//!   F_n = k((t_1))…((t_n)), isometry decision over R_n, and second-residue
//!   (ramification) checks at the coordinate valuations.  Supported base
//!   fields k: odd finite fields, the rationals, and a real-closed field with
//!   rational coefficients (see [`basefield`]).
//!
//! * [`azumaya`] — the calculus of monomial Brauer classes: skew-symmetric
//!   matrices over ℚ/ℤ attached to tensor products of symbol algebras
//!   A(t_i,t_j)^s_r, their alternating normal form under the unimodular group
//!   GL_n(ℤ) acting by congruence g·B·gᵀ, the index/division test,
//!   enumeration of toral descriptors of a given degree, and certified orbit
//!   equivalence with explicit witnesses.
//!
//! ```
//! use multiloop::basefield::FieldDescriptor;
//! use multiloop::quadform::{is_isometric_r, RDiagonalForm};
//!
//! let r = FieldDescriptor::RealClosed;
//! let a = RDiagonalForm::parse(r, 1, &["t1", "-t1"]).unwrap();
//! let b = RDiagonalForm::parse(r, 1, &["1", "-1"]).unwrap();
//! // ⟨t1, −t1⟩ is a hyperbolic plane, like ⟨1, −1⟩
//! assert!(is_isometric_r(&a, &b).unwrap());
//! assert_eq!(a.loop_normal_form().unwrap().hyperbolic_count(), 1);
//!
//! use multiloop::azumaya::{index_and_split, BrauerMatrix, SymbolFactor};
//!
//! // the quaternion symbol on (t1, t2) is a division algebra of degree 2
//! let q = BrauerMatrix::from_symbols(2, &[SymbolFactor { s: 2, r: 1, i: 1, j: 2 }]).unwrap();
//! assert_eq!(index_and_split(&q, 2).unwrap(), (2, 1));
//! ```

pub mod azumaya;
pub mod basefield;
mod error;
pub mod laurent;
pub mod quadform;
mod serialize;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
