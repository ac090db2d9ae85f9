//! Stable ribbon graph complexes and the partition-function cochains built
//! from a Z/2-graded algebra with an odd invariant scalar product, an odd
//! derivation and its homotopy inverse.
//!
//! Modules, bottom up: [`scalars`] (exact arithmetic), [`graded`]
//! (algebras), [`oddop`] (odd operators), [`graphs`] (ribbon graphs and the
//! differential), [`weights`] (vertex tensors, propagators, cochains) and
//! [`psi`] (the odd matrix algebra and intersection numbers).

pub mod graded;
pub mod graphs;
pub mod oddop;
pub mod psi;
pub mod scalars;
pub mod weights;
