//! Good Lyndon words, the quantum shuffle algebra and explicit modules over
//! KLR algebras in finite type.
//!
//! Everything is exact: coefficients are Laurent polynomials over the
//! rationals. The modules build on one another in the order listed below.
//! [`golden`] holds the reference tables used to check the computed ones.
//!
//! ```
//! use std::sync::Arc;
//! use lyndon_klr::bases::Bases;
//! use lyndon_klr::cartan::{CartanDatum, Series};
//! use lyndon_klr::lyndon::LyndonTable;
//! use lyndon_klr::shuffle::Order;
//!
//! let g2 = Arc::new(CartanDatum::new(Series::G, 2)?);
//! let bases = Bases::new(Arc::new(LyndonTable::build(&g2, Order::Right)));
//! let e = bases.dual_pbw_lyndon(&"001".parse()?)?;
//! assert_eq!(e.to_string(), "(q + q^-1)*[001]");
//! # Ok::<(), lyndon_klr::error::AlgebraError>(())
//! ```

pub mod cartan;
pub mod error;
pub mod qlaurent;
pub mod shuffle;
pub mod lyndon;
pub mod bases;
pub mod klr_core;
pub mod klr_modules;
pub mod golden;
