//! Exact rank computation for rational elliptic surfaces
//! `Y^2 = A(X) T^2 + B(X) T + C(X)` over Q(T), with explicit point
//! construction and an independent character-sum check.

pub mod error;
pub mod exactalg;
pub mod expr;
pub mod factor;
pub mod numberfield;
pub mod families;
pub mod mordell;
pub mod nagao;
pub mod rankformula;

pub use error::{Error, Result};
