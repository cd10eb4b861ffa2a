//! Unit groups of the group algebras `F_{3^n} T_{3m}`, where
//! `T_{3m} = <x, y | x^m = y^3 = 1, y^-1 x y = x^t>`.
//!
//! The crate computes the Jacobson radical, the decomposition of the augmentation
//! ideal, the Wedderburn components of the semisimple part and the resulting unit
//! group, and cross-checks every structural claim with independent computations
//! (explicit induced representations, linear-algebra kernels and Monte-Carlo
//! sampling).

pub mod arith;
pub mod field;
pub mod poly;
pub mod group;
pub mod group_ring;
pub mod linalg;
pub mod radical;
pub mod decomposition;
pub mod units;
pub mod oracle;
pub mod verify;
