//! Exact computations in modular group algebras FG of finite abelian 2-groups
//! over GF(2^k), centered on the unitary subgroups V_*(FG) attached to the
//! involutions that arise from group automorphisms of order at most two.
//!
//! The crate provides:
//! - bit-exact GF(2^k) arithmetic for k <= 8 ([`field`]);
//! - abelian 2-groups as products of cyclic factors, with torsion and power
//!   subgroups ([`group`]);
//! - enumeration of involutive automorphisms and their linear extension to
//!   FG ([`involution`]);
//! - the group algebra itself: convolution, units, ideals I(H) and the
//!   natural map onto F(G/H) ([`algebra`]);
//! - exhaustive and homomorphism-image computations of unitary subgroups,
//!   with structure analysis ([`unitary`]);
//! - closed-form order predictors kept independent of the enumeration code
//!   ([`formulas`]);
//! - named verification suites producing machine-readable reports
//!   ([`checks`]).

pub mod algebra;
pub mod checks;
pub mod field;
pub mod formulas;
pub mod group;
pub mod involution;
pub mod unitary;
