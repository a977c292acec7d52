//! Exact computer algebra for Lie-Yamaguti and Lie-Jordan-Yamaguti algebras
//! and discovery of their multilinear polynomial identities.

pub mod exactfield;
pub mod freeops;
pub mod idfinder;
pub mod algebras;
pub mod par;
