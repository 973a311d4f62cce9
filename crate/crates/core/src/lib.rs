// SPDX-License-Identifier: Apache-2.0

//! Exact enumeration toolkit for the Buekenhout–Metz and Buekenhout–Tits
//! quasi-Hermitian varieties of PG(3,q²) and their Barlotti–Cofman models in
//! PG(6,q).

#![allow(clippy::needless_range_loop)]

pub mod ff;
pub mod linalg;
pub mod pg;
pub mod varieties;
pub mod bc;
pub mod hypersurfaces;
pub mod verify;
pub mod cli;
