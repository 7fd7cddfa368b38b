#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod field;
pub mod algebra;
pub mod linalg;
pub mod polyring;
pub mod complexes;
pub mod hypersurface;
pub mod hochschild;
pub mod tate;
pub mod mfactor;
