//! Exact numerical data of premodular and modular tensor categories:
//! cyclotomic arithmetic, fusion data and S-matrices, subcategories and
//! centralizers, Deligne products and prime factorization, and the modular
//! data of Drinfeld doubles of finite abelian groups.

pub mod catalog;
pub mod cyclo;
pub mod doubles;
pub mod error;
pub mod fusion;
pub mod io;
pub mod report;
pub mod structure;
pub mod subcat;
pub mod verify;

pub use error::{Error, Result};
pub use fusion::PremodularData;
