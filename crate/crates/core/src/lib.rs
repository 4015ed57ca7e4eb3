//! Graded modules over quiver Hecke algebras with exact coefficients: simple
//! modules by crystal operators, global-basis checks, and parameter
//! specialization. The [`guide`] module holds the book chapters.

pub mod algebra;
pub mod cartan;
pub mod character;
pub mod convolve;
pub mod degeneracy;
pub mod expr;
pub mod grothendieck;
pub mod module;
pub mod params;
pub mod perm;
pub mod radical;
pub mod serial;
pub mod simples;

/// The book chapters, compiled here so their examples run as doc-tests.
pub mod guide {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/data.md")]
    pub mod data {}
    #[doc = include_str!("../../../book/src/modules.md")]
    pub mod modules {}
    #[doc = include_str!("../../../book/src/simples.md")]
    pub mod simples {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/degeneracy.md")]
    pub mod degeneracy {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
