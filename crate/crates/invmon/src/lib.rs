//! Tools for finitely presented special inverse monoids: Munn trees,
//! Stephen's procedure with certificates, finite permutation groups, the
//! units and maximal-subgroup constructions, and a lazily evaluated witness
//! graph for refuting readability.
//!
//! The guide in `book/` walks through each module; its snippets run as
//! doc-tests.

pub mod constructions;
pub mod experiments;
pub mod graph;
pub mod groups;
pub mod munn;
pub mod presentation;
pub mod stephen;
pub mod witness;
pub mod words;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/munn.md")]
    mod munn {}
    #[doc = include_str!("../../../book/src/stephen.md")]
    mod stephen {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/witness.md")]
    mod witness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
