//! The chapters of the book, compiled so that `cargo test` runs every Rust
//! listing in them.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}
#[doc = include_str!("../../../book/src/shuffle.md")]
pub mod shuffle {}
#[doc = include_str!("../../../book/src/bases.md")]
pub mod bases {}
#[doc = include_str!("../../../book/src/klr.md")]
pub mod klr {}
#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}
#[doc = include_str!("../../../book/src/reference-tables.md")]
pub mod reference_tables {}
