//! Compiles the guide in `book/src` as doc-tests, so every snippet in it is
//! run by `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/walk.md")]
pub mod walk {}
#[doc = include_str!("../../../book/src/spectral.md")]
pub mod spectral {}
#[doc = include_str!("../../../book/src/limiting.md")]
pub mod limiting {}
#[doc = include_str!("../../../book/src/mixing.md")]
pub mod mixing {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
