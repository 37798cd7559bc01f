//! The chapters of the guide in `book/src`, included so that `cargo test`
//! runs their code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/states-and-moves.md")]
pub mod states_and_moves {}

#[doc = include_str!("../../../book/src/curvature.md")]
pub mod curvature {}

#[doc = include_str!("../../../book/src/searching.md")]
pub mod searching {}

#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}

#[doc = include_str!("../../../book/src/planar.md")]
pub mod planar {}

#[doc = include_str!("../../../book/src/random.md")]
pub mod random {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
