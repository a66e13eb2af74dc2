//! Expression grammar and the map-file format.
//!
//! Expressions use the variables `X0..X99`, integer and `p/q` literals, the
//! operators `+ - * ^` (with a non-negative integer literal exponent) and
//! parentheses. Multiplication is always explicit and `#` starts a comment.

mod expr;
mod lexer;
mod mapfile;

pub use expr::parse_polynomial;
pub use mapfile::{render_affine, render_map, MapFile};
