use crate::lattice::{Move, Point};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("illegal move {0}")]
    IllegalMove(Move),
    #[error("illegal move at index {index}: {mv}")]
    IllegalMoveAt { index: usize, mv: Move },
    #[error("bad triangle size {0}")]
    BadSize(i64),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a filling: {0}")]
    NotAFilling(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("not in the same orbit")]
    NotSameOrbit,
    #[error("vertex cap exceeded after {partial} vertices")]
    CapExceeded { partial: usize },
    #[error("not a TEP family: positions {positions:?} with partial pattern {partial:?} have {extensions} extensions")]
    NotTep {
        positions: (usize, usize),
        partial: (u32, u32),
        extensions: usize,
    },
    #[error("not a basis of T_{n}: {detail}")]
    NotABasis { n: i64, detail: String },
    #[error("patterns do not fill the same triangle")]
    NotSameTriangle,
    #[error("point {0} outside the assignment domain")]
    OutsideDomain(Point),
    #[error("internal error: {0}")]
    Internal(String),
}
