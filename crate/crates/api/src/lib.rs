//! Request and response bodies. Core types travel in their own encodings:
//! patterns as `{"cells": [[x, y], ...]}`, moves, normal forms and move
//! sequences as their serde forms.

use serde::{Deserialize, Serialize};

use tsol_core::filling::{fill, TriangleDecomposition};
use tsol_core::tep::{complete, is_basis, is_valid, Assignment, Rule, Symbol, TepFamily};
use tsol_core::{Move, Pattern, Point, Result, Triangle};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FillPart {
    pub v: Point,
    pub n: i64,
    pub excess: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FillResponse {
    pub filling: Pattern,
    pub parts: Vec<FillPart>,
    pub excess: usize,
}

impl FillResponse {
    pub fn of(p: &Pattern) -> Self {
        let d = TriangleDecomposition::of(p);
        FillResponse {
            filling: fill(p),
            excess: d.excess_per_part.iter().sum(),
            parts: d
                .parts
                .iter()
                .zip(&d.excess_per_part)
                .map(|(t, &excess)| FillPart { v: t.anchor, n: t.size, excess })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApplyRequest {
    pub pattern: Pattern,
    #[serde(rename = "move")]
    pub mv: Move,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApplyResponse {
    pub pattern: Pattern,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathRequest {
    pub from: Pattern,
    pub to: Pattern,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitCountRequest {
    pub pattern: Pattern,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitCountResponse {
    pub count: usize,
    pub cap: usize,
}

/// Cell values as `[x, y, symbol]` triples.
pub type Cells = Vec<(i64, i64, Symbol)>;

pub fn cells_of(a: &Assignment) -> Cells {
    a.iter().map(|(c, &s)| (c.x, c.y, s)).collect()
}

pub fn assignment_of(cells: &Cells) -> Assignment {
    cells.iter().map(|&(x, y, s)| (Point::new(x, y), s)).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TepCompleteRequest {
    pub rule: String,
    pub n: i64,
    pub assignment: Cells,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TepCompleteResponse {
    pub assignment: Cells,
    /// The completion covers all of `T_n`.
    pub complete: bool,
    pub valid: bool,
    pub basis: bool,
}

impl TepCompleteResponse {
    pub fn of(fam: &TepFamily, input: &Assignment, n: i64) -> Result<Self> {
        let out = complete(fam, input, n)?;
        let full = out.len() == Triangle::new(Point::ORIGIN, n)?.cell_count();
        let domain: Pattern = input.keys().copied().collect();
        Ok(TepCompleteResponse {
            assignment: cells_of(&out),
            complete: full,
            valid: full && is_valid(fam, &out, n)?,
            basis: is_basis(&domain, n),
        })
    }
}

impl TepCompleteRequest {
    pub fn family(&self) -> Result<TepFamily> {
        self.rule.parse::<Rule>()?.family()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Preset {
    pub name: String,
    /// One pattern, or several to cycle through.
    pub patterns: Vec<Pattern>,
    /// Cells to tint as excess.
    pub excess: Pattern,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionList {
    pub names: Vec<String>,
}
