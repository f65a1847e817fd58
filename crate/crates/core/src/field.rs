//! Spinor fields sampled on a momentum lattice.
//!
//! A field is stored as two branches per node. The positive-frequency branch
//! holds the coefficient of e^{+ik·x} (time dependence e^{−iωt} for
//! solutions), the negative-frequency branch the coefficient of e^{−ik·x}
//! (time dependence e^{+iωt}). Complex conjugation in position space maps one
//! branch onto the other at the same node.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ErcdError, Result};
use crate::grid::{GridSpec, MomentumGrid, MomentumSample};
use crate::linalg::{CMat4, CVec4};
use crate::rlinear::RLinOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// e^{−ikx}: spatial factor e^{+ik·x}.
    Positive,
    /// e^{+ikx}: spatial factor e^{−ik·x}.
    Negative,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Positive, Branch::Negative];

    /// Sign of the spatial wave vector carried by this branch.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Positive => 1.0,
            Branch::Negative => -1.0,
        }
    }

    /// The momentum physically carried by a node of this branch.
    pub fn momentum(self, s: &MomentumSample) -> MomentumSample {
        match self {
            Branch::Positive => *s,
            Branch::Negative => s.negated(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinorFieldK {
    grid: Arc<MomentumGrid>,
    pub t: f64,
    pub positive: Vec<CVec4>,
    pub negative: Vec<CVec4>,
}

impl SpinorFieldK {
    pub fn zeros(grid: Arc<MomentumGrid>) -> Self {
        let n = grid.len();
        SpinorFieldK {
            grid,
            t: 0.0,
            positive: vec![CVec4::zero(); n],
            negative: vec![CVec4::zero(); n],
        }
    }

    pub fn from_branches(
        grid: Arc<MomentumGrid>,
        t: f64,
        positive: Vec<CVec4>,
        negative: Vec<CVec4>,
    ) -> Result<Self> {
        if positive.len() != grid.len() || negative.len() != grid.len() {
            return Err(ErcdError::GridMismatch);
        }
        Ok(SpinorFieldK {
            grid,
            t,
            positive,
            negative,
        })
    }

    /// Build both branches node by node.
    pub fn from_fn(
        grid: Arc<MomentumGrid>,
        t: f64,
        mut f: impl FnMut(&MomentumSample) -> (CVec4, CVec4),
    ) -> Self {
        let (positive, negative) = grid.nodes().iter().map(&mut f).unzip();
        SpinorFieldK {
            grid,
            t,
            positive,
            negative,
        }
    }

    pub fn grid(&self) -> &Arc<MomentumGrid> {
        &self.grid
    }

    pub fn branch(&self, b: Branch) -> &[CVec4] {
        match b {
            Branch::Positive => &self.positive,
            Branch::Negative => &self.negative,
        }
    }

    pub fn branch_mut(&mut self, b: Branch) -> &mut Vec<CVec4> {
        match b {
            Branch::Positive => &mut self.positive,
            Branch::Negative => &mut self.negative,
        }
    }

    pub fn same_grid(&self, other: &SpinorFieldK) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    /// Per-node, per-branch matrix action.
    pub fn map_matrix(&self, mut m: impl FnMut(&MomentumSample, Branch) -> CMat4) -> Self {
        let nodes = self.grid.nodes();
        let positive = nodes
            .iter()
            .zip(&self.positive)
            .map(|(s, v)| m(s, Branch::Positive).mul_vec(v))
            .collect();
        let negative = nodes
            .iter()
            .zip(&self.negative)
            .map(|(s, v)| m(s, Branch::Negative).mul_vec(v))
            .collect();
        SpinorFieldK {
            grid: self.grid.clone(),
            t: self.t,
            positive,
            negative,
        }
    }

    /// Action of a constant R-linear operator on the position-space field.
    ///
    /// The linear part acts within each branch; the antilinear part conjugates
    /// and swaps branches.
    pub fn apply_rlin(&self, op: &RLinOp) -> Self {
        let swap = |own: &[CVec4], other: &[CVec4]| -> Vec<CVec4> {
            own.iter()
                .zip(other)
                .map(|(u, w)| op.linear.mul_vec(u) + op.antilinear.mul_vec(&w.conj()))
                .collect()
        };
        SpinorFieldK {
            grid: self.grid.clone(),
            t: self.t,
            positive: swap(&self.positive, &self.negative),
            negative: swap(&self.negative, &self.positive),
        }
    }

    /// Multiply node values by a scalar depending on node and branch.
    pub fn map_scalar(&self, mut f: impl FnMut(&MomentumSample, Branch) -> Complex64) -> Self {
        let nodes = self.grid.nodes();
        let positive = nodes
            .iter()
            .zip(&self.positive)
            .map(|(s, v)| v.scale(f(s, Branch::Positive)))
            .collect();
        let negative = nodes
            .iter()
            .zip(&self.negative)
            .map(|(s, v)| v.scale(f(s, Branch::Negative)))
            .collect();
        SpinorFieldK {
            grid: self.grid.clone(),
            t: self.t,
            positive,
            negative,
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        self.map_scalar(|_, _| z)
    }

    pub fn add(&self, other: &SpinorFieldK) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SpinorFieldK) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &SpinorFieldK, f: impl Fn(CVec4, CVec4) -> CVec4) -> Self {
        debug_assert!(self.same_grid(other));
        let zip = |a: &[CVec4], b: &[CVec4]| a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect();
        SpinorFieldK {
            grid: self.grid.clone(),
            t: self.t,
            positive: zip(&self.positive, &other.positive),
            negative: zip(&self.negative, &other.negative),
        }
    }

    /// Quadrature L² norm squared: Δk³ Σ (|positive|² + |negative|²).
    pub fn norm_sqr(&self) -> f64 {
        let s: f64 = self
            .positive
            .iter()
            .chain(&self.negative)
            .map(CVec4::norm_sqr)
            .sum();
        s * self.grid.weight()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.positive
            .iter()
            .chain(&self.negative)
            .map(CVec4::max_abs)
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &SpinorFieldK) -> f64 {
        self.sub(other).max_abs()
    }

    /// Largest entry magnitude over boundary nodes of either branch.
    pub fn boundary_max_abs(&self) -> f64 {
        (0..self.grid.len())
            .filter(|&i| self.grid.is_boundary(i))
            .map(|i| self.positive[i].max_abs().max(self.negative[i].max_abs()))
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.positive.iter().chain(&self.negative).all(CVec4::is_finite)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&FieldDoc::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: FieldDoc = serde_json::from_str(s)?;
        doc.into_field()
    }
}

#[derive(Serialize, Deserialize)]
struct FieldNodeDoc {
    k: [f64; 3],
    positive: [[f64; 2]; 4],
    negative: [[f64; 2]; 4],
}

#[derive(Serialize, Deserialize)]
struct FieldDoc {
    grid: GridSpec,
    t: f64,
    nodes: Vec<FieldNodeDoc>,
}

pub(crate) fn pairs(v: &CVec4) -> [[f64; 2]; 4] {
    v.0.map(|z| [z.re, z.im])
}

pub(crate) fn from_pairs(p: &[[f64; 2]; 4]) -> CVec4 {
    CVec4(p.map(|[re, im]| Complex64::new(re, im)))
}

impl From<&SpinorFieldK> for FieldDoc {
    fn from(f: &SpinorFieldK) -> Self {
        FieldDoc {
            grid: f.grid.spec(),
            t: f.t,
            nodes: f
                .grid
                .nodes()
                .iter()
                .zip(f.positive.iter().zip(&f.negative))
                .map(|(s, (p, n))| FieldNodeDoc {
                    k: s.k,
                    positive: pairs(p),
                    negative: pairs(n),
                })
                .collect(),
        }
    }
}

impl FieldDoc {
    fn into_field(self) -> Result<SpinorFieldK> {
        let grid = Arc::new(MomentumGrid::new(self.grid)?);
        if self.nodes.len() != grid.len() {
            return Err(ErcdError::GridMismatch);
        }
        for (n, s) in self.nodes.iter().zip(grid.nodes()) {
            if n.k != s.k {
                return Err(ErcdError::GridMismatch);
            }
        }
        let (positive, negative) = self
            .nodes
            .iter()
            .map(|n| (from_pairs(&n.positive), from_pairs(&n.negative)))
            .unzip();
        SpinorFieldK::from_branches(grid, self.t, positive, negative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, I};

    fn small() -> Arc<MomentumGrid> {
        Arc::new(MomentumGrid::cubic(3, 0.5, 1.0).unwrap())
    }

    #[test]
    fn conjugation_swaps_branches() {
        let g = small();
        let mut f = SpinorFieldK::zeros(g);
        f.positive[4] = CVec4::ort(1).scale(I);
        let out = f.apply_rlin(&RLinOp::conjugation());
        assert_eq!(out.positive[4], CVec4::zero());
        assert_eq!(out.negative[4], CVec4::ort(1).scale(-I));
        let back = out.apply_rlin(&RLinOp::conjugation());
        assert_eq!(back, f);
    }

    #[test]
    fn norm_uses_quadrature_weight() {
        let g = small();
        let mut f = SpinorFieldK::zeros(g);
        f.positive[0] = CVec4::ort(2);
        f.negative[3] = CVec4::ort(4).scale(c(0.0, 2.0));
        assert!((f.norm_sqr() - 5.0 * 0.125).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let g = small();
        let f = SpinorFieldK::from_fn(g, 0.3, |s| {
            (
                CVec4::ort(1).scale(c(s.k[0] / 3.0, 0.1)),
                CVec4::ort(3).scale(c(1.0 / 7.0, s.k[2])),
            )
        });
        let back = SpinorFieldK::from_json(&f.to_json().unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
