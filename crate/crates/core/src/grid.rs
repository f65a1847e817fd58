//! Momentum samples and uniform momentum lattices.

use serde::{Deserialize, Serialize};

use crate::error::{ErcdError, Result};

/// A momentum 3-vector together with the mass (ħ = c = 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentumSample {
    pub k: [f64; 3],
    pub m: f64,
}

impl MomentumSample {
    pub fn new(k: [f64; 3], m: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(ErcdError::NonPositiveMass(m));
        }
        if k.iter().any(|x| !x.is_finite()) {
            return Err(ErcdError::InvalidArgument(format!("non-finite momentum {k:?}")));
        }
        Ok(MomentumSample { k, m })
    }

    pub fn k_sqr(&self) -> f64 {
        self.k.iter().map(|x| x * x).sum()
    }

    /// ω(k) = √(|k|² + m²).
    pub fn omega(&self) -> f64 {
        (self.k_sqr() + self.m * self.m).sqrt()
    }

    pub fn negated(&self) -> Self {
        MomentumSample {
            k: self.k.map(|x| -x),
            m: self.m,
        }
    }
}

/// Serializable description of a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub counts: [usize; 3],
    pub dk: f64,
    pub m: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            counts: [9, 9, 9],
            dk: 0.5,
            m: 1.0,
        }
    }
}

/// Uniform axis-aligned lattice symmetric about k = 0, with quadrature weight Δk³ per node.
///
/// Nodes are stored row-major in (x, y, z).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumGrid {
    spec: GridSpec,
    nodes: Vec<MomentumSample>,
}

impl MomentumGrid {
    pub fn new(spec: GridSpec) -> Result<Self> {
        if !(spec.m > 0.0 && spec.m.is_finite()) {
            return Err(ErcdError::NonPositiveMass(spec.m));
        }
        if !(spec.dk > 0.0 && spec.dk.is_finite()) {
            return Err(ErcdError::InvalidGrid(format!("spacing must be positive, got {}", spec.dk)));
        }
        if spec.counts.iter().any(|&n| n == 0 || n % 2 == 0) {
            return Err(ErcdError::InvalidGrid(format!(
                "per-axis counts must be odd, got {:?}",
                spec.counts
            )));
        }
        let [nx, ny, nz] = spec.counts;
        let mut nodes = Vec::with_capacity(nx * ny * nz);
        for ix in 0..nx {
            for iy in 0..ny {
                for iz in 0..nz {
                    let k = [
                        axis_coord(ix, nx, spec.dk),
                        axis_coord(iy, ny, spec.dk),
                        axis_coord(iz, nz, spec.dk),
                    ];
                    nodes.push(MomentumSample { k, m: spec.m });
                }
            }
        }
        Ok(MomentumGrid { spec, nodes })
    }

    pub fn cubic(count: usize, dk: f64, m: f64) -> Result<Self> {
        Self::new(GridSpec {
            counts: [count; 3],
            dk,
            m,
        })
    }

    /// Desk-scale default: 9×9×9, Δk = 0.5, m = 1.
    pub fn desk() -> Self {
        Self::new(GridSpec::default()).expect("default grid is valid")
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn counts(&self) -> [usize; 3] {
        self.spec.counts
    }

    pub fn dk(&self) -> f64 {
        self.spec.dk
    }

    pub fn mass(&self) -> f64 {
        self.spec.m
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[MomentumSample] {
        &self.nodes
    }

    pub fn weight(&self) -> f64 {
        self.spec.dk.powi(3)
    }

    pub fn index(&self, i: [usize; 3]) -> usize {
        let [_, ny, nz] = self.spec.counts;
        (i[0] * ny + i[1]) * nz + i[2]
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let [_, ny, nz] = self.spec.counts;
        [idx / (ny * nz), (idx / nz) % ny, idx % nz]
    }

    /// Index of the node whose momentum equals `k` to within a tenth of the spacing.
    pub fn find(&self, k: [f64; 3]) -> Option<usize> {
        let mut ijk = [0usize; 3];
        for a in 0..3 {
            let n = self.spec.counts[a];
            let half = (n / 2) as f64;
            let f = k[a] / self.spec.dk + half;
            let r = f.round();
            if (f - r).abs() > 0.1 || r < 0.0 || r >= n as f64 {
                return None;
            }
            ijk[a] = r as usize;
        }
        Some(self.index(ijk))
    }

    /// True when the node lies on the outer face of the lattice.
    pub fn is_boundary(&self, idx: usize) -> bool {
        let c = self.coords(idx);
        (0..3).any(|a| self.spec.counts[a] > 1 && (c[a] == 0 || c[a] + 1 == self.spec.counts[a]))
    }

    /// Same extent, half the spacing.
    pub fn refined(&self) -> Result<Self> {
        Self::new(GridSpec {
            counts: self.spec.counts.map(|n| 2 * n - 1),
            dk: self.spec.dk / 2.0,
            m: self.spec.m,
        })
    }

    /// The eight corner momenta.
    pub fn corners(&self) -> Vec<MomentumSample> {
        let half = self.spec.counts.map(|n| (n / 2) as f64 * self.spec.dk);
        let mut out = Vec::with_capacity(8);
        for sx in [-1.0, 1.0] {
            for sy in [-1.0, 1.0] {
                for sz in [-1.0, 1.0] {
                    out.push(MomentumSample {
                        k: [sx * half[0], sy * half[1], sz * half[2]],
                        m: self.spec.m,
                    });
                }
            }
        }
        out
    }
}

fn axis_coord(i: usize, n: usize, dk: f64) -> f64 {
    (i as f64 - (n / 2) as f64) * dk
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_examples() {
        assert_eq!(MomentumSample::new([0.0; 3], 1.0).unwrap().omega(), 1.0);
        assert_eq!(MomentumSample::new([3.0, 0.0, 0.0], 4.0).unwrap().omega(), 5.0);
        assert_eq!(MomentumSample::new([1.0, 1.0, 1.0], 1.0).unwrap().omega(), 2.0);
    }

    #[test]
    fn rejects_bad_mass_and_even_counts() {
        assert!(MomentumSample::new([0.0; 3], 0.0).is_err());
        assert!(MomentumSample::new([0.0; 3], -1.0).is_err());
        assert!(MomentumGrid::cubic(8, 0.5, 1.0).is_err());
        assert!(MomentumGrid::cubic(9, 0.5, 0.0).is_err());
        assert!(MomentumGrid::cubic(9, 0.0, 1.0).is_err());
    }

    #[test]
    fn desk_grid_is_symmetric() {
        let g = MomentumGrid::desk();
        assert_eq!(g.len(), 729);
        assert_eq!(g.weight(), 0.125);
        let center = g.find([0.0; 3]).unwrap();
        assert_eq!(g.nodes()[center].k, [0.0; 3]);
        for (i, n) in g.nodes().iter().enumerate() {
            let j = g.find(n.k.map(|x| -x)).unwrap();
            assert_eq!(g.nodes()[j].k, n.k.map(|x| -x));
            assert_eq!(g.coords(i).map(|c| c as i64), {
                let c = g.coords(j);
                [8 - c[0] as i64, 8 - c[1] as i64, 8 - c[2] as i64]
            });
        }
        assert_eq!(g.corners()[7].k, [2.0, 2.0, 2.0]);
    }

    #[test]
    fn refinement_keeps_extent() {
        let g = MomentumGrid::desk().refined().unwrap();
        assert_eq!(g.counts(), [17; 3]);
        assert_eq!(g.corners()[7].k, [2.0, 2.0, 2.0]);
    }
}
