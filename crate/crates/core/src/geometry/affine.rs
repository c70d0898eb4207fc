use super::{theta_usize, GeometryError, ProjectiveSpace, Subspace};
use crate::bitset::BitSet;
use crate::exactmath::{gaussian_binomial, theta, ExactInt, PrimePower};
use crate::galois::FieldError;

/// AG(n,q) as the complement of the hyperplane `x_0 = 0` in PG(n,q).
///
/// With the canonical point order the points at infinity are exactly the
/// indices below `theta(n)`, so every affine line has its point at infinity
/// as its smallest point.
#[derive(Debug, Clone)]
pub struct AffineSpace {
    parent: ProjectiveSpace,
    infinity_points: usize,
    affine_lines: Vec<u32>,
    affine_line_set: BitSet,
    direction: Vec<u32>,
}

impl AffineSpace {
    pub fn new(n: usize, q: u64) -> Result<Self, GeometryError> {
        Self::with_budget(n, q, super::DEFAULT_BUDGET)
    }

    pub fn with_budget(n: usize, q: u64, budget: u64) -> Result<Self, GeometryError> {
        let parent = match ProjectiveSpace::with_budget(n, q, budget) {
            Err(GeometryError::Budget { budget, .. }) => {
                let order = PrimePower::new(q).map_err(|_| FieldError::Unsupported(q as u32))?;
                let (points, lines) = Self::counts(n, order);
                return Err(GeometryError::Budget {
                    what: format!("AG({n},{q}) with {points} points and {lines} lines"),
                    required: (gaussian_binomial(n as i64 + 1, 1, order) * gaussian_binomial(n as i64 + 1, 2, order))
                        .to_string(),
                    budget,
                });
            }
            other => other?,
        };
        let infinity_points = theta_usize(n, parent.q());
        let mut affine_lines = Vec::new();
        let mut affine_line_set = BitSet::new(parent.num_lines());
        let mut direction = vec![u32::MAX; parent.num_lines()];
        for l in 0..parent.num_lines() {
            let pts = parent.line_points(l);
            if (pts[1] as usize) >= infinity_points {
                debug_assert!((pts[0] as usize) < infinity_points);
                affine_lines.push(l as u32);
                affine_line_set.insert(l);
                direction[l] = pts[0];
            }
        }
        Ok(AffineSpace {
            parent,
            infinity_points,
            affine_lines,
            affine_line_set,
            direction,
        })
    }

    /// `(q^n, q^(n-1) theta(n))`: affine point and line counts, computed
    /// without building the space.
    pub fn counts(n: usize, q: PrimePower) -> (ExactInt, ExactInt) {
        let points = q.pow(n as u32);
        let lines = q.pow(n as u32 - 1) * theta(n as u32, q);
        (points, lines)
    }

    pub fn parent(&self) -> &ProjectiveSpace {
        &self.parent
    }

    pub fn n(&self) -> usize {
        self.parent.n()
    }

    pub fn order(&self) -> PrimePower {
        self.parent.order()
    }

    pub fn q(&self) -> usize {
        self.parent.q()
    }

    pub fn num_points(&self) -> usize {
        self.parent.num_points() - self.infinity_points
    }

    pub fn num_lines(&self) -> usize {
        self.affine_lines.len()
    }

    pub fn affine_points(&self) -> std::ops::Range<usize> {
        self.infinity_points..self.parent.num_points()
    }

    pub fn infinity_points(&self) -> std::ops::Range<usize> {
        0..self.infinity_points
    }

    pub fn is_at_infinity(&self, p: usize) -> bool {
        p < self.infinity_points
    }

    /// Parent line indices of the affine lines, ascending.
    pub fn affine_lines(&self) -> &[u32] {
        &self.affine_lines
    }

    pub fn affine_line_set(&self) -> &BitSet {
        &self.affine_line_set
    }

    pub fn is_affine_line(&self, l: usize) -> bool {
        self.affine_line_set.contains(l)
    }

    /// Point at infinity of an affine line.
    pub fn direction(&self, l: usize) -> Option<usize> {
        let d = self.direction[l];
        (d != u32::MAX).then_some(d as usize)
    }

    /// Whether a projective subspace lies entirely in the hyperplane at
    /// infinity.
    pub fn subspace_at_infinity(&self, s: &Subspace) -> bool {
        s.points().iter().all(|&p| (p as usize) < self.infinity_points)
    }

    /// Affine subspaces of dimension `d` (projective subspaces of the closure
    /// not contained in the hyperplane at infinity).
    pub fn enumerate_subspaces(&self, d: usize) -> Result<Vec<Subspace>, GeometryError> {
        Ok(self
            .parent
            .enumerate_subspaces(d)?
            .into_iter()
            .filter(|s| !self.subspace_at_infinity(s))
            .collect())
    }
}
