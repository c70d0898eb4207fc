//! Indexed projective and affine spaces over GF(q).
//!
//! Points of PG(n,q) are coordinate vectors of length `n+1` normalised so
//! that the first nonzero entry is 1, numbered in lexicographic order of
//! their field-label vectors. Lines are numbered lexicographically by their
//! sorted point-index sets. This numbering is [`ORDERING_VERSION`] 1; line
//! class files are only meaningful against the same version.

mod affine;
mod spread;
mod subspace;

pub use affine::AffineSpace;
pub use spread::{
    all_spreads_pg32, apply_collineation, enumerate_line_spreads, parallel_class, random_collineation,
    regular_spread_pg3, spread_images, LineSpread,
};
pub use subspace::{enumerate_rref, rref, Subspace};

use crate::bitset::BitSet;
use crate::exactmath::{gaussian_binomial, small, PrimePower};
use crate::galois::{Elem, FieldError, FieldTable};
use thiserror::Error;

pub const ORDERING_VERSION: u32 = 1;

/// Default cap on materialised point-line incidence bits.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("size budget exceeded: {what} needs {required} incidence bits, budget is {budget}")]
    Budget {
        what: String,
        required: String,
        budget: u64,
    },
    #[error("domain error: {0}")]
    Domain(String),
}

fn check_budget(what: impl FnOnce() -> String, required: &num_bigint::BigInt, budget: u64) -> Result<(), GeometryError> {
    if *required > num_bigint::BigInt::from(budget) {
        return Err(GeometryError::Budget {
            what: what(),
            required: required.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Number of points of PG(a-1, q) as a machine integer.
pub(crate) fn theta_usize(a: usize, q: usize) -> usize {
    (0..a).fold(0, |acc, _| acc * q + 1)
}

/// PG(n,q) with full point-line incidence.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    n: usize,
    field: FieldTable,
    budget: u64,
    coords: Vec<Elem>,
    line_points: Vec<u32>,
    pair_line: Vec<u32>,
    point_lines: Vec<BitSet>,
    line_point_sets: Vec<BitSet>,
}

impl ProjectiveSpace {
    pub fn new(n: usize, q: u64) -> Result<Self, GeometryError> {
        Self::with_budget(n, q, DEFAULT_BUDGET)
    }

    pub fn with_budget(n: usize, q: u64, budget: u64) -> Result<Self, GeometryError> {
        if n < 2 {
            return Err(GeometryError::Domain(format!("PG({n},q) needs n >= 2")));
        }
        let order = PrimePower::new(q).map_err(|_| FieldError::Unsupported(q as u32))?;
        let field = FieldTable::new(order)?;
        let points = gaussian_binomial(n as i64 + 1, 1, order);
        let lines = gaussian_binomial(n as i64 + 1, 2, order);
        check_budget(|| format!("PG({n},{q}) with {points} points and {lines} lines"), &(&points * &lines), budget)?;
        let v = small(&points).unwrap() as usize;
        let b = small(&lines).unwrap() as usize;
        let qs = field.q();
        let width = n + 1;

        let mut coords = Vec::with_capacity(v * width);
        for pivot in (0..=n).rev() {
            let tail = n - pivot;
            let count = qs.pow(tail as u32);
            for t in 0..count {
                let mut vec = vec![0 as Elem; width];
                vec[pivot] = 1;
                let mut rest = t;
                for c in (pivot + 1..width).rev() {
                    vec[c] = (rest % qs) as Elem;
                    rest /= qs;
                }
                coords.extend_from_slice(&vec);
            }
        }
        debug_assert_eq!(coords.len(), v * width);

        let mut space = ProjectiveSpace {
            n,
            field,
            budget,
            coords,
            line_points: Vec::with_capacity(b * (qs + 1)),
            pair_line: vec![u32::MAX; v * v],
            point_lines: Vec::new(),
            line_point_sets: Vec::new(),
        };

        let mut buf = vec![0 as Elem; width];
        let mut line = Vec::with_capacity(qs + 1);
        let mut next = 0u32;
        for a in 0..v {
            for c in a + 1..v {
                if space.pair_line[a * v + c] != u32::MAX {
                    continue;
                }
                line.clear();
                line.push(a as u32);
                for mu in space.field.elements() {
                    for (k, slot) in buf.iter_mut().enumerate() {
                        *slot = space.field.add(space.coords[c * width + k], space.field.mul(mu, space.coords[a * width + k]));
                    }
                    line.push(space.point_index(&buf).expect("nonzero") as u32);
                }
                line.sort_unstable();
                debug_assert_eq!(line[0] as usize, a);
                for (i, &x) in line.iter().enumerate() {
                    for &y in &line[i + 1..] {
                        space.pair_line[x as usize * v + y as usize] = next;
                        space.pair_line[y as usize * v + x as usize] = next;
                    }
                }
                space.line_points.extend_from_slice(&line);
                next += 1;
            }
        }
        assert_eq!(next as usize, b, "line count mismatch");

        space.point_lines = vec![BitSet::new(b); v];
        space.line_point_sets = Vec::with_capacity(b);
        for l in 0..b {
            let pts = &space.line_points[l * (qs + 1)..(l + 1) * (qs + 1)];
            for &p in pts {
                space.point_lines[p as usize].insert(l);
            }
            space.line_point_sets.push(BitSet::from_indices(v, pts.iter().map(|&p| p as usize)));
        }
        Ok(space)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> PrimePower {
        self.field.order()
    }

    pub fn q(&self) -> usize {
        self.field.q()
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn num_points(&self) -> usize {
        self.coords.len() / (self.n + 1)
    }

    pub fn num_lines(&self) -> usize {
        self.line_point_sets.len()
    }

    pub fn point_coords(&self, p: usize) -> &[Elem] {
        let w = self.n + 1;
        &self.coords[p * w..(p + 1) * w]
    }

    /// Index of the projective point spanned by `v`, or `None` for the zero
    /// vector.
    pub fn point_index(&self, v: &[Elem]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.n + 1);
        let pivot = v.iter().position(|&c| c != 0)?;
        let scale = self.field.inv(v[pivot]);
        let qs = self.q();
        let mut tail = 0usize;
        for &c in &v[pivot + 1..] {
            tail = tail * qs + self.field.mul(c, scale) as usize;
        }
        Some(theta_usize(self.n - pivot, qs) + tail)
    }

    pub fn line_points(&self, l: usize) -> &[u32] {
        let k = self.q() + 1;
        &self.line_points[l * k..(l + 1) * k]
    }

    /// The line joining two distinct points.
    #[inline]
    pub fn line_through(&self, a: usize, b: usize) -> usize {
        assert!(a != b, "a line needs two distinct points");
        self.pair_line[a * self.num_points() + b] as usize
    }

    pub fn lines_through_point(&self, p: usize) -> &BitSet {
        &self.point_lines[p]
    }

    pub fn line_point_set(&self, l: usize) -> &BitSet {
        &self.line_point_sets[l]
    }

    /// Lines meeting at least one of the given points.
    pub fn lines_meeting(&self, points: impl IntoIterator<Item = usize>) -> BitSet {
        let mut acc = BitSet::new(self.num_lines());
        for p in points {
            acc.union_with(&self.point_lines[p]);
        }
        acc
    }

    pub fn lines_meet(&self, a: usize, b: usize) -> bool {
        !self.line_point_sets[a].is_disjoint(&self.line_point_sets[b])
    }

    pub(crate) fn subspace_budget(&self, count: &num_bigint::BigInt, pts: usize, what: impl FnOnce() -> String) -> Result<(), GeometryError> {
        check_budget(what, &(count * pts), self.budget)
    }
}
