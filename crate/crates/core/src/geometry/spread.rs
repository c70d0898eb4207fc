use super::{rref, AffineSpace, GeometryError, ProjectiveSpace};
use crate::bitset::BitSet;
use crate::galois::{Elem, QuadraticExtension};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A set of lines partitioning a point set (all points of a projective
/// space, or the affine points of an affine space). Line indices are parent
/// projective indices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineSpread {
    lines: Vec<u32>,
}

impl LineSpread {
    pub fn new(mut lines: Vec<u32>) -> Self {
        lines.sort_unstable();
        LineSpread { lines }
    }

    pub fn lines(&self) -> &[u32] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn line_set(&self, space: &ProjectiveSpace) -> BitSet {
        BitSet::from_indices(space.num_lines(), self.lines.iter().map(|&l| l as usize))
    }

    /// Whether the lines are pairwise disjoint and cover exactly `points`.
    /// Points outside `points` (e.g. at infinity) are ignored.
    pub fn partitions(&self, space: &ProjectiveSpace, points: &BitSet) -> bool {
        let mut covered = BitSet::new(space.num_points());
        for &l in &self.lines {
            for &p in space.line_points(l as usize) {
                let p = p as usize;
                if !points.contains(p) {
                    continue;
                }
                if !covered.insert(p) {
                    return false;
                }
            }
        }
        covered == *points
    }

    pub fn is_spread_of(&self, space: &ProjectiveSpace) -> bool {
        self.partitions(space, &BitSet::full(space.num_points()))
    }

    pub fn is_affine_spread_of(&self, affine: &AffineSpace) -> bool {
        self.lines.iter().all(|&l| affine.is_affine_line(l as usize))
            && self.partitions(
                affine.parent(),
                &BitSet::from_indices(affine.parent().num_points(), affine.affine_points()),
            )
    }
}

fn require_pg3(space: &ProjectiveSpace) -> Result<(), GeometryError> {
    if space.n() != 3 {
        return Err(GeometryError::Domain(format!("expected PG(3,q), got PG({},q)", space.n())));
    }
    Ok(())
}

/// The regular (Desarguesian) spread of PG(3,q): the points of PG(1,q^2)
/// read as lines through the identification GF(q^2)^2 = GF(q)^4. When
/// GF(q^2) is beyond the field tables the same spread (up to collineation)
/// comes from [`spread_set_pg3`].
pub fn regular_spread_pg3(space: &ProjectiveSpace) -> Result<LineSpread, GeometryError> {
    require_pg3(space)?;
    let Ok(qe) = QuadraticExtension::new(space.order()) else {
        return Ok(spread_set_pg3(space));
    };
    let w = qe.omega();
    let ext = &qe.ext;
    let flatten = |a: Elem, b: Elem| -> Vec<Elem> {
        let (a0, a1) = qe.to_pair(a);
        let (b0, b1) = qe.to_pair(b);
        vec![a0, a1, b0, b1]
    };
    let line_of = |a: Elem, b: Elem| -> usize {
        let p = space.point_index(&flatten(a, b)).unwrap();
        let r = space.point_index(&flatten(ext.mul(a, w), ext.mul(b, w))).unwrap();
        space.line_through(p, r)
    };
    let mut lines = vec![line_of(0, 1) as u32];
    for z in ext.elements() {
        lines.push(line_of(1, z) as u32);
    }
    Ok(LineSpread::new(lines))
}

/// Regular spread of PG(3,q) from the spread set `{aI + bC}`, with `C` the
/// companion matrix of an irreducible `x^2 - tx - s`: the line
/// `x0 = x1 = 0` and the row spaces of `[I | aI + bC]`. Needs only GF(q).
fn spread_set_pg3(space: &ProjectiveSpace) -> LineSpread {
    let f = space.field();
    let (t, s) = irreducible_quadratic(f.q(), |a, b| f.mul(a, b), |a, b| f.add(a, b));
    let line_of = |u: [Elem; 4], v: [Elem; 4]| -> u32 {
        let p = space.point_index(&u).expect("normalised point");
        let r = space.point_index(&v).expect("normalised point");
        space.line_through(p, r) as u32
    };
    let mut lines = vec![line_of([0, 0, 1, 0], [0, 0, 0, 1])];
    for a in f.elements() {
        for b in f.elements() {
            lines.push(line_of([1, 0, a, b], [0, 1, f.mul(b, s), f.add(a, f.mul(b, t))]));
        }
    }
    LineSpread::new(lines)
}

/// Smallest `(t, s)` for which `x^2 = tx + s` has no solution in the field.
fn irreducible_quadratic(q: usize, mul: impl Fn(Elem, Elem) -> Elem, add: impl Fn(Elem, Elem) -> Elem) -> (Elem, Elem) {
    let els = || (0..q).map(|a| a as Elem);
    els()
        .flat_map(|t| els().map(move |s| (t, s)))
        .find(|&(t, s)| els().all(|x| mul(x, x) != add(mul(t, x), s)))
        .expect("every finite field has an irreducible quadratic")
}

/// Image of a point under `v -> v M`.
fn map_point(space: &ProjectiveSpace, matrix: &[Vec<Elem>], p: usize) -> usize {
    let f = space.field();
    let v = space.point_coords(p);
    let w = space.n() + 1;
    let img: Vec<Elem> = (0..w)
        .map(|c| v.iter().zip(matrix).fold(0, |acc, (&x, row)| f.add(acc, f.mul(x, row[c]))))
        .collect();
    space.point_index(&img).expect("matrix must be invertible")
}

/// Image of a spread under the collineation induced by an invertible matrix.
pub fn apply_collineation(space: &ProjectiveSpace, spread: &LineSpread, matrix: &[Vec<Elem>]) -> LineSpread {
    LineSpread::new(
        spread
            .lines
            .iter()
            .map(|&l| {
                let pts = space.line_points(l as usize);
                let a = map_point(space, matrix, pts[0] as usize);
                let b = map_point(space, matrix, pts[1] as usize);
                space.line_through(a, b) as u32
            })
            .collect(),
    )
}

/// Uniformly random invertible `(n+1) x (n+1)` matrix over GF(q).
pub fn random_collineation(space: &ProjectiveSpace, rng: &mut impl Rng) -> Vec<Vec<Elem>> {
    let w = space.n() + 1;
    let q = space.q();
    loop {
        let m: Vec<Vec<Elem>> = (0..w)
            .map(|_| (0..w).map(|_| rng.gen_range(0..q) as Elem).collect())
            .collect();
        if rref(space.field(), m.clone()).len() == w {
            return m;
        }
    }
}

/// `count` collineation images of `spread`, deterministic in `seed`.
pub fn spread_images(space: &ProjectiveSpace, spread: &LineSpread, count: usize, seed: u64) -> Vec<LineSpread> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = random_collineation(space, &mut rng);
            apply_collineation(space, spread, &m)
        })
        .collect()
}

/// Every line spread of a projective space by exact-cover backtracking
/// (always branch on the smallest uncovered point). Sorted.
///
/// Only tractable for tiny spaces; see [`all_spreads_pg32`].
pub fn enumerate_line_spreads(space: &ProjectiveSpace) -> Vec<LineSpread> {
    let v = space.num_points();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut covered = BitSet::new(v);
    fn rec(space: &ProjectiveSpace, covered: &mut BitSet, chosen: &mut Vec<u32>, out: &mut Vec<LineSpread>) {
        let Some(p) = covered.complement().iter().next() else {
            out.push(LineSpread::new(chosen.clone()));
            return;
        };
        for l in space.lines_through_point(p).iter() {
            let pts = space.line_point_set(l);
            if !pts.is_disjoint(covered) {
                continue;
            }
            covered.union_with(pts);
            chosen.push(l as u32);
            rec(space, covered, chosen, out);
            chosen.pop();
            covered.difference_with(pts);
        }
    }
    rec(space, &mut covered, &mut chosen, &mut out);
    out.sort();
    out
}

/// All 56 line spreads of PG(3,2).
pub fn all_spreads_pg32(space: &ProjectiveSpace) -> Result<Vec<LineSpread>, GeometryError> {
    if space.n() != 3 || space.q() != 2 {
        return Err(GeometryError::Domain(
            "exhaustive spread enumeration is restricted to PG(3,2)".into(),
        ));
    }
    Ok(enumerate_line_spreads(space))
}

/// The parallel class of affine lines with point at infinity `direction`.
pub fn parallel_class(affine: &AffineSpace, direction: usize) -> Result<LineSpread, GeometryError> {
    if !affine.is_at_infinity(direction) {
        return Err(GeometryError::Domain(format!(
            "point {direction} is not on the hyperplane at infinity"
        )));
    }
    Ok(LineSpread::new(
        affine
            .affine_lines()
            .iter()
            .copied()
            .filter(|&l| affine.direction(l as usize) == Some(direction))
            .collect(),
    ))
}
