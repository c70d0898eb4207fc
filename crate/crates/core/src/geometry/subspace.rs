use super::{GeometryError, ProjectiveSpace};
use crate::bitset::BitSet;
use crate::exactmath::gaussian_binomial;
use crate::galois::{Elem, FieldTable};

/// Reduced row echelon form of `rows` over `field`; zero rows are dropped.
pub fn rref(field: &FieldTable, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = field.inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    let sub = field.mul(f, rows[rank][k]);
                    rows[r][k] = field.sub(rows[r][k], sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Every `rank x cols` matrix in reduced row echelon form of full rank,
/// sorted lexicographically by entries (row-major).
pub fn enumerate_rref(field: &FieldTable, rank: usize, cols: usize) -> Vec<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    if rank > cols {
        return out;
    }
    let qs = field.q();
    let mut pivots = Vec::with_capacity(rank);
    fn pivot_sets(start: usize, cols: usize, rank: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == rank {
            f(cur);
            return;
        }
        for c in start..cols {
            cur.push(c);
            pivot_sets(c + 1, cols, rank, cur, f);
            cur.pop();
        }
    }
    pivot_sets(0, cols, rank, &mut pivots, &mut |piv: &[usize]| {
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..cols).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = qs.pow(free.len() as u32);
        for mut t in 0..total {
            let mut m = vec![vec![0 as Elem; cols]; rank];
            for (r, &pc) in piv.iter().enumerate() {
                m[r][pc] = 1;
            }
            for &(r, c) in free.iter().rev() {
                m[r][c] = (t % qs) as Elem;
                t /= qs;
            }
            out.push(m);
        }
    });
    out.sort_unstable();
    out
}

/// A projective subspace, identified by its RREF basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vec<Elem>>,
    points: Vec<u32>,
    point_set: BitSet,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dim, &self.basis).cmp(&(other.dim, &other.basis))
    }
}

impl Subspace {
    /// Span of the given vectors. Returns `None` when all are zero.
    pub fn from_vectors(space: &ProjectiveSpace, rows: Vec<Vec<Elem>>) -> Option<Subspace> {
        let basis = rref(space.field(), rows);
        if basis.is_empty() {
            return None;
        }
        Some(Self::from_rref(space, basis))
    }

    fn from_rref(space: &ProjectiveSpace, basis: Vec<Vec<Elem>>) -> Subspace {
        let field = space.field();
        let r = basis.len();
        let width = space.n() + 1;
        let qs = field.q();
        let mut points = Vec::with_capacity(super::theta_usize(r, qs));
        let mut coeff = vec![0 as Elem; r];
        let mut vec = vec![0 as Elem; width];
        for lead in 0..r {
            let tail = r - lead - 1;
            for mut t in 0..qs.pow(tail as u32) {
                coeff.iter_mut().for_each(|c| *c = 0);
                coeff[lead] = 1;
                for c in coeff[lead + 1..].iter_mut().rev() {
                    *c = (t % qs) as Elem;
                    t /= qs;
                }
                vec.copy_from_slice(&basis[lead]);
                for (row, &c) in basis.iter().zip(&coeff).skip(lead + 1) {
                    if c != 0 {
                        for (v, &b) in vec.iter_mut().zip(row) {
                            *v = field.add(*v, field.mul(c, b));
                        }
                    }
                }
                points.push(space.point_index(&vec).expect("independent rows") as u32);
            }
        }
        points.sort_unstable();
        let point_set = BitSet::from_indices(space.num_points(), points.iter().map(|&p| p as usize));
        Subspace {
            dim: r - 1,
            basis,
            points,
            point_set,
        }
    }

    pub fn point(space: &ProjectiveSpace, p: usize) -> Subspace {
        Self::from_vectors(space, vec![space.point_coords(p).to_vec()]).unwrap()
    }

    pub fn line(space: &ProjectiveSpace, l: usize) -> Subspace {
        let pts = space.line_points(l);
        Self::from_points(space, &[pts[0] as usize, pts[1] as usize]).unwrap()
    }

    pub fn from_points(space: &ProjectiveSpace, points: &[usize]) -> Option<Subspace> {
        Self::from_vectors(space, points.iter().map(|&p| space.point_coords(p).to_vec()).collect())
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn point_set(&self) -> &BitSet {
        &self.point_set
    }

    pub fn contains_point(&self, p: usize) -> bool {
        self.point_set.contains(p)
    }

    pub fn contains_line(&self, space: &ProjectiveSpace, l: usize) -> bool {
        let pts = space.line_points(l);
        self.contains_point(pts[0] as usize) && self.contains_point(pts[1] as usize)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.point_set.is_subset(&self.point_set)
    }

    pub fn is_disjoint(&self, other: &Subspace) -> bool {
        self.point_set.is_disjoint(&other.point_set)
    }

    /// Indices of all lines contained in this subspace, ascending.
    pub fn lines(&self, space: &ProjectiveSpace) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &a) in self.points.iter().enumerate() {
            for &b in &self.points[i + 1..] {
                let l = space.line_through(a as usize, b as usize);
                let lp = space.line_points(l);
                if lp[0] == a && lp[1] == b {
                    out.push(l as u32);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Lines through `p` inside this subspace. `p` must be a point of it.
    pub fn lines_through(&self, space: &ProjectiveSpace, p: usize) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .points
            .iter()
            .filter(|&&b| b as usize != p)
            .map(|&b| space.line_through(p, b as usize) as u32)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl ProjectiveSpace {
    /// Smallest subspace containing every input.
    pub fn span(&self, objects: &[&Subspace]) -> Subspace {
        let rows = objects.iter().flat_map(|s| s.basis.iter().cloned()).collect();
        Subspace::from_vectors(self, rows).expect("span of nonempty subspaces")
    }

    /// Intersection of two subspaces, or `None` when they are disjoint.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Option<Subspace> {
        let mut common = a.point_set.clone();
        common.intersect_with(&b.point_set);
        let pts: Vec<usize> = common.iter().collect();
        if pts.is_empty() {
            return None;
        }
        Subspace::from_points(self, &pts)
    }

    /// All `d`-dimensional subspaces in canonical RREF order.
    pub fn enumerate_subspaces(&self, d: usize) -> Result<Vec<Subspace>, GeometryError> {
        if d > self.n() {
            return Err(GeometryError::Domain(format!("no {d}-spaces in PG({},q)", self.n())));
        }
        let count = gaussian_binomial(self.n() as i64 + 1, d as i64 + 1, self.order());
        let pts = super::theta_usize(d + 1, self.q());
        self.subspace_budget(&count, pts, || format!("{count} subspaces of dimension {d}"))?;
        Ok(enumerate_rref(self.field(), d + 1, self.n() + 1)
            .into_iter()
            .map(|b| Subspace::from_rref(self, b))
            .collect())
    }

    /// All `d`-dimensional subspaces through point `p`, obtained from the
    /// `(d-1)`-spaces of the quotient PG(n-1,q) and sorted canonically.
    pub fn subspaces_through_point(&self, p: usize, d: usize) -> Result<Vec<Subspace>, GeometryError> {
        if d == 0 || d > self.n() {
            return Err(GeometryError::Domain(format!("dimension {d} out of range 1..={}", self.n())));
        }
        let count = gaussian_binomial(self.n() as i64, d as i64, self.order());
        let pts = super::theta_usize(d + 1, self.q());
        self.subspace_budget(&count, pts, || format!("{count} subspaces of dimension {d} through a point"))?;
        let v = self.point_coords(p).to_vec();
        let pivot = v.iter().position(|&c| c != 0).unwrap();
        let mut out: Vec<Subspace> = enumerate_rref(self.field(), d, self.n())
            .into_iter()
            .map(|quot| {
                let mut rows = Vec::with_capacity(d + 1);
                rows.push(v.clone());
                for r in quot {
                    let mut lifted = r;
                    lifted.insert(pivot, 0);
                    rows.push(lifted);
                }
                Subspace::from_vectors(self, rows).unwrap()
            })
            .collect();
        out.sort();
        Ok(out)
    }
}
