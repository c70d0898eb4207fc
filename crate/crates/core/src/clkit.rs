//! Line classes: trivial families, set operations, parameters, local counts,
//! restrictions to subspaces, spread profiles and the degree-one test.

use crate::bitset::BitSet;
use crate::exactmath::{gaussian_binomial, int_rational, rational, theta, to_integer, ExactInt, ExactRational, MathError};
use crate::geometry::{parallel_class, AffineSpace, GeometryError, LineSpread, ProjectiveSpace, Subspace};
use crate::linalg;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

/// Cap on `(points + 1) * lines` matrix cells for the degree-one solve.
pub const DEGREE_ONE_BUDGET: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// The space a line class lives in.
#[derive(Debug, Clone, Copy)]
pub enum Host<'s> {
    Projective(&'s ProjectiveSpace),
    Affine(&'s AffineSpace),
}

impl<'s> Host<'s> {
    /// The projective space whose line indices are used (the closure for
    /// affine hosts).
    pub fn space(&self) -> &'s ProjectiveSpace {
        match self {
            Host::Projective(s) => s,
            Host::Affine(a) => a.parent(),
        }
    }

    pub fn affine(&self) -> Option<&'s AffineSpace> {
        match self {
            Host::Affine(a) => Some(a),
            Host::Projective(_) => None,
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, Host::Affine(_))
    }

    pub fn n(&self) -> usize {
        self.space().n()
    }

    /// All lines of the host, as parent line indices.
    pub fn universe(&self) -> BitSet {
        match self {
            Host::Projective(s) => BitSet::full(s.num_lines()),
            Host::Affine(a) => a.affine_line_set().clone(),
        }
    }

    /// Parameter of the set of all lines: `[n+1 2]_q / theta(n)` projectively,
    /// `q^(n-1)` affinely.
    pub fn full_parameter(&self) -> ExactRational {
        let q = self.space().order();
        let n = self.n();
        match self {
            Host::Projective(_) => rational(gaussian_binomial(n as i64 + 1, 2, q), theta(n as u32, q)),
            Host::Affine(_) => int_rational(q.pow(n as u32 - 1)),
        }
    }

    pub fn describe(&self) -> String {
        let kind = if self.is_affine() { "AG" } else { "PG" };
        format!("{kind}({},{})", self.n(), self.space().q())
    }
}

/// A set of lines of a host space.
#[derive(Debug, Clone)]
pub struct LineClass<'s> {
    host: Host<'s>,
    members: BitSet,
    parameter: Option<ExactRational>,
}

impl<'s> LineClass<'s> {
    /// Builds a class from parent line indices. Affine hosts reject lines at
    /// infinity. The affine parameter is cached only if the parallel-class
    /// check passes.
    pub fn from_lines(host: Host<'s>, lines: impl IntoIterator<Item = usize>) -> Result<Self, ClassError> {
        let universe = host.universe();
        let mut members = BitSet::new(host.space().num_lines());
        for l in lines {
            if l >= members.len() || !universe.contains(l) {
                return Err(ClassError::Domain(format!("line {l} is not a line of {}", host.describe())));
            }
            members.insert(l);
        }
        Ok(Self::from_members(host, members))
    }

    fn from_members(host: Host<'s>, members: BitSet) -> Self {
        let mut class = LineClass {
            host,
            members,
            parameter: None,
        };
        class.parameter = match host {
            Host::Projective(s) => Some(rational(class.len() as u64, theta(s.n() as u32, s.order()))),
            Host::Affine(_) => affine_parameter(&class).ok(),
        };
        class
    }

    pub fn empty(host: Host<'s>) -> Self {
        Self::from_members(host, BitSet::new(host.space().num_lines()))
    }

    pub fn full(host: Host<'s>) -> Self {
        Self::from_members(host, host.universe())
    }

    pub fn host(&self) -> Host<'s> {
        self.host
    }

    pub fn space(&self) -> &'s ProjectiveSpace {
        self.host.space()
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, l: usize) -> bool {
        self.members.contains(l)
    }

    /// Membership indicator.
    pub fn chi(&self, l: usize) -> u32 {
        self.members.contains(l) as u32
    }

    pub fn lines(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    /// Cached parameter: `|L| / theta(n)` projectively; the common
    /// parallel-class intersection affinely (absent if not constant).
    pub fn parameter(&self) -> Option<&ExactRational> {
        self.parameter.as_ref()
    }

    pub fn integer_parameter(&self) -> Result<ExactInt, ClassError> {
        let x = self
            .parameter
            .as_ref()
            .ok_or_else(|| ClassError::Domain("class has no verified parameter".into()))?;
        Ok(to_integer(x)?)
    }
}

fn point_in_range(space: &ProjectiveSpace, p: usize) -> Result<(), ClassError> {
    if p >= space.num_points() {
        return Err(ClassError::Domain(format!("point {p} out of range")));
    }
    Ok(())
}

/// All lines of the host through `p`.
pub fn pencil_class<'s>(host: Host<'s>, p: usize) -> Result<LineClass<'s>, ClassError> {
    point_in_range(host.space(), p)?;
    let mut members = host.space().lines_through_point(p).clone();
    members.intersect_with(&host.universe());
    Ok(LineClass::from_members(host, members))
}

/// All lines contained in the subspace `h` (dimension at least 2) of a
/// projective host.
pub fn subspace_lines_class<'s>(host: Host<'s>, h: &Subspace) -> Result<LineClass<'s>, ClassError> {
    let Host::Projective(space) = host else {
        return Err(ClassError::Unsupported(
            "subspace line sets are not classes of an affine space".into(),
        ));
    };
    if h.dim() < 2 {
        return Err(ClassError::Domain(format!("need a subspace of dimension >= 2, got {}", h.dim())));
    }
    Ok(LineClass::from_members(
        host,
        BitSet::from_indices(space.num_lines(), h.lines(space).into_iter().map(|l| l as usize)),
    ))
}

fn same_host(a: &LineClass, b: &LineClass) -> Result<(), ClassError> {
    if !std::ptr::eq(a.space(), b.space()) || a.host.is_affine() != b.host.is_affine() {
        return Err(ClassError::Domain("classes live in different hosts".into()));
    }
    Ok(())
}

/// Union of two disjoint classes.
pub fn union_class<'s>(a: &LineClass<'s>, b: &LineClass<'s>) -> Result<LineClass<'s>, ClassError> {
    same_host(a, b)?;
    if !a.members.is_disjoint(&b.members) {
        return Err(ClassError::Domain("union requires disjoint classes".into()));
    }
    let mut members = a.members.clone();
    members.union_with(&b.members);
    Ok(LineClass::from_members(a.host, members))
}

pub fn complement_class<'s>(a: &LineClass<'s>) -> LineClass<'s> {
    let mut members = a.host.universe();
    members.difference_with(&a.members);
    LineClass::from_members(a.host, members)
}

/// `m̄`: lines of `L` through `p`.
pub fn point_count(l: &LineClass, p: usize) -> usize {
    l.members.intersection_count(l.space().lines_through_point(p))
}

/// Lines of `L` contained in the subspace `pi` (a plane, or any subspace).
pub fn plane_count(l: &LineClass, pi: &Subspace) -> usize {
    pi.lines(l.space()).iter().filter(|&&x| l.contains(x as usize)).count()
}

/// The `d`-dimensional subspaces through a point together with their line
/// sets; reusable across classes.
#[derive(Debug, Clone)]
pub struct SubspaceStar {
    pub point: usize,
    pub dim: usize,
    pub subspaces: Vec<Subspace>,
    /// Lines inside each subspace.
    pub lines: Vec<Vec<u32>>,
    /// Lines through `point` inside each subspace.
    pub through: Vec<Vec<u32>>,
}

impl SubspaceStar {
    pub fn new(space: &ProjectiveSpace, point: usize, dim: usize) -> Result<Self, ClassError> {
        point_in_range(space, point)?;
        let subspaces = space.subspaces_through_point(point, dim)?;
        let (lines, through) = subspaces
            .par_iter()
            .map(|s| (s.lines(space), s.lines_through(space, point)))
            .unzip();
        Ok(SubspaceStar {
            point,
            dim,
            subspaces,
            lines,
            through,
        })
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionEntry {
    /// `x_π = |L ∩ [π]_1| / theta(d)`.
    pub x: ExactRational,
    /// `m_π`: lines of `L` through the point inside `π`.
    pub m: u64,
    /// `|L ∩ [π]_1|`.
    pub lines: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionProfile {
    pub point: usize,
    pub dim: usize,
    pub m_bar: u64,
    pub entries: Vec<RestrictionEntry>,
}

impl RestrictionProfile {
    pub fn sum_m(&self) -> ExactInt {
        self.entries.iter().map(|e| ExactInt::from(e.m)).sum()
    }
}

/// Restriction of `L` to every `d`-space through `p`.
pub fn restriction_profile(l: &LineClass, p: usize, d: usize) -> Result<RestrictionProfile, ClassError> {
    if d > l.host.n() {
        return Err(ClassError::Domain(format!("dimension {d} exceeds n = {}", l.host.n())));
    }
    let star = SubspaceStar::new(l.space(), p, d)?;
    Ok(restriction_profile_in(l, &star))
}

pub fn restriction_profile_in(l: &LineClass, star: &SubspaceStar) -> RestrictionProfile {
    let t = theta(star.dim as u32, l.space().order());
    let entries = star
        .lines
        .par_iter()
        .zip(&star.through)
        .map(|(lines, through)| {
            let count = lines.iter().filter(|&&x| l.contains(x as usize)).count() as u64;
            let m = through.iter().filter(|&&x| l.contains(x as usize)).count() as u64;
            RestrictionEntry {
                x: rational(count, t.clone()),
                m,
                lines: count,
            }
        })
        .collect();
    RestrictionProfile {
        point: star.point,
        dim: star.dim,
        m_bar: point_count(l, star.point) as u64,
        entries,
    }
}

/// `|L ∩ S|` for each spread.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadProfile {
    pub sizes: Vec<usize>,
}

impl SpreadProfile {
    pub fn is_constant(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] == w[1])
    }

    pub fn constant_value(&self) -> Option<usize> {
        match self.sizes.first() {
            Some(&v) if self.is_constant() => Some(v),
            _ => None,
        }
    }
}

pub fn spread_profile(l: &LineClass, spreads: &[LineSpread]) -> Result<SpreadProfile, ClassError> {
    let universe = l.host.universe();
    let mut sizes = Vec::with_capacity(spreads.len());
    for s in spreads {
        if s.lines().iter().any(|&x| x as usize >= universe.len() || !universe.contains(x as usize)) {
            return Err(ClassError::Domain("spread does not belong to the class host".into()));
        }
        sizes.push(s.lines().iter().filter(|&&x| l.contains(x as usize)).count());
    }
    Ok(SpreadProfile { sizes })
}

/// Two parallel classes with different intersection sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineParameterFailure {
    pub first_direction: usize,
    pub first_count: usize,
    pub other_direction: usize,
    pub other_count: usize,
}

/// Common intersection size with every parallel class. Parallel classes
/// are only some of the affine spreads, so a constant value is necessary
/// for being a Cameron-Liebler class, not sufficient.
pub fn affine_parameter(l: &LineClass) -> Result<ExactRational, AffineParameterFailure> {
    let affine = l.host.affine().expect("affine host");
    let mut first: Option<(usize, usize)> = None;
    for d in affine.infinity_points() {
        let class = parallel_class(affine, d).expect("direction at infinity");
        let count = class.lines().iter().filter(|&&x| l.contains(x as usize)).count();
        match first {
            None => first = Some((d, count)),
            Some((fd, fc)) if fc != count => {
                return Err(AffineParameterFailure {
                    first_direction: fd,
                    first_count: fc,
                    other_direction: d,
                    other_count: count,
                })
            }
            _ => {}
        }
    }
    Ok(int_rational(first.map_or(0, |(_, c)| c) as u64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeOne {
    pub member: bool,
    /// Coefficients `c_p` with `χ_L = Σ_p c_p χ_pencil(p)` when `member`.
    pub coefficients: Option<Vec<ExactRational>>,
}

/// Whether `χ_L` lies in the row space of the point-pencil incidence matrix,
/// decided by fraction-free elimination of `[P^T | χ_L]`.
pub fn is_degree_one(l: &LineClass) -> Result<DegreeOne, ClassError> {
    let Host::Projective(space) = l.host else {
        return Err(ClassError::Unsupported("degree-one test needs a projective host".into()));
    };
    let v = space.num_points();
    let b = space.num_lines();
    let cells = (v as u64 + 1) * b as u64;
    if cells > DEGREE_ONE_BUDGET {
        return Err(GeometryError::Budget {
            what: format!("degree-one solve over {} points and {} lines", v, b),
            required: cells.to_string(),
            budget: DEGREE_ONE_BUDGET,
        }
        .into());
    }
    let a: Vec<Vec<ExactInt>> = (0..b)
        .map(|line| {
            let pts = space.line_point_set(line);
            (0..v).map(|p| ExactInt::from(pts.contains(p) as u8)).collect()
        })
        .collect();
    let rhs: Vec<ExactInt> = (0..b).map(|line| ExactInt::from(l.chi(line))).collect();
    Ok(match linalg::solve(&a, &rhs) {
        Some(c) => DegreeOne {
            member: true,
            coefficients: Some(c),
        },
        None => DegreeOne {
            member: false,
            coefficients: None,
        },
    })
}

/// Evaluates `Σ_p c_p χ_pencil(p)` on every line.
pub fn pencil_combination(space: &ProjectiveSpace, coefficients: &[ExactRational]) -> Vec<ExactRational> {
    (0..space.num_lines())
        .map(|line| {
            space
                .line_points(line)
                .iter()
                .map(|&p| coefficients[p as usize].clone())
                .fold(ExactRational::zero(), |a, c| a + c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::all_spreads_pg32;

    fn pg(n: usize, q: u64) -> ProjectiveSpace {
        ProjectiveSpace::new(n, q).unwrap()
    }

    #[test]
    fn pencils() {
        let s = pg(3, 2);
        let p = pencil_class(Host::Projective(&s), 4).unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.parameter(), Some(&int_rational(1)));
        let s7 = pg(7, 2);
        let p7 = pencil_class(Host::Projective(&s7), 200).unwrap();
        assert_eq!(p7.len(), 127);
        assert_eq!(p7.parameter(), Some(&int_rational(1)));
        let a = AffineSpace::new(3, 3).unwrap();
        let pa = pencil_class(Host::Affine(&a), a.affine_points().start + 5).unwrap();
        assert_eq!(pa.len(), 13);
        assert_eq!(pa.parameter(), Some(&int_rational(1)));
        assert!(pencil_class(Host::Projective(&s), 15).is_err());
    }

    #[test]
    fn subspace_classes() {
        let s = pg(3, 2);
        let planes = s.enumerate_subspaces(2).unwrap();
        let c = subspace_lines_class(Host::Projective(&s), &planes[0]).unwrap();
        assert_eq!((c.len(), c.parameter().cloned()), (7, Some(int_rational(1))));
        let s7 = pg(7, 2);
        let h = Subspace::from_vectors(&s7, (1..8).map(|i| (0..8).map(|j| (i == j) as u8).collect()).collect()).unwrap();
        assert_eq!(h.dim(), 6);
        let c7 = subspace_lines_class(Host::Projective(&s7), &h).unwrap();
        assert_eq!((c7.len(), c7.parameter().cloned()), (2667, Some(int_rational(21))));
        let s3 = pg(3, 3);
        let c3 = subspace_lines_class(Host::Projective(&s3), &s3.enumerate_subspaces(2).unwrap()[7]).unwrap();
        assert_eq!((c3.len(), c3.parameter().cloned()), (13, Some(int_rational(1))));
        let a = AffineSpace::new(3, 2).unwrap();
        assert!(matches!(
            subspace_lines_class(Host::Affine(&a), &planes[0]),
            Err(ClassError::Unsupported(_))
        ));
        assert!(subspace_lines_class(Host::Projective(&s), &Subspace::line(&s, 0)).is_err());
    }

    #[test]
    fn union_and_complement() {
        let s = pg(3, 2);
        let host = Host::Projective(&s);
        let plane = &s.enumerate_subspaces(2).unwrap()[0];
        let p = (0..15).find(|&p| !plane.contains_point(p)).unwrap();
        let u = union_class(&pencil_class(host, p).unwrap(), &subspace_lines_class(host, plane).unwrap()).unwrap();
        assert_eq!((u.len(), u.parameter().cloned()), (14, Some(int_rational(2))));
        let inside = plane.points()[0] as usize;
        assert!(union_class(&pencil_class(host, inside).unwrap(), &subspace_lines_class(host, plane).unwrap()).is_err());
        for q in [2, 3] {
            let s = pg(3, q);
            let c = complement_class(&pencil_class(Host::Projective(&s), 0).unwrap());
            assert_eq!(c.parameter().cloned(), Some(int_rational(q * q)));
        }
        assert_eq!(Host::Projective(&s).full_parameter(), int_rational(5));
    }

    #[test]
    fn affine_complement_parameter() {
        let a = AffineSpace::new(3, 3).unwrap();
        let host = Host::Affine(&a);
        let p = pencil_class(host, a.affine_points().start).unwrap();
        let c = complement_class(&p);
        assert_eq!(c.parameter(), Some(&int_rational(8)));
        assert_eq!(host.full_parameter(), int_rational(9));
        let full = LineClass::full(host);
        assert_eq!(full.parameter(), Some(&int_rational(9)));
    }

    #[test]
    fn local_counts() {
        let s = pg(3, 2);
        let host = Host::Projective(&s);
        let pen = pencil_class(host, 0).unwrap();
        assert_eq!(point_count(&pen, 0), 7);
        assert_eq!(point_count(&pen, 9), 1);
        let s3 = pg(3, 3);
        let planes = s3.enumerate_subspaces(2).unwrap();
        let c = subspace_lines_class(Host::Projective(&s3), &planes[0]).unwrap();
        // two planes of PG(3,q) share exactly one line
        for pi in &planes[1..] {
            assert_eq!(plane_count(&c, pi), 1);
        }
        assert_eq!(plane_count(&c, &planes[0]), 13);
    }

    #[test]
    fn restriction_profiles() {
        let s5 = pg(5, 2);
        let pen = pencil_class(Host::Projective(&s5), 3).unwrap();
        let prof = restriction_profile(&pen, 3, 3).unwrap();
        assert_eq!(prof.entries.len(), 155);
        assert!(prof.entries.iter().all(|e| e.x == int_rational(1) && e.m == 7));
        // each line through the point lies in [4 2]_2 = 35 solids
        assert_eq!(prof.sum_m(), gaussian_binomial(4, 2, s5.order()) * prof.m_bar);

        let s = pg(3, 2);
        let plane = &s.enumerate_subspaces(2).unwrap()[2];
        let c = subspace_lines_class(Host::Projective(&s), plane).unwrap();
        let p = plane.points()[0] as usize;
        let prof = restriction_profile(&c, p, 3).unwrap();
        assert_eq!(prof.entries, vec![RestrictionEntry { x: int_rational(1), m: 3, lines: 7 }]);
    }

    #[test]
    fn spread_profiles_pg32() {
        let s = pg(3, 2);
        let host = Host::Projective(&s);
        let spreads = all_spreads_pg32(&s).unwrap();
        let pen = pencil_class(host, 6).unwrap();
        assert_eq!(spread_profile(&pen, &spreads).unwrap().constant_value(), Some(1));
        let plane = subspace_lines_class(host, &s.enumerate_subspaces(2).unwrap()[4]).unwrap();
        assert_eq!(spread_profile(&plane, &spreads).unwrap().constant_value(), Some(1));
        let single = LineClass::from_lines(host, [10]).unwrap();
        let prof = spread_profile(&single, &spreads).unwrap();
        assert!(!prof.is_constant());
        assert!(prof.sizes.iter().all(|&v| v <= 1));
    }

    #[test]
    fn affine_parameters() {
        let a = AffineSpace::new(3, 2).unwrap();
        let host = Host::Affine(&a);
        let p = pencil_class(host, a.affine_points().start).unwrap();
        assert_eq!(affine_parameter(&p), Ok(int_rational(1)));
        let a3 = AffineSpace::new(3, 3).unwrap();
        assert_eq!(affine_parameter(&LineClass::full(Host::Affine(&a3))), Ok(int_rational(9)));
        let plane = a.enumerate_subspaces(2).unwrap().into_iter().next().unwrap();
        let lines: Vec<usize> = plane.lines(a.parent()).into_iter().map(|l| l as usize).filter(|&l| a.is_affine_line(l)).collect();
        let c = LineClass::from_lines(host, lines).unwrap();
        let fail = affine_parameter(&c).unwrap_err();
        let mut counts = [fail.first_count, fail.other_count];
        counts.sort();
        assert_eq!(counts, [0, 2]);
        assert!(c.parameter().is_none());
        assert!(LineClass::from_lines(host, [0]).is_err(), "line 0 lies at infinity");
    }

    /// Closed-form oracle: P P^T = (theta(n) - 1) I + J is invertible, so the
    /// unique candidate is c = (P P^T)^{-1} P χ.
    fn normal_equation_certificate(l: &LineClass) -> Option<Vec<ExactRational>> {
        let s = l.space();
        let v = s.num_points() as u64;
        let a: ExactInt = theta(s.n() as u32, s.order()) - 1u32;
        let pchi: Vec<ExactInt> = (0..s.num_points()).map(|p| ExactInt::from(point_count(l, p))).collect();
        let total: ExactInt = pchi.iter().sum();
        let c: Vec<ExactRational> = pchi
            .iter()
            .map(|sp| rational(sp.clone(), a.clone()) - rational(total.clone(), a.clone() * (a.clone() + v)))
            .collect();
        let back = pencil_combination(s, &c);
        (0..s.num_lines())
            .all(|line| back[line] == int_rational(l.chi(line)))
            .then_some(c)
    }

    #[test]
    fn degree_one_membership() {
        let s = pg(3, 2);
        let host = Host::Projective(&s);
        let cases = [pencil_class(host, 0).unwrap(),
            subspace_lines_class(host, &s.enumerate_subspaces(2).unwrap()[0]).unwrap(),
            LineClass::from_lines(host, [3]).unwrap(),
            LineClass::empty(host)];
        let expect = [true, true, false, true];
        for (c, e) in cases.iter().zip(expect) {
            let d = is_degree_one(c).unwrap();
            assert_eq!(d.member, e);
            let oracle = normal_equation_certificate(c);
            assert_eq!(oracle.is_some(), e);
            if let Some(coeffs) = d.coefficients {
                assert_eq!(Some(coeffs.clone()), oracle);
                let back = pencil_combination(&s, &coeffs);
                assert!((0..s.num_lines()).all(|line| back[line] == int_rational(c.chi(line))));
            }
        }
        let s4 = pg(4, 2);
        let h4 = &s4.enumerate_subspaces(3).unwrap()[0];
        let c4 = subspace_lines_class(Host::Projective(&s4), h4).unwrap();
        assert!(is_degree_one(&c4).unwrap().member);
        let a = AffineSpace::new(3, 2).unwrap();
        assert!(is_degree_one(&LineClass::empty(Host::Affine(&a))).is_err());
        let big = pg(4, 5);
        assert!(matches!(
            is_degree_one(&LineClass::empty(Host::Projective(&big))),
            Err(ClassError::Geometry(GeometryError::Budget { .. }))
        ));
    }
}
