//! Parameter feasibility sieve.
//!
//! Each condition is a necessary condition on the parameter `x` of a
//! Cameron-Liebler class. Conditions phrased in terms of a local count `m`
//! (lines through a point or in a plane) are projected onto `x` by asking
//! whether *some* residue of `m` modulo `q+1` satisfies them; `x` is
//! excluded only when every residue fails.

use crate::exactmath::{
    choose_two, gaussian_binomial, int_rational, modulo, rational, theta, ExactInt, ExactRational, PrimePower,
};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

/// Largest number of candidate parameters a single run may enumerate.
pub const MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SieveError {
    #[error("unsupported mode: {0}")]
    Unsupported(String),
    #[error("too many candidate parameters ({0}); lower --x-max")]
    TooMany(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Pg,
    Ag,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::Pg => "pg",
            SpaceKind::Ag => "ag",
        }
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pg" => Ok(SpaceKind::Pg),
            "ag" => Ok(SpaceKind::Ag),
            other => Err(format!("unknown space kind {other:?} (expected pg or ag)")),
        }
    }
}

/// One tried residue of a local count and the value it produced modulo the
/// condition's modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTrial {
    pub residue: u64,
    pub value: ExactInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Smallest residue of the local count satisfying the congruence.
    Residue(u64),
    /// Direct congruence that evaluates to zero modulo `modulus`.
    Vanishes { modulus: ExactInt },
    /// `x = 1 + C / theta(n-2)`.
    EvenDim(ExactInt),
    /// Exempt from a bound (empty class or point-pencil).
    Exempt,
    /// `x` reaches the lower bound.
    AboveBound(ExactRational),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Residue(m) => write!(f, "m={m}"),
            Witness::Vanishes { modulus } => write!(f, "0 mod {modulus}"),
            Witness::EvenDim(c) => write!(f, "C={c}"),
            Witness::Exempt => write!(f, "x in {{0,1}}"),
            Witness::AboveBound(t) => write!(f, "x >= {}", fmt_plain(t)),
        }
    }
}

/// `a` for integers, `a/b` otherwise.
pub fn fmt_plain(r: &ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub name: &'static str,
    pub applicable: bool,
    /// Violated hypothesis when not applicable; the failing evaluation when
    /// infeasible; a short description otherwise.
    pub reason: String,
    pub feasible: bool,
    pub witness: Option<Witness>,
    /// For residue conditions, every tried residue (all `q+1` of them when
    /// infeasible).
    pub exhaustion: Vec<ResidueTrial>,
}

impl ConditionVerdict {
    fn not_applicable(name: &'static str, reason: impl Into<String>) -> Self {
        ConditionVerdict {
            name,
            applicable: false,
            reason: reason.into(),
            feasible: true,
            witness: None,
            exhaustion: Vec::new(),
        }
    }

    /// Excludes `x`: applicable and infeasible.
    pub fn excludes(&self) -> bool {
        self.applicable && !self.feasible
    }
}

pub const CONDITION_NAMES: [&str; 7] = [
    "metsch_pg3",
    "ag3",
    "affine_line",
    "affine_kset",
    "pg_odd",
    "even_dim",
    "lower_bound_affine",
];

/// Tries every residue `m ∈ [0, q]` of a local count, `first` before the
/// others, which follow in increasing order.
fn residue_condition(
    name: &'static str,
    modulus: ExactInt,
    q: PrimePower,
    first: u64,
    describe: &str,
    value: impl Fn(&ExactInt) -> ExactInt,
) -> ConditionVerdict {
    let mut exhaustion = Vec::with_capacity(q.q() as usize + 1);
    let order = std::iter::once(first).chain((0..=q.q() as u64).filter(|&m| m != first));
    for m in order {
        let v = modulo(&value(&ExactInt::from(m)), &modulus);
        let hit = v.is_zero();
        exhaustion.push(ResidueTrial { residue: m, value: v });
        if hit {
            return ConditionVerdict {
                name,
                applicable: true,
                reason: describe.to_string(),
                feasible: true,
                witness: Some(Witness::Residue(m)),
                exhaustion,
            };
        }
    }
    ConditionVerdict {
        name,
        applicable: true,
        reason: format!("{describe}: no residue m in [0,{}] works", q.q()),
        feasible: false,
        witness: None,
        exhaustion,
    }
}

fn direct_condition(name: &'static str, value: ExactInt, modulus: ExactInt, describe: String) -> ConditionVerdict {
    let r = modulo(&value, &modulus);
    if r.is_zero() {
        ConditionVerdict {
            name,
            applicable: true,
            reason: describe,
            feasible: true,
            witness: Some(Witness::Vanishes { modulus }),
            exhaustion: Vec::new(),
        }
    } else {
        ConditionVerdict {
            name,
            applicable: true,
            reason: format!("{describe}: evaluates to {r} mod {modulus}"),
            feasible: false,
            witness: None,
            exhaustion: Vec::new(),
        }
    }
}

/// `binom(x,2) + m(m-x) ≡ 0 mod (q+1)` for some `m` (lines of the class
/// through a point or in a plane of PG(3,q)).
pub fn cond_metsch_pg3(x: &ExactInt, q: PrimePower) -> ConditionVerdict {
    let b = choose_two(x);
    residue_condition(
        "metsch_pg3",
        q.q_plus_one(),
        q,
        0,
        "binom(x,2) + m(m-x) = 0 mod (q+1)",
        |m| &b + m * (m - x),
    )
}

/// `x(x-1) ≡ 0 mod 2(q+1)` in AG(3,q).
pub fn cond_ag3(x: &ExactInt, q: PrimePower) -> ConditionVerdict {
    direct_condition("ag3", x * (x - 1), q.two_q_plus_one(), "x(x-1) = 0 mod 2(q+1)".into())
}

/// `theta(n-2) x(x-1) ≡ 0 mod 2(q+1)` for line classes of AG(n,q), `n >= 3`.
pub fn cond_affine_line(x: &ExactInt, n: u32, q: PrimePower) -> ConditionVerdict {
    if n < 3 {
        return ConditionVerdict::not_applicable("affine_line", format!("needs n >= 3, got n = {n}"));
    }
    let t = theta(n - 2, q);
    direct_condition(
        "affine_line",
        &t * x * (x - 1),
        q.two_q_plus_one(),
        format!("{t} x(x-1) = 0 mod 2(q+1)"),
    )
}

/// `theta(n-k-1) x(x-1) ≡ 0 mod 2(q+1)` for k-sets of AG(n,q). For `k = 1`
/// this is [`cond_affine_line`].
pub fn cond_affine_kset(x: &ExactInt, n: u32, k: u32, q: PrimePower) -> ConditionVerdict {
    const NAME: &str = "affine_kset";
    if k == 0 || n <= k {
        return ConditionVerdict::not_applicable(NAME, format!("needs 1 <= k < n, got n = {n}, k = {k}"));
    }
    if n - k == 3 {
        return ConditionVerdict::not_applicable(NAME, "n - k = 3: the congruence is trivially satisfied");
    }
    if k == 1 {
        let mut v = cond_affine_line(x, n, q);
        v.name = NAME;
        return v;
    }
    if n < k + 5 {
        return ConditionVerdict::not_applicable(NAME, format!("needs n >= k + 5 for k > 1, got n = {n}, k = {k}"));
    }
    let t = theta(n - k - 1, q);
    direct_condition(NAME, &t * x * (x - 1), q.two_q_plus_one(), format!("{t} x(x-1) = 0 mod 2(q+1)"))
}

/// `x(x-1) + 2 m(m-x) ≡ 0 mod (q+1)` for some `m` (lines through a point),
/// line classes of PG(n,q) with `n >= 7` odd. The residue `m = x mod (q+1)`,
/// which kills the second term, is tried first.
pub fn cond_pg_odd(x: &ExactInt, n: u32, q: PrimePower) -> ConditionVerdict {
    if n < 7 || n.is_multiple_of(2) {
        return ConditionVerdict::not_applicable("pg_odd", format!("needs n >= 7 odd, got n = {n}"));
    }
    let base = x * (x - 1);
    let first = modulo(x, &q.q_plus_one()).to_u64().unwrap();
    residue_condition(
        "pg_odd",
        q.q_plus_one(),
        q,
        first,
        "x(x-1) + 2m(m-x) = 0 mod (q+1)",
        |m| &base + 2 * m * (m - x),
    )
}

/// Non-empty line classes of PG(n,q), `n >= 4` even, have
/// `x = 1 + C / theta(n-2)` with `C` a nonnegative integer.
pub fn cond_even_dim(x: &ExactRational, n: u32, q: PrimePower) -> ConditionVerdict {
    const NAME: &str = "even_dim";
    if n < 4 || n % 2 == 1 {
        return ConditionVerdict::not_applicable(NAME, format!("needs n >= 4 even, got n = {n}"));
    }
    if x.is_zero() {
        return ConditionVerdict {
            name: NAME,
            applicable: true,
            reason: "empty class".into(),
            feasible: true,
            witness: Some(Witness::EvenDim(ExactInt::zero())),
            exhaustion: Vec::new(),
        };
    }
    let t = theta(n - 2, q);
    if let Some(p) = EvenDimParameter::of(x, n, q) {
        ConditionVerdict {
            name: NAME,
            applicable: true,
            reason: format!("x = 1 + C/{t}"),
            feasible: true,
            witness: Some(Witness::EvenDim(p.c)),
            exhaustion: Vec::new(),
        }
    } else {
        let c = (x - ExactRational::one()) * int_rational(t);
        ConditionVerdict {
            name: NAME,
            applicable: true,
            reason: format!("(x - 1) * {} = {} is not a nonnegative integer", theta(n - 2, q), fmt_plain(&c)),
            feasible: false,
            witness: None,
            exhaustion: Vec::new(),
        }
    }
}

/// A parameter `x = 1 + C / theta(n-2)` of an even-dimensional projective
/// space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EvenDimParameter {
    pub c: ExactInt,
}

impl EvenDimParameter {
    pub fn x(&self, n: u32, q: PrimePower) -> ExactRational {
        ExactRational::one() + rational(self.c.clone(), theta(n - 2, q))
    }

    /// The `C` of a nonzero `x`, if it has this shape.
    pub fn of(x: &ExactRational, n: u32, q: PrimePower) -> Option<Self> {
        let c = (x - ExactRational::one()) * int_rational(theta(n - 2, q));
        (c.is_integer() && !c.is_negative()).then(|| EvenDimParameter { c: c.to_integer() })
    }
}

/// Lower bound `2 (q^(n-k) - 1)/(q^(k+1) - 1) + 1` on parameters of k-sets
/// of AG(n,q) other than the empty set and point-pencils.
pub fn lower_bound_threshold(n: u32, k: u32, q: PrimePower) -> ExactRational {
    let num: ExactInt = q.pow(n - k) - 1u32;
    let den: ExactInt = q.pow(k + 1) - 1u32;
    rational(num * 2u32, den) + ExactRational::one()
}

pub fn cond_lower_bound_affine(x: &ExactRational, n: u32, k: u32, q: PrimePower) -> ConditionVerdict {
    const NAME: &str = "lower_bound_affine";
    if k == 0 || n < 2 * k + 2 {
        return ConditionVerdict::not_applicable(NAME, format!("needs n >= 2k + 2 and k >= 1, got n = {n}, k = {k}"));
    }
    let t = lower_bound_threshold(n, k, q);
    let (feasible, witness, reason) = if x.is_zero() || x.is_one() {
        (true, Some(Witness::Exempt), "empty set or point-pencil".to_string())
    } else if *x >= t {
        (true, Some(Witness::AboveBound(t.clone())), format!("x >= {}", fmt_plain(&t)))
    } else {
        (false, None, format!("1 < x < {}", fmt_plain(&t)))
    };
    ConditionVerdict {
        name: NAME,
        applicable: true,
        reason,
        feasible,
        witness,
        exhaustion: Vec::new(),
    }
}

/// Sieve mode: space, dimension, subspace dimension and field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mode {
    pub space: SpaceKind,
    pub n: u32,
    pub k: u32,
    pub q: PrimePower,
}

impl Mode {
    pub fn validate(&self) -> Result<(), SieveError> {
        match self.space {
            SpaceKind::Pg if self.k != 1 => Err(SieveError::Unsupported(format!(
                "projective k-sets with k = {} > 1: none of the implemented conditions apply",
                self.k
            ))),
            SpaceKind::Pg if self.n < 3 => Err(SieveError::Unsupported(format!(
                "projective line classes need n >= 3, got n = {}",
                self.n
            ))),
            SpaceKind::Ag if self.k == 0 || self.n < self.k + 2 => Err(SieveError::Unsupported(format!(
                "affine k-sets need k >= 1 and n >= k + 2, got n = {}, k = {}",
                self.n, self.k
            ))),
            _ => Ok(()),
        }
    }

    /// Parameter of the set of all `k`-spaces: `[n+1 2]_q / theta(n)`
    /// projectively, `q^(n-k)` affinely.
    pub fn full_parameter(&self) -> ExactRational {
        match self.space {
            SpaceKind::Pg => rational(gaussian_binomial(self.n as i64 + 1, 2, self.q), theta(self.n, self.q)),
            SpaceKind::Ag => int_rational(self.q.pow(self.n - self.k)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub mode: Mode,
    pub x: ExactRational,
    pub complement: ExactRational,
    pub verdicts: Vec<ConditionVerdict>,
    pub feasible: bool,
    /// Overall verdict for the complement parameter, evaluated on its own
    /// since not every condition is complement-symmetric.
    pub complement_feasible: bool,
}

impl FeasibilityReport {
    pub fn verdict(&self, name: &str) -> Option<&ConditionVerdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

/// Applies every condition to a single parameter.
pub fn sieve_parameter(mode: &Mode, x: &ExactRational) -> Result<FeasibilityReport, SieveError> {
    mode.validate()?;
    let verdicts = evaluate(mode, x);
    let feasible = !verdicts.iter().any(ConditionVerdict::excludes);
    let complement = mode.full_parameter() - x;
    let complement_feasible =
        !complement.is_negative() && !evaluate(mode, &complement).iter().any(ConditionVerdict::excludes);
    Ok(FeasibilityReport {
        mode: *mode,
        complement,
        x: x.clone(),
        verdicts,
        feasible,
        complement_feasible,
    })
}

fn evaluate(mode: &Mode, x: &ExactRational) -> Vec<ConditionVerdict> {
    let Mode { space, n, k, q } = *mode;
    let integral = x.is_integer();
    let xi = x.to_integer();
    let int_only = |name: &'static str, f: &dyn Fn() -> ConditionVerdict| {
        if integral {
            f()
        } else {
            ConditionVerdict::not_applicable(name, "parameter is not an integer")
        }
    };
    let affine_only = |name: &'static str| ConditionVerdict::not_applicable(name, "affine-only condition");
    match space {
        SpaceKind::Pg => vec![
            if n == 3 {
                int_only("metsch_pg3", &|| cond_metsch_pg3(&xi, q))
            } else {
                ConditionVerdict::not_applicable("metsch_pg3", format!("needs PG(3,q), got n = {n}"))
            },
            affine_only("ag3"),
            affine_only("affine_line"),
            affine_only("affine_kset"),
            int_only("pg_odd", &|| cond_pg_odd(&xi, n, q)),
            cond_even_dim(x, n, q),
            affine_only("lower_bound_affine"),
        ],
        SpaceKind::Ag => {
            // an affine line class is a line class of the projective closure
            // with the same parameter; k-sets reduce to lines of AG(n-k+1,q)
            let line_dim = n - k + 1;
            vec![
                if n == 3 && k == 1 {
                    int_only("metsch_pg3", &|| cond_metsch_pg3(&xi, q))
                } else {
                    ConditionVerdict::not_applicable("metsch_pg3", "needs line classes of AG(3,q)")
                },
                if line_dim == 3 {
                    int_only("ag3", &|| cond_ag3(&xi, q))
                } else {
                    ConditionVerdict::not_applicable("ag3", format!("needs n - k + 1 = 3, got {line_dim}"))
                },
                if k == 1 {
                    int_only("affine_line", &|| cond_affine_line(&xi, n, q))
                } else {
                    ConditionVerdict::not_applicable("affine_line", "line classes only (k = 1)")
                },
                int_only("affine_kset", &|| cond_affine_kset(&xi, n, k, q)),
                if k == 1 {
                    int_only("pg_odd", &|| cond_pg_odd(&xi, n, q))
                } else {
                    ConditionVerdict::not_applicable("pg_odd", "line classes only (k = 1)")
                },
                ConditionVerdict::not_applicable("even_dim", "affine parameters are integral"),
                cond_lower_bound_affine(x, n, k, q),
            ]
        }
    }
}

#[derive(Debug, Clone)]
pub struct SieveConfig {
    pub mode: Mode,
    pub x_max: Option<ExactInt>,
    pub fold_complement: bool,
}

/// Default upper end of the enumeration: half the full parameter (rounded
/// up) when folding complements, else the full parameter (rounded down).
pub fn default_x_max(mode: &Mode, fold_complement: bool) -> ExactInt {
    let full = mode.full_parameter();
    if fold_complement {
        (full / int_rational(2)).ceil().to_integer()
    } else {
        full.floor().to_integer()
    }
}

/// Candidate parameters in increasing order: integers `0..=x_max`, plus the
/// non-integral `1 + C/theta(n-2)` values for even-dimensional PG.
pub fn candidates(mode: &Mode, x_max: &ExactInt) -> Result<Vec<ExactRational>, SieveError> {
    let mut out: Vec<ExactRational> = Vec::new();
    if x_max.is_negative() {
        return Ok(out);
    }
    let even_pg = mode.space == SpaceKind::Pg && mode.n >= 4 && mode.n.is_multiple_of(2);
    let per_unit = if even_pg { theta(mode.n - 2, mode.q) } else { ExactInt::one() };
    let total = x_max * &per_unit + 2u32;
    if total > ExactInt::from(MAX_CANDIDATES) {
        return Err(SieveError::TooMany(total.to_string()));
    }
    out.push(ExactRational::zero());
    if even_pg {
        let last = (x_max - 1u32) * &per_unit;
        let mut c = ExactInt::zero();
        while c <= last {
            out.push(EvenDimParameter { c: c.clone() }.x(mode.n, mode.q));
            c += 1u32;
        }
    } else {
        let top = x_max.to_u64().expect("bounded by MAX_CANDIDATES");
        out.extend((1..=top).map(int_rational));
    }
    Ok(out)
}

pub fn run_sieve(config: &SieveConfig) -> Result<Vec<FeasibilityReport>, SieveError> {
    config.mode.validate()?;
    let x_max = config
        .x_max
        .clone()
        .unwrap_or_else(|| default_x_max(&config.mode, config.fold_complement));
    let xs = candidates(&config.mode, &x_max)?;
    xs.par_iter().map(|x| sieve_parameter(&config.mode, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn i(v: i64) -> ExactInt {
        v.into()
    }

    /// Direct loop over residues, independent of `residue_condition`.
    fn metsch_oracle(x: i64, q: i64) -> Option<i64> {
        (0..=q).find(|&m| ((x * (x - 1) / 2 + m * (m - x)) % (q + 1) + (q + 1)) % (q + 1) == 0)
    }

    #[test]
    fn metsch_examples() {
        let v = cond_metsch_pg3(&i(1), pp(2));
        assert!(v.feasible);
        assert_eq!(v.witness, Some(Witness::Residue(0)));
        for x in [3, 4] {
            let v = cond_metsch_pg3(&i(x), pp(3));
            assert!(!v.feasible);
            assert_eq!(v.exhaustion.len(), 4);
        }
        for q in [2, 3, 4, 5, 7, 8, 9] {
            for x in 0..200 {
                let v = cond_metsch_pg3(&i(x), pp(q as u64));
                assert_eq!(v.feasible, metsch_oracle(x, q).is_some());
                if let Some(Witness::Residue(m)) = v.witness {
                    assert_eq!(Some(m as i64), metsch_oracle(x, q));
                }
            }
        }
    }

    #[test]
    fn ag3_examples() {
        assert!(cond_ag3(&i(0), pp(5)).feasible);
        assert!(!cond_ag3(&i(2), pp(2)).feasible);
        assert!(cond_ag3(&i(4), pp(2)).feasible);
    }

    #[test]
    fn affine_line_examples() {
        assert!(cond_affine_line(&i(16), 5, pp(7)).feasible);
        assert!(!cond_affine_line(&i(2), 5, pp(7)).feasible);
        for n in 3..9 {
            assert!(cond_affine_line(&i(1), n, pp(4)).feasible);
        }
        assert!(!cond_affine_line(&i(1), 2, pp(4)).applicable);
    }

    #[test]
    fn affine_kset_examples() {
        for x in 0..2000i64 {
            let v = cond_affine_kset(&i(x), 5, 1, pp(7));
            assert_eq!(v.feasible, (9 * x * (x - 1)) % 16 == 0, "x={x}");
        }
        assert!(cond_affine_kset(&i(112), 5, 1, pp(7)).feasible);
        assert!(cond_affine_kset(&i(5), 9, 2, pp(2)).feasible);
        assert!(!cond_affine_kset(&i(2), 4, 1, pp(7)).applicable);
        assert!(!cond_affine_kset(&i(2), 6, 3, pp(7)).applicable);
        assert!(!cond_affine_kset(&i(2), 7, 3, pp(7)).applicable);
        assert!(cond_affine_kset(&i(2), 8, 3, pp(7)).applicable);
    }

    #[test]
    fn pg_odd_examples() {
        let v = cond_pg_odd(&i(1), 7, pp(2));
        assert_eq!(v.witness, Some(Witness::Residue(1)));
        let v = cond_pg_odd(&i(21), 7, pp(2));
        assert_eq!(v.witness, Some(Witness::Residue(0)));
        assert!(!cond_pg_odd(&i(21), 5, pp(2)).applicable);
        assert!(!cond_pg_odd(&i(21), 8, pp(2)).applicable);
    }

    #[test]
    fn even_dim_examples() {
        let v = cond_even_dim(&int_rational(0), 4, pp(3));
        assert!(v.feasible);
        let v = cond_even_dim(&int_rational(1), 4, pp(2));
        assert_eq!(v.witness, Some(Witness::EvenDim(i(0))));
        let v = cond_even_dim(&rational(8, 7), 4, pp(2));
        assert!(!v.feasible);
        let v = cond_even_dim(&rational(4, 3), 4, pp(2));
        assert_eq!(v.witness, Some(Witness::EvenDim(i(1))));
        assert!(!cond_even_dim(&rational(4, 3), 4, pp(2)).excludes());
        assert!(!cond_even_dim(&rational(1, 2), 5, pp(2)).applicable);
        assert!(!cond_even_dim(&rational(1, 2), 4, pp(2)).feasible);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound_threshold(5, 1, pp(7)), int_rational(101));
        assert!(cond_lower_bound_affine(&int_rational(1), 5, 1, pp(7)).feasible);
        assert!(!cond_lower_bound_affine(&int_rational(50), 5, 1, pp(7)).feasible);
        assert!(cond_lower_bound_affine(&int_rational(101), 5, 1, pp(7)).feasible);
        assert!(!cond_lower_bound_affine(&int_rational(100), 5, 1, pp(7)).feasible);
        assert!(!cond_lower_bound_affine(&int_rational(50), 3, 1, pp(7)).applicable);
    }

    #[test]
    fn pg_kset_rejected() {
        let mode = Mode { space: SpaceKind::Pg, n: 5, k: 2, q: pp(2) };
        assert!(matches!(run_sieve(&SieveConfig { mode, x_max: None, fold_complement: false }), Err(SieveError::Unsupported(_))));
    }

    #[test]
    fn example_n5_q7() {
        let mode = Mode { space: SpaceKind::Ag, n: 5, k: 1, q: pp(7) };
        assert_eq!(default_x_max(&mode, true), i(1201));
        let reports = run_sieve(&SieveConfig { mode, x_max: None, fold_complement: true }).unwrap();
        assert_eq!(reports.len(), 1202);
        // oracle: x in {0,1} or (x >= 101 and x = 0,1 mod 16)
        let expected: Vec<i64> = (0..=1201)
            .filter(|&x| x <= 1 || (x >= 101 && (x % 16 == 0 || x % 16 == 1)))
            .collect();
        let got: Vec<i64> = reports
            .iter()
            .filter(|r| r.feasible)
            .map(|r| r.x.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(got, expected);
        assert_eq!(&got[..6], &[0, 1, 112, 113, 128, 129]);
        assert_eq!(reports[5].complement, int_rational(2396));
    }

    #[test]
    fn every_report_lists_every_condition() {
        let mode = Mode { space: SpaceKind::Pg, n: 4, k: 1, q: pp(2) };
        let reports = run_sieve(&SieveConfig { mode, x_max: Some(i(2)), fold_complement: false }).unwrap();
        let xs: Vec<String> = reports.iter().map(|r| fmt_plain(&r.x)).collect();
        assert_eq!(xs, ["0", "1", "4/3", "5/3", "2"]);
        for r in &reports {
            let names: Vec<&str> = r.verdicts.iter().map(|v| v.name).collect();
            assert_eq!(names, CONDITION_NAMES);
            assert!(r.feasible);
        }
        assert_eq!(reports[2].verdict("even_dim").unwrap().witness, Some(Witness::EvenDim(i(1))));
    }

    #[test]
    fn metsch_pg3_sieve_q3() {
        let mode = Mode { space: SpaceKind::Pg, n: 3, k: 1, q: pp(3) };
        let reports = run_sieve(&SieveConfig { mode, x_max: Some(i(10)), fold_complement: false }).unwrap();
        assert_eq!(reports.len(), 11);
        for r in &reports {
            let v = r.verdict("metsch_pg3").unwrap();
            assert_eq!(v.feasible, metsch_oracle(r.x.to_integer().try_into().unwrap(), 3).is_some());
        }
        assert!(reports[3].verdict("metsch_pg3").unwrap().excludes());
        assert!(reports[4].verdict("metsch_pg3").unwrap().excludes());
    }

    #[test]
    fn pencil_in_pg7() {
        let mode = Mode { space: SpaceKind::Pg, n: 7, k: 1, q: pp(2) };
        let r = sieve_parameter(&mode, &int_rational(1)).unwrap();
        assert!(r.feasible);
        assert!(r.verdict("pg_odd").unwrap().applicable);
        assert_eq!(r.complement, int_rational(84));
        assert!(r.complement_feasible);
    }

    fn trivial_parameters(mode: &Mode) -> Vec<ExactRational> {
        let full = mode.full_parameter();
        let small: &[i64] = if mode.space == SpaceKind::Pg { &[0, 1, 2] } else { &[0, 1] };
        small
            .iter()
            .flat_map(|&x| [int_rational(x), &full - int_rational(x)])
            .collect()
    }

    const ALL_Q: [u64; 14] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49];

    /// Every condition except `pg_odd` keeps all trivial parameters.
    #[test]
    fn trivial_parameters_never_excluded() {
        for q in ALL_Q {
            let q = pp(q);
            for n in 3..=12 {
                let mut modes = vec![Mode { space: SpaceKind::Pg, n, k: 1, q }];
                modes.extend((1..=n - 2).map(|k| Mode { space: SpaceKind::Ag, n, k, q }));
                for mode in modes {
                    for y in trivial_parameters(&mode) {
                        let r = sieve_parameter(&mode, &y).unwrap();
                        for v in r.verdicts.iter().filter(|v| v.name != "pg_odd") {
                            assert!(!v.excludes(), "{mode:?} x={} {}", fmt_plain(&y), v.name);
                        }
                    }
                }
            }
        }
    }

    /// The odd-dimension congruence as stated rejects genuine classes: with
    /// `F` the full parameter, the full line set of PG(7,4) has
    /// `m = theta(7) = 1 mod 5` at every point and
    /// `F(F-1) + 2(1-F) = (F-1)(F-2) = 3*2 = 1 mod 5`; the complement of a
    /// pencil in PG(7,3) has `m = 0` at the vertex and `x(x-1) = 819*818 = 2
    /// mod 4`.
    #[test]
    fn pg_odd_rejects_known_classes() {
        let full = Mode { space: SpaceKind::Pg, n: 7, k: 1, q: pp(4) }.full_parameter();
        assert_eq!(full, int_rational(4369));
        let v = cond_pg_odd(&full.to_integer(), 7, pp(4));
        assert!(v.excludes());
        let e = |x: i64, m: i64, q1: i64| (x * (x - 1) + 2 * m * (m - x)).rem_euclid(q1);
        assert_eq!(e(4369, 5461, 5), 1);
        assert_eq!(e(819, 0, 4), 2);
        assert!(cond_pg_odd(&i(819), 7, pp(3)).excludes());
        // q = 2 is unaffected for the dimensions the verifiers build
        for n in [7, 9, 11] {
            let mode = Mode { space: SpaceKind::Pg, n, k: 1, q: pp(2) };
            for y in trivial_parameters(&mode) {
                assert!(sieve_parameter(&mode, &y).unwrap().feasible);
            }
        }
    }

    #[test]
    fn even_dim_parameter_roundtrip() {
        let q = pp(3);
        for c in 0..50 {
            let p = EvenDimParameter { c: i(c) };
            assert_eq!(EvenDimParameter::of(&p.x(6, q), 6, q), Some(p.clone()));
            let x = p.x(6, q);
            assert!(theta(4, q) % x.denom() == i(0));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

        proptest! {
            #[test]
            fn affine_line_n3_is_ag3(x in 0i64..10_000, q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16])) {
                prop_assert_eq!(cond_affine_line(&i(x), 3, pp(q)).feasible, cond_ag3(&i(x), pp(q)).feasible);
            }

            #[test]
            fn complement_symmetry_affine(x in 0i64..=200, qi in 0usize..QS.len(), n in 3u32..8) {
                let q = pp(QS[qi]);
                let full = q.pow(n - 1);
                let xc = &full - x;
                prop_assert_eq!(cond_affine_line(&i(x), n, q).feasible, cond_affine_line(&xc, n, q).feasible);
                if n == 3 {
                    prop_assert_eq!(cond_ag3(&i(x), q).feasible, cond_ag3(&xc, q).feasible);
                }
            }

            #[test]
            fn infeasible_residue_verdicts_are_exhaustive(x in 0i64..5000, qi in 0usize..QS.len()) {
                let q = pp(QS[qi]);
                for v in [cond_metsch_pg3(&i(x), q), cond_pg_odd(&i(x), 7, q)] {
                    if !v.feasible {
                        prop_assert_eq!(v.exhaustion.len(), q.q() as usize + 1);
                        prop_assert!(v.exhaustion.iter().all(|t| !t.value.is_zero()));
                    }
                }
            }
        }
    }
}
