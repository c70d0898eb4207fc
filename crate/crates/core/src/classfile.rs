//! Class specifications (`pencil:3`, `complement:hyperplane`, ...) and the
//! plain-text line class file format.
//!
//! A class file is a short header followed by one parent line index per
//! row; `#` starts a comment:
//!
//! ```text
//! format clsieve-lineclass/1
//! space pg
//! n 3
//! q 2
//! ordering-version 1
//! lines
//! 0
//! 4
//! ```

use crate::clkit::{complement_class, pencil_class, subspace_lines_class, union_class, ClassError, Host, LineClass};
use crate::geometry::{Subspace, ORDERING_VERSION};
use crate::sieve::SpaceKind;
use std::path::PathBuf;
use thiserror::Error;

pub const FORMAT_TAG: &str = "clsieve-lineclass/1";

#[derive(Debug, Error)]
pub enum ClassFileError {
    #[error("bad class specification {spec:?}: {reason}")]
    Spec { spec: String, reason: String },
    #[error("class file line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("class file does not match the host: {0}")]
    Mismatch(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Class(#[from] ClassError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSpec {
    Empty,
    Full,
    /// Lines through a point (default: the first point of the host).
    Pencil(Option<usize>),
    /// Lines of the i-th hyperplane in canonical order (default 0).
    Hyperplane(Option<usize>),
    /// Pencil at a point off the hyperplane, together with the hyperplane's
    /// lines. The point defaults to the first point off it.
    Union { point: Option<usize>, hyperplane: Option<usize> },
    Complement(Box<ClassSpec>),
    File(PathBuf),
}

fn index_arg(spec: &str, arg: Option<&str>) -> Result<Option<usize>, ClassFileError> {
    arg.map(|a| {
        a.parse().map_err(|_| ClassFileError::Spec {
            spec: spec.to_string(),
            reason: format!("{a:?} is not an index"),
        })
    })
    .transpose()
}

impl std::str::FromStr for ClassSpec {
    type Err = ClassFileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("complement:") {
            return Ok(ClassSpec::Complement(Box::new(rest.parse()?)));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(ClassSpec::File(PathBuf::from(path)));
        }
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or("");
        let args: Vec<&str> = parts.collect();
        let bad = |reason: &str| ClassFileError::Spec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let spec = match (head, args.len()) {
            ("empty", 0) => ClassSpec::Empty,
            ("full", 0) => ClassSpec::Full,
            ("pencil", 0 | 1) => ClassSpec::Pencil(index_arg(s, args.first().copied())?),
            ("hyperplane", 0 | 1) => ClassSpec::Hyperplane(index_arg(s, args.first().copied())?),
            ("union", 0) => ClassSpec::Union { point: None, hyperplane: None },
            ("union", 2) => ClassSpec::Union {
                point: index_arg(s, Some(args[0]))?,
                hyperplane: index_arg(s, Some(args[1]))?,
            },
            ("empty" | "full" | "pencil" | "hyperplane" | "union", _) => return Err(bad("wrong number of arguments")),
            _ => {
                return Err(bad(
                    "expected empty, full, pencil[:P], hyperplane[:H], union[:P:H], complement:<spec> or file:<path>",
                ))
            }
        };
        Ok(spec)
    }
}

impl std::fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opt = |v: &Option<usize>| v.map(|i| format!(":{i}")).unwrap_or_default();
        match self {
            ClassSpec::Empty => write!(f, "empty"),
            ClassSpec::Full => write!(f, "full"),
            ClassSpec::Pencil(p) => write!(f, "pencil{}", opt(p)),
            ClassSpec::Hyperplane(h) => write!(f, "hyperplane{}", opt(h)),
            ClassSpec::Union { point, hyperplane } => match (point, hyperplane) {
                (None, None) => write!(f, "union"),
                _ => write!(f, "union:{}:{}", point.unwrap_or(0), hyperplane.unwrap_or(0)),
            },
            ClassSpec::Complement(inner) => write!(f, "complement:{inner}"),
            ClassSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn hyperplane<'s>(host: Host<'s>, index: Option<usize>) -> Result<Subspace, ClassFileError> {
    let space = host.space();
    let mut all = space.enumerate_subspaces(space.n() - 1).map_err(ClassError::from)?;
    let i = index.unwrap_or(0);
    if i >= all.len() {
        return Err(ClassError::Domain(format!("hyperplane {i} out of range (0..{})", all.len())).into());
    }
    Ok(all.swap_remove(i))
}

fn require_projective(host: Host, what: &str) -> Result<(), ClassFileError> {
    if host.is_affine() {
        return Err(ClassError::Unsupported(format!("{what} classes are only defined for projective hosts")).into());
    }
    Ok(())
}

/// Materialises a class specification on a host.
pub fn build_class<'s>(host: Host<'s>, spec: &ClassSpec) -> Result<LineClass<'s>, ClassFileError> {
    Ok(match spec {
        ClassSpec::Empty => LineClass::empty(host),
        ClassSpec::Full => LineClass::full(host),
        ClassSpec::Pencil(p) => {
            let default = host.affine().map_or(0, |a| a.affine_points().start);
            pencil_class(host, p.unwrap_or(default))?
        }
        ClassSpec::Hyperplane(h) => {
            require_projective(host, "hyperplane")?;
            subspace_lines_class(host, &hyperplane(host, *h)?)?
        }
        ClassSpec::Union { point, hyperplane: h } => {
            require_projective(host, "union")?;
            let hp = hyperplane(host, *h)?;
            let p = match point {
                Some(p) => *p,
                None => (0..host.space().num_points())
                    .find(|&p| !hp.contains_point(p))
                    .expect("a hyperplane misses some point"),
            };
            if p < host.space().num_points() && hp.contains_point(p) {
                return Err(ClassError::Domain(format!("point {p} lies on the hyperplane; the union is not disjoint")).into());
            }
            union_class(&pencil_class(host, p)?, &subspace_lines_class(host, &hp)?)?
        }
        ClassSpec::Complement(inner) => complement_class(&build_class(host, inner)?),
        ClassSpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| ClassFileError::Io {
                path: path.display().to_string(),
                source,
            })?;
            read_class(host, &text)?
        }
    })
}

fn host_kind(host: Host) -> SpaceKind {
    if host.is_affine() {
        SpaceKind::Ag
    } else {
        SpaceKind::Pg
    }
}

/// Serialises a class, lines ascending.
pub fn write_class(l: &LineClass) -> String {
    let host = l.host();
    let mut out = format!(
        "format {FORMAT_TAG}\nspace {}\nn {}\nq {}\nordering-version {ORDERING_VERSION}\nlines\n",
        host_kind(host).as_str(),
        host.n(),
        host.space().q()
    );
    for line in l.lines() {
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}

/// Parses a class file and checks its header against `host`.
pub fn read_class<'s>(host: Host<'s>, text: &str) -> Result<LineClass<'s>, ClassFileError> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, t)| !t.is_empty());
    let expected = [
        ("format", FORMAT_TAG.to_string()),
        ("space", host_kind(host).as_str().to_string()),
        ("n", host.n().to_string()),
        ("q", host.space().q().to_string()),
        ("ordering-version", ORDERING_VERSION.to_string()),
    ];
    for (key, want) in expected {
        let Some((line, row)) = rows.next() else {
            return Err(ClassFileError::Parse {
                line: 0,
                reason: format!("missing header field {key}"),
            });
        };
        let (k, v) = row.split_once(char::is_whitespace).unwrap_or((row, ""));
        if k != key {
            return Err(ClassFileError::Parse {
                line,
                reason: format!("expected {key}, found {k:?}"),
            });
        }
        if v.trim() != want {
            return Err(ClassFileError::Mismatch(format!("{key} is {:?}, host has {want:?}", v.trim())));
        }
    }
    match rows.next() {
        Some((_, "lines")) => {}
        Some((line, other)) => {
            return Err(ClassFileError::Parse {
                line,
                reason: format!("expected \"lines\", found {other:?}"),
            })
        }
        None => {
            return Err(ClassFileError::Parse {
                line: 0,
                reason: "missing \"lines\" section".into(),
            })
        }
    }
    let mut lines = Vec::new();
    for (line, row) in rows {
        let v: usize = row.parse().map_err(|_| ClassFileError::Parse {
            line,
            reason: format!("{row:?} is not a line index"),
        })?;
        lines.push(v);
    }
    Ok(LineClass::from_lines(host, lines)?)
}
