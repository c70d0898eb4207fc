//! Table-driven arithmetic in GF(q).
//!
//! Elements are labelled `0..q`. For `q = p^e` with `e > 1` the label of
//! `c_0 + c_1 t + ... + c_{e-1} t^{e-1}` is `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`,
//! and products are reduced modulo a fixed irreducible polynomial from
//! [`CATALOG`]. Label 0 is the additive identity and label 1 the
//! multiplicative identity.

use crate::exactmath::PrimePower;
use thiserror::Error;

/// Field element label in `[0, q)`.
pub type Elem = u8;

/// Largest supported field order.
pub const MAX_Q: u32 = 49;

/// Irreducible modulus for every supported non-prime order. Coefficients are
/// listed from the constant term upward, without the leading 1.
pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { q: 4, p: 2, lower: &[1, 1], text: "t^2 + t + 1" },
    CatalogEntry { q: 8, p: 2, lower: &[1, 1, 0], text: "t^3 + t + 1" },
    CatalogEntry { q: 9, p: 3, lower: &[1, 0], text: "t^2 + 1" },
    CatalogEntry { q: 16, p: 2, lower: &[1, 1, 0, 0], text: "t^4 + t + 1" },
    CatalogEntry { q: 25, p: 5, lower: &[2, 4], text: "t^2 + 4t + 2" },
    CatalogEntry { q: 27, p: 3, lower: &[1, 2, 0], text: "t^3 + 2t + 1" },
    CatalogEntry { q: 32, p: 2, lower: &[1, 0, 1, 0, 0], text: "t^5 + t^2 + 1" },
    CatalogEntry { q: 49, p: 7, lower: &[3, 6], text: "t^2 + 6t + 3" },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub q: u32,
    pub p: u32,
    pub lower: &'static [u32],
    pub text: &'static str,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error(
        "GF({0}) is not supported: orders are primes up to {max} and the catalog {{4, 8, 9, 16, 25, 27, 32, 49}}",
        max = MAX_Q
    )]
    Unsupported(u32),
}

pub fn catalog_entry(q: u32) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|c| c.q == q)
}

/// Complete arithmetic tables for GF(q).
#[derive(Clone)]
pub struct FieldTable {
    order: PrimePower,
    modulus: Option<&'static CatalogEntry>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    primitive: Elem,
}

impl std::fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldTable")
            .field("q", &self.order.q())
            .field("modulus", &self.modulus.map(|m| m.text))
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl FieldTable {
    pub fn new(order: PrimePower) -> Result<Self, FieldError> {
        let q = order.q();
        if q > MAX_Q {
            return Err(FieldError::Unsupported(q));
        }
        let modulus = if order.is_prime() {
            None
        } else {
            Some(catalog_entry(q).ok_or(FieldError::Unsupported(q))?)
        };
        let p = order.p() as usize;
        let e = order.e() as usize;
        let qs = q as usize;

        let digits = |mut v: usize| -> Vec<usize> {
            let mut d = vec![0; e];
            for slot in d.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            d
        };
        let label = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = label(&sum) as Elem;
                mul[a * qs + b] = label(&poly_mul_mod(&da, &db, p, modulus)) as Elem;
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .expect("catalog modulus must be irreducible") as Elem;
            }
        }
        let mut table = FieldTable {
            order,
            modulus,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        table.primitive = (1..qs)
            .map(|g| g as Elem)
            .find(|&g| table.multiplicative_order(g) == qs - 1)
            .expect("finite field has a primitive element");
        Ok(table)
    }

    pub fn from_q(q: u64) -> Result<Self, FieldError> {
        let order = PrimePower::new(q).map_err(|_| FieldError::Unsupported(q as u32))?;
        Self::new(order)
    }

    pub fn order(&self) -> PrimePower {
        self.order
    }

    pub fn q(&self) -> usize {
        self.order.q() as usize
    }

    pub fn modulus_text(&self) -> Option<&'static str> {
        self.modulus.map(|m| m.text)
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q() + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut acc = 1;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn multiplicative_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q()).map(|a| a as Elem)
    }

    /// Evaluates the polynomial with GF(p)-coefficients `coeffs` (constant
    /// term first) at `x`. Coefficients are embedded as prime-field labels.
    fn eval_prime_poly(&self, coeffs: &[u32], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c as Elem))
    }
}

/// Multiplies two digit vectors over GF(p) and reduces modulo the catalog
/// polynomial (or returns the constant product for prime fields).
fn poly_mul_mod(a: &[usize], b: &[usize], p: usize, modulus: Option<&CatalogEntry>) -> Vec<usize> {
    let e = a.len();
    let mut prod = vec![0usize; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    if let Some(m) = modulus {
        // t^e = -(lower)
        for deg in (e..2 * e).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (k, &l) in m.lower.iter().enumerate() {
                let sub = c * l as usize % p;
                prod[deg - e + k] = (prod[deg - e + k] + p - sub) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

/// GF(q^2) viewed as a 2-dimensional GF(q)-vector space with basis
/// `{1, omega}`.
#[derive(Debug, Clone)]
pub struct QuadraticExtension {
    pub base: FieldTable,
    pub ext: FieldTable,
    /// Embedding of base labels into the extension.
    embed: Vec<Elem>,
    omega: Elem,
    to_pair: Vec<(Elem, Elem)>,
    from_pair: Vec<Elem>,
}

impl QuadraticExtension {
    pub fn new(q: PrimePower) -> Result<Self, FieldError> {
        let base = FieldTable::new(q)?;
        let q2 = q.q() as u64 * q.q() as u64;
        if q2 > MAX_Q as u64 {
            return Err(FieldError::Unsupported(q2 as u32));
        }
        let ext = FieldTable::from_q(q2)?;
        let qs = base.q();

        // Image of the base generator t: the smallest root of the base modulus
        // inside the extension. Prime bases embed as constants.
        let embed: Vec<Elem> = match base.modulus {
            None => (0..qs).map(|a| a as Elem).collect(),
            Some(m) => {
                let mut full = m.lower.to_vec();
                full.push(1);
                let root = ext
                    .elements()
                    .find(|&z| ext.eval_prime_poly(&full, z) == 0)
                    .expect("base field embeds in its quadratic extension");
                let p = base.order().p() as usize;
                (0..qs)
                    .map(|a| {
                        let mut v = a;
                        let mut acc = 0;
                        let mut power = 1;
                        for _ in 0..base.order().e() {
                            let c = (v % p) as Elem;
                            v /= p;
                            acc = ext.add(acc, ext.mul(c, power));
                            power = ext.mul(power, root);
                        }
                        acc
                    })
                    .collect()
            }
        };
        let mut in_base = vec![false; ext.q()];
        for &z in &embed {
            in_base[z as usize] = true;
        }
        let omega = ext
            .elements()
            .find(|&z| !in_base[z as usize])
            .expect("extension is larger than the base");

        let mut from_pair = vec![0; qs * qs];
        let mut to_pair = vec![(0, 0); ext.q()];
        for a in 0..qs {
            for b in 0..qs {
                let z = ext.add(embed[a], ext.mul(embed[b], omega));
                from_pair[a * qs + b] = z;
                to_pair[z as usize] = (a as Elem, b as Elem);
            }
        }
        Ok(QuadraticExtension {
            base,
            ext,
            embed,
            omega,
            to_pair,
            from_pair,
        })
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a as usize]
    }

    /// Coordinates of `z` in the basis `{1, omega}`.
    pub fn to_pair(&self, z: Elem) -> (Elem, Elem) {
        self.to_pair[z as usize]
    }

    pub fn from_pair(&self, a: Elem, b: Elem) -> Elem {
        self.from_pair[a as usize * self.base.q() + b as usize]
    }
}
