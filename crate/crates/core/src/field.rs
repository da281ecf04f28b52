//! Prime fields `F_q` and extension fields `F_{q^m}` with dense polynomial
//! arithmetic.
//!
//! Elements are handled in bulk as `u32` indices: the index of an element is
//! the base-`q` number whose little-endian digits are its coefficients with
//! respect to the polynomial basis `(1, x, ..., x^{m-1})`. This is also the
//! serialization used by matrix files. [`FieldElement`] wraps the coefficient
//! vector for callers that prefer operator syntax.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest field order accepted; indices must fit comfortably in `u32`.
const MAX_ORDER: u64 = 1 << 24;

#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    characteristic: u32,
    degree: usize,
    /// Monic modulus, low-degree coefficient first, length `degree + 1`.
    modulus: Vec<u32>,
    order: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.characteristic)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.characteristic, self.degree, self.modulus)
        }
    }
}

fn smallest_factor(n: u32) -> Option<u32> {
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    None
}

fn check_prime(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::param(format!("field characteristic {q} is not prime")));
    }
    if let Some(f) = smallest_factor(q) {
        return Err(Error::param(format!("field characteristic {q} is not prime ({q} = {f} * {})", q / f)));
    }
    Ok(())
}

/// Remainder of `a` modulo the monic polynomial `b` over `Z_p` (low-first).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let v = (r[shift + i] as u64 + (p - lead) as u64 * bc as u64) % p as u64;
                r[shift + i] = v as u32;
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility by trial division against every monic polynomial of degree
/// `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut divisor = digits(idx, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut value: u64, base: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((value % base as u64) as u32);
        value /= base as u64;
    }
    out
}

impl Field {
    /// The prime field `F_q`.
    pub fn prime(q: u32) -> Result<Self> {
        check_prime(q)?;
        Ok(Field { characteristic: q, degree: 1, modulus: vec![0, 1], order: q })
    }

    /// `F_{q^m}` built on the lexicographically smallest monic irreducible of
    /// degree `m` (coefficients compared from the constant term upwards).
    pub fn extension(q: u32, m: usize) -> Result<Self> {
        check_prime(q)?;
        if m == 0 {
            return Err(Error::param("extension degree must be at least 1"));
        }
        if m == 1 {
            return Field::prime(q);
        }
        let order = (q as u64).checked_pow(m as u32).filter(|&o| o <= MAX_ORDER);
        let order = order.ok_or_else(|| Error::param(format!("field order {q}^{m} too large")))?;
        // Constant term is the most significant in the lexicographic order, so
        // walk indices with the constant coefficient as the high digit.
        for idx in 0..order {
            let mut coeffs = digits(idx, q, m);
            coeffs.reverse();
            coeffs.push(1);
            if is_irreducible(&coeffs, q) {
                return Ok(Field { characteristic: q, degree: m, modulus: coeffs, order: order as u32 });
            }
        }
        Err(Error::defect(format!("no irreducible polynomial of degree {m} over F_{q}")))
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    /// Monic modulus polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn contains(&self, e: u32) -> bool {
        e < self.order
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order
    }

    pub fn coeffs(&self, e: u32) -> Vec<u32> {
        digits(e as u64, self.characteristic, self.degree)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        debug_assert_eq!(coeffs.len(), self.degree);
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.characteristic + c % self.characteristic)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic;
        if self.degree == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.characteristic;
        if self.degree == 1 {
            return (p - a) % p;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic as u64;
        if self.degree == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u32; 2 * self.degree - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.characteristic);
        r.resize(self.degree, 0);
        self.from_coeffs(&r)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.order as u64 - 2))
        }
    }

    pub fn element(&self, index: u32) -> Result<FieldElement<'_>> {
        if !self.contains(index) {
            return Err(Error::param(format!("{index} is not an element of {self:?}")));
        }
        Ok(FieldElement { field: self, coeffs: self.coeffs(index) })
    }
}

/// An element of a [`Field`], stored as its coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement<'f> {
    field: &'f Field,
    coeffs: Vec<u32>,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl<'f> FieldElement<'f> {
    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn index(&self) -> u32 {
        self.field.from_coeffs(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn inv(&self) -> Option<Self> {
        self.field.inv(self.index()).map(|i| FieldElement { field: self.field, coeffs: self.field.coeffs(i) })
    }

    /// Multiplication by a scalar of the prime subfield.
    pub fn scale(&self, c: u32) -> Self {
        let p = self.field.characteristic as u64;
        let coeffs = self.coeffs.iter().map(|&x| ((x as u64 * c as u64) % p) as u32).collect();
        FieldElement { field: self.field, coeffs }
    }

    fn lift(&self, index: u32) -> Self {
        FieldElement { field: self.field, coeffs: self.field.coeffs(index) }
    }
}

impl<'f> Add for &FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn add(self, rhs: Self) -> FieldElement<'f> {
        self.lift(self.field.add(self.index(), rhs.index()))
    }
}

impl<'f> Sub for &FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn sub(self, rhs: Self) -> FieldElement<'f> {
        self.lift(self.field.sub(self.index(), rhs.index()))
    }
}

impl<'f> Mul for &FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn mul(self, rhs: Self) -> FieldElement<'f> {
        self.lift(self.field.mul(self.index(), rhs.index()))
    }
}

impl<'f> Neg for &FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> FieldElement<'f> {
        self.lift(self.field.neg(self.index()))
    }
}

/// The `F_q`-linear expansion of an element of `F_{q^m}` into `F_q^m`
/// (polynomial basis).
pub fn gamma_expand(e: &FieldElement<'_>) -> Vec<u32> {
    e.coeffs.clone()
}

/// Inverse of [`gamma_expand`].
pub fn gamma_contract<'f>(field: &'f Field, v: &[u32]) -> Result<FieldElement<'f>> {
    if v.len() != field.degree || v.iter().any(|&c| c >= field.characteristic) {
        return Err(Error::param(format!("{v:?} is not a coefficient vector of {field:?}")));
    }
    Ok(FieldElement { field, coeffs: v.to_vec() })
}

/// Index-level [`gamma_expand`], used by bulk code constructions.
pub fn gamma_expand_index(field: &Field, e: u32) -> Vec<u32> {
    field.coeffs(e)
}
