//! Exact arithmetic in prime fields `Z_p` and their extensions `GF(p^k)`.
//!
//! A field is presented by a monic irreducible modulus over `Z_p`. Elements
//! are stored as a packed index `Σ c_i p^i` over the residue coefficients, so
//! they are `Copy` and cheap to hash. All arithmetic goes through a
//! [`GaloisField`] handle; for fields with at most [`TABLE_LIMIT`] elements
//! the handle precomputes full addition and multiplication tables.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

/// Fields up to this size get full lookup tables.
pub const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: usize, got: Vec<u32> },
    #[error("modulus is reducible: divisible by {divisor:?}")]
    Reducible { divisor: Vec<u32> },
    #[error("field of order {p}^{k} is too large")]
    TooLarge { p: u32, k: usize },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// Presentation data of a finite field: `GF(p^k) = Z_p[t]/(modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub k: usize,
    /// Coefficients from the constant term upwards, length `k + 1`, monic.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// `Z_p`, presented by the modulus `t`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::with_default_modulus(p, 1)
    }

    /// `GF(p^k)` with the first irreducible monic modulus in
    /// lexicographic order of its coefficients (constant term most significant
    /// last). For `GF(4)` this is `t^2 + t + 1`.
    pub fn with_default_modulus(p: u32, k: usize) -> Result<Self, FieldError> {
        check_prime(p)?;
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        check_size(p, k)?;
        if k == 1 {
            return Ok(FieldSpec { p, k, modulus: vec![0, 1] });
        }
        let count = (p as u64).pow(k as u32);
        for idx in 0..count {
            let mut modulus = digits(idx, p, k);
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            if find_divisor(p, &modulus).is_none() {
                return Ok(FieldSpec { p, k, modulus });
            }
        }
        unreachable!("irreducible polynomials of every degree exist over Z_p")
    }

    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        check_prime(p)?;
        if modulus.len() < 2 {
            return Err(FieldError::ZeroDegree);
        }
        let k = modulus.len() - 1;
        check_size(p, k)?;
        let reduced: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        if reduced[k] != 1 {
            return Err(FieldError::BadModulus { expected: k, got: modulus });
        }
        if let Some(divisor) = find_divisor(p, &reduced) {
            return Err(FieldError::Reducible { divisor });
        }
        Ok(FieldSpec { p, k, modulus: reduced })
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k as u32)
    }
}

fn check_prime(p: u32) -> Result<(), FieldError> {
    if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(FieldError::NotPrime(p));
    }
    Ok(())
}

fn check_size(p: u32, k: usize) -> Result<(), FieldError> {
    match (p as u64).checked_pow(k as u32) {
        Some(q) if q <= 1 << 24 => Ok(()),
        _ => Err(FieldError::TooLarge { p, k }),
    }
}

fn digits(mut idx: u64, p: u32, k: usize) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (idx % p as u64) as u32;
            idx /= p as u64;
            d
        })
        .collect()
}

/// Exhaustive search for a monic divisor of degree `1..=deg/2`.
fn find_divisor(p: u32, f: &[u32]) -> Option<Vec<u32>> {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, d);
            g.push(1);
            if zp::rem(p, f, &g).iter().all(|&c| c == 0) {
                return Some(g);
            }
        }
    }
    None
}

/// Dense polynomial helpers over `Z_p`, coefficients low to high.
mod zp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(p: u32, a: u32) -> u32 {
        // p is prime and small, Fermat is enough
        pow(p, a, p - 2)
    }

    pub fn pow(p: u32, mut a: u32, mut e: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        a = r as u32;
        a
    }

    pub fn rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        divrem(p, a, b).1
    }

    pub fn divrem(p: u32, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let lead_inv = inv(p, b[db]) as u64;
        let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = (r[dr] as u64 * lead_inv % p as u64) as u32;
            let shift = dr - db;
            q[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                let sub = (c as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }
}

/// A field element, as a packed coefficient index. Meaningless without the
/// [`GaloisField`] it came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed index `Σ c_i p^i`.
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({})", self.0)
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct FieldInner {
    spec: FieldSpec,
    q: u32,
    symbol: String,
    tables: Option<Tables>,
}

/// Shared handle to a finite field. Cloning is cheap; equality compares the
/// presentation.
#[derive(Clone)]
pub struct GaloisField(Arc<FieldInner>);

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.0.spec;
        if s.k == 1 {
            write!(f, "GF({})", s.p)
        } else {
            write!(f, "GF({}^{})", s.p, s.k)
        }
    }
}

impl GaloisField {
    pub fn new(spec: FieldSpec) -> Self {
        Self::with_symbol(spec, "a")
    }

    pub fn with_symbol(spec: FieldSpec, symbol: &str) -> Self {
        let q = spec.order();
        let mut inner = FieldInner { spec, q, symbol: symbol.to_string(), tables: None };
        if q <= TABLE_LIMIT {
            let tmp = GaloisField(Arc::new(FieldInner {
                spec: inner.spec.clone(),
                q,
                symbol: inner.symbol.clone(),
                tables: None,
            }));
            let mut add = vec![0; (q * q) as usize];
            let mut mul = vec![0; (q * q) as usize];
            for x in 0..q {
                for y in 0..q {
                    add[(x * q + y) as usize] = tmp.slow_add(Fe(x), Fe(y)).0;
                    mul[(x * q + y) as usize] = tmp.slow_mul(Fe(x), Fe(y)).0;
                }
            }
            let neg = (0..q).map(|x| tmp.slow_neg(Fe(x)).0).collect();
            let inv = (0..q)
                .map(|x| if x == 0 { 0 } else { tmp.slow_inv(Fe(x)).0 })
                .collect();
            inner.tables = Some(Tables { add, mul, neg, inv });
        }
        GaloisField(Arc::new(inner))
    }

    /// `Z_p`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Ok(Self::new(FieldSpec::prime(p)?))
    }

    /// `GF(p^k)` with the default modulus.
    pub fn extension(p: u32, k: usize) -> Result<Self, FieldError> {
        Ok(Self::new(FieldSpec::with_default_modulus(p, k)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> usize {
        self.0.spec.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn symbol(&self) -> &str {
        &self.0.symbol
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The class of `t`, i.e. the generator symbol. In a prime field this is
    /// `0` (the class of `t` modulo `t`).
    pub fn generator(&self) -> Fe {
        self.from_coeffs(&[0, 1])
    }

    /// Residue class of `Σ coeffs[i] t^i` modulo the field modulus.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fe {
        let p = self.characteristic();
        let c: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        let r = zp::rem(p, &zp::trim(c), &self.0.spec.modulus);
        self.pack(&r)
    }

    pub fn constant(&self, c: u32) -> Fe {
        self.from_coeffs(&[c])
    }

    /// Length-`k` coefficient list of `x`, constant term first.
    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        digits(x.0 as u64, self.characteristic(), self.degree())
    }

    pub fn element(&self, index: u32) -> Option<Fe> {
        (index < self.order()).then_some(Fe(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order()).map(Fe)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.order()))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.order()))
    }

    fn pack(&self, c: &[u32]) -> Fe {
        let p = self.characteristic();
        Fe(c.iter().rev().fold(0u32, |acc, &d| acc * p + d))
    }

    #[inline]
    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        match &self.0.tables {
            Some(t) => Fe(t.add[(x.0 * self.0.q + y.0) as usize]),
            None => self.slow_add(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Fe) -> Fe {
        match &self.0.tables {
            Some(t) => Fe(t.neg[x.0 as usize]),
            None => self.slow_neg(x),
        }
    }

    #[inline]
    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        if x.is_zero() || y.is_zero() {
            return Fe::ZERO;
        }
        match &self.0.tables {
            Some(t) => Fe(t.mul[(x.0 * self.0.q + y.0) as usize]),
            None => self.slow_mul(x, y),
        }
    }

    /// `x + y*z`
    #[inline]
    pub fn mul_add(&self, x: Fe, y: Fe, z: Fe) -> Fe {
        self.add(x, self.mul(y, z))
    }

    pub fn inv(&self, x: Fe) -> Result<Fe, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(match &self.0.tables {
            Some(t) => Fe(t.inv[x.0 as usize]),
            None => self.slow_inv(x),
        })
    }

    pub fn div(&self, x: Fe, y: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Fe, mut e: u64) -> Fe {
        let mut r = Fe::ONE;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: Fe) -> Fe {
        self.pow(x, self.characteristic() as u64)
    }

    fn slow_add(&self, x: Fe, y: Fe) -> Fe {
        let p = self.characteristic();
        let a = self.coeffs(x);
        let b = self.coeffs(y);
        let c: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % p).collect();
        self.pack(&c)
    }

    fn slow_neg(&self, x: Fe) -> Fe {
        let p = self.characteristic();
        let c: Vec<u32> = self.coeffs(x).iter().map(|u| (p - u) % p).collect();
        self.pack(&c)
    }

    fn slow_mul(&self, x: Fe, y: Fe) -> Fe {
        let p = self.characteristic();
        let prod = zp::mul(p, &zp::trim(self.coeffs(x)), &zp::trim(self.coeffs(y)));
        self.pack(&zp::rem(p, &prod, &self.0.spec.modulus))
    }

    /// Extended Euclid on the coefficient polynomial against the modulus.
    fn slow_inv(&self, x: Fe) -> Fe {
        let p = self.characteristic();
        let mut r0 = self.0.spec.modulus.clone();
        let mut r1 = zp::trim(self.coeffs(x));
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (q, r) = zp::divrem(p, &r0, &r1);
            let s2 = zp::sub(p, &s0, &zp::mul(p, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        let c = zp::inv(p, r0[0]);
        let s: Vec<u32> = s0.iter().map(|&v| (v as u64 * c as u64 % p as u64) as u32).collect();
        self.pack(&zp::rem(p, &s, &self.0.spec.modulus))
    }

    /// Renders `x` as a polynomial in the generator symbol, e.g. `a^2+a+1`.
    /// Prime-field elements print as integers.
    pub fn format(&self, x: Fe) -> String {
        let c = self.coeffs(x);
        if self.degree() == 1 {
            return c[0].to_string();
        }
        let sym = self.symbol();
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => sym.to_string(),
                _ => format!("{sym}^{i}"),
            };
            parts.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Whether `format(x)` needs parentheses when used as a factor.
    pub fn is_compound(&self, x: Fe) -> bool {
        self.coeffs(x).iter().filter(|&&c| c != 0).count() > 1
    }

    /// Parses the output of [`GaloisField::format`], plus integers, `-`
    /// signs and `*` between coefficient and power.
    pub fn parse(&self, text: &str) -> Result<Fe, FieldError> {
        let err = || FieldError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let sym = self.symbol();
        let mut total = Fe::ZERO;
        let mut rest = s.as_str();
        let mut negate = false;
        if let Some(r) = rest.strip_prefix('-') {
            negate = true;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            if term.is_empty() {
                return Err(err());
            }
            let digits_end = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let (num, tail) = term.split_at(digits_end);
            let coef = if num.is_empty() {
                1
            } else {
                num.parse::<u64>().map_err(|_| err())? % self.characteristic() as u64
            };
            let tail = tail.strip_prefix('*').unwrap_or(tail);
            let power = if tail.is_empty() {
                if num.is_empty() {
                    return Err(err());
                }
                0
            } else if let Some(pw) = tail.strip_prefix(sym) {
                if pw.is_empty() {
                    1
                } else {
                    pw.strip_prefix('^').ok_or_else(err)?.parse::<u64>().map_err(|_| err())?
                }
            } else {
                return Err(err());
            };
            let mut v = self.mul(self.constant(coef as u32), self.pow(self.generator_symbol_value(), power));
            if negate {
                v = self.neg(v);
            }
            total = self.add(total, v);
            if end == rest.len() {
                break;
            }
            negate = rest.as_bytes()[end] == b'-';
            rest = &rest[end + 1..];
        }
        Ok(total)
    }

    fn generator_symbol_value(&self) -> Fe {
        if self.degree() == 1 {
            // the symbol has no meaning in a prime field; t ≡ 0 there
            Fe::ZERO
        } else {
            self.generator()
        }
    }
}

/// A field element bundled with its field, for checked arithmetic across
/// field boundaries.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: GaloisField,
    value: Fe,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

impl FieldElement {
    pub fn new(field: &GaloisField, value: Fe) -> Self {
        FieldElement { field: field.clone(), value }
    }

    pub fn from_coeffs(field: &GaloisField, coeffs: &[u32]) -> Self {
        Self::new(field, field.from_coeffs(coeffs))
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(Self::new(&self.field, self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(Self::new(&self.field, self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same(other)?;
        Ok(Self::new(&self.field, self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(Self::new(&self.field, self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(&self.field, self.field.pow(self.value, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> GaloisField {
        GaloisField::extension(2, 2).unwrap()
    }

    #[test]
    fn f4_default_modulus_is_a2_a_1() {
        assert_eq!(f4().spec().modulus, vec![1, 1, 1]);
    }

    #[test]
    fn a_squared_is_a_plus_one() {
        let f = f4();
        let a = f.generator();
        assert_eq!(f.mul(a, a), f.from_coeffs(&[1, 1]));
        assert_eq!(f.format(f.mul(a, a)), "a+1");
    }

    #[test]
    fn unit_and_inverse_table_f4() {
        let f = f4();
        for x in f.elements() {
            assert_eq!(f.mul(x, Fe::ONE), x);
            if !x.is_zero() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
            }
        }
        // x·x⁻¹ from the multiplication table alone
        let nonzero: Vec<Fe> = f.elements().skip(1).collect();
        for &x in &nonzero {
            let hits = nonzero.iter().filter(|&&y| f.mul(x, y) == Fe::ONE).count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn zero_inverse_is_error() {
        assert_eq!(f4().inv(Fe::ZERO), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f = f4();
        let g = GaloisField::extension(2, 3).unwrap();
        let x = FieldElement::new(&f, f.generator());
        let y = FieldElement::new(&g, g.generator());
        assert_eq!(x.mul(&y), Err(FieldError::FieldMismatch));
        assert_eq!(x.add(&y), Err(FieldError::FieldMismatch));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t + 1)^2 over Z_2
        assert!(matches!(FieldSpec::new(2, vec![1, 0, 1]), Err(FieldError::Reducible { .. })));
        assert!(matches!(FieldSpec::new(4, vec![1, 1]), Err(FieldError::NotPrime(4))));
        assert!(matches!(FieldSpec::new(2, vec![1, 1, 0]), Err(FieldError::BadModulus { .. })));
    }

    #[test]
    fn fermat_little_theorem_small_fields() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 6), (7, 2), (3, 3)] {
            let f = GaloisField::extension(p, k).unwrap();
            let q = f.order() as u64;
            for x in f.elements().skip(1) {
                assert_eq!(f.pow(x, q - 1), Fe::ONE, "GF({p}^{k})");
            }
        }
    }

    #[test]
    fn frobenius_is_ring_endomorphism() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 6)] {
            let f = GaloisField::extension(p, k).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
                    assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
                }
            }
        }
    }

    #[test]
    fn table_free_path_matches_tables() {
        // GF(2^9) exceeds TABLE_LIMIT and uses the polynomial path
        let big = GaloisField::extension(2, 9).unwrap();
        let q = big.order() as u64;
        for i in [1u32, 2, 3, 100, 511] {
            let x = Fe(i);
            assert_eq!(big.pow(x, q - 1), Fe::ONE);
            assert_eq!(big.mul(x, big.inv(x).unwrap()), Fe::ONE);
        }
    }

    #[test]
    fn format_parse_roundtrip() {
        for (p, k) in [(2, 2), (3, 2), (5, 1), (2, 3)] {
            let f = GaloisField::extension(p, k).unwrap();
            for x in f.elements() {
                assert_eq!(f.parse(&f.format(x)).unwrap(), x);
            }
        }
        let f = f4();
        assert_eq!(f.parse("a^2").unwrap(), f.parse("a+1").unwrap());
        assert!(f.parse("b").is_err());
    }
}
