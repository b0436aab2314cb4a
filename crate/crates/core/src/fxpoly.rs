//! Ordinary polynomials over `F`.

use std::fmt::Write;

use rand::Rng;

use crate::field::{Fe, GaloisField};

/// `Σ c_i X^i`; the top stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FPoly {
    coeffs: Vec<Fe>,
}

impl FPoly {
    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FPoly { coeffs }
    }

    pub fn zero() -> Self {
        FPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FPoly { coeffs: vec![Fe::ONE] }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(Fe::ONE, 1)
    }

    pub fn monomial(c: Fe, d: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, other: &FPoly, f: &GaloisField) -> FPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FPoly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &FPoly, f: &GaloisField) -> FPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FPoly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &GaloisField) -> FPoly {
        FPoly::from_coeffs(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe, f: &GaloisField) -> FPoly {
        FPoly::from_coeffs(self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    pub fn shift(&self, k: usize) -> FPoly {
        if self.is_zero() {
            return FPoly::zero();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        FPoly { coeffs }
    }

    pub fn mul(&self, other: &FPoly, f: &GaloisField) -> FPoly {
        if self.is_zero() || other.is_zero() {
            return FPoly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        FPoly::from_coeffs(out)
    }

    /// `(q, r)` with `self = q d + r`, `deg r < deg d`; `None` for `d = 0`.
    pub fn div_rem(&self, d: &FPoly, f: &GaloisField) -> Option<(FPoly, FPoly)> {
        let dd = d.degree()?;
        let inv = f.inv(d.lead()?).ok()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![Fe::ZERO; r.len().saturating_sub(dd)];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = f.mul(*r.last().expect("nonempty"), inv);
            let k = top - dd;
            q[k] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, di));
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Some((FPoly::from_coeffs(q), FPoly::from_coeffs(r)))
    }

    pub fn rem(&self, d: &FPoly, f: &GaloisField) -> Option<FPoly> {
        self.div_rem(d, f).map(|(_, r)| r)
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self, f: &GaloisField) -> FPoly {
        match self.lead() {
            Some(c) => self.scale(f.inv(c).expect("nonzero"), f),
            None => FPoly::zero(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FPoly, f: &GaloisField) -> FPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn divides(&self, other: &FPoly, f: &GaloisField) -> bool {
        other.rem(self, f).map_or(other.is_zero(), |r| r.is_zero())
    }

    pub fn eval(&self, x: Fe, f: &GaloisField) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.mul_add(c, acc, x))
    }

    pub fn random<R: Rng + ?Sized>(deg: usize, f: &GaloisField, rng: &mut R) -> FPoly {
        FPoly::from_coeffs((0..=deg).map(|_| f.random(rng)).collect())
    }

    pub fn format(&self, f: &GaloisField) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let cs = f.format(c);
            let wrap = if f.is_compound(c) { format!("({cs})") } else { cs };
            match (i, c == Fe::ONE) {
                (0, _) => out.push_str(&wrap),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&wrap);
                    out.push('*');
                }
            }
            match i {
                0 => {}
                1 => out.push('X'),
                _ => write!(out, "X^{i}").expect("string write"),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let f = GaloisField::extension(3, 2).unwrap();
        let mut rng = crate::random::rng(1);
        for _ in 0..100 {
            let a = FPoly::random(6, &f, &mut rng);
            let d = FPoly::random(3, &f, &mut rng);
            if d.is_zero() {
                continue;
            }
            let (q, r) = a.div_rem(&d, &f).unwrap();
            assert_eq!(q.mul(&d, &f).add(&r, &f), a);
            assert!(r.degree() < d.degree() || r.is_zero());
        }
        assert!(FPoly::x().div_rem(&FPoly::zero(), &f).is_none());
    }

    #[test]
    fn gcd_divides_both() {
        let f = GaloisField::prime(2).unwrap();
        let mut rng = crate::random::rng(2);
        for _ in 0..50 {
            let c = FPoly::random(2, &f, &mut rng);
            let a = FPoly::random(3, &f, &mut rng).mul(&c, &f);
            let b = FPoly::random(3, &f, &mut rng).mul(&c, &f);
            let g = a.gcd(&b, &f);
            if a.is_zero() && b.is_zero() {
                assert!(g.is_zero());
                continue;
            }
            assert!(g.divides(&a, &f) && g.divides(&b, &f));
            assert!(c.is_zero() || c.divides(&g, &f));
        }
    }

    #[test]
    fn format_terms() {
        let f = GaloisField::prime(2).unwrap();
        let p = FPoly::from_coeffs(vec![Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ONE]);
        assert_eq!(p.format(&f), "X^3 + X + 1");
        assert_eq!(FPoly::zero().format(&f), "0");
    }
}
