//! A small parser for sums `Σ c_e X^e` with coefficients written left of the
//! powers of `X`, e.g. `E21*X + 1`, `(a+1)*E12*X^2 + g^3` or `X^-2 + O(X^4)`.
//! Products are only allowed when they stay in that normal form: a constant
//! times anything, or anything times a bare power of `X`.

use std::collections::BTreeMap;

/// Where coefficients live and how identifiers resolve.
pub trait Coeffs {
    type C: Clone;
    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn is_one(&self, c: &Self::C) -> bool;
    fn add(&self, x: &Self::C, y: &Self::C) -> Self::C;
    fn neg(&self, x: &Self::C) -> Self::C;
    fn mul(&self, x: &Self::C, y: &Self::C) -> Self::C;
    fn number(&self, n: u64) -> Self::C;
    fn ident(&self, name: &str) -> Option<Self::C>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push(match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::Open,
                    _ => Tok::Close,
                });
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().map_err(|_| format!("number too large: {text}"))?));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(format!("unexpected character {c:?} at position {i}")),
        }
    }
    Ok(out)
}

/// `Σ c_e X^e` with zero coefficients removed, plus a precision if the input
/// ended in `O(X^n)`.
#[derive(Clone, Debug)]
pub struct Parsed<C> {
    pub terms: BTreeMap<i64, C>,
    pub big_o: Option<i64>,
}

struct Parser<'a, D: Coeffs> {
    toks: Vec<Tok>,
    pos: usize,
    d: &'a D,
    big_o: Option<i64>,
}

type Terms<C> = BTreeMap<i64, C>;

impl<D: Coeffs> Parser<'_, D> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(format!("expected {t:?}, found {got:?}")),
        }
    }

    fn constant(&self, c: D::C) -> Terms<D::C> {
        self.normalize([(0, c)].into_iter().collect())
    }

    fn normalize(&self, t: Terms<D::C>) -> Terms<D::C> {
        t.into_iter().filter(|(_, c)| !self.d.is_zero(c)).collect()
    }

    fn add(&self, mut x: Terms<D::C>, y: Terms<D::C>) -> Terms<D::C> {
        for (e, c) in y {
            let s = match x.get(&e) {
                Some(old) => self.d.add(old, &c),
                None => c,
            };
            x.insert(e, s);
        }
        self.normalize(x)
    }

    fn is_constant(t: &Terms<D::C>) -> bool {
        t.keys().all(|&e| e == 0)
    }

    fn x_power(&self, t: &Terms<D::C>) -> Option<i64> {
        match t.iter().collect::<Vec<_>>().as_slice() {
            [(&e, c)] if self.d.is_one(c) => Some(e),
            _ => None,
        }
    }

    fn mul(&self, x: Terms<D::C>, y: Terms<D::C>) -> Result<Terms<D::C>, String> {
        if Self::is_constant(&x) {
            let c = x.get(&0).cloned().unwrap_or_else(|| self.d.zero());
            return Ok(self.normalize(y.into_iter().map(|(e, d)| (e, self.d.mul(&c, &d))).collect()));
        }
        if let Some(e) = self.x_power(&y) {
            return Ok(x.into_iter().map(|(f, c)| (f + e, c)).collect());
        }
        if y.is_empty() {
            return Ok(Terms::new());
        }
        Err("coefficients must stand left of the powers of X".to_string())
    }

    fn expr(&mut self) -> Result<Terms<D::C>, String> {
        let mut acc = Terms::new();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            if let Some(t) = self.term()? {
                let t = if negate { t.into_iter().map(|(e, c)| (e, self.d.neg(&c))).collect() } else { t };
                acc = self.add(acc, t);
            }
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    /// `None` for an `O(X^n)` term.
    fn term(&mut self) -> Result<Option<Terms<D::C>>, String> {
        if let (Some(Tok::Ident(name)), Some(Tok::Open)) = (self.toks.get(self.pos), self.toks.get(self.pos + 1)) {
            if name == "O" {
                self.pos += 2;
                let n = self.big_o_body()?;
                self.expect(Tok::Close)?;
                self.big_o = Some(self.big_o.map_or(n, |o| o.min(n)));
                return Ok(None);
            }
        }
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Open) => {}
                _ => return Ok(Some(acc)),
            }
            let rhs = self.power()?;
            acc = self.mul(acc, rhs)?;
        }
    }

    fn big_o_body(&mut self) -> Result<i64, String> {
        match self.next() {
            Some(Tok::Ident(x)) if x == "X" => {}
            got => return Err(format!("expected X inside O(...), found {got:?}")),
        }
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            self.signed_int()
        } else {
            Ok(1)
        }
    }

    fn signed_int(&mut self) -> Result<i64, String> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Num(n)) => {
                let n = i64::try_from(n).map_err(|_| "exponent too large".to_string())?;
                Ok(if neg { -n } else { n })
            }
            got => Err(format!("expected an exponent, found {got:?}")),
        }
    }

    fn power(&mut self) -> Result<Terms<D::C>, String> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.signed_int()?;
        if let Some(f) = self.x_power(&base) {
            return Ok([(f * e, self.d.one())].into_iter().collect());
        }
        if !Self::is_constant(&base) {
            return Err("only constants and X can be raised to a power".to_string());
        }
        if e < 0 {
            return Err("negative powers are only allowed for X".to_string());
        }
        let c = base.get(&0).cloned().unwrap_or_else(|| self.d.zero());
        let mut acc = self.d.one();
        for _ in 0..e {
            acc = self.d.mul(&acc, &c);
        }
        Ok(self.constant(acc))
    }

    fn atom(&mut self) -> Result<Terms<D::C>, String> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(self.constant(self.d.number(n))),
            Some(Tok::Ident(name)) if name == "X" => Ok([(1, self.d.one())].into_iter().collect()),
            Some(Tok::Ident(name)) => {
                self.d.ident(&name).map(|c| self.constant(c)).ok_or_else(|| format!("unknown symbol {name:?}"))
            }
            Some(Tok::Open) => {
                let e = self.expr()?;
                self.expect(Tok::Close)?;
                Ok(e)
            }
            got => Err(format!("unexpected token {got:?}")),
        }
    }
}

pub fn parse<D: Coeffs>(text: &str, d: &D) -> Result<Parsed<D::C>, String> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err("empty expression".to_string());
    }
    let mut p = Parser { toks, pos: 0, d, big_o: None };
    let terms = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input after token {}", p.pos));
    }
    Ok(Parsed { terms, big_o: p.big_o })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Integers mod 7 with one named constant.
    struct Z7;

    impl Coeffs for Z7 {
        type C = u64;
        fn zero(&self) -> u64 {
            0
        }
        fn one(&self) -> u64 {
            1
        }
        fn is_zero(&self, c: &u64) -> bool {
            *c == 0
        }
        fn is_one(&self, c: &u64) -> bool {
            *c == 1
        }
        fn add(&self, x: &u64, y: &u64) -> u64 {
            (x + y) % 7
        }
        fn neg(&self, x: &u64) -> u64 {
            (7 - x) % 7
        }
        fn mul(&self, x: &u64, y: &u64) -> u64 {
            x * y % 7
        }
        fn number(&self, n: u64) -> u64 {
            n % 7
        }
        fn ident(&self, name: &str) -> Option<u64> {
            (name == "k").then_some(3)
        }
    }

    fn terms(s: &str) -> Vec<(i64, u64)> {
        parse(s, &Z7).unwrap().terms.into_iter().collect()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(terms("k*X^2 + 2X - 1"), vec![(0, 6), (1, 2), (2, 3)]);
        assert_eq!(terms("(k+1)*X^-1*X^3"), vec![(2, 4)]);
        assert_eq!(terms("k^2 X"), vec![(1, 2)]);
        assert_eq!(terms("X - X"), vec![]);
        let p = parse("X^-2 + O(X^4)", &Z7).unwrap();
        assert_eq!(p.big_o, Some(4));
        assert_eq!(p.terms.into_iter().collect::<Vec<_>>(), vec![(-2, 1)]);
    }

    #[test]
    fn rejected_inputs() {
        for bad in ["X*k", "", "k +", "(X+1)^2", "q", "1 $ 2", "k^-1"] {
            assert!(parse(bad, &Z7).is_err(), "{bad}");
        }
    }
}
