use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// A polynomial in GF(2)[D]; bit i is the coefficient of D^i.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    words: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(p: usize) -> Self {
        let mut x = Self::zero();
        x.set_coeff(p, true);
        x
    }

    pub fn from_coeffs<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        let mut x = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            if c {
                x.set_coeff(i, true);
            }
        }
        x
    }

    /// Polynomial from the low bits of `bits`.
    pub fn from_u64(bits: u64) -> Self {
        let mut x = Self { words: vec![bits] };
        x.trim();
        x
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let w = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        if value {
            if self.words.len() <= i / 64 {
                self.words.resize(i / 64 + 1, 0);
            }
            self.words[i / 64] |= 1 << (i % 64);
        } else if i / 64 < self.words.len() {
            self.words[i / 64] &= !(1 << (i % 64));
            self.trim();
        }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.degree().map_or(0, |d| d + 1)).map(|i| self.coeff(i))
    }

    pub fn terms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree().map_or(0, |d| d + 1)).filter(|&i| self.coeff(i))
    }

    /// Largest p with D^p dividing self; zero for the zero polynomial.
    pub fn trailing_zeros(&self) -> usize {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map_or(0, |(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    /// Multiplication by D^p.
    pub fn shl(&self, p: usize) -> Self {
        Self::from_coeffs((0..p).map(|_| false).chain(self.coeffs()))
    }

    /// Exact division by D^p.
    pub fn shr(&self, p: usize) -> Option<Self> {
        if !self.is_zero() && self.trailing_zeros() < p {
            return None;
        }
        Some(Self::from_coeffs(self.coeffs().skip(p)))
    }

    /// `D^w · self(D⁻¹)`; requires `deg self ≤ w`.
    pub fn reverse(&self, w: usize) -> Self {
        debug_assert!(self.degree().is_none_or(|d| d <= w));
        Self::from_coeffs((0..=w).map(|i| self.coeff(w - i)))
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let s = rd - dd;
            quo.set_coeff(s, true);
            rem = &rem + &divisor.shl(s);
        }
        (quo, rem)
    }

    pub fn rem(&self, m: &Poly) -> Poly {
        self.div_rem(m).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let t = &t0 + &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        r0.is_one().then(|| t0.rem(m))
    }

    /// Smallest-degree irreducible factor of a polynomial of positive degree.
    pub fn smallest_factor(&self) -> Option<Poly> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let mut cand = 2u64;
        loop {
            let p = Poly::from_u64(cand);
            if p.degree()? > d / 2 {
                return Some(self.clone());
            }
            if p.divides(self) {
                return Some(p);
            }
            cand += 1;
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(Poly::zero());
        }
        let mut x = Poly::zero();
        for term in s.split('+') {
            let p = match term {
                "1" => 0,
                "D" => 1,
                t if t.starts_with("D^") => t[2..]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in term {t:?}")))?,
                t => return Err(Error::Parse(format!("bad polynomial term {t:?}"))),
            };
            x.set_coeff(p, !x.coeff(p));
        }
        Ok(x)
    }
}

impl Add for &Poly {
    type Output = Poly;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.words.len().max(rhs.words.len());
        let mut words = vec![0; n];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ rhs.words.get(i).copied().unwrap_or(0);
        }
        let mut x = Poly { words };
        x.trim();
        x
    }
}

impl Mul for &Poly {
    type Output = Poly;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for i in self.terms() {
            out = &out + &rhs.shl(i);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "D".to_string(),
                i => format!("D^{i}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
