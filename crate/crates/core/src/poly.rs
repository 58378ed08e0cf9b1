//! Multivariate polynomials with exact rational coefficients.
//!
//! A single representation serves all supported coefficient domains: elements
//! of `QQ` and `ZZ` are polynomials in zero variables, elements of `QQ[x]` and
//! `QQ[x1..xn]` carry one exponent per variable. Terms are kept sorted in
//! strictly descending degrevlex order with no zero coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    exps: Vec<u16>,
}

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Mono { exps }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        Mono { exps }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div(&self, other: &Mono) -> Mono {
        Mono {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Degree-reverse-lexicographic comparison with `x1 > x2 > ... > xn`.
    pub fn cmp_degrevlex(&self, other: &Mono) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // ties: the one with the smaller exponent in the last variable where
        // they differ is larger
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

/// Polynomial as a descending-sorted term list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    pub(crate) terms: Vec<(Mono, BigRational)>,
    nvars: usize,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { terms: Vec::new(), nvars }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero(nvars)
        } else {
            Poly { terms: vec![(Mono::one(nvars), c)], nvars }
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Poly::constant(nvars, BigRational::from(BigInt::from(n)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly {
            terms: vec![(Mono::var(nvars, i), BigRational::one())],
            nvars,
        }
    }

    pub fn monomial(nvars: usize, m: Mono, c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero(nvars)
        } else {
            Poly { terms: vec![(m, c)], nvars }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&(Mono, BigRational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value, if this polynomial has degree zero.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            Some(BigRational::zero())
        } else if self.terms.len() == 1 && self.terms[0].0.is_one() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// A unit of the coefficient domain, i.e. a nonzero rational constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    fn merge(nvars: usize, mut terms: Vec<(Mono, BigRational)>) -> Poly {
        terms.sort_by(|a, b| b.0.cmp_degrevlex(&a.0));
        let mut out: Vec<(Mono, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        Poly { terms: out, nvars }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out: Vec<(Mono, BigRational)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp_degrevlex(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out, nvars: self.nvars }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            nvars: self.nvars,
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        Poly::merge(self.nvars, terms)
    }

    pub fn mul_term(&self, m: &Mono, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
            nvars: self.nvars,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            terms: self.terms.iter().map(|(m, tc)| (m.clone(), tc * c)).collect(),
            nvars: self.nvars,
        }
    }

    /// Exact division; returns `None` when `self` is not divisible by `d`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = Vec::new();
        let (dm, dc) = d.lead().unwrap();
        while let Some((rm, rc)) = rem.lead() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.div(rm);
            let qc = rc / dc;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quo.push((qm, qc));
        }
        Some(Poly::merge(self.nvars, quo))
    }

    /// Substitute rational values for all variables.
    pub fn eval(&self, vals: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = BigRational::one() / c;
                self.scale(&inv)
            }
        }
    }

    /// Render with the given variable names, in the paper's entry grammar.
    pub fn display(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push('-');
            } else {
                out.push('+');
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                if abs.is_integer() {
                    factors.push(abs.numer().to_string());
                } else {
                    factors.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for (vi, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    factors.push(vars[vi].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", vars[vi], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.display(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn degrevlex_order() {
        // over x, y, z: x > y > z and x*y > z^2? deg 2 = deg 2, last differing
        // exponent decides reversed
        let xy = Mono::from_exps(vec![1, 1, 0]);
        let z2 = Mono::from_exps(vec![0, 0, 2]);
        assert_eq!(xy.cmp_degrevlex(&z2), Ordering::Greater);
        let x = Mono::from_exps(vec![1, 0, 0]);
        let y = Mono::from_exps(vec![0, 1, 0]);
        assert_eq!(x.cmp_degrevlex(&y), Ordering::Greater);
        let x2 = Mono::from_exps(vec![2, 0, 0]);
        assert_eq!(x2.cmp_degrevlex(&xy), Ordering::Greater);
    }

    #[test]
    fn arithmetic_round_trip() {
        // (x + y)(x - y) = x^2 - y^2
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expect);
        assert_eq!(p.div_exact(&x.add(&y)), Some(x.sub(&y)));
        assert_eq!(p.div_exact(&x), None);
    }

    #[test]
    fn display_matches_entry_grammar() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).mul(&y).sub(&x.scale(&q(2))).add(&Poly::constant(2, q(1) / q(2)));
        assert_eq!(p.display(&vars), "x^2*y-2*x+1/2");
        assert_eq!(Poly::zero(2).display(&vars), "0");
        assert_eq!(Poly::from_int(2, -3).display(&vars), "-3");
    }
}
