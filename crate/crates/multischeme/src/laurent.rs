//! Exact rationals, sparse multivariate Laurent polynomials and exponent monoids.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent of a Laurent monomial, one entry per ambient variable.
pub type ExponentVector = Vec<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact sparse Laurent polynomial over the rationals. Terms are kept in
/// lexicographic exponent order with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring operation.
pub fn lp_arith(a: &LaurentPoly, b: &LaurentPoly, op: ArithOp) -> Result<LaurentPoly> {
    if a.nvars != b.nvars {
        return Err(Error::VarCount {
            left: a.nvars,
            right: b.nvars,
        });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn monomial(c: Rational, exp: ExponentVector) -> Self {
        let mut terms = BTreeMap::new();
        let nvars = exp.len();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The monomial `x^exp` with coefficient one.
    pub fn x(exp: &[i64]) -> Self {
        Self::monomial(Rational::one(), exp.to_vec())
    }

    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::VarIndex { index, nvars });
        }
        let mut e = vec![0; nvars];
        e[index] = 1;
        Ok(Self::x(&e))
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, ExponentVector)>,
    {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::VarCount {
                    left: nvars,
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, exp: ExponentVector, c: Rational) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-tags the zero polynomial with a variable count (deserialized zeros carry none).
    pub fn with_nvars(mut self, nvars: usize) -> Result<Self> {
        if self.is_zero() {
            self.nvars = nvars;
            Ok(self)
        } else if self.nvars == nvars {
            Ok(self)
        } else {
            Err(Error::VarCount {
                left: nvars,
                right: self.nvars,
            })
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (add_exp(e, exp), v.clone()))
                .collect(),
        }
    }

    pub fn as_monomial(&self) -> Option<(&Rational, &ExponentVector)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse in the Laurent ring; exists exactly for single terms.
    pub fn inverse(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((c, e)) => Ok(Self::monomial(c.recip(), neg_exp(e))),
            None => Err(Error::NotUnit(format!("{self}"))),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        if let Some((c, e)) = self.as_monomial() {
            let exp = e.iter().map(|x| x * k).collect();
            return Ok(Self::monomial(num_traits::pow(c.clone(), k as usize), exp));
        }
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::VarIndex {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] != 0 {
                let mut f = e.clone();
                f[var] -= 1;
                out.add_term(f, c * int(e[var]));
            }
        }
        Ok(out)
    }

    /// Value at a point; fails when a negative power meets a zero coordinate.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::VarCount {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k < 0 && x.is_zero() {
                    return Err(Error::Invalid(format!(
                        "pole of {self} at the evaluation point"
                    )));
                }
                term *= num_traits::pow::Pow::pow(x, k as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn min_exponents(&self) -> Option<ExponentVector> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()
        }))
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Exact quotient `self / b` in the Laurent ring, if it exists.
    pub fn div_exact(&self, b: &LaurentPoly) -> Option<LaurentPoly> {
        if b.is_zero() || self.nvars != b.nvars {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Ok(inv) = b.inverse() {
            return Some(self * &inv);
        }
        // Shift both to polynomials with b free of monomial factors, then divide
        // by the single lex-leading term; a one-element set is a Groebner basis.
        let sa = self.min_exponents()?;
        let sb = b.min_exponents()?;
        let mut rem = self.mul_monomial(&neg_exp(&sa));
        let bp = b.mul_monomial(&neg_exp(&sb));
        let (lt_e, lt_c) = bp.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut q = Self::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lt_e).any(|(x, y)| x < y) {
                return None;
            }
            let shift: Vec<i64> = e.iter().zip(&lt_e).map(|(x, y)| x - y).collect();
            let factor = &c / &lt_c;
            q.add_term(shift.clone(), factor.clone());
            rem = &rem - &bp.mul_monomial(&shift).scale(&factor);
        }
        let back: Vec<i64> = sa.iter().zip(&sb).map(|(x, y)| x - y).collect();
        Some(q.mul_monomial(&back))
    }

    /// Renders with the given variable names, e.g. `-2*lambda^2*mu`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate().rev() {
            let mono = monomial_string(e, names);
            let neg = c.is_negative();
            let abs = c.abs();
            if i + 1 != self.terms.len() || neg {
                out.push_str(if neg {
                    if out.is_empty() {
                        "-"
                    } else {
                        " - "
                    }
                } else {
                    " + "
                });
            }
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&abs.to_string()),
                (false, false) => {
                    out.push_str(&abs.to_string());
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn monomial_string(e: &[i64], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &x) in e.iter().enumerate() {
        let name = names
            .get(k)
            .cloned()
            .unwrap_or_else(|| format!("x{k}"));
        match x {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{x}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

pub fn add_exp(a: &[i64], b: &[i64]) -> ExponentVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_exp(a: &[i64], b: &[i64]) -> ExponentVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_exp(a: &[i64]) -> ExponentVector {
    a.iter().map(|x| -x).collect()
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(add_exp(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl std::ops::Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl std::ops::Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exp: Vec<i64>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                coeff: format_rational(c),
                exp: e.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<TermJson> = Vec::deserialize(d)?;
        let nvars = raw.first().map(|t| t.exp.len()).unwrap_or(0);
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            terms.push((c, t.exp));
        }
        LaurentPoly::from_terms(nvars, terms).map_err(D::Error::custom)
    }
}

/// Serde adapter for a single rational stored as a `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Finitely generated submonoid of `Z^n`; its monoid algebra is a chart ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMonoid {
    generators: Vec<ExponentVector>,
}

impl ExponentMonoid {
    /// Repeated generators are dropped, keeping first occurrences.
    pub fn new(generators: Vec<ExponentVector>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidMonoid("empty generator list".into()));
        };
        let n = first.len();
        let mut gens: Vec<ExponentVector> = Vec::new();
        for g in generators {
            if g.len() != n {
                return Err(Error::InvalidMonoid(format!(
                    "generator {g:?} has length {} instead of {n}",
                    g.len()
                )));
            }
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(ExponentMonoid { generators: gens })
    }

    /// The full Laurent ring in `n` variables.
    pub fn full(n: usize) -> Self {
        let mut gens = Vec::new();
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            gens.push(e.clone());
            e[k] = -1;
            gens.push(e);
        }
        ExponentMonoid { generators: gens }
    }

    pub fn dim(&self) -> usize {
        self.generators[0].len()
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        monoid_contains(self, e)
    }

    /// True iff `x^e` is a unit of the monoid ring.
    pub fn is_unit(&self, e: &[i64]) -> bool {
        self.contains(e) && self.contains(&neg_exp(e))
    }

    pub fn contains_poly(&self, p: &LaurentPoly) -> bool {
        poly_in_ring(p, self)
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn includes(&self, other: &ExponentMonoid) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_ring(&self, other: &ExponentMonoid) -> bool {
        self.includes(other) && other.includes(self)
    }

    /// Monoid generated by `self` together with extra vectors.
    pub fn extended(&self, extra: &[ExponentVector]) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::new(gens)
    }

    /// Drops generators expressible through the remaining ones.
    pub fn minimized(&self) -> Self {
        let mut gens = self.generators.clone();
        let mut i = 0;
        while i < gens.len() {
            if gens.len() == 1 {
                break;
            }
            let mut rest = gens.clone();
            let g = rest.remove(i);
            let others = ExponentMonoid { generators: rest };
            if others.contains(&g) {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        ExponentMonoid { generators: gens }
    }
}

/// Decides whether `e` is a non-negative integer combination of the generators.
///
/// Coefficients are searched in `[0, B]` with `B` the sum of absolute values of all
/// generator and target components plus four. The last one or two generators are
/// solved for directly instead of enumerated.
pub fn monoid_contains(m: &ExponentMonoid, e: &[i64]) -> bool {
    if e.len() != m.dim() {
        return false;
    }
    if e.iter().all(|x| *x == 0) {
        return true;
    }
    let bound: i64 = m
        .generators
        .iter()
        .flat_map(|g| g.iter().map(|x| x.abs()))
        .sum::<i64>()
        + e.iter().map(|x| x.abs()).sum::<i64>()
        + 4;
    let gens: Vec<&[i64]> = m.generators.iter().map(|g| g.as_slice()).collect();
    search(&gens, e.to_vec(), bound)
}

fn search(gens: &[&[i64]], target: Vec<i64>, bound: i64) -> bool {
    if target.iter().all(|x| *x == 0) {
        return true;
    }
    match gens.len() {
        0 => false,
        1 => solve_single(gens[0], &target, bound),
        2 => solve_pair(gens[0], gens[1], &target, bound),
        _ => {
            let (g, rest) = (gens[0], &gens[1..]);
            let mut t = target;
            for _ in 0..=bound {
                if search(rest, t.clone(), bound) {
                    return true;
                }
                for (x, y) in t.iter_mut().zip(g) {
                    *x -= y;
                }
            }
            false
        }
    }
}

fn solve_single(g: &[i64], t: &[i64], bound: i64) -> bool {
    let Some(k) = g.iter().position(|x| *x != 0) else {
        return t.iter().all(|x| *x == 0);
    };
    if t[k] % g[k] != 0 {
        return false;
    }
    let c = t[k] / g[k];
    (0..=bound).contains(&c) && g.iter().zip(t).all(|(x, y)| c * x == *y)
}

fn solve_pair(g1: &[i64], g2: &[i64], t: &[i64], bound: i64) -> bool {
    let n = t.len();
    for a in 0..n {
        for b in (a + 1)..n {
            let det = g1[a] * g2[b] - g1[b] * g2[a];
            if det == 0 {
                continue;
            }
            let n1 = t[a] * g2[b] - t[b] * g2[a];
            let n2 = g1[a] * t[b] - g1[b] * t[a];
            if n1 % det != 0 || n2 % det != 0 {
                return false;
            }
            let (c1, c2) = (n1 / det, n2 / det);
            return (0..=bound).contains(&c1)
                && (0..=bound).contains(&c2)
                && (0..n).all(|k| c1 * g1[k] + c2 * g2[k] == t[k]);
        }
    }
    let mut rem = t.to_vec();
    for _ in 0..=bound {
        if solve_single(g2, &rem, bound) {
            return true;
        }
        for (x, y) in rem.iter_mut().zip(g1) {
            *x -= y;
        }
    }
    false
}

/// True iff every term of `p` has its exponent in the monoid.
pub fn poly_in_ring(p: &LaurentPoly, m: &ExponentMonoid) -> bool {
    p.terms().all(|(e, _)| m.contains(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, [i64; 2])]) -> LaurentPoly {
        LaurentPoly::from_terms(2, terms.iter().map(|(c, e)| (int(*c), e.to_vec()))).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = lp(&[(1, [1, 0]), (1, [0, 1])]);
        let b = lp(&[(1, [1, 0]), (-1, [0, 1])]);
        assert_eq!(&a * &b, lp(&[(1, [2, 0]), (-1, [0, 2])]));
        assert_eq!(&LaurentPoly::one(2) * &a, a);
        assert_eq!(&lp(&[(1, [-1, 0])]) * &lp(&[(1, [1, 1])]), lp(&[(1, [0, 1])]));
        assert!(lp_arith(&a, &LaurentPoly::one(3), ArithOp::Add).is_err());
    }

    #[test]
    fn derivative_examples() {
        let p = lp(&[(1, [2, 2])]);
        assert_eq!(p.partial_derivative(1).unwrap(), lp(&[(2, [2, 1])]));
        assert_eq!(
            lp(&[(1, [-1, 0])]).partial_derivative(0).unwrap(),
            lp(&[(-1, [-2, 0])])
        );
        assert!(lp(&[(1, [0, 1])]).partial_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn membership_examples() {
        let u2 = ExponentMonoid::new(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(!u2.contains(&[1, 0]));
        assert!(u2.contains(&[0, 0]));
        let w3 = ExponentMonoid::new(vec![vec![-1, 0], vec![1, 1]]).unwrap();
        assert!(w3.contains(&[-2, 1]));
        assert!(poly_in_ring(&lp(&[(1, [0, 3])]), &u2));
        assert!(!poly_in_ring(&lp(&[(1, [1, 0])]), &u2));
        assert!(poly_in_ring(&LaurentPoly::zero(2), &u2));
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(1, [2, 0]), (-1, [0, 2])]);
        let b = lp(&[(1, [1, 0]), (1, [0, 1])]);
        assert_eq!(a.div_exact(&b), Some(lp(&[(1, [1, 0]), (-1, [0, 1])])));
        assert_eq!(LaurentPoly::one(2).div_exact(&b), None);
        let c = lp(&[(1, [-1, 0]), (1, [0, -3])]);
        let prod = &c * &b;
        assert_eq!(prod.div_exact(&c), Some(b.clone()));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(3, 4)), "3/4");
    }

    #[test]
    fn json_form() {
        let p = lp(&[(-2, [0, 1]), (3, [1, -1])]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"[{"coeff":"-2","exp":[0,1]},{"coeff":"3","exp":[1,-1]}]"#
        );
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn minimized_drops_redundant() {
        let m = ExponentMonoid::new(vec![vec![0, 1], vec![1, 1], vec![-1, 0]]).unwrap();
        assert_eq!(m.minimized().generators(), &[vec![1, 1], vec![-1, 0]]);
    }
}
