//! Primitive multiple rings `R[t]/(t^n)` over Laurent rings and their
//! endomorphisms `Θ(φ, ε)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{ExponentMonoid, LaurentPoly};

/// `u = Σ u_i t^i` with `order` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncElement {
    nvars: usize,
    coeffs: Vec<LaurentPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    ZeroDivisor,
    Unit,
    RegularNonunit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndoKind {
    Iso,
    InjectiveOnly,
    NonInjective,
}

impl TruncElement {
    pub fn new(coeffs: Vec<LaurentPoly>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Invalid("truncated element needs order >= 1".into()));
        };
        let nvars = first.nvars();
        for c in &coeffs {
            if c.nvars() != nvars {
                return Err(Error::VarCount {
                    left: nvars,
                    right: c.nvars(),
                });
            }
        }
        Ok(TruncElement { nvars, coeffs })
    }

    pub fn zero(order: usize, nvars: usize) -> Self {
        TruncElement {
            nvars,
            coeffs: vec![LaurentPoly::zero(nvars); order],
        }
    }

    pub fn from_poly(order: usize, p: LaurentPoly) -> Self {
        let mut z = Self::zero(order, p.nvars());
        z.coeffs[0] = p;
        z
    }

    pub fn one(order: usize, nvars: usize) -> Self {
        Self::from_poly(order, LaurentPoly::one(nvars))
    }

    /// The element `t` (zero when `order == 1`).
    pub fn t(order: usize, nvars: usize) -> Self {
        let mut z = Self::zero(order, nvars);
        if order > 1 {
            z.coeffs[1] = LaurentPoly::one(nvars);
        }
        z
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &LaurentPoly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == LaurentPoly::one(self.nvars) && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `ρ`: the constant coefficient.
    pub fn constant_term(&self) -> &LaurentPoly {
        &self.coeffs[0]
    }

    /// `σ`: drops the top coefficient.
    pub fn truncate_down(&self) -> Result<Self> {
        if self.order() < 2 {
            return Err(Error::Invalid("truncate_down needs order >= 2".into()));
        }
        Ok(self.truncate_to(self.order() - 1))
    }

    /// Keeps the first `k` coefficients, padding with zeros if `k` exceeds the order.
    pub fn truncate_to(&self, k: usize) -> Self {
        let mut coeffs: Vec<LaurentPoly> = self.coeffs.iter().take(k).cloned().collect();
        while coeffs.len() < k {
            coeffs.push(LaurentPoly::zero(self.nvars));
        }
        TruncElement {
            nvars: self.nvars,
            coeffs,
        }
    }

    /// Multiplication by `t`, keeping the order.
    pub fn shift(&self) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(self.nvars)];
        coeffs.extend(self.coeffs[..self.order() - 1].iter().cloned());
        TruncElement {
            nvars: self.nvars,
            coeffs,
        }
    }

    /// `u·t` viewed in the ring of one higher order.
    pub fn times_t_lifted(&self) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(self.nvars)];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncElement {
            nvars: self.nvars,
            coeffs,
        }
    }

    /// `u/t` one order lower; requires `u_0 = 0`.
    pub fn div_t(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Invalid("element is not divisible by t".into()));
        }
        if self.order() < 2 {
            return Err(Error::Invalid("cannot divide by t in order 1".into()));
        }
        Ok(TruncElement {
            nvars: self.nvars,
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::VarCount {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        TruncElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        TruncElement {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|a| a * p).collect(),
        }
    }

    /// Truncated convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = Self::zero(n, self.nvars);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order(), self.nvars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// Zero divisor iff `u_0 = 0`, unit iff `u_0` is a unit of the chart ring.
    pub fn classify(&self, ring: &ExponentMonoid) -> Result<ElementKind> {
        for c in &self.coeffs {
            if !ring.contains_poly(c) {
                return Err(Error::OutsideRing(format!("{c}")));
            }
        }
        let u0 = &self.coeffs[0];
        if u0.is_zero() {
            return Ok(ElementKind::ZeroDivisor);
        }
        match u0.as_monomial() {
            Some((_, e)) if ring.is_unit(e) => Ok(ElementKind::Unit),
            _ => Ok(ElementKind::RegularNonunit),
        }
    }

    /// Inverse of a unit over the Laurent ring via `u_0^{-1} Σ (-w)^k`, `w = u/u_0 - 1`.
    pub fn invert_unit(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .inverse()
            .map_err(|_| Error::NotUnit(format!("constant term {}", self.coeffs[0])))?;
        let n = self.order();
        let normalized = self.scale(&inv0);
        let w = normalized.sub(&Self::one(n, self.nvars))?;
        let minus_w = w.neg();
        let mut acc = Self::one(n, self.nvars);
        let mut power = Self::one(n, self.nvars);
        for _ in 1..n {
            power = power.mul(&minus_w)?;
            acc = acc.add(&power)?;
        }
        Ok(acc.scale(&inv0))
    }

    /// `l[a·t] = Σ l_i a^i t^i`.
    pub fn bracket_subst(&self, a: &TruncElement) -> Result<Self> {
        let n = self.order();
        let a = a.truncate_to(n);
        let mut out = Self::zero(n, self.nvars);
        let mut at_pow = Self::one(n, self.nvars);
        let at = a.shift();
        for i in 0..n {
            if !self.coeffs[i].is_zero() {
                out = out.add(&at_pow.scale(&self.coeffs[i]))?;
            }
            at_pow = at_pow.mul(&at)?;
        }
        Ok(out)
    }
}

/// `Θ(φ, ε)`: `v ↦ φ(v)` on variables and `t ↦ ε·t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMorphism {
    order: usize,
    images: Vec<TruncElement>,
    epsilon: TruncElement,
}

impl RingMorphism {
    /// `images[v]` must have constant coefficient `x_v`; `epsilon` has order `n - 1`.
    pub fn new(images: Vec<TruncElement>, epsilon: TruncElement) -> Result<Self> {
        let Some(first) = images.first() else {
            return Err(Error::Invalid("morphism needs at least one variable".into()));
        };
        let order = first.order();
        let nvars = images.len();
        if order < 2 {
            return Err(Error::Invalid("morphisms need order >= 2".into()));
        }
        for (v, im) in images.iter().enumerate() {
            if im.order() != order {
                return Err(Error::OrderMismatch {
                    left: order,
                    right: im.order(),
                });
            }
            if im.constant_term() != &LaurentPoly::var(nvars, v)? {
                return Err(Error::Invalid(format!(
                    "image of variable {v} must reduce to the variable itself"
                )));
            }
        }
        if epsilon.order() != order - 1 {
            return Err(Error::OrderMismatch {
                left: order - 1,
                right: epsilon.order(),
            });
        }
        Ok(RingMorphism {
            order,
            images,
            epsilon,
        })
    }

    pub fn identity(order: usize, nvars: usize) -> Self {
        Self::chi(&TruncElement::one(order - 1, nvars), order)
    }

    /// `χ_y = Θ(id, y)`.
    pub fn chi(y: &TruncElement, order: usize) -> Self {
        let nvars = y.nvars();
        let images = (0..nvars)
            .map(|v| TruncElement::from_poly(order, LaurentPoly::var(nvars, v).expect("in range")))
            .collect();
        RingMorphism {
            order,
            images,
            epsilon: y.truncate_to(order - 1),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[TruncElement] {
        &self.images
    }

    pub fn epsilon(&self) -> &TruncElement {
        &self.epsilon
    }

    /// `φ(p)` in order `k ≤ n`, substituting the variable images monomial by monomial.
    pub fn apply_poly(&self, p: &LaurentPoly, k: usize) -> Result<TruncElement> {
        let nvars = self.nvars();
        if p.nvars() != nvars {
            return Err(Error::VarCount {
                left: nvars,
                right: p.nvars(),
            });
        }
        let mut cache: HashMap<(usize, i64), TruncElement> = HashMap::new();
        let mut out = TruncElement::zero(k, nvars);
        for (e, c) in p.terms() {
            let mut term = TruncElement::from_poly(k, LaurentPoly::constant(nvars, c.clone()));
            for (v, &ev) in e.iter().enumerate() {
                if ev == 0 {
                    continue;
                }
                let factor = match cache.get(&(v, ev)) {
                    Some(f) => f.clone(),
                    None => {
                        let base = self.images[v].truncate_to(k);
                        let base = if ev < 0 { base.invert_unit()? } else { base };
                        let f = base.pow(ev.unsigned_abs() as usize);
                        cache.insert((v, ev), f.clone());
                        f
                    }
                };
                term = term.mul(&factor)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// `Θ(Σ u_i t^i) = Σ φ(u_i) ε^i t^i`, for `u` of order at most `n`.
    pub fn apply(&self, u: &TruncElement) -> Result<TruncElement> {
        let k = u.order();
        if k > self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: k,
            });
        }
        let eps_t = self.epsilon.times_t_lifted().truncate_to(k);
        let mut out = TruncElement::zero(k, self.nvars());
        let mut power = TruncElement::one(k, self.nvars());
        for i in 0..k {
            if !u.coeff(i).is_zero() {
                let img = self.apply_poly(u.coeff(i), k)?;
                out = out.add(&img.mul(&power)?)?;
            }
            power = power.mul(&eps_t)?;
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RingMorphism) -> Result<RingMorphism> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let images = other
            .images
            .iter()
            .map(|im| self.apply(im))
            .collect::<Result<Vec<_>>>()?;
        let t_image = self.apply(&other.epsilon.times_t_lifted())?;
        RingMorphism::new(images, t_image.div_t()?)
    }

    /// iso iff `ε_0` is a unit of `ring`, injective-only iff `ε_0 ≠ 0` otherwise.
    pub fn classify_in(&self, ring: &ExponentMonoid) -> EndoKind {
        let e0 = self.epsilon.constant_term();
        if e0.is_zero() {
            return EndoKind::NonInjective;
        }
        match e0.as_monomial() {
            Some((_, e)) if ring.is_unit(e) => EndoKind::Iso,
            _ => EndoKind::InjectiveOnly,
        }
    }

    /// Classification over the ambient Laurent ring, where monomials are units.
    pub fn classify(&self) -> EndoKind {
        self.classify_in(&ExponentMonoid::full(self.nvars()))
    }

    /// Some `u` with `Θ(u) = target`, solved coefficient by coefficient; `None` if
    /// no preimage exists over the Laurent ring.
    pub fn preimage(&self, target: &TruncElement) -> Option<TruncElement> {
        let n = target.order();
        if n > self.order {
            return None;
        }
        let nvars = self.nvars();
        let e0 = self.epsilon.constant_term().clone();
        let mut u = TruncElement::zero(n, nvars);
        for k in 0..n {
            let current = self.apply(&u).ok()?;
            let diff = target.sub(&current).ok()?;
            let need = diff.coeff(k);
            if need.is_zero() {
                continue;
            }
            let denom = e0.pow(k as i64).ok()?;
            let uk = need.div_exact(&denom)?;
            u.coeffs[k] = uk;
        }
        if &self.apply(&u).ok()? == target {
            Some(u)
        } else {
            None
        }
    }

    /// Two-sided inverse of an isomorphism.
    pub fn inverse(&self) -> Result<RingMorphism> {
        let nvars = self.nvars();
        let mut images = Vec::with_capacity(nvars);
        for v in 0..nvars {
            let target = TruncElement::from_poly(self.order, LaurentPoly::var(nvars, v)?);
            images.push(
                self.preimage(&target)
                    .ok_or_else(|| Error::NotUnit("morphism is not invertible".into()))?,
            );
        }
        let t = TruncElement::t(self.order, nvars);
        let pre_t = self
            .preimage(&t)
            .ok_or_else(|| Error::NotUnit("morphism is not invertible".into()))?;
        RingMorphism::new(images, pre_t.div_t()?)
    }

    /// The map obtained from `self` after conjugating by `χ`: returns `(φ′, ε′)` with
    /// `φ′ = φ[αxt]` and `ε′ = α ε[αxt] / (1 + α μ[αxt] t)`, where `φ(x) = x + μt`.
    pub fn conjugate_chi(&self, x: &LaurentPoly, alpha: &TruncElement) -> Result<RingMorphism> {
        if !x.is_monomial() {
            return Err(Error::NotMonomial(format!("{x}")));
        }
        let n = self.order;
        let nvars = self.nvars();
        let alpha = alpha.truncate_to(n);
        if alpha.constant_term().as_monomial().is_none() {
            return Err(Error::NotUnit(format!("{}", alpha.constant_term())));
        }
        let ax = alpha.scale(x);
        let images = self
            .images
            .iter()
            .map(|l| l.bracket_subst(&ax))
            .collect::<Result<Vec<_>>>()?;
        let phi_x = self.apply_poly(x, n)?;
        let mu = phi_x
            .sub(&TruncElement::from_poly(n, x.clone()))?
            .div_t()?;
        let m = n - 1;
        let ax_low = ax.truncate_to(m);
        let alpha_low = alpha.truncate_to(m);
        let num = alpha_low.mul(&self.epsilon.bracket_subst(&ax_low)?)?;
        let den = TruncElement::one(m, nvars).add(
            &alpha_low
                .mul(&mu.bracket_subst(&ax_low)?)?
                .shift(),
        )?;
        let eps = num.mul(&den.invert_unit()?)?;
        RingMorphism::new(images, eps)
    }

    /// Checks `φ(g)` and `ε` have coefficients in `ring` for each generator `g`.
    pub fn preserves(&self, ring: &ExponentMonoid) -> bool {
        for g in ring.generators() {
            let Ok(img) = self.apply_poly(&LaurentPoly::x(g), self.order) else {
                return false;
            };
            if !img.coeffs().iter().all(|c| ring.contains_poly(c)) {
                return false;
            }
        }
        self.epsilon.coeffs().iter().all(|c| ring.contains_poly(c))
    }
}

impl Serialize for TruncElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            order: usize,
            coeffs: &'a [LaurentPoly],
        }
        Repr {
            order: self.order(),
            coeffs: &self.coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            order: usize,
            coeffs: Vec<LaurentPoly>,
        }
        let r = Repr::deserialize(d)?;
        if r.coeffs.len() != r.order {
            return Err(D::Error::custom("coeffs length differs from order"));
        }
        let nvars = r.coeffs.iter().map(|c| c.nvars()).max().unwrap_or(0);
        let coeffs = r
            .coeffs
            .into_iter()
            .map(|c| c.with_nvars(nvars))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        TruncElement::new(coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;

    fn lp(terms: &[(i64, [i64; 2])]) -> LaurentPoly {
        LaurentPoly::from_terms(2, terms.iter().map(|(c, e)| (int(*c), e.to_vec()))).unwrap()
    }

    fn el(cs: Vec<LaurentPoly>) -> TruncElement {
        TruncElement::new(cs).unwrap()
    }

    fn c(k: i64) -> LaurentPoly {
        LaurentPoly::constant(2, int(k))
    }

    #[test]
    fn multiplication_examples() {
        let a = el(vec![c(1), c(1)]);
        let b = el(vec![c(1), c(-1)]);
        assert!(a.mul(&b).unwrap().is_one());
        let t = TruncElement::t(4, 2);
        assert!(t.mul(&t.pow(3)).unwrap().is_zero());
        let l = lp(&[(1, [1, 0])]);
        let m = lp(&[(1, [0, 1])]);
        let x = el(vec![l.clone(), m.clone()]);
        let y = el(vec![m.clone(), l.clone()]);
        let expect = el(vec![&l * &m, &(&l * &l) + &(&m * &m)]);
        assert_eq!(x.mul(&y).unwrap(), expect);
    }

    #[test]
    fn element_classification() {
        let full = ExponentMonoid::full(2);
        assert_eq!(
            TruncElement::t(3, 2).classify(&full).unwrap(),
            ElementKind::ZeroDivisor
        );
        assert_eq!(
            el(vec![c(1), c(7)]).classify(&full).unwrap(),
            ElementKind::Unit
        );
        let u = el(vec![&lp(&[(1, [1, 0])]) + &c(1), c(1)]);
        assert_eq!(u.classify(&full).unwrap(), ElementKind::RegularNonunit);
        let w2 = ExponentMonoid::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(el(vec![lp(&[(1, [-1, 0])]), c(0)]).classify(&w2).is_err());
    }

    #[test]
    fn inversion_examples() {
        let u = el(vec![c(1), c(1), c(0)]);
        assert_eq!(u.invert_unit().unwrap(), el(vec![c(1), c(-1), c(1)]));
        let l = lp(&[(1, [1, 0])]);
        let m = lp(&[(1, [0, 1])]);
        let v = el(vec![l.clone(), m.clone()]);
        let inv = v.invert_unit().unwrap();
        assert_eq!(inv, el(vec![lp(&[(1, [-1, 0])]), lp(&[(-1, [-2, 1])])]));
        assert!(v.mul(&inv).unwrap().is_one());
        assert!(TruncElement::t(2, 2).invert_unit().is_err());
    }

    #[test]
    fn endomorphism_examples() {
        let id = RingMorphism::identity(3, 2);
        let u = el(vec![lp(&[(2, [1, -1])]), c(3), lp(&[(1, [0, 2])])]);
        assert_eq!(id.apply(&u).unwrap(), u);
        let y = lp(&[(1, [1, 1])]);
        let chi = RingMorphism::chi(&TruncElement::from_poly(2, y.clone()), 3);
        let t = TruncElement::t(3, 2);
        assert_eq!(chi.apply(&t).unwrap(), el(vec![c(0), y, c(0)]));
        let nil = RingMorphism::chi(&TruncElement::t(2, 2), 3);
        assert!(nil.apply(&t.pow(2)).unwrap().is_zero());
        assert_eq!(nil.classify(), EndoKind::NonInjective);
    }

    #[test]
    fn endo_classification() {
        let l = lp(&[(1, [1, 0])]);
        let iso = RingMorphism::chi(&TruncElement::from_poly(1, l.clone()), 2);
        assert_eq!(iso.classify(), EndoKind::Iso);
        let inj = RingMorphism::chi(&TruncElement::from_poly(1, &l + &c(1)), 2);
        assert_eq!(inj.classify(), EndoKind::InjectiveOnly);
        assert!(inj.preimage(&TruncElement::t(2, 2)).is_none());
        let inv = iso.inverse().unwrap();
        let t = TruncElement::t(2, 2);
        assert_eq!(iso.apply(&inv.apply(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn bracket_examples() {
        let l = el(vec![c(2), lp(&[(1, [1, 0])]), c(5)]);
        assert_eq!(l.bracket_subst(&TruncElement::one(3, 2)).unwrap(), l);
        let a = el(vec![lp(&[(1, [0, 1])]), c(0), c(0)]);
        let one_ct = el(vec![c(1), c(4), c(0)]);
        assert_eq!(
            one_ct.bracket_subst(&a).unwrap(),
            el(vec![c(1), lp(&[(4, [0, 1])]), c(0)])
        );
    }

    #[test]
    fn truncation_maps() {
        let u = el(vec![c(1), c(1), c(1)]);
        assert_eq!(u.truncate_down().unwrap(), el(vec![c(1), c(1)]));
        let v = el(vec![lp(&[(1, [1, 0])]), lp(&[(1, [0, 1])])]);
        assert_eq!(v.constant_term(), &lp(&[(1, [1, 0])]));
    }

    #[test]
    fn conjugation_identity_cases() {
        let y = el(vec![lp(&[(1, [0, 1])]), c(2)]);
        let chi = RingMorphism::chi(&y, 3);
        let same = chi
            .conjugate_chi(&LaurentPoly::one(2), &TruncElement::one(3, 2))
            .unwrap();
        assert_eq!(same, chi);
        let x = lp(&[(1, [1, 0])]);
        let alpha = el(vec![lp(&[(3, [0, -1])]), c(1), c(0)]);
        let conj = chi.conjugate_chi(&x, &alpha).unwrap();
        // ε[αxt] only rescales the t-coefficient of ε by α_0 x.
        let shifted = el(vec![lp(&[(1, [0, 1])]), lp(&[(6, [1, -1])])]);
        let expect = RingMorphism::chi(&alpha.truncate_to(2).mul(&shifted).unwrap(), 3);
        assert_eq!(conj, expect);
    }
}
