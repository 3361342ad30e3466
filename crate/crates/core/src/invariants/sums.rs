use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactmath::{format_rational, Rational};

/// Values a linear map on formal sums can take.
pub trait Linear: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, c: &Rational, other: &Self);
    fn is_zero(&self) -> bool;
}

/// A finite rational combination of labels; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum<L: Ord> {
    terms: BTreeMap<L, Rational>,
}

impl<L: Ord> Default for FormalSum<L> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> FormalSum<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: L, c: Rational) -> Self {
        let mut s = Self::new();
        s.add_term(label, c);
        s
    }

    pub fn add_term(&mut self, label: L, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(label.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn add(&mut self, other: &FormalSum<L>) {
        for (l, c) in &other.terms {
            self.add_term(l.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> FormalSum<L> {
        let mut out = Self::new();
        for (l, x) in &self.terms {
            out.add_term(l.clone(), x * c);
        }
        out
    }

    pub fn get(&self, label: &L) -> Rational {
        self.terms.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &Rational)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn map_labels<M: Ord + Clone>(&self, f: impl Fn(&L) -> M) -> FormalSum<M> {
        let mut out = FormalSum::new();
        for (l, c) in &self.terms {
            out.add_term(f(l), c.clone());
        }
        out
    }
}

impl<L: Ord + Clone> FromIterator<(L, Rational)> for FormalSum<L> {
    fn from_iter<T: IntoIterator<Item = (L, Rational)>>(iter: T) -> Self {
        let mut s = Self::new();
        for (l, c) in iter {
            s.add_term(l, c);
        }
        s
    }
}

impl<L: Ord + Clone> Linear for FormalSum<L> {
    fn zero_like(&self) -> Self {
        Self::new()
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        for (l, x) in &other.terms {
            self.add_term(l.clone(), x * c);
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A univariate polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPolynomial {
    terms: BTreeMap<u32, Rational>,
}

impl UniPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(e as u32, Rational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn mul(&self, other: &UniPolynomial) -> UniPolynomial {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> UniPolynomial {
        (0..k).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (e, c)| acc + c * num_traits::pow(x.clone(), *e as usize))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Linear for UniPolynomial {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        for (e, x) in &other.terms {
            self.add_term(*e, x * c);
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format_rational(c),
                1 => format!("{}*x", format_rational(c)),
                _ => format!("{}*x^{e}", format_rational(c)),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn cancellation_removes_terms() {
        let mut s = FormalSum::single("a", int(2));
        s.add_term("b", rat(1, 2));
        s.add_term("a", int(-2));
        assert_eq!(s.len(), 1);
        assert_eq!(s.get(&"a"), int(0));
        assert_eq!(s.mass(), rat(1, 2));
        let mut t = s.clone();
        t.add_scaled(&int(-1), &s);
        assert!(Linear::is_zero(&t));
    }

    #[test]
    fn polynomial_arithmetic() {
        let p = UniPolynomial::from_coeffs(&[1, 1]);
        assert_eq!(p.pow(3), UniPolynomial::from_coeffs(&[1, 3, 3, 1]));
        assert_eq!(p.pow(3).eval(&int(1)), int(8));
        assert_eq!(UniPolynomial::from_coeffs(&[0, 0]).degree(), None);
        assert_eq!(p.to_string(), "1 + 1*x");
        assert!(!UniPolynomial::monomial(2, rat(1, 3)).is_integral());
    }
}
