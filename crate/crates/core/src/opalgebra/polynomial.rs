use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::coeff::{self, Coeff};
use crate::error::{Error, Result};
use crate::C64;

/// `q̂^q p̂^p ħ^hbar` with all `q̂` to the left of all `p̂`.
///
/// Negative `ħ` powers are allowed; they appear in truncated exponentials of
/// `−iĤt/ħ`. Ordering is lexicographic on `(q, p, hbar)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: u32,
    pub p: u32,
    pub hbar: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, p: 0, hbar: 0 };

    pub fn new(q: u32, p: u32, hbar: i32) -> Self {
        Self { q, p, hbar }
    }

    pub fn degree(&self) -> u32 {
        self.q + self.p
    }
}

/// Finite sum of normal-ordered monomials with exact complex-rational
/// coefficients, under `[q̂, p̂] = iħ`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OperatorPolynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl OperatorPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn q() -> Self {
        Self::term(Monomial::new(1, 0, 0), Coeff::one())
    }

    pub fn p() -> Self {
        Self::term(Monomial::new(0, 1, 0), Coeff::one())
    }

    pub fn hbar() -> Self {
        Self::term(Monomial::new(0, 0, 1), Coeff::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Coeff::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> Coeff {
        self.terms.get(&m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `q + p` over all terms (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiply by `ħ^k`.
    pub fn shift_hbar(&self, k: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.q, m.p, m.hbar + k), c.clone()))
                .collect(),
        }
    }

    /// Normal-ordered product `self · rhs`.
    ///
    /// Uses `p̂^b q̂^c = Σ_k k!·C(b,k)·C(c,k)·(−iħ)^k q̂^{c−k} p̂^{b−k}`.
    pub fn product(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (l, lc) in &self.terms {
            for (r, rc) in &rhs.terms {
                let c = lc.clone() * rc.clone();
                for k in 0..=l.p.min(r.q) {
                    let weight = coeff::factorial(k)
                        * coeff::binomial(l.p, k)
                        * coeff::binomial(r.q, k);
                    let factor = coeff::i_pow(-(k as i64))
                        * coeff::real(num_rational::BigRational::from_integer(weight));
                    out.add_term(
                        Monomial::new(l.q + r.q - k, l.p + r.p - k, l.hbar + r.hbar + k as i32),
                        c.clone() * factor,
                    );
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.product(self))
    }

    /// Formal adjoint: conjugate coefficients, reverse each word, re-order.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let reversed = Self::term(Monomial::new(0, m.p, m.hbar), c.conj())
                .product(&Self::term(Monomial::new(m.q, 0, 0), Coeff::one()));
            out = out + reversed;
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    /// Formal partial derivative with respect to `p̂` of the normal-ordered form.
    pub fn partial_p(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.p > 0).map(|(m, c)| {
            (
                Monomial::new(m.q, m.p - 1, m.hbar),
                c.clone() * coeff::c_int(m.p as i64),
            )
        }))
    }

    /// Formal partial derivative with respect to `q̂` of the normal-ordered form.
    pub fn partial_q(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.q > 0).map(|(m, c)| {
            (
                Monomial::new(m.q - 1, m.p, m.hbar),
                c.clone() * coeff::c_int(m.q as i64),
            )
        }))
    }

    /// Drop every term carrying a positive power of `ħ`.
    ///
    /// Fails if a negative power is present, since `ħ → 0` is then singular.
    pub fn classical_part(&self) -> Result<Self> {
        if let Some(m) = self.terms.keys().find(|m| m.hbar < 0) {
            return Err(Error::Numerical(format!(
                "term with hbar^{} has no hbar -> 0 limit",
                m.hbar
            )));
        }
        Ok(Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.hbar == 0)
                .map(|(m, c)| (*m, c.clone())),
        ))
    }

    pub fn max_hbar_power(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.hbar).max()
    }

    pub fn min_hbar_power(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.hbar).min()
    }

    /// Substitute a numeric `ħ`, merging terms that differ only in their
    /// `ħ` power. Keys are `(q power, p power)`.
    pub fn numeric_terms(&self, hbar: f64) -> BTreeMap<(u32, u32), C64> {
        let mut out: BTreeMap<(u32, u32), C64> = BTreeMap::new();
        for (m, c) in &self.terms {
            *out.entry((m.q, m.p)).or_default() += coeff::to_c64(c) * hbar.powi(m.hbar);
        }
        out
    }

    /// Drop monomials containing `p̂`, i.e. act on the unit function.
    pub fn acting_on_unity(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.p == 0)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Replace `ħ^k` by the exact rational value `hbar^k`.
    pub fn substitute_hbar(&self, hbar: &num_rational::BigRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut factor = coeff::rational_pow(hbar, m.hbar.unsigned_abs());
            if m.hbar < 0 {
                factor = factor.recip();
            }
            out.add_term(Monomial::new(m.q, m.p, 0), c.clone() * coeff::real(factor));
        }
        out
    }
}

impl Add for OperatorPolynomial {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for OperatorPolynomial {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for OperatorPolynomial {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &OperatorPolynomial {
    type Output = OperatorPolynomial;

    fn mul(self, rhs: Self) -> OperatorPolynomial {
        self.product(rhs)
    }
}

/// `AB − BA`, normal-ordered.
pub fn commutator(a: &OperatorPolynomial, b: &OperatorPolynomial) -> OperatorPolynomial {
    a.product(b) - b.product(a)
}

/// Canonical rendering: terms sorted by `(q, p, ħ)` powers, factors joined
/// with `·`, e.g. `q·p - 1/2i·hbar`.
impl fmt::Display for OperatorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let term = render_term(m, c);
            if idx == 0 {
                f.write_str(&term)?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

fn power(name: &str, k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{k}")),
    }
}

pub(crate) fn render_factors(q: u32, p: u32, hbar: i32) -> Vec<String> {
    [
        power("q", q as i64),
        power("p", p as i64),
        power("hbar", hbar as i64),
    ]
    .into_iter()
    .flatten()
    .collect()
}

fn render_term(m: &Monomial, c: &Coeff) -> String {
    let factors = render_factors(m.q, m.p, m.hbar).join("·");
    if factors.is_empty() {
        return coeff::render(c);
    }
    if c.is_one() {
        factors
    } else if (-c.clone()).is_one() {
        format!("-{factors}")
    } else {
        format!("{}·{factors}", coeff::render(c))
    }
}
