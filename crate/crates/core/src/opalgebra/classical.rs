use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::{self, exact, real, Coeff};
use super::hamiltonian::{HamiltonianKind, HamiltonianSpec};
use super::polynomial::OperatorPolynomial;
use crate::error::{Error, Result};
use crate::C64;

/// Commuting polynomial `Σ c_ab q^a p^b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassicalPolynomial {
    terms: BTreeMap<(u32, u32), Coeff>,
}

impl ClassicalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(q: u32, p: u32, c: Coeff) -> Self {
        let mut out = Self::zero();
        out.add_term(q, p, c);
        out
    }

    pub fn q() -> Self {
        Self::term(1, 0, Coeff::one())
    }

    pub fn p() -> Self {
        Self::term(0, 1, Coeff::one())
    }

    /// Read a normal-ordered operator as a commuting polynomial, ignoring
    /// any `ħ` powers.
    pub fn from_normal_ordered(op: &OperatorPolynomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in op.terms() {
            out.add_term(m.q, m.p, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, q: u32, p: u32, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((q, p)).or_insert_with(Coeff::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&(q, p));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Coeff)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.terms {
            out.add_term(a, b, x.clone() * c.clone());
        }
        out
    }

    pub fn partial_q(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in self.terms.iter().filter(|((a, _), _)| *a > 0) {
            out.add_term(a - 1, b, c.clone() * coeff::c_int(a as i64));
        }
        out
    }

    pub fn partial_p(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in self.terms.iter().filter(|((_, b), _)| *b > 0) {
            out.add_term(a, b - 1, c.clone() * coeff::c_int(b as i64));
        }
        out
    }

    pub fn evaluate(&self, q: f64, p: f64) -> C64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| coeff::to_c64(c) * q.powi(a as i32) * p.powi(b as i32))
            .sum()
    }
}

impl Add for ClassicalPolynomial {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for ((a, b), c) in rhs.terms {
            self.add_term(a, b, c);
        }
        self
    }
}

impl Mul for &ClassicalPolynomial {
    type Output = ClassicalPolynomial;

    fn mul(self, rhs: Self) -> ClassicalPolynomial {
        let mut out = ClassicalPolynomial::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term(a + c, b + d, x.clone() * y.clone());
            }
        }
        out
    }
}

/// `{F, G} = ∂F/∂q ∂G/∂p − ∂F/∂p ∂G/∂q`.
pub fn poisson_bracket(f: &ClassicalPolynomial, g: &ClassicalPolynomial) -> ClassicalPolynomial {
    let a = &f.partial_q() * &g.partial_p();
    let b = &f.partial_p() * &g.partial_q();
    a + b.scale(&coeff::c_int(-1))
}

/// Time dependence of one term of a classical flow.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeShape {
    /// `Σ c_n tⁿ/n!`
    Series(Vec<Coeff>),
    Cos(BigRational),
    Sin(BigRational),
    Cosh(BigRational),
    Sinh(BigRational),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeFunction {
    pub scale: Coeff,
    pub shape: TimeShape,
}

impl TimeFunction {
    pub fn series(coefficients: Vec<Coeff>) -> Self {
        Self {
            scale: Coeff::one(),
            shape: TimeShape::Series(coefficients),
        }
    }

    pub fn constant(c: Coeff) -> Self {
        Self::series(vec![c])
    }

    pub fn scaled(scale: Coeff, shape: TimeShape) -> Self {
        Self { scale, shape }
    }

    /// n-th derivative at `t = 0` (the coefficient of `tⁿ/n!`).
    pub fn taylor(&self, n: usize) -> Coeff {
        let rate_pow = |r: &BigRational| coeff::rational_pow(r, n as u32);
        let sign = |k: usize| if k.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
        let base = match &self.shape {
            TimeShape::Series(c) => c.get(n).cloned().unwrap_or_else(Coeff::zero),
            TimeShape::Cos(w) if n.is_multiple_of(2) => real(sign(n / 2) * rate_pow(w)),
            TimeShape::Sin(w) if n % 2 == 1 => real(sign(n / 2) * rate_pow(w)),
            TimeShape::Cosh(l) if n.is_multiple_of(2) => real(rate_pow(l)),
            TimeShape::Sinh(l) if n % 2 == 1 => real(rate_pow(l)),
            _ => Coeff::zero(),
        };
        base * self.scale.clone()
    }

    pub fn evaluate(&self, t: f64) -> C64 {
        let value = match &self.shape {
            TimeShape::Series(c) => {
                let mut w = 1.0;
                let mut acc = C64::new(0.0, 0.0);
                for (n, x) in c.iter().enumerate() {
                    if n > 0 {
                        w *= t / n as f64;
                    }
                    acc += coeff::to_c64(x) * w;
                }
                acc
            }
            TimeShape::Cos(w) => C64::from((coeff::to_f64(w) * t).cos()),
            TimeShape::Sin(w) => C64::from((coeff::to_f64(w) * t).sin()),
            TimeShape::Cosh(l) => C64::from((coeff::to_f64(l) * t).cosh()),
            TimeShape::Sinh(l) => C64::from((coeff::to_f64(l) * t).sinh()),
        };
        value * coeff::to_c64(&self.scale)
    }
}

/// `time(t) · q^q_pow p^p_pow`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowTerm {
    pub q_pow: u32,
    pub p_pow: u32,
    pub time: TimeFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowSource {
    ClosedForm,
    TaylorSeries(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowForm {
    ClosedForm,
    TaylorSeries { order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Position,
    Momentum,
}

/// Solution `(q, p) ↦ (Q(q,p,t), P(q,p,t))` of Hamilton's equations as a sum of
/// monomials in the initial values with time-dependent coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalFlow {
    q: Vec<FlowTerm>,
    p: Vec<FlowTerm>,
    source: FlowSource,
}

impl ClassicalFlow {
    pub fn source(&self) -> FlowSource {
        self.source
    }

    pub fn terms(&self, component: Component) -> &[FlowTerm] {
        match component {
            Component::Position => &self.q,
            Component::Momentum => &self.p,
        }
    }

    /// Coefficient of `tⁿ/n!` as a polynomial in the initial `(q, p)`.
    pub fn taylor_coefficient(&self, component: Component, n: usize) -> ClassicalPolynomial {
        let mut out = ClassicalPolynomial::zero();
        for term in self.terms(component) {
            out.add_term(term.q_pow, term.p_pow, term.time.taylor(n));
        }
        out
    }

    pub fn evaluate(&self, component: Component, q: f64, p: f64, t: f64) -> f64 {
        self.terms(component)
            .iter()
            .map(|term| {
                term.time.evaluate(t) * q.powi(term.q_pow as i32) * p.powi(term.p_pow as i32)
            })
            .sum::<C64>()
            .re
    }
}

fn term(q_pow: u32, p_pow: u32, time: TimeFunction) -> FlowTerm {
    FlowTerm { q_pow, p_pow, time }
}

fn closed_form(h: &HamiltonianSpec) -> Result<ClassicalFlow> {
    let series = |c: Vec<BigRational>| TimeFunction::series(c.into_iter().map(real).collect());
    let one = || TimeFunction::constant(Coeff::one());
    let zero = BigRational::zero;
    let (q, p) = match h.kind() {
        HamiltonianKind::Free { mass } => {
            let inv_m = exact(*mass).recip();
            (
                vec![term(1, 0, one()), term(0, 1, series(vec![zero(), inv_m]))],
                vec![term(0, 1, one())],
            )
        }
        HamiltonianKind::ConstantForce { mass, force } => {
            let inv_m = exact(*mass).recip();
            let f = exact(*force);
            (
                vec![
                    term(1, 0, one()),
                    term(0, 1, series(vec![zero(), inv_m.clone()])),
                    term(0, 0, series(vec![zero(), zero(), f.clone() * inv_m])),
                ],
                vec![term(0, 1, one()), term(0, 0, series(vec![zero(), f]))],
            )
        }
        HamiltonianKind::Harmonic { mass, omega } => {
            let w = exact(*omega);
            let mw = exact(*mass) * &w;
            (
                vec![
                    term(1, 0, TimeFunction::scaled(Coeff::one(), TimeShape::Cos(w.clone()))),
                    term(0, 1, TimeFunction::scaled(real(mw.recip()), TimeShape::Sin(w.clone()))),
                ],
                vec![
                    term(0, 1, TimeFunction::scaled(Coeff::one(), TimeShape::Cos(w.clone()))),
                    term(1, 0, TimeFunction::scaled(real(-mw), TimeShape::Sin(w))),
                ],
            )
        }
        HamiltonianKind::InvertedHarmonic { mass, lambda } => {
            let l = exact(*lambda);
            let ml = exact(*mass) * &l;
            (
                vec![
                    term(1, 0, TimeFunction::scaled(Coeff::one(), TimeShape::Cosh(l.clone()))),
                    term(0, 1, TimeFunction::scaled(real(ml.recip()), TimeShape::Sinh(l.clone()))),
                ],
                vec![
                    term(0, 1, TimeFunction::scaled(Coeff::one(), TimeShape::Cosh(l.clone()))),
                    term(1, 0, TimeFunction::scaled(real(ml), TimeShape::Sinh(l))),
                ],
            )
        }
        HamiltonianKind::Custom(_) => {
            return Err(Error::UnsupportedHamiltonian {
                operation: "closed-form classical flow",
                reason: "only the named quadratic Hamiltonians have closed forms".into(),
            })
        }
    };
    Ok(ClassicalFlow {
        q,
        p,
        source: FlowSource::ClosedForm,
    })
}

/// Poisson-bracket recursion `F_{n+1} = {F_n, H}` starting from `F_0 = seed`.
pub fn poisson_series(
    seed: &ClassicalPolynomial,
    h: &ClassicalPolynomial,
    order: usize,
) -> Vec<ClassicalPolynomial> {
    let mut out = vec![seed.clone()];
    for n in 0..order {
        let next = poisson_bracket(&out[n], h);
        out.push(next);
    }
    out
}

fn taylor_flow(h: &HamiltonianSpec, order: usize) -> Result<ClassicalFlow> {
    let symbol = ClassicalPolynomial::from_normal_ordered(&h.operator().classical_part()?);
    let to_terms = |series: Vec<ClassicalPolynomial>| {
        let mut collected: BTreeMap<(u32, u32), Vec<Coeff>> = BTreeMap::new();
        for (n, poly) in series.iter().enumerate() {
            for (&key, c) in poly.terms() {
                let slot = collected.entry(key).or_default();
                slot.resize(n + 1, Coeff::zero());
                slot[n] = c.clone();
            }
        }
        collected
            .into_iter()
            .map(|((a, b), c)| term(a, b, TimeFunction::series(c)))
            .collect()
    };
    Ok(ClassicalFlow {
        q: to_terms(poisson_series(&ClassicalPolynomial::q(), &symbol, order)),
        p: to_terms(poisson_series(&ClassicalPolynomial::p(), &symbol, order)),
        source: FlowSource::TaylorSeries(order),
    })
}

pub fn classical_flow(h: &HamiltonianSpec, form: FlowForm) -> Result<ClassicalFlow> {
    match form {
        FlowForm::ClosedForm => closed_form(h),
        FlowForm::TaylorSeries { order } => taylor_flow(h, order),
    }
}

#[cfg(test)]
mod tests {
    use super::super::coeff::{c_int, int, rational};
    use super::super::polynomial::Monomial;
    use super::*;

    #[test]
    fn bracket_basics() {
        let q = ClassicalPolynomial::q();
        let p = ClassicalPolynomial::p();
        assert_eq!(poisson_bracket(&q, &p), ClassicalPolynomial::term(0, 0, c_int(1)));
        assert_eq!(poisson_bracket(&p, &q), ClassicalPolynomial::term(0, 0, c_int(-1)));
    }

    #[test]
    fn free_closed_form() {
        let h = HamiltonianSpec::free(2.0, 1.0).unwrap();
        let flow = classical_flow(&h, FlowForm::ClosedForm).unwrap();
        assert_eq!(flow.taylor_coefficient(Component::Position, 0), ClassicalPolynomial::q());
        assert_eq!(
            flow.taylor_coefficient(Component::Position, 1),
            ClassicalPolynomial::term(0, 1, real(rational(1, 2)))
        );
        assert!(flow.taylor_coefficient(Component::Position, 2).is_zero());
        assert!((flow.evaluate(Component::Position, 1.0, 3.0, 2.0) - 4.0).abs() < 1e-15);
        assert!((flow.evaluate(Component::Momentum, 1.0, 3.0, 2.0) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn harmonic_closed_form_values() {
        let (m, w) = (2.0, 1.5);
        let h = HamiltonianSpec::harmonic(m, w, 1.0).unwrap();
        let flow = classical_flow(&h, FlowForm::ClosedForm).unwrap();
        let (q0, p0, t) = (0.3, -1.2, 0.7);
        let q = q0 * (w * t).cos() + p0 / (m * w) * (w * t).sin();
        assert!((flow.evaluate(Component::Position, q0, p0, t) - q).abs() < 1e-14);
        assert_eq!(flow.source(), FlowSource::ClosedForm);
    }

    #[test]
    fn inverted_taylor_matches_hyperbolic() {
        let (m, l) = (2.0, 3.0);
        let h = HamiltonianSpec::inverted_harmonic(m, l, 1.0).unwrap();
        let series = classical_flow(&h, FlowForm::TaylorSeries { order: 6 }).unwrap();
        // hyperbolic Taylor coefficients: q·λⁿ (n even), p·λⁿ/(mλ) (n odd)
        for n in 0..=6usize {
            let lam_n = coeff::rational_pow(&int(3), n as u32);
            let expected = if n % 2 == 0 {
                ClassicalPolynomial::term(1, 0, real(lam_n))
            } else {
                ClassicalPolynomial::term(0, 1, real(lam_n / int(6)))
            };
            assert_eq!(series.taylor_coefficient(Component::Position, n), expected, "n={n}");
        }
        let closed = classical_flow(&h, FlowForm::ClosedForm).unwrap();
        for n in 0..=6 {
            assert_eq!(
                closed.taylor_coefficient(Component::Position, n),
                series.taylor_coefficient(Component::Position, n)
            );
            assert_eq!(
                closed.taylor_coefficient(Component::Momentum, n),
                series.taylor_coefficient(Component::Momentum, n)
            );
        }
    }

    #[test]
    fn flows_start_at_identity() {
        for h in [
            HamiltonianSpec::free(1.0, 1.0).unwrap(),
            HamiltonianSpec::constant_force(1.0, 2.0, 1.0).unwrap(),
            HamiltonianSpec::harmonic(1.0, 2.0, 1.0).unwrap(),
            HamiltonianSpec::inverted_harmonic(1.0, 2.0, 1.0).unwrap(),
        ] {
            for form in [FlowForm::ClosedForm, FlowForm::TaylorSeries { order: 4 }] {
                let flow = classical_flow(&h, form).unwrap();
                assert_eq!(flow.taylor_coefficient(Component::Position, 0), ClassicalPolynomial::q());
                assert_eq!(flow.taylor_coefficient(Component::Momentum, 0), ClassicalPolynomial::p());
            }
        }
    }

    #[test]
    fn closed_form_rejects_custom() {
        let quartic = OperatorPolynomial::term(Monomial::new(0, 2, 0), real(rational(1, 2)))
            + OperatorPolynomial::term(Monomial::new(4, 0, 0), c_int(1));
        let h = HamiltonianSpec::custom(quartic, 1.0).unwrap();
        assert!(classical_flow(&h, FlowForm::ClosedForm).is_err());
        assert!(classical_flow(&h, FlowForm::TaylorSeries { order: 3 }).is_ok());
    }
}
