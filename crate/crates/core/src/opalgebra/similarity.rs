use super::coeff::{self, Coeff};
use super::polynomial::{Monomial, OperatorPolynomial};

/// Conjugation by a Gaussian: `e^{g q̂²} f(q̂, p̂) e^{−g q̂²} = f(q̂, p̂ + 2iħ g q̂)`.
///
/// `g` may be complex. With `g = 1/(2q₀²)` this moves a factor
/// `e^{−q̂²/(2q₀²)}` from the right of `f` to its left.
pub fn gaussian_similarity(poly: &OperatorPolynomial, g: &Coeff) -> OperatorPolynomial {
    let shifted_p = OperatorPolynomial::p()
        + OperatorPolynomial::term(Monomial::new(1, 0, 1), coeff::imag(coeff::int(2)) * g.clone());
    let mut out = OperatorPolynomial::zero();
    for (m, c) in poly.terms() {
        let left = OperatorPolynomial::term(Monomial::new(m.q, 0, m.hbar), c.clone());
        out = out + left.product(&shifted_p.pow(m.p));
    }
    out
}
