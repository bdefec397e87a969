use num_traits::Zero;

use crate::error::{Error, Result};
use crate::opalgebra::coefficients::c_int;
use crate::opalgebra::Coeff;
use crate::propagators::ExactPolynomial;

/// Largest order accepted by the brute-force evolver.
pub const MAX_RECURSIVE_ORDER: u32 = 32;

/// `(q + c·d/dq)ⁿ·1` by applying the operator `n` times to the unit
/// polynomial, with exact coefficients.
pub fn recursive_polynomial_oracle(n: u32, c: &Coeff) -> Result<ExactPolynomial> {
    if n > MAX_RECURSIVE_ORDER {
        return Err(Error::DegreeLimit {
            degree: n,
            limit: MAX_RECURSIVE_ORDER,
        });
    }
    let mut current: Vec<Coeff> = vec![c_int(1)];
    for _ in 0..n {
        let mut next = vec![Coeff::zero(); current.len() + 1];
        for (k, a) in current.iter().enumerate() {
            // q·q^k
            next[k + 1] = next[k + 1].clone() + a.clone();
            // c·d/dq q^k = c·k·q^{k−1}
            if k > 0 {
                next[k - 1] = next[k - 1].clone() + a.clone() * c.clone() * c_int(k as i64);
            }
        }
        current = next;
    }
    Ok(ExactPolynomial::new(current))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalgebra::coefficients::int;

    #[test]
    fn low_orders() {
        let c = Coeff::new(int(2), int(3));
        assert_eq!(recursive_polynomial_oracle(0, &c).unwrap().coefficients(), &[c_int(1)]);
        let p3 = recursive_polynomial_oracle(3, &c).unwrap();
        assert_eq!(p3.coefficients(), &[Coeff::zero(), c.clone() * c_int(3), Coeff::zero(), c_int(1)]);
        let p4 = recursive_polynomial_oracle(4, &c).unwrap();
        assert_eq!(p4.coefficient(2), c.clone() * c_int(6));
        assert_eq!(p4.coefficient(0), c.clone() * c.clone() * c_int(3));
    }

    #[test]
    fn order_cap() {
        assert!(recursive_polynomial_oracle(33, &c_int(1)).is_err());
    }
}
