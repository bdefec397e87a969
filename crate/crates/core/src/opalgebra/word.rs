use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::coeff::{self, Coeff};
use super::polynomial::{Monomial, OperatorPolynomial};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Q,
    P,
}

/// A product of `q̂` and `p̂` factors in the written order, with a prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorWord {
    pub prefactor: Coeff,
    pub letters: Vec<Letter>,
}

impl OperatorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self {
            prefactor: Coeff::one(),
            letters,
        }
    }

    pub fn with_prefactor(mut self, c: Coeff) -> Self {
        self.prefactor = c;
        self
    }
}

impl FromStr for OperatorWord {
    type Err = Error;

    /// Parses strings such as `"pqp"` (case-insensitive, whitespace ignored).
    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c.to_ascii_lowercase() {
                'q' => Ok(Letter::Q),
                'p' => Ok(Letter::P),
                other => Err(Error::param(format!("unknown operator letter '{other}'"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(OperatorWord::new)
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::Q => "q",
                Letter::P => "p",
            })?;
        }
        Ok(())
    }
}

/// Normal-order a word by repeatedly rewriting the leftmost `p̂q̂` into
/// `q̂p̂ − iħ`. Total, and independent of the closed-form product rule used by
/// [`OperatorPolynomial::product`].
pub fn normal_order(word: &OperatorWord) -> OperatorPolynomial {
    let mut out = OperatorPolynomial::zero();
    // (coefficient, letters, ħ power)
    let mut pending = vec![(word.prefactor.clone(), word.letters.clone(), 0i32)];
    let minus_i = coeff::i_pow(-1);
    while let Some((c, letters, h)) = pending.pop() {
        let swap_at = letters
            .windows(2)
            .position(|w| w[0] == Letter::P && w[1] == Letter::Q);
        match swap_at {
            None => {
                let q = letters.iter().filter(|&&l| l == Letter::Q).count() as u32;
                let p = letters.len() as u32 - q;
                out.add_term(Monomial::new(q, p, h), c);
            }
            Some(j) => {
                let mut swapped = letters.clone();
                swapped.swap(j, j + 1);
                let mut contracted = letters;
                contracted.drain(j..j + 2);
                pending.push((c.clone() * minus_i.clone(), contracted, h + 1));
                pending.push((c, swapped, h));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::coeff::{c_int, imag, int};
    use super::*;
    use proptest::prelude::*;

    fn m(q: u32, p: u32, h: i32, c: Coeff) -> OperatorPolynomial {
        OperatorPolynomial::term(Monomial::new(q, p, h), c)
    }

    fn order(s: &str) -> OperatorPolynomial {
        normal_order(&s.parse().unwrap())
    }

    #[test]
    fn single_swap() {
        assert_eq!(order("pq"), m(1, 1, 0, c_int(1)) + m(0, 0, 1, imag(int(-1))));
    }

    #[test]
    fn double_swap() {
        // p²q → q p² − 2iħ p
        assert_eq!(order("ppq"), m(1, 2, 0, c_int(1)) + m(0, 1, 1, imag(int(-2))));
    }

    #[test]
    fn sandwiched() {
        // p q p → q p² − iħ p
        assert_eq!(order("pqp"), m(1, 2, 0, c_int(1)) + m(0, 1, 1, imag(int(-1))));
    }

    #[test]
    fn already_ordered_and_empty() {
        assert_eq!(order("qqp"), m(2, 1, 0, c_int(1)));
        assert_eq!(order(""), OperatorPolynomial::one());
        assert!("qx".parse::<OperatorWord>().is_err());
    }

    fn word_strategy() -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(prop_oneof![Just(Letter::Q), Just(Letter::P)], 0..7)
    }

    proptest! {
        // rewriter and closed-form product rule agree
        #[test]
        fn rewriter_matches_product(a in word_strategy(), b in word_strategy()) {
            let wa = normal_order(&OperatorWord::new(a.clone()));
            let wb = normal_order(&OperatorWord::new(b.clone()));
            let joined: Vec<Letter> = a.into_iter().chain(b).collect();
            prop_assert_eq!(normal_order(&OperatorWord::new(joined)), wa.product(&wb));
        }

        // a normal-ordered word is a fixed point
        #[test]
        fn idempotent(a in word_strategy()) {
            let once = normal_order(&OperatorWord::new(a));
            for (mono, c) in once.terms() {
                let mut letters = vec![Letter::Q; mono.q as usize];
                letters.extend(std::iter::repeat_n(Letter::P, mono.p as usize));
                let again = normal_order(&OperatorWord::new(letters).with_prefactor(c.clone()))
                    .shift_hbar(mono.hbar);
                prop_assert_eq!(again, OperatorPolynomial::term(*mono, c.clone()));
            }
        }
    }
}
