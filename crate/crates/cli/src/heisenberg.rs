use num_rational::BigRational;
use num_traits::One;
use wavop::opalgebra::coefficients::{factorial, real, render};
use wavop::opalgebra::{
    heisenberg_series, Coeff, HamiltonianKind, HamiltonianSpec, Monomial, OperatorPolynomial,
};

use crate::error::{CliError, CliResult};

/// Largest order `heisenberg_print` will expand.
pub const MAX_PRINT_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Observable {
    Q,
    P,
}

impl Observable {
    fn name(self) -> &'static str {
        match self {
            Observable::Q => "q",
            Observable::P => "p",
        }
    }

    fn operator(self) -> OperatorPolynomial {
        match self {
            Observable::Q => OperatorPolynomial::q(),
            Observable::P => OperatorPolynomial::p(),
        }
    }
}

fn power(name: &str, k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{k}")),
    }
}

fn render_term(n: usize, m: &Monomial, c: &Coeff) -> String {
    let factors: Vec<String> = [
        power("t", n as i64),
        power("q", m.q as i64),
        power("p", m.p as i64),
        power("hbar", m.hbar as i64),
    ]
    .into_iter()
    .flatten()
    .collect();
    let factors = factors.join("·");
    if factors.is_empty() {
        render(c)
    } else if c.is_one() {
        factors
    } else if (-c.clone()).is_one() {
        format!("-{factors}")
    } else {
        format!("{}·{factors}", render(c))
    }
}

/// Text form of the Taylor series of the Heisenberg-picture operator,
/// `A(t) = Σ tⁿ/n!·dⁿA/dtⁿ`, with exact coefficients.
///
/// The first line is the series itself; later lines note where it
/// terminates and any formula that differs from its commonly printed form.
pub fn heisenberg_print(h: &HamiltonianSpec, op: Observable, order: usize) -> CliResult<String> {
    if order > MAX_PRINT_ORDER {
        return Err(CliError::at(
            "order",
            format!("{order} exceeds the limit {MAX_PRINT_ORDER}"),
        ));
    }
    let series = heisenberg_series(&op.operator(), h, order)
        .map_err(|e| CliError::from_core("heisenberg", e))?;
    let mut terms = Vec::new();
    for (n, c) in series.coefficients().iter().enumerate() {
        let weight = real(BigRational::new(1.into(), factorial(n as u32)));
        for (m, coeff) in c.terms() {
            terms.push(render_term(n, m, &(coeff.clone() * weight.clone())));
        }
    }
    let mut text = format!("{}(t) = ", op.name());
    if terms.is_empty() {
        text.push('0');
    }
    for (i, term) in terms.iter().enumerate() {
        if i == 0 {
            text.push_str(term);
        } else if let Some(rest) = term.strip_prefix('-') {
            text.push_str(" - ");
            text.push_str(rest);
        } else {
            text.push_str(" + ");
            text.push_str(term);
        }
    }
    text.push('\n');
    let last = series.terminates_at();
    if last < order {
        text.push_str(&format!(
            "orders {} through {order} vanish identically\n",
            last + 1
        ));
    }
    if let (Observable::P, HamiltonianKind::ConstantForce { .. }) = (op, h.kind()) {
        text.push_str("note: the momentum drifts at rate F, giving p + F·t; a rate F/m is inconsistent with [p, H] = iħF\n");
    }
    Ok(text)
}
