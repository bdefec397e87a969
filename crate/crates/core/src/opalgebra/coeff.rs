//! Exact complex-rational scalars.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::C64;

/// Exact complex rational `re + i·im`.
pub type Coeff = Complex<BigRational>;

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact rational value of a finite `f64` (binary expansion, no rounding).
pub fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(|| panic!("non-finite value {x} has no exact form"))
}

pub fn real(r: BigRational) -> Coeff {
    Complex::new(r, BigRational::zero())
}

pub fn imag(r: BigRational) -> Coeff {
    Complex::new(BigRational::zero(), r)
}

pub fn c_int(n: i64) -> Coeff {
    real(int(n))
}

pub fn c_one() -> Coeff {
    Coeff::one()
}

/// `i^k` for any integer `k`.
pub fn i_pow(k: i64) -> Coeff {
    match k.rem_euclid(4) {
        0 => c_int(1),
        1 => imag(int(1)),
        2 => c_int(-1),
        _ => imag(int(-1)),
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // ratios of huge integers: scale both down before converting
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn to_c64(c: &Coeff) -> C64 {
    C64::new(to_f64(&c.re), to_f64(&c.im))
}

pub fn from_c64(c: C64) -> Coeff {
    Complex::new(exact(c.re), exact(c.im))
}

pub fn is_real(c: &Coeff) -> bool {
    c.im.is_zero()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `(2m − 1)!!` with `(−1)!! = 1`.
pub fn odd_double_factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1))
}

pub fn pow(c: &Coeff, n: u32) -> Coeff {
    let mut acc = Coeff::one();
    for _ in 0..n {
        acc *= c.clone();
    }
    acc
}

pub fn rational_pow(r: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..n {
        acc *= r;
    }
    acc
}

/// Canonical text form: `3/2`, `-i`, `1/2i`, `(1+2i)`.
pub fn render(c: &Coeff) -> String {
    fn r(x: &BigRational) -> String {
        if x.is_integer() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => r(&c.re),
        (true, false) => {
            if c.im.abs().is_one() {
                if c.im.is_negative() { "-i".into() } else { "i".into() }
            } else {
                format!("{}i", r(&c.im))
            }
        }
        (false, false) => {
            let sign = if c.im.is_negative() { "-" } else { "+" };
            let mag = c.im.abs();
            let im = if mag.is_one() { "i".to_string() } else { format!("{}i", r(&mag)) };
            format!("({}{}{})", r(&c.re), sign, im)
        }
    }
}
