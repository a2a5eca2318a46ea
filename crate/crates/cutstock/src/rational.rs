//! Rendering helpers for exact rationals. Reports always carry the exact
//! "p/q" form; decimals are companions, never the value of record.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Exact "p/q" rendering ("3" when the value is an integer).
pub fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation with `sig` significant digits, rounded half-up.
pub fn decimal_approx(r: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    // exponent e with 10^e <= abs < 10^(e+1)
    let ten = BigRational::from_integer(BigInt::from(10));
    let one = BigRational::from_integer(BigInt::from(1));
    let mut e: i64 = 0;
    let mut scaled = abs.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < one {
        scaled *= &ten;
        e -= 1;
    }
    // digits = round(abs * 10^k) with k chosen so digits has `sig` digits
    let mut k = sig as i64 - 1 - e;
    let mut digits = round_half_up(&scale_pow10(&abs, k));
    if digits.to_string().len() > sig {
        // rounding carried into an extra digit (e.g. 9.99 -> 10.0)
        k -= 1;
        digits = round_half_up(&scale_pow10(&abs, k));
    }
    let text = digits.to_string();
    let body = if k <= 0 {
        format!("{}{}", text, "0".repeat((-k) as usize))
    } else {
        let k = k as usize;
        let padded = if text.len() <= k {
            format!("{}{}", "0".repeat(k + 1 - text.len()), text)
        } else {
            text
        };
        let split = padded.len() - k;
        format!("{}.{}", &padded[..split], &padded[split..])
    };
    format!("{sign}{body}")
}

/// Percentage with three decimal places, e.g. "3.455".
pub fn percent_3dp(r: &BigRational) -> String {
    let pct = r * BigRational::from_integer(BigInt::from(100));
    let sign = if pct.is_negative() { "-" } else { "" };
    let milli = round_half_up(&scale_pow10(&pct.abs(), 3));
    let text = milli.to_string();
    let padded = if text.len() <= 3 {
        format!("{}{}", "0".repeat(4 - text.len()), text)
    } else {
        text
    };
    let split = padded.len() - 3;
    format!("{sign}{}.{}", &padded[..split], &padded[split..])
}

fn scale_pow10(r: &BigRational, k: i64) -> BigRational {
    let pow = BigInt::from(10).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        r * BigRational::from_integer(pow)
    } else {
        r / BigRational::from_integer(pow)
    }
}

fn round_half_up(r: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let (n, d) = (r.numer(), r.denom());
    (n * &two + d) / (d * &two)
}

/// Serializable rational: exact value plus a 6-significant-digit decimal.
#[derive(Debug, Clone, Serialize)]
pub struct RationalText {
    pub exact: String,
    pub approx: String,
}

impl RationalText {
    pub fn of(r: &BigRational) -> Self {
        RationalText {
            exact: ratio_string(r),
            approx: decimal_approx(r, 6),
        }
    }
}

impl std::fmt::Display for RationalText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (~{})", self.exact, self.approx)
    }
}
