//! Exact integer and rational helpers.

use num_rational::Ratio;

/// Exact rational used for rates and memory fractions.
pub type Rational = Ratio<u128>;

/// `n choose k`, zero when `k > n`.
pub fn choose(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    num_integer::binomial(n as u128, k as u128)
}

/// `n choose k` for a possibly negative top argument (zero when `n < k` or `n < 0`).
pub fn choose_signed(n: i64, k: usize) -> u128 {
    if n < 0 {
        0
    } else {
        choose(n as usize, k)
    }
}

pub fn ratio(num: u128, den: u128) -> Rational {
    Rational::new(num, den)
}

/// Decimal rendering with a fixed number of fractional digits.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = 10u128.pow(digits as u32);
    // round half up
    let scaled = (r.numer() * scale * 2 + r.denom()) / (r.denom() * 2);
    let int = scaled / scale;
    if digits == 0 {
        return int.to_string();
    }
    format!("{int}.{:0width$}", scaled % scale, width = digits)
}

/// Parses `a/b`, an integer, or a decimal fraction such as `0.5` into an exact value.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: u128 = n.trim().parse().ok()?;
        let d: u128 = d.trim().parse().ok()?;
        return (d != 0).then(|| ratio(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int: u128 = if int.is_empty() { 0 } else { int.parse().ok()? };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let den = 10u128.checked_pow(frac.len() as u32)?;
        let num: u128 = frac.parse().ok()?;
        return Some(ratio(int * den + num, den));
    }
    s.parse::<u128>().ok().map(Rational::from_integer)
}
