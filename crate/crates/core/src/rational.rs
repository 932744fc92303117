//! Exact rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * q(k))
}

/// Falling factorial `x (x-1) ... (x-k+1)` of an integer.
pub fn falling(x: i64, k: u32) -> Q {
    (0..k as i64).fold(Q::one(), |acc, j| acc * q(x - j))
}

pub fn binomial(n: u32, k: u32) -> Q {
    if k > n {
        return Q::zero();
    }
    falling(n as i64, k) / factorial(k)
}

/// Formats as `p/q`, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Small nonnegative integer value, if `x` is one.
pub fn as_count(x: &Q) -> Option<u64> {
    if x.is_integer() && !x.is_negative() {
        x.numer().to_u64()
    } else {
        None
    }
}

/// Serde adapter storing a rational as a `"p/q"` string.
pub mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| de::Error::custom(format!("bad rational `{s}`")))
    }
}

pub mod serde_q_vec {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).ok_or_else(|| de::Error::custom(format!("bad rational `{s}`"))))
            .collect()
    }
}

pub mod serde_q_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&fmt_q(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        Ok(v.and_then(|s| parse_q(&s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(fmt_q(&qr(-3, 6)), "-1/2");
        assert_eq!(fmt_q(&q(4)), "4");
        assert_eq!(parse_q(" -1/2 "), Some(qr(-1, 2)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), q(120));
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(falling(-1, 2), q(2));
    }
}
