//! Rational helpers on top of `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, always with the denominator (`3/1`, `-1/2`).
pub fn to_pq(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_pq(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: scale through logs
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// 2^e for any integer e.
pub fn pow2(e: i64) -> Rat {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

pub fn floor(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// The rational with the smallest denominator in the closed interval [lo, hi].
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = Rat::from_integer(floor(lo));
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rat::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

pub fn max_rat<'a>(a: &'a Rat, b: &'a Rat) -> &'a Rat {
    if a >= b {
        a
    } else {
        b
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_pq {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_pq(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Same as [`serde_pq`] for `Option<Rat>`.
pub mod serde_pq_opt {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&to_pq(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        match s {
            None => Ok(None),
            Some(s) => parse_pq(&s)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_round_trip() {
        for r in [rat(3, 1), rat(-1, 2), rat(0, 5), rat(22, -6)] {
            assert_eq!(parse_pq(&to_pq(&r)).unwrap(), r);
        }
        assert_eq!(to_pq(&rat(22, -6)), "-11/3");
        assert_eq!(parse_pq("7").unwrap(), int(7));
        assert!(parse_pq("1/0").is_none());
    }

    #[test]
    fn simplest() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(31, 100), &rat(34, 100)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-34, 100), &rat(-31, 100)), rat(-1, 3));
        assert_eq!(simplest_between(&rat(-1, 7), &rat(1, 7)), int(0));
        assert_eq!(simplest_between(&rat(5, 2), &rat(5, 2)), rat(5, 2));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-4), rat(1, 16));
        assert_eq!(pow2(0), int(1));
    }
}
