//! Exact rationals, their `"p/q"` text form, and rigorous rational
//! enclosures of the few transcendental quantities the crate compares
//! against (`ln`, `pi`, `cos(r*pi)`).

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn from_usize(p: usize) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Formats as `"p/q"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"`, `"p"`, or a finite decimal such as `"0.4"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let frac_part = Rational::new(frac_num, scale);
        let whole = Rational::from_integer(whole.abs());
        let v = whole + frac_part;
        return Ok(if negative { -v } else { v });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down both parts before converting
            let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn ceil_to_usize(r: &Rational) -> usize {
    r.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    /// Also accepts a bare JSON integer.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Text {
            Str(String),
            Int(i64),
        }
        match Text::deserialize(d)? {
            Text::Str(s) => parse_rational(&s).map_err(serde::de::Error::custom),
            Text::Int(i) => Ok(int(i)),
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            v: &[Rational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            r: &Option<Rational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Rational>, D::Error> {
            let v = Option::<String>::deserialize(d)?;
            v.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod vec_option {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &[Option<Rational>],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let strs: Vec<Option<String>> =
                v.iter().map(|r| r.as_ref().map(format_rational)).collect();
            serde::Serialize::serialize(&strs, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Option<Rational>>, D::Error> {
            let v = Vec::<Option<String>>::deserialize(d)?;
            v.iter()
                .map(|s| {
                    s.as_deref()
                        .map(parse_rational)
                        .transpose()
                        .map_err(serde::de::Error::custom)
                })
                .collect()
        }
    }
}

/// A closed rational interval known to contain some real number.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub lo: Rational,
    pub hi: Rational,
}

impl Bounds {
    pub fn exact(v: Rational) -> Self {
        Bounds {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Where `q` sits relative to the enclosed number, if the interval decides it.
    pub fn compare(&self, q: &Rational) -> Option<Ordering> {
        if q < &self.lo {
            Some(Ordering::Less)
        } else if q > &self.hi {
            Some(Ordering::Greater)
        } else if self.is_exact() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    fn neg(self) -> Self {
        Bounds {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

/// Enclosure of `atanh(z)` for `0 <= z <= 1/2` using `terms` series terms.
fn atanh_bounds(z: &Rational, terms: usize) -> Bounds {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    for j in 0..terms {
        sum += &power / from_usize(2 * j + 1);
        power *= &z2;
    }
    // tail <= z^(2K+1) / ((2K+1)(1 - z^2))
    let tail = &power / (from_usize(2 * terms + 1) * (Rational::one() - &z2));
    Bounds {
        lo: sum.clone(),
        hi: sum + tail,
    }
}

fn terms_for(bits: u32) -> usize {
    (bits as usize) / 3 + 4
}

/// Enclosure of `ln 2` with roughly `bits` bits of precision.
pub fn ln2_bounds(bits: u32) -> Bounds {
    let b = atanh_bounds(&rat(1, 3), terms_for(bits));
    Bounds {
        lo: b.lo * int(2),
        hi: b.hi * int(2),
    }
}

/// Enclosure of the natural logarithm of a positive rational.
pub fn ln_bounds(x: &Rational, bits: u32) -> Bounds {
    assert!(x.is_positive(), "ln of a non-positive number");
    if x.is_one() {
        return Bounds::exact(Rational::zero());
    }
    if x < &Rational::one() {
        return ln_bounds(&x.recip(), bits).neg();
    }
    // x = 2^m * y with 1 <= y < 2
    let mut m: usize = 0;
    let mut y = x.clone();
    let two = int(2);
    while y >= two {
        y /= &two;
        m += 1;
    }
    let bits = bits + usize::BITS - m.leading_zeros();
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let ly = atanh_bounds(&z, terms_for(bits));
    let l2 = ln2_bounds(bits);
    let mm = from_usize(m);
    Bounds {
        lo: &mm * l2.lo + ly.lo * int(2),
        hi: &mm * l2.hi + ly.hi * int(2),
    }
}

fn atan_alternating(z: &Rational, terms: usize) -> Bounds {
    // for 0 < z < 1 the series is alternating with decreasing terms
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    for j in 0..terms {
        let term = &power / from_usize(2 * j + 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &z2;
    }
    let next = &power / from_usize(2 * terms + 1);
    if terms.is_multiple_of(2) {
        Bounds {
            lo: sum.clone(),
            hi: sum + next,
        }
    } else {
        Bounds {
            lo: &sum - next,
            hi: sum,
        }
    }
}

/// Largest multiple of `2^-bits` not above `x`.
fn floor_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = Rational::from_integer(BigInt::one() << bits);
    (x * &scale).floor() / scale
}

/// Smallest multiple of `2^-bits` not below `x`.
fn ceil_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = Rational::from_integer(BigInt::one() << bits);
    (x * &scale).ceil() / scale
}

impl Bounds {
    /// Widens to dyadic endpoints so later arithmetic stays small.
    fn rounded(self, bits: u32) -> Bounds {
        Bounds {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }
}

/// Enclosure of pi via Machin's formula.
pub fn pi_bounds(bits: u32) -> Bounds {
    let terms = (bits as usize) / 4 + 4;
    let a = atan_alternating(&rat(1, 5), terms);
    let b = atan_alternating(&rat(1, 239), terms);
    Bounds {
        lo: a.lo * int(16) - b.hi * int(4),
        hi: a.hi * int(16) - b.lo * int(4),
    }
    .rounded(bits + 8)
}

/// Enclosure of `cos(t)` for `0 <= t <= 2` given an enclosure of `t`.
fn cos_of_bounds(t: &Bounds, bits: u32) -> Bounds {
    // cos is decreasing on [0, pi/2]; evaluate at both ends
    let eps = Rational::new(BigInt::one(), BigInt::one() << (bits + 8));
    let at = |x: &Rational, upper: bool| -> Rational {
        let x2 = x * x;
        let mut sum = Rational::zero();
        let mut term = Rational::one();
        let mut j = 0;
        // past j = 1 the terms decrease, so the remainder is below the next term
        while j < 2 || term > eps {
            if j % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
            term = term * &x2 / from_usize((2 * j + 1) * (2 * j + 2));
            j += 1;
        }
        if upper {
            sum + term
        } else {
            sum - term
        }
    };
    Bounds {
        lo: at(&t.hi, false),
        hi: at(&t.lo, true),
    }
    .rounded(bits + 4)
}

/// `cos(r*pi)` when it is rational (Niven's theorem: only 0, +-1/2, +-1).
fn cos_pi_exact(r: &Rational) -> Option<Rational> {
    let six_r = r * int(6);
    if !six_r.is_integer() {
        return None;
    }
    let k = six_r.to_integer().mod_floor(&BigInt::from(12)).to_i64()?;
    match k {
        0 => Some(int(1)),
        2 | 10 => Some(rat(1, 2)),
        3 | 9 => Some(int(0)),
        4 | 8 => Some(rat(-1, 2)),
        6 => Some(int(-1)),
        _ => None,
    }
}

/// Enclosure of `cos(r*pi)` for any rational `r`.
pub fn cos_pi_bounds(r: &Rational, bits: u32) -> Bounds {
    if let Some(v) = cos_pi_exact(r) {
        return Bounds::exact(v);
    }
    // reduce r into [0, 2)
    let two = int(2);
    let q = (r / &two).floor();
    let mut s = r - q * &two;
    let mut negate = false;
    if s > Rational::one() {
        s = &two - s;
    }
    if s > rat(1, 2) {
        s = Rational::one() - s;
        negate = true;
    }
    let pi = pi_bounds(bits + 4);
    let t = Bounds {
        lo: &s * pi.lo,
        hi: &s * pi.hi,
    }
    .rounded(bits + 8);
    let c = cos_of_bounds(&t, bits);
    if negate {
        c.neg()
    } else {
        c
    }
}

pub fn sin_pi_bounds(r: &Rational, bits: u32) -> Bounds {
    cos_pi_bounds(&(rat(1, 2) - r), bits)
}

/// Decides how `q` compares to a real given by a family of enclosures of
/// increasing precision. The real must be irrational or exactly enclosed.
pub fn compare_refining(q: &Rational, enclose: impl Fn(u32) -> Bounds) -> Ordering {
    let mut bits = 64;
    loop {
        if let Some(o) = enclose(bits).compare(q) {
            return o;
        }
        bits *= 2;
        assert!(bits <= 1 << 16, "comparison did not resolve");
    }
}

/// Ordering of `q` against `cos(r*pi)`.
pub fn cmp_cos_pi(q: &Rational, r: &Rational) -> Ordering {
    compare_refining(q, |bits| cos_pi_bounds(r, bits))
}
