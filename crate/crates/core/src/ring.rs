//! Exact coefficient rings: the rationals, prime fields GF(p), and Z_n.
//!
//! Scalars are kept in canonical form at all times (reduced fraction with
//! positive denominator, least non-negative residue), so equality is plain
//! structural equality everywhere.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Coefficient ring of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingSpec {
    #[serde(rename = "q")]
    Rationals,
    #[serde(rename = "gfp")]
    PrimeField { p: u64 },
    #[serde(rename = "zn")]
    Modular { n: u64 },
}

/// A canonical scalar: a reduced rational or a residue in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }
}

impl RingSpec {
    pub fn rationals() -> Self {
        RingSpec::Rationals
    }

    /// GF(p). Rejects non-prime `p` (trial division).
    pub fn prime_field(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(RingSpec::PrimeField { p })
    }

    /// Z_n for n >= 2. Composite n gives a ring with zero divisors.
    pub fn modular(n: u64) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::BadModulus(n));
        }
        Ok(RingSpec::Modular { n })
    }

    /// Re-checks the constructor invariants, for values built by deserialization.
    pub fn validate(&self) -> Result<(), Error> {
        match *self {
            RingSpec::Rationals => Ok(()),
            RingSpec::PrimeField { p } => {
                if is_prime(p) {
                    Ok(())
                } else {
                    Err(Error::NotPrime(p))
                }
            }
            RingSpec::Modular { n } => {
                if n >= 2 {
                    Ok(())
                } else {
                    Err(Error::BadModulus(n))
                }
            }
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::Rationals | RingSpec::PrimeField { .. })
    }

    pub fn modulus(&self) -> Option<u64> {
        match *self {
            RingSpec::Rationals => None,
            RingSpec::PrimeField { p } => Some(p),
            RingSpec::Modular { n } => Some(n),
        }
    }

    /// Number of elements, `None` for Q.
    pub fn size(&self) -> Option<u64> {
        self.modulus()
    }

    pub fn name(&self) -> String {
        match *self {
            RingSpec::Rationals => "Q".into(),
            RingSpec::PrimeField { p } => format!("GF({p})"),
            RingSpec::Modular { n } => format!("Z_{n}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            RingSpec::Rationals => Scalar::Rational(BigRational::zero()),
            _ => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            RingSpec::Rationals => Scalar::Rational(BigRational::one()),
            _ => Scalar::Residue(1 % self.modulus().unwrap()),
        }
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self.modulus(), x, y) {
            (None, Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Some(n), Scalar::Residue(a), Scalar::Residue(b)) => {
                Scalar::Residue(((*a as u128 + *b as u128) % n as u128) as u64)
            }
            _ => panic!("scalar does not belong to ring {}", self.name()),
        }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self.modulus(), x, y) {
            (None, Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Some(n), Scalar::Residue(a), Scalar::Residue(b)) => {
                Scalar::Residue(((*a as u128 * *b as u128) % n as u128) as u64)
            }
            _ => panic!("scalar does not belong to ring {}", self.name()),
        }
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        match (self.modulus(), x) {
            (None, Scalar::Rational(a)) => Scalar::Rational(-a),
            (Some(n), Scalar::Residue(a)) => Scalar::Residue((n - a) % n),
            _ => panic!("scalar does not belong to ring {}", self.name()),
        }
    }

    /// Multiplicative inverse; `None` for non-units.
    pub fn inv(&self, x: &Scalar) -> Option<Scalar> {
        match (self.modulus(), x) {
            (None, Scalar::Rational(a)) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(a.recip()))
                }
            }
            (Some(n), Scalar::Residue(a)) => mod_inverse(*a, n).map(Scalar::Residue),
            _ => panic!("scalar does not belong to ring {}", self.name()),
        }
    }

    pub fn is_unit(&self, x: &Scalar) -> bool {
        match (self.modulus(), x) {
            (None, Scalar::Rational(a)) => !a.is_zero(),
            (Some(n), Scalar::Residue(a)) => a.gcd(&n) == 1,
            _ => panic!("scalar does not belong to ring {}", self.name()),
        }
    }

    /// Embeds a signed integer, canonicalizing.
    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.modulus() {
            None => Scalar::Rational(BigRational::from(BigInt::from(v))),
            Some(n) => Scalar::Residue(BigInt::from(v).mod_floor(&BigInt::from(n)).try_into().unwrap()),
        }
    }

    /// Parses the decimal string form: `"a"` or `"a/b"` for Q, any integer for
    /// residue rings (reduced into `[0, n)`).
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let bad = || Error::BadScalar(s.to_string());
        let s = s.trim();
        match self.modulus() {
            None => {
                let (num, den) = match s.split_once('/') {
                    None => (s, "1"),
                    Some((n, d)) => (n, d),
                };
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Some(n) => {
                let v = BigInt::from_str(s).map_err(|_| bad())?;
                let r = v.mod_floor(&BigInt::from(n));
                Ok(Scalar::Residue(r.try_into().map_err(|_| bad())?))
            }
        }
    }

    /// Canonical string form: `"a/b"` with positive denominator (plain `"a"`
    /// when the denominator is 1), or the least non-negative residue.
    pub fn format(&self, x: &Scalar) -> String {
        match x {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue(v) => v.to_string(),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= p) {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = egcd(a as i128, n as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(n as i128) as u64)
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b).
pub(crate) fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ring_constructors_enforce_invariants() {
        assert!(RingSpec::prime_field(2).is_ok());
        assert!(RingSpec::prime_field(97).is_ok());
        assert_eq!(RingSpec::prime_field(1), Err(Error::NotPrime(1)));
        assert_eq!(RingSpec::prime_field(6), Err(Error::NotPrime(6)));
        assert_eq!(RingSpec::modular(1), Err(Error::BadModulus(1)));
        assert!(RingSpec::modular(6).is_ok());
    }

    #[test]
    fn zero_divisors_in_z6() {
        let z6 = RingSpec::modular(6).unwrap();
        let three = z6.parse("3").unwrap();
        let two = z6.parse("2").unwrap();
        assert_eq!(z6.mul(&three, &two), z6.zero());
    }

    #[test]
    fn canonical_parsing_and_formatting() {
        let q = RingSpec::rationals();
        assert_eq!(q.format(&q.parse("4/6").unwrap()), "2/3");
        assert_eq!(q.format(&q.parse("-4/-6").unwrap()), "2/3");
        assert_eq!(q.format(&q.parse("3/-6").unwrap()), "-1/2");
        assert_eq!(q.format(&q.parse("-3").unwrap()), "-3");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());

        let z6 = RingSpec::modular(6).unwrap();
        assert_eq!(z6.format(&z6.parse("-1").unwrap()), "5");
        assert_eq!(z6.format(&z6.parse("13").unwrap()), "1");
    }

    #[test]
    fn residue_units() {
        let z6 = RingSpec::modular(6).unwrap();
        assert_eq!(z6.inv(&Scalar::Residue(5)), Some(Scalar::Residue(5)));
        assert_eq!(z6.inv(&Scalar::Residue(2)), None);
        let gf7 = RingSpec::prime_field(7).unwrap();
        for a in 1..7u64 {
            let inv = gf7.inv(&Scalar::Residue(a)).unwrap();
            assert_eq!(gf7.mul(&Scalar::Residue(a), &inv), gf7.one());
        }
    }

    #[test]
    fn ring_json_round_trip() {
        for ring in [
            RingSpec::rationals(),
            RingSpec::prime_field(3).unwrap(),
            RingSpec::modular(6).unwrap(),
        ] {
            let s = serde_json::to_string(&ring).unwrap();
            let back: RingSpec = serde_json::from_str(&s).unwrap();
            assert_eq!(ring, back);
        }
        let v: RingSpec = serde_json::from_str(r#"{"kind":"gfp","p":3}"#).unwrap();
        assert_eq!(v, RingSpec::PrimeField { p: 3 });
    }

    fn rings() -> Vec<RingSpec> {
        vec![
            RingSpec::rationals(),
            RingSpec::prime_field(5).unwrap(),
            RingSpec::modular(6).unwrap(),
        ]
    }

    fn scalar_from_parts(ring: &RingSpec, num: i64, den: u64) -> Scalar {
        match ring.modulus() {
            None => Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den.max(1)))),
            Some(_) => ring.from_i64(num),
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(nums in proptest::array::uniform3(-40i64..40), dens in proptest::array::uniform3(1u64..12)) {
            for ring in rings() {
                let a = scalar_from_parts(&ring, nums[0], dens[0]);
                let b = scalar_from_parts(&ring, nums[1], dens[1]);
                let c = scalar_from_parts(&ring, nums[2], dens[2]);
                // associativity
                prop_assert_eq!(ring.add(&ring.add(&a, &b), &c), ring.add(&a, &ring.add(&b, &c)));
                prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
                // distributivity
                prop_assert_eq!(
                    ring.mul(&a, &ring.add(&b, &c)),
                    ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
                );
                // unit laws
                prop_assert_eq!(ring.mul(&a, &ring.one()), a.clone());
                prop_assert_eq!(ring.add(&a, &ring.zero()), a.clone());
                prop_assert_eq!(ring.add(&a, &ring.neg(&a)), ring.zero());
            }
        }
    }
}
