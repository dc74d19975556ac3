//! Exact coefficient fields: the rationals and prime fields `GF(p)`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default characteristic for performance runs.
pub const DEFAULT_PRIME: u64 = 32003;

/// A field with exact arithmetic. Elements are plain values; every operation
/// goes through the field object, which carries any runtime parameters (the
/// modulus for `GF(p)`).
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    /// 0 for the rationals, `p` for `GF(p)`.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// The unit `u` such that `u * (c_1, .., c_k)` is the canonical
    /// representative of the coefficient vector (leading coefficient first):
    /// monic over `GF(p)`, primitive integral with positive leading
    /// coefficient over the rationals. `coeffs` must be nonempty.
    fn normalizer<'a, I>(&self, coeffs: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a;

    /// Sign and magnitude for printing: `(negative, |a|)`. The magnitude is an
    /// integer literal or `n/d`.
    fn signed_repr(&self, a: &Self::Elem) -> (bool, String);

    /// Human-readable name, `QQ` or `GF(p)`.
    fn name(&self) -> String;

    fn spec(&self) -> FieldSpec;
}

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn validate(self) -> Result<Self> {
        if let FieldSpec::Prime(p) = self {
            PrimeField::new(p)?;
        }
        Ok(self)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "QQ" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .or_else(|| s.strip_prefix("ZZ/("))
            .and_then(|r| r.strip_suffix(')'));
        match inner.map(|p| p.trim().parse::<u64>()) {
            Some(Ok(p)) => FieldSpec::Prime(p).validate(),
            _ => Err(Error::InvalidField(s.to_string())),
        }
    }
}

/// The field of rational numbers with arbitrary-precision coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn normalizer<'a, I>(&self, coeffs: I) -> BigRational
    where
        I: IntoIterator<Item = &'a BigRational>,
    {
        let mut it = coeffs.into_iter();
        let lead = it.next().expect("normalizer of empty coefficient list");
        let mut num_gcd = lead.numer().abs();
        let mut den_lcm = lead.denom().clone();
        for c in it {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let u = BigRational::new(den_lcm, num_gcd);
        if lead.is_negative() {
            -u
        } else {
            u
        }
    }

    fn signed_repr(&self, a: &BigRational) -> (bool, String) {
        let abs = a.abs();
        let s = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        (a.is_negative(), s)
    }

    fn name(&self) -> String {
        "QQ".into()
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
}

/// The prime field `GF(p)` for an odd prime `p < 2^31`; elements are kept in
/// `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("GF({p}): need an odd prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }

    fn normalizer<'a, I>(&self, coeffs: I) -> u64
    where
        I: IntoIterator<Item = &'a u64>,
    {
        let lead = coeffs.into_iter().next().expect("normalizer of empty coefficient list");
        self.inv(lead)
    }

    fn signed_repr(&self, a: &u64) -> (bool, String) {
        // symmetric residues, so -1 prints as -1 rather than p-1
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }

    fn name(&self) -> String {
        format!("GF({})", self.p)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &2), 0);
        assert_eq!(f.mul(&3, &f.inv(&3)), 1);
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.signed_repr(&4), (true, "1".into()));
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!("GF(32003)".parse::<FieldSpec>().is_ok());
        assert!("GF(32004)".parse::<FieldSpec>().is_err());
        assert_eq!("QQ".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
    }

    #[test]
    fn rational_normalizer_is_primitive() {
        let q = Rationals;
        let cs = [
            BigRational::new((-2).into(), 3.into()),
            BigRational::new(4.into(), 9.into()),
        ];
        let u = q.normalizer(cs.iter());
        let scaled: Vec<_> = cs.iter().map(|c| q.mul(c, &u)).collect();
        assert_eq!(scaled[0], q.from_i64(3));
        assert_eq!(scaled[1], q.from_i64(-2));
    }
}
