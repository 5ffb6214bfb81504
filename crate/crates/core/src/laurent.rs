//! Sparse Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! Values are kept in canonical form: no stored coefficient is zero, so
//! structural equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Specialization target for `q`.
pub type Rational = BigRational;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// The quantum integer `[2] = q + q^-1`.
    pub fn quantum_two() -> Self {
        Self::from_terms([(1, 1), (-1, 1)])
    }

    /// `q - q^-1`, the correction constant of the quadratic relation.
    pub fn q_minus_qinv() -> Self {
        Self::from_terms([(1, 1), (-1, -1)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest-degree term `(exponent, coefficient)`.
    pub fn lowest_term(&self) -> Option<(i64, &BigInt)> {
        self.coeffs.iter().next().map(|(e, c)| (*e, c))
    }

    /// Whether this is a unit of `Z[q, q^-1]`, i.e. `±q^e`.
    pub fn as_unit(&self) -> Option<(bool, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next().unwrap();
        if c.is_one() {
            Some((true, *e))
        } else if (-c).is_one() {
            Some((false, *e))
        } else {
            None
        }
    }

    /// Multiplicative inverse, defined only for units `±q^e`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.as_unit()
            .map(|(pos, e)| Self::monomial(if pos { 1 } else { -1 }, -e))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        if q0.is_zero() {
            return Err(Error::ZeroSpecialization);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.coeffs {
            let pw = q0.pow(*e as i32);
            acc += pw * Rational::from_integer(c.clone());
        }
        Ok(acc)
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => "q".into(),
                e => format!("q^{{{e}}}"),
            };
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}{mono}"));
            }
        }
        s
    }
}

/// Ascending exponent, e.g. `q^-1 + 2 + q`, with signs folded into the joins.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = match *e {
                0 => None,
                1 => Some("q".to_string()),
                e => Some(format!("q^{e}")),
            };
            match mono {
                None => write!(f, "{mag}")?,
                Some(m) if mag.is_one() => write!(f, "{m}")?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

// JSON form: {"<exp>": <int>, ...}. Coefficients that do not fit in i64 are
// written as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let key = e.to_string();
            match c.to_i64() {
                Some(v) => map.serialize_entry(&key, &v)?,
                None => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (k, v) in raw {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent key {k:?}")))?;
            let c: BigInt = match &v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom(format!("non-integer coefficient {n}")))?,
                serde_json::Value::String(s) => s
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {s:?}")))?,
                other => return Err(D::Error::custom(format!("bad coefficient {other}"))),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }

    #[test]
    fn quantum_two_squared() {
        let two = LaurentPoly::quantum_two();
        assert_eq!(&two * &two, LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let s = &q() + &(-&q());
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
    }

    #[test]
    fn distributivity_example() {
        assert_eq!(&LaurentPoly::quantum_two() * &q(), LaurentPoly::from_terms([(2, 1), (0, 1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::q_pow(2).bar(), LaurentPoly::q_pow(-2));
        assert_eq!(LaurentPoly::quantum_two().bar(), LaurentPoly::quantum_two());
        let p = LaurentPoly::from_terms([(0, 1), (1, 2)]);
        assert_eq!(p.bar(), LaurentPoly::from_terms([(0, 1), (-1, 2)]));
    }

    #[test]
    fn eval_examples() {
        let two = Rational::from_integer(2.into());
        assert_eq!(
            LaurentPoly::quantum_two().eval(&two).unwrap(),
            Rational::new(5.into(), 2.into())
        );
        let one = Rational::one();
        assert!(LaurentPoly::q_minus_qinv().eval(&one).unwrap().is_zero());
        assert_eq!(LaurentPoly::q().eval(&Rational::zero()), Err(Error::ZeroSpecialization));
    }

    #[test]
    fn repeated_exponents_collapse() {
        // q^2 + 2q^2 is stored as the single term 3q^2.
        let p = LaurentPoly::from_terms([(2, 1), (2, 2)]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(2), BigInt::from(3));
    }

    #[test]
    fn display_ascending() {
        let p = LaurentPoly::from_terms([(1, 1), (0, 2), (-1, 1)]);
        assert_eq!(p.to_string(), "q^-1 + 2 + q");
        assert_eq!(LaurentPoly::q_minus_qinv().bar().to_string(), "q^-1 - q");
        assert_eq!(LaurentPoly::monomial(-3, 4).to_string(), "-3*q^4");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_with_big_coefficient() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = &LaurentPoly::monomial(big, -3) + &LaurentPoly::monomial(7, 2);
        let s = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let z: LaurentPoly = serde_json::from_str(r#"{"1": 0}"#).unwrap();
        assert!(z.is_zero());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-8i64..=8, -20i64..=20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_involutive_homomorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), num in 1i64..9, den in 1i64..9) {
            let q0 = Rational::new(num.into(), den.into());
            let lhs = (&a * &b).eval(&q0).unwrap();
            let rhs = a.eval(&q0).unwrap() * b.eval(&q0).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
