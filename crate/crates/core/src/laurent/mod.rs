//! Exact arithmetic in `Z[v, v^-1]` and its fraction field.
//!
//! [`LaurentPoly`] is the coefficient type of every Hecke algebra element and
//! module matrix in the crate. Coefficients are arbitrary precision integers
//! and values are kept in canonical form, so structural equality is equality
//! of polynomials.

mod matrix;
mod poly;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use matrix::{
    invert_rational, nullspace, rf_invert_matrix, Matrix, Ring, SparseMatrix, SparseVec,
};
pub use rational::RationalFunction;

/// An element of `Z[v, v^-1]`.
///
/// `coeffs[i]` is the coefficient of `v^(min_deg + i)`. The first and last
/// coefficients are nonzero; zero is the empty list with `min_deg == 0`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_deg: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    /// Builds a polynomial from a dense coefficient list, normalizing it.
    pub fn new(min_deg: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_deg, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(min_deg: i32, coeffs: &[i64]) -> Self {
        Self::new(min_deg, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^deg`.
    pub fn monomial(c: impl Into<BigInt>, deg: i32) -> Self {
        Self::new(deg, vec![c.into()])
    }

    /// The variable `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `v^-1`.
    pub fn v_inv() -> Self {
        Self::monomial(1, -1)
    }

    /// `v + v^-1`, the eigenvalue of a Kazhdan-Lusztig generator on its image.
    pub fn v_plus_v_inv() -> Self {
        Self::from_i64s(-1, &[1, 0, 1])
    }

    /// `v^-1 - v`, the linear coefficient of the quadratic relation.
    pub fn v_inv_minus_v() -> Self {
        Self::from_i64s(-1, &[1, 0, -1])
    }

    fn normalize(&mut self) {
        let trailing = self.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        self.coeffs.truncate(self.coeffs.len() - trailing);
        let leading = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading > 0 {
            self.coeffs.drain(..leading);
            self.min_deg += leading as i32;
        }
        if self.coeffs.is_empty() {
            self.min_deg = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_deg == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent; `0` for the zero polynomial.
    pub fn min_deg(&self) -> i32 {
        self.min_deg
    }

    /// Highest exponent, `None` for zero.
    pub fn max_deg(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_deg + self.coeffs.len() as i32 - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `v^deg`.
    pub fn coeff(&self, deg: i32) -> BigInt {
        self.coeff_ref(deg).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, deg: i32) -> Option<&BigInt> {
        let i = deg.checked_sub(self.min_deg)?;
        if i < 0 {
            return None;
        }
        self.coeffs.get(i as usize)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Nonzero terms as `(degree, coefficient)`, increasing in degree.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_deg + i as i32, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// The involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        match self.max_deg() {
            None => Self::zero(),
            Some(max) => LaurentPoly {
                min_deg: -max,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// Specialization at `v = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Specialization at `v = 1` as a machine integer; panics on overflow.
    pub fn eval_one_i64(&self) -> i64 {
        self.eval_one()
            .to_i64()
            .expect("specialization at v = 1 does not fit in i64")
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.min_deg, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Terms of positive degree only.
    pub fn positive_part(&self) -> Self {
        let start = (1 - self.min_deg).max(0) as usize;
        if start >= self.coeffs.len() {
            return Self::zero();
        }
        Self::new(self.min_deg + start as i32, self.coeffs[start..].to_vec())
    }

    /// True when every exponent is `>= lo`.
    pub fn degrees_at_least(&self, lo: i32) -> bool {
        self.is_zero() || self.min_deg >= lo
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Exact division; `None` if `divisor` does not divide `self` in `Z[v, v^-1]`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly::div_exact(&self.coeffs, &divisor.coeffs)?;
        Some(Self::new(self.min_deg - divisor.min_deg, q))
    }

    fn add_scaled(&mut self, other: &LaurentPoly, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if negate { -other } else { other.clone() };
            return;
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.max_deg().unwrap().max(other.max_deg().unwrap());
        let len = (hi - lo + 1) as usize;
        if self.min_deg > lo {
            let pad = (self.min_deg - lo) as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.min_deg = lo;
        }
        self.coeffs.resize(len, BigInt::zero());
        let off = (other.min_deg - lo) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if negate {
                self.coeffs[off + i] -= c;
            } else {
                self.coeffs[off + i] += c;
            }
        }
        self.normalize();
    }

    /// `self += c * other`.
    pub fn add_mul(&mut self, c: &LaurentPoly, other: &LaurentPoly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        if c.is_one() {
            self.add_scaled(other, false);
        } else {
            let prod = c * other;
            self.add_scaled(&prod, false);
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match deg {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !unit {
                        write!(f, "{abs}")?;
                    }
                    if deg == 1 {
                        write!(f, "v")?;
                    } else {
                        write!(f, "v^{deg}")?;
                    }
                }
            }
        }
        Ok(())
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

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order (by lowest degree, then coefficients); used only
/// to make collections deterministic.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.min_deg
            .cmp(&other.min_deg)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, false);
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        self.add_scaled(&rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, true);
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        self.add_scaled(&rhs, true);
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

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
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

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_deg + rhs.min_deg, out)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson<C> {
    min_deg: i64,
    coeffs: Vec<C>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_string().parse::<serde_json::Number>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::ser::Error::custom)?;
        LaurentJson {
            min_deg: i64::from(self.min_deg),
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = LaurentJson::<serde_json::Number>::deserialize(deserializer)?;
        let min_deg =
            i32::try_from(raw.min_deg).map_err(|_| D::Error::custom("min_deg out of range"))?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|n| {
                n.to_string()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("coefficient {n} is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.first().is_some_and(Zero::is_zero) || coeffs.last().is_some_and(Zero::is_zero) {
            return Err(D::Error::custom(
                "Laurent polynomial is not in canonical form",
            ));
        }
        if coeffs.is_empty() && min_deg != 0 {
            return Err(D::Error::custom("zero polynomial must have min_deg 0"));
        }
        let top = i64::from(min_deg) + coeffs.len() as i64;
        if top > i64::from(i32::MAX) {
            return Err(D::Error::custom("degree out of range"));
        }
        Ok(LaurentPoly { min_deg, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(min: i32, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(LaurentPoly::v() + LaurentPoly::v_inv(), lp(-1, &[1, 0, 1]));
        let p = lp(-2, &[3, 0, -1]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
        // cancellation must restore canonical form
        let s = LaurentPoly::v_plus_v_inv() + (-LaurentPoly::v());
        assert_eq!(s, LaurentPoly::v_inv());
        assert_eq!(s.min_deg(), -1);
        assert_eq!(s.coeffs().len(), 1);
        assert_eq!(LaurentPoly::v() - LaurentPoly::v(), LaurentPoly::zero());
        assert_eq!((LaurentPoly::v() - LaurentPoly::v()).min_deg(), 0);
    }

    #[test]
    fn mul_examples() {
        assert!((LaurentPoly::v() * LaurentPoly::v_inv()).is_one());
        let q = LaurentPoly::v_plus_v_inv();
        assert_eq!(&q * &q, lp(-2, &[1, 0, 2, 0, 1]));
        assert_eq!(
            LaurentPoly::v_inv_minus_v() * LaurentPoly::v(),
            lp(0, &[1, 0, -1])
        );
    }

    #[test]
    fn bar_and_eval() {
        assert_eq!(LaurentPoly::v().bar(), LaurentPoly::v_inv());
        assert_eq!(
            LaurentPoly::v_inv_minus_v().bar(),
            -LaurentPoly::v_inv_minus_v()
        );
        assert_eq!(LaurentPoly::v_plus_v_inv().eval_one(), BigInt::from(2));
        assert_eq!(LaurentPoly::zero().eval_one(), BigInt::from(0));
        assert_eq!(lp(-2, &[1, 0, 2, 0, 1]).eval_one(), BigInt::from(4));
    }

    #[test]
    fn display() {
        assert_eq!(lp(-1, &[1, 0, -1]).to_string(), "v^-1 - v");
        assert_eq!(lp(0, &[2, 0, 0, -3]).to_string(), "2 - 3v^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!((-LaurentPoly::v()).to_string(), "-v");
    }

    #[test]
    fn json_shape() {
        let p = lp(-1, &[1, 0, 2]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"min_deg":-1,"coeffs":[1,0,2]}"#
        );
        assert_eq!(
            serde_json::to_string(&LaurentPoly::zero()).unwrap(),
            r#"{"min_deg":0,"coeffs":[]}"#
        );
        let big =
            LaurentPoly::constant("123456789012345678901234567890".parse::<BigInt>().unwrap());
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(
            s,
            r#"{"min_deg":0,"coeffs":[123456789012345678901234567890]}"#
        );
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), big);
    }

    #[test]
    fn json_rejects_non_canonical() {
        for bad in [
            r#"{"min_deg":0,"coeffs":[0,1]}"#,
            r#"{"min_deg":0,"coeffs":[1,0]}"#,
            r#"{"min_deg":3,"coeffs":[]}"#,
            r#"{"min_deg":0,"coeffs":[1.5]}"#,
            r#"{"min_deg":99999999999,"coeffs":[1]}"#,
        ] {
            assert!(serde_json::from_str::<LaurentPoly>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn div_exact_works() {
        let a = LaurentPoly::v_plus_v_inv();
        let b = &a * &lp(-3, &[2, -1, 5]);
        assert_eq!(b.div_exact(&a), Some(lp(-3, &[2, -1, 5])));
        assert_eq!(LaurentPoly::one().div_exact(&a), None);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-4i32..4, prop::collection::vec(-20i64..20, 0..6))
            .prop_map(|(m, c)| LaurentPoly::from_i64s(m, &c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: LaurentPoly = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
            prop_assert_eq!(back, a);
        }
    }
}
