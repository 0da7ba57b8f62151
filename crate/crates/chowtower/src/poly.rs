//! Exact univariate integer polynomials in the deformation parameter `n`.
//!
//! Every intersection number in this crate is an `IntPoly`, so identities are
//! checked as polynomial identities, never by floating point or sampling.
//! Coefficients are arbitrary-precision (`BigInt`): arithmetic cannot
//! silently overflow.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Start of the working range: decisions "for all n" mean all integers n >= 1.
pub const WORKING_FROM: i64 = 1;

/// Dense integer polynomial, coefficients stored low degree first.
/// Invariant: the last stored coefficient is nonzero (zero = empty vec).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::normalized(vec![c.into()])
    }

    /// The parameter `n` itself.
    pub fn var() -> Self {
        Self::normalized(vec![BigInt::from(0), BigInt::from(1)])
    }

    /// a*n + b.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::normalized(vec![BigInt::from(b), BigInt::from(a)])
    }

    /// Coefficients low degree first.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        Self::normalized(coeffs.into_iter().map(Into::into).collect())
    }

    fn normalized(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The constant value if degree <= 0.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, n0: i64) -> BigInt {
        let x = BigInt::from(n0);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn eval_i64(&self, n0: i64) -> Result<i64> {
        self.eval(n0).to_i64().ok_or(Error::Numeric)
    }

    /// Exact division by an integer; errors unless every coefficient divides.
    pub fn div_exact(&self, k: i64) -> Result<IntPoly> {
        if k == 0 {
            return Err(Error::Numeric);
        }
        let k = BigInt::from(k);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if (c % &k).is_zero() {
                out.push(c / &k);
            } else {
                return Err(Error::InexactDivision(self.to_string(), k.to_string()));
            }
        }
        Ok(Self::normalized(out))
    }

    pub fn times(&self, k: i64) -> IntPoly {
        self * &IntPoly::constant(k)
    }

    /// True iff every coefficient is even.
    pub fn is_even(&self) -> bool {
        use num_integer::Integer;
        self.coeffs.iter().all(|c| c.is_even())
    }

    /// All real roots lie in [-B, B]: beyond it the sign is the leading sign.
    fn root_bound(&self) -> i64 {
        let m = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        1 + m.to_i64().unwrap_or(i64::MAX / 2)
    }

    /// p(n) >= 0 for every integer n >= from. Exact: checks all integers up
    /// to the root bound, then the leading coefficient decides the tail.
    pub fn nonneg_from(&self, from: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        let d = self.degree().unwrap();
        if d == 0 {
            return !self.coeffs[0].is_negative();
        }
        if self.coeffs[d].is_negative() {
            return false;
        }
        let hi = self.root_bound().max(from);
        (from..=hi).all(|k| !self.eval(k).is_negative())
    }

    pub fn nonpos_from(&self, from: i64) -> bool {
        (-self).nonneg_from(from)
    }

    /// p(n) > 0 for every integer n >= from.
    pub fn positive_from(&self, from: i64) -> bool {
        if self.is_zero() {
            return false;
        }
        let d = self.degree().unwrap();
        if d == 0 {
            return self.coeffs[0].is_positive();
        }
        if self.coeffs[d].is_negative() {
            return false;
        }
        let hi = self.root_bound().max(from);
        (from..=hi).all(|k| self.eval(k).is_positive())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        IntPoly::normalized(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::normalized(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::normalized(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        *self = &*self - rhs;
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}

/// Canonical form: highest power first, `14n + 61`, `-48n - 46`, `n^2 - n`, `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if a != BigInt::from(1) {
                    write!(f, "{a}")?;
                }
                write!(f, "n")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Parses the same grammar `Display` emits; `*` between coefficient and `n`
/// is tolerated (`2*n^2`).
impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(src: &str) -> Result<IntPoly> {
        let b = src.as_bytes();
        let mut pos = 0usize;
        let mut acc = IntPoly::zero();
        let skip_ws = |pos: &mut usize| {
            while *pos < b.len() && b[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == b.len() {
            return Err(Error::Parse {
                at: pos,
                msg: "empty polynomial".into(),
            });
        }
        let mut first = true;
        while pos < b.len() {
            skip_ws(&mut pos);
            if pos == b.len() {
                break;
            }
            let mut sign = 1i64;
            match b[pos] {
                b'+' => {
                    pos += 1;
                }
                b'-' => {
                    sign = -1;
                    pos += 1;
                }
                _ if !first => {
                    return Err(Error::Parse {
                        at: pos,
                        msg: "expected `+` or `-` between terms".into(),
                    })
                }
                _ => {}
            }
            first = false;
            skip_ws(&mut pos);
            let digits_start = pos;
            while pos < b.len() && b[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff: Option<BigInt> = if pos > digits_start {
                Some(src[digits_start..pos].parse().expect("digit run"))
            } else {
                None
            };
            if coeff.is_some() && pos < b.len() && b[pos] == b'*' {
                pos += 1;
            }
            skip_ws(&mut pos);
            let mut power = 0usize;
            if pos < b.len() && b[pos] == b'n' {
                pos += 1;
                power = 1;
                if pos < b.len() && b[pos] == b'^' {
                    pos += 1;
                    let exp_start = pos;
                    while pos < b.len() && b[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == exp_start {
                        return Err(Error::Parse {
                            at: pos,
                            msg: "expected exponent digits after `^`".into(),
                        });
                    }
                    power = src[exp_start..pos].parse().map_err(|_| Error::Parse {
                        at: exp_start,
                        msg: "exponent out of range".into(),
                    })?;
                }
            } else if coeff.is_none() {
                return Err(Error::Parse {
                    at: pos,
                    msg: "expected a number or `n`".into(),
                });
            }
            let c = coeff.take().unwrap_or_else(|| BigInt::from(1)) * sign;
            let mut coeffs = vec![BigInt::zero(); power + 1];
            coeffs[power] = c;
            acc += &IntPoly::normalized(coeffs);
            skip_ws(&mut pos);
        }
        Ok(acc)
    }
}

/// JSON form: coefficient array, low degree first (`-48n - 46` -> `[-46, -48]`).
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let ints: std::result::Result<Vec<i64>, _> = self
            .coeffs
            .iter()
            .map(|c| c.to_i64().ok_or_else(|| S::Error::custom("coefficient out of i64 range")))
            .collect();
        ints?.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<i64>::deserialize(de)?;
        if coeffs.len() > 64 {
            return Err(D::Error::custom("polynomial degree out of range"));
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn renders_canonical_forms() {
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::constant(5).to_string(), "5");
        assert_eq!(IntPoly::linear(14, 61).to_string(), "14n + 61");
        assert_eq!(IntPoly::linear(-48, -46).to_string(), "-48n - 46");
        assert_eq!(IntPoly::from_coeffs([0i64, -1]).to_string(), "-n");
        assert_eq!(IntPoly::from_coeffs([2i64, 0, 1]).to_string(), "n^2 + 2");
        assert_eq!(IntPoly::from_coeffs([0i64, -1, 2]).to_string(), "2n^2 - n");
    }

    #[test]
    fn parses_what_it_renders_and_more() {
        assert_eq!(p("14n + 61"), IntPoly::linear(14, 61));
        assert_eq!(p("-48n - 46"), IntPoly::linear(-48, -46));
        assert_eq!(p("2*n^2 - n"), IntPoly::from_coeffs([0i64, -1, 2]));
        assert_eq!(p("3n"), IntPoly::linear(3, 0));
        assert_eq!(p(" 0 "), IntPoly::zero());
        assert_eq!(p("n^2+2n+1"), IntPoly::from_coeffs([1i64, 2, 1]));
        assert!("".parse::<IntPoly>().is_err());
        assert!("2x".parse::<IntPoly>().is_err());
        assert!("n^".parse::<IntPoly>().is_err());
        assert!("1 1".parse::<IntPoly>().is_err());
    }

    #[test]
    fn table_drops_sum_to_total() {
        // 3n+9 + 3n+12 + 3n+15 + 3n+18 + 2n+7 = 14n+61
        let total = [p("3n+9"), p("3n+12"), p("3n+15"), p("3n+18"), p("2n+7")]
            .iter()
            .fold(IntPoly::zero(), |a, b| &a + b);
        assert_eq!(total, p("14n+61"));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("14n + 61").eval_i64(5).unwrap(), 131);
        assert_eq!(p("-48n - 46").eval_i64(1).unwrap(), -94);
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("4n + 6").div_exact(2).unwrap(), p("2n + 3"));
        assert!(p("2n + 1").div_exact(2).is_err());
    }

    #[test]
    fn evenness() {
        assert!(p("4n + 6").is_even());
        assert!(!p("4n + 3").is_even());
        assert!(IntPoly::zero().is_even());
    }

    #[test]
    fn sign_over_working_range() {
        assert!(p("n - 1").nonneg_from(1));
        assert!(!p("n - 1").positive_from(1));
        assert!(p("n - 1").positive_from(2));
        assert!(!p("n - 2").nonneg_from(1));
        assert!(p("2 - n").nonpos_from(2));
        // n^2 - 12n + 30 dips negative in the middle of the range
        assert!(!p("n^2 - 12n + 30").nonneg_from(1));
        assert!(p("n^2 - 5n + 7").positive_from(1));
        assert!(IntPoly::zero().nonneg_from(1) && IntPoly::zero().nonpos_from(1));
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-40i64..=40, 0..=6).prop_map(IntPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &IntPoly::zero(), a.clone());
            prop_assert_eq!(&a * &IntPoly::constant(1), a.clone());
            prop_assert_eq!(&a - &a, IntPoly::zero());
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), n0 in -30i64..=30) {
            prop_assert_eq!((&a + &b).eval(n0), a.eval(n0) + b.eval(n0));
            prop_assert_eq!((&a * &b).eval(n0), a.eval(n0) * b.eval(n0));
        }

        #[test]
        fn display_roundtrip(a in arb_poly()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<IntPoly>().unwrap(), a);
        }

        #[test]
        fn json_roundtrip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<IntPoly>(&s).unwrap(), a);
        }

        #[test]
        fn nonneg_from_agrees_with_dense_sampling(a in arb_poly()) {
            let claim = a.nonneg_from(1);
            // root bound is tiny for these coefficients; sample far past it
            let sampled = (1..=200).all(|k| !a.eval(k).is_negative())
                && a.coeffs().last().map_or(true, |c| !c.is_negative());
            prop_assert_eq!(claim, sampled);
        }
    }
}
