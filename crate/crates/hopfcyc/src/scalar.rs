//! Exact scalar fields: rationals, prime fields, and rational functions in `q`.
//!
//! Every scalar carries a canonical form so that equality is structural:
//! reduced fractions with positive denominators, residues in `[0, p)`, and
//! rational functions as reduced fractions of integer-coefficient polynomials
//! whose denominator has positive leading coefficient.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    /// The rational numbers.
    Rational,
    /// The prime field with `p` elements.
    Prime(u64),
    /// Rational functions in one variable `q` over the rationals.
    RationalFunction,
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::structure(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn unify(self, other: Field) -> Result<Field> {
        if self == other {
            Ok(self)
        } else {
            Err(Error::FieldMismatch(self, other))
        }
    }

    pub fn zero(&self) -> ExactScalar {
        match self {
            Field::Rational => ExactScalar::Rat(BigRational::zero()),
            Field::Prime(p) => ExactScalar::Mod(0, *p),
            Field::RationalFunction => ExactScalar::RatFn(RatFunc::zero()),
        }
    }

    pub fn one(&self) -> ExactScalar {
        match self {
            Field::Rational => ExactScalar::Rat(BigRational::one()),
            Field::Prime(p) => ExactScalar::Mod(1 % p, *p),
            Field::RationalFunction => ExactScalar::RatFn(RatFunc::one()),
        }
    }

    pub fn integer(&self, n: i64) -> ExactScalar {
        match self {
            Field::Rational => ExactScalar::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => ExactScalar::Mod(n.rem_euclid(*p as i64) as u64, *p),
            Field::RationalFunction => ExactScalar::RatFn(RatFunc::integer(n)),
        }
    }

    /// The variable `q`, only available over the rational-function field.
    pub fn q(&self) -> Result<ExactScalar> {
        match self {
            Field::RationalFunction => Ok(ExactScalar::RatFn(RatFunc::q())),
            f => Err(Error::structure(format!("field {f} has no variable q"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
            Field::RationalFunction => write!(f, "Q(q)"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of one of the supported exact fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rat(BigRational),
    /// Residue in `[0, p)` together with the modulus.
    Mod(u64, u64),
    RatFn(RatFunc),
}

impl ExactScalar {
    pub fn field(&self) -> Field {
        match self {
            ExactScalar::Rat(_) => Field::Rational,
            ExactScalar::Mod(_, p) => Field::Prime(*p),
            ExactScalar::RatFn(_) => Field::RationalFunction,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_zero(),
            ExactScalar::Mod(v, _) => *v == 0,
            ExactScalar::RatFn(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_one(),
            ExactScalar::Mod(v, _) => *v == 1,
            ExactScalar::RatFn(r) => r.num.is_one() && r.den.is_one(),
        }
    }

    pub fn rational(num: i64, den: i64) -> ExactScalar {
        assert!(den != 0, "zero denominator");
        ExactScalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn unify(&self, other: &ExactScalar) -> Field {
        match self.field().unify(other.field()) {
            Ok(f) => f,
            Err(e) => panic!("scalar arithmetic: {e}"),
        }
    }

    pub fn add(&self, other: &ExactScalar) -> ExactScalar {
        self.unify(other);
        match (self, other) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => ExactScalar::Rat(a + b),
            (ExactScalar::Mod(a, p), ExactScalar::Mod(b, _)) => ExactScalar::Mod((a + b) % p, *p),
            (ExactScalar::RatFn(a), ExactScalar::RatFn(b)) => ExactScalar::RatFn(a.add(b)),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &ExactScalar) -> ExactScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExactScalar {
        match self {
            ExactScalar::Rat(a) => ExactScalar::Rat(-a),
            ExactScalar::Mod(a, p) => ExactScalar::Mod(if *a == 0 { 0 } else { p - a }, *p),
            ExactScalar::RatFn(a) => ExactScalar::RatFn(a.neg()),
        }
    }

    pub fn mul(&self, other: &ExactScalar) -> ExactScalar {
        self.unify(other);
        match (self, other) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => ExactScalar::Rat(a * b),
            (ExactScalar::Mod(a, p), ExactScalar::Mod(b, _)) => {
                ExactScalar::Mod(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            (ExactScalar::RatFn(a), ExactScalar::RatFn(b)) => ExactScalar::RatFn(a.mul(b)),
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<ExactScalar> {
        if self.is_zero() {
            return Err(Error::structure("division by zero"));
        }
        Ok(match self {
            ExactScalar::Rat(a) => ExactScalar::Rat(a.recip()),
            ExactScalar::Mod(a, p) => ExactScalar::Mod(mod_inverse(*a, *p), *p),
            ExactScalar::RatFn(a) => ExactScalar::RatFn(a.inv()),
        })
    }

    pub fn div(&self, other: &ExactScalar) -> Result<ExactScalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<ExactScalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field().one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Specialize a rational-function scalar at `q = t`; identity on rationals.
    pub fn specialize_q(&self, t: &BigRational) -> Result<ExactScalar> {
        match self {
            ExactScalar::RatFn(r) => Ok(ExactScalar::Rat(r.eval(t)?)),
            ExactScalar::Rat(r) => Ok(ExactScalar::Rat(r.clone())),
            ExactScalar::Mod(..) => Err(Error::structure("cannot specialize a prime-field scalar")),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rat(r) => write!(f, "{r}"),
            ExactScalar::Mod(v, _) => write!(f, "{v}"),
            ExactScalar::RatFn(r) => write!(f, "{r}"),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert!(r == 1, "not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// Dense polynomial over the integers, no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> ZPoly {
        ZPoly(vec![])
    }

    pub fn constant(n: BigInt) -> ZPoly {
        if n.is_zero() {
            ZPoly::zero()
        } else {
            ZPoly(vec![n])
        }
    }

    pub fn one() -> ZPoly {
        ZPoly::constant(BigInt::one())
    }

    /// The monomial `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        ZPoly(v)
    }

    fn from_coeffs(mut v: Vec<BigInt>) -> ZPoly {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        ZPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        ZPoly::from_coeffs(v)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive_part(&self) -> ZPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        ZPoly(self.0.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder of `self` by `other` (`other` non-zero).
    fn pseudo_rem(&self, other: &ZPoly) -> ZPoly {
        assert!(!other.is_zero());
        let d = other.degree();
        let lc = other.leading();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let lr = r.leading();
            r = r.scale(&lc).sub(&other.mul(&ZPoly::monomial(lr, shift)));
        }
        r
    }

    /// Gcd in `Z[q]`, primitive-PRS; result has positive leading coefficient.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.positive_leading();
        }
        if other.is_zero() {
            return self.positive_leading();
        }
        let content_gcd = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().positive_leading().scale(&content_gcd)
    }

    /// Exact division, panicking if not divisible (used only after gcd).
    fn div_exact(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let d = other.degree();
        let lc = other.leading();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.0.len()];
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let c = &r.leading() / &lc;
            assert!(&c * &lc == r.leading(), "non-exact polynomial division");
            q[shift] = c.clone();
            r = r.sub(&other.mul(&ZPoly::monomial(c, shift)));
        }
        assert!(r.is_zero(), "non-exact polynomial division");
        ZPoly::from_coeffs(q)
    }

    fn positive_leading(&self) -> ZPoly {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + BigRational::from(c.clone());
        }
        acc
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => {
                    if a.is_one() {
                        write!(f, "q")?
                    } else {
                        write!(f, "{a}*q")?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "q^{k}")?
                    } else {
                        write!(f, "{a}*q^{k}")?
                    }
                }
            }
        }
        Ok(())
    }
}

/// A rational function `num/den` in `q` with integer coefficients.
///
/// Canonical form: `gcd(num, den) = 1` in `Z[q]` (content included) and the
/// denominator has positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn new(num: ZPoly, den: ZPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator in rational function");
        RatFunc { num, den }.reduce()
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc {
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn integer(n: i64) -> RatFunc {
        RatFunc {
            num: ZPoly::constant(BigInt::from(n)),
            den: ZPoly::one(),
        }
    }

    pub fn q() -> RatFunc {
        RatFunc {
            num: ZPoly::monomial(BigInt::one(), 1),
            den: ZPoly::one(),
        }
    }

    fn reduce(self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let g = self.num.gcd(&self.den);
        let mut num = self.num.div_exact(&g);
        let mut den = self.den.div_exact(&g);
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.num.is_zero(), "inverting zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        let den = self.den.eval(t);
        if den.is_zero() {
            return Err(Error::structure(format!(
                "denominator vanishes at q = {t}"
            )));
        }
        Ok(self.num.eval(t) / den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> ExactScalar {
        Field::RationalFunction.q().unwrap()
    }

    #[test]
    fn rational_canonical() {
        let a = ExactScalar::rational(2, 4);
        let b = ExactScalar::rational(1, 2);
        assert_eq!(a, b);
        assert_eq!(a.add(&b), Field::Rational.one());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let a = f.integer(3);
        let b = f.integer(4);
        assert_eq!(a.mul(&b), f.integer(2));
        assert_eq!(a.inv().unwrap(), f.integer(2));
        assert!(Field::prime(6).is_err());
    }

    #[test]
    fn mixed_field_is_rejected() {
        assert!(Field::Rational.unify(Field::Prime(5)).is_err());
    }

    #[test]
    fn rational_function_canonical_form() {
        // (q^2 - 1)/(q - 1) reduces to q + 1
        let num = q().mul(&q()).sub(&Field::RationalFunction.one());
        let den = q().sub(&Field::RationalFunction.one());
        let r = num.div(&den).unwrap();
        let expected = q().add(&Field::RationalFunction.one());
        assert_eq!(r, expected);
        // denominator sign is normalized: 1/(-q) == -(1/q)
        let a = Field::RationalFunction.one().div(&q().neg()).unwrap();
        let b = q().inv().unwrap().neg();
        assert_eq!(a, b);
    }

    #[test]
    fn q_powers() {
        let qinv = q().pow(-1).unwrap();
        assert!(q().mul(&qinv).is_one());
        assert_eq!(q().pow(3).unwrap(), q().mul(&q()).mul(&q()));
    }

    fn arb_scalar(field: Field) -> impl Strategy<Value = ExactScalar> {
        match field {
            Field::Rational => (any::<i32>(), 1..200i32)
                .prop_map(|(n, d)| ExactScalar::rational(n as i64, d as i64))
                .boxed(),
            Field::Prime(p) => (0..p).prop_map(move |v| ExactScalar::Mod(v, p)).boxed(),
            Field::RationalFunction => (any::<i16>(), any::<i16>(), 0..4usize, 0..3usize)
                .prop_map(|(a, b, i, j)| {
                    let num = ZPoly::monomial(BigInt::from(a), i)
                        .add(&ZPoly::constant(BigInt::from(b)));
                    let den = ZPoly::monomial(BigInt::one(), j).add(&ZPoly::one());
                    ExactScalar::RatFn(RatFunc::new(num, den))
                })
                .boxed(),
        }
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip_rational(x in arb_scalar(Field::Rational), y in arb_scalar(Field::Rational)) {
            prop_assert_eq!(x.add(&y).sub(&y), x);
        }

        #[test]
        fn mul_div_roundtrip_rational(x in arb_scalar(Field::Rational), y in arb_scalar(Field::Rational)) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x);
        }

        #[test]
        fn add_sub_roundtrip_f7(x in arb_scalar(Field::Prime(7)), y in arb_scalar(Field::Prime(7))) {
            prop_assert_eq!(x.add(&y).sub(&y), x);
        }

        #[test]
        fn mul_div_roundtrip_f7(x in arb_scalar(Field::Prime(7)), y in arb_scalar(Field::Prime(7))) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x);
        }

        #[test]
        fn add_sub_roundtrip_qfield(x in arb_scalar(Field::RationalFunction), y in arb_scalar(Field::RationalFunction)) {
            prop_assert_eq!(x.add(&y).sub(&y), x);
        }

        #[test]
        fn mul_div_roundtrip_qfield(x in arb_scalar(Field::RationalFunction), y in arb_scalar(Field::RationalFunction)) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x);
        }

        // compute-then-evaluate equals evaluate-then-compute at a non-root-of-unity rational point
        #[test]
        fn specialization_commutes(x in arb_scalar(Field::RationalFunction), y in arb_scalar(Field::RationalFunction)) {
            let t = BigRational::new(BigInt::from(3), BigInt::from(2));
            let lhs = x.mul(&y).add(&x);
            if let (Ok(l), Ok(xs), Ok(ys)) = (lhs.specialize_q(&t), x.specialize_q(&t), y.specialize_q(&t)) {
                let rhs = xs.mul(&ys).add(&xs);
                prop_assert_eq!(l, rhs);
            }
        }
    }
}
