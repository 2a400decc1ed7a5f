//! Exact rational arithmetic for the algebra of division ratios.
//!
//! Rotations of the moduli disc by `T_q` are `u⁶/|u|⁶` with
//! `u = -1 + (1 - 2q)√-3`, which lives in `ℚ(√-3)` whenever `q` is rational.
//! [`Rotation`] represents these exactly, so identities between operators can
//! be checked with equality instead of a tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::operators::QMap;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// The exact binary value of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn square(&self) -> Rational {
        Self(&self.0 * &self.0)
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| Self(BigRational::new(n, d)))
    }

    fn gcd_check(&self) -> bool {
        self.numer().gcd(self.denom()).is_one() && self.denom().is_positive()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::DomainError(format!("not a rational: {s:?}"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Self::from_bigints(n, d)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl QMap {
    /// Exact evaluation; `None` at the pole.
    pub fn apply_exact(self, q: &Rational) -> Option<Rational> {
        let [a, b, c, d] = self.coefficients().map(Rational::integer);
        let num = &(&a * q) + &b;
        let den = &(&c * q) + &d;
        num.checked_div(&den).ok()
    }
}

/// Branch values of one of the ratio formulas, with the positions (in formula
/// order) of the branches that hit a pole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBranches {
    pub values: Vec<Rational>,
    pub poles: Vec<usize>,
}

impl ExactBranches {
    fn collect(branches: impl IntoIterator<Item = Option<Rational>>) -> Self {
        let mut values = Vec::new();
        let mut poles = Vec::new();
        for (i, b) in branches.into_iter().enumerate() {
            match b {
                Some(v) if !values.contains(&v) => values.push(v),
                Some(_) => {}
                None => poles.push(i),
            }
        }
        Self { values, poles }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.values.contains(q)
    }
}

/// Ratios `q'` with `T_{q'} = T_q`.
pub fn exact_q_equal_set(q: &Rational) -> ExactBranches {
    ExactBranches::collect(QMap::EQUAL.iter().map(|m| m.apply_exact(q)))
}

/// Ratios `q'` with `T_{q'} = T_q⁻¹`.
pub fn exact_q_inverse_set(q: &Rational) -> ExactBranches {
    ExactBranches::collect(QMap::INVERSE.iter().map(|m| m.apply_exact(q)))
}

/// Ratios `q''` with `T_q ∘ T_{q2} = T_{q''}`.
pub fn exact_q_compose(q: &Rational, q2: &Rational) -> Result<ExactBranches> {
    let s = q + q2;
    let p = q * q2;
    let r = Rational::integer;
    let branches = [
        (
            &(&(&r(3) * &p) - &(&r(2) * &s)) + &r(1),
            &(&(&r(6) * &p) - &(&r(3) * &s)) + &r(1),
        ),
        (&r(1) - &s, &(&(&r(3) * &p) - &(&r(3) * &s)) + &r(2)),
        (&(&r(3) * &p) - &s, &(&r(3) * &p) - &r(1)),
    ];
    let out = ExactBranches::collect(branches.iter().map(|(n, d)| n.checked_div(d).ok()));
    if out.values.is_empty() {
        return Err(Error::AllBranchesDegenerate);
    }
    Ok(out)
}

/// Exact version of [`QMap::compose`], identifying `f ∘ g` by evaluating at
/// seven rational points. Two distinct maps `(aq + b)/(cq + d)` agree on at
/// most two points, so seven matches pin the map down.
pub fn identify_composition(f: QMap, g: QMap) -> Option<QMap> {
    let samples: Vec<Rational> = [(5, 1), (-2, 1), (1, 7), (3, 5), (-4, 9), (11, 4), (13, 17)]
        .iter()
        .map(|&(n, d)| Rational::new(n, d).expect("nonzero denominators"))
        .collect();
    QMap::ALL.into_iter().find(|h| {
        samples.iter().all(|x| {
            let lhs = g.apply_exact(x).and_then(|y| f.apply_exact(&y));
            let rhs = h.apply_exact(x);
            lhs == rhs
        })
    })
}

/// Ratios `q` with `[T_q(Δ_ab)] = [Δ_ba]`, where `Δ_ab` has sides `1, a, b`
/// anticlockwise from its base, from the squares `a² = a2`, `b² = b2`:
/// `(b² - 1)/(a² + b² - 2)`, `(1 - a²)/(b² + 1 - 2a²)`,
/// `(a² - b²)/(1 + a² - 2b²)`.
///
/// The regular triangle (`a² = b² = 1`) is its own mirror for every `q`; it
/// yields the conventional `{0}`.
pub fn exact_mirror_q(a2: &Rational, b2: &Rational) -> Result<ExactBranches> {
    if !a2.0.is_positive() || !b2.0.is_positive() {
        return Err(Error::TriangleInequalityViolated);
    }
    // 16·area² of the triangle with sides 1, a, b, written in the squares.
    let one = Rational::one();
    let two = Rational::integer(2);
    let heron = &(&(&(&two * &(a2 * b2)) + &(&two * a2)) + &(&two * b2)) - &(&(&a2.square() + &b2.square()) + &one);
    if !heron.0.is_positive() {
        return Err(Error::TriangleInequalityViolated);
    }
    if *a2 == one && *b2 == one {
        return Ok(ExactBranches {
            values: vec![Rational::zero()],
            poles: vec![0, 1, 2],
        });
    }
    let branches = [
        (b2 - &one, &(a2 + b2) - &two),
        (&one - a2, &(b2 + &one) - &(&two * a2)),
        (a2 - b2, &(&one + a2) - &(&two * b2)),
    ];
    let out = ExactBranches::collect(branches.iter().map(|(n, d)| n.checked_div(d).ok()));
    if out.values.is_empty() {
        return Err(Error::AllBranchesDegenerate);
    }
    Ok(out)
}

/// `re + im·√-3`, an element of `ℚ(√-3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eisenstein {
    pub re: Rational,
    pub im: Rational,
}

impl Eisenstein {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    /// `|x|² = re² + 3 im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re.square() + &(&Rational::integer(3) * &self.im.square())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let three = Rational::integer(3);
        Self::new(
            &(&self.re * &rhs.re) - &(&three * &(&self.im * &rhs.im)),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::new(Rational::one(), Rational::zero());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_complex(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64() * 3f64.sqrt())
    }
}

/// A rotation of the moduli disc by six times the argument of an element of
/// `ℚ(√-3)`, held exactly as a unit complex number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation(Eisenstein);

impl Rotation {
    pub fn identity() -> Self {
        Self(Eisenstein::new(Rational::one(), Rational::zero()))
    }

    /// Rotation by `6 arg(direction)`; `None` for the zero direction.
    pub fn from_direction(direction: &Eisenstein) -> Option<Self> {
        let n = direction.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let n3 = &(&n * &n) * &n;
        let p = direction.pow(6);
        Some(Self(Eisenstein::new(
            p.re.checked_div(&n3).ok()?,
            p.im.checked_div(&n3).ok()?,
        )))
    }

    /// Rotation of `T_q`: `6 arg(-1 + (1 - 2q)√-3)`.
    pub fn of_t_q(q: &Rational) -> Self {
        let s = &Rational::one() - &(&Rational::integer(2) * q);
        Self::from_direction(&Eisenstein::new(-Rational::one(), s)).expect("real part is -1")
    }

    pub fn then(&self, other: &Rotation) -> Rotation {
        Rotation(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Rotation {
        Rotation(self.0.conj())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Rotation by π.
    pub fn is_half_turn(&self) -> bool {
        self.0 == Eisenstein::new(-Rational::one(), Rational::zero())
    }

    pub fn angle(&self) -> f64 {
        let (x, y) = self.0.to_complex();
        crate::geom::reduce_angle(y.atan2(x))
    }
}

/// Rotation of the disc carrying the class of the triangle with apex
/// `|z|² = b2`, `|z - 1|² = a2` to its mirror image. With `n` the direction
/// `(a² + b² - 2) + (a² - b²)√-3` of the focal ratio of that apex, the class
/// moves from `arg φ = 3 arg n` to `-3 arg n`, a turn of `6 arg n̄`.
/// `None` for the regular triangle.
pub fn mirror_rotation(a2: &Rational, b2: &Rational) -> Option<Rotation> {
    let two = Rational::integer(2);
    let n = Eisenstein::new(&(a2 + b2) - &two, a2 - b2);
    Rotation::from_direction(&n.conj())
}

/// Compares two rationals.
pub fn compare(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// `true` when the stored form is canonical (`gcd = 1`, positive denominator).
pub fn is_canonical(r: &Rational) -> bool {
    r.gcd_check()
}
