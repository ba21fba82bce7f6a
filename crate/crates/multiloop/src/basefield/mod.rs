//! Exact arithmetic and quadratic-form oracles over the supported base
//! fields k: finite fields of odd characteristic, the rationals, and a
//! real-closed field with rational coefficients (squares = non-negatives).
//!
//! The square-class group k^×/(k^×)² is made concrete through
//! [`SquareClassKey`], and diagonal forms over k through [`KDiagonalForm`];
//! the anisotropy / Witt-decomposition oracles on those forms are what the
//! Laurent-ring layer reduces everything to.

mod finite;
mod rational;
mod witt;

pub use rational::{hilbert_symbol, is_local_square, legendre, squarefree_part, Place};
pub(crate) use finite::Gf;

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// The base field k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// GF(p^e) with p an odd prime, e ≥ 1.
    FiniteField { p: u64, e: u32 },
    /// ℚ with exact fraction arithmetic.
    Rationals,
    /// A real-closed field: elements are rationals, squares are the
    /// non-negatives.
    RealClosed,
}

impl FieldDescriptor {
    /// Validated constructor for GF(p^e); the order is kept small enough for
    /// exhaustive oracles.
    pub fn finite_field(p: u64, e: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !finite::is_prime(p) {
            return Err(Error::UnsupportedField(format!(
                "characteristic must be an odd prime, got {p}"
            )));
        }
        if e < 1 {
            return Err(Error::UnsupportedField("extension degree must be ≥ 1".into()));
        }
        let order = (p as u128).pow(e);
        if order > u128::from(u32::MAX) {
            return Err(Error::UnsupportedField(format!(
                "field order {order} too large for exact enumeration"
            )));
        }
        Ok(FieldDescriptor::FiniteField { p, e })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldDescriptor::FiniteField { .. })
    }

    pub(crate) fn gf(&self) -> Gf {
        match self {
            FieldDescriptor::FiniteField { p, e } => Gf::get(*p, *e),
            _ => panic!("gf() on an infinite field"),
        }
    }

    /// Canonical text spelling: "Fq:7", "Fq:9", "Q", "R".
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(FieldDescriptor::Rationals),
            "R" => Ok(FieldDescriptor::RealClosed),
            _ => {
                let q: u64 = s
                    .strip_prefix("Fq:")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field descriptor '{s}'")))?;
                // q must be an odd prime power
                let mut p = 3u64;
                while p * p <= q {
                    if q.is_multiple_of(p) {
                        break;
                    }
                    p += 2;
                }
                let p = if q.is_multiple_of(p) && p * p <= q { p } else { q };
                let mut e = 0u32;
                let mut m = q;
                while m.is_multiple_of(p) {
                    m /= p;
                    e += 1;
                }
                if m != 1 {
                    return Err(Error::Parse(format!("{q} is not a prime power")));
                }
                FieldDescriptor::finite_field(p, e)
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::FiniteField { p, e } => write!(f, "Fq:{}", p.pow(*e)),
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::RealClosed => write!(f, "R"),
        }
    }
}

/// An exact element of the base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    descriptor: FieldDescriptor,
    repr: ScalarRepr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum ScalarRepr {
    /// Coefficient vector over the prime field, length e, entries in [0, p).
    Finite(Vec<u64>),
    /// Reduced fraction (Rationals and RealClosed).
    Ratio(BigRational),
}

impl FieldScalar {
    pub fn from_integer(descriptor: FieldDescriptor, n: i64) -> Self {
        let repr = match descriptor {
            FieldDescriptor::FiniteField { .. } => ScalarRepr::Finite(descriptor.gf().embed_int(n)),
            _ => ScalarRepr::Ratio(BigRational::from_integer(BigInt::from(n))),
        };
        FieldScalar { descriptor, repr }
    }

    /// Builds a rational-valued scalar; rejected over finite fields unless
    /// the denominator is invertible (it always is when nonzero mod p).
    pub fn from_rational(descriptor: FieldDescriptor, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        match descriptor {
            FieldDescriptor::FiniteField { .. } => {
                let gf = descriptor.gf();
                let d = gf.embed_int(den);
                if gf.is_zero(&d) {
                    return Err(Error::Parse(format!("denominator {den} is 0 in {descriptor}")));
                }
                let n = gf.embed_int(num);
                Ok(FieldScalar {
                    descriptor,
                    repr: ScalarRepr::Finite(gf.mul(&n, &gf.inverse(&d))),
                })
            }
            _ => Ok(FieldScalar {
                descriptor,
                repr: ScalarRepr::Ratio(BigRational::new(BigInt::from(num), BigInt::from(den))),
            }),
        }
    }

    /// Finite-field element from prime-field coefficients c_0 + c_1·g + ….
    pub fn from_coeffs(descriptor: FieldDescriptor, coeffs: &[i64]) -> Result<Self> {
        match descriptor {
            FieldDescriptor::FiniteField { e, .. } => {
                if coeffs.len() > e as usize {
                    return Err(Error::Parse(format!(
                        "coefficient vector of length {} in a degree-{e} extension",
                        coeffs.len()
                    )));
                }
                Ok(FieldScalar {
                    descriptor,
                    repr: ScalarRepr::Finite(descriptor.gf().embed_coeffs(coeffs)),
                })
            }
            _ => Err(Error::Parse("coefficient vectors only exist over finite fields".into())),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            ScalarRepr::Finite(v) => v.iter().all(|&c| c == 0),
            ScalarRepr::Ratio(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            ScalarRepr::Finite(v) => {
                v.first() == Some(&1) && v.iter().skip(1).all(|&c| c == 0)
            }
            ScalarRepr::Ratio(r) => r.is_one(),
        }
    }

    pub fn mul(&self, other: &FieldScalar) -> Result<FieldScalar> {
        if self.descriptor != other.descriptor {
            return Err(Error::FieldMismatch);
        }
        let repr = match (&self.repr, &other.repr) {
            (ScalarRepr::Finite(a), ScalarRepr::Finite(b)) => {
                ScalarRepr::Finite(self.descriptor.gf().mul(a, b))
            }
            (ScalarRepr::Ratio(a), ScalarRepr::Ratio(b)) => ScalarRepr::Ratio(a * b),
            _ => unreachable!("repr always matches descriptor"),
        };
        Ok(FieldScalar { descriptor: self.descriptor, repr })
    }

    pub fn add(&self, other: &FieldScalar) -> Result<FieldScalar> {
        if self.descriptor != other.descriptor {
            return Err(Error::FieldMismatch);
        }
        let repr = match (&self.repr, &other.repr) {
            (ScalarRepr::Finite(a), ScalarRepr::Finite(b)) => {
                ScalarRepr::Finite(self.descriptor.gf().add(a, b))
            }
            (ScalarRepr::Ratio(a), ScalarRepr::Ratio(b)) => ScalarRepr::Ratio(a + b),
            _ => unreachable!("repr always matches descriptor"),
        };
        Ok(FieldScalar { descriptor: self.descriptor, repr })
    }

    pub fn neg(&self) -> FieldScalar {
        let repr = match &self.repr {
            ScalarRepr::Finite(a) => ScalarRepr::Finite(self.descriptor.gf().neg(a)),
            ScalarRepr::Ratio(a) => ScalarRepr::Ratio(-a),
        };
        FieldScalar { descriptor: self.descriptor, repr }
    }

    /// Whether the scalar is a square in k (zero counts as a square).
    pub fn is_square(&self) -> bool {
        match (&self.descriptor, &self.repr) {
            (_, r) if self.is_zero() => {
                let _ = r;
                true
            }
            (FieldDescriptor::FiniteField { .. }, ScalarRepr::Finite(v)) => {
                self.descriptor.gf().is_square(v)
            }
            (FieldDescriptor::RealClosed, ScalarRepr::Ratio(r)) => r.is_positive(),
            (FieldDescriptor::Rationals, ScalarRepr::Ratio(r)) => {
                r.is_positive()
                    && squarefree_part(&(r.numer() * r.denom())).is_one()
            }
            _ => unreachable!(),
        }
    }

    fn ratio(&self) -> &BigRational {
        match &self.repr {
            ScalarRepr::Ratio(r) => r,
            _ => panic!("ratio() on a finite-field scalar"),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            ScalarRepr::Finite(v) => {
                if v.len() == 1 {
                    write!(f, "{}", v[0])
                } else {
                    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    write!(f, "[{}]", parts.join(","))
                }
            }
            ScalarRepr::Ratio(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Parses a scalar literal: "5", "-3/4", or "[c0,c1]" over extensions.
pub fn parse_scalar(descriptor: FieldDescriptor, s: &str) -> Result<FieldScalar> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let coeffs: Result<Vec<i64>> = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{c}'")))
            })
            .collect();
        return FieldScalar::from_coeffs(descriptor, &coeffs?);
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: i64 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator '{n}'")))?;
        let den: i64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator '{d}'")))?;
        return FieldScalar::from_rational(descriptor, num, den);
    }
    let n: i64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad scalar '{s}'")))?;
    Ok(FieldScalar::from_integer(descriptor, n))
}

/// Canonical label of a class in k^×/(k^×)².
///
/// Finite fields have two classes, 1 and a fixed non-residue ν; the
/// real-closed field has ±1; ℚ has one class per signed squarefree integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SquareClassKey {
    /// Finite field: false = class of 1, true = class of ν.
    Finite { nonresidue: bool },
    /// Real closed: sign of the class.
    Real { negative: bool },
    /// ℚ: signed squarefree integer.
    Rational(BigInt),
}

impl SquareClassKey {
    pub fn one(descriptor: FieldDescriptor) -> Self {
        match descriptor {
            FieldDescriptor::FiniteField { .. } => SquareClassKey::Finite { nonresidue: false },
            FieldDescriptor::RealClosed => SquareClassKey::Real { negative: false },
            FieldDescriptor::Rationals => SquareClassKey::Rational(BigInt::one()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            SquareClassKey::Finite { nonresidue } => !nonresidue,
            SquareClassKey::Real { negative } => !negative,
            SquareClassKey::Rational(n) => n.is_one(),
        }
    }

    /// A canonical scalar representing the class.
    pub fn representative(&self, descriptor: FieldDescriptor) -> FieldScalar {
        match self {
            SquareClassKey::Finite { nonresidue } => {
                let gf = descriptor.gf();
                let v = if *nonresidue { gf.nonresidue() } else { gf.one() };
                FieldScalar { descriptor, repr: ScalarRepr::Finite(v) }
            }
            SquareClassKey::Real { negative } => {
                FieldScalar::from_integer(descriptor, if *negative { -1 } else { 1 })
            }
            SquareClassKey::Rational(n) => FieldScalar {
                descriptor,
                repr: ScalarRepr::Ratio(BigRational::from_integer(n.clone())),
            },
        }
    }

    /// Canonical text: "1"/"nu" over finite fields, "1"/"-1" over the reals,
    /// a signed squarefree integer over ℚ.
    pub fn parse(descriptor: FieldDescriptor, s: &str) -> Result<SquareClassKey> {
        let s = s.trim();
        match descriptor {
            FieldDescriptor::FiniteField { .. } if s == "nu" => {
                Ok(SquareClassKey::Finite { nonresidue: true })
            }
            _ => {
                let a = parse_scalar(descriptor, s)?;
                square_class(&a)
            }
        }
    }
}

impl fmt::Display for SquareClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClassKey::Finite { nonresidue: false } => write!(f, "1"),
            SquareClassKey::Finite { nonresidue: true } => write!(f, "nu"),
            SquareClassKey::Real { negative } => write!(f, "{}", if *negative { "-1" } else { "1" }),
            SquareClassKey::Rational(n) => write!(f, "{n}"),
        }
    }
}

impl PartialOrd for SquareClassKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The fixed total order used for canonical diagonal forms: 1 < ν over
/// finite fields, −1 < +1 over the reals, and (|a|, sign) over ℚ with
/// positive before negative.
impl Ord for SquareClassKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SquareClassKey::Finite { nonresidue: a }, SquareClassKey::Finite { nonresidue: b }) => {
                a.cmp(b)
            }
            (SquareClassKey::Real { negative: a }, SquareClassKey::Real { negative: b }) => {
                b.cmp(a) // −1 sorts first
            }
            (SquareClassKey::Rational(a), SquareClassKey::Rational(b)) => a
                .abs()
                .cmp(&b.abs())
                .then_with(|| b.sign().cmp(&a.sign())),
            _ => panic!("comparing square classes of different fields"),
        }
    }
}

/// Canonical square class of a nonzero scalar; square_class(a·c²) =
/// square_class(a) for every c ≠ 0.
pub fn square_class(a: &FieldScalar) -> Result<SquareClassKey> {
    if a.is_zero() {
        return Err(Error::ZeroScalar);
    }
    Ok(match a.descriptor {
        FieldDescriptor::FiniteField { .. } => SquareClassKey::Finite {
            nonresidue: !a.is_square(),
        },
        FieldDescriptor::RealClosed => SquareClassKey::Real {
            negative: a.ratio().is_negative(),
        },
        FieldDescriptor::Rationals => {
            let r = a.ratio();
            SquareClassKey::Rational(squarefree_part(&(r.numer() * r.denom())))
        }
    })
}

/// Product in the square-class group.
pub fn class_mul(
    descriptor: FieldDescriptor,
    a: &SquareClassKey,
    b: &SquareClassKey,
) -> SquareClassKey {
    match (a, b) {
        (SquareClassKey::Finite { nonresidue: x }, SquareClassKey::Finite { nonresidue: y }) => {
            SquareClassKey::Finite { nonresidue: x ^ y }
        }
        (SquareClassKey::Real { negative: x }, SquareClassKey::Real { negative: y }) => {
            SquareClassKey::Real { negative: x ^ y }
        }
        (SquareClassKey::Rational(x), SquareClassKey::Rational(y)) => {
            SquareClassKey::Rational(squarefree_part(&(x * y)))
        }
        _ => {
            let _ = descriptor;
            panic!("multiplying square classes of different fields")
        }
    }
}

/// The class of −1, needed to negate classes.
pub fn class_of_minus_one(descriptor: FieldDescriptor) -> SquareClassKey {
    square_class(&FieldScalar::from_integer(descriptor, -1)).expect("-1 is nonzero")
}

/// The class of −a.
pub fn class_neg(descriptor: FieldDescriptor, a: &SquareClassKey) -> SquareClassKey {
    class_mul(descriptor, &class_of_minus_one(descriptor), a)
}

/// A diagonal quadratic form ⟨a_1,…,a_d⟩ over k, stored as the sorted list
/// of square classes of its entries.  The empty form (d = 0) is allowed and
/// is anisotropic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KDiagonalForm {
    descriptor: FieldDescriptor,
    entries: Vec<SquareClassKey>,
}

impl KDiagonalForm {
    /// Builds the canonical form from square-class entries.
    pub fn new(descriptor: FieldDescriptor, mut entries: Vec<SquareClassKey>) -> Self {
        entries.sort();
        KDiagonalForm { descriptor, entries }
    }

    /// Builds the form ⟨a_1,…,a_d⟩ from scalars; fails on a zero entry.
    pub fn from_scalars(descriptor: FieldDescriptor, scalars: &[FieldScalar]) -> Result<Self> {
        let mut entries = Vec::with_capacity(scalars.len());
        for a in scalars {
            if a.descriptor != descriptor {
                return Err(Error::FieldMismatch);
            }
            entries.push(square_class(a).map_err(|_| Error::SingularForm)?);
        }
        Ok(KDiagonalForm::new(descriptor, entries))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[SquareClassKey] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Orthogonal sum f ⊥ g.
    pub fn orthogonal_sum(&self, other: &KDiagonalForm) -> Result<KDiagonalForm> {
        if self.descriptor != other.descriptor {
            return Err(Error::FieldMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(KDiagonalForm::new(self.descriptor, entries))
    }

    /// The form −f (every entry negated).
    pub fn negated(&self) -> KDiagonalForm {
        let entries = self
            .entries
            .iter()
            .map(|c| class_neg(self.descriptor, c))
            .collect();
        KDiagonalForm::new(self.descriptor, entries)
    }

    /// h hyperbolic planes ⟨1,−1⟩^h.
    pub fn hyperbolic(descriptor: FieldDescriptor, h: usize) -> KDiagonalForm {
        let one = SquareClassKey::one(descriptor);
        let minus = class_of_minus_one(descriptor);
        let mut entries = Vec::with_capacity(2 * h);
        for _ in 0..h {
            entries.push(one.clone());
            entries.push(minus.clone());
        }
        KDiagonalForm::new(descriptor, entries)
    }
}

impl fmt::Display for KDiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|c| c.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

pub use witt::{is_isometric_k, is_isotropic_k, witt_decompose_k};

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldScalar {
        FieldScalar::from_integer(FieldDescriptor::Rationals, n)
    }

    #[test]
    fn square_class_real_sign() {
        let a = FieldScalar::from_rational(FieldDescriptor::RealClosed, -3, 4).unwrap();
        assert_eq!(
            square_class(&a).unwrap(),
            SquareClassKey::Real { negative: true }
        );
    }

    #[test]
    fn square_class_f7_nonresidue() {
        // 3 is a non-residue mod 7 (squares are {1, 2, 4})
        let f7 = FieldDescriptor::finite_field(7, 1).unwrap();
        let a = FieldScalar::from_integer(f7, 3);
        assert_eq!(
            square_class(&a).unwrap(),
            SquareClassKey::Finite { nonresidue: true }
        );
        let b = FieldScalar::from_integer(f7, 2);
        assert_eq!(
            square_class(&b).unwrap(),
            SquareClassKey::Finite { nonresidue: false }
        );
    }

    #[test]
    fn square_class_rational_squarefree() {
        assert_eq!(
            square_class(&q(18)).unwrap(),
            SquareClassKey::Rational(BigInt::from(2))
        );
        let half = FieldScalar::from_rational(FieldDescriptor::Rationals, 1, 2).unwrap();
        assert_eq!(
            square_class(&half).unwrap(),
            SquareClassKey::Rational(BigInt::from(2))
        );
    }

    #[test]
    fn square_class_zero_rejected() {
        assert_eq!(square_class(&q(0)), Err(Error::ZeroScalar));
    }

    #[test]
    fn square_class_constant_on_square_multiples() {
        // random sampling against the brute-force "is a/b a square" check
        let fields = [
            FieldDescriptor::Rationals,
            FieldDescriptor::RealClosed,
            FieldDescriptor::finite_field(7, 1).unwrap(),
            FieldDescriptor::finite_field(3, 2).unwrap(),
        ];
        for k in fields {
            for a in [-7i64, -3, -1, 1, 2, 5, 12] {
                let a = FieldScalar::from_integer(k, a);
                if a.is_zero() {
                    continue;
                }
                for c in [1i64, 2, 3, -5] {
                    let c = FieldScalar::from_integer(k, c);
                    if c.is_zero() {
                        continue;
                    }
                    let scaled = a.mul(&c).unwrap().mul(&c).unwrap();
                    assert_eq!(square_class(&a).unwrap(), square_class(&scaled).unwrap());
                }
            }
        }
    }

    #[test]
    fn class_separation_matches_ratio_square_test() {
        // square_class(a) == square_class(b) iff a·b is a square (b ~ 1/b)
        let f7 = FieldDescriptor::finite_field(7, 1).unwrap();
        for k in [FieldDescriptor::Rationals, FieldDescriptor::RealClosed, f7] {
            let vals: Vec<i64> = (-10..=10).filter(|&v| v != 0).collect();
            for &x in &vals {
                for &y in &vals {
                    let a = FieldScalar::from_integer(k, x);
                    let b = FieldScalar::from_integer(k, y);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let same = square_class(&a).unwrap() == square_class(&b).unwrap();
                    assert_eq!(same, a.mul(&b).unwrap().is_square(), "{k} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn descriptor_text_round_trip() {
        for s in ["Q", "R", "Fq:7", "Fq:9", "Fq:125"] {
            let d = FieldDescriptor::parse(s).unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!(FieldDescriptor::parse("Fq:8").is_err()); // even characteristic
        assert!(FieldDescriptor::parse("Fq:12").is_err()); // not a prime power
    }

    #[test]
    fn canonical_entry_order() {
        // RealClosed: −1 < +1; Rationals: abs then sign, positive first
        let r = FieldDescriptor::RealClosed;
        let f = KDiagonalForm::new(
            r,
            vec![
                SquareClassKey::Real { negative: false },
                SquareClassKey::Real { negative: true },
            ],
        );
        assert_eq!(f.to_string(), "<-1,1>");
        let qd = FieldDescriptor::Rationals;
        let g = KDiagonalForm::new(
            qd,
            vec![
                SquareClassKey::Rational(BigInt::from(-2)),
                SquareClassKey::Rational(BigInt::from(3)),
                SquareClassKey::Rational(BigInt::from(2)),
                SquareClassKey::Rational(BigInt::from(1)),
            ],
        );
        assert_eq!(g.to_string(), "<1,2,-2,3>");
    }
}
