//! Units and finite-support elements of the Laurent rings.
//!
//! Every unit of R_n = k[t_1^{±1},…,t_n^{±1}] is a nonzero scalar times a
//! monomial, represented by [`MonomialUnit`].  The square class of a unit
//! splits as R_n^×/(R_n^×)² ≅ k^×/(k^×)² × {0,1}^n (scalar class and
//! exponent parities), represented by [`UnitSquareClass`].  Elements of the
//! iterated Laurent series field F_n = k((t_1))…((t_n)) are kept with finite
//! support ([`LaurentElement`]); the F_n valuation order compares exponent
//! vectors by (e_n, e_{n−1}, …, e_1) lexicographically, matching the
//! iterated construction with t_n outermost.

use crate::basefield::{parse_scalar, square_class, FieldDescriptor, FieldScalar, SquareClassKey};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A unit of R_n: a nonzero scalar times t_1^{e_1}·…·t_n^{e_n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialUnit {
    scalar: FieldScalar,
    exponents: Vec<i64>,
}

impl MonomialUnit {
    pub fn new(scalar: FieldScalar, exponents: Vec<i64>) -> Result<Self> {
        if scalar.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(MonomialUnit { scalar, exponents })
    }

    /// The constant unit 1 in n variables.
    pub fn one(descriptor: FieldDescriptor, n: usize) -> Self {
        MonomialUnit {
            scalar: FieldScalar::from_integer(descriptor, 1),
            exponents: vec![0; n],
        }
    }

    pub fn scalar(&self) -> &FieldScalar {
        &self.scalar
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.scalar.descriptor()
    }

    pub fn mul(&self, other: &MonomialUnit) -> Result<MonomialUnit> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch);
        }
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        Ok(MonomialUnit {
            scalar: self.scalar.mul(&other.scalar)?,
            exponents,
        })
    }

    pub fn square(&self) -> MonomialUnit {
        MonomialUnit {
            scalar: self.scalar.mul(&self.scalar).expect("same field"),
            exponents: self.exponents.iter().map(|e| 2 * e).collect(),
        }
    }

    pub fn negated(&self) -> MonomialUnit {
        MonomialUnit {
            scalar: self.scalar.neg(),
            exponents: self.exponents.clone(),
        }
    }

    /// The square class of the unit: the scalar's class in k^×/(k^×)² plus
    /// the parity vector of the exponents.
    pub fn unit_square_class(&self) -> UnitSquareClass {
        UnitSquareClass {
            k_class: square_class(&self.scalar).expect("unit scalar is nonzero"),
            parity: self.exponents.iter().map(|e| e.rem_euclid(2) == 1).collect(),
        }
    }

    /// First/second residue bookkeeping at the valuation v_{t_i} (1-based i):
    /// the exponent parity at i, and the unit with t_i^{e_i} removed and
    /// coordinate i deleted.
    pub fn coordinate_residues(&self, i: usize) -> Result<(u8, MonomialUnit)> {
        if i < 1 || i > self.n() {
            return Err(Error::IndexOutOfRange { index: i, n: self.n() });
        }
        let parity = self.exponents[i - 1].rem_euclid(2) as u8;
        let mut exponents = self.exponents.clone();
        exponents.remove(i - 1);
        Ok((
            parity,
            MonomialUnit {
                scalar: self.scalar.clone(),
                exponents,
            },
        ))
    }

    /// Re-inserts coordinate i (1-based) with the given exponent.
    pub fn insert_coordinate(&self, i: usize, exponent: i64) -> MonomialUnit {
        let mut exponents = self.exponents.clone();
        exponents.insert(i - 1, exponent);
        MonomialUnit {
            scalar: self.scalar.clone(),
            exponents,
        }
    }

    /// Canonical monomial syntax: "5*t1^3*t2^2", "-9*t1^-1", "1".
    pub fn parse(descriptor: FieldDescriptor, n: usize, s: &str) -> Result<MonomialUnit> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut scalar: Option<FieldScalar> = None;
        let mut exponents = vec![0i64; n];
        let mut negate = false;
        let mut body = s;
        if let Some(rest) = s.strip_prefix('-') {
            // a leading sign attaches to the scalar part
            if rest.trim_start().starts_with('t') {
                negate = true;
                body = rest.trim_start();
            }
        }
        for factor in body.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in '{s}'")));
            }
            if let Some(rest) = factor.strip_prefix('t') {
                if rest.starts_with(|c: char| c.is_ascii_digit()) {
                    let (idx_str, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.trim().parse::<i64>().map_err(|_| {
                            Error::Parse(format!("bad exponent in '{factor}'"))
                        })?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx_str
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable in '{factor}'")))?;
                    if idx < 1 || idx > n {
                        return Err(Error::IndexOutOfRange { index: idx, n });
                    }
                    exponents[idx - 1] += exp;
                    continue;
                }
            }
            // otherwise a scalar literal
            let value = parse_scalar(descriptor, factor)?;
            scalar = Some(match scalar {
                None => value,
                Some(prev) => prev.mul(&value)?,
            });
        }
        let mut scalar = scalar.unwrap_or_else(|| FieldScalar::from_integer(descriptor, 1));
        if negate {
            scalar = scalar.neg();
        }
        MonomialUnit::new(scalar, exponents)
    }

    /// Deterministic ordering used for canonical entry lists.
    pub fn sort_key(&self) -> (Vec<i64>, String) {
        (self.exponents.clone(), self.scalar.to_string())
    }
}

impl fmt::Display for MonomialUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.scalar.is_one() || self.exponents.iter().all(|&e| e == 0) {
            parts.push(self.scalar.to_string());
        }
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(format!("t{}", i + 1));
            } else {
                parts.push(format!("t{}^{}", i + 1, e));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Square class of a unit of R_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitSquareClass {
    pub k_class: SquareClassKey,
    pub parity: Vec<bool>,
}

impl UnitSquareClass {
    /// The parity vector as a subset bitmask (variable i ↔ bit i−1).
    pub fn parity_mask(&self) -> Result<u32> {
        if self.parity.len() > 32 {
            return Err(Error::TooManyVariables {
                n: self.parity.len(),
                max: 32,
            });
        }
        let mut mask = 0u32;
        for (i, &b) in self.parity.iter().enumerate() {
            if b {
                mask |= 1 << i;
            }
        }
        Ok(mask)
    }
}

/// A finite-support element of F_n: a map from exponent vectors to nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentElement {
    descriptor: FieldDescriptor,
    n: usize,
    terms: BTreeMap<Vec<i64>, FieldScalar>,
}

/// The F_n valuation order: compare (e_n, …, e_1) lexicographically.
fn series_order(a: &[i64], b: &[i64]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl LaurentElement {
    pub fn zero(descriptor: FieldDescriptor, n: usize) -> Self {
        LaurentElement {
            descriptor,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        descriptor: FieldDescriptor,
        n: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, FieldScalar)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<i64>, FieldScalar> = BTreeMap::new();
        for (exp, coeff) in terms {
            if exp.len() != n {
                return Err(Error::SizeMismatch);
            }
            if coeff.descriptor() != descriptor {
                return Err(Error::FieldMismatch);
            }
            if coeff.is_zero() {
                continue;
            }
            match map.remove(&exp) {
                None => {
                    map.insert(exp, coeff);
                }
                Some(prev) => {
                    // coefficients of equal exponent vectors accumulate
                    let sum = prev.add(&coeff)?;
                    if !sum.is_zero() {
                        map.insert(exp, sum);
                    }
                }
            }
        }
        Ok(LaurentElement {
            descriptor,
            n,
            terms: map,
        })
    }

    pub fn from_monomial(u: &MonomialUnit) -> Self {
        LaurentElement {
            descriptor: u.descriptor(),
            n: u.n(),
            terms: BTreeMap::from([(u.exponents().to_vec(), u.scalar().clone())]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &LaurentElement) -> Result<LaurentElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch);
        }
        if self.descriptor != other.descriptor {
            return Err(Error::FieldMismatch);
        }
        let mut acc: Vec<(Vec<i64>, FieldScalar)> = Vec::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                acc.push((exp, ca.mul(cb)?));
            }
        }
        LaurentElement::from_terms(self.descriptor, self.n, acc)
    }

    /// The minimal term in the F_n order.  Every other term is strictly
    /// larger, so f = leading·(1 + m) with m topologically small; in odd
    /// characteristic (1 + m) is a square and the square class of f equals
    /// that of its leading unit.
    pub fn leading_unit(&self) -> Result<MonomialUnit> {
        let (exp, coeff) = self
            .terms
            .iter()
            .min_by(|(a, _), (b, _)| series_order(a, b))
            .ok_or(Error::ZeroElement)?;
        MonomialUnit::new(coeff.clone(), exp.clone())
    }

    /// A single-term element converts to a unit; anything else is rejected.
    pub fn to_monomial_unit(&self) -> Result<MonomialUnit> {
        if self.terms.len() != 1 {
            return Err(Error::NonMonomialEntry);
        }
        self.leading_unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;
    const R: FieldDescriptor = FieldDescriptor::RealClosed;

    fn unit(s: &str, n: usize) -> MonomialUnit {
        MonomialUnit::parse(Q, n, s).unwrap()
    }

    #[test]
    fn unit_square_class_examples() {
        // 5·t1³·t2² ↦ (class 5, parity [1,0])
        let u = unit("5*t1^3*t2^2", 2);
        let c = u.unit_square_class();
        assert_eq!(c.k_class.to_string(), "5");
        assert_eq!(c.parity, vec![true, false]);

        let one = MonomialUnit::one(Q, 3);
        let c = one.unit_square_class();
        assert!(c.k_class.is_one());
        assert_eq!(c.parity, vec![false, false, false]);

        let v = MonomialUnit::parse(R, 1, "-9*t1^-1").unwrap();
        let c = v.unit_square_class();
        assert_eq!(c.k_class.to_string(), "-1");
        assert_eq!(c.parity, vec![true]);
    }

    #[test]
    fn coordinate_residue_examples() {
        let u = unit("5*t1^3*t2^2", 2);
        let (parity, stripped) = u.coordinate_residues(1).unwrap();
        assert_eq!(parity, 1);
        assert_eq!(stripped, unit("5*t1^2", 1));

        let v = unit("t1*t2", 2);
        let (parity, stripped) = v.coordinate_residues(2).unwrap();
        assert_eq!(parity, 1);
        assert_eq!(stripped, unit("t1", 1));

        let w = unit("7", 1);
        let (parity, stripped) = w.coordinate_residues(1).unwrap();
        assert_eq!(parity, 0);
        assert_eq!(stripped, MonomialUnit::parse(Q, 0, "7").unwrap());

        assert_eq!(
            w.coordinate_residues(2),
            Err(Error::IndexOutOfRange { index: 2, n: 1 })
        );
    }

    #[test]
    fn leading_unit_examples() {
        let s = |v: i64| FieldScalar::from_integer(Q, v);
        // t2 + t1·t2 + t2²: minimal (e2, e1) is (1, 0)
        let f = LaurentElement::from_terms(
            Q,
            2,
            [
                (vec![0, 1], s(1)),
                (vec![1, 1], s(1)),
                (vec![0, 2], s(1)),
            ],
        )
        .unwrap();
        assert_eq!(f.leading_unit().unwrap(), unit("t2", 2));

        // 3 + t1: the constant term leads
        let g = LaurentElement::from_terms(Q, 1, [(vec![0], s(3)), (vec![1], s(1))]).unwrap();
        assert_eq!(g.leading_unit().unwrap(), unit("3", 1));

        // t1²·t2⁻¹ + 7·t2⁻¹: among e2 = −1 the minimal e1 = 0 wins
        let h = LaurentElement::from_terms(
            Q,
            2,
            [(vec![2, -1], s(1)), (vec![0, -1], s(7))],
        )
        .unwrap();
        assert_eq!(h.leading_unit().unwrap(), unit("7*t2^-1", 2));

        assert_eq!(
            LaurentElement::zero(Q, 2).leading_unit(),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn leading_unit_is_multiplicative() {
        let s = |v: i64| FieldScalar::from_integer(Q, v);
        let f = LaurentElement::from_terms(
            Q,
            2,
            [(vec![1, 0], s(2)), (vec![0, 1], s(3)), (vec![2, 2], s(-1))],
        )
        .unwrap();
        let g = LaurentElement::from_terms(
            Q,
            2,
            [(vec![-1, 0], s(5)), (vec![3, 1], s(7))],
        )
        .unwrap();
        let fg = f.mul(&g).unwrap();
        let lhs = fg.leading_unit().unwrap();
        let rhs = f
            .leading_unit()
            .unwrap()
            .mul(&g.leading_unit().unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_square_class_is_a_homomorphism() {
        let us = [
            unit("5*t1^3*t2^2", 2),
            unit("-3*t1*t2^-1", 2),
            unit("2*t2^4", 2),
            unit("7*t1^-2*t2^3", 2),
        ];
        for u in &us {
            for v in &us {
                let prod = u.mul(v).unwrap().unit_square_class();
                let cu = u.unit_square_class();
                let cv = v.unit_square_class();
                let expected_parity: Vec<bool> = cu
                    .parity
                    .iter()
                    .zip(&cv.parity)
                    .map(|(a, b)| a ^ b)
                    .collect();
                assert_eq!(prod.parity, expected_parity);
                assert_eq!(
                    prod.k_class,
                    crate::basefield::class_mul(Q, &cu.k_class, &cv.k_class)
                );
            }
            // invariance under multiplication by squares
            for w in &us {
                let scaled = u.mul(&w.square()).unwrap();
                assert_eq!(scaled.unit_square_class(), u.unit_square_class());
            }
        }
    }

    #[test]
    fn monomial_text_round_trip() {
        for s in ["5*t1^3*t2^2", "-9*t1^-1", "1", "t1*t2", "-1", "7*t2"] {
            let n = 2;
            let u = MonomialUnit::parse(Q, n, s).unwrap();
            let printed = u.to_string();
            let back = MonomialUnit::parse(Q, n, &printed).unwrap();
            assert_eq!(u, back, "{s} -> {printed}");
        }
        assert!(MonomialUnit::parse(Q, 1, "t2").is_err());
        assert!(MonomialUnit::parse(Q, 1, "0").is_err());
        assert!(MonomialUnit::parse(Q, 1, "").is_err());
    }

    #[test]
    fn non_monomial_rejected() {
        let s = |v: i64| FieldScalar::from_integer(Q, v);
        let f =
            LaurentElement::from_terms(Q, 1, [(vec![0], s(3)), (vec![1], s(1))]).unwrap();
        assert_eq!(f.to_monomial_unit(), Err(Error::NonMonomialEntry));
    }
}
