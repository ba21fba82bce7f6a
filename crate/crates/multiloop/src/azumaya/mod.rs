//! Monomial Brauer classes over Laurent rings and their GL_n(ℤ)-orbit
//! calculus.
//!
//! A tensor product of symbol algebras A(t_i,t_j)^s_r (presented by
//! X^s = t_i, Y^s = t_j, YX = ζ_s^r XY) contributes the fraction r/s at the
//! positions (i,j)/(j,i) of a skew-symmetric matrix over ℚ/ℤ — the
//! [`BrauerMatrix`] of the class.  Invertible monomial substitutions of the
//! variables act by congruence B ↦ g·B·gᵀ with g ∈ GL_n(ℤ);
//! [`skew_normal_form`] reduces any such matrix to a block-diagonal
//! alternating normal form with a divisibility chain on the block orders,
//! carrying an explicit unimodular witness.  The product of the block
//! orders is the index of the algebra over the iterated Laurent series
//! field; a degree-d class is division exactly when the index equals d.

mod intmat;
mod orbit;

pub use intmat::IntMatrix;
pub use orbit::{orbit_equivalent, OrbitVerdict};

use crate::{Error, Result};
use std::fmt;

/// A fraction in ℚ/ℤ, stored reduced with numerator in [0, den).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QmodZ {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    (a / gcd(a, b))
        .checked_mul(b)
        .expect("additive order overflows u64")
}

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<QmodZ> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::reduce(num as i128, den as i128))
    }

    fn reduce(num: i128, den: i128) -> QmodZ {
        let den = if den < 0 { -den } else { den };
        let num = num.rem_euclid(den);
        let g = gcd(num as u64, den as u64);
        QmodZ {
            num: (num as u64) / g,
            den: (den as u64) / g,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Additive order in ℚ/ℤ.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    /// Integer multiple k·q mod 1.
    pub fn scale(self, k: i64) -> QmodZ {
        Self::reduce(self.num as i128 * k as i128, self.den as i128)
    }

    /// Whether self lies in the cyclic subgroup generated by other, i.e.
    /// self = c·other mod 1 for an integer c.
    pub fn is_multiple_of(&self, other: &QmodZ) -> bool {
        other.den.is_multiple_of(self.den)
    }

    /// The integer c ∈ [0, ord(other)) with self = c·other, when it exists.
    pub fn multiple_coefficient(&self, other: &QmodZ) -> Option<i64> {
        if !self.is_multiple_of(other) {
            return None;
        }
        let n = other.den;
        // self = (num·n/den)/n, other = a/n with gcd(a, n) = 1
        let target = self.num * (n / self.den);
        let a_inv = mod_inverse(other.num % n, n)?;
        Some(((target as u128 * a_inv as u128) % n as u128) as i64)
    }

    pub fn parse(s: &str) -> Result<QmodZ> {
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad fraction '{s}'")))?;
                QmodZ::new(n, 1)
            }
            Some((n, d)) => {
                let num: i64 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad numerator '{n}'")))?;
                let den: i64 = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad denominator '{d}'")))?;
                QmodZ::new(num, den)
            }
        }
    }
}

impl std::ops::Add for QmodZ {
    type Output = QmodZ;
    fn add(self, other: QmodZ) -> QmodZ {
        let den = lcm(self.den, other.den) as i128;
        let num = self.num as i128 * (den / self.den as i128)
            + other.num as i128 * (den / other.den as i128);
        Self::reduce(num, den)
    }
}

impl std::ops::Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        Self::reduce(self.den as i128 - self.num as i128, self.den as i128)
    }
}

impl std::ops::Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, other: QmodZ) -> QmodZ {
        self + (-other)
    }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One symbol algebra A(t_i, t_j)^s_r: degree s, twist r with gcd(r,s) = 1,
/// on the variables t_i, t_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolFactor {
    pub s: u64,
    pub r: u64,
    pub i: usize,
    pub j: usize,
}

impl SymbolFactor {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.s < 1 {
            return Err(Error::InvalidDescriptor("factor degree s must be ≥ 1".into()));
        }
        if self.r < 1 || self.r > self.s {
            return Err(Error::InvalidDescriptor(format!(
                "twist r = {} outside 1..={}",
                self.r, self.s
            )));
        }
        if gcd(self.r, self.s) != 1 {
            return Err(Error::InvalidDescriptor(format!(
                "gcd(r, s) = gcd({}, {}) ≠ 1",
                self.r, self.s
            )));
        }
        if self.i == self.j {
            return Err(Error::InvalidDescriptor("symbol variables must differ".into()));
        }
        for idx in [self.i, self.j] {
            if idx < 1 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        Ok(())
    }
}

/// The normal-form data of a toral class of degree d over n variables:
/// a matrix block M_{s0} and m symbol factors on the consecutive variable
/// pairs (t_1,t_2), …, (t_{2m−1},t_{2m}), with s_0·s_1·…·s_m = d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToralDescriptor {
    pub n: usize,
    pub d: u64,
    pub s0: u64,
    pub factors: Vec<SymbolFactor>,
}

impl ToralDescriptor {
    pub fn m(&self) -> usize {
        self.factors.len()
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.m();
        if 2 * m > self.n {
            return Err(Error::InvalidDescriptor(format!(
                "0 ≤ 2m ≤ n violated: m = {m}, n = {}",
                self.n
            )));
        }
        if self.s0 < 1 {
            return Err(Error::InvalidDescriptor("s0 must be ≥ 1".into()));
        }
        let mut product = self.s0;
        for (k, factor) in self.factors.iter().enumerate() {
            factor.validate(self.n)?;
            if factor.i != 2 * k + 1 || factor.j != 2 * k + 2 {
                return Err(Error::InvalidDescriptor(format!(
                    "factor {} must sit on the pair (t{}, t{})",
                    k + 1,
                    2 * k + 1,
                    2 * k + 2
                )));
            }
            product = product.checked_mul(factor.s).ok_or_else(|| {
                Error::InvalidDescriptor("degree product overflows".into())
            })?;
        }
        if product != self.d {
            return Err(Error::InvalidDescriptor(format!(
                "s0·s1·…·sm = {product} ≠ d = {}",
                self.d
            )));
        }
        Ok(())
    }

    /// The Brauer matrix of the class: r_k/s_k at (2k−1, 2k).  The matrix
    /// block M_{s0} does not appear (it is invisible to the Brauer class).
    pub fn brauer_matrix(&self) -> Result<BrauerMatrix> {
        self.validate()?;
        let mut b = BrauerMatrix::zero(self.n);
        for factor in &self.factors {
            let q = QmodZ::new(factor.r as i64, factor.s as i64)?;
            b.add_at(factor.i, factor.j, q)?;
        }
        Ok(b)
    }
}

/// Skew-symmetric n×n matrix over ℚ/ℤ encoding a monomial Brauer class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrauerMatrix {
    n: usize,
    entries: Vec<QmodZ>,
}

impl BrauerMatrix {
    pub fn zero(n: usize) -> Self {
        BrauerMatrix {
            n,
            entries: vec![QmodZ::ZERO; n * n],
        }
    }

    /// Builds from rows, validating skew-symmetry (q_ji = −q_ij, zero
    /// diagonal).
    pub fn from_rows(rows: Vec<Vec<QmodZ>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch);
        }
        let b = BrauerMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        for i in 0..n {
            if !b.get(i + 1, i + 1).is_zero() {
                return Err(Error::NotSkewSymmetric);
            }
            for j in i + 1..n {
                if (-b.get(i + 1, j + 1)) != b.get(j + 1, i + 1) {
                    return Err(Error::NotSkewSymmetric);
                }
            }
        }
        Ok(b)
    }

    /// The class Σ r_k/s_k at free positions (i_k, j_k).
    pub fn from_symbols(n: usize, factors: &[SymbolFactor]) -> Result<Self> {
        let mut b = BrauerMatrix::zero(n);
        for factor in factors {
            factor.validate(n)?;
            b.add_at(factor.i, factor.j, QmodZ::new(factor.r as i64, factor.s as i64)?)?;
        }
        Ok(b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry (i, j), 1-based.
    pub fn get(&self, i: usize, j: usize) -> QmodZ {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    fn get0(&self, i: usize, j: usize) -> QmodZ {
        self.entries[i * self.n + j]
    }

    fn set0(&mut self, i: usize, j: usize, q: QmodZ) {
        self.entries[i * self.n + j] = q;
    }

    /// Adds q at (i, j) and −q at (j, i), 1-based.
    pub fn add_at(&mut self, i: usize, j: usize, q: QmodZ) -> Result<()> {
        if i == j {
            return Err(Error::NotSkewSymmetric);
        }
        for idx in [i, j] {
            if idx < 1 || idx > self.n {
                return Err(Error::IndexOutOfRange { index: idx, n: self.n });
            }
        }
        self.set0(i - 1, j - 1, self.get0(i - 1, j - 1) + q);
        self.set0(j - 1, i - 1, self.get0(j - 1, i - 1) + (-q));
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|q| q.is_zero())
    }

    /// Entrywise sum mod 1 — addition of Brauer classes.
    pub fn tensor(&self, other: &BrauerMatrix) -> Result<BrauerMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(BrauerMatrix { n: self.n, entries })
    }

    /// Additive order of the class: the least N ≥ 1 with N·B = 0.
    pub fn additive_order(&self) -> u64 {
        self.entries.iter().fold(1, |acc, q| lcm(acc, q.order()))
    }

    /// Row i with entry i removed (1-based): the ramification datum of the
    /// class at the valuation v_{t_i}; all-zero iff no symbol involves t_i.
    pub fn ramification_row(&self, i: usize) -> Result<Vec<QmodZ>> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok((1..=self.n)
            .filter(|&j| j != i)
            .map(|j| self.get(i, j))
            .collect())
    }

    // symmetric elementary operations (congruence by the elementary matrix)

    /// Row a += λ·row b and column a += λ·column b (0-based).
    pub(crate) fn transvect(&mut self, a: usize, b: usize, lambda: i64) {
        for j in 0..self.n {
            let v = self.get0(a, j) + self.get0(b, j).scale(lambda);
            self.set0(a, j, v);
        }
        for i in 0..self.n {
            let v = self.get0(i, a) + self.get0(i, b).scale(lambda);
            self.set0(i, a, v);
        }
    }

    /// Swap rows a, b and columns a, b (0-based).
    pub(crate) fn swap(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            let x = self.get0(a, j);
            self.set0(a, j, self.get0(b, j));
            self.set0(b, j, x);
        }
        for i in 0..self.n {
            let x = self.get0(i, a);
            self.set0(i, a, self.get0(i, b));
            self.set0(i, b, x);
        }
    }

    /// Negate row a and column a (0-based).
    pub(crate) fn negate_coord(&mut self, a: usize) {
        for j in 0..self.n {
            self.set0(a, j, -self.get0(a, j));
        }
        for i in 0..self.n {
            self.set0(i, a, -self.get0(i, a));
        }
    }

    pub(crate) fn state_key(&self) -> Vec<QmodZ> {
        self.entries.clone()
    }
}

impl fmt::Display for BrauerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cols: Vec<String> =
                    (0..self.n).map(|j| self.get0(i, j).to_string()).collect();
                format!("[{}]", cols.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Congruence action of GL_n(ℤ): B ↦ g·B·gᵀ, exact over ℚ/ℤ.
pub fn unimodular_act(g: &IntMatrix, b: &BrauerMatrix) -> Result<BrauerMatrix> {
    if g.n() != b.n() {
        return Err(Error::SizeMismatch);
    }
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let n = b.n();
    // D = g·B
    let mut d = BrauerMatrix::zero(n);
    for i in 0..n {
        for l in 0..n {
            let mut acc = QmodZ::ZERO;
            for k in 0..n {
                acc = acc + b.get0(k, l).scale(g.get(i, k));
            }
            d.set0(i, l, acc);
        }
    }
    // C = D·gᵀ
    let mut c = BrauerMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = QmodZ::ZERO;
            for l in 0..n {
                acc = acc + d.get0(i, l).scale(g.get(j, l));
            }
            c.set0(i, j, acc);
        }
    }
    Ok(c)
}

/// The alternating normal form: 2×2 blocks [[0, q_k], [−q_k, 0]] with
/// ord(q_1) ≥ ord(q_2) ≥ … and ord(q_{k+1}) | ord(q_k), then a zero block
/// of size rank_zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewNormalForm {
    pub blocks: Vec<QmodZ>,
    pub rank_zero: usize,
}

impl SkewNormalForm {
    /// The block orders, in chain order.
    pub fn ord_list(&self) -> Vec<u64> {
        self.blocks.iter().map(|q| q.order()).collect()
    }

    /// Product of the block orders — the index of a class with this normal
    /// form.
    pub fn index(&self) -> u64 {
        self.blocks.iter().map(|q| q.order()).product()
    }

    /// The block-diagonal matrix itself.
    pub fn to_matrix(&self) -> BrauerMatrix {
        let n = 2 * self.blocks.len() + self.rank_zero;
        let mut b = BrauerMatrix::zero(n);
        for (k, q) in self.blocks.iter().enumerate() {
            b.add_at(2 * k + 1, 2 * k + 2, *q).expect("indices in range");
        }
        b
    }
}

/// Reduces a skew matrix to its alternating normal form under GL_n(ℤ),
/// returning the form and a unimodular witness W with W·B·Wᵀ equal to the
/// block-diagonal spelling.
///
/// Pivoting rule: the entry of maximal additive order (ties broken by
/// lowest (i, j)) is moved to the current 2×2 corner; row combinations
/// raise its order to the lcm of everything in its two rows, then the rows
/// are cleared; if the untouched complement still holds an entry whose
/// order does not divide the pivot's, that row is folded in and the
/// absorption repeats.  Each absorption strictly increases the pivot order,
/// which is bounded by the lcm of all entry orders, so the loop terminates.
pub fn skew_normal_form(b: &BrauerMatrix) -> (SkewNormalForm, IntMatrix) {
    let n = b.n();
    let mut work = b.clone();
    let mut witness = IntMatrix::identity(n);
    let mut blocks = Vec::new();
    let mut offset = 0;

    while let Some((pi, pj)) = pick_pivot(&work, offset) {
        // move the pivot to (offset, offset + 1); pick_pivot guarantees
        // offset ≤ pi < pj, so the two swaps cannot collide
        if pi != offset {
            work.swap(pi, offset);
            witness.row_swap(pi, offset);
        }
        if pj != offset + 1 {
            work.swap(pj, offset + 1);
            witness.row_swap(pj, offset + 1);
        }
        let u = offset;
        let v = offset + 1;
        loop {
            absorb_into_pivot(&mut work, &mut witness, u, v);
            clear_pivot_rows(&mut work, &mut witness, u, v);
            // the pivot must divide the untouched complement before we move on
            let pivot_ord = work.get0(u, v).order();
            let mut stubborn = None;
            'scan: for r in v + 1..n {
                for s in r + 1..n {
                    if !pivot_ord.is_multiple_of(work.get0(r, s).order()) {
                        stubborn = Some(r);
                        break 'scan;
                    }
                }
            }
            match stubborn {
                None => break,
                Some(r) => {
                    work.transvect(u, r, 1);
                    witness.row_add(u, r, 1);
                }
            }
        }
        // canonical block sign: numerator in [0, den/2]
        let p = work.get0(u, v);
        if p.numer() * 2 > p.order() {
            work.negate_coord(v);
            witness.row_negate(v);
        }
        blocks.push(work.get0(u, v));
        offset += 2;
    }

    (
        SkewNormalForm {
            blocks,
            rank_zero: n - offset,
        },
        witness,
    )
}

/// The nonzero entry of maximal additive order in the trailing submatrix,
/// ties broken by lowest (i, j).
fn pick_pivot(b: &BrauerMatrix, offset: usize) -> Option<(usize, usize)> {
    let n = b.n();
    let mut best: Option<(u64, usize, usize)> = None;
    for i in offset..n {
        for j in i + 1..n {
            let q = b.get0(i, j);
            if q.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((ord, bi, bj)) => q.order() > ord || (q.order() == ord && (i, j) < (bi, bj)),
            };
            if better {
                best = Some((q.order(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Raises the pivot (u, v) to the lcm of the orders in its two rows by
/// symmetric row combinations.
fn absorb_into_pivot(work: &mut BrauerMatrix, witness: &mut IntMatrix, u: usize, v: usize) {
    let n = work.n();
    loop {
        let p = work.get0(u, v);
        let mut target = None;
        for r in 0..n {
            if r == u || r == v {
                continue;
            }
            if !work.get0(u, r).is_multiple_of(&p) {
                target = Some((v, r, work.get0(u, r)));
                break;
            }
            if !work.get0(v, r).is_multiple_of(&p) {
                target = Some((u, r, work.get0(v, r)));
                break;
            }
        }
        let Some((pivot_row, r, x)) = target else {
            return;
        };
        let sign = if pivot_row == v { 1 } else { -1 };
        let lambda = max_order_coefficient(p, x, sign);
        work.transvect(pivot_row, r, lambda);
        witness.row_add(pivot_row, r, lambda);
    }
}

/// The smallest λ ≥ 0 with ord(p + sign·λ·x) = lcm(ord p, ord x), chosen by
/// CRT over the primes of ord(x): the subgroup ⟨p, x⟩ of ℚ/ℤ is cyclic of
/// order lcm, and at each prime at most one residue class of λ loses the
/// maximal valuation, so a class in {0, 1, 2} always works.
fn max_order_coefficient(p: QmodZ, x: QmodZ, sign: i64) -> i64 {
    let goal = lcm(p.order(), x.order());
    let combination = |l: i64| p + x.scale(sign * l);
    let mut modulus: i128 = 1;
    let mut lambda: i128 = 0;
    for ell in prime_divisors(x.order()) {
        let target = prime_power_in(goal, ell);
        // only λ mod ℓ matters for the ℓ-adic order of the combination
        let c = (0..3.min(ell as i64))
            .find(|&c| prime_power_in(combination(c).order(), ell) == target)
            .expect("some residue class keeps the maximal prime power");
        // CRT-combine λ ≡ c (mod ℓ) into the accumulated congruence
        let ell = ell as i128;
        while lambda % ell != c as i128 {
            lambda += modulus;
        }
        modulus *= ell;
    }
    let lambda = i64::try_from(lambda).expect("coefficient fits i64");
    debug_assert_eq!(combination(lambda).order(), goal);
    lambda
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The exact power of ℓ dividing n.
fn prime_power_in(mut n: u64, ell: u64) -> u64 {
    let mut power = 1;
    while n.is_multiple_of(ell) {
        power *= ell;
        n /= ell;
    }
    power
}

/// Clears every entry of rows u, v outside the pivot block; all of them are
/// integer multiples of the pivot after absorption.
fn clear_pivot_rows(work: &mut BrauerMatrix, witness: &mut IntMatrix, u: usize, v: usize) {
    let n = work.n();
    let p = work.get0(u, v);
    for r in 0..n {
        if r == u || r == v {
            continue;
        }
        let x = work.get0(u, r);
        if !x.is_zero() {
            let c = x
                .multiple_coefficient(&p)
                .expect("entries in pivot rows divide the pivot after absorption");
            work.transvect(r, v, -c);
            witness.row_add(r, v, -c);
        }
        let y = work.get0(v, r);
        if !y.is_zero() {
            let c = y
                .multiple_coefficient(&p)
                .expect("entries in pivot rows divide the pivot after absorption");
            work.transvect(r, u, c);
            witness.row_add(r, u, c);
        }
    }
}

/// Index and split degree of a degree-d class: the index is the product of
/// the normal-form block orders, and d = index·s0.
pub fn index_and_split(b: &BrauerMatrix, d: u64) -> Result<(u64, u64)> {
    if d < 1 {
        return Err(Error::InvalidDescriptor("degree must be ≥ 1".into()));
    }
    let (nf, _) = skew_normal_form(b);
    let index = nf.index();
    if !d.is_multiple_of(index) {
        return Err(Error::DegreeIncompatible { index, degree: d });
    }
    Ok((index, d / index))
}

/// All toral descriptors of degree d over n variables, in deterministic
/// order: m ascending, then lexicographic on (s_1, r_1, s_2, r_2, …).
/// Trivial factors (s = 1) are never emitted — they would duplicate the
/// matrix-block part.  No orbit deduplication is attempted here.
pub fn enumerate_toral(d: u64, n: usize) -> Vec<ToralDescriptor> {
    (0..=(n / 2))
        .flat_map(|m| enumerate_toral_with_factor_count(d, n, m))
        .collect()
}

/// The descriptors with exactly m symbol factors, in lexicographic order —
/// the natural unit for partitioning the enumeration across workers.
pub fn enumerate_toral_with_factor_count(d: u64, n: usize, m: usize) -> Vec<ToralDescriptor> {
    let mut out = Vec::new();
    if 2 * m <= n {
        let mut factors = Vec::new();
        extend_factors(d, n, m, 1, &mut factors, &mut out);
    }
    out
}

fn extend_factors(
    d: u64,
    n: usize,
    m: usize,
    product: u64,
    factors: &mut Vec<SymbolFactor>,
    out: &mut Vec<ToralDescriptor>,
) {
    if factors.len() == m {
        out.push(ToralDescriptor {
            n,
            d,
            s0: d / product,
            factors: factors.clone(),
        });
        return;
    }
    let k = factors.len();
    for s in 2..=(d / product) {
        if !(d / product).is_multiple_of(s) {
            continue;
        }
        for r in 1..=s {
            if gcd(r, s) != 1 {
                continue;
            }
            factors.push(SymbolFactor {
                s,
                r,
                i: 2 * k + 1,
                j: 2 * k + 2,
            });
            extend_factors(d, n, m, product * s, factors, out);
            factors.pop();
        }
    }
}
