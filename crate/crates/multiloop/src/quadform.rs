//! Diagonal quadratic forms over R_n and their canonical loop normal form.
//!
//! A nonsingular diagonal form over R_n has monomial-unit entries.  Reducing
//! every entry modulo squares sorts it into slots indexed by subsets
//! I ⊆ {1,…,n}: the form is isometric to ⊕_I ⟨t_I⟩ ⊗ q_I with each q_I a
//! diagonal form over the base field, and after Witt-decomposing the slots
//! over k (hyperbolic planes are isometric to ⟨1,−1⟩ regardless of the
//! monomial factor) the representative with anisotropic slots plus a
//! hyperbolic count is canonical.  Isometry over R_n for such forms is
//! decided by comparing slots up to base-field isometry.
//!
//! Springer decomposition at a coordinate valuation splits a form over
//! F_n = F_{n−1}((t_n)) by exponent parity; iterating it down to the base
//! field yields the Witt decomposition over F_n, second residues, and
//! unramifiedness at the coordinate hyperplanes.

use crate::basefield::{
    is_isometric_k, witt_decompose_k, FieldDescriptor, KDiagonalForm, SquareClassKey,
};
use crate::laurent::MonomialUnit;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Most variables the subset-bitmask bookkeeping supports.
pub const MAX_VARS: usize = 32;

/// A diagonal quadratic form ⟨b_1,…,b_d⟩ over R_n with monomial-unit
/// entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RDiagonalForm {
    descriptor: FieldDescriptor,
    n: usize,
    entries: Vec<MonomialUnit>,
}

impl RDiagonalForm {
    pub fn new(
        descriptor: FieldDescriptor,
        n: usize,
        entries: Vec<MonomialUnit>,
    ) -> Result<Self> {
        for e in &entries {
            if e.descriptor() != descriptor {
                return Err(Error::FieldMismatch);
            }
            if e.n() != n {
                return Err(Error::SizeMismatch);
            }
        }
        Ok(RDiagonalForm { descriptor, n, entries })
    }

    /// Parses entries in the monomial syntax, e.g. ["5*t1^3*t2^2", "7*t2"].
    /// A zero entry makes the form singular.
    pub fn parse(descriptor: FieldDescriptor, n: usize, entries: &[&str]) -> Result<Self> {
        let parsed: Result<Vec<MonomialUnit>> = entries
            .iter()
            .map(|s| {
                MonomialUnit::parse(descriptor, n, s).map_err(|e| match e {
                    Error::ZeroScalar => Error::SingularForm,
                    other => other,
                })
            })
            .collect();
        RDiagonalForm::new(descriptor, n, parsed?)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[MonomialUnit] {
        &self.entries
    }

    /// Orthogonal sum.
    pub fn orthogonal_sum(&self, other: &RDiagonalForm) -> Result<RDiagonalForm> {
        if self.descriptor != other.descriptor {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RDiagonalForm::new(self.descriptor, self.n, entries)
    }

    /// Entrywise scaling by a unit (⟨u⟩ ⊗ q).
    pub fn scaled(&self, u: &MonomialUnit) -> Result<RDiagonalForm> {
        let entries: Result<Vec<MonomialUnit>> =
            self.entries.iter().map(|e| e.mul(u)).collect();
        RDiagonalForm::new(self.descriptor, self.n, entries?)
    }

    /// Splits q ≅ q_even ⊥ ⟨t_i⟩·q_odd at the valuation v_{t_i} (1-based i).
    /// Both parts live over n−1 variables: entries keep their other
    /// exponents, with t_i^{e_i} stripped (even powers are squares; odd
    /// powers contribute the ⟨t_i⟩ factor and leave a square behind).
    pub fn springer_decompose(&self, i: usize) -> Result<(RDiagonalForm, RDiagonalForm)> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for e in &self.entries {
            let (parity, stripped) = e.coordinate_residues(i)?;
            if parity == 0 {
                even.push(stripped);
            } else {
                odd.push(stripped);
            }
        }
        Ok((
            RDiagonalForm::new(self.descriptor, self.n - 1, even)?,
            RDiagonalForm::new(self.descriptor, self.n - 1, odd)?,
        ))
    }

    /// First and second residues at v_{t_i}: the even/odd parity split,
    /// returned without re-interpretation.  The form is unramified at t_i
    /// iff the second part is hyperbolic over F_{n−1}
    /// (see [`RDiagonalForm::is_unramified_at`]).
    pub fn second_residue(&self, i: usize) -> Result<(Vec<MonomialUnit>, Vec<MonomialUnit>)> {
        let (even, odd) = self.springer_decompose(i)?;
        Ok((even.entries, odd.entries))
    }

    /// Whether the second residue at t_i is Witt-trivial.
    pub fn is_unramified_at(&self, i: usize) -> Result<bool> {
        let (_, odd) = self.springer_decompose(i)?;
        Ok(odd.witt_decompose_f()?.kernel.dim() == 0)
    }

    /// Witt decomposition over F_n by iterated Springer decomposition at the
    /// outermost variable: kernels recombine as kernel(q') ⊥ ⟨t_n⟩·kernel(q″)
    /// and Witt indices add.
    pub fn witt_decompose_f(&self) -> Result<WittDecompositionF> {
        if self.n == 0 {
            let scalars: Vec<_> = self.entries.iter().map(|e| e.scalar().clone()).collect();
            let q = KDiagonalForm::from_scalars(self.descriptor, &scalars)?;
            let (kernel, witt_index) = witt_decompose_k(&q);
            let entries: Vec<MonomialUnit> = kernel
                .entries()
                .iter()
                .map(|c| {
                    MonomialUnit::new(c.representative(self.descriptor), Vec::new())
                        .expect("class representatives are nonzero")
                })
                .collect();
            return Ok(WittDecompositionF {
                kernel: RDiagonalForm::new(self.descriptor, 0, entries)?,
                witt_index,
            });
        }
        let (even, odd) = self.springer_decompose(self.n)?;
        let de = even.witt_decompose_f()?;
        let dodd = odd.witt_decompose_f()?;
        let mut entries: Vec<MonomialUnit> = de
            .kernel
            .entries
            .iter()
            .map(|e| e.insert_coordinate(self.n, 0))
            .collect();
        entries.extend(
            dodd.kernel
                .entries
                .iter()
                .map(|e| e.insert_coordinate(self.n, 1)),
        );
        entries.sort_by_key(|e| e.sort_key());
        Ok(WittDecompositionF {
            kernel: RDiagonalForm::new(self.descriptor, self.n, entries)?,
            witt_index: de.witt_index + dodd.witt_index,
        })
    }

    /// The canonical loop normal form: entries are bucketed into slots by
    /// the parity vector of their square class, each slot is
    /// Witt-decomposed over k, and all hyperbolic planes are pooled into a
    /// single count.
    pub fn loop_normal_form(&self) -> Result<LoopNormalForm> {
        if self.n > MAX_VARS {
            return Err(Error::TooManyVariables { n: self.n, max: MAX_VARS });
        }
        let mut buckets: BTreeMap<u32, Vec<SquareClassKey>> = BTreeMap::new();
        for e in &self.entries {
            let class = e.unit_square_class();
            buckets
                .entry(class.parity_mask()?)
                .or_default()
                .push(class.k_class);
        }
        let mut slots = BTreeMap::new();
        let mut hyperbolic_count = 0usize;
        for (mask, classes) in buckets {
            let q = KDiagonalForm::new(self.descriptor, classes);
            let (kernel, w) = witt_decompose_k(&q);
            hyperbolic_count += w;
            if !kernel.is_empty() {
                slots.insert(mask, kernel);
            }
        }
        Ok(LoopNormalForm {
            descriptor: self.descriptor,
            n: self.n,
            slots,
            hyperbolic_count,
        })
    }
}

impl fmt::Display for RDiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Witt decomposition over F_n: an anisotropic kernel with monomial entries
/// and the number of hyperbolic planes split off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittDecompositionF {
    pub kernel: RDiagonalForm,
    pub witt_index: usize,
}

/// The canonical representative ⊕_I ⟨t_I⟩ ⊗ q_I ⊥ h·⟨1,−1⟩ of a diagonal
/// form over R_n: slots are keyed by the subset bitmask (variable i ↔ bit
/// i−1), every stored slot is anisotropic over k and nonempty, and the
/// hyperbolic planes are carried as a count on the ∅ slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopNormalForm {
    descriptor: FieldDescriptor,
    n: usize,
    slots: BTreeMap<u32, KDiagonalForm>,
    hyperbolic_count: usize,
}

impl LoopNormalForm {
    pub fn descriptor(&self) -> FieldDescriptor {
        self.descriptor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> &BTreeMap<u32, KDiagonalForm> {
        &self.slots
    }

    pub fn hyperbolic_count(&self) -> usize {
        self.hyperbolic_count
    }

    pub fn slot(&self, mask: u32) -> Option<&KDiagonalForm> {
        self.slots.get(&mask)
    }

    /// Total dimension Σ_I dim(q_I) + 2·hyperbolic_count.
    pub fn total_dim(&self) -> usize {
        self.slots.values().map(|q| q.dim()).sum::<usize>() + 2 * self.hyperbolic_count
    }

    /// The subset of variables for a slot mask, as sorted 1-based indices.
    pub fn subset_indices(mask: u32) -> Vec<usize> {
        (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Re-spells the normal form as a diagonal form over R_n.
    pub fn to_form(&self) -> Result<RDiagonalForm> {
        let mut entries = Vec::new();
        for (mask, q) in &self.slots {
            let exponents: Vec<i64> =
                (0..self.n).map(|b| i64::from(mask >> b & 1)).collect();
            for class in q.entries() {
                entries.push(MonomialUnit::new(
                    class.representative(self.descriptor),
                    exponents.clone(),
                )?);
            }
        }
        let one = MonomialUnit::one(self.descriptor, self.n);
        for _ in 0..self.hyperbolic_count {
            entries.push(one.clone());
            entries.push(one.negated());
        }
        RDiagonalForm::new(self.descriptor, self.n, entries)
    }
}

impl fmt::Display for LoopNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (mask, q) in &self.slots {
            let subset: Vec<String> = LoopNormalForm::subset_indices(*mask)
                .into_iter()
                .map(|i| i.to_string())
                .collect();
            parts.push(format!("{{{}}}: {}", subset.join(","), q));
        }
        if self.hyperbolic_count > 0 {
            parts.push(format!("hyperbolic: {}", self.hyperbolic_count));
        }
        write!(f, "[{}]", parts.join("; "))
    }
}

/// Isometry of diagonal forms over R_n: equal dimensions and slotwise
/// base-field isometry of the loop normal forms with matching hyperbolic
/// counts.
pub fn is_isometric_r(a: &RDiagonalForm, b: &RDiagonalForm) -> Result<bool> {
    if a.descriptor() != b.descriptor() || a.n() != b.n() {
        return Err(Error::FieldMismatch);
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let na = a.loop_normal_form()?;
    let nb = b.loop_normal_form()?;
    if na.hyperbolic_count != nb.hyperbolic_count {
        return Ok(false);
    }
    if na.slots.len() != nb.slots.len() {
        return Ok(false);
    }
    for (mask, qa) in &na.slots {
        match nb.slots.get(mask) {
            None => return Ok(false),
            Some(qb) => {
                if !is_isometric_k(qa, qb)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Counts isometry classes of dimension-d diagonal forms over R_n, i.e.
/// loop normal forms of total dimension d.  Only base fields with finitely
/// many anisotropic classes per dimension are supported: over the
/// real-closed field there is one class per signature ±m, over a finite
/// field the anisotropic dimensions are 0, 1, 2 with 1, 2, 1 classes.
///
/// Slot assignments are counted through the generating function
/// A(x)^(2^n) truncated at degree d, where A enumerates anisotropic
/// classes of each dimension; the hyperbolic count absorbs d − 2h.
pub fn count_loop_classes(descriptor: FieldDescriptor, n: usize, d: usize) -> Result<u64> {
    if n > 20 {
        return Err(Error::TooManyVariables { n, max: 20 });
    }
    let per_slot: Vec<u64> = match descriptor {
        FieldDescriptor::RealClosed => (0..=d).map(|m| if m == 0 { 1 } else { 2 }).collect(),
        FieldDescriptor::FiniteField { .. } => {
            (0..=d).map(|m| [1, 2, 1].get(m).copied().unwrap_or(0)).collect()
        }
        FieldDescriptor::Rationals => {
            return Err(Error::UnsupportedField(
                "anisotropic forms over Q are not finitely classifiable".into(),
            ));
        }
    };
    let assignments = truncated_power(&per_slot, 1u64 << n, d);
    let mut total: u64 = 0;
    for h in 0..=(d / 2) {
        total = total
            .checked_add(assignments[d - 2 * h])
            .ok_or(Error::TooManyVariables { n, max: 20 })?;
    }
    Ok(total)
}

/// The classes carrying exactly h hyperbolic planes — the natural unit for
/// partitioning the count across workers; summing over 0 ≤ h ≤ d/2
/// recovers [`count_loop_classes`].
pub fn count_loop_classes_with_hyperbolic(
    descriptor: FieldDescriptor,
    n: usize,
    d: usize,
    h: usize,
) -> Result<u64> {
    if n > 20 {
        return Err(Error::TooManyVariables { n, max: 20 });
    }
    if 2 * h > d {
        return Ok(0);
    }
    let per_slot: Vec<u64> = match descriptor {
        FieldDescriptor::RealClosed => (0..=d).map(|m| if m == 0 { 1 } else { 2 }).collect(),
        FieldDescriptor::FiniteField { .. } => {
            (0..=d).map(|m| [1, 2, 1].get(m).copied().unwrap_or(0)).collect()
        }
        FieldDescriptor::Rationals => {
            return Err(Error::UnsupportedField(
                "anisotropic forms over Q are not finitely classifiable".into(),
            ));
        }
    };
    let assignments = truncated_power(&per_slot, 1u64 << n, d);
    Ok(assignments[d - 2 * h])
}

/// Coefficients of base(x)^exp truncated at degree `degree`, by repeated
/// squaring; panics on u64 overflow of a coefficient.
fn truncated_power(base: &[u64], mut exp: u64, degree: usize) -> Vec<u64> {
    let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; degree + 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if i + j > degree {
                    break;
                }
                out[i + j] = out[i + j]
                    .checked_add(x.checked_mul(y).expect("class count overflow"))
                    .expect("class count overflow");
            }
        }
        out
    };
    let mut result = vec![0u64; degree + 1];
    result[0] = 1;
    let mut square = base[..=degree.min(base.len() - 1)].to_vec();
    square.resize(degree + 1, 0);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul(&result, &square);
        }
        exp >>= 1;
        if exp > 0 {
            square = mul(&square, &square);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::is_isotropic_k;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;
    const R: FieldDescriptor = FieldDescriptor::RealClosed;

    fn form(descriptor: FieldDescriptor, n: usize, entries: &[&str]) -> RDiagonalForm {
        RDiagonalForm::parse(descriptor, n, entries).unwrap()
    }

    #[test]
    fn springer_examples() {
        let (even, odd) = form(Q, 1, &["1", "t1"]).springer_decompose(1).unwrap();
        assert_eq!(even, form(Q, 0, &["1"]));
        assert_eq!(odd, form(Q, 0, &["1"]));

        let (even, odd) = form(Q, 2, &["5*t1^3*t2^2", "7*t2"])
            .springer_decompose(2)
            .unwrap();
        assert_eq!(even, form(Q, 1, &["5*t1^3"]));
        assert_eq!(odd, form(Q, 1, &["7"]));

        let (even, odd) = form(Q, 1, &["t1", "t1^3"]).springer_decompose(1).unwrap();
        assert_eq!(even.dim(), 0);
        assert_eq!(odd, form(Q, 0, &["1", "1"]));

        assert_eq!(
            form(Q, 1, &["t1"]).springer_decompose(2),
            Err(Error::IndexOutOfRange { index: 2, n: 1 })
        );
    }

    #[test]
    fn witt_f_examples() {
        // ⟨1, −1, t1⟩ over the reals: hyperbolic pair in the ∅ slot
        let d = form(R, 1, &["1", "-1", "t1"]).witt_decompose_f().unwrap();
        assert_eq!(d.kernel, form(R, 1, &["t1"]));
        assert_eq!(d.witt_index, 1);

        let d = form(R, 1, &["1", "1"]).witt_decompose_f().unwrap();
        assert_eq!(d.kernel, form(R, 1, &["1", "1"]));
        assert_eq!(d.witt_index, 0);

        // ⟨t1, −t1⟩ ≅ ⟨1,−1⟩ up to squares
        let d = form(R, 1, &["t1", "-t1"]).witt_decompose_f().unwrap();
        assert_eq!(d.kernel.dim(), 0);
        assert_eq!(d.witt_index, 1);
    }

    #[test]
    fn loop_normal_form_bucketing_example() {
        let q = form(Q, 2, &["5*t1^3*t2^2", "7*t2", "t1*t2", "1"]);
        let nf = q.loop_normal_form().unwrap();
        assert_eq!(nf.hyperbolic_count(), 0);
        assert_eq!(nf.slots().len(), 4);
        // each singleton slot is 1-dimensional, hence anisotropic over ℚ
        assert_eq!(nf.slot(0b00).unwrap().to_string(), "<1>");
        assert_eq!(nf.slot(0b01).unwrap().to_string(), "<5>");
        assert_eq!(nf.slot(0b10).unwrap().to_string(), "<7>");
        assert_eq!(nf.slot(0b11).unwrap().to_string(), "<1>");
        for q_i in nf.slots().values() {
            assert!(!is_isotropic_k(q_i));
        }
        assert_eq!(nf.total_dim(), q.dim());
    }

    #[test]
    fn loop_normal_form_hyperbolic_examples() {
        let nf = form(R, 1, &["1", "-1"]).loop_normal_form().unwrap();
        assert!(nf.slots().is_empty());
        assert_eq!(nf.hyperbolic_count(), 1);

        let nf = form(R, 1, &["t1", "t1"]).loop_normal_form().unwrap();
        assert_eq!(nf.hyperbolic_count(), 0);
        assert_eq!(nf.slot(0b1).unwrap().to_string(), "<1,1>");
    }

    #[test]
    fn isometry_examples() {
        assert!(is_isometric_r(&form(R, 1, &["t1", "-t1"]), &form(R, 1, &["1", "-1"])).unwrap());
        assert!(!is_isometric_r(&form(R, 1, &["t1"]), &form(R, 1, &["-t1"])).unwrap());
        assert!(is_isometric_r(&form(R, 1, &["1", "-1"]), &form(R, 1, &["-1", "1"])).unwrap());
        // dimension mismatch is an answer, not an error
        assert!(!is_isometric_r(&form(R, 1, &["1"]), &form(R, 1, &["1", "1"])).unwrap());
        assert_eq!(
            is_isometric_r(&form(R, 1, &["1"]), &form(Q, 1, &["1"])),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn second_residue_examples() {
        let (first, second) = form(Q, 1, &["1", "t1"]).second_residue(1).unwrap();
        assert_eq!(first.len(), 1);
        assert_eq!(second.len(), 1);
        assert!(!form(Q, 1, &["1", "t1"]).is_unramified_at(1).unwrap());

        let q = form(Q, 1, &["t1", "-t1"]);
        let (first, second) = q.second_residue(1).unwrap();
        assert!(first.is_empty());
        assert_eq!(second.len(), 2);
        assert!(q.is_unramified_at(1).unwrap());

        let q = form(Q, 1, &["1", "1"]);
        let (_, second) = q.second_residue(1).unwrap();
        assert!(second.is_empty());
        assert!(q.is_unramified_at(1).unwrap());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_loop_classes(R, 0, 2).unwrap(), 3);
        assert_eq!(count_loop_classes(R, 1, 2).unwrap(), 9);
        let f3 = FieldDescriptor::finite_field(3, 1).unwrap();
        assert_eq!(count_loop_classes(f3, 1, 1).unwrap(), 4);
        assert!(matches!(
            count_loop_classes(Q, 1, 1),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn count_matches_brute_force_normalization_finite_n1_d2() {
        // normalize all 16 spellings ⟨a·t^e, b·t^f⟩ with a, b over the two
        // square classes; binary kernels are canonical values, so distinct
        // normal forms = isometry classes
        for p in [3u64, 5] {
            let k = FieldDescriptor::finite_field(p, 1).unwrap();
            let nu = "2"; // 2 is a non-residue both mod 3 and mod 5
            let mut seen = Vec::new();
            for s1 in ["1", nu] {
                for s2 in ["1", nu] {
                    for e1 in ["", "*t1"] {
                        for e2 in ["", "*t1"] {
                            let q =
                                form(k, 1, &[&format!("{s1}{e1}"), &format!("{s2}{e2}")]);
                            let nf = q.loop_normal_form().unwrap();
                            if !seen.contains(&nf) {
                                seen.push(nf);
                            }
                        }
                    }
                }
            }
            assert_eq!(seen.len() as u64, count_loop_classes(k, 1, 2).unwrap(), "p = {p}");
            assert_eq!(seen.len(), 7, "p = {p}");
        }
    }

    #[test]
    fn count_matches_brute_force_normalization_real_n1_d2() {
        // oracle: normalize all 16 forms ⟨±t^a, ±t^b⟩ and count the
        // distinct normal forms
        let mut seen = Vec::new();
        for s1 in ["1", "-1"] {
            for s2 in ["1", "-1"] {
                for e1 in ["", "*t1"] {
                    for e2 in ["", "*t1"] {
                        let q = form(R, 1, &[&format!("{s1}{e1}"), &format!("{s2}{e2}")]);
                        let nf = q.loop_normal_form().unwrap();
                        if !seen.contains(&nf) {
                            seen.push(nf);
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 9);
        assert_eq!(count_loop_classes(R, 1, 2).unwrap(), 9);
    }

    #[test]
    fn normal_form_total_dimension_and_reconstruction() {
        let samples = [
            form(Q, 2, &["5*t1^3*t2^2", "7*t2", "t1*t2", "1"]),
            form(Q, 1, &["t1", "t1", "-2*t1"]),
            form(R, 2, &["t1*t2", "-t1*t2", "t2", "1", "-1"]),
        ];
        for q in samples {
            let nf = q.loop_normal_form().unwrap();
            assert_eq!(nf.total_dim(), q.dim());
            let respelled = nf.to_form().unwrap();
            assert!(is_isometric_r(&q, &respelled).unwrap(), "{q}");
            // idempotence, listwise
            assert_eq!(respelled.loop_normal_form().unwrap(), nf, "{q}");
        }
    }

    #[test]
    fn isometric_slots_may_have_different_spellings() {
        // ⟨1,7⟩ and ⟨2,14⟩ are isometric over ℚ but distinct as multisets
        // of square classes, so the normal forms differ while the forms are
        // isometric over R_1: slot comparison is up to base-field isometry
        let a = form(Q, 1, &["t1", "7*t1"]);
        let b = form(Q, 1, &["2*t1", "14*t1"]);
        let nfa = a.loop_normal_form().unwrap();
        let nfb = b.loop_normal_form().unwrap();
        assert_ne!(nfa, nfb);
        assert!(is_isometric_r(&a, &b).unwrap());
        assert!(!is_isometric_r(&a, &form(Q, 1, &["t1", "5*t1"])).unwrap());
    }

    #[test]
    fn zero_dimensional_and_zero_variable_forms() {
        let empty = RDiagonalForm::new(Q, 0, Vec::new()).unwrap();
        let nf = empty.loop_normal_form().unwrap();
        assert_eq!(nf.total_dim(), 0);
        assert_eq!(nf.hyperbolic_count(), 0);
        assert!(nf.slots().is_empty());
        let d = empty.witt_decompose_f().unwrap();
        assert_eq!((d.kernel.dim(), d.witt_index), (0, 0));
        assert!(is_isometric_r(&empty, &empty).unwrap());

        // constants over n = 2 variables, zero entries in a slot ≠ ∅
        let constants = form(Q, 2, &["3", "-3"]);
        let nf = constants.loop_normal_form().unwrap();
        assert_eq!(nf.hyperbolic_count(), 1);
        assert!(nf.slots().is_empty());
    }

    #[test]
    fn partitioned_count_sums_to_total() {
        let f5 = FieldDescriptor::finite_field(5, 1).unwrap();
        for k in [R, f5] {
            for n in 0..=3usize {
                for d in 0..=6usize {
                    let total = count_loop_classes(k, n, d).unwrap();
                    let summed: u64 = (0..=d / 2)
                        .map(|h| count_loop_classes_with_hyperbolic(k, n, d, h).unwrap())
                        .sum();
                    assert_eq!(total, summed, "{k} n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn count_matches_brute_force_normalization_real_n2_d2() {
        // all 64 spellings ⟨±t^a·t^b, ±t^c·t^e⟩ over R with n = 2
        let mut seen = Vec::new();
        let monomials = ["", "*t1", "*t2", "*t1*t2"];
        for s1 in ["1", "-1"] {
            for s2 in ["1", "-1"] {
                for m1 in monomials {
                    for m2 in monomials {
                        let q = form(R, 2, &[&format!("{s1}{m1}"), &format!("{s2}{m2}")]);
                        let nf = q.loop_normal_form().unwrap();
                        if !seen.contains(&nf) {
                            seen.push(nf);
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len() as u64, count_loop_classes(R, 2, 2).unwrap());
        assert_eq!(seen.len(), 33);
    }

    #[test]
    fn isotropic_slot_is_witt_reduced() {
        // slot {1} holds ⟨1,1,−2⟩ over ℚ, which is isotropic: the kernel
        // ⟨2⟩ stays and one hyperbolic plane moves to the count
        let q = form(Q, 1, &["t1", "t1", "-2*t1"]);
        let nf = q.loop_normal_form().unwrap();
        assert_eq!(nf.hyperbolic_count(), 1);
        assert_eq!(nf.slot(0b1).unwrap().to_string(), "<2>");
    }

    #[test]
    fn unramified_normal_forms_have_empty_nonzero_slots() {
        // forms with only the ∅ slot are unramified at every variable
        let q = form(Q, 2, &["3", "5", "-1"]);
        for i in 1..=2 {
            assert!(q.is_unramified_at(i).unwrap());
        }
    }
}
