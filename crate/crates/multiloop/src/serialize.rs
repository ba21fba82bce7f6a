//! JSON spellings of the domain types.
//!
//! Forms carry their field and variable count, e.g.
//! `{"field":"R","n":2,"entries":["5*t1^3*t2^2","7*t2","t1*t2","1"]}`;
//! normal forms list slots with sorted 1-based subsets; Brauer matrices are
//! arrays of "num/den" strings; descriptors follow
//! `{"d":10,"n":4,"m":2,"s0":1,"factors":[{"s":5,"r":2,"i":1,"j":2},…]}`.

use crate::azumaya::{BrauerMatrix, IntMatrix, OrbitVerdict, QmodZ, SkewNormalForm, SymbolFactor, ToralDescriptor};
use crate::basefield::{FieldDescriptor, SquareClassKey};
use crate::quadform::{LoopNormalForm, RDiagonalForm, WittDecompositionF};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        FieldDescriptor::parse(&text).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    field: String,
    n: usize,
    entries: Vec<String>,
}

impl Serialize for RDiagonalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormRepr {
            field: self.descriptor().to_string(),
            n: self.n(),
            entries: self.entries().iter().map(|e| e.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RDiagonalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        let descriptor = FieldDescriptor::parse(&repr.field).map_err(D::Error::custom)?;
        let entries: Vec<&str> = repr.entries.iter().map(|s| s.as_str()).collect();
        RDiagonalForm::parse(descriptor, repr.n, &entries).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SlotRepr {
    subset: Vec<usize>,
    entries: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct NormalFormRepr {
    field: String,
    n: usize,
    hyperbolic_count: usize,
    slots: Vec<SlotRepr>,
}

impl Serialize for LoopNormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NormalFormRepr {
            field: self.descriptor().to_string(),
            n: self.n(),
            hyperbolic_count: self.hyperbolic_count(),
            slots: self
                .slots()
                .iter()
                .map(|(mask, q)| SlotRepr {
                    subset: LoopNormalForm::subset_indices(*mask),
                    entries: q.entries().iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl Serialize for WittDecompositionF {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            kernel: &'a RDiagonalForm,
            witt_index: usize,
        }
        Repr {
            kernel: &self.kernel,
            witt_index: self.witt_index,
        }
        .serialize(s)
    }
}

impl Serialize for SquareClassKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        QmodZ::parse(&text).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    entries: Vec<Vec<QmodZ>>,
}

impl Serialize for BrauerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n(),
            entries: (1..=self.n())
                .map(|i| (1..=self.n()).map(|j| self.get(i, j)).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BrauerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.n {
            return Err(D::Error::custom("entry rows do not match n"));
        }
        BrauerMatrix::from_rows(repr.entries).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    s: u64,
    r: u64,
    i: usize,
    j: usize,
}

#[derive(Serialize, Deserialize)]
struct DescriptorRepr {
    d: u64,
    n: usize,
    m: usize,
    s0: u64,
    factors: Vec<FactorRepr>,
}

impl Serialize for ToralDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DescriptorRepr {
            d: self.d,
            n: self.n,
            m: self.m(),
            s0: self.s0,
            factors: self
                .factors
                .iter()
                .map(|f| FactorRepr { s: f.s, r: f.r, i: f.i, j: f.j })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ToralDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = DescriptorRepr::deserialize(d)?;
        if repr.m != repr.factors.len() {
            return Err(D::Error::custom(format!(
                "m = {} but {} factors given",
                repr.m,
                repr.factors.len()
            )));
        }
        let t = ToralDescriptor {
            n: repr.n,
            d: repr.d,
            s0: repr.s0,
            factors: repr
                .factors
                .into_iter()
                .map(|f| SymbolFactor { s: f.s, r: f.r, i: f.i, j: f.j })
                .collect(),
        };
        t.validate().map_err(D::Error::custom)?;
        Ok(t)
    }
}

impl Serialize for SkewNormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            blocks: &'a [QmodZ],
            rank_zero: usize,
        }
        Repr {
            blocks: &self.blocks,
            rank_zero: self.rank_zero,
        }
        .serialize(s)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        IntMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

impl Serialize for OrbitVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "verdict", rename_all = "lowercase")]
        enum Repr<'a> {
            Equivalent { witness: &'a IntMatrix },
            Distinct { invariant: &'a str },
            Unknown,
        }
        match self {
            OrbitVerdict::Equivalent(w) => Repr::Equivalent { witness: w },
            OrbitVerdict::Distinct(reason) => Repr::Distinct { invariant: reason },
            OrbitVerdict::Unknown => Repr::Unknown,
        }
        .serialize(s)
    }
}
