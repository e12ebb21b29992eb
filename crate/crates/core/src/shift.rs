//! Shift operators on finitely supported sequences.
//!
//! On the space spanned by `e₁, e₂, …` the right shift `R: e_k ↦ e_{k+1}`
//! and the left shift `L: e₁ ↦ 0, e_k ↦ e_{k−1}` satisfy `L∘R = 1` while
//! `R∘L` kills `e₁`. So in infinite dimension a one-sided inverse need not
//! be two-sided. Everything here is checked on finitely many generators and
//! extended by linearity; nothing is claimed about all of the space at once.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// A vector `Σ c_k·e_k` with finitely many nonzero `c_k`, indices `k ≥ 1`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSuppVector {
    spec: FieldSpec,
    support: BTreeMap<u64, FieldElement>,
}

impl FinSuppVector {
    pub fn zero(spec: FieldSpec) -> Self {
        FinSuppVector {
            spec,
            support: BTreeMap::new(),
        }
    }

    /// The basis vector `e_k`.
    pub fn basis(spec: FieldSpec, k: u64) -> Result<Self> {
        Self::from_terms(spec, [(k, spec.one())])
    }

    /// Sums the given `(index, coefficient)` terms.
    pub fn from_terms(spec: FieldSpec, terms: impl IntoIterator<Item = (u64, FieldElement)>) -> Result<Self> {
        let mut v = FinSuppVector::zero(spec);
        for (k, c) in terms {
            if k == 0 {
                return Err(Error::InvalidArgument("basis indices start at 1".into()));
            }
            if c.spec() != spec {
                return Err(Error::FieldMismatch {
                    left: spec.to_string(),
                    right: c.spec().to_string(),
                });
            }
            v.accumulate(k, &c);
        }
        Ok(v)
    }

    fn accumulate(&mut self, k: u64, c: &FieldElement) {
        let sum = match self.support.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.support.remove(&k);
        } else {
            self.support.insert(k, sum);
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Coefficient of `e_k` (zero when absent).
    pub fn coefficient(&self, k: u64) -> FieldElement {
        self.support.get(&k).cloned().unwrap_or_else(|| self.spec.zero())
    }

    /// Nonzero terms in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &FieldElement)> {
        self.support.iter().map(|(&k, c)| (k, c))
    }

    pub fn add(&self, other: &FinSuppVector) -> Result<FinSuppVector> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        let mut out = self.clone();
        for (&k, c) in &other.support {
            out.accumulate(k, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<FinSuppVector> {
        FinSuppVector::from_terms(self.spec, self.support.iter().map(|(&k, x)| (k, x * c)))
    }

    pub fn sub(&self, other: &FinSuppVector) -> Result<FinSuppVector> {
        self.add(&other.scale(&-self.spec.one())?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftOp {
    /// `e_k ↦ e_{k+1}`.
    RightShift,
    /// `e₁ ↦ 0`, `e_k ↦ e_{k−1}`.
    LeftShift,
}

pub fn shift_apply(op: ShiftOp, v: &FinSuppVector) -> FinSuppVector {
    let support = v
        .support
        .iter()
        .filter_map(|(&k, c)| {
            let target = match op {
                ShiftOp::RightShift => Some(k + 1),
                ShiftOp::LeftShift => k.checked_sub(1).filter(|&j| j >= 1),
            };
            target.map(|j| (j, c.clone()))
        })
        .collect();
    FinSuppVector { spec: v.spec, support }
}

/// `R` then `L`; the identity.
fn left_after_right(v: &FinSuppVector) -> FinSuppVector {
    shift_apply(ShiftOp::LeftShift, &shift_apply(ShiftOp::RightShift, v))
}

/// `L` then `R`; drops the `e₁` component.
fn right_after_left(v: &FinSuppVector) -> FinSuppVector {
    shift_apply(ShiftOp::RightShift, &shift_apply(ShiftOp::LeftShift, v))
}

fn serialize_spec<S: Serializer>(spec: &FieldSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    #[serde(rename = "field", serialize_with = "serialize_spec")]
    pub spec: FieldSpec,
    pub max_index: u64,
    /// `L∘R(e_k) = e_k` for every `k ≤ max_index`.
    pub ba_identity: bool,
    /// `R∘L(e_k) = e_k` for every `k ≤ max_index`; false because of `e₁`.
    pub ab_identity: bool,
    /// The generator on which `R∘L` fails.
    pub witness: String,
    /// `R∘L(e₁) = 0`.
    #[serde(skip)]
    pub ab_kills_witness: bool,
    /// `R∘L(e_k) = e_k` for `2 ≤ k ≤ max_index`.
    #[serde(skip)]
    pub ab_fixes_rest: bool,
}

impl ShiftReport {
    /// The counterexample holds as stated.
    pub fn passed(&self) -> bool {
        self.ba_identity && !self.ab_identity && self.ab_kills_witness && self.ab_fixes_rest
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Checks both compositions on the generators `e₁ … e_{max_index}`.
pub fn dedekind_counterexample_report(spec: FieldSpec, max_index: u64) -> Result<ShiftReport> {
    if max_index == 0 {
        return Err(Error::InvalidArgument("max_index must be at least 1".into()));
    }
    let mut ba_identity = true;
    let mut ab_identity = true;
    let mut ab_fixes_rest = true;
    let mut ab_kills_witness = false;
    for k in 1..=max_index {
        let e = FinSuppVector::basis(spec, k)?;
        ba_identity &= left_after_right(&e) == e;
        let ab = right_after_left(&e);
        ab_identity &= ab == e;
        if k == 1 {
            ab_kills_witness = ab.is_zero();
        } else {
            ab_fixes_rest &= ab == e;
        }
    }
    Ok(ShiftReport {
        spec,
        max_index,
        ba_identity,
        ab_identity,
        witness: "e_1".into(),
        ab_kills_witness,
        ab_fixes_rest,
    })
}
