//! Albert types of endomorphism algebras and their admissibility against the
//! dimension of a simple Abelian variety.
//!
//! With `E = End(A) ⊗ Q`, centre `K` and `K_0` the fixed field of the Rosati
//! involution on `K`, write `[E:K] = δ²`, `[K:Q] = e`, `[K_0:Q] = e_0`. Every
//! type satisfies `δ²e | 2·dim A`; each kind adds its own restriction.
//!
//! For second-kind algebras the signature integers satisfy
//! `r_i + s_i = dim A / (δ e_0)`. When that sum is odd, `r_i ≠ s_i`, the field
//! of moduli cannot be totally real, and the type is excluded over a totally
//! real base. Over a totally real base and odd dimension only totally real
//! fields of degree dividing the dimension survive.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlbertError {
    #[error("malformed endomorphism type: {0}")]
    MalformedType(&'static str),
    #[error("delta*e0 = {divisor} does not divide dim = {dim}")]
    NotDivisible { dim: u64, divisor: u64 },
    #[error("dimension {0} is even; only odd dimensions are classified")]
    EvenDimension(u64),
    #[error("dimension must be positive")]
    ZeroDimension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EndoKind {
    TotallyRealField,
    TotallyIndefiniteQuaternion,
    TotallyDefiniteQuaternion,
    SecondKind,
}

impl EndoKind {
    pub const ALL: [EndoKind; 4] = [
        EndoKind::TotallyRealField,
        EndoKind::TotallyIndefiniteQuaternion,
        EndoKind::TotallyDefiniteQuaternion,
        EndoKind::SecondKind,
    ];

    pub fn is_quaternion(self) -> bool {
        matches!(
            self,
            EndoKind::TotallyIndefiniteQuaternion | EndoKind::TotallyDefiniteQuaternion
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EndoType {
    pub kind: EndoKind,
    pub delta: u64,
    pub e: u64,
    pub e0: u64,
}

impl EndoType {
    pub fn totally_real(e: u64) -> Self {
        Self { kind: EndoKind::TotallyRealField, delta: 1, e, e0: e }
    }

    pub fn quaternion(kind: EndoKind, e: u64) -> Self {
        debug_assert!(kind.is_quaternion());
        Self { kind, delta: 2, e, e0: e }
    }

    pub fn second_kind(delta: u64, e0: u64) -> Self {
        Self { kind: EndoKind::SecondKind, delta, e: 2 * e0, e0 }
    }

    pub fn validate(&self) -> Result<(), AlbertError> {
        if self.delta == 0 || self.e == 0 || self.e0 == 0 {
            return Err(AlbertError::MalformedType("delta, e and e0 must be positive"));
        }
        match self.kind {
            EndoKind::TotallyRealField if self.delta != 1 => {
                Err(AlbertError::MalformedType("a totally real field has delta = 1"))
            }
            k if k.is_quaternion() && self.delta != 2 => {
                Err(AlbertError::MalformedType("a quaternion algebra has delta = 2"))
            }
            EndoKind::SecondKind if self.e != 2 * self.e0 => {
                Err(AlbertError::MalformedType("second kind requires e = 2*e0"))
            }
            EndoKind::SecondKind => Ok(()),
            _ if self.e0 != self.e => {
                Err(AlbertError::MalformedType("first kind requires e0 = e"))
            }
            _ => Ok(()),
        }
    }
}

/// Named divisibility restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Constraint {
    /// `δ²e | 2·dim`
    GlobalDegree,
    /// `e | dim`
    TotallyRealDivides,
    /// `2e | dim`
    QuaternionDivides,
    /// `e_0 δ² | dim`
    SecondKindDivides,
}

impl Constraint {
    pub fn formula(self) -> &'static str {
        match self {
            Constraint::GlobalDegree => "delta^2*e | 2*dim",
            Constraint::TotallyRealDivides => "e | dim",
            Constraint::QuaternionDivides => "2e | dim",
            Constraint::SecondKindDivides => "e0*delta^2 | dim",
        }
    }

    fn holds(self, dim: u64, ty: &EndoType) -> bool {
        let d2 = ty.delta * ty.delta;
        match self {
            Constraint::GlobalDegree => (2 * dim).is_multiple_of(d2 * ty.e),
            Constraint::TotallyRealDivides => dim.is_multiple_of(ty.e),
            Constraint::QuaternionDivides => dim.is_multiple_of(2 * ty.e),
            Constraint::SecondKindDivides => dim.is_multiple_of(ty.e0 * d2),
        }
    }

    fn for_kind(kind: EndoKind) -> Constraint {
        match kind {
            EndoKind::TotallyRealField => Constraint::TotallyRealDivides,
            EndoKind::TotallyIndefiniteQuaternion | EndoKind::TotallyDefiniteQuaternion => {
                Constraint::QuaternionDivides
            }
            EndoKind::SecondKind => Constraint::SecondKindDivides,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityData {
    pub r_plus_s: u64,
    pub odd: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violated_constraints: Vec<Constraint>,
    pub parity_data: Option<ParityData>,
    pub notes: Vec<String>,
}

/// Check `ty` against the divisibility restrictions for `dim`.
pub fn admissible(dim: u64, ty: &EndoType) -> Result<AdmissibilityReport, AlbertError> {
    if dim == 0 {
        return Err(AlbertError::ZeroDimension);
    }
    ty.validate()?;
    let violated: Vec<Constraint> = [Constraint::GlobalDegree, Constraint::for_kind(ty.kind)]
        .into_iter()
        .filter(|c| !c.holds(dim, ty))
        .collect();

    let parity_data = (ty.kind == EndoKind::SecondKind && dim.is_multiple_of(ty.delta * ty.e0)).then(|| {
        let r_plus_s = dim / (ty.delta * ty.e0);
        ParityData { r_plus_s, odd: r_plus_s % 2 == 1 }
    });

    let mut notes = Vec::new();
    if ty.e == 2 * dim {
        notes.push("e = 2*dim: the centre K is a CM field".to_string());
    }
    Ok(AdmissibilityReport {
        admissible: violated.is_empty(),
        violated_constraints: violated,
        parity_data,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityOutcome {
    pub r_plus_s: u64,
    pub excluded: bool,
}

/// `r + s = dim / (δ e_0)`; an odd sum excludes the second kind over a
/// totally real base.
pub fn second_kind_parity(dim: u64, delta: u64, e0: u64) -> Result<ParityOutcome, AlbertError> {
    if dim == 0 {
        return Err(AlbertError::ZeroDimension);
    }
    if delta == 0 || e0 == 0 {
        return Err(AlbertError::MalformedType("delta and e0 must be positive"));
    }
    if dim.is_multiple_of(2) {
        return Err(AlbertError::EvenDimension(dim));
    }
    let divisor = delta * e0;
    if !dim.is_multiple_of(divisor) {
        return Err(AlbertError::NotDivisible { dim, divisor });
    }
    let r_plus_s = dim / divisor;
    Ok(ParityOutcome { r_plus_s, excluded: r_plus_s % 2 == 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Admissible,
    RejectedByTable,
    ExcludedByParity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateTrace {
    pub endo_type: EndoType,
    pub violated: Vec<&'static str>,
    pub parity: Option<ParityOutcome>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub dim: u64,
    /// Surviving types; always totally real fields.
    pub admissible: Vec<EndoType>,
    pub candidates: Vec<CandidateTrace>,
    pub reasoning: Vec<&'static str>,
}

impl Classification {
    /// Degrees `[K:Q]` of the surviving totally real fields, ascending.
    pub fn degrees(&self) -> Vec<u64> {
        self.admissible.iter().map(|t| t.e).collect()
    }
}

const REASONING: [&str; 4] = [
    "first-kind rows: delta^2*e | 2*dim together with the row restriction",
    "quaternion rows need 2e | dim, impossible for odd dim",
    "second kind: r_i + s_i = dim/(delta*e0) divides the odd dim, so it is odd and r_i != s_i",
    "r_i != s_i makes the field of moduli non-real, contradicting a totally real base",
];

/// Candidate types for odd `dim`: first-kind rows with `e ≤ 2·dim`, second
/// kind with `δ²e_0 ≤ dim` (the global restriction already forces this).
fn candidates(dim: u64) -> Vec<EndoType> {
    let mut out = Vec::new();
    for e in 1..=2 * dim {
        out.push(EndoType::totally_real(e));
    }
    for kind in [EndoKind::TotallyIndefiniteQuaternion, EndoKind::TotallyDefiniteQuaternion] {
        for e in 1..=2 * dim {
            out.push(EndoType::quaternion(kind, e));
        }
    }
    for delta in (1..).take_while(|d| d * d <= dim) {
        for e0 in (1..).take_while(|e0| delta * delta * e0 <= dim) {
            out.push(EndoType::second_kind(delta, e0));
        }
    }
    out
}

/// Endomorphism algebras possible for an absolutely simple Abelian variety of
/// odd dimension `dim` over a totally real field.
pub fn classify_odd_totally_real(dim: u64) -> Result<Classification, AlbertError> {
    if dim == 0 {
        return Err(AlbertError::ZeroDimension);
    }
    if dim.is_multiple_of(2) {
        return Err(AlbertError::EvenDimension(dim));
    }
    let mut admissible_types = Vec::new();
    let mut traces = Vec::new();
    for ty in candidates(dim) {
        let report = admissible(dim, &ty)?;
        let mut parity = None;
        let verdict = if !report.admissible {
            Verdict::RejectedByTable
        } else if ty.kind == EndoKind::SecondKind {
            let p = second_kind_parity(dim, ty.delta, ty.e0)?;
            parity = Some(p);
            if p.excluded {
                Verdict::ExcludedByParity
            } else {
                Verdict::Admissible
            }
        } else {
            Verdict::Admissible
        };
        if verdict == Verdict::Admissible {
            admissible_types.push(ty);
        }
        traces.push(CandidateTrace {
            endo_type: ty,
            violated: report.violated_constraints.iter().map(|c| c.formula()).collect(),
            parity,
            verdict,
        });
    }
    Ok(Classification {
        dim,
        admissible: admissible_types,
        candidates: traces,
        reasoning: REASONING.to_vec(),
    })
}
