//! Support varieties, stored through their defining ideals and compared at truncation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtElement;
use crate::graded::{
    annihilator, ext_as_module, ext_module_over, fg_evidence, hilbert_gamma, FgEvidence, FgVerdict,
    GradedHModule, GradedIdeal, GradedSubalgebra, RingShape, Side,
};
use crate::module::Module;
use crate::resolution::{GrowthEstimate, MIN_SEQUENCE};

pub const SHORT_RELIABLE_RANGE: &str = "reliable range shorter than the growth window; full truncation used";
pub const NO_FG_EVIDENCE: &str =
    "no finite generation evidence; annihilator trusted up to half the truncation";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarietyKind {
    Injective,
    Projective,
    Pair,
}

/// The graded ring a variety lives over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingDescriptor {
    pub generator_degrees: Vec<usize>,
    pub hilbert: Vec<usize>,
}

impl RingDescriptor {
    pub fn of(shape: &RingShape) -> Self {
        RingDescriptor { generator_degrees: shape.generator_degrees.clone(), hilbert: shape.dims() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportVariety {
    pub kind: VarietyKind,
    pub ring: RingDescriptor,
    #[serde(skip)]
    pub ideal: GradedIdeal,
    pub ideal_dims: Vec<usize>,
    pub truncation: usize,
    /// Degrees ≤ `reliable` of the ideal are trusted.
    pub reliable: usize,
    pub quotient_dims: Vec<usize>,
    pub dim: GrowthEstimate,
    pub trivial: bool,
    pub fg: FgEvidence,
    pub caveats: Vec<String>,
}

impl SupportVariety {
    pub fn from_module(kind: VarietyKind, hmod: &GradedHModule) -> Result<Self> {
        let ideal = annihilator(hmod)?;
        let fg = fg_evidence(hmod)?;
        let mut caveats: Vec<String> = ideal.caveat.iter().map(|c| c.to_string()).collect();
        if fg.verdict == FgVerdict::Inconclusive {
            caveats.push(NO_FG_EVIDENCE.into());
        }
        let quotient_dims = ideal.quotient_dims();
        let mut window = ideal.reliable;
        if window + 1 < MIN_SEQUENCE {
            caveats.push(SHORT_RELIABLE_RANGE.into());
            window = ideal.truncation;
        }
        let dim = hilbert_gamma(&quotient_dims[..=window])?;
        let trivial = dim.gamma == Some(0);
        Ok(SupportVariety {
            kind,
            ring: RingDescriptor::of(hmod.shape()),
            ideal_dims: ideal.dims(),
            truncation: ideal.truncation,
            reliable: ideal.reliable,
            ideal,
            quotient_dims,
            dim,
            trivial,
            fg,
            caveats,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn dim(&self) -> &GrowthEstimate {
        &self.dim
    }
}

/// V^i_H(N), cut out by the annihilator of Ext*(M, N).
pub fn injective_variety(h: &GradedSubalgebra, n: &Module) -> Result<SupportVariety> {
    SupportVariety::from_module(VarietyKind::Injective, &ext_as_module(h, n, Side::Right)?)
}

/// V^p_H(N), cut out by the annihilator of Ext*(N, M).
pub fn projective_variety(h: &GradedSubalgebra, n: &Module) -> Result<SupportVariety> {
    SupportVariety::from_module(VarietyKind::Projective, &ext_as_module(h, n, Side::Left)?)
}

/// V_R(X, Y) for a polynomial ring R acting on Ext*(X, Y) through classes
/// φ_X(r_j) ∈ Ext*(X, X) and φ_Y(r_j) ∈ Ext*(Y, Y). The two actions must agree.
pub fn pair_variety(
    degrees: &[usize],
    phi_x: &[ExtElement],
    phi_y: &[ExtElement],
    x: &Module,
    y: &Module,
    truncation: usize,
) -> Result<SupportVariety> {
    if phi_x.len() != degrees.len() || phi_y.len() != degrees.len() {
        return Err(Error::Input("one image per ring generator expected".into()));
    }
    for (j, d) in degrees.iter().enumerate() {
        if phi_x[j].degree() != *d || phi_y[j].degree() != *d {
            return Err(Error::Input(format!("generator {j} has the wrong degree")));
        }
    }
    let shape = RingShape::polynomial(degrees, truncation)?;
    let right = ext_module_over(x, phi_x, shape.clone(), y, Side::Right)?;
    let left = ext_module_over(y, phi_y, shape, x, Side::Left)?;
    for j in 0..degrees.len() {
        for p in 0..=truncation.saturating_sub(degrees[j]) {
            if right.generator_action(j, p) != left.generator_action(j, p) {
                return Err(Error::ActionsDisagree { degree: p, generator: j });
            }
        }
    }
    SupportVariety::from_module(VarietyKind::Pair, &right)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    /// The first variety lies in the second.
    FirstInSecond,
    SecondInFirst,
    Incomparable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub relation: Relation,
    /// Degrees compared.
    pub up_to: usize,
    /// Ann(v2) ⊆ Ann(v1) and Ann(v1) ⊆ Ann(v2) degreewise.
    pub ideal_containment: (bool, bool),
    pub hilbert_equal: bool,
    /// Equality decided from Hilbert data alone, without ideal containment.
    pub by_hilbert: bool,
}

/// Compares two varieties over the same ring at truncation.
pub fn compare(v1: &SupportVariety, v2: &SupportVariety) -> Result<Comparison> {
    if v1.ring != v2.ring {
        return Err(Error::Input("varieties live over different rings".into()));
    }
    compare_ideals(&v1.ideal, &v2.ideal, v1.trivial, v2.trivial)
}

/// Compares the zero sets of two graded ideals, with triviality flags.
pub fn compare_ideals(
    a: &GradedIdeal,
    b: &GradedIdeal,
    a_trivial: bool,
    b_trivial: bool,
) -> Result<Comparison> {
    let up_to = a.reliable.min(b.reliable);
    let b_in_a = a.contains_up_to(b, up_to);
    let a_in_b = b.contains_up_to(a, up_to);
    let hilbert_equal = a.quotient_dims()[..=up_to] == b.quotient_dims()[..=up_to];
    let mut by_hilbert = false;
    let relation = match (a_trivial, b_trivial) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::FirstInSecond,
        (false, true) => Relation::SecondInFirst,
        _ => match (b_in_a, a_in_b) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::FirstInSecond,
            (false, true) => Relation::SecondInFirst,
            (false, false) if hilbert_equal => {
                by_hilbert = true;
                Relation::Equal
            }
            _ => Relation::Incomparable,
        },
    };
    Ok(Comparison { relation, up_to, ideal_containment: (b_in_a, a_in_b), hilbert_equal, by_hilbert })
}

#[cfg(test)]
mod tests;
