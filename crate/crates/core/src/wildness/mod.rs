//! The complexity criterion for wild representation type: hypotheses, the
//! one-parameter family of extensions K_α and the verdict.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::{ext_basis, ext_space, pair_complexity, yoneda, ExtElement};
use crate::graded::{
    annihilator, check_h0_local, ext_as_module, ext_module_over, fg_evidence, hilbert_gamma,
    noether_normalize, FgEvidence, FgVerdict, GradedIdeal, GradedSubalgebra, LocalVerdict, Normalization,
    RingShape, Side, Span, Word,
};
use crate::linalg::{FieldElem, Matrix, SparseVec};
use crate::module::{
    cokernel, direct_sum, is_isomorphic, is_selfinjective, pushout, semisimple_quotient, IsoLabel, Module,
    ModuleHom,
};
use crate::resolution::{complexity, min_proj_resolution, plexity, GrowthEstimate};
use crate::variety::{compare_ideals, Relation, SupportVariety, VarietyKind};

pub const CAVEAT_CRAWLEY_BOEVEY: &str =
    "actual wildness is NOT verified: the conclusion relies on Crawley-Boevey's Theorem D, an external result";
pub const CAVEAT_NON_FG: &str =
    "the non-Fg claims for quantum exterior algebras at non-root-of-unity q are NOT verified";
pub const CAVEAT_CLOSED_FIELD: &str =
    "the criterion assumes an algebraically closed field; all computations run over the input field";
pub const VARIETY_LARGER: &str =
    "V^p(K_α) strictly contains V(x₁ + αx₂); the parameters are not central in Ext*(M, M)";
pub const SAMPLED_NON_ISOMORPHISM: &str = "some non-isomorphisms rest on random sampling over the rationals";
pub const CAVEAT_TRUNCATION: &str = "every check holds at the stated truncation only";

/// The caveats every wildness report carries.
pub fn standard_caveats() -> Vec<String> {
    [CAVEAT_CRAWLEY_BOEVEY, CAVEAT_NON_FG, CAVEAT_CLOSED_FIELD, CAVEAT_TRUNCATION]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BundleCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub truncation: usize,
    pub selfinjective: bool,
    pub h0_local: LocalVerdict,
    pub gamma_h: GrowthEstimate,
    pub cx_mm: GrowthEstimate,
    pub cx_m: GrowthEstimate,
    pub px_m: GrowthEstimate,
    pub complexity_at_least_three: bool,
    /// Ext*(M, M) as a right H-module.
    pub fg: FgEvidence,
    /// Ext*(M, Λ/rad Λ) as a right H-module.
    pub fg_top: FgEvidence,
    /// Ext*(Λ/rad Λ, M) as a left H-module.
    pub fg_top_dual: FgEvidence,
    /// cx M, px M, cx(M, M) and γ(H) agree.
    pub estimates_consistent: bool,
    /// The generators of H commute with Ext^{≤1}(M, M).
    pub generators_central_low_degree: bool,
    pub bundles: Vec<BundleCheck>,
    pub passed: bool,
}

fn at_least(g: &GrowthEstimate, n: usize) -> bool {
    g.gamma.is_some_and(|v| v >= n)
}

fn positive(fg: &FgEvidence) -> bool {
    matches!(fg.verdict, FgVerdict::GeneratedInDegrees(_))
}

/// Checks the hypotheses of the criterion and its variants for M and H at truncation D.
pub fn check_hypotheses(m: &Module, h: &GradedSubalgebra, truncation: usize) -> Result<HypothesisReport> {
    let alg = m.algebra();
    let selfinjective = is_selfinjective(alg);
    let h0_local = check_h0_local(h)?.verdict;
    let gamma_h = hilbert_gamma(&h.dims())?;
    let cx_mm = pair_complexity(m, m, truncation)?;
    let cx_m = complexity(m, truncation)?;
    let px_m = plexity(m, truncation)?;
    let top = semisimple_quotient(alg);
    let fg = fg_evidence(&ext_as_module(h, m, Side::Right)?)?;
    let fg_top = fg_evidence(&ext_as_module(h, &top, Side::Right)?)?;
    let fg_top_dual = fg_evidence(&ext_as_module(h, &top, Side::Left)?)?;
    let estimates = [&cx_m, &px_m, &cx_mm, &gamma_h];
    let estimates_consistent =
        !positive(&fg) || estimates.iter().all(|e| e.gamma.is_some() && e.gamma == cx_mm.gamma);
    let generators_central_low_degree = generators_central(m, h, truncation)?;
    let complexity_at_least_three = at_least(&cx_mm, 3);
    let local = h0_local == LocalVerdict::Local;
    let bundles = vec![
        BundleCheck {
            name: "complexity of the pair (M, M)",
            passed: selfinjective && local && complexity_at_least_three && positive(&fg),
        },
        BundleCheck {
            name: "complexity of M",
            passed: selfinjective && local && at_least(&cx_m, 3) && positive(&fg_top),
        },
        BundleCheck {
            name: "plexity of M",
            passed: selfinjective && local && at_least(&px_m, 3) && positive(&fg_top_dual),
        },
        BundleCheck {
            name: "finite over central H",
            passed: selfinjective
                && local
                && complexity_at_least_three
                && positive(&fg)
                && generators_central_low_degree,
        },
    ];
    let passed = bundles.iter().any(|b| b.passed);
    Ok(HypothesisReport {
        truncation,
        selfinjective,
        h0_local,
        gamma_h,
        cx_mm,
        cx_m,
        px_m,
        complexity_at_least_three,
        fg,
        fg_top,
        fg_top_dual,
        estimates_consistent,
        generators_central_low_degree,
        bundles,
        passed,
    })
}

fn generators_central(m: &Module, h: &GradedSubalgebra, truncation: usize) -> Result<bool> {
    for g in h.generators() {
        for n in 0..=1 {
            if g.degree() + n > truncation {
                continue;
            }
            for b in ext_basis(m, n)? {
                if !yoneda(g, &b)?.same_class(&yoneda(&b, g)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// η_α = x₁ + α·x₂.
pub fn eta_alpha(x1: &ExtElement, x2: &ExtElement, alpha: &FieldElem) -> Result<ExtElement> {
    if x1.degree() != x2.degree() {
        return Err(Error::Input("parameters must have the same degree".into()));
    }
    x1.add(&x2.scale(alpha))
}

/// The extension 0 → M → K → Ω^{d−1}M → 0 of a class in Ext^d(M, M).
#[derive(Clone, Debug, Serialize)]
pub struct FamilyMember {
    pub alpha: FieldElem,
    pub degree: usize,
    #[serde(skip)]
    pub eta: ExtElement,
    pub eta_coordinates: Vec<FieldElem>,
    #[serde(skip)]
    pub module: Module,
    #[serde(skip)]
    pub inclusion: ModuleHom,
    #[serde(skip)]
    pub projection: ModuleHom,
    pub dim: usize,
    pub dim_m: usize,
    pub dim_syzygy: usize,
    pub exact: bool,
    /// Whether the cokernel was identified with Ω^{d−1}M.
    pub cokernel_is_syzygy: IsoLabel,
}

/// Realizes e ∈ Ext^d(M, M) as a map f: Ω^d M → M and forms the pushout of
/// Ω^d M ↪ P_{d−1} along f.
pub fn extension_module(e: &ExtElement) -> Result<FamilyMember> {
    extension_member(e, e.source().field().zero())
}

fn extension_member(e: &ExtElement, alpha: FieldElem) -> Result<FamilyMember> {
    let d = e.degree();
    let m = e.source();
    if d == 0 {
        return Err(Error::Input("extensions need a class of positive degree".into()));
    }
    if !e.target().same_as(m) {
        return Err(Error::Shape("class must lie in Ext*(M, M)".into()));
    }
    if !e.space().is_cocycle(e.cocycle()) {
        return Err(Error::NotACocycle);
    }
    let res = min_proj_resolution(m, d + 1);
    let (inc, _) = res.syzygy_inclusion(d - 1);
    let om = inc.source().clone();
    let free = res.term(d - 1);
    let field = m.field();
    let nv = m.dims().len();
    let mut maps: Vec<Matrix> = (0..nv).map(|v| Matrix::zeros(field, m.dim_at(v), om.dim_at(v))).collect();
    let mut next = vec![0usize; nv];
    for k in res.kernel_basis(d - 1) {
        let v = free.vertex_of(k[0].0);
        let x = res.map(d).solve(k).ok_or(Error::LiftFailed(d))?;
        let y: SparseVec = e.eval(&x);
        for (i, c) in y {
            maps[v][(i - m.offset(v), next[v])] = c;
        }
        next[v] += 1;
    }
    let f = ModuleHom::new(&om, m, maps)?;
    let (k, _, i) = pushout(&inc, &f)?;
    let (c, p) = cokernel(&i);
    let syz = res.syzygy_module(d - 1);
    let exact = i.is_injective()
        && p.is_surjective()
        && i.then(&p)?.is_zero()
        && k.dim() == m.dim() + c.dim()
        && c.dim() == syz.dim();
    let cokernel_is_syzygy = is_isomorphic(&c, &syz).label();
    Ok(FamilyMember {
        alpha,
        degree: d,
        eta_coordinates: e.coordinates(),
        eta: e.clone(),
        dim: k.dim(),
        dim_m: m.dim(),
        dim_syzygy: syz.dim(),
        module: k,
        inclusion: i,
        projection: p,
        exact,
        cokernel_is_syzygy,
    })
}

/// Whether K splits as M ⊕ Ω^{d−1}M.
pub fn splits(member: &FamilyMember) -> Result<IsoLabel> {
    let syz = min_proj_resolution(member.eta.source(), member.degree).syzygy_module(member.degree - 1);
    let (sum, _, _) = direct_sum(&[member.eta.source().clone(), syz])?;
    Ok(is_isomorphic(&member.module, &sum).label())
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberCheck {
    pub alpha: FieldElem,
    pub exact: bool,
    pub dim: usize,
    pub dim_bound: usize,
    pub dim_ok: bool,
    /// dim (R/Ann Ext*(K_α, M))_n.
    pub annihilator_hilbert: Vec<usize>,
    /// Least k with (x₁ + αx₂)^k ∈ Ann Ext*(K_α, M).
    pub power_in_annihilator: Option<usize>,
    /// V(x₁ + αx₂) ⊆ V^p(K_α).
    pub contains_line: bool,
    /// dim V^p(K_α) = c − 1, certified from Ann ≠ 0 and `contains_line`.
    pub hypersurface: bool,
    /// Growth estimate of dim (R/Ann)_n.
    pub variety_dim: GrowthEstimate,
    /// V^p(K_α) = V(x₁ + αx₂).
    pub variety_equal: bool,
    pub variety_relation: Relation,
    /// dim (R/√Ann)_n when the radical is certified, else dim (R/Ann)_n.
    pub variety_hilbert: Vec<usize>,
    /// dim (R/(x₁ + αx₂))_n.
    pub expected_hilbert: Vec<usize>,
    pub hilbert_equal: bool,
    pub cx_k_m: GrowthEstimate,
    pub cx_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub alphas: (FieldElem, FieldElem),
    pub non_isomorphic: bool,
    /// "annihilator" when the annihilators differ, else "sampling".
    pub method: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub parameter_degree: usize,
    pub parameter_count: usize,
    pub members: Vec<FamilyMember>,
    pub checks: Vec<MemberCheck>,
    pub pairs: Vec<PairCheck>,
    /// Exact sequences, dimension bounds, V(x₁ + αx₂) ⊆ V^p(K_α) of dimension c − 1,
    /// cx(K_α, M) = c − 1 and pairwise non-isomorphism.
    pub passed: bool,
    pub caveats: Vec<String>,
}

/// Monomial bookkeeping for a polynomial ring with equal-degree generators.
struct Monomials {
    field: crate::linalg::Field,
    degree: usize,
    exps: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Monomials {
    fn new(shape: &RingShape, form: &[FieldElem]) -> Result<Self> {
        let degrees = &shape.generator_degrees;
        let Some(&d) = degrees.first() else {
            return Err(Error::Input("linear form over a ring without generators".into()));
        };
        if degrees.iter().any(|&g| g != d) || form.len() != degrees.len() {
            return Err(Error::Input("linear forms need equal-degree generators".into()));
        }
        let mut exps: Vec<Vec<Vec<usize>>> = Vec::with_capacity(shape.words.len());
        for words in &shape.words {
            let row = words
                .iter()
                .map(|w| match *w {
                    Word::Unit => vec![0; degrees.len()],
                    Word::Product { generator, degree, index } => {
                        let mut e = exps[degree][index].clone();
                        e[generator] += 1;
                        e
                    }
                })
                .collect();
            exps.push(row);
        }
        let index =
            exps.iter().map(|row| row.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()).collect();
        Ok(Monomials { field: form[0].field(), degree: d, exps, index })
    }

    /// form · v for v in degree e.
    fn times(&self, form: &[FieldElem], e: usize, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut out = vec![self.field.zero(); self.exps[e + self.degree].len()];
        for (mono, a) in self.exps[e].iter().zip(v) {
            if a.is_zero() {
                continue;
            }
            for (j, c) in form.iter().enumerate() {
                let mut t = mono.clone();
                t[j] += 1;
                out[self.index[e + self.degree][&t]] += &(a * c);
            }
        }
        out
    }

    fn unit(&self) -> Vec<FieldElem> {
        vec![self.field.one()]
    }
}

/// The ideal of a polynomial ring generated by a linear form in equal-degree generators.
pub fn principal_linear_ideal(shape: &RingShape, form: &[FieldElem]) -> Result<GradedIdeal> {
    let mons = Monomials::new(shape, form)?;
    let mut ideal = GradedIdeal::zero(mons.field, shape);
    for e in mons.degree..=shape.truncation {
        let base = e - mons.degree;
        for i in 0..mons.exps[base].len() {
            let mut mono = vec![mons.field.zero(); mons.exps[base].len()];
            mono[i] = mons.field.one();
            ideal.spaces[e].insert(&mons.times(form, base, &mono));
        }
    }
    Ok(ideal)
}

/// The least k with form^k ∈ I, searched while k·deg ≤ I.reliable.
pub fn power_in_ideal(shape: &RingShape, form: &[FieldElem], ideal: &GradedIdeal) -> Result<Option<usize>> {
    let mons = Monomials::new(shape, form)?;
    let mut power = mons.unit();
    let mut k = 0;
    while (k + 1) * mons.degree <= ideal.reliable.min(shape.truncation) {
        power = mons.times(form, k * mons.degree, &power);
        k += 1;
        if ideal.spaces[k * mons.degree].contains(&power) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Builds and checks K_α for each α, using the first two normalization parameters.
pub fn verify_family(
    m: &Module,
    norm: &Normalization,
    alphas: &[FieldElem],
    truncation: usize,
) -> Result<FamilyReport> {
    if norm.count < 2 {
        return Err(Error::Input("the family needs at least two parameters".into()));
    }
    if alphas.len() < 3 {
        return Err(Error::Input("the family needs at least three values of α".into()));
    }
    for (i, a) in alphas.iter().enumerate() {
        if alphas[..i].contains(a) {
            return Err(Error::Input(format!("α = {} repeated", a.to_json_string())));
        }
    }
    let c = norm.count;
    let d = norm.degree;
    let field = m.field();
    let shape = RingShape::polynomial(&vec![d; c], truncation)?;
    let (x1, x2) = (&norm.parameters[0], &norm.parameters[1]);
    let mut members = Vec::with_capacity(alphas.len());
    let mut checks = Vec::with_capacity(alphas.len());
    let mut annihilators = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        let member = extension_member(&eta_alpha(x1, x2, alpha)?, alpha.clone())?;
        let hmod = ext_module_over(m, &norm.parameters, shape.clone(), &member.module, Side::Left)?;
        let ann = annihilator(&hmod)?;
        let mut form = vec![field.zero(); c];
        form[0] = field.one();
        form[1] = alpha.clone();
        let target = principal_linear_ideal(&shape, &form)?;
        let up_to = ann.reliable.min(target.reliable);
        // (x₁ + αx₂) is prime: V(x₁ + αx₂) ⊆ V(Ann) iff Ann ⊆ (x₁ + αx₂), and equality
        // holds iff moreover a power of x₁ + αx₂ lies in Ann.
        let contains_line = target.contains_up_to(&ann, up_to);
        let power = power_in_ideal(&shape, &form, &ann)?;
        let variety_equal = contains_line && power.is_some();
        let variety = SupportVariety::from_module(VarietyKind::Projective, &hmod)?;
        let annihilator_hilbert = ann.quotient_dims()[..=up_to].to_vec();
        let expected_hilbert = target.quotient_dims()[..=up_to].to_vec();
        let variety_hilbert =
            if variety_equal { expected_hilbert.clone() } else { annihilator_hilbert.clone() };
        let variety_relation = if variety_equal {
            Relation::Equal
        } else {
            compare_ideals(&ann, &target, false, false)?.relation
        };
        let cx_k_m = pair_complexity(&member.module, m, truncation)?;
        let dim_bound = member.dim_m + member.dim_syzygy;
        checks.push(MemberCheck {
            alpha: alpha.clone(),
            exact: member.exact,
            dim: member.dim,
            dim_bound,
            dim_ok: member.dim <= dim_bound,
            annihilator_hilbert,
            power_in_annihilator: power,
            contains_line,
            // R is a polynomial domain: Ann ⊆ (x₁ + αx₂) and Ann ≠ 0 force dimension c − 1.
            hypersurface: contains_line && ann.dims()[..=up_to].iter().any(|&n| n > 0),
            variety_dim: variety.dim.clone(),
            variety_equal,
            hilbert_equal: variety_hilbert == expected_hilbert,
            variety_relation,
            variety_hilbert,
            expected_hilbert,
            cx_ok: cx_k_m.gamma == Some(c - 1),
            cx_k_m,
        });
        annihilators.push(ann);
        members.push(member);
    }
    let mut pairs = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let differ =
                annihilators[i].spaces.iter().zip(&annihilators[j].spaces).any(|(a, b)| !same_span(a, b));
            let (non_isomorphic, method) = if differ {
                (true, "annihilator")
            } else {
                match is_isomorphic(&members[i].module, &members[j].module) {
                    crate::module::Iso::NotIsomorphic => (true, "sampling"),
                    _ => (false, "sampling"),
                }
            };
            pairs.push(PairCheck { alphas: (alphas[i].clone(), alphas[j].clone()), non_isomorphic, method });
        }
    }
    let passed = checks.iter().all(|m| m.exact && m.dim_ok && m.contains_line && m.hypersurface && m.cx_ok)
        && pairs.iter().all(|p| p.non_isomorphic);
    let strict: Vec<String> =
        checks.iter().filter(|m| !m.variety_equal).map(|m| m.alpha.to_json_string()).collect();
    let mut caveats = Vec::new();
    if !strict.is_empty() {
        caveats.push(format!("{VARIETY_LARGER} (α = {})", strict.join(", ")));
    }
    if pairs.iter().any(|p| p.method == "sampling") {
        caveats.push(SAMPLED_NON_ISOMORPHISM.to_string());
    }
    Ok(FamilyReport { parameter_degree: d, parameter_count: c, members, checks, pairs, passed, caveats })
}

fn same_span(a: &Span, b: &Span) -> bool {
    a.contains_span(b) && b.contains_span(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    WildByCriterion,
    CriteriaNotMet,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct WildnessReport {
    pub verdict: Verdict,
    pub summary: String,
    pub hypotheses: HypothesisReport,
    pub normalization: Option<Normalization>,
    pub family: Option<FamilyReport>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct WildConfig {
    pub truncation: usize,
    pub alphas: Vec<FieldElem>,
    pub seed: u64,
    pub trials: usize,
}

/// Combines the hypothesis and family reports.
pub fn verdict(
    hypotheses: HypothesisReport,
    normalization: Option<Normalization>,
    family: Option<FamilyReport>,
    mut notes: Vec<String>,
) -> WildnessReport {
    let definite_failure = !hypotheses.selfinjective
        || matches!(hypotheses.h0_local, LocalVerdict::NotLocal(_))
        || (hypotheses.cx_mm.stable && hypotheses.cx_mm.gamma.is_some_and(|g| g < 3));
    let (verdict, summary) = if hypotheses.passed && family.as_ref().is_some_and(|f| f.passed) {
        (
            Verdict::WildByCriterion,
            format!(
                "the complexity criterion for wildness is met at truncation {}; wildness follows only via Crawley-Boevey's Theorem D over an algebraically closed field",
                hypotheses.truncation
            ),
        )
    } else if definite_failure {
        (Verdict::CriteriaNotMet, "the hypotheses of the criterion fail".to_string())
    } else {
        (
            Verdict::Inconclusive,
            "the evidence at this truncation neither meets nor refutes the criterion".to_string(),
        )
    };
    let mut caveats = standard_caveats();
    caveats.append(&mut notes);
    if let Some(f) = &family {
        caveats.extend(f.caveats.iter().cloned());
    }
    WildnessReport { verdict, summary, hypotheses, normalization, family, caveats }
}

/// The whole pipeline for M and H.
pub fn wild_check(m: &Module, h: &GradedSubalgebra, config: &WildConfig) -> Result<WildnessReport> {
    let hypotheses = check_hypotheses(m, h, config.truncation)?;
    let mut notes = Vec::new();
    if !hypotheses.generators_central_low_degree {
        notes.push(
            "the generators of H are not central in low degrees; centrality is not required".to_string(),
        );
    }
    if !hypotheses.passed {
        return Ok(verdict(hypotheses, None, None, notes));
    }
    let normalization = match noether_normalize(h, config.trials, config.seed) {
        Ok(n) => n,
        Err(Error::NormalizationNotFound(t)) => {
            notes.push(format!("no Noether normalization found in {t} trials"));
            return Ok(verdict(hypotheses, None, None, notes));
        }
        Err(e) => return Err(e),
    };
    if normalization.count < 3 {
        notes.push(format!("only {} normalization parameters", normalization.count));
        return Ok(verdict(hypotheses, Some(normalization), None, notes));
    }
    let family = verify_family(m, &normalization, &config.alphas, config.truncation)?;
    Ok(verdict(hypotheses, Some(normalization), Some(family), notes))
}

/// Whether `e` is a class of Ext^d(M, M) for the module of `h`.
pub fn in_ext_of(h: &GradedSubalgebra, e: &ExtElement) -> Result<bool> {
    let s = ext_space(h.module(), h.module(), e.degree())?;
    Ok(e.source().same_as(s.source()) && e.target().same_as(s.target()))
}

#[cfg(test)]
mod tests;
