use serde::Serialize;
use serde_json::Value;
use varieties::algebra::Algebra;
use varieties::ext::{
    center_truncated, ext_dims, ext_space, period_class, tensor_period_classes, yoneda, ExtElement,
};
use varieties::graded::{generate_subalgebra, GradedSubalgebra};
use varieties::linalg::FieldElem;
use varieties::module::{is_selfinjective, Module};
use varieties::resolution::{
    complexity, estimate_gamma, min_inj_resolution, min_proj_resolution, plexity, GrowthEstimate,
};
use varieties::variety::{injective_variety, projective_variety, SupportVariety};
use varieties::wildness::{standard_caveats, wild_check, WildConfig, WildnessReport};
use varieties::{Error, Result};

use crate::input::{LoadedAlgebra, LoadedModule};

pub const TRUNCATION_CAVEAT: &str = "all estimates hold at the stated truncation only";

/// How to choose the graded subalgebra H ⊆ Ext*(M, M).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HSource {
    /// Tensor period classes for tensor inputs, else `AutoPeriodic`.
    Auto,
    AutoPeriodic,
    /// Central elements of positive degree ≤ d.
    AutoCentral(usize),
    /// (degree, coordinates in the basis of Ext^degree(M, M)).
    Explicit(Vec<(usize, Vec<String>)>),
}

impl HSource {
    pub fn parse(raw: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unknown H specification `{raw}`"));
        match raw {
            "auto" => return Ok(HSource::Auto),
            "auto-periodic" => return Ok(HSource::AutoPeriodic),
            _ => {}
        }
        if let Some(d) = raw.strip_prefix("auto-central:") {
            return d.parse().map(HSource::AutoCentral).map_err(|_| bad());
        }
        let body = raw.strip_prefix("explicit:").ok_or_else(bad)?;
        let mut gens = Vec::new();
        for part in body.split(';').filter(|s| !s.trim().is_empty()) {
            let (deg, coords) = part.split_once(':').ok_or_else(bad)?;
            let deg = deg.trim().parse().map_err(|_| bad())?;
            gens.push((deg, coords.split(',').map(|c| c.trim().to_string()).collect()));
        }
        Ok(HSource::Explicit(gens))
    }
}

pub struct HChoice {
    pub h: GradedSubalgebra,
    pub recipe: String,
}

pub fn choose_h(m: &LoadedModule, alg: &LoadedAlgebra, source: &HSource, d: usize) -> Result<HChoice> {
    let module = &m.module;
    let (gens, recipe) = match source {
        HSource::Auto if !m.factors.is_empty() => {
            let refs: Vec<&Module> = m.factors.iter().collect();
            let mus = tensor_period_classes(&alg.algebra, &refs)?;
            if commute(&mus)? {
                (mus, "tensor period classes".to_string())
            } else {
                let squares = mus.iter().map(|u| yoneda(u, u)).collect::<Result<Vec<_>>>()?;
                (squares, "squares of the tensor period classes".to_string())
            }
        }
        HSource::Auto | HSource::AutoPeriodic => {
            let found = (1..=d).find_map(|p| period_class(module, p).transpose().map(|r| (p, r)));
            match found {
                Some((p, class)) => (vec![class?], format!("period class of degree {p}")),
                None => return Err(Error::Input(format!("{} is not periodic within degree {d}", m.name))),
            }
        }
        HSource::AutoCentral(dgen) => {
            let center = center_truncated(module, d, *dgen)?;
            let gens: Vec<ExtElement> =
                center.degrees.iter().skip(1).take(*dgen).flatten().cloned().collect();
            (gens, format!("central elements of degree 1..{dgen}"))
        }
        HSource::Explicit(list) => {
            let f = module.field();
            let mut gens = Vec::new();
            for (deg, coords) in list {
                let space = ext_space(module, module, *deg)?;
                if coords.len() != space.dim() {
                    return Err(Error::Input(format!(
                        "Ext^{deg} has dimension {}, but {} coordinates were given",
                        space.dim(),
                        coords.len()
                    )));
                }
                let c = coords.iter().map(|s| f.parse_elem(s)).collect::<Result<Vec<FieldElem>>>()?;
                gens.push(ExtElement::from_coordinates(&space, &c));
            }
            (gens, "explicit".to_string())
        }
    };
    Ok(HChoice { h: generate_subalgebra(module, gens, d)?, recipe })
}

fn commute(gens: &[ExtElement]) -> Result<bool> {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !yoneda(a, b)?.same_class(&yoneda(b, a)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A command's result: JSON payload, caveats and optional CSV rows.
pub struct Outcome {
    pub result: Value,
    pub caveats: Vec<String>,
    pub csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    pub summary: Option<String>,
}

fn json<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

#[derive(Serialize)]
struct AlgebraReport {
    dim: usize,
    field: String,
    vertices: Vec<String>,
    arrows: Vec<String>,
    basis: Vec<String>,
    loewy_length: usize,
    selfinjective: bool,
    tensor_factors: usize,
}

pub fn algebra(alg: &LoadedAlgebra) -> Result<Outcome> {
    let a: &Algebra = &alg.algebra;
    let q = a.quiver();
    let report = AlgebraReport {
        dim: a.dim(),
        field: a.field().to_string(),
        vertices: q.vertices.clone(),
        arrows: q.arrows.iter().map(|x| x.name.clone()).collect(),
        basis: a.basis_names(),
        loewy_length: a.loewy_length(),
        selfinjective: is_selfinjective(&alg.algebra),
        tensor_factors: alg.factors.len(),
    };
    Ok(Outcome { result: json(&report)?, caveats: Vec::new(), csv: None, summary: None })
}

#[derive(Serialize)]
struct ResolveRow {
    module: String,
    dim: usize,
    betti: Vec<usize>,
    term_dims: Vec<usize>,
    complexity: GrowthEstimate,
    injective_term_dims: Vec<usize>,
    plexity: GrowthEstimate,
}

pub fn resolve(mods: &[LoadedModule], d: usize) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut csv = Vec::new();
    for m in mods {
        let res = min_proj_resolution(&m.module, d);
        let term_dims = res.term_dims()[..=d].to_vec();
        let betti = res.bettis()[..=d].to_vec();
        let inj = min_inj_resolution(&m.module, d).term_dims()[..=d].to_vec();
        for (n, (b, t)) in betti.iter().zip(&term_dims).enumerate() {
            csv.push(vec![m.name.clone(), n.to_string(), b.to_string(), t.to_string()]);
        }
        rows.push(ResolveRow {
            module: m.name.clone(),
            dim: m.module.dim(),
            complexity: estimate_gamma(&term_dims)?,
            plexity: estimate_gamma(&inj)?,
            betti,
            term_dims,
            injective_term_dims: inj,
        });
    }
    Ok(Outcome {
        result: json(&rows)?,
        caveats: vec![TRUNCATION_CAVEAT.into()],
        csv: Some((vec!["module", "degree", "betti", "term_dim"], csv)),
        summary: None,
    })
}

#[derive(Serialize)]
struct ExtRow {
    source: String,
    target: String,
    dims: Vec<usize>,
}

pub fn ext(mods: &[LoadedModule], d: usize) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut csv = Vec::new();
    for x in mods {
        for y in mods {
            let dims = ext_dims(&x.module, &y.module, d)?;
            for (n, e) in dims.iter().enumerate() {
                csv.push(vec![x.name.clone(), y.name.clone(), n.to_string(), e.to_string()]);
            }
            rows.push(ExtRow { source: x.name.clone(), target: y.name.clone(), dims });
        }
    }
    Ok(Outcome {
        result: json(&rows)?,
        caveats: vec![TRUNCATION_CAVEAT.into()],
        csv: Some((vec!["source", "target", "degree", "dim"], csv)),
        summary: None,
    })
}

#[derive(Serialize)]
struct ComplexityReport {
    modules: Vec<ModuleGrowth>,
    pairs: Vec<PairGrowth>,
}

#[derive(Serialize)]
struct ModuleGrowth {
    module: String,
    cx: GrowthEstimate,
    px: GrowthEstimate,
}

#[derive(Serialize)]
struct PairGrowth {
    x: String,
    y: String,
    cx: GrowthEstimate,
    /// cx(X, Y) ≤ min(cx X, px Y), when all three are stable.
    bound_holds: Option<bool>,
}

pub fn complexity_cmd(mods: &[LoadedModule], d: usize) -> Result<Outcome> {
    let modules = mods
        .iter()
        .map(|m| {
            Ok(ModuleGrowth {
                module: m.name.clone(),
                cx: complexity(&m.module, d)?,
                px: plexity(&m.module, d)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for (i, x) in mods.iter().enumerate() {
        for (j, y) in mods.iter().enumerate() {
            let cx = varieties::ext::pair_complexity(&x.module, &y.module, d)?;
            let bound_holds = match (cx.gamma, modules[i].cx.gamma, modules[j].px.gamma) {
                (Some(p), Some(a), Some(b)) => Some(p <= a.min(b)),
                _ => None,
            };
            pairs.push(PairGrowth { x: x.name.clone(), y: y.name.clone(), cx, bound_holds });
        }
    }
    Ok(Outcome {
        result: json(&ComplexityReport { modules, pairs })?,
        caveats: vec![TRUNCATION_CAVEAT.into()],
        csv: None,
        summary: None,
    })
}

#[derive(Serialize)]
struct VarietyReport {
    h_recipe: String,
    h_generator_degrees: Vec<usize>,
    h_hilbert: Vec<usize>,
    varieties: Vec<VarietyEntry>,
}

#[derive(Serialize)]
struct VarietyEntry {
    module: String,
    injective: SupportVariety,
    projective: SupportVariety,
}

pub fn variety(choice: &HChoice, mods: &[LoadedModule]) -> Result<Outcome> {
    let h = &choice.h;
    let mut caveats = vec![TRUNCATION_CAVEAT.to_string()];
    let mut entries = Vec::new();
    let mut csv = Vec::new();
    for n in mods {
        let injective = injective_variety(h, &n.module)?;
        let projective = projective_variety(h, &n.module)?;
        for v in [&injective, &projective] {
            for c in &v.caveats {
                if !caveats.contains(c) {
                    caveats.push(c.clone());
                }
            }
            let kind = serde_json::to_value(v.kind)?.as_str().unwrap_or_default().to_string();
            for (d, q) in v.quotient_dims.iter().enumerate() {
                csv.push(vec![n.name.clone(), kind.clone(), d.to_string(), q.to_string()]);
            }
        }
        entries.push(VarietyEntry { module: n.name.clone(), injective, projective });
    }
    let report = VarietyReport {
        h_recipe: choice.recipe.clone(),
        h_generator_degrees: h.generator_degrees().to_vec(),
        h_hilbert: h.dims(),
        varieties: entries,
    };
    Ok(Outcome {
        result: json(&report)?,
        caveats,
        csv: Some((vec!["module", "kind", "degree", "quotient_dim"], csv)),
        summary: None,
    })
}

pub fn wild(m: &LoadedModule, choice: &HChoice, config: &WildConfig) -> Result<Outcome> {
    let report = wild_check(&m.module, &choice.h, config)?;
    let summary = summarize(&report, &choice.recipe);
    let mut caveats = report.caveats.clone();
    for c in standard_caveats() {
        if !caveats.contains(&c) {
            caveats.push(c);
        }
    }
    Ok(Outcome { result: json(&report)?, caveats, csv: None, summary: Some(summary) })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summarize(r: &WildnessReport, recipe: &str) -> String {
    let h = &r.hypotheses;
    let mut s = String::new();
    s.push_str(&format!("verdict        {:?}\n", r.verdict));
    s.push_str(&format!("truncation     {}\n", h.truncation));
    s.push_str(&format!("H              {recipe}\n"));
    s.push_str(&format!("selfinjective  {}\n", yes(h.selfinjective)));
    s.push_str(&format!("H_0 local      {:?}\n", h.h0_local));
    s.push_str(&format!("cx(M,M)        {}\n", h.cx_mm.label()));
    s.push_str(&format!("gamma(H)       {}\n", h.gamma_h.label()));
    s.push_str(&format!("fg over H      {:?}\n", h.fg.verdict));
    if let Some(n) = &r.normalization {
        s.push_str(&format!("parameters     {} of degree {}\n", n.count, n.degree));
    }
    if let Some(f) = &r.family {
        s.push_str("\nalpha  exact  dim  bound  line in V  V = line  cx(K,M)\n");
        for c in &f.checks {
            s.push_str(&format!(
                "{:<6} {:<6} {:<4} {:<6} {:<10} {:<9} {}\n",
                c.alpha.to_string(),
                yes(c.exact),
                c.dim,
                c.dim_bound,
                yes(c.contains_line),
                yes(c.variety_equal),
                c.cx_k_m.label()
            ));
        }
        for p in &f.pairs {
            s.push_str(&format!(
                "K_{} vs K_{}: {} ({})\n",
                p.alphas.0,
                p.alphas.1,
                if p.non_isomorphic { "non-isomorphic" } else { "not separated" },
                p.method
            ));
        }
    }
    s.push_str("\ncaveats:\n");
    for c in &r.caveats {
        s.push_str(&format!("  - {c}\n"));
    }
    s
}

pub fn default_truncation(alg: &LoadedAlgebra) -> usize {
    if alg.factors.is_empty() {
        20
    } else {
        10
    }
}
