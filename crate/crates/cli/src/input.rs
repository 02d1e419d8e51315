//! Loading algebras and modules, including `tensor` inputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use varieties::algebra::{build_algebra, parse_presentation_with, tensor_all, Algebra, ParseOptions};
use varieties::linalg::{Field, FieldElem};
use varieties::module::constructions::tensor_modules;
use varieties::module::{io::module_from_file, Module, ModuleFile};
use varieties::{Error, Result};

pub struct LoadedAlgebra {
    pub algebra: Arc<Algebra>,
    /// Factors when the file was a `tensor` directive.
    pub factors: Vec<Arc<Algebra>>,
}

pub struct LoadedModule {
    pub name: String,
    pub module: Module,
    pub factors: Vec<Module>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn sibling(base: &Path, name: &str) -> PathBuf {
    base.parent().map(|d| d.join(name)).unwrap_or_else(|| PathBuf::from(name))
}

/// The file names of a `tensor a.alg b.alg ...;` directive, if that is the only statement.
fn tensor_directive(text: &str) -> Option<Vec<String>> {
    let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    let body = body.trim().trim_end_matches(';').trim();
    let rest = body.strip_prefix("tensor")?;
    if !rest.starts_with(char::is_whitespace) {
        return None;
    }
    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    (!names.is_empty() && !rest.contains(';')).then_some(names)
}

pub fn load_algebra(path: &Path, opts: &ParseOptions) -> Result<LoadedAlgebra> {
    let text = read(path)?;
    match tensor_directive(&text) {
        Some(names) => {
            let factors = names
                .iter()
                .map(|n| {
                    let p = sibling(path, n);
                    let t = read(&p)?;
                    if tensor_directive(&t).is_some() {
                        return Err(Error::Input(format!(
                            "{}: nested tensor directives are not supported",
                            p.display()
                        )));
                    }
                    build_algebra(&parse_presentation_with(&t, opts)?)
                })
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Algebra> = factors.iter().map(|a| a.as_ref()).collect();
            Ok(LoadedAlgebra { algebra: tensor_all(&refs)?, factors })
        }
        None => Ok(LoadedAlgebra {
            algebra: build_algebra(&parse_presentation_with(&text, opts)?)?,
            factors: Vec::new(),
        }),
    }
}

pub fn load_module(path: &Path, alg: &LoadedAlgebra) -> Result<LoadedModule> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let name = path.display().to_string();
    if let Some(list) = value.get("tensor") {
        let names: Vec<String> = serde_json::from_value(list.clone())?;
        if names.len() != alg.factors.len() {
            return Err(Error::Input(format!(
                "{name}: {} tensor factors, but the algebra has {}",
                names.len(),
                alg.factors.len()
            )));
        }
        let factors = names
            .iter()
            .zip(&alg.factors)
            .map(|(n, a)| {
                let p = sibling(path, n);
                let file: ModuleFile = serde_json::from_str(&read(&p)?)?;
                module_from_file(a, &file)
            })
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Module> = factors.iter().collect();
        let module = tensor_modules(&alg.algebra, &refs)?;
        return Ok(LoadedModule { name, module, factors });
    }
    let file: ModuleFile = serde_json::from_value(value)?;
    Ok(LoadedModule { name, module: module_from_file(&alg.algebra, &file)?, factors: Vec::new() })
}

/// `name=value` pairs.
pub fn parse_params(raw: &[String], q: Option<&str>) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for p in raw {
        let (n, v) = p
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("parameter `{p}` is not of the form name=value")))?;
        out.push((n.trim().to_string(), v.trim().to_string()));
    }
    if let Some(q) = q {
        out.push(("q".into(), q.to_string()));
    }
    Ok(out)
}

pub fn parse_alphas(field: Field, raw: &str) -> Result<Vec<FieldElem>> {
    raw.split(',').map(|s| field.parse_elem(s.trim())).collect()
}

pub fn parse_field(raw: &str) -> Result<Field> {
    raw.parse::<Field>().map_err(|e| Error::Input(e.to_string()))
}
