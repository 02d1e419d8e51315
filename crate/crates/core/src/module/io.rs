//! Module files.
//!
//! ```json
//! { "dims": [2], "arrows": { "x": [[0, 0], [0, 0]], "y": [[0, 0], [1, 0]] } }
//! ```
//!
//! `dims` lists the dimension at each vertex in declaration order. Each arrow
//! matrix is row-major with shape dim(target) × dim(source), so column j is the
//! image of the j-th basis vector at the source. Entries are integers or
//! strings `"n/d"`. Arrows left out act by zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Module;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{FieldElem, Matrix};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<Value>>>,
}

fn entry(alg: &Algebra, v: &Value) -> Result<FieldElem> {
    let f = alg.field();
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| f.from_i64(i))
            .ok_or_else(|| Error::Input(format!("matrix entry {n} is not an integer"))),
        Value::String(s) => f.parse_elem(s),
        other => Err(Error::Input(format!("matrix entry {other} is neither a number nor a string"))),
    }
}

pub fn module_from_json(alg: &Arc<Algebra>, text: &str) -> Result<Module> {
    let file: ModuleFile = serde_json::from_str(text)?;
    module_from_file(alg, &file)
}

pub fn module_from_file(alg: &Arc<Algebra>, file: &ModuleFile) -> Result<Module> {
    let q = alg.quiver();
    if file.dims.len() != q.vertex_count() {
        return Err(Error::Input(format!(
            "module has {} dimensions but the quiver has {} vertices",
            file.dims.len(),
            q.vertex_count()
        )));
    }
    if let Some(name) = file.arrows.keys().find(|n| q.arrow_index(n).is_none()) {
        return Err(Error::Input(format!("unknown arrow `{name}` in module file")));
    }
    let mut arrows = Vec::new();
    for a in &q.arrows {
        let (r, c) = (file.dims[a.target], file.dims[a.source]);
        let m = match file.arrows.get(&a.name) {
            None => Matrix::zeros(alg.field(), r, c),
            Some(rows) => {
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(Error::Input(format!("arrow `{}` needs a {r}×{c} matrix", a.name)));
                }
                let mut m = Matrix::zeros(alg.field(), r, c);
                for (i, row) in rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        m[(i, j)] = entry(alg, v)?;
                    }
                }
                m
            }
        };
        arrows.push(m);
    }
    Module::new_validated(alg.clone(), file.dims.clone(), arrows)
}

pub fn module_to_file(m: &Module) -> ModuleFile {
    let q = m.algebra().quiver();
    let arrows = q
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let mat = m.arrow_matrix(a);
            let rows = (0..mat.rows())
                .map(|i| {
                    (0..mat.cols())
                        .map(|j| serde_json::to_value(&mat[(i, j)]).expect("serializable"))
                        .collect()
                })
                .collect();
            (arr.name.clone(), rows)
        })
        .collect();
    ModuleFile { dims: m.dims().to_vec(), arrows }
}

pub fn module_to_json(m: &Module) -> String {
    serde_json::to_string_pretty(&module_to_file(m)).expect("serializable")
}
