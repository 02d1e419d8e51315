use std::collections::HashMap;
use std::sync::Arc;

use super::build::Algebra;
use super::presentation::{Presentation, Relation};
use super::quiver::{Arrow, Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::blocks::SparseAcc;
use crate::linalg::SparseVec;

/// Mixed-radix enumeration of tuples, first coordinate slowest.
fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Vertex tuples of a tensor product, first factor slowest.
pub fn vertex_tuples(quivers: &[&Quiver]) -> Vec<Vec<usize>> {
    tuples(&quivers.iter().map(|q| q.vertex_count()).collect::<Vec<_>>())
}

/// For each arrow of the tensor quiver, in order: the factor, the factor's
/// arrow, and the vertex tuple it starts at.
pub fn arrow_origins(quivers: &[&Quiver]) -> Vec<(usize, usize, Vec<usize>)> {
    let vtuples = vertex_tuples(quivers);
    let mut out = Vec::new();
    for (i, q) in quivers.iter().enumerate() {
        for (ai, a) in q.arrows.iter().enumerate() {
            for t in vtuples.iter().filter(|t| t[i] == a.source) {
                out.push((i, ai, t.clone()));
            }
        }
    }
    out
}

/// Ordinary (unsigned) tensor product of two algebras.
pub fn tensor(a: &Algebra, b: &Algebra) -> Result<Arc<Algebra>> {
    tensor_all(&[a, b])
}

/// Tensor product of several algebras over a common field. Arrows of factor
/// `i` are renamed `name_i` (1-based), with `@vertex` appended when the other
/// factors have more than one vertex combination.
pub fn tensor_all(factors: &[&Algebra]) -> Result<Arc<Algebra>> {
    let Some(first) = factors.first() else {
        return Err(Error::Input("tensor product of no algebras".into()));
    };
    let field = first.field();
    if let Some(f) = factors.iter().find(|f| f.field() != field) {
        return Err(Error::FieldMismatch(field.to_string(), f.field().to_string()));
    }
    let quivers: Vec<&Quiver> = factors.iter().map(|f| f.quiver()).collect();
    let vsizes: Vec<usize> = quivers.iter().map(|q| q.vertex_count()).collect();
    let vtuples = tuples(&vsizes);
    let vindex: HashMap<Vec<usize>, usize> =
        vtuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let multi: Vec<usize> = (0..factors.len()).filter(|&i| vsizes[i] > 1).collect();
    let vname = |t: &[usize], skip: Option<usize>| -> String {
        let parts: Vec<&str> =
            multi.iter().filter(|&&i| Some(i) != skip).map(|&i| quivers[i].vertices[t[i]].as_str()).collect();
        parts.join(".")
    };
    let vertices: Vec<String> = vtuples
        .iter()
        .map(|t| if multi.is_empty() { quivers[0].vertices[t[0]].clone() } else { vname(t, None) })
        .collect();

    let mut arrows = Vec::new();
    let mut arrow_index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (i, ai, t) in arrow_origins(&quivers) {
        let a = &quivers[i].arrows[ai];
        let mut tt = t.clone();
        tt[i] = a.target;
        let name = if vtuples.len() / vsizes[i] > 1 {
            format!("{}_{}@{}", a.name, i + 1, vname(&t, Some(i)))
        } else {
            format!("{}_{}", a.name, i + 1)
        };
        arrows.push(Arrow { name, source: vindex[&t], target: vindex[&tt] });
        arrow_index.insert((i, ai, t), arrows.len() - 1);
    }
    let quiver = Quiver::new(vertices, arrows)?;

    // Lifts a factor path starting at tuple `t` (with t[i] its start).
    let lift = |i: usize, p: &Path, t: &[usize]| -> (Vec<usize>, Vec<usize>) {
        let mut cur = t.to_vec();
        let mut out = Vec::with_capacity(p.len());
        for &a in &p.arrows {
            out.push(arrow_index[&(i, a, cur.clone())]);
            cur[i] = quivers[i].arrows[a].target;
        }
        (out, cur)
    };

    let mut relations = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for r in &f.presentation().relations {
            let (rs, _) = r.endpoints(quivers[i]).expect("parallel");
            for t in vtuples.iter().filter(|t| t[i] == rs) {
                let terms = r
                    .terms
                    .iter()
                    .map(|(c, p)| (c.clone(), Path { start: vindex[t], arrows: lift(i, p, t).0 }))
                    .collect();
                relations.push(Relation::normalized(terms));
            }
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            for (ai, a) in quivers[i].arrows.iter().enumerate() {
                for (bj, b) in quivers[j].arrows.iter().enumerate() {
                    for t in vtuples.iter().filter(|t| t[i] == a.source && t[j] == b.source) {
                        let ab = {
                            let mut t1 = t.clone();
                            let x = arrow_index[&(i, ai, t1.clone())];
                            t1[i] = a.target;
                            vec![x, arrow_index[&(j, bj, t1)]]
                        };
                        let ba = {
                            let mut t1 = t.clone();
                            let x = arrow_index[&(j, bj, t1.clone())];
                            t1[j] = b.target;
                            vec![x, arrow_index[&(i, ai, t1)]]
                        };
                        let start = vindex[t];
                        relations.push(Relation::normalized(vec![
                            (field.one(), Path { start, arrows: ab }),
                            (-field.one(), Path { start, arrows: ba }),
                        ]));
                    }
                }
            }
        }
    }
    let mut params: Vec<(String, crate::linalg::FieldElem)> = Vec::new();
    for f in factors {
        for (n, v) in &f.presentation().params {
            if !params.iter().any(|(m, _)| m == n) {
                params.push((n.clone(), v.clone()));
            }
        }
    }
    let pres = Presentation { field, quiver, params, relations };

    let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let btuples = tuples(&dims);
    let bindex: HashMap<Vec<usize>, usize> =
        btuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let basis: Vec<Path> = btuples
        .iter()
        .map(|bt| {
            let mut cur: Vec<usize> = bt.iter().enumerate().map(|(i, &b)| factors[i].source(b)).collect();
            let start = vindex[&cur];
            let mut arrows = Vec::new();
            for (i, &b) in bt.iter().enumerate() {
                let (lifted, end) = lift(i, &factors[i].basis()[b], &cur);
                arrows.extend(lifted);
                cur = end;
            }
            Path { start, arrows }
        })
        .collect();
    let n = basis.len();
    let mut mult = vec![vec![SparseVec::new(); n]; n];
    for (x, bx) in btuples.iter().enumerate() {
        for (y, by) in btuples.iter().enumerate() {
            // Product of the per-factor structure constants.
            let mut partial: Vec<(Vec<usize>, crate::linalg::FieldElem)> = vec![(Vec::new(), field.one())];
            for i in 0..factors.len() {
                let prod = factors[i].product(bx[i], by[i]);
                if prod.is_empty() {
                    partial.clear();
                    break;
                }
                partial = partial
                    .into_iter()
                    .flat_map(|(t, c)| {
                        prod.iter().map(move |(k, d)| {
                            let mut t = t.clone();
                            t.push(*k);
                            (t, &c * d)
                        })
                    })
                    .collect();
            }
            let mut acc = SparseAcc::new();
            for (t, c) in partial {
                acc.add(bindex[&t], c);
            }
            mult[x][y] = acc.finish();
        }
    }
    Ok(Arc::new(Algebra::from_parts(pres, basis, mult)))
}
