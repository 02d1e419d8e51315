use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use super::quiver::{Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldElem};

/// A k-linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub terms: Vec<(FieldElem, Path)>,
}

impl Relation {
    /// Combines like terms, drops zeros and sorts by path.
    pub fn normalized(terms: Vec<(FieldElem, Path)>) -> Relation {
        let mut acc: BTreeMap<Path, FieldElem> = BTreeMap::new();
        for (c, p) in terms {
            match acc.get_mut(&p) {
                Some(x) => *x += &c,
                None => {
                    acc.insert(p, c);
                }
            }
        }
        Relation { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Source and target shared by every term, if they agree.
    pub fn endpoints(&self, q: &Quiver) -> Option<(usize, usize)> {
        let (_, first) = self.terms.first()?;
        let ends = (first.start, first.end(q));
        self.terms.iter().all(|(_, p)| (p.start, p.end(q)) == ends).then_some(ends)
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut s = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let neg = c.as_rational().map(|r| r.numer() < 0.into()).unwrap_or(false);
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                let _ = write!(s, "{mag}*");
            }
            s.push_str(&p.display(q));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub field: Field,
    pub quiver: Quiver,
    /// Named scalars, already bound to field elements.
    pub params: Vec<(String, FieldElem)>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn param(&self, name: &str) -> Option<&FieldElem> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// Reverses arrows and relation paths.
    pub fn opposite(&self) -> Presentation {
        let quiver = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let terms = r
                    .terms
                    .iter()
                    .map(|(c, p)| {
                        let mut arrows = p.arrows.clone();
                        arrows.reverse();
                        let start = arrows.first().map_or(p.start, |&a| quiver.arrows[a].source);
                        (c.clone(), Path { start, arrows })
                    })
                    .collect();
                Relation::normalized(terms)
            })
            .collect();
        Presentation { field: self.field, quiver, params: self.params.clone(), relations }
    }

    /// Renders the presentation in the input language.
    pub fn to_dsl(&self) -> String {
        let mut s = format!("field {}\n", self.field);
        for (n, v) in &self.params {
            let _ = writeln!(s, "param {n} = {v};");
        }
        let _ = writeln!(s, "vertex {};", self.quiver.vertices.join(", "));
        for a in &self.quiver.arrows {
            let q = &self.quiver;
            let _ = writeln!(s, "arrow {}: {} -> {};", a.name, q.vertices[a.source], q.vertices[a.target]);
        }
        for r in &self.relations {
            let _ = writeln!(s, "relation {};", r.display(&self.quiver));
        }
        s
    }

    pub(crate) fn check_relations(&self) -> Result<()> {
        for r in &self.relations {
            if r.is_zero() {
                return Err(Error::Parse("relation is identically zero".into()));
            }
            if r.endpoints(&self.quiver).is_none() {
                return Err(Error::Parse(format!(
                    "relation {} has non-parallel terms",
                    r.display(&self.quiver)
                )));
            }
        }
        Ok(())
    }
}
