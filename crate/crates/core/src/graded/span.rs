use crate::linalg::{Field, FieldElem, Matrix};

/// A subspace of k^n kept in incremental echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    field: Field,
    len: usize,
    rows: Vec<(usize, Vec<FieldElem>)>,
}

impl Span {
    pub fn new(field: Field, len: usize) -> Self {
        Span { field, len, rows: Vec::new() }
    }

    pub fn from_vectors(field: Field, len: usize, vs: &[Vec<FieldElem>]) -> Self {
        let mut s = Span::new(field, len);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let c = w[*p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        w
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[FieldElem]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[p].inv().expect("nonzero pivot");
        self.rows.push((p, w.iter().map(|x| x * &inv).collect()));
        true
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v).iter().all(FieldElem::is_zero)
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|(_, r)| self.contains(r))
    }

    pub fn basis(&self) -> Vec<Vec<FieldElem>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect(&self, other: &Span) -> Span {
        let (a, b) = (self.basis(), other.basis());
        if a.is_empty() || b.is_empty() {
            return Span::new(self.field, self.len);
        }
        // Solve Σ s_i a_i = Σ t_j b_j.
        let mut cols = a.clone();
        cols.extend(b.iter().map(|v| v.iter().map(|x| -x).collect()));
        let k = Matrix::from_columns(self.field, self.len, &cols).kernel_basis();
        let mut out = Span::new(self.field, self.len);
        for c in 0..k.cols() {
            let coeffs = k.column(c);
            let mut v = vec![self.field.zero(); self.len];
            for (s, ai) in coeffs.iter().zip(&a) {
                for (x, y) in v.iter_mut().zip(ai) {
                    *x += &(s * y);
                }
            }
            out.insert(&v);
        }
        out
    }

    pub fn sum(&self, other: &Span) -> Span {
        let mut s = self.clone();
        for (_, r) in &other.rows {
            s.insert(r);
        }
        s
    }
}
