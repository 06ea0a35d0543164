//! Tensor products over A_0: bimodules, composable word spaces, quadraticity and tensor-algebra recognition.

use super::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{vecops, Matrix, Scalar, Subspace};
use std::collections::HashMap;

/// A finite-dimensional bimodule with explicit action matrices.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: Algebra,
    pub right: Algebra,
    pub dim: usize,
    /// v ↦ l·v for each basis element l of `left`
    pub left_action: Vec<Matrix>,
    /// v ↦ v·r for each basis element r of `right`
    pub right_action: Vec<Matrix>,
}

impl Bimodule {
    /// A_d as an (A_0, A_0)-bimodule.
    pub fn degree_piece(a: &Algebra, d: usize) -> Bimodule {
        let (a0, idx0) = a.degree_zero_part();
        let idx = a.indices_of_degree(d);
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let n = idx.len();
        let act = |left: bool| -> Vec<Matrix> {
            idx0.iter()
                .map(|&r| {
                    let mut m = Matrix::zeros(a.field, n, n);
                    for (c, &j) in idx.iter().enumerate() {
                        let prod = if left {
                            a.product(r, j)
                        } else {
                            a.product(j, r)
                        };
                        for (k, v) in prod {
                            m.set(pos[k], c, v.clone());
                        }
                    }
                    m
                })
                .collect()
        };
        Bimodule {
            left: a0.clone(),
            right: a0,
            dim: n,
            left_action: act(true),
            right_action: act(false),
        }
    }

    /// An algebra as a bimodule over itself.
    pub fn regular(a: &Algebra) -> Bimodule {
        let n = a.dim();
        let left = (0..n)
            .map(|i| a.left_mult_matrix(&a.basis_vec(i)))
            .collect();
        let right = (0..n)
            .map(|i| a.right_mult_matrix(&a.basis_vec(i)))
            .collect();
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            dim: n,
            left_action: left,
            right_action: right,
        }
    }

    /// Actions commute and respect the structure constants of both algebras.
    pub fn check(&self) -> bool {
        for l in &self.left_action {
            for r in &self.right_action {
                if l.mul(r) != r.mul(l) {
                    return false;
                }
            }
        }
        let ok = |alg: &Algebra, acts: &[Matrix], right: bool| {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let mut expect = Matrix::zeros(alg.field, self.dim, self.dim);
                    for (k, c) in alg.product(i, j) {
                        expect.add_scaled(c, &acts[*k]);
                    }
                    let got = if right {
                        acts[j].mul(&acts[i])
                    } else {
                        acts[i].mul(&acts[j])
                    };
                    if got != expect {
                        return false;
                    }
                }
            }
            true
        };
        ok(&self.left, &self.left_action, false) && ok(&self.right, &self.right_action, true)
    }
}

/// X ⊗_B Y as the cokernel of the balancing relations in X ⊗_k Y.
pub fn bimodule_tensor(x: &Bimodule, y: &Bimodule) -> Result<Bimodule> {
    if !x.right.structure_eq(&y.left) {
        return Err(Error::Invalid(
            "tensor factors do not share the middle algebra".into(),
        ));
    }
    let field = x.left.field;
    let (dx, dy) = (x.dim, y.dim);
    let amb = dx * dy;
    let mut rel = Subspace::zero(field, amb);
    for r in 0..x.right.dim() {
        let (xr, ry) = (&x.right_action[r], &y.left_action[r]);
        for i in 0..dx {
            for j in 0..dy {
                let mut v = vecops::zeros(field, amb);
                for a in 0..dx {
                    let c = xr.get(a, i);
                    if !c.is_zero() {
                        v[a * dy + j] = &v[a * dy + j] + c;
                    }
                }
                for b in 0..dy {
                    let c = ry.get(b, j);
                    if !c.is_zero() {
                        v[i * dy + b] = &v[i * dy + b] - c;
                    }
                }
                rel.insert(&v);
            }
        }
    }
    let free = rel.complement_indices();
    let n = free.len();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let r = rel.reduce(v);
        free.iter().map(|&i| r[i].clone()).collect()
    };
    let induced = |acts: &[Matrix], on_left: bool| -> Vec<Matrix> {
        acts.iter()
            .map(|m| {
                let mut out = Matrix::zeros(field, n, n);
                for (c, &w) in free.iter().enumerate() {
                    let (i, j) = (w / dy, w % dy);
                    let mut v = vecops::zeros(field, amb);
                    if on_left {
                        for a in 0..dx {
                            let s = m.get(a, i);
                            if !s.is_zero() {
                                v[a * dy + j] = s.clone();
                            }
                        }
                    } else {
                        for b in 0..dy {
                            let s = m.get(b, j);
                            if !s.is_zero() {
                                v[i * dy + b] = s.clone();
                            }
                        }
                    }
                    for (r, val) in project(&v).into_iter().enumerate() {
                        out.set(r, c, val);
                    }
                }
                out
            })
            .collect()
    };
    Ok(Bimodule {
        left: x.left.clone(),
        right: y.right.clone(),
        dim: n,
        left_action: induced(&x.left_action, true),
        right_action: induced(&y.right_action, false),
    })
}

/// Span of composable words x_1 ⊗ … ⊗ x_n over A_0, each x_k drawn from a set of A-basis
/// indices closed under the A_0 actions, modulo the balancing relations.
#[derive(Clone, Debug)]
pub struct WordSpace {
    pub factors: Vec<Vec<usize>>,
    pub words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    relations: Subspace,
    /// word indices forming a basis of the quotient
    pub free: Vec<usize>,
}

fn composable(a: &Algebra, w: &[usize]) -> bool {
    w.windows(2)
        .all(|p| a.basis[p[0]].source == a.basis[p[1]].target)
}

fn composable_words(a: &Algebra, factors: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for f in factors {
        let mut next = Vec::new();
        for w in &words {
            for &b in f {
                let mut nw = w.clone();
                nw.push(b);
                if composable(a, &nw) {
                    next.push(nw);
                }
            }
        }
        words = next;
    }
    words
}

impl WordSpace {
    pub fn new(a: &Algebra, factors: Vec<Vec<usize>>) -> WordSpace {
        let field = a.field;
        let words = composable_words(a, &factors);
        let index: HashMap<Vec<usize>, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let amb = words.len();
        let a0: Vec<usize> = a
            .indices_of_degree(0)
            .into_iter()
            .filter(|i| !a.idempotents.contains(i))
            .collect();
        let mut relations = Subspace::zero(field, amb);
        for k in 0..factors.len().saturating_sub(1) {
            let lefts = composable_words(a, &factors[..=k]);
            let rights = composable_words(a, &factors[k + 1..]);
            for l in &lefts {
                for r in &rights {
                    for &m in &a0 {
                        let b = &a.basis[m];
                        if b.target != a.basis[l[k]].source || b.source != a.basis[r[0]].target {
                            continue;
                        }
                        // (… x_k m ⊗ x_{k+1} …) − (… x_k ⊗ m x_{k+1} …)
                        let mut v = vecops::zeros(field, amb);
                        for (g, c) in a.product(l[k], m) {
                            let mut nw = l.clone();
                            nw[k] = *g;
                            nw.extend_from_slice(r);
                            if let Some(&i) = index.get(&nw) {
                                v[i] = &v[i] + c;
                            }
                        }
                        for (g, c) in a.product(m, r[0]) {
                            let mut nw = l.clone();
                            nw.extend_from_slice(r);
                            nw[k + 1] = *g;
                            if let Some(&i) = index.get(&nw) {
                                v[i] = &v[i] - c;
                            }
                        }
                        relations.insert(&v);
                    }
                }
            }
        }
        let free = relations.complement_indices();
        WordSpace {
            factors,
            words,
            index,
            relations,
            free,
        }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.words.len()
    }

    pub fn word_index(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Quotient coordinates of a vector in word coordinates.
    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.relations.reduce(v);
        self.free.iter().map(|&i| r[i].clone()).collect()
    }

    /// Word-coordinate lift of quotient coordinates.
    pub fn lift(&self, c: &[Scalar], field: crate::exactlin::Field) -> Vec<Scalar> {
        let mut v = vecops::zeros(field, self.ambient());
        for (k, &i) in self.free.iter().enumerate() {
            v[i] = c[k].clone();
        }
        v
    }

    /// Word coordinates of x_1 ⊗ … ⊗ x_n for A-vectors supported on the factor sets.
    pub fn pure_tensor(&self, a: &Algebra, xs: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut v = vecops::zeros(a.field, self.ambient());
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(vec![], a.field.one())];
        for x in xs {
            let mut next = Vec::new();
            for (w, c) in &partial {
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw.push(i);
                    if composable(a, &nw) {
                        next.push((nw, c * xi));
                    }
                }
            }
            partial = next;
        }
        for (w, c) in partial {
            if let Some(&i) = self.index.get(&w) {
                v[i] = &v[i] + &c;
            }
        }
        v
    }

    /// Product x_1 x_2 … x_n in A of a word-coordinate vector.
    pub fn multiply(&self, a: &Algebra, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = a.zero_vec();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = &self.words[i];
            let mut acc = a.basis_vec(w[0]);
            for &b in &w[1..] {
                acc = a.mul(&acc, &a.basis_vec(b));
            }
            vecops::axpy(&mut out, c, &acc);
        }
        out
    }

    /// Matrix of the multiplication map from the quotient into A.
    pub fn multiplication_matrix(&self, a: &Algebra) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self
            .free
            .iter()
            .map(|&i| {
                let mut v = vecops::zeros(a.field, self.ambient());
                v[i] = a.field.one();
                self.multiply(a, &v)
            })
            .collect();
        Matrix::from_cols(a.field, a.dim(), &cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticReport {
    pub quadratic: bool,
    /// degree where the relations first fail to be generated in degree 2
    pub failing_degree: Option<usize>,
    /// A fails to be generated in degrees 0 and 1 at this degree
    pub not_generated_at: Option<usize>,
    /// (degree, dim kernel, dim generated by degree 2)
    pub kernel_dims: Vec<(usize, usize, usize)>,
}

pub fn quadratic_report(a: &Algebra) -> QuadraticReport {
    let field = a.field;
    let top = a.max_degree();
    let a1 = a.indices_of_degree(1);
    let mut report = QuadraticReport {
        quadratic: true,
        failing_degree: None,
        not_generated_at: None,
        kernel_dims: vec![],
    };
    let mut k2: Vec<Vec<Scalar>> = Vec::new();
    let mut spaces: Vec<WordSpace> = Vec::new();
    for n in 0..=top + 1 {
        spaces.push(WordSpace::new(a, vec![a1.clone(); n]));
    }
    for n in 2..=top + 1 {
        let t = &spaces[n];
        let mu = t.multiplication_matrix(a);
        if mu.rank() != a.indices_of_degree(n).len() {
            report.quadratic = false;
            report.not_generated_at = Some(n);
            return report;
        }
        let ker = mu.kernel_basis();
        if n == 2 {
            k2 = ker.iter().map(|c| t.lift(c, field)).collect();
            report.kernel_dims.push((2, ker.len(), ker.len()));
            continue;
        }
        let mut gen = Subspace::zero(field, t.dim());
        for i in 0..=n - 2 {
            let j = n - 2 - i;
            for p in &spaces[i].words {
                for s in &spaces[j].words {
                    for kv in &k2 {
                        let mut v = vecops::zeros(field, t.ambient());
                        for (wi, c) in kv.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut w = p.clone();
                            w.extend_from_slice(&spaces[2].words[wi]);
                            w.extend_from_slice(s);
                            if let Some(idx) = t.word_index(&w) {
                                v[idx] = &v[idx] + c;
                            }
                        }
                        gen.insert(&t.coords(&v));
                    }
                }
            }
        }
        report.kernel_dims.push((n, ker.len(), gen.dim()));
        if gen.dim() != ker.len() {
            report.quadratic = false;
            report.failing_degree = Some(n);
            return report;
        }
    }
    report
}

/// The kernel of A_0[A_1] → A is generated in degree 2.
pub fn is_quadratic(a: &Algebra) -> bool {
    quadratic_report(a).quadratic
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorRecognition {
    pub is_tensor: bool,
    pub failing_degree: Option<usize>,
    /// (i + 1, dim A_1 ⊗ A_i, dim A_{i+1})
    pub dims: Vec<(usize, usize, usize)>,
}

/// Checks that every multiplication map A_1 ⊗_{A_0} A_i → A_{i+1} is bijective.
pub fn tensor_algebra_recognition(a: &Algebra) -> TensorRecognition {
    let top = a.max_degree();
    let a1 = a.indices_of_degree(1);
    let mut out = TensorRecognition {
        is_tensor: true,
        failing_degree: None,
        dims: vec![],
    };
    for i in 1..=top {
        let ws = WordSpace::new(a, vec![a1.clone(), a.indices_of_degree(i)]);
        let target = a.indices_of_degree(i + 1).len();
        let mu = ws.multiplication_matrix(a);
        out.dims.push((i + 1, ws.dim(), target));
        if ws.dim() != target || mu.rank() != target {
            out.is_tensor = false;
            out.failing_degree = Some(i + 1);
            return out;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_presentation, Presentation, Quiver};
    use crate::exactlin::Field;

    fn a3(rel: bool) -> Algebra {
        let q = Quiver::new(&["x", "y", "z"])
            .with_arrow("a", "x", "y", 1)
            .with_arrow("b", "y", "z", 1);
        let mut p = Presentation::new("A3", Field::Rationals, q);
        if rel {
            p.add_relation("b*a").unwrap();
        }
        build_from_presentation(&p, 50).unwrap()
    }

    #[test]
    fn a3_quadratic_and_tensor() {
        assert!(is_quadratic(&a3(true)));
        let t = tensor_algebra_recognition(&a3(true));
        assert!(!t.is_tensor);
        assert_eq!(t.failing_degree, Some(2));
        assert_eq!(t.dims[0], (2, 1, 0));
        assert!(tensor_algebra_recognition(&a3(false)).is_tensor);
    }

    #[test]
    fn cubic_relation_not_quadratic() {
        let q = Quiver::new(&["w", "x", "y", "z"])
            .with_arrow("a", "w", "x", 1)
            .with_arrow("b", "x", "y", 1)
            .with_arrow("c", "y", "z", 1);
        let p = Presentation::new("A4", Field::Rationals, q).with_relation("c*b*a");
        let a = build_from_presentation(&p, 50).unwrap();
        let r = quadratic_report(&a);
        assert!(!r.quadratic);
        assert_eq!(r.failing_degree, Some(3));
    }

    #[test]
    fn unit_law_and_plain_tensor() {
        let a = a3(false);
        let a1 = Bimodule::degree_piece(&a, 1);
        let (a0, _) = a.degree_zero_part();
        let reg = Bimodule::regular(&a0);
        let t = bimodule_tensor(&a1, &reg).unwrap();
        assert_eq!(t.dim, a1.dim);
        assert!(t.check());
        assert_eq!(t.left_action, a1.left_action);
    }
}
