//! Finite-dimensional graded algebras given by a basis and structure constants.

mod groebner;
mod ops;
mod presentation;
mod structure;
mod tensor;

pub use groebner::build_from_presentation;
pub use ops::{
    associated_graded, ideal_generated, is_directed, opposite, quotient_by_ideal,
    quotient_by_idempotent, radical_reduction, Quotient, Reduction,
};
pub use presentation::{parse_relation, Arrow, Path, Presentation, Quiver, Relation};
pub use structure::Primitive;
pub use tensor::{
    bimodule_tensor, is_quadratic, quadratic_report, tensor_algebra_recognition, Bimodule,
    QuadraticReport, TensorRecognition, WordSpace,
};

use crate::error::{Error, Result};
use crate::exactlin::{vecops, Field, Matrix, Scalar, Subspace};
use std::collections::BTreeMap;
use std::sync::OnceLock;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub degree: usize,
}

pub type Sparse = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, Default)]
struct Cache {
    rad0: OnceLock<Vec<Vec<Scalar>>>,
    generators: OnceLock<Vec<Vec<Scalar>>>,
    primitives: OnceLock<std::result::Result<Vec<Primitive>, Error>>,
}

#[derive(Clone, Debug)]
pub struct Algebra {
    pub name: String,
    pub field: Field,
    pub vertices: Vec<String>,
    pub basis: Vec<BasisElem>,
    mult: Vec<Vec<Sparse>>,
    /// basis index of e_λ for each vertex λ
    pub idempotents: Vec<usize>,
    /// arrows and walk-order words when built from a presentation
    pub quiver: Option<Quiver>,
    pub words: Option<Vec<Vec<usize>>>,
    cache: Cache,
}

impl Algebra {
    /// Assembles an algebra and validates shape, block structure and idempotents.
    pub fn from_structure(
        name: &str,
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        mult: Vec<Vec<Sparse>>,
        idempotents: Vec<usize>,
    ) -> Result<Algebra> {
        let n = basis.len();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("product table has the wrong shape".into()));
        }
        if idempotents.len() != vertices.len() {
            return Err(Error::Invalid(
                "one idempotent per vertex is required".into(),
            ));
        }
        for b in &basis {
            if b.source >= vertices.len() || b.target >= vertices.len() {
                return Err(Error::Invalid(format!(
                    "basis element {} has a bad endpoint",
                    b.label
                )));
            }
        }
        let mut mult = mult;
        for row in mult.iter_mut() {
            for cell in row.iter_mut() {
                cell.retain(|(_, c)| !c.is_zero());
                cell.sort_by_key(|(k, _)| *k);
            }
        }
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &mult[i][j] {
                    if c.field() != field {
                        return Err(Error::Invalid("coefficient in the wrong field".into()));
                    }
                    let (bi, bj, bk) = (&basis[i], &basis[j], &basis[*k]);
                    if bi.source != bj.target
                        || bk.source != bj.source
                        || bk.target != bi.target
                        || bk.degree != bi.degree + bj.degree
                    {
                        return Err(Error::Invalid(format!(
                            "product {}*{} leaves its block or degree",
                            bi.label, bj.label
                        )));
                    }
                }
            }
        }
        let a = Algebra {
            name: name.to_string(),
            field,
            vertices,
            basis,
            mult,
            idempotents,
            quiver: None,
            words: None,
            cache: Cache::default(),
        };
        if !a.check_idempotents() {
            return Err(Error::Invalid(
                "vertex idempotents are not orthogonal idempotents acting as units".into(),
            ));
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &Sparse {
        &self.mult[i][j]
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Sparse>> {
        &self.mult
    }

    pub fn structure_eq(&self, o: &Algebra) -> bool {
        self.field == o.field
            && self.vertices == o.vertices
            && self.basis == o.basis
            && self.mult == o.mult
            && self.idempotents == o.idempotents
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vecops::zeros(self.field, self.dim())
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        vecops::unit(self.field, self.dim(), i)
    }

    pub fn e(&self, lambda: usize) -> Vec<Scalar> {
        self.basis_vec(self.idempotents[lambda])
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = self.zero_vec();
        for &i in &self.idempotents {
            u[i] = self.field.one();
        }
        u
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.mult[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of y ↦ x·y.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in &self.mult[i][j] {
                    let v = m.get(*k, j) + &(a * c);
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    /// Matrix of y ↦ y·x.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for (j, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for i in 0..n {
                for (k, c) in &self.mult[i][j] {
                    let v = m.get(*k, i) + &(a * c);
                    m.set(*k, i, v);
                }
            }
        }
        m
    }

    pub fn max_degree(&self) -> usize {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn indices_of_degree(&self, d: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].degree == d)
            .collect()
    }

    pub fn block_indices(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source == source && self.basis[i].target == target)
            .collect()
    }

    /// dim e_μ A e_λ
    pub fn block_dim(&self, lambda: usize, mu: usize) -> usize {
        self.block_indices(lambda, mu).len()
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.max_degree() + 1];
        for b in &self.basis {
            d[b.degree] += 1;
        }
        d
    }

    /// Splits a vector into its (source, target, degree) components.
    pub fn homogeneous_parts(&self, v: &[Scalar]) -> BTreeMap<(usize, usize, usize), Vec<Scalar>> {
        let mut parts: BTreeMap<(usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = &self.basis[i];
            let p = parts
                .entry((b.source, b.target, b.degree))
                .or_insert_with(|| self.zero_vec());
            p[i] = c.clone();
        }
        parts
    }

    /// Replaces a spanning set by block components (valid for bigraded subspaces).
    pub fn homogenize(&self, vecs: &[Vec<Scalar>]) -> BTreeMap<(usize, usize, usize), Subspace> {
        let mut blocks: BTreeMap<(usize, usize, usize), Subspace> = BTreeMap::new();
        for v in vecs {
            for (k, p) in self.homogeneous_parts(v) {
                blocks
                    .entry(k)
                    .or_insert_with(|| Subspace::zero(self.field, self.dim()))
                    .insert(&p);
            }
        }
        blocks
    }

    pub fn check_associativity(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.mult[i][j].is_empty() && self.basis[i].source != self.basis[j].target {
                    continue;
                }
                let ij = self.mult_sparse_left(&self.mult[i][j]);
                for k in 0..n {
                    if self.basis[j].source != self.basis[k].target {
                        continue;
                    }
                    let left = ij(k);
                    let mut right = self.zero_vec();
                    for (m, c) in &self.mult[j][k] {
                        for (r, d) in &self.mult[i][*m] {
                            right[*r] = &right[*r] + &(c * d);
                        }
                    }
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    fn mult_sparse_left<'a>(&'a self, s: &'a Sparse) -> impl Fn(usize) -> Vec<Scalar> + 'a {
        move |k| {
            let mut out = self.zero_vec();
            for (m, c) in s {
                for (r, d) in &self.mult[*m][k] {
                    out[*r] = &out[*r] + &(c * d);
                }
            }
            out
        }
    }

    pub fn check_idempotents(&self) -> bool {
        let n = self.dim();
        for (a, &i) in self.idempotents.iter().enumerate() {
            let b = &self.basis[i];
            if b.source != a || b.target != a || b.degree != 0 {
                return false;
            }
            for j in 0..n {
                let bj = &self.basis[j];
                let left = &self.mult[i][j];
                let right = &self.mult[j][i];
                let expect_left = bj.target == a;
                let expect_right = bj.source == a;
                let unit = |s: &Sparse| s.len() == 1 && s[0].0 == j && s[0].1.is_one();
                if expect_left != unit(left) || (!expect_left && !left.is_empty()) {
                    return false;
                }
                if expect_right != unit(right) || (!expect_right && !right.is_empty()) {
                    return false;
                }
            }
        }
        true
    }

    /// First degree d ≥ 1 with A_1·A_d ≠ A_{d+1}, if any.
    pub fn generation_failure(&self) -> Option<usize> {
        let top = self.max_degree();
        let a1 = self.indices_of_degree(1);
        for d in 1..top {
            let target = self.indices_of_degree(d + 1);
            let ad = self.indices_of_degree(d);
            let mut span = Subspace::zero(self.field, self.dim());
            for &i in &a1 {
                for &j in &ad {
                    let v = self.sparse_to_vec(&self.mult[i][j]);
                    span.insert(&v);
                }
            }
            if span.dim() != target.len() {
                return Some(d + 1);
            }
        }
        if top >= 1 && self.indices_of_degree(1).is_empty() {
            return Some(1);
        }
        None
    }

    pub fn sparse_to_vec(&self, s: &Sparse) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        for (k, c) in s {
            v[*k] = c.clone();
        }
        v
    }

    /// A_0 as an algebra in its own right, with the index map into A.
    pub fn degree_zero_part(&self) -> (Algebra, Vec<usize>) {
        let idx = self.indices_of_degree(0);
        self.subalgebra_on(&idx, &format!("{}_0", self.name))
    }

    /// Subalgebra spanned by a set of basis elements closed under products.
    pub fn subalgebra_on(&self, idx: &[usize], name: &str) -> (Algebra, Vec<usize>) {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let basis: Vec<BasisElem> = idx.iter().map(|&i| self.basis[i].clone()).collect();
        let mult: Vec<Vec<Sparse>> = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .map(|&j| {
                        self.mult[i][j]
                            .iter()
                            .map(|(k, c)| (pos[k], c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let idem = self.idempotents.iter().map(|i| pos[i]).collect();
        let a = Algebra {
            name: name.to_string(),
            field: self.field,
            vertices: self.vertices.clone(),
            basis,
            mult,
            idempotents: idem,
            quiver: None,
            words: None,
            cache: Cache::default(),
        };
        (a, idx.to_vec())
    }

    /// rad A_0 as vectors in A.
    pub fn radical_degree_zero(&self) -> &Vec<Vec<Scalar>> {
        self.cache
            .rad0
            .get_or_init(|| structure::radical_of_degree_zero(self))
    }

    /// rad A = rad A_0 ⊕ J as a list of spanning vectors.
    pub fn radical(&self) -> Vec<Vec<Scalar>> {
        let mut v = self.radical_degree_zero().clone();
        for i in 0..self.dim() {
            if self.basis[i].degree > 0 {
                v.push(self.basis_vec(i));
            }
        }
        v
    }

    pub fn radical_subspace(&self) -> Subspace {
        Subspace::span(self.field, self.dim(), &self.radical())
    }

    /// Elements generating A together with the vertex idempotents.
    pub fn generators(&self) -> &Vec<Vec<Scalar>> {
        self.cache
            .generators
            .get_or_init(|| structure::algebra_generators(self))
    }

    /// Complete set of primitive orthogonal idempotents refining the vertex idempotents.
    pub fn primitives(&self) -> Result<&Vec<Primitive>> {
        match self
            .cache
            .primitives
            .get_or_init(|| structure::primitive_idempotents(self))
        {
            Ok(p) => Ok(p),
            Err(e) => Err(e.clone()),
        }
    }

    /// Whether every vertex idempotent is primitive.
    pub fn is_basic_split(&self) -> bool {
        self.primitives()
            .map(|p| p.len() == self.num_vertices())
            .unwrap_or(false)
    }

    pub fn format_vec(&self, v: &[Scalar]) -> String {
        format_combination(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c, self.basis[i].label.as_str())),
        )
    }

    pub fn set_presentation_data(&mut self, quiver: Quiver, words: Vec<Vec<usize>>) {
        self.quiver = Some(quiver);
        self.words = Some(words);
    }

    pub fn renamed(mut self, name: &str) -> Algebra {
        self.name = name.to_string();
        self
    }
}

pub fn format_combination<'a>(terms: impl Iterator<Item = (&'a Scalar, &'a str)>) -> String {
    let mut s = String::new();
    for (c, l) in terms {
        let neg = match c {
            Scalar::Rat(r) => r < &num::BigRational::from_integer(0.into()),
            Scalar::Mod(..) => false,
        };
        let abs = if neg { -c } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            s.push_str(&format!("{abs} "));
        }
        s.push_str(l);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
