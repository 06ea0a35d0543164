//! Graded modules over an algebra, given by the action of every basis element.

use crate::algebra::{opposite, Algebra, Quotient};
use crate::error::{Error, Result};
use crate::exactlin::{vecops, Field, Matrix, Scalar, Solver, Subspace};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Module {
    pub alg: Arc<Algebra>,
    /// action matrix of each algebra basis element
    pub acts: Vec<Matrix>,
    pub degrees: Vec<i32>,
    pub vertices: Vec<usize>,
    /// false for modules whose structure ignores the grading (all degrees 0)
    pub graded: bool,
}

pub type Block = (usize, i32);

impl Module {
    pub fn new(
        alg: Arc<Algebra>,
        acts: Vec<Matrix>,
        degrees: Vec<i32>,
        vertices: Vec<usize>,
    ) -> Result<Module> {
        let n = degrees.len();
        if vertices.len() != n
            || acts.len() != alg.dim()
            || acts.iter().any(|m| m.rows != n || m.cols != n)
        {
            return Err(Error::Invalid("module data has inconsistent sizes".into()));
        }
        let m = Module {
            alg,
            acts,
            degrees,
            vertices,
            graded: true,
        };
        if !m.check_idempotents() {
            return Err(Error::Invalid(
                "vertex labels do not match the idempotent actions".into(),
            ));
        }
        Ok(m)
    }

    pub fn zero(alg: &Arc<Algebra>) -> Module {
        let acts = (0..alg.dim())
            .map(|_| Matrix::zeros(alg.field, 0, 0))
            .collect();
        Module {
            alg: alg.clone(),
            acts,
            degrees: vec![],
            vertices: vec![],
            graded: true,
        }
    }

    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn block(&self, i: usize) -> Block {
        (self.vertices[i], self.degrees[i])
    }

    pub fn blocks(&self) -> BTreeMap<Block, Vec<usize>> {
        let mut m: BTreeMap<Block, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim() {
            m.entry(self.block(i)).or_default().push(i);
        }
        m
    }

    /// dim e_λ M_d for each (λ, d).
    pub fn block_dims(&self) -> BTreeMap<Block, usize> {
        self.blocks()
            .into_iter()
            .map(|(k, v)| (k, v.len()))
            .collect()
    }

    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    /// Graded dimensions listed from the lowest occurring degree.
    pub fn graded_dim_vector(&self) -> Vec<usize> {
        let g = self.graded_dims();
        let (Some(lo), Some(hi)) = (g.keys().next().copied(), g.keys().last().copied()) else {
            return vec![];
        };
        (lo..=hi).map(|d| g.get(&d).copied().unwrap_or(0)).collect()
    }

    pub fn vertex_dims(&self) -> Vec<usize> {
        let mut v = vec![0; self.alg.num_vertices()];
        for &x in &self.vertices {
            v[x] += 1;
        }
        v
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn act_elem(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, &self.acts[i]);
            }
        }
        m
    }

    pub fn unit_vec(&self, i: usize) -> Vec<Scalar> {
        vecops::unit(self.field(), self.dim(), i)
    }

    fn check_idempotents(&self) -> bool {
        let field = self.field();
        for (lam, &e) in self.alg.idempotents.iter().enumerate() {
            let m = &self.acts[e];
            for i in 0..self.dim() {
                for j in 0..self.dim() {
                    let expect = if i == j && self.vertices[i] == lam {
                        field.one()
                    } else {
                        field.zero()
                    };
                    if *m.get(i, j) != expect {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exhaustive check that the action respects the structure constants and the grading.
    pub fn check_action(&self) -> bool {
        let a = &self.alg;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let mut expect = Matrix::zeros(self.field(), self.dim(), self.dim());
                for (k, c) in a.product(i, j) {
                    expect.add_scaled(c, &self.acts[*k]);
                }
                if self.acts[i].mul(&self.acts[j]) != expect {
                    return false;
                }
            }
        }
        for (i, m) in self.acts.iter().enumerate() {
            let b = &a.basis[i];
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    if m.get(r, c).is_zero() {
                        continue;
                    }
                    if self.vertices[c] != b.source || self.vertices[r] != b.target {
                        return false;
                    }
                    if self.graded && self.degrees[r] != self.degrees[c] + b.degree as i32 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn shift(&self, s: i32) -> Module {
        let mut m = self.clone();
        for d in m.degrees.iter_mut() {
            *d += s;
        }
        m
    }

    pub fn ungraded(&self) -> Module {
        let mut m = self.clone();
        m.degrees = vec![0; m.dim()];
        m.graded = false;
        m
    }

    pub fn direct_sum(parts: &[&Module]) -> Module {
        let alg = parts[0].alg.clone();
        let n: usize = parts.iter().map(|p| p.dim()).sum();
        let field = alg.field;
        let mut acts = vec![Matrix::zeros(field, n, n); alg.dim()];
        let mut degrees = Vec::new();
        let mut vertices = Vec::new();
        let mut off = 0;
        for p in parts {
            for (g, act) in acts.iter_mut().enumerate() {
                for r in 0..p.dim() {
                    for c in 0..p.dim() {
                        let v = p.acts[g].get(r, c);
                        if !v.is_zero() {
                            act.set(off + r, off + c, v.clone());
                        }
                    }
                }
            }
            degrees.extend_from_slice(&p.degrees);
            vertices.extend_from_slice(&p.vertices);
            off += p.dim();
        }
        Module {
            alg,
            acts,
            degrees,
            vertices,
            graded: parts.iter().all(|p| p.graded),
        }
    }

    /// Splits vectors into block components.
    pub fn homogenize(&self, vecs: &[Vec<Scalar>]) -> BTreeMap<Block, Subspace> {
        let mut out: BTreeMap<Block, Subspace> = BTreeMap::new();
        for v in vecs {
            let mut parts: BTreeMap<Block, Vec<Scalar>> = BTreeMap::new();
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    parts
                        .entry(self.block(i))
                        .or_insert_with(|| vecops::zeros(self.field(), self.dim()))[i] = c.clone();
                }
            }
            for (k, p) in parts {
                out.entry(k)
                    .or_insert_with(|| Subspace::zero(self.field(), self.dim()))
                    .insert(&p);
            }
        }
        out
    }

    /// The submodule A·gens.
    pub fn generated(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let mut s = Subspace::zero(self.field(), self.dim());
        for g in gens {
            for act in &self.acts {
                s.insert(&act.mul_vec(g));
            }
        }
        s
    }

    /// Submodule with a block-homogeneous basis and its inclusion matrix.
    pub fn submodule(&self, sub: &Subspace) -> (Module, Matrix) {
        let field = self.field();
        let blocks = self.homogenize(sub.basis());
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut degrees = Vec::new();
        let mut vertices = Vec::new();
        for ((v, d), s) in &blocks {
            for b in s.basis() {
                basis.push(b.clone());
                degrees.push(*d);
                vertices.push(*v);
            }
        }
        let k = basis.len();
        let incl = Matrix::from_cols(field, self.dim(), &basis);
        let solver = Solver::new(&incl);
        let acts = self
            .acts
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|b| {
                        solver
                            .solve(&a.mul_vec(b))
                            .expect("subspace is a submodule")
                    })
                    .collect();
                Matrix::from_cols(field, k, &cols)
            })
            .collect();
        (
            Module {
                alg: self.alg.clone(),
                acts,
                degrees,
                vertices,
                graded: self.graded,
            },
            incl,
        )
    }

    /// Quotient by a submodule, with the projection matrix.
    pub fn quotient(&self, sub: &Subspace) -> (Module, Matrix) {
        let field = self.field();
        let sblocks = self.homogenize(sub.basis());
        let mut kept = Vec::new();
        let mut solvers: BTreeMap<Block, (Vec<usize>, Solver)> = BTreeMap::new();
        for (key, idx) in self.blocks() {
            let mut s = sblocks
                .get(&key)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(field, self.dim()));
            let base = s.basis().to_vec();
            let mut chosen = Vec::new();
            for &i in &idx {
                if s.insert(&self.unit_vec(i)) {
                    chosen.push(i);
                }
            }
            let mut cols: Vec<Vec<Scalar>> = chosen.iter().map(|&i| self.unit_vec(i)).collect();
            cols.extend(base);
            solvers.insert(
                key,
                (
                    chosen.clone(),
                    Solver::new(&Matrix::from_cols(field, self.dim(), &cols)),
                ),
            );
            kept.extend(chosen);
        }
        kept.sort();
        let pos: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut proj = Matrix::zeros(field, kept.len(), self.dim());
        for i in 0..self.dim() {
            let (chosen, solver) = &solvers[&self.block(i)];
            let z = solver.solve(&self.unit_vec(i)).unwrap();
            for (k, &c) in chosen.iter().enumerate() {
                proj.set(pos[&c], i, z[k].clone());
            }
        }
        let acts = self
            .acts
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Scalar>> =
                    kept.iter().map(|&i| proj.mul_vec(&a.col(i))).collect();
                Matrix::from_cols(field, kept.len(), &cols)
            })
            .collect();
        let degrees = kept.iter().map(|&i| self.degrees[i]).collect();
        let vertices = kept.iter().map(|&i| self.vertices[i]).collect();
        (
            Module {
                alg: self.alg.clone(),
                acts,
                degrees,
                vertices,
                graded: self.graded,
            },
            proj,
        )
    }

    /// rad M = (rad A)·M.
    pub fn radical_subspace(&self) -> Subspace {
        let mut s = Subspace::zero(self.field(), self.dim());
        for r in self.alg.radical() {
            let m = self.act_elem(&r);
            for c in m.columns() {
                s.insert(&c);
            }
        }
        s
    }

    pub fn radical(&self) -> Module {
        self.submodule(&self.radical_subspace()).0
    }

    pub fn top(&self) -> Module {
        self.quotient(&self.radical_subspace()).0
    }

    /// J·M for J the positive-degree part of A.
    pub fn j_subspace(&self) -> Subspace {
        let mut s = Subspace::zero(self.field(), self.dim());
        for (i, b) in self.alg.basis.iter().enumerate() {
            if b.degree > 0 {
                for c in self.acts[i].columns() {
                    s.insert(&c);
                }
            }
        }
        s
    }

    /// Basis vectors of degree s.
    pub fn degree_part(&self, s: i32) -> Vec<Vec<Scalar>> {
        (0..self.dim())
            .filter(|&i| self.degrees[i] == s)
            .map(|i| self.unit_vec(i))
            .collect()
    }

    /// M = A·M_s.
    pub fn is_generated_in_degree(&self, s: i32) -> bool {
        self.generated(&self.degree_part(s)).dim() == self.dim()
    }

    /// tr_{P_μ}(M) = A·e_μM.
    pub fn trace_subspace(&self, mu: usize) -> Subspace {
        let gens: Vec<Vec<Scalar>> = (0..self.dim())
            .filter(|&i| self.vertices[i] == mu)
            .map(|i| self.unit_vec(i))
            .collect();
        self.generated(&gens)
    }

    pub fn trace(&self, mu: usize) -> Module {
        self.submodule(&self.trace_subspace(mu)).0
    }

    /// Restriction of scalars to the degree-zero subalgebra.
    pub fn restrict_to_degree_zero(&self) -> Module {
        let (a0, idx) = self.alg.degree_zero_part();
        let acts = idx.iter().map(|&i| self.acts[i].clone()).collect();
        Module {
            alg: Arc::new(a0),
            acts,
            degrees: self.degrees.clone(),
            vertices: self.vertices.clone(),
            graded: self.graded,
        }
    }

    /// Same data over another algebra with identical structure constants.
    pub fn over(&self, alg: &Arc<Algebra>) -> Module {
        Module {
            alg: alg.clone(),
            ..self.clone()
        }
    }
}

/// A summand Aε[shift] of a projective module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub idem: Vec<Scalar>,
    pub vertex: usize,
    /// index into the primitive list, when ε is primitive
    pub prim: Option<usize>,
    pub shift: i32,
}

/// ⊕ Aε_k[s_k] with the A-element behind every basis vector.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    pub summands: Vec<Summand>,
    pub module: Module,
    pub offsets: Vec<usize>,
    /// A-vector of each basis vector
    pub elems: Vec<Vec<Scalar>>,
    pub owner: Vec<usize>,
    solvers: Vec<Solver>,
}

fn summand_basis(alg: &Algebra, s: &Summand) -> Vec<Vec<Scalar>> {
    if alg
        .idempotents
        .iter()
        .position(|&i| alg.basis_vec(i) == s.idem)
        .is_some()
    {
        return (0..alg.dim())
            .filter(|&i| alg.basis[i].source == s.vertex)
            .map(|i| alg.basis_vec(i))
            .collect();
    }
    let mut blocks: BTreeMap<(usize, usize), Subspace> = BTreeMap::new();
    for i in 0..alg.dim() {
        let b = &alg.basis[i];
        if b.source != s.vertex {
            continue;
        }
        let v = alg.mul(&alg.basis_vec(i), &s.idem);
        blocks
            .entry((b.target, b.degree))
            .or_insert_with(|| Subspace::zero(alg.field, alg.dim()))
            .insert(&v);
    }
    blocks
        .into_values()
        .flat_map(|s| s.basis().to_vec())
        .collect()
}

impl ProjectiveSum {
    pub fn new(alg: &Arc<Algebra>, summands: Vec<Summand>, graded: bool) -> ProjectiveSum {
        let field = alg.field;
        let mut elems = Vec::new();
        let mut owner = Vec::new();
        let mut offsets = Vec::new();
        let mut degrees = Vec::new();
        let mut vertices = Vec::new();
        let mut solvers = Vec::new();
        for (k, s) in summands.iter().enumerate() {
            offsets.push(elems.len());
            let basis = summand_basis(alg, s);
            for v in &basis {
                let i = v
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("nonzero basis vector");
                let b = &alg.basis[i];
                degrees.push(if graded { b.degree as i32 + s.shift } else { 0 });
                vertices.push(b.target);
                owner.push(k);
            }
            solvers.push(Solver::new(&Matrix::from_cols(field, alg.dim(), &basis)));
            elems.extend(basis);
        }
        offsets.push(elems.len());
        let n = elems.len();
        let acts = (0..alg.dim())
            .map(|g| {
                let mut m = Matrix::zeros(field, n, n);
                let bg = alg.basis_vec(g);
                for c in 0..n {
                    let k = owner[c];
                    let prod = alg.mul(&bg, &elems[c]);
                    if vecops::is_zero(&prod) {
                        continue;
                    }
                    let z = solvers[k].solve(&prod).expect("Aε is a left ideal");
                    for (r, val) in z.into_iter().enumerate() {
                        if !val.is_zero() {
                            m.set(offsets[k] + r, c, val);
                        }
                    }
                }
                m
            })
            .collect();
        let module = Module {
            alg: alg.clone(),
            acts,
            degrees,
            vertices,
            graded,
        };
        ProjectiveSum {
            summands,
            module,
            offsets,
            elems,
            owner,
            solvers,
        }
    }

    pub fn vertex_projective(alg: &Arc<Algebra>, lambda: usize, shift: i32) -> ProjectiveSum {
        let prim = alg.primitives().ok().and_then(|p| {
            p.iter()
                .position(|q| q.vertex == lambda && q.element == alg.e(lambda))
        });
        ProjectiveSum::new(
            alg,
            vec![Summand {
                idem: alg.e(lambda),
                vertex: lambda,
                prim,
                shift,
            }],
            true,
        )
    }

    /// Coordinates in this module of an element a ∈ Aε_k placed in summand k.
    pub fn embed(&self, k: usize, a: &[Scalar]) -> Vec<Scalar> {
        let mut v = vecops::zeros(self.module.field(), self.module.dim());
        let z = self.solvers[k]
            .solve(a)
            .expect("element lies in the summand");
        for (r, val) in z.into_iter().enumerate() {
            v[self.offsets[k] + r] = val;
        }
        v
    }

    /// The generator ε_k of summand k.
    pub fn generator(&self, k: usize) -> Vec<Scalar> {
        self.embed(k, &self.summands[k].idem)
    }

    /// Matrix of the homomorphism sending the generator of summand k to images[k] ∈ ε_k X.
    pub fn hom_to(&self, x: &Module, images: &[Vec<Scalar>]) -> Matrix {
        let field = x.field();
        let cols: Vec<Vec<Scalar>> = (0..self.module.dim())
            .map(|c| {
                let k = self.owner[c];
                if vecops::is_zero(&images[k]) {
                    return vecops::zeros(field, x.dim());
                }
                x.act_elem(&self.elems[c]).mul_vec(&images[k])
            })
            .collect();
        Matrix::from_cols(field, x.dim(), &cols)
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

/// The projective Ae_λ[shift].
pub fn projective(alg: &Arc<Algebra>, lambda: usize, shift: i32) -> Module {
    ProjectiveSum::vertex_projective(alg, lambda, shift).module
}

/// The left regular module.
pub fn regular(alg: &Arc<Algebra>) -> Module {
    let parts: Vec<Module> = (0..alg.num_vertices())
        .map(|l| projective(alg, l, 0))
        .collect();
    Module::direct_sum(&parts.iter().collect::<Vec<_>>())
}

/// S_λ[shift] = top P_λ[shift].
pub fn simple(alg: &Arc<Algebra>, lambda: usize, shift: i32) -> Module {
    projective(alg, lambda, shift).top()
}

/// A_0 = A/J as a graded A-module.
pub fn degree_zero_module(alg: &Arc<Algebra>) -> Module {
    let r = regular(alg);
    let j = r.j_subspace();
    r.quotient(&j).0
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub proj: ProjectiveSum,
    /// generator images n_k ∈ ε_k M
    pub gens: Vec<Vec<Scalar>>,
    /// M.dim × P.dim
    pub map: Matrix,
}

pub fn projective_cover(m: &Module) -> Result<Cover> {
    let alg = m.alg.clone();
    let prims = alg.primitives()?;
    let mut acc = m.radical_subspace();
    let mut summands = Vec::new();
    let mut gens = Vec::new();
    let blocks = m.blocks();
    for (pi, p) in prims.iter().enumerate() {
        let eps = m.act_elem(&p.element);
        for ((v, d), idx) in &blocks {
            if *v != p.vertex {
                continue;
            }
            for &i in idx {
                let cand = eps.col(i);
                if acc.insert(&cand) {
                    summands.push(Summand {
                        idem: p.element.clone(),
                        vertex: p.vertex,
                        prim: Some(pi),
                        shift: *d,
                    });
                    gens.push(cand);
                }
            }
        }
    }
    let proj = ProjectiveSum::new(&alg, summands, m.graded);
    let map = proj.hom_to(m, &gens);
    Ok(Cover { proj, gens, map })
}

/// Kernel of a block-preserving map as a submodule of its source.
pub fn kernel_of(src: &Module, f: &Matrix) -> (Module, Matrix) {
    let ker = f.kernel_basis();
    let s = Subspace::span(src.field(), src.dim(), &ker);
    src.submodule(&s)
}

pub fn syzygy(m: &Module) -> Result<Module> {
    let c = projective_cover(m)?;
    Ok(kernel_of(&c.proj.module, &c.map).0)
}

pub fn syzygy_tower(m: &Module, n: usize) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    let mut cur = m.clone();
    for _ in 0..n {
        cur = syzygy(&cur)?;
        out.push(cur.clone());
        if cur.is_zero() {
            break;
        }
    }
    Ok(out)
}

pub fn is_projective(m: &Module) -> Result<bool> {
    Ok(projective_cover(m)?.proj.module.dim() == m.dim())
}

/// Cover multiplicities when M is projective with every summand at λ.
pub fn is_iso_to_projective_power(m: &Module, lambda: usize) -> Result<Option<usize>> {
    let c = projective_cover(m)?;
    if c.proj.module.dim() != m.dim() || c.proj.summands.iter().any(|s| s.vertex != lambda) {
        return Ok(None);
    }
    Ok(Some(c.proj.len()))
}

/// Multiset of vertex projectives when M is a sum of vertex projectives.
pub fn projective_decomposition(m: &Module) -> Result<Option<BTreeMap<usize, usize>>> {
    let c = projective_cover(m)?;
    if c.proj.module.dim() != m.dim() {
        return Ok(None);
    }
    let mut out = BTreeMap::new();
    for s in &c.proj.summands {
        *out.entry(s.vertex).or_insert(0) += 1;
    }
    Ok(Some(out))
}

/// Basis of Hom_A(M, N) as N.dim × M.dim matrices; `graded_only` restricts to degree-preserving maps.
pub fn hom_basis(m: &Module, n: &Module, graded_only: bool) -> Vec<Matrix> {
    let field = m.field();
    let mut shifts: Vec<i32> = Vec::new();
    if graded_only {
        shifts.push(0);
    } else {
        for &a in &m.degrees {
            for &b in &n.degrees {
                if !shifts.contains(&(b - a)) {
                    shifts.push(b - a);
                }
            }
        }
        shifts.sort();
    }
    let gens = m.alg.generators().clone();
    let gm: Vec<Matrix> = gens.iter().map(|g| m.act_elem(g)).collect();
    let gn: Vec<Matrix> = gens.iter().map(|g| n.act_elem(g)).collect();
    let mut out = Vec::new();
    for s in shifts {
        // unknowns f[r][c] with matching vertex and degree shift s
        let mut unknowns: Vec<(usize, usize)> = Vec::new();
        let mut uidx: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for c in 0..m.dim() {
            for r in 0..n.dim() {
                if m.vertices[c] == n.vertices[r] && n.degrees[r] == m.degrees[c] + s {
                    uidx.insert((r, c), unknowns.len());
                    unknowns.push((r, c));
                }
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (a, b) in gn.iter().zip(&gm) {
            // (a f − f b)[r][c] = Σ_k a[r][k] f[k][c] − Σ_k f[r][k] b[k][c]
            let mut eqs: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
            for (&(k, c), &u) in &uidx {
                for r in 0..n.dim() {
                    let v = a.get(r, k);
                    if !v.is_zero() {
                        eqs.entry((r, c)).or_default().push((u, v.clone()));
                    }
                }
            }
            for (&(r, k), &u) in &uidx {
                for c in 0..m.dim() {
                    let v = b.get(k, c);
                    if !v.is_zero() {
                        eqs.entry((r, c)).or_default().push((u, -v));
                    }
                }
            }
            for (_, terms) in eqs {
                let mut row = vecops::zeros(field, unknowns.len());
                for (u, v) in terms {
                    row[u] = &row[u] + &v;
                }
                if !vecops::is_zero(&row) {
                    rows.push(row);
                }
            }
        }
        let sol = if rows.is_empty() {
            (0..unknowns.len())
                .map(|i| vecops::unit(field, unknowns.len(), i))
                .collect()
        } else {
            Matrix::from_rows(field, unknowns.len(), &rows).kernel_basis()
        };
        for v in sol {
            let mut f = Matrix::zeros(field, n.dim(), m.dim());
            for (u, &(r, c)) in unknowns.iter().enumerate() {
                if !v[u].is_zero() {
                    f.set(r, c, v[u].clone());
                }
            }
            out.push(f);
        }
    }
    out
}

/// Deterministic sequence of coefficient vectors for trying linear combinations.
fn combinations(field: Field, n: usize, limit: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if let Field::Prime(p) = field {
        let total = (p as u128).checked_pow(n as u32);
        if let Some(t) = total.filter(|&t| t <= limit as u128) {
            for code in 1..t {
                let mut c = code;
                let mut v = Vec::with_capacity(n);
                for _ in 0..n {
                    v.push(field.from_i64((c % p as u128) as i64));
                    c /= p as u128;
                }
                out.push(v);
            }
            return out;
        }
    }
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for i in 0..n {
        out.push(vecops::unit(field, n, i));
    }
    out.push(vec![field.one(); n]);
    for _ in 0..200 {
        let v = (0..n)
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                field.from_i64(((state >> 33) % 97) as i64 + 1)
            })
            .collect();
        out.push(v);
    }
    out
}

/// An isomorphism M → N found among combinations of homomorphisms. A `None` answer is
/// conclusive only when the dimension tables differ or the search was exhaustive.
pub fn find_isomorphism(m: &Module, n: &Module, graded: bool) -> Option<Matrix> {
    if m.dim() != n.dim() {
        return None;
    }
    if graded && m.block_dims() != n.block_dims() {
        return None;
    }
    if m.vertex_dims() != n.vertex_dims() {
        return None;
    }
    if m.dim() == 0 {
        return Some(Matrix::zeros(m.field(), 0, 0));
    }
    let homs = hom_basis(m, n, graded);
    for c in combinations(m.field(), homs.len(), 4096) {
        let mut f = Matrix::zeros(m.field(), n.dim(), m.dim());
        for (ci, h) in c.iter().zip(&homs) {
            if !ci.is_zero() {
                f.add_scaled(ci, h);
            }
        }
        if f.rank() == m.dim() {
            return Some(f);
        }
    }
    None
}

pub fn is_isomorphic(m: &Module, n: &Module) -> bool {
    find_isomorphism(m, n, m.graded && n.graded).is_some()
}

/// D(M) = Hom_k(M, k) over the opposite algebra, degrees negated and shifted to start at the
/// negated maximum of M shifted back to its minimum.
pub fn dual_module(m: &Module) -> Module {
    let op = Arc::new(opposite(&m.alg));
    let acts = m.acts.iter().map(|a| a.transpose()).collect();
    let (lo, hi) = (
        m.degrees.iter().min().copied().unwrap_or(0),
        m.degrees.iter().max().copied().unwrap_or(0),
    );
    let degrees = m.degrees.iter().map(|d| lo + hi - d).collect();
    Module {
        alg: op,
        acts,
        degrees,
        vertices: m.vertices.clone(),
        graded: m.graded,
    }
}

/// A_0 is self-injective: D(A_0 as a right module) is projective.
pub fn is_self_injective(a0: &Algebra) -> Result<bool> {
    let op = Arc::new(opposite(a0));
    let right_regular = regular(&op);
    let d = dual_module(&right_regular);
    is_projective(&d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingStatus {
    SatisfiedSemisimple,
    SatisfiedSelfInjective,
    SatisfiedLocalSum,
    Unknown,
}

/// Sufficient conditions for injections between projective A_0-modules to split.
pub fn splitting_property_status(a0: &Algebra) -> SplittingStatus {
    let rad = a0.radical();
    if Subspace::span(a0.field, a0.dim(), &rad).dim() == 0 {
        return SplittingStatus::SatisfiedSemisimple;
    }
    let off_diag = a0.basis.iter().any(|b| b.source != b.target);
    if !off_diag {
        if let Ok(p) = a0.primitives() {
            if p.len() == a0.num_vertices() {
                return SplittingStatus::SatisfiedLocalSum;
            }
        }
    }
    if is_self_injective(a0).unwrap_or(false) {
        return SplittingStatus::SatisfiedSelfInjective;
    }
    SplittingStatus::Unknown
}

/// ℜM = (A𝔯A)·M.
pub fn reduction_submodule(m: &Module, red: &Quotient) -> Subspace {
    let mut s = Subspace::zero(m.field(), m.dim());
    for x in red.ideal.basis() {
        for c in m.act_elem(x).columns() {
            s.insert(&c);
        }
    }
    s
}

/// M̄ = M/ℜM as a module over Ā.
pub fn reduce_module(m: &Module, red: &Quotient) -> Module {
    let sub = reduction_submodule(m, red);
    let (q, _) = m.quotient(&sub);
    let alg = Arc::new(red.algebra.clone());
    let acts = red.kept.iter().map(|&i| q.acts[i].clone()).collect();
    let vertices = q
        .vertices
        .iter()
        .map(|&v| red.vertex_map[v].expect("ℜM contains e_λM for killed λ"))
        .collect();
    Module {
        alg,
        acts,
        degrees: q.degrees,
        vertices,
        graded: q.graded,
    }
}

/// Builds a module from arrow matrices on a presentation-built algebra.
pub fn module_from_arrow_actions(
    alg: &Arc<Algebra>,
    vertices: Vec<usize>,
    degrees: Vec<i32>,
    arrows: &BTreeMap<String, Matrix>,
) -> Result<Module> {
    let field = alg.field;
    let n = vertices.len();
    let (Some(q), Some(words)) = (&alg.quiver, &alg.words) else {
        return Err(Error::Invalid(
            "arrow actions need an algebra built from a quiver".into(),
        ));
    };
    let mut arrow_mats = Vec::new();
    for a in &q.arrows {
        let m = arrows
            .get(&a.name)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(field, n, n));
        if m.rows != n || m.cols != n {
            return Err(Error::Invalid(format!(
                "action of {} has the wrong size",
                a.name
            )));
        }
        arrow_mats.push(m);
    }
    let acts: Vec<Matrix> = words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if w.is_empty() {
                let v = alg.basis[i].source;
                let mut m = Matrix::zeros(field, n, n);
                for (r, &x) in vertices.iter().enumerate() {
                    if x == v {
                        m.set(r, r, field.one());
                    }
                }
                m
            } else {
                let mut m = arrow_mats[w[0]].clone();
                for &a in &w[1..] {
                    m = arrow_mats[a].mul(&m);
                }
                m
            }
        })
        .collect();
    let module = Module::new(alg.clone(), acts, degrees, vertices)?;
    if !module.check_action() {
        return Err(Error::Invalid(
            "arrow actions do not satisfy the relations".into(),
        ));
    }
    Ok(module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_presentation, Presentation, Quiver};

    fn a2() -> Arc<Algebra> {
        let q = Quiver::new(&["x", "y"]).with_arrow("a", "x", "y", 1);
        Arc::new(
            build_from_presentation(&Presentation::new("A2", Field::Rationals, q), 10).unwrap(),
        )
    }

    #[test]
    fn projectives_and_simples() {
        let a = a2();
        let px = projective(&a, 0, 0);
        assert_eq!(px.dim(), 2);
        assert!(px.check_action());
        assert_eq!(simple(&a, 0, 0).dim(), 1);
        assert_eq!(px.top().dim(), 1);
        assert!(is_projective(&px).unwrap());
        assert!(!is_projective(&simple(&a, 0, 0)).unwrap());
        assert_eq!(syzygy(&simple(&a, 0, 0)).unwrap().dim(), 1);
    }

    #[test]
    fn hom_counts() {
        let a = a2();
        let px = projective(&a, 0, 0);
        let py = projective(&a, 1, 1);
        assert_eq!(hom_basis(&py, &px, true).len(), 1);
        assert_eq!(hom_basis(&px, &py, false).len(), 0);
        assert_eq!(
            hom_basis(&simple(&a, 0, 0), &simple(&a, 1, 0), false).len(),
            0
        );
    }

    #[test]
    fn double_dual() {
        let a = a2();
        let px = projective(&a, 0, 0);
        let dd = dual_module(&dual_module(&px));
        assert_eq!(dd.degrees, px.degrees);
        assert_eq!(dd.acts, px.acts);
    }

    #[test]
    fn self_injectivity() {
        let a = a2();
        assert!(!is_self_injective(&a).unwrap());
    }
}
