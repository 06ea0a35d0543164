//! Opposite algebras, quotients by graded ideals, radical reduction and the J-adic associated graded.

use super::{Algebra, BasisElem, Sparse};
use crate::error::{Error, Result};
use crate::exactlin::{vecops, Matrix, Scalar, Solver, Subspace};
use std::collections::BTreeMap;

pub fn opposite(a: &Algebra) -> Algebra {
    let n = a.dim();
    let basis: Vec<BasisElem> = a
        .basis
        .iter()
        .map(|b| BasisElem {
            label: b.label.clone(),
            source: b.target,
            target: b.source,
            degree: b.degree,
        })
        .collect();
    let mult: Vec<Vec<Sparse>> = (0..n)
        .map(|i| (0..n).map(|j| a.product(j, i).clone()).collect())
        .collect();
    Algebra::from_structure(
        &format!("{}_op", a.name),
        a.field,
        a.vertices.clone(),
        basis,
        mult,
        a.idempotents.clone(),
    )
    .expect("opposite of a valid algebra is valid")
}

/// A quotient A/I with the data needed to push elements and modules down.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    pub ideal: Subspace,
    /// dim Ā × dim A
    pub projection: Matrix,
    /// A-basis indices whose residues form the basis of Ā
    pub kept: Vec<usize>,
    /// old vertex → new vertex
    pub vertex_map: Vec<Option<usize>>,
}

pub type Reduction = Quotient;

impl Quotient {
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.mul_vec(v)
    }
}

/// Two-sided ideal generated by `gens`, as a subspace of A.
pub fn ideal_generated(a: &Algebra, gens: &[Vec<Scalar>]) -> Subspace {
    let mut s = Subspace::zero(a.field, a.dim());
    for g in gens {
        for i in 0..a.dim() {
            let ig = a.mul(&a.basis_vec(i), g);
            if vecops::is_zero(&ig) {
                continue;
            }
            for j in 0..a.dim() {
                s.insert(&a.mul(&ig, &a.basis_vec(j)));
            }
        }
    }
    s
}

/// Quotient of A by the ideal generated by `gens`; the ideal must be bigraded.
pub fn quotient_by_ideal(a: &Algebra, gens: &[Vec<Scalar>], name: &str) -> Result<Quotient> {
    let ideal = ideal_generated(a, gens);
    let blocks = a.homogenize(ideal.basis());
    for s in blocks.values() {
        for v in s.basis() {
            if !ideal.contains(v) {
                return Err(Error::Invalid("ideal is not graded".into()));
            }
        }
    }
    quotient_by_subspace(a, ideal, blocks, name)
}

fn quotient_by_subspace(
    a: &Algebra,
    ideal: Subspace,
    blocks: BTreeMap<(usize, usize, usize), Subspace>,
    name: &str,
) -> Result<Quotient> {
    let n = a.dim();
    let field = a.field;
    let mut keyed: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let b = &a.basis[i];
        keyed
            .entry((b.source, b.target, b.degree))
            .or_default()
            .push(i);
    }
    let mut kept = Vec::new();
    let mut solvers: BTreeMap<(usize, usize, usize), (Vec<usize>, Solver)> = BTreeMap::new();
    for (key, idx) in &keyed {
        let mut s = blocks
            .get(key)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(field, n));
        let base: Vec<Vec<Scalar>> = s.basis().to_vec();
        let mut chosen = Vec::new();
        for &i in idx {
            if s.insert(&a.basis_vec(i)) {
                chosen.push(i);
            }
        }
        let mut cols: Vec<Vec<Scalar>> = chosen.iter().map(|&i| a.basis_vec(i)).collect();
        cols.extend(base);
        solvers.insert(
            *key,
            (
                chosen.clone(),
                Solver::new(&Matrix::from_cols(field, n, &cols)),
            ),
        );
        kept.extend(chosen);
    }
    kept.sort();
    let pos: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut projection = Matrix::zeros(field, kept.len(), n);
    for i in 0..n {
        let b = &a.basis[i];
        let (chosen, solver) = &solvers[&(b.source, b.target, b.degree)];
        let z = solver
            .solve(&a.basis_vec(i))
            .expect("block basis spans its block");
        for (k, &c) in chosen.iter().enumerate() {
            projection.set(pos[&c], i, z[k].clone());
        }
    }
    // surviving vertices
    let mut vertex_map = vec![None; a.num_vertices()];
    let mut vertices = Vec::new();
    for v in 0..a.num_vertices() {
        if !ideal.contains(&a.e(v)) {
            vertex_map[v] = Some(vertices.len());
            vertices.push(a.vertices[v].clone());
        }
    }
    let basis: Vec<BasisElem> = kept
        .iter()
        .map(|&i| {
            let b = &a.basis[i];
            BasisElem {
                label: b.label.clone(),
                source: vertex_map[b.source]
                    .expect("kept element lives between surviving vertices"),
                target: vertex_map[b.target]
                    .expect("kept element lives between surviving vertices"),
                degree: b.degree,
            }
        })
        .collect();
    let m = kept.len();
    let mut mult: Vec<Vec<Sparse>> = vec![vec![Vec::new(); m]; m];
    for (x, &i) in kept.iter().enumerate() {
        for (y, &j) in kept.iter().enumerate() {
            let prod = a.sparse_to_vec(a.product(i, j));
            let img = projection.mul_vec(&prod);
            mult[x][y] = img
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    let idempotents = (0..a.num_vertices())
        .filter(|&v| vertex_map[v].is_some())
        .map(|v| pos[&a.idempotents[v]])
        .collect();
    let algebra = Algebra::from_structure(name, field, vertices, basis, mult, idempotents)?;
    Ok(Quotient {
        algebra,
        ideal,
        projection,
        kept,
        vertex_map,
    })
}

/// A/Ae_λA.
pub fn quotient_by_idempotent(a: &Algebra, lambda: usize) -> Quotient {
    quotient_by_ideal(
        a,
        &[a.e(lambda)],
        &format!("{}/{}", a.name, a.vertices[lambda]),
    )
    .expect("idempotent ideals are graded")
}

/// Ā = A/A𝔯A with 𝔯 = rad A_0.
pub fn radical_reduction(a: &Algebra) -> Reduction {
    let gens = a.radical_degree_zero().clone();
    quotient_by_ideal(a, &gens, &format!("{}_red", a.name)).expect("the radical of A_0 is graded")
}

/// Linear extension of e_μAe_λ ≠ 0 ⇒ λ ≤ μ, least first; None on a cycle.
pub fn is_directed(a: &Algebra) -> Option<Vec<usize>> {
    let nv = a.num_vertices();
    let mut edges = vec![vec![false; nv]; nv];
    for b in &a.basis {
        if b.source != b.target {
            edges[b.source][b.target] = true;
        }
    }
    let mut indeg: Vec<usize> = (0..nv)
        .map(|v| (0..nv).filter(|&u| edges[u][v]).count())
        .collect();
    let mut done = vec![false; nv];
    let mut order = Vec::new();
    while order.len() < nv {
        let next = (0..nv).find(|&v| !done[v] && indeg[v] == 0)?;
        done[next] = true;
        order.push(next);
        for w in 0..nv {
            if edges[next][w] {
                indeg[w] -= 1;
            }
        }
    }
    Some(order)
}

/// Powers J^0 = A, J^1 = off-diagonal part, J^{i+1} = J·J^i as bigraded blocks.
fn j_powers(a: &Algebra) -> Vec<Subspace> {
    let n = a.dim();
    let j1: Vec<Vec<Scalar>> = (0..n)
        .filter(|&i| a.basis[i].source != a.basis[i].target)
        .map(|i| a.basis_vec(i))
        .collect();
    let mut powers = vec![Subspace::full(a.field, n), Subspace::span(a.field, n, &j1)];
    loop {
        let last = powers.last().unwrap();
        if last.dim() == 0 {
            break;
        }
        let mut next = Subspace::zero(a.field, n);
        for x in &j1 {
            for y in last.basis() {
                next.insert(&a.mul(x, y));
            }
        }
        powers.push(next);
    }
    powers
}

/// Ǎ = ⊕ J^i/J^{i+1} for the off-diagonal ideal J of a directed algebra.
pub fn associated_graded(a: &Algebra) -> Result<Algebra> {
    if is_directed(a).is_none() {
        return Err(Error::NotDirected);
    }
    let n = a.dim();
    let field = a.field;
    let powers = j_powers(a);
    // reps[level] = (vectors, block key)
    let mut reps: Vec<(usize, Vec<Scalar>, BasisElem)> = Vec::new();
    let mut solvers: BTreeMap<(usize, usize, usize), (Vec<usize>, Solver)> = BTreeMap::new();
    for level in 0..powers.len() - 1 {
        let cur = a.homogenize(powers[level].basis());
        let nxt = a.homogenize(powers[level + 1].basis());
        let mut blocks: BTreeMap<(usize, usize), (Subspace, Subspace)> = BTreeMap::new();
        for ((s, t, _), sp) in &cur {
            let e = blocks
                .entry((*s, *t))
                .or_insert_with(|| (Subspace::zero(field, n), Subspace::zero(field, n)));
            e.0 = e.0.sum(sp);
        }
        for ((s, t, _), sp) in &nxt {
            let e = blocks
                .entry((*s, *t))
                .or_insert_with(|| (Subspace::zero(field, n), Subspace::zero(field, n)));
            e.1 = e.1.sum(sp);
        }
        let mut counter = 0;
        for ((s, t), (cur_s, nxt_s)) in blocks {
            let mut acc = nxt_s.clone();
            let mut chosen: Vec<usize> = Vec::new();
            // prefer basis elements of A
            for i in 0..n {
                let b = &a.basis[i];
                if b.source != s || b.target != t {
                    continue;
                }
                let v = a.basis_vec(i);
                if cur_s.contains(&v) && acc.insert(&v) {
                    chosen.push(reps.len());
                    reps.push((
                        level,
                        v,
                        BasisElem {
                            label: b.label.clone(),
                            source: s,
                            target: t,
                            degree: level,
                        },
                    ));
                }
            }
            for v in cur_s.basis() {
                if acc.insert(v) {
                    chosen.push(reps.len());
                    reps.push((
                        level,
                        v.clone(),
                        BasisElem {
                            label: format!("j{level}_{counter}"),
                            source: s,
                            target: t,
                            degree: level,
                        },
                    ));
                    counter += 1;
                }
            }
            let mut cols: Vec<Vec<Scalar>> = chosen.iter().map(|&k| reps[k].1.clone()).collect();
            cols.extend(nxt_s.basis().iter().cloned());
            solvers.insert(
                (level, s, t),
                (chosen, Solver::new(&Matrix::from_cols(field, n, &cols))),
            );
        }
    }
    let m = reps.len();
    if m != n {
        return Err(Error::Invalid(
            "filtration does not exhaust the algebra".into(),
        ));
    }
    let mut mult: Vec<Vec<Sparse>> = vec![vec![Vec::new(); m]; m];
    for x in 0..m {
        for y in 0..m {
            let (lx, vx, bx) = &reps[x];
            let (ly, vy, by) = &reps[y];
            if bx.source != by.target {
                continue;
            }
            let level = lx + ly;
            if level + 1 >= powers.len() {
                continue;
            }
            let prod = a.mul(vx, vy);
            let Some((chosen, solver)) = solvers.get(&(level, by.source, bx.target)) else {
                continue;
            };
            let z = solver
                .solve(&prod)
                .expect("product lies in the filtration level");
            for (k, &r) in chosen.iter().enumerate() {
                if !z[k].is_zero() {
                    mult[x][y].push((r, z[k].clone()));
                }
            }
        }
    }
    let idempotents = (0..a.num_vertices())
        .map(|v| {
            reps.iter()
                .position(|(_, vec, _)| *vec == a.e(v))
                .expect("vertex idempotents are representatives")
        })
        .collect();
    Algebra::from_structure(
        &format!("{}_gr", a.name),
        field,
        a.vertices.clone(),
        reps.into_iter().map(|r| r.2).collect(),
        mult,
        idempotents,
    )
}
