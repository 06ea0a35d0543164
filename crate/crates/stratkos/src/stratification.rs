//! Standard modules, Δ-filtrations, heights and the extension algebra of standard modules.

use crate::algebra::{
    is_directed, opposite, quotient_by_idempotent, radical_reduction, Algebra, BasisElem, Sparse,
};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace};
use crate::homological::{is_koszul_module, yoneda_algebra, YonedaAlgebra};
use crate::repmod::{
    hom_basis, is_projective, kernel_of, projective_cover, reduce_module, regular, Module,
    ProjectiveSum, Summand,
};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A linear order on the vertices, stored least to greatest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    pub seq: Vec<usize>,
}

impl LinearOrder {
    pub fn from_least(seq: Vec<usize>) -> LinearOrder {
        LinearOrder { seq }
    }

    pub fn from_greatest(mut seq: Vec<usize>) -> LinearOrder {
        seq.reverse();
        LinearOrder { seq }
    }

    /// Parses a comma list of vertex names, greatest first.
    pub fn parse(text: &str, vertices: &[String]) -> Result<LinearOrder> {
        let mut seq = Vec::new();
        for name in text.split(',').map(str::trim) {
            let v = vertices
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::Invalid(format!("unknown vertex {name} in order")))?;
            if seq.contains(&v) {
                return Err(Error::Invalid(format!("vertex {name} repeated in order")));
            }
            seq.push(v);
        }
        if seq.len() != vertices.len() {
            return Err(Error::Invalid("order must list every vertex".into()));
        }
        Ok(LinearOrder::from_greatest(seq))
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.seq
            .iter()
            .position(|&x| x == v)
            .expect("vertex in order")
    }

    /// a ≻ b
    pub fn greater(&self, a: usize, b: usize) -> bool {
        self.position(a) > self.position(b)
    }

    pub fn greatest_first(&self) -> Vec<usize> {
        self.seq.iter().rev().copied().collect()
    }

    /// Greatest first, e.g. "y≻x≻z".
    pub fn display(&self, names: &[String]) -> String {
        self.greatest_first()
            .iter()
            .map(|&v| names[v].as_str())
            .collect::<Vec<_>>()
            .join("≻")
    }

    /// Greatest first, comma separated.
    pub fn to_arg(&self, names: &[String]) -> String {
        self.greatest_first()
            .iter()
            .map(|&v| names[v].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn all(n: usize) -> Vec<LinearOrder> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        permute(&mut cur, 0, &mut out);
        out.sort();
        out
    }
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<LinearOrder>) {
    if k == v.len() {
        out.push(LinearOrder::from_least(v.clone()));
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Height function: layer index in the iterated-minimal-elements partition, from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    pub heights: Vec<usize>,
}

impl HeightFunction {
    pub fn of_order(order: &LinearOrder) -> HeightFunction {
        let mut heights = vec![0; order.len()];
        for (i, &v) in order.seq.iter().enumerate() {
            heights[v] = i + 1;
        }
        HeightFunction { heights }
    }

    /// For a poset given by its strict relation `less(a, b)`.
    pub fn of_poset(n: usize, less: impl Fn(usize, usize) -> bool) -> HeightFunction {
        let mut heights = vec![0; n];
        let mut level = 0;
        let mut left: Vec<usize> = (0..n).collect();
        while !left.is_empty() {
            level += 1;
            let minimal: Vec<usize> = left
                .iter()
                .copied()
                .filter(|&a| !left.iter().any(|&b| b != a && less(b, a)))
                .collect();
            if minimal.is_empty() {
                break;
            }
            for &m in &minimal {
                heights[m] = level;
            }
            left.retain(|a| !minimal.contains(a));
        }
        HeightFunction { heights }
    }

    pub fn of(&self, v: usize) -> usize {
        self.heights[v]
    }
}

#[derive(Clone, Debug)]
pub struct StandardSystem {
    pub alg: Arc<Algebra>,
    pub order: LinearOrder,
    /// Δ_λ per vertex
    pub deltas: Vec<Module>,
    /// Σ_{μ≻λ} tr_{P_μ}(P_λ) inside P_λ
    pub traces: Vec<Subspace>,
    /// Δ_ε per primitive idempotent
    pub prim_deltas: Vec<Module>,
}

impl StandardSystem {
    pub fn delta_dims(&self) -> Vec<usize> {
        self.deltas.iter().map(|d| d.dim()).collect()
    }

    pub fn heights(&self) -> HeightFunction {
        HeightFunction::of_order(&self.order)
    }

    /// Δ = ⊕ Δ_λ.
    pub fn sum(&self) -> Module {
        Module::direct_sum(&self.deltas.iter().collect::<Vec<_>>())
    }

    pub fn labeled(&self) -> Vec<(String, Module)> {
        self.alg
            .vertices
            .iter()
            .cloned()
            .zip(self.deltas.iter().cloned())
            .collect()
    }
}

fn strip_greater(p: &Module, lambda: usize, order: &LinearOrder) -> Subspace {
    let mut s = Subspace::zero(p.field(), p.dim());
    for mu in 0..order.len() {
        if order.greater(mu, lambda) {
            s = s.sum(&p.trace_subspace(mu));
        }
    }
    s
}

pub fn standard_modules(a: &Arc<Algebra>, order: &LinearOrder) -> Result<StandardSystem> {
    if order.len() != a.num_vertices() {
        return Err(Error::Invalid(
            "order size differs from the number of vertices".into(),
        ));
    }
    let mut deltas = Vec::new();
    let mut traces = Vec::new();
    for l in 0..a.num_vertices() {
        let p = ProjectiveSum::vertex_projective(a, l, 0).module;
        let t = strip_greater(&p, l, order);
        deltas.push(p.quotient(&t).0);
        traces.push(t);
    }
    let mut prim_deltas = Vec::new();
    for pr in a.primitives()? {
        let s = Summand {
            idem: pr.element.clone(),
            vertex: pr.vertex,
            prim: None,
            shift: 0,
        };
        let p = ProjectiveSum::new(a, vec![s], true).module;
        let t = strip_greater(&p, pr.vertex, order);
        prim_deltas.push(p.quotient(&t).0);
    }
    Ok(StandardSystem {
        alg: a.clone(),
        order: order.clone(),
        deltas,
        traces,
        prim_deltas,
    })
}

/// Multiplicities [M : Δ_ε] by primitive index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub by_primitive: Vec<usize>,
    /// multiplicities summed per vertex
    pub by_vertex: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationOutcome {
    Filtered(Filtration),
    /// the trace of P_λ at this vertex was not a sum of copies of P_λ
    NotFiltered {
        stage: usize,
    },
}

impl FiltrationOutcome {
    pub fn filtration(&self) -> Option<&Filtration> {
        match self {
            FiltrationOutcome::Filtered(f) => Some(f),
            FiltrationOutcome::NotFiltered { .. } => None,
        }
    }
}

/// Strips traces from the greatest vertex down, passing to A/Ae_λA after each step.
pub fn delta_filtration(m: &Module, system: &StandardSystem) -> Result<FiltrationOutcome> {
    let a = &system.alg;
    let prims = a.primitives()?;
    let mut by_primitive = vec![0; prims.len()];
    let mut by_vertex = vec![0; a.num_vertices()];
    let mut cur = m.clone();
    // current vertex index of each original vertex
    let mut vmap: Vec<Option<usize>> = (0..a.num_vertices()).map(Some).collect();
    // projection from A onto the current quotient algebra
    let mut proj = Matrix::identity(a.field, a.dim());
    for lambda in system.order.greatest_first() {
        let cl = vmap[lambda].expect("vertex still present");
        let t = cur.trace_subspace(cl);
        if t.dim() > 0 {
            let (tm, _) = cur.submodule(&t);
            let cover = projective_cover(&tm)?;
            if cover.proj.module.dim() != tm.dim()
                || cover.proj.summands.iter().any(|s| s.vertex != cl)
            {
                return Ok(FiltrationOutcome::NotFiltered { stage: lambda });
            }
            let ca = &cur.alg;
            let rad = ca.radical_subspace();
            for s in &cover.proj.summands {
                // the A-primitive with the same simple top
                let k = (0..prims.len())
                    .filter(|&k| prims[k].vertex == lambda)
                    .find(|&k| {
                        !rad.contains(
                            &ca.mul(&s.idem, &ca.mul(&proj.mul_vec(&prims[k].element), &s.idem)),
                        )
                    })
                    .ok_or_else(|| {
                        Error::Invalid("primitive idempotent lost in quotient".into())
                    })?;
                by_primitive[k] += 1;
                by_vertex[lambda] += 1;
            }
        }
        let q = quotient_by_idempotent(&cur.alg, cl);
        cur = reduce_module(&cur, &q);
        proj = q.projection.mul(&proj);
        for v in vmap.iter_mut() {
            *v = v.and_then(|x| q.vertex_map[x]);
        }
    }
    if cur.dim() != 0 {
        return Ok(FiltrationOutcome::NotFiltered {
            stage: system.order.seq[0],
        });
    }
    Ok(FiltrationOutcome::Filtered(Filtration {
        by_primitive,
        by_vertex,
    }))
}

#[derive(Clone, Debug)]
pub struct StratificationReport {
    pub stratified: bool,
    pub system: StandardSystem,
    /// filtration of each P_λ
    pub filtrations: Vec<FiltrationOutcome>,
}

pub fn stratification_report(
    a: &Arc<Algebra>,
    order: &LinearOrder,
) -> Result<StratificationReport> {
    let system = standard_modules(a, order)?;
    let mut filtrations = Vec::new();
    for l in 0..a.num_vertices() {
        let p = ProjectiveSum::vertex_projective(a, l, 0).module;
        filtrations.push(delta_filtration(&p, &system)?);
    }
    let stratified = filtrations.iter().all(|f| f.filtration().is_some());
    Ok(StratificationReport {
        stratified,
        system,
        filtrations,
    })
}

pub fn is_standardly_stratified(a: &Arc<Algebra>, order: &LinearOrder) -> Result<bool> {
    Ok(stratification_report(a, order)?.stratified)
}

pub fn is_properly_stratified(a: &Arc<Algebra>, order: &LinearOrder) -> Result<bool> {
    if !is_standardly_stratified(a, order)? {
        return Ok(false);
    }
    let op = Arc::new(opposite(a));
    is_standardly_stratified(&op, order)
}

/// Quasi-hereditary: stratified with End(Δ_λ) = k for all λ.
pub fn is_quasi_hereditary(a: &Arc<Algebra>, order: &LinearOrder) -> Result<bool> {
    let r = stratification_report(a, order)?;
    if !r.stratified {
        return Ok(false);
    }
    Ok(r.system
        .deltas
        .iter()
        .all(|d| hom_basis(d, d, false).len() == 1))
}

/// min(M) and the multiplicities, for M ∈ F(Δ).
fn filtration_of(m: &Module, system: &StandardSystem) -> Result<Filtration> {
    match delta_filtration(m, system)? {
        FiltrationOutcome::Filtered(f) => Ok(f),
        FiltrationOutcome::NotFiltered { .. } => Err(Error::NotFiltered),
    }
}

fn min_height(f: &Filtration, h: &HeightFunction) -> Option<usize> {
    (0..f.by_vertex.len())
        .filter(|&v| f.by_vertex[v] > 0)
        .map(|v| h.of(v))
        .min()
}

/// Top(M) ≅ ⊕_{h(λ)=i} S_λ^{m_λ}.
pub fn is_generated_in_height(m: &Module, i: usize, system: &StandardSystem) -> Result<bool> {
    let f = filtration_of(m, system)?;
    let h = system.heights();
    if m.dim() == 0 {
        return Ok(true);
    }
    if min_height(&f, &h) != Some(i) {
        return Ok(false);
    }
    let cover = projective_cover(m)?;
    let mut top = vec![0; f.by_vertex.len()];
    for s in &cover.proj.summands {
        top[s.vertex] += 1;
    }
    Ok((0..top.len()).all(|v| top[v] == if h.of(v) == i { f.by_vertex[v] } else { 0 }))
}

#[derive(Clone, Debug)]
pub struct RelativeStep {
    pub height: usize,
    pub cover: ProjectiveSum,
    pub syzygy: Module,
}

/// Q^i → M and Ω_Θ M for M generated in height i.
pub fn relative_cover_and_syzygy(m: &Module, system: &StandardSystem) -> Result<RelativeStep> {
    let f = filtration_of(m, system)?;
    let h = system.heights();
    let i = min_height(&f, &h).unwrap_or(0);
    if m.dim() > 0 && !is_generated_in_height(m, i, system)? {
        return Err(Error::NotGeneratedInHeight(i));
    }
    let cover = projective_cover(m)?;
    let (syz, _) = kernel_of(&cover.proj.module, &cover.map);
    if delta_filtration(&syz, system)?.filtration().is_none() {
        return Err(Error::NotFiltered);
    }
    Ok(RelativeStep {
        height: i,
        cover: cover.proj,
        syzygy: syz,
    })
}

/// Ω_Θ^s M generated in height i + s for all s.
pub fn is_linearly_filtered(m: &Module, system: &StandardSystem) -> Result<bool> {
    let h = system.heights();
    let f = filtration_of(m, system)?;
    let Some(start) = min_height(&f, &h) else {
        return Ok(true);
    };
    let mut cur = m.clone();
    for s in 0..=system.order.len() + 1 {
        if cur.dim() == 0 {
            return Ok(true);
        }
        if !is_generated_in_height(&cur, start + s, system)? {
            return Ok(false);
        }
        cur = relative_cover_and_syzygy(&cur, system)?.syzygy;
    }
    Ok(cur.dim() == 0)
}

#[derive(Clone, Debug)]
pub struct GammaReport {
    pub gamma: YonedaAlgebra,
    /// Ext^s(Δ_λ, Δ_μ) = 0 whenever λ ≻ μ
    pub vanishing_holds: bool,
    pub directed: bool,
}

/// Γ = Ext*(Δ, Δ) through degree n.
pub fn gamma_of_standards(a: &Arc<Algebra>, order: &LinearOrder, n: usize) -> Result<GammaReport> {
    let r = stratification_report(a, order)?;
    if !r.stratified {
        return Err(Error::NotStratified);
    }
    let gamma = yoneda_algebra(&r.system.labeled(), n, &format!("Ext({})", a.name))?;
    let mut vanishing = true;
    for (&(l, m), e) in &gamma.exts {
        if order.greater(l, m) && e.total_dim() > 0 {
            vanishing = false;
        }
    }
    let directed = is_directed(&gamma.algebra).is_some();
    Ok(GammaReport {
        gamma,
        vanishing_holds: vanishing,
        directed,
    })
}

/// e_μΓ_0e_μ = End(Δ_μ) as an algebra with one vertex.
fn corner_algebra(g: &Algebra, mu: usize) -> Result<(Algebra, Vec<usize>)> {
    let idx: Vec<usize> = (0..g.dim())
        .filter(|&i| g.basis[i].degree == 0 && g.basis[i].source == mu && g.basis[i].target == mu)
        .collect();
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let basis: Vec<BasisElem> = idx
        .iter()
        .map(|&i| BasisElem {
            source: 0,
            target: 0,
            ..g.basis[i].clone()
        })
        .collect();
    let mult: Vec<Vec<Sparse>> = idx
        .iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| {
                    g.product(i, j)
                        .iter()
                        .map(|(k, c)| (pos[k], c.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let e = pos[&g.idempotents[mu]];
    let a = Algebra::from_structure(
        &format!("End({})", g.vertices[mu]),
        g.field,
        vec![g.vertices[mu].clone()],
        basis,
        mult,
        vec![e],
    )?;
    Ok((a, idx))
}

/// Every Ext^s(Δ_λ, Δ_μ) is a projective End(Δ_μ)-module, s ≤ n.
pub fn theorem_5_1_3_check(a: &Arc<Algebra>, order: &LinearOrder, n: usize) -> Result<bool> {
    let g = gamma_of_standards(a, order, n)?.gamma.algebra;
    for mu in 0..g.num_vertices() {
        let (end, idx) = corner_algebra(&g, mu)?;
        let end = Arc::new(end);
        for lambda in 0..g.num_vertices() {
            for s in 0..=n {
                let block: Vec<usize> = (0..g.dim())
                    .filter(|&i| {
                        g.basis[i].source == lambda
                            && g.basis[i].target == mu
                            && g.basis[i].degree == s
                    })
                    .collect();
                if block.is_empty() {
                    continue;
                }
                let bpos: BTreeMap<usize, usize> =
                    block.iter().enumerate().map(|(a, &i)| (i, a)).collect();
                let field = g.field;
                let acts = idx
                    .iter()
                    .map(|&u| {
                        let mut m = Matrix::zeros(field, block.len(), block.len());
                        for (c, &x) in block.iter().enumerate() {
                            for (k, v) in g.product(u, x) {
                                m.set(bpos[k], c, v.clone());
                            }
                        }
                        m
                    })
                    .collect();
                let module = Module {
                    alg: end.clone(),
                    acts,
                    degrees: vec![0; block.len()],
                    vertices: vec![0; block.len()],
                    graded: true,
                };
                if !is_projective(&module)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityReport {
    pub hom_a_delta: usize,
    pub hom_delta_delta: usize,
    pub all_linearly_filtered: bool,
    pub hypotheses_hold: bool,
    /// Γ_0 is a Koszul Γ-module through the bound
    pub gamma0_linear: Option<bool>,
    /// ⊕ standard modules of Γ for the same order are Koszul
    pub gamma_delta_linear: Option<bool>,
    /// the radical reduction of Γ is Koszul
    pub reduced_gamma_koszul: Option<bool>,
}

pub fn theorem_5_2_11_check(
    a: &Arc<Algebra>,
    order: &LinearOrder,
    n: usize,
) -> Result<LinearityReport> {
    let r = stratification_report(a, order)?;
    if !r.stratified {
        return Err(Error::NotStratified);
    }
    let delta = r.system.sum();
    let hom_a_delta = hom_basis(&regular(a), &delta, false).len();
    let hom_delta_delta = hom_basis(&delta, &delta, false).len();
    let mut all_lin = true;
    for d in &r.system.deltas {
        if !is_linearly_filtered(d, &r.system)? {
            all_lin = false;
        }
    }
    let hyp = all_lin && hom_a_delta == hom_delta_delta;
    let mut rep = LinearityReport {
        hom_a_delta,
        hom_delta_delta,
        all_linearly_filtered: all_lin,
        hypotheses_hold: hyp,
        gamma0_linear: None,
        gamma_delta_linear: None,
        reduced_gamma_koszul: None,
    };
    let gamma = Arc::new(gamma_of_standards(a, order, n)?.gamma.algebra);
    rep.gamma0_linear = Some(is_koszul_module(
        &crate::repmod::degree_zero_module(&gamma),
        n,
    )?);
    let gsys = standard_modules(&gamma, order)?;
    rep.gamma_delta_linear = Some(is_koszul_module(&gsys.sum(), n)?);
    let red = Arc::new(radical_reduction(&gamma).algebra);
    rep.reduced_gamma_koszul = Some(crate::homological::is_koszul_algebra(&red, n)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_presentation, Presentation, Quiver};
    use crate::exactlin::Field;

    fn a3() -> Arc<Algebra> {
        let q = Quiver::new(&["x", "y", "z"])
            .with_arrow("a", "x", "y", 1)
            .with_arrow("b", "y", "z", 1);
        Arc::new(
            build_from_presentation(&Presentation::new("A3", Field::Rationals, q), 20).unwrap(),
        )
    }

    #[test]
    fn hereditary_all_orders() {
        let a = a3();
        for o in LinearOrder::all(3) {
            assert!(is_standardly_stratified(&a, &o).unwrap(), "{:?}", o);
        }
    }

    #[test]
    fn standard_dims() {
        let a = a3();
        let names = a.vertices.clone();
        let o = LinearOrder::parse("z,y,x", &names).unwrap();
        let s = standard_modules(&a, &o).unwrap();
        assert_eq!(s.delta_dims(), vec![1, 1, 1]);
        let o = LinearOrder::parse("x,y,z", &names).unwrap();
        let s = standard_modules(&a, &o).unwrap();
        assert_eq!(s.delta_dims(), vec![3, 2, 1]);
    }

    #[test]
    fn heights_of_poset() {
        let h = HeightFunction::of_poset(4, |a, b| {
            (a, b) == (0, 1) || (a, b) == (1, 2) || (a, b) == (0, 2)
        });
        assert_eq!(h.heights, vec![1, 2, 3, 1]);
    }
}
