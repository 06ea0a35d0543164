//! Minimal resolutions, Ext, Yoneda products and Koszul-type tests.

use crate::algebra::{is_quadratic, radical_reduction, Algebra, BasisElem, Sparse, WordSpace};
use crate::error::{Error, Result};
use crate::exactlin::{vecops, Matrix, Scalar, Solver, Subspace};
use crate::repmod::{
    degree_zero_module, find_isomorphism, is_projective, kernel_of, projective, projective_cover,
    reduce_module, regular, Module, ProjectiveSum,
};
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

/// Default number of resolution stages examined.
pub const DEFAULT_BOUND: usize = 6;

#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: Module,
    pub terms: Vec<ProjectiveSum>,
    /// diffs[0]: P^0 → M, diffs[i]: P^i → P^{i-1}
    pub diffs: Vec<Matrix>,
    /// syzygies[i] = Ω^i M, the module covered by P^i
    pub syzygies: Vec<Module>,
    /// a zero syzygy was reached
    pub terminated: bool,
    pub cap: Option<i32>,
    solvers: Vec<OnceLock<Solver>>,
}

impl Resolution {
    pub fn depth(&self) -> usize {
        self.terms.len()
    }

    /// (primitive or vertex, shift) for each summand of P^i.
    pub fn shape(&self, i: usize) -> Vec<(usize, i32)> {
        self.terms
            .get(i)
            .map(|t| {
                t.summands
                    .iter()
                    .map(|s| (s.prim.unwrap_or(s.vertex), s.shift))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// (vertex, shift) for each summand of P^i.
    pub fn vertex_shape(&self, i: usize) -> Vec<(usize, i32)> {
        self.terms
            .get(i)
            .map(|t| t.summands.iter().map(|s| (s.vertex, s.shift)).collect())
            .unwrap_or_default()
    }

    fn solver(&self, i: usize) -> &Solver {
        self.solvers[i].get_or_init(|| Solver::new(&self.diffs[i]))
    }

    /// Checks exactness and minimality of every computed stage.
    pub fn verify(&self) -> bool {
        for i in 0..self.depth() {
            let d = &self.diffs[i];
            // minimal: image inside the radical of the target
            if i > 0 {
                let rad = self.terms[i - 1].module.radical_subspace();
                if d.columns().iter().any(|c| !rad.contains(c)) {
                    return false;
                }
                if !self.diffs[i - 1].mul(d).is_zero() {
                    return false;
                }
            } else if d.rank() != self.target.dim() {
                return false;
            }
            let ker = self.terms[i].module.dim() - d.rank();
            let next = if i + 1 < self.depth() {
                self.diffs[i + 1].rank()
            } else {
                0
            };
            let exact_here =
                self.cap.is_some() || ker == next || (i + 1 == self.depth() && !self.terminated);
            if !exact_here {
                return false;
            }
        }
        true
    }
}

/// Resolution through stage n. With a cap, syzygies are replaced by the submodule generated in
/// degrees ≤ cap, so all data in degrees ≤ cap agree with the untruncated resolution.
pub fn resolve(m: &Module, n: usize, cap: Option<i32>) -> Result<Resolution> {
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut syzygies = Vec::new();
    let mut cur = m.clone();
    let mut incl = Matrix::identity(m.field(), m.dim());
    let mut terminated = false;
    for _ in 0..=n {
        if cur.is_zero() {
            terminated = true;
            break;
        }
        let cover = projective_cover(&cur)?;
        diffs.push(incl.mul(&cover.map));
        let (ker, kincl) = kernel_of(&cover.proj.module, &cover.map);
        syzygies.push(cur);
        terms.push(cover.proj);
        let (next, nincl) = match cap {
            Some(c) => {
                let low: Vec<Vec<Scalar>> = (0..ker.dim())
                    .filter(|&i| ker.degrees[i] <= c)
                    .map(|i| ker.unit_vec(i))
                    .collect();
                let (sub, sincl) = ker.submodule(&ker.generated(&low));
                (sub, kincl.mul(&sincl))
            }
            None => (ker, kincl),
        };
        cur = next;
        incl = nincl;
    }
    if cur.is_zero() {
        terminated = true;
    }
    let solvers = diffs.iter().map(|_| OnceLock::new()).collect();
    Ok(Resolution {
        target: m.clone(),
        terms,
        diffs,
        syzygies,
        terminated,
        cap,
        solvers,
    })
}

pub fn minimal_resolution(m: &Module, n: usize) -> Result<Resolution> {
    resolve(m, n, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub koszul: bool,
    /// stages examined
    pub bound: usize,
    /// the verdict holds for all stages (termination or periodicity)
    pub unconditional: bool,
    pub failing_stage: Option<usize>,
    /// shifts of the summands of each P^i
    pub shifts: Vec<Vec<i32>>,
}

fn koszul_from_resolution(res: &Resolution, n: usize) -> KoszulReport {
    let mut rep = KoszulReport {
        koszul: true,
        bound: n,
        unconditional: false,
        failing_stage: None,
        shifts: vec![],
    };
    for i in 0..res.depth() {
        let shifts: Vec<i32> = res.terms[i].summands.iter().map(|s| s.shift).collect();
        let considered: Vec<i32> = match res.cap {
            Some(c) => shifts.iter().copied().filter(|&s| s <= c).collect(),
            None => shifts.clone(),
        };
        rep.shifts.push(shifts);
        if considered.iter().any(|&s| s != i as i32) {
            rep.koszul = false;
            rep.failing_stage = Some(i);
            rep.unconditional = true;
            return rep;
        }
    }
    if res.terminated && res.cap.is_none() {
        rep.unconditional = true;
    }
    rep
}

/// Koszul test through stage n, with termination and periodicity detection.
pub fn koszul_module_report(m: &Module, n: usize) -> Result<KoszulReport> {
    if !m.graded || !m.is_generated_in_degree(0) {
        return Err(Error::NotGeneratedDegreeZero);
    }
    let mut rep = KoszulReport {
        koszul: true,
        bound: n,
        unconditional: false,
        failing_stage: None,
        shifts: vec![],
    };
    let mut seen: Vec<Module> = Vec::new();
    let mut cur = m.clone();
    for i in 0..=n {
        if cur.is_zero() {
            rep.unconditional = true;
            return Ok(rep);
        }
        let normalized = cur.shift(-(i as i32));
        if seen
            .iter()
            .any(|s| find_isomorphism(s, &normalized, true).is_some())
        {
            rep.unconditional = true;
            return Ok(rep);
        }
        let cover = projective_cover(&cur)?;
        let shifts: Vec<i32> = cover.proj.summands.iter().map(|s| s.shift).collect();
        let bad = shifts.iter().any(|&s| s != i as i32);
        rep.shifts.push(shifts);
        if bad {
            rep.koszul = false;
            rep.failing_stage = Some(i);
            rep.unconditional = true;
            return Ok(rep);
        }
        seen.push(normalized);
        cur = kernel_of(&cover.proj.module, &cover.map).0;
    }
    if cur.is_zero() {
        rep.unconditional = true;
    }
    Ok(rep)
}

pub fn is_koszul_module(m: &Module, n: usize) -> Result<bool> {
    Ok(koszul_module_report(m, n)?.koszul)
}

pub fn is_koszul_algebra(a: &Arc<Algebra>, n: usize) -> Result<bool> {
    is_koszul_module(&degree_zero_module(a), n)
}

/// Ext^*(M, N) computed from a minimal resolution of M.
#[derive(Clone, Debug)]
pub struct ExtData {
    pub res: Arc<Resolution>,
    pub target: Module,
    pub n: usize,
    pub graded: bool,
    pub dims: Vec<usize>,
    /// dims of ext^i(M, N[j]) keyed by j
    pub graded_dims: Vec<BTreeMap<i32, usize>>,
    /// cocycle representatives, flattened as one N-vector per summand of P^i
    pub reps: Vec<Vec<Vec<Scalar>>>,
    pub rep_degrees: Vec<Vec<i32>>,
    coboundaries: Vec<Subspace>,
    class_solvers: Vec<Solver>,
}

pub type ExtTable = ExtData;

impl ExtData {
    /// Ext^i(M, N) for i ≤ n; `identity` is placed first among degree-0 classes when given.
    /// The resolution must reach P^{n+1} unless it terminated.
    pub fn new(
        res: Arc<Resolution>,
        target: &Module,
        n: usize,
        identity: Option<Vec<Scalar>>,
    ) -> ExtData {
        assert!(
            res.terminated || res.depth() > n + 1,
            "resolution too short for Ext^{n}"
        );
        let field = target.field();
        let nd = target.dim();
        let graded = res.target.graded && target.graded;
        let mut dims = Vec::new();
        let mut graded_dims = Vec::new();
        let mut reps = Vec::new();
        let mut rep_degrees = Vec::new();
        let mut coboundaries = Vec::new();
        let mut class_solvers = Vec::new();
        // cochain bases with internal degrees
        let cochain_basis = |i: usize| -> Vec<(Vec<Scalar>, i32)> {
            let Some(t) = res.terms.get(i) else {
                return vec![];
            };
            let amb = t.len() * nd;
            let mut out = Vec::new();
            for (k, s) in t.summands.iter().enumerate() {
                let eps = target.act_elem(&s.idem);
                for ((_, d), sub) in target.homogenize(&eps.columns()) {
                    for b in sub.basis() {
                        let mut v = vecops::zeros(field, amb);
                        v[k * nd..(k + 1) * nd].clone_from_slice(b);
                        let j = if graded { s.shift - d } else { 0 };
                        out.push((v, j));
                    }
                }
            }
            out
        };
        let bases: Vec<Vec<(Vec<Scalar>, i32)>> = (0..=n + 1).map(cochain_basis).collect();
        let deltas: Vec<Option<Matrix>> = (0..=n)
            .map(|i| coboundary_matrix(&res, target, i))
            .collect();
        for i in 0..=n {
            let amb = res.terms.get(i).map(|t| t.len() * nd).unwrap_or(0);
            let mut by_deg: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
            for (v, j) in &bases[i] {
                by_deg.entry(*j).or_default().push(v.clone());
            }
            let mut bsp = Subspace::zero(field, amb);
            if i > 0 {
                if let Some(dprev) = &deltas[i - 1] {
                    for (v, _) in &bases[i - 1] {
                        bsp.insert(&dprev.mul_vec(v));
                    }
                }
            }
            let mut these_reps = Vec::new();
            let mut these_deg = Vec::new();
            let mut gd = BTreeMap::new();
            for (j, vs) in by_deg {
                let basis_m = Matrix::from_cols(field, amb, &vs);
                let z: Vec<Vec<Scalar>> = match &deltas[i] {
                    Some(d) if d.rows > 0 => d
                        .mul(&basis_m)
                        .kernel_basis()
                        .iter()
                        .map(|c| basis_m.mul_vec(c))
                        .collect(),
                    _ => vs.clone(),
                };
                let mut span = bsp.clone();
                let mut cands = Vec::new();
                if i == 0 {
                    if let Some(id) = &identity {
                        if Subspace::span(field, amb, &z).contains(id) {
                            cands.push(id.clone());
                        }
                    }
                }
                cands.extend(z);
                let mut count = 0;
                for c in cands {
                    if span.insert(&c) {
                        these_reps.push(c);
                        these_deg.push(j);
                        count += 1;
                    }
                }
                if count > 0 {
                    gd.insert(j, count);
                }
            }
            if i == 0 {
                if let Some(id) = &identity {
                    if let Some(p) = these_reps.iter().position(|r| r == id) {
                        let r = these_reps.remove(p);
                        these_reps.insert(0, r);
                        let d = these_deg.remove(p);
                        these_deg.insert(0, d);
                    }
                }
            }
            let mut cols = these_reps.clone();
            cols.extend(bsp.basis().iter().cloned());
            class_solvers.push(Solver::new(&Matrix::from_cols(field, amb, &cols)));
            dims.push(these_reps.len());
            graded_dims.push(gd);
            reps.push(these_reps);
            rep_degrees.push(these_deg);
            coboundaries.push(bsp);
        }
        ExtData {
            res,
            target: target.clone(),
            n,
            graded,
            dims,
            graded_dims,
            reps,
            rep_degrees,
            coboundaries,
            class_solvers,
        }
    }

    /// Coordinates of a cocycle in the chosen class basis.
    pub fn class_coords(&self, i: usize, cocycle: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.reps[i].is_empty() {
            return Ok(vec![]);
        }
        let z = self.class_solvers[i]
            .solve(cocycle)
            .ok_or_else(|| Error::LiftFailure("not a cocycle".into()))?;
        Ok(z[..self.reps[i].len()].to_vec())
    }

    pub fn is_coboundary(&self, i: usize, cochain: &[Scalar]) -> bool {
        self.coboundaries[i].contains(cochain)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The images of the generators of P^i under the cochain.
    pub fn slots(&self, i: usize, cochain: &[Scalar]) -> Vec<Vec<Scalar>> {
        let nd = self.target.dim();
        (0..self.res.terms[i].len())
            .map(|k| cochain[k * nd..(k + 1) * nd].to_vec())
            .collect()
    }
}

/// Matrix of f ↦ f∘d_{i+1} from C^i to C^{i+1}, in flattened coordinates.
fn coboundary_matrix(res: &Resolution, target: &Module, i: usize) -> Option<Matrix> {
    let field = target.field();
    let nd = target.dim();
    let t = res.terms.get(i)?;
    let cols = t.len() * nd;
    let Some(next) = res.terms.get(i + 1) else {
        return Some(Matrix::zeros(field, 0, cols));
    };
    let d = &res.diffs[i + 1];
    let acts: Vec<Matrix> = t.elems.iter().map(|e| target.act_elem(e)).collect();
    let mut m = Matrix::zeros(field, next.len() * nd, cols);
    for l in 0..next.len() {
        let g = next.generator(l);
        let v = d.mul_vec(&g);
        for (c, vc) in v.iter().enumerate() {
            if vc.is_zero() {
                continue;
            }
            let k = t.owner[c];
            let a = &acts[c];
            for r in 0..nd {
                for s in 0..nd {
                    let x = a.get(r, s);
                    if !x.is_zero() {
                        let cur = m.get(l * nd + r, k * nd + s).clone();
                        m.set(l * nd + r, k * nd + s, &cur + &(vc * x));
                    }
                }
            }
        }
    }
    Some(m)
}

pub fn ext_dims(m: &Module, n_mod: &Module, n: usize) -> Result<ExtTable> {
    let res = Arc::new(minimal_resolution(m, n + 1)?);
    Ok(ExtData::new(res, n_mod, n, None))
}

/// Splits w by module degree, solves d z = w_D for each part and keeps the degree-D part.
fn lift_through(res: &Resolution, t: usize, w: &[Scalar]) -> Result<Vec<Scalar>> {
    let field = res.target.field();
    let src = &res.terms[t].module;
    let tgt_degrees: Vec<i32> = if t == 0 {
        res.target.degrees.clone()
    } else {
        res.terms[t - 1].module.degrees.clone()
    };
    let graded = src.graded;
    let solver = res.solver(t);
    if !graded {
        return solver
            .solve(w)
            .ok_or_else(|| Error::LiftFailure(format!("stage {t}")));
    }
    let mut out = vecops::zeros(field, src.dim());
    let mut parts: BTreeMap<i32, Vec<Scalar>> = BTreeMap::new();
    for (i, c) in w.iter().enumerate() {
        if !c.is_zero() {
            parts
                .entry(tgt_degrees[i])
                .or_insert_with(|| vecops::zeros(field, w.len()))[i] = c.clone();
        }
    }
    for (deg, part) in parts {
        let z = solver
            .solve(&part)
            .ok_or_else(|| Error::LiftFailure(format!("stage {t}")))?;
        for (i, c) in z.into_iter().enumerate() {
            if src.degrees[i] == deg && !c.is_zero() {
                out[i] = &out[i] + &c;
            }
        }
    }
    Ok(out)
}

/// y·x for x ∈ Ext^i(M, N) and y ∈ Ext^j(N, L), as a cochain on P^{i+j} of M's resolution.
/// `y_ext.res` must resolve the target of `x_ext`. Returns None when P^{i+j} was not computed.
pub fn yoneda_product(
    x_ext: &ExtData,
    i: usize,
    x: &[Scalar],
    y_ext: &ExtData,
    j: usize,
    y: &[Scalar],
) -> Result<Option<Vec<Scalar>>> {
    let rm = &x_ext.res;
    let rn = &y_ext.res;
    let l_mod = &y_ext.target;
    let field = l_mod.field();
    if i + j >= rm.depth() {
        if rm.terminated {
            return Ok(Some(vec![]));
        }
        return Ok(None);
    }
    if j >= rn.depth() {
        let len = rm.terms[i + j].len() * l_mod.dim();
        return Ok(Some(vecops::zeros(field, len)));
    }
    // φ_0: P^i_M → P^0_N over x
    let xs = x_ext.slots(i, x);
    let src0 = &rm.terms[i];
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    for (l, w) in xs.iter().enumerate() {
        let z = lift_through(rn, 0, w)?;
        let eps = rn.terms[0].module.act_elem(&src0.summands[l].idem);
        images.push(eps.mul_vec(&z));
    }
    let mut phi = src0.hom_to(&rn.terms[0].module, &images);
    for t in 1..=j {
        let src = &rm.terms[i + t];
        let d = &rm.diffs[i + t];
        let mut imgs = Vec::new();
        for l in 0..src.len() {
            let w = phi.mul_vec(&d.mul_vec(&src.generator(l)));
            let z = lift_through(rn, t, &w)?;
            let eps = rn.terms[t].module.act_elem(&src.summands[l].idem);
            imgs.push(eps.mul_vec(&z));
        }
        phi = src.hom_to(&rn.terms[t].module, &imgs);
    }
    let ymap = rn.terms[j].hom_to(l_mod, &y_ext.slots(j, y));
    let top = &rm.terms[i + j];
    let mut out = Vec::with_capacity(top.len() * l_mod.dim());
    for l in 0..top.len() {
        out.extend(ymap.mul_vec(&phi.mul_vec(&top.generator(l))));
    }
    Ok(Some(out))
}

/// Identity cochain of M on its own resolution.
pub fn identity_cochain(res: &Resolution) -> Vec<Scalar> {
    let t = &res.terms[0];
    let mut out = Vec::new();
    for l in 0..t.len() {
        out.extend(res.diffs[0].mul_vec(&t.generator(l)));
    }
    out
}

/// Ext*(M, M) for M = ⊕ M_a with labeled summands, truncated above degree n.
#[derive(Clone, Debug)]
pub struct YonedaAlgebra {
    pub algebra: Algebra,
    pub labels: Vec<String>,
    pub summands: Vec<Module>,
    /// (source summand, target summand, degree, class index) per basis element
    pub classes: Vec<(usize, usize, usize, usize)>,
    pub exts: BTreeMap<(usize, usize), ExtData>,
}

pub fn yoneda_algebra(
    summands: &[(String, Module)],
    n: usize,
    name: &str,
) -> Result<YonedaAlgebra> {
    let field = summands[0].1.field();
    let mut resolutions = Vec::new();
    for (_, m) in summands {
        resolutions.push(Arc::new(minimal_resolution(m, n + 1)?));
    }
    let r = summands.len();
    let mut exts = BTreeMap::new();
    for a in 0..r {
        for b in 0..r {
            let id =
                (a == b && !summands[a].1.is_zero()).then(|| identity_cochain(&resolutions[a]));
            exts.insert(
                (a, b),
                ExtData::new(resolutions[a].clone(), &summands[b].1, n, id),
            );
        }
    }
    let mut classes = Vec::new();
    for a in 0..r {
        if exts[&(a, a)].dims[0] == 0 {
            return Err(Error::Invalid(format!("summand {} is zero", summands[a].0)));
        }
        classes.push((a, a, 0usize, 0usize));
    }
    let mut rest = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let e = &exts[&(a, b)];
            for i in 0..=n {
                for k in 0..e.dims[i] {
                    if !(a == b && i == 0 && k == 0) {
                        rest.push((i, a, b, k));
                    }
                }
            }
        }
    }
    rest.sort();
    classes.extend(rest.into_iter().map(|(i, a, b, k)| (a, b, i, k)));
    let index: BTreeMap<(usize, usize, usize, usize), usize> =
        classes.iter().enumerate().map(|(p, &c)| (c, p)).collect();
    let mut counters: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let basis: Vec<BasisElem> = classes
        .iter()
        .map(|&(a, b, i, k)| {
            let label = if a == b && i == 0 && k == 0 {
                format!("e_{}", summands[a].0)
            } else {
                let c = counters.entry((a, b, i)).or_insert(0);
                *c += 1;
                format!("E{}({},{})_{}", i, summands[a].0, summands[b].0, c)
            };
            BasisElem {
                label,
                source: a,
                target: b,
                degree: i,
            }
        })
        .collect();
    let dim = classes.len();
    let mut mult: Vec<Vec<Sparse>> = vec![vec![Vec::new(); dim]; dim];
    for (u, &(a, b, i, k)) in classes.iter().enumerate() {
        for (v, &(b2, c, j, l)) in classes.iter().enumerate() {
            if b2 != b || i + j > n {
                continue;
            }
            let xe = &exts[&(a, b)];
            let ye = &exts[&(b, c)];
            let Some(p) = yoneda_product(xe, i, &xe.reps[i][k], ye, j, &ye.reps[j][l])? else {
                continue;
            };
            if p.is_empty() {
                continue;
            }
            let target = &exts[&(a, c)];
            let coords = target.class_coords(i + j, &p)?;
            let mut sp = Vec::new();
            for (q, cq) in coords.into_iter().enumerate() {
                if !cq.is_zero() {
                    sp.push((index[&(a, c, i + j, q)], cq));
                }
            }
            // v·u: walk u then v
            mult[v][u] = sp;
        }
    }
    let labels: Vec<String> = summands.iter().map(|(s, _)| s.clone()).collect();
    let algebra =
        Algebra::from_structure(name, field, labels.clone(), basis, mult, (0..r).collect())?;
    Ok(YonedaAlgebra {
        algebra,
        labels,
        summands: summands.iter().map(|(_, m)| m.clone()).collect(),
        classes,
        exts,
    })
}

/// The summands A_0 e_λ = P_λ/JP_λ of A_0, labeled by vertex.
pub fn degree_zero_summands(a: &Arc<Algebra>) -> Vec<(String, Module)> {
    (0..a.num_vertices())
        .map(|l| {
            let p = projective(a, l, 0);
            let j = p.j_subspace();
            (a.vertices[l].clone(), p.quotient(&j).0)
        })
        .collect()
}

/// Γ = Ext*(A_0, A_0) through degree n.
pub fn yoneda_algebra_of_degree_zero(a: &Arc<Algebra>, n: usize) -> Result<YonedaAlgebra> {
    yoneda_algebra(&degree_zero_summands(a), n, &format!("E({})", a.name))
}

/// Ext^1(A_0, A_0)·Ext^i(M, A_0) = Ext^{i+1}(M, A_0) for every i < n.
pub fn is_quasi_koszul(m: &Module, n: usize) -> Result<bool> {
    let a0 = degree_zero_module(&m.alg);
    let rm = Arc::new(minimal_resolution(m, n + 1)?);
    let ra = Arc::new(minimal_resolution(&a0, 2)?);
    let xm = ExtData::new(rm, &a0, n, None);
    let ya = ExtData::new(ra, &a0, 1, None);
    for i in 0..n {
        if xm.dims[i + 1] == 0 {
            continue;
        }
        let mut span = Subspace::zero(m.field(), xm.dims[i + 1]);
        for x in &xm.reps[i] {
            for y in &ya.reps[1] {
                if let Some(p) = yoneda_product(&xm, i, x, &ya, 1, y)? {
                    if !p.is_empty() {
                        span.insert(&xm.class_coords(i + 1, &p)?);
                    }
                }
            }
        }
        if span.dim() != xm.dims[i + 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_quasi_koszul_algebra(a: &Arc<Algebra>, n: usize) -> Result<bool> {
    is_quasi_koszul(&degree_zero_module(a), n)
}

/// A projective as a left A_0-module.
pub fn algebra_projective_over_degree_zero(a: &Arc<Algebra>) -> Result<bool> {
    is_projective(&regular(a).restrict_to_degree_zero())
}

pub fn module_projective_over_degree_zero(m: &Module) -> Result<bool> {
    is_projective(&m.restrict_to_degree_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiKoszulCheck {
    pub hypothesis_holds: bool,
    pub koszul: bool,
    pub quasi_koszul: bool,
    pub projective_over_degree_zero: bool,
    /// None when the hypothesis fails
    pub consistent: Option<bool>,
}

/// Koszul ⇔ quasi-Koszul and projective over A_0, when A is projective over A_0.
pub fn theorem_2_1_16_check(a: &Arc<Algebra>, m: &Module, n: usize) -> Result<QuasiKoszulCheck> {
    let hyp = algebra_projective_over_degree_zero(a)?;
    let koszul = is_koszul_module(m, n)?;
    let qk = is_quasi_koszul(m, n)?;
    let proj = module_projective_over_degree_zero(m)?;
    Ok(QuasiKoszulCheck {
        hypothesis_holds: hyp,
        koszul,
        quasi_koszul: qk,
        projective_over_degree_zero: proj,
        consistent: hyp.then_some(koszul == (qk && proj)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulComplexReport {
    /// dim P^m_m
    pub top_dims: Vec<usize>,
    /// dim P^m = dim A ⊗ P^m_m
    pub dims: Vec<usize>,
    pub d_squared_zero: bool,
    /// exactness at stage m for m = 0..=n
    pub exact: Vec<bool>,
}

impl KoszulComplexReport {
    pub fn is_exact(&self) -> bool {
        self.d_squared_zero && self.exact.iter().all(|&e| e)
    }
}

/// The Koszul complex A ⊗ P^m_m of a quadratic algebra through stage n.
pub fn koszul_complex(a: &Algebra, n: usize) -> Result<KoszulComplexReport> {
    if !is_quadratic(a) {
        return Err(Error::NotQuadratic);
    }
    let field = a.field;
    let a1 = a.indices_of_degree(1);
    let all: Vec<usize> = (0..a.dim()).collect();
    let top = n + 1;
    let tensor_spaces: Vec<WordSpace> = (0..=top)
        .map(|m| WordSpace::new(a, vec![a1.clone(); m]))
        .collect();
    // R = kernel of A_1 ⊗ A_1 → A_2, in word coordinates
    let r_words: Vec<Vec<Scalar>> = if top >= 2 {
        let t2 = &tensor_spaces[2];
        t2.multiplication_matrix(a)
            .kernel_basis()
            .iter()
            .map(|c| t2.lift(c, field))
            .collect()
    } else {
        vec![]
    };
    let mut top_spaces: Vec<Subspace> = Vec::new();
    for m in 0..=top {
        let t = &tensor_spaces[m];
        if m < 2 {
            top_spaces.push(Subspace::full(field, t.dim()));
            continue;
        }
        let mut inter: Option<Subspace> = None;
        for i in 0..=m - 2 {
            let mut s = Subspace::zero(field, t.dim());
            for p in &tensor_spaces[i].words {
                for q in &tensor_spaces[m - 2 - i].words {
                    for r in &r_words {
                        let mut v = vecops::zeros(field, t.ambient());
                        for (wi, c) in r.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut w = p.clone();
                            w.extend_from_slice(&tensor_spaces[2].words[wi]);
                            w.extend_from_slice(q);
                            if let Some(idx) = t.word_index(&w) {
                                v[idx] = &v[idx] + c;
                            }
                        }
                        s.insert(&t.coords(&v));
                    }
                }
            }
            inter = Some(match inter {
                None => s,
                Some(x) => x.intersection(&s),
            });
        }
        top_spaces.push(inter.unwrap());
    }
    // P^m inside A ⊗ A_1^{⊗m}
    let mut full_spaces = Vec::new();
    let mut p_bases: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for m in 0..=top {
        let mut factors = vec![all.clone()];
        factors.extend(std::iter::repeat_n(a1.clone(), m));
        let ws = WordSpace::new(a, factors);
        let t = &tensor_spaces[m];
        let mut s = Subspace::zero(field, ws.dim());
        for k in top_spaces[m].basis() {
            let kw = t.lift(k, field);
            for x in 0..a.dim() {
                let mut v = vecops::zeros(field, ws.ambient());
                for (wi, c) in kw.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut w = vec![x];
                    w.extend_from_slice(&t.words[wi]);
                    if let Some(idx) = ws.word_index(&w) {
                        v[idx] = &v[idx] + c;
                    }
                }
                s.insert(&ws.coords(&v));
            }
        }
        p_bases.push(s.basis().to_vec());
        full_spaces.push(ws);
    }
    // differentials restricted to P^m, landing in the coordinates of stage m-1
    let mut dmats: Vec<Matrix> = vec![Matrix::zeros(field, 0, 0)];
    for m in 1..=top {
        let (src, tgt) = (&full_spaces[m], &full_spaces[m - 1]);
        let cols: Vec<Vec<Scalar>> = p_bases[m]
            .iter()
            .map(|pv| {
                let lifted = src.lift(pv, field);
                let mut v = vecops::zeros(field, tgt.ambient());
                for (wi, c) in lifted.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let w = &src.words[wi];
                    for (g, cg) in a.product(w[0], w[1]) {
                        let mut nw = vec![*g];
                        nw.extend_from_slice(&w[2..]);
                        if let Some(idx) = tgt.word_index(&nw) {
                            v[idx] = &v[idx] + &(c * cg);
                        }
                    }
                }
                tgt.coords(&v)
            })
            .collect();
        dmats.push(Matrix::from_cols(field, tgt.dim(), &cols));
    }
    let mut d2 = true;
    for m in 2..=top {
        if !dmats[m - 1].mul(&dmats[m]).is_zero() {
            d2 = false;
        }
    }
    // augmentation A → A_0 kills the image of d_1
    let deg0: Vec<usize> = a.indices_of_degree(0);
    if top >= 1
        && dmats[1]
            .columns()
            .iter()
            .any(|c| deg0.iter().any(|&i| !c[i].is_zero()))
    {
        d2 = false;
    }
    let rank = |m: usize| -> usize {
        if m == 0 || m > top {
            0
        } else {
            dmats[m].rank()
        }
    };
    let mut exact = Vec::new();
    for m in 0..=n {
        let ker = if m == 0 {
            a.dim() - deg0.len()
        } else {
            p_bases[m].len() - rank(m)
        };
        exact.push(ker == rank(m + 1));
    }
    Ok(KoszulComplexReport {
        top_dims: top_spaces.iter().map(|s| s.dim()).collect(),
        dims: p_bases.iter().map(|b| b.len()).collect(),
        d_squared_zero: d2,
        exact,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub em_koszul: bool,
    /// dim M_i for i ≤ n
    pub module_dims: Vec<usize>,
    /// dim (E_Γ E M)_i for i ≤ n
    pub double_dual_dims: Vec<usize>,
    pub matches: bool,
}

/// E M = Ext*(M, A_0) as a graded Γ-module, computed through degree cap.
pub fn ext_module(m: &Module, gamma: &YonedaAlgebra, cap: usize) -> Result<Module> {
    let a0s = &gamma.summands;
    let alg = Arc::new(gamma.algebra.clone());
    let rm = Arc::new(minimal_resolution(m, cap + 1)?);
    let exts: Vec<ExtData> = a0s
        .iter()
        .map(|s| ExtData::new(rm.clone(), s, cap, None))
        .collect();
    let mut slots = Vec::new();
    for (lam, e) in exts.iter().enumerate() {
        for i in 0..=cap {
            for k in 0..e.dims[i] {
                slots.push((lam, i, k));
            }
        }
    }
    let pos: BTreeMap<(usize, usize, usize), usize> =
        slots.iter().enumerate().map(|(p, &s)| (s, p)).collect();
    let field = m.field();
    let d = slots.len();
    let mut acts = vec![Matrix::zeros(field, d, d); alg.dim()];
    for (g, &(a, b, j, l)) in gamma.classes.iter().enumerate() {
        let ye = &gamma.exts[&(a, b)];
        for (c, &(lam, i, k)) in slots.iter().enumerate() {
            if lam != a || i + j > cap {
                continue;
            }
            let xe = &exts[lam];
            let Some(p) = yoneda_product(xe, i, &xe.reps[i][k], ye, j, &ye.reps[j][l])? else {
                continue;
            };
            if p.is_empty() {
                continue;
            }
            let coords = exts[b].class_coords(i + j, &p)?;
            for (q, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    acts[g].set(pos[&(b, i + j, q)], c, v);
                }
            }
        }
    }
    let degrees = slots.iter().map(|s| s.1 as i32).collect();
    let vertices = slots.iter().map(|s| s.0).collect();
    Module::new(alg, acts, degrees, vertices)
}

/// Koszul duality instance: E M is Koszul and E_Γ E M has the graded dimensions of M.
pub fn duality_check(a: &Arc<Algebra>, m: &Module, n: usize) -> Result<DualityReport> {
    if !is_koszul_algebra(a, n)? || !is_koszul_module(m, n)? {
        return Err(Error::HypothesisFailed(
            "algebra and module must be Koszul".into(),
        ));
    }
    let cap = n + 1;
    let gamma = yoneda_algebra_of_degree_zero(a, cap)?;
    let em = ext_module(m, &gamma, cap)?;
    let res = resolve(&em, n + 1, Some(cap as i32))?;
    let kr = koszul_from_resolution(&res, n);
    let galg = em.alg.clone();
    let g0 = degree_zero_module(&galg);
    let res = Arc::new(res);
    let ee = ExtData::new(res, &g0, n, None);
    let gd = m.graded_dims();
    let module_dims: Vec<usize> = (0..=n as i32)
        .map(|i| gd.get(&i).copied().unwrap_or(0))
        .collect();
    let double_dual_dims: Vec<usize> = (0..=n).map(|i| ee.dims[i]).collect();
    Ok(DualityReport {
        em_koszul: kr.koszul,
        matches: module_dims == double_dual_dims,
        module_dims,
        double_dual_dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub algebra_projective_over_degree_zero: bool,
    pub module_projective_over_degree_zero: bool,
    pub koszul: bool,
    pub reduced_koszul: bool,
    pub hypotheses_hold: bool,
    /// None when a hypothesis is violated
    pub equivalent: Option<bool>,
}

/// M generalized Koszul over A against M̄ classical Koszul over Ā.
pub fn reduction_correspondence_check(
    a: &Arc<Algebra>,
    m: &Module,
    n: usize,
) -> Result<ReductionCheck> {
    let pa = algebra_projective_over_degree_zero(a)?;
    let pm = module_projective_over_degree_zero(m)?;
    let red = radical_reduction(a);
    let mbar = reduce_module(m, &red);
    let k = is_koszul_module(m, n)?;
    let kb = is_koszul_module(&mbar, n)?;
    let hyp = pa && pm;
    Ok(ReductionCheck {
        algebra_projective_over_degree_zero: pa,
        module_projective_over_degree_zero: pm,
        koszul: k,
        reduced_koszul: kb,
        hypotheses_hold: hyp,
        equivalent: hyp.then_some(k == kb),
    })
}
