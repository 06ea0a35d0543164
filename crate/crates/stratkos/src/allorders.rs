//! Stratification for every linear order, the tensor classification of Ǎ, cokernel closure of F(Δ)
//! and the recursive enumeration of candidate orders.

use crate::algebra::{
    associated_graded, is_directed, opposite, quotient_by_idempotent, tensor_algebra_recognition,
    Algebra, Bimodule, TensorRecognition,
};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar, Subspace};
use crate::repmod::{
    hom_basis, is_iso_to_projective_power, is_projective, projective, projective_decomposition,
    Module,
};
use crate::stratification::{
    delta_filtration, is_quasi_hereditary, is_standardly_stratified, standard_modules,
    FiltrationOutcome, LinearOrder, StandardSystem,
};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// e_μAe_λ = 0 whenever λ ≠ μ.
pub fn is_ss_all_preorders(a: &Algebra) -> bool {
    a.basis.iter().all(|b| b.source == b.target)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JProjectivity {
    pub projective: bool,
    /// vertex → multiplicity of P_vertex, when projective
    pub decomposition: Option<BTreeMap<usize, usize>>,
}

/// J = ⊕_{λ≠μ} e_μAe_λ as a left module.
pub fn j_module(a: &Arc<Algebra>) -> Result<Module> {
    if is_directed(a).is_none() {
        return Err(Error::NotDirected);
    }
    let parts: Vec<Module> = (0..a.num_vertices())
        .map(|l| {
            let p = projective(a, l, 0);
            let gens: Vec<Vec<Scalar>> = (0..p.dim())
                .filter(|&i| p.vertices[i] != l)
                .map(|i| p.unit_vec(i))
                .collect();
            let s = p.generated(&gens);
            p.submodule(&s).0
        })
        .collect();
    Ok(Module::direct_sum(&parts.iter().collect::<Vec<_>>()))
}

pub fn is_j_projective(a: &Arc<Algebra>) -> Result<JProjectivity> {
    let j = j_module(a)?;
    if j.dim() == 0 {
        return Ok(JProjectivity {
            projective: true,
            decomposition: Some(BTreeMap::new()),
        });
    }
    let decomposition = projective_decomposition(&j)?;
    Ok(JProjectivity {
        projective: decomposition.is_some(),
        decomposition,
    })
}

/// tr_{P_λ}(P_μ) as a submodule of P_μ.
fn trace_module(a: &Arc<Algebra>, lambda: usize, mu: usize) -> Module {
    let p = projective(a, mu, 0);
    let t = p.trace_subspace(lambda);
    p.submodule(&t).0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    pub all_projective: bool,
    /// first (λ, μ) with tr_{P_λ}(P_μ) not projective
    pub witness: Option<(usize, usize)>,
}

pub fn all_traces_projective(a: &Arc<Algebra>) -> Result<TraceCheck> {
    let n = a.num_vertices();
    for lambda in 0..n {
        for mu in 0..n {
            let t = trace_module(a, lambda, mu);
            if t.dim() > 0 && !is_projective(&t)? {
                return Ok(TraceCheck {
                    all_projective: false,
                    witness: Some((lambda, mu)),
                });
            }
        }
    }
    Ok(TraceCheck {
        all_projective: true,
        witness: None,
    })
}

/// Limit for the brute-force route.
pub const BRUTE_FORCE_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllOrdersVerdict {
    pub directed: bool,
    /// None when not directed
    pub j_projective: Option<bool>,
    pub via_j: bool,
    pub via_traces: bool,
    pub trace_witness: Option<(usize, usize)>,
    /// None above the brute-force limit
    pub via_brute_force: Option<bool>,
    pub failing_order: Option<LinearOrder>,
    pub agree: bool,
}

impl AllOrdersVerdict {
    pub fn holds(&self) -> bool {
        self.via_traces
    }
}

pub fn is_ss_all_linear_orders(a: &Arc<Algebra>) -> Result<AllOrdersVerdict> {
    let directed = is_directed(a).is_some();
    let j_projective = if directed {
        Some(is_j_projective(a)?.projective)
    } else {
        None
    };
    let via_j = j_projective == Some(true);
    let traces = all_traces_projective(a)?;
    let mut via_brute_force = None;
    let mut failing_order = None;
    if a.num_vertices() <= BRUTE_FORCE_LIMIT {
        let mut ok = true;
        for o in LinearOrder::all(a.num_vertices()) {
            if !is_standardly_stratified(a, &o)? {
                ok = false;
                failing_order = Some(o);
                break;
            }
        }
        via_brute_force = Some(ok);
    }
    let agree = via_j == traces.all_projective && via_brute_force.is_none_or(|b| b == via_j);
    Ok(AllOrdersVerdict {
        directed,
        j_projective,
        via_j,
        via_traces: traces.all_projective,
        trace_witness: traces.witness,
        via_brute_force,
        failing_order,
        agree,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorClass {
    NotAllOrders,
    StandardlyAllOrders,
    ProperlyAllOrders,
}

impl TensorClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TensorClass::NotAllOrders => "not-all-orders",
            TensorClass::StandardlyAllOrders => "standardly-all-orders",
            TensorClass::ProperlyAllOrders => "properly-all-orders",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TensorClassification {
    pub class: TensorClass,
    pub graded: Algebra,
    pub recognition: TensorRecognition,
    /// Ǎ_1 as a left A_0-module
    pub left_projective: bool,
    /// Ǎ_1 as a right A_0-module
    pub right_projective: bool,
}

/// Ǎ_1 over A_0 from the left, or from the right as a module over A_0^op.
fn degree_one_module(b: &Bimodule, left: bool) -> Result<Module> {
    let a0 = if left {
        b.left.clone()
    } else {
        opposite(&b.right)
    };
    let acts = if left {
        b.left_action.clone()
    } else {
        b.right_action.clone()
    };
    let mut vertices = Vec::with_capacity(b.dim);
    for i in 0..b.dim {
        let v = (0..a0.num_vertices())
            .find(|&l| !acts[a0.idempotents[l]].col(i).iter().all(|c| c.is_zero()))
            .ok_or_else(|| Error::Invalid("degree one element outside every vertex".into()))?;
        vertices.push(v);
    }
    Module::new(Arc::new(a0), acts, vec![0; b.dim], vertices)
}

pub fn classify_tensor(a: &Algebra) -> Result<TensorClassification> {
    let graded = associated_graded(a)?;
    let recognition = tensor_algebra_recognition(&graded);
    let b = Bimodule::degree_piece(&graded, 1);
    let left_projective = b.dim == 0 || is_projective(&degree_one_module(&b, true)?)?;
    let right_projective = b.dim == 0 || is_projective(&degree_one_module(&b, false)?)?;
    let class = if !recognition.is_tensor || !left_projective {
        TensorClass::NotAllOrders
    } else if right_projective {
        TensorClass::ProperlyAllOrders
    } else {
        TensorClass::StandardlyAllOrders
    };
    Ok(TensorClassification {
        class,
        graded,
        recognition,
        left_projective,
        right_projective,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationStep {
    /// chosen vertices so far, greatest first
    pub prefix: Vec<usize>,
    pub candidates: Vec<usize>,
    pub maximal: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSet {
    /// complete orders, sorted by their greatest-first sequence
    pub orders: Vec<LinearOrder>,
    pub trace: Vec<EnumerationStep>,
    /// prefixes where the candidate set became empty
    pub dead: Vec<Vec<usize>>,
    /// failures of antisymmetry or transitivity of ≤′
    pub diagnostics: Vec<String>,
}

impl OrderSet {
    pub fn contains(&self, o: &LinearOrder) -> bool {
        self.orders.contains(o)
    }
}

struct Enumerator<'a> {
    names: &'a [String],
    total: usize,
    found: BTreeSet<Vec<usize>>,
    trace: Vec<EnumerationStep>,
    dead: Vec<Vec<usize>>,
    diagnostics: Vec<String>,
}

impl Enumerator<'_> {
    /// `orig[v]` is the original vertex of the current vertex v.
    fn run(&mut self, a: &Arc<Algebra>, orig: &[usize], prefix: Vec<usize>) -> Result<()> {
        let n = a.num_vertices();
        if n == 0 {
            if prefix.len() == self.total {
                self.found.insert(prefix);
            }
            return Ok(());
        }
        let mut cand = Vec::new();
        for l in 0..n {
            let mut ok = true;
            for mu in 0..n {
                if is_iso_to_projective_power(&trace_module(a, l, mu), l)?.is_none() {
                    ok = false;
                    break;
                }
            }
            if ok {
                cand.push(l);
            }
        }
        if cand.is_empty() {
            self.dead.push(prefix);
            return Ok(());
        }
        // le[i][j]: cand[i] ≤′ cand[j]
        let le: Vec<Vec<bool>> = cand
            .iter()
            .map(|&l| {
                cand.iter()
                    .map(|&m| trace_module(a, m, l).dim() > 0)
                    .collect()
            })
            .collect();
        let k = cand.len();
        for i in 0..k {
            for j in 0..k {
                if i != j && le[i][j] && le[j][i] {
                    self.diagnostics.push(format!(
                        "≤′ not antisymmetric on {} and {}",
                        self.names[orig[cand[i]]], self.names[orig[cand[j]]]
                    ));
                }
                for l in 0..k {
                    if le[i][j] && le[j][l] && !le[i][l] {
                        self.diagnostics.push(format!(
                            "≤′ not transitive on {}, {}, {}",
                            self.names[orig[cand[i]]],
                            self.names[orig[cand[j]]],
                            self.names[orig[cand[l]]]
                        ));
                    }
                }
            }
        }
        let maximal: Vec<usize> = (0..k)
            .filter(|&i| (0..k).all(|j| j == i || !le[i][j]))
            .map(|i| cand[i])
            .collect();
        self.trace.push(EnumerationStep {
            prefix: prefix.clone(),
            candidates: cand.iter().map(|&c| orig[c]).collect(),
            maximal: maximal.iter().map(|&c| orig[c]).collect(),
        });
        if maximal.is_empty() {
            self.dead.push(prefix);
            return Ok(());
        }
        for s in maximal {
            let q = quotient_by_idempotent(a, s);
            let mut next_orig = vec![0; q.algebra.num_vertices()];
            for (old, new) in q.vertex_map.iter().enumerate() {
                if let Some(nv) = new {
                    next_orig[*nv] = orig[old];
                }
            }
            let mut p = prefix.clone();
            p.push(orig[s]);
            self.run(&Arc::new(q.algebra), &next_orig, p)?;
        }
        Ok(())
    }
}

/// Candidate orders: repeatedly remove a ≤′-maximal vertex whose traces are powers of its projective.
pub fn enumerate_orders(a: &Arc<Algebra>) -> Result<OrderSet> {
    let mut e = Enumerator {
        names: &a.vertices,
        total: a.num_vertices(),
        found: BTreeSet::new(),
        trace: vec![],
        dead: vec![],
        diagnostics: vec![],
    };
    let orig: Vec<usize> = (0..a.num_vertices()).collect();
    e.run(a, &orig, vec![])?;
    let orders = e
        .found
        .into_iter()
        .map(LinearOrder::from_greatest)
        .collect();
    Ok(OrderSet {
        orders,
        trace: e.trace,
        dead: e.dead,
        diagnostics: e.diagnostics,
    })
}

/// Upper bound on the number of target choices examined per standard module.
pub const CLOSURE_SEARCH_LIMIT: usize = 200_000;

/// Which module the witnessing monomorphism starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    Standard,
    Projective,
}

impl WitnessSource {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessSource::Standard => "standard",
            WitnessSource::Projective => "projective",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CokernelWitness {
    pub lambda: usize,
    /// the source is Δ_λ or P_λ
    pub source: WitnessSource,
    /// P = ⊕ P_μ^{c_μ}, indexed by vertex
    pub multiplicities: Vec<usize>,
    pub map: Matrix,
    pub cokernel: Module,
    pub cokernel_dims: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub closed: bool,
    pub witness: Option<CokernelWitness>,
    /// injective maps whose cokernel was tested
    pub monomorphisms_tested: usize,
}

/// All subspaces of F_p^h of dimension c, as reduced row echelon bases.
fn subspaces(field: Field, h: usize, c: usize) -> Vec<Vec<Vec<Scalar>>> {
    let elems = field.elements().expect("finite field");
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose(h, c, 0, &mut pivots, &mut |piv: &[usize]| {
        // free slots: row r, column j > piv[r], j not a pivot
        let slots: Vec<(usize, usize)> = (0..c)
            .flat_map(|r| {
                ((piv[r] + 1)..h)
                    .filter(|j| !piv.contains(j))
                    .map(move |j| (r, j))
            })
            .collect();
        let mut digits = vec![0usize; slots.len()];
        loop {
            let mut rows = vec![vec![field.zero(); h]; c];
            for (r, &p) in piv.iter().enumerate() {
                rows[r][p] = field.one();
            }
            for (s, &(r, j)) in slots.iter().enumerate() {
                rows[r][j] = elems[digits[s]].clone();
            }
            out.push(rows);
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < elems.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    });
    out
}

fn choose(h: usize, c: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == c {
        f(cur);
        return;
    }
    for i in start..h {
        cur.push(i);
        choose(h, c, i + 1, cur, f);
        cur.pop();
    }
}

fn combine(basis: &[Matrix], coeffs: &[Scalar], rows: usize, cols: usize, field: Field) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            m.add_scaled(c, b);
        }
    }
    m
}

/// Tests every monomorphism L → ⊕P_μ^{c_μ} with L = Δ_λ or L = P_λ, up to automorphisms of the target.
///
/// Components into the copies of one P_μ are taken linearly independent; a dependent tuple
/// factors through fewer copies and changes the cokernel by a projective summand only.
/// Sources Δ_λ alone do not suffice: on a directed algebra with paths x→y→z, x→z and a loop
/// at x, the order z≻x≻y admits no monomorphism Δ_λ → P with bad cokernel, yet P_y ↪ P_x has one.
/// Every reported witness is a genuine failure since both kinds of source lie in F(Δ).
pub fn cokernel_closure_check(a: &Arc<Algebra>, order: &LinearOrder) -> Result<ClosureReport> {
    let field = a.field;
    if !field.is_finite() {
        return Err(Error::FieldNotFinite);
    }
    if !is_standardly_stratified(a, order)? {
        return Err(Error::NotStratified);
    }
    let system = standard_modules(a, order)?;
    let n = a.num_vertices();
    let projs: Vec<Module> = (0..n).map(|m| projective(a, m, 0).ungraded()).collect();
    let mut tested = 0;
    let mut sources = Vec::new();
    for lambda in order.greatest_first() {
        sources.push((
            lambda,
            WitnessSource::Standard,
            system.deltas[lambda].ungraded(),
        ));
    }
    for lambda in order.greatest_first() {
        if system.deltas[lambda].dim() != projs[lambda].dim() {
            sources.push((lambda, WitnessSource::Projective, projs[lambda].clone()));
        }
    }
    for (lambda, source, l) in sources {
        if let Some(w) = search_monos(a, &system, &projs, lambda, source, &l, &mut tested)? {
            return Ok(ClosureReport {
                closed: false,
                witness: Some(w),
                monomorphisms_tested: tested,
            });
        }
    }
    Ok(ClosureReport {
        closed: true,
        witness: None,
        monomorphisms_tested: tested,
    })
}

fn search_monos(
    a: &Arc<Algebra>,
    system: &StandardSystem,
    projs: &[Module],
    lambda: usize,
    source: WitnessSource,
    l: &Module,
    tested: &mut usize,
) -> Result<Option<CokernelWitness>> {
    let field = a.field;
    let n = projs.len();
    let homs: Vec<Vec<Matrix>> = projs.iter().map(|p| hom_basis(l, p, false)).collect();
    // options[μ] = (c, component maps)
    let mut options: Vec<Vec<(usize, Vec<Matrix>)>> = Vec::new();
    let mut count: usize = 1;
    for (mu, hb) in homs.iter().enumerate() {
        let mut opts = Vec::new();
        for c in 0..=hb.len() {
            for rows in subspaces(field, hb.len(), c) {
                let maps = rows
                    .iter()
                    .map(|r| combine(hb, r, projs[mu].dim(), l.dim(), field))
                    .collect();
                opts.push((c, maps));
            }
        }
        count = count.saturating_mul(opts.len());
        options.push(opts);
    }
    if count > CLOSURE_SEARCH_LIMIT {
        let kind = if source == WitnessSource::Standard {
            "Δ"
        } else {
            "P"
        };
        return Err(Error::SearchTooLarge(format!(
            "{count} target choices for {kind}_{}",
            a.vertices[lambda]
        )));
    }
    let mut choices: Vec<Vec<usize>> = vec![vec![]];
    for opts in &options {
        choices = choices
            .into_iter()
            .flat_map(|ch| {
                (0..opts.len()).map(move |i| {
                    let mut c = ch.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    let total = |ch: &Vec<usize>| (0..n).map(|m| options[m][ch[m]].0).sum::<usize>();
    choices.sort_by_key(|ch| (total(ch), ch.clone()));
    for ch in choices {
        if total(&ch) == 0 {
            continue;
        }
        let mut parts: Vec<&Module> = Vec::new();
        let mut blocks: Vec<&Matrix> = Vec::new();
        let mut multiplicities = vec![0; n];
        for mu in 0..n {
            let (c, maps) = &options[mu][ch[mu]];
            multiplicities[mu] = *c;
            for m in maps {
                parts.push(&projs[mu]);
                blocks.push(m);
            }
        }
        let target = Module::direct_sum(&parts);
        let mut f = blocks[0].clone();
        for b in &blocks[1..] {
            f = f.vstack(b);
        }
        if f.rank() != l.dim() {
            continue;
        }
        *tested += 1;
        let image = Subspace::span(field, target.dim(), &f.columns());
        let (coker, _) = target.quotient(&image);
        if let FiltrationOutcome::NotFiltered { .. } = delta_filtration(&coker, system)? {
            let cokernel_dims = coker.vertex_dims();
            return Ok(Some(CokernelWitness {
                lambda,
                source,
                multiplicities,
                map: f,
                cokernel: coker,
                cokernel_dims,
            }));
        }
    }
    Ok(None)
}

/// For quasi-hereditary A: closure holds iff every Δ_λ is simple and A is directed.
pub fn qh_cokernel_criterion(a: &Arc<Algebra>, order: &LinearOrder) -> Result<bool> {
    if !is_quasi_hereditary(a, order)? {
        return Err(Error::NotQuasiHereditary);
    }
    let system = standard_modules(a, order)?;
    let simple = system
        .deltas
        .iter()
        .all(|d| d.radical_subspace().dim() == 0);
    Ok(simple && is_directed(a).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_presentation, Presentation, Quiver};

    fn build(q: Quiver, rels: &[&str], field: Field) -> Arc<Algebra> {
        let mut p = Presentation::new("T", field, q);
        for r in rels {
            p.add_relation(r).unwrap();
        }
        Arc::new(build_from_presentation(&p, 200).unwrap())
    }

    #[test]
    fn subspace_counts() {
        let f = Field::Prime(2);
        assert_eq!(subspaces(f, 4, 1).len(), 15);
        assert_eq!(subspaces(f, 4, 2).len(), 35);
        assert_eq!(subspaces(f, 3, 0).len(), 1);
        assert_eq!(subspaces(Field::Prime(3), 2, 1).len(), 4);
    }

    #[test]
    fn hereditary_a2() {
        let q = Quiver::new(&["x", "y"]).with_arrow("a", "x", "y", 1);
        let a = build(q, &[], Field::Prime(2));
        let j = is_j_projective(&a).unwrap();
        assert!(j.projective);
        assert_eq!(j.decomposition.unwrap(), BTreeMap::from([(1, 1)]));
        let v = is_ss_all_linear_orders(&a).unwrap();
        assert!(v.holds() && v.agree);
        assert_eq!(
            classify_tensor(&a).unwrap().class,
            TensorClass::ProperlyAllOrders
        );
        let o = LinearOrder::parse("y,x", &a.vertices).unwrap();
        assert!(qh_cokernel_criterion(&a, &o).unwrap());
        assert!(cokernel_closure_check(&a, &o).unwrap().closed);
        assert_eq!(enumerate_orders(&a).unwrap().orders.len(), 1);
    }

    #[test]
    fn one_vertex() {
        let q = Quiver::new(&["x"]).with_arrow("d", "x", "x", 1);
        let a = build(q, &["d*d"], Field::Prime(2));
        let s = enumerate_orders(&a).unwrap();
        assert_eq!(s.orders, vec![LinearOrder::from_least(vec![0])]);
        assert!(is_ss_all_preorders(&a));
        assert!(all_traces_projective(&a).unwrap().all_projective);
    }
}
