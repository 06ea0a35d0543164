//! Radical of A_0, primitive idempotents and algebra generators.

use super::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{lift_matrix, vecops, Field, Matrix, Scalar, Solver, Subspace};
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

/// A primitive idempotent ε ≤ e_vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitive {
    pub vertex: usize,
    pub element: Vec<Scalar>,
}

impl Primitive {
    pub fn is_vertex(&self, a: &Algebra) -> bool {
        self.element == a.e(self.vertex)
    }
}

fn restricted_left(a: &Algebra, idx: &[usize], k: usize) -> Matrix {
    let n = idx.len();
    let pos = |g: usize| idx.iter().position(|&i| i == g);
    let mut m = Matrix::zeros(a.field, n, n);
    for (c, &j) in idx.iter().enumerate() {
        for (g, v) in a.product(idx[k], j) {
            if let Some(r) = pos(*g) {
                m.set(r, c, v.clone());
            }
        }
    }
    m
}

fn trace(m: &Matrix) -> Scalar {
    let mut t = m.field.zero();
    for i in 0..m.rows {
        t = &t + m.get(i, i);
    }
    t
}

fn mat_mul_mod(a: &[Vec<u128>], b: &[Vec<u128>], m: u128) -> Vec<Vec<u128>> {
    let n = a.len();
    let mut out = vec![vec![0u128; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % m;
            }
        }
    }
    out
}

fn trace_power_mod(l: &[Vec<u128>], e: u64, m: u128) -> u128 {
    let n = l.len();
    let mut result: Vec<Vec<u128>> = (0..n)
        .map(|i| (0..n).map(|j| u128::from(i == j)).collect())
        .collect();
    let mut base = l.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul_mod(&result, &base, m);
        }
        base = mat_mul_mod(&base, &base, m);
        e >>= 1;
    }
    (0..n).fold(0, |t, i| (t + result[i][i]) % m)
}

/// Radical of the subalgebra spanned by `idx`, returned as vectors of A.
pub(crate) fn radical_of_subalgebra(a: &Algebra, idx: &[usize]) -> Vec<Vec<Scalar>> {
    let n = idx.len();
    if n == 0 {
        return vec![];
    }
    let field = a.field;
    let ls: Vec<Matrix> = (0..n).map(|k| restricted_left(a, idx, k)).collect();
    let traces: Vec<Scalar> = ls.iter().map(trace).collect();
    let pos = |g: usize| idx.iter().position(|&i| i == g);
    // trace form B(i, j) = Tr(L_{b_i b_j})
    let mut form = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            let mut v = field.zero();
            for (g, c) in a.product(idx[i], idx[j]) {
                if let Some(m) = pos(*g) {
                    v = &v + &(c * &traces[m]);
                }
            }
            form.set(j, i, v);
        }
    }
    let mut ideal: Vec<Vec<Scalar>> = form.kernel_basis();
    if let Field::Prime(p) = field {
        let p128 = p as u128;
        let mut i = 1u32;
        while (p as u128).checked_pow(i).is_some_and(|q| q <= n as u128) && !ideal.is_empty() {
            let modulus = p128.pow(i + 1);
            let pe = p.pow(i);
            let mut g = Matrix::zeros(field, n, ideal.len());
            for (ui, u) in ideal.iter().enumerate() {
                for j in 0..n {
                    // y = u · b_j in subalgebra coordinates
                    let mut y = vecops::zeros(field, n);
                    for (k, uk) in u.iter().enumerate() {
                        if uk.is_zero() {
                            continue;
                        }
                        for (gidx, c) in a.product(idx[k], idx[j]) {
                            if let Some(m) = pos(*gidx) {
                                y[m] = &y[m] + &(uk * c);
                            }
                        }
                    }
                    let mut ly = Matrix::zeros(field, n, n);
                    for (m, ym) in y.iter().enumerate() {
                        if !ym.is_zero() {
                            ly.add_scaled(ym, &ls[m]);
                        }
                    }
                    let lifted = lift_matrix(&ly);
                    let t = trace_power_mod(&lifted, pe, modulus);
                    let q = t / p128.pow(i);
                    g.set(j, ui, field.from_i64((q % p128) as i64));
                }
            }
            let ker = g.kernel_basis();
            ideal = ker
                .iter()
                .map(|k| {
                    let mut v = vecops::zeros(field, n);
                    for (c, u) in k.iter().zip(&ideal) {
                        vecops::axpy(&mut v, c, u);
                    }
                    v
                })
                .collect();
            i += 1;
        }
    }
    ideal
        .into_iter()
        .map(|v| {
            let mut full = a.zero_vec();
            for (k, c) in v.into_iter().enumerate() {
                full[idx[k]] = c;
            }
            full
        })
        .collect()
}

pub(crate) fn radical_of_degree_zero(a: &Algebra) -> Vec<Vec<Scalar>> {
    let idx = a.indices_of_degree(0);
    let vecs = radical_of_subalgebra(a, &idx);
    let mut out = Vec::new();
    for s in a.homogenize(&vecs).values() {
        out.extend(s.basis().iter().cloned());
    }
    out
}

pub(crate) fn algebra_generators(a: &Algebra) -> Vec<Vec<Scalar>> {
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..a.dim() {
        if a.basis[i].degree == 0 && !a.idempotents.contains(&i) {
            gens.push(a.basis_vec(i));
        }
    }
    let rad = a.radical();
    let mut products = Vec::new();
    for x in &rad {
        for y in &rad {
            let z = a.mul(x, y);
            if !vecops::is_zero(&z) {
                products.push(z);
            }
        }
    }
    let rad_blocks = a.homogenize(&rad);
    let rad2_blocks = a.homogenize(&products);
    for (key, block) in rad_blocks {
        if key.2 == 0 {
            continue;
        }
        let base = rad2_blocks
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(a.field, a.dim()));
        let cand = block.basis().to_vec();
        for k in base.extend_from(&cand) {
            gens.push(cand[k].clone());
        }
    }
    gens
}

/// Characteristic polynomial coefficients c_0..c_n (monic) by Faddeev-LeVerrier.
fn char_poly(m: &Matrix) -> Option<Vec<Scalar>> {
    let n = m.rows;
    let field = m.field;
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[n] = field.one();
    let mut mk = Matrix::zeros(field, n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n + 1 - k];
            next.set(i, i, v);
        }
        mk = next;
        let t = trace(&m.mul(&mk));
        let kinv = field.from_i64(k as i64).inv()?;
        coeffs[n - k] = -&(&t * &kinv);
    }
    Some(coeffs)
}

fn divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let v = v.abs();
    let small = v.to_u64().filter(|&x| x <= 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial with rational coefficients.
fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let field = Field::Rationals;
    let rats: Vec<num::BigRational> = coeffs
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect::<Option<_>>()?;
    let lcm = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * num::BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.contains(&field.zero()) {
            roots.push(field.zero());
        }
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let a0 = ints[0].clone();
    let an = ints.last().unwrap().clone();
    let ps = divisors(&a0)?;
    let qs = divisors(&an)?;
    let eval = |x: &num::BigRational| {
        let mut acc = num::BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * x + num::BigRational::from_integer(c.clone());
        }
        acc
    };
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let x = num::BigRational::new(p * BigInt::from(sign), q.clone());
                if eval(&x).is_zero() {
                    let s = Scalar::Rat(x);
                    if !roots.contains(&s) {
                        roots.push(s);
                    }
                }
            }
        }
    }
    Some(roots)
}

fn eigen_candidates(m: &Matrix) -> Result<Vec<Scalar>> {
    match m.field {
        Field::Prime(_) => Ok(m.field.elements().unwrap()),
        Field::Rationals => {
            let cp = char_poly(m)
                .ok_or_else(|| Error::Unsupported("characteristic polynomial".into()))?;
            rational_roots(&cp)
                .ok_or_else(|| Error::Unsupported("coefficients too large for root search".into()))
        }
    }
}

/// Basis of eB modulo R, as representative vectors.
fn quotient_reps(a: &Algebra, e: &[Scalar], corner: &[usize], r: &Subspace) -> Vec<Vec<Scalar>> {
    let mut s = r.clone();
    let mut reps = Vec::new();
    for &b in corner {
        let v = a.mul(e, &a.basis_vec(b));
        if s.insert(&v) {
            reps.push(v);
        }
    }
    reps
}

fn refine_corner(
    a: &Algebra,
    lambda: usize,
    corner: &[usize],
    r: &Subspace,
) -> Result<Vec<Vec<Scalar>>> {
    let field = a.field;
    for &i in corner {
        for &j in corner {
            let d = vecops::sub(
                &a.mul(&a.basis_vec(i), &a.basis_vec(j)),
                &a.mul(&a.basis_vec(j), &a.basis_vec(i)),
            );
            if !r.contains(&d) {
                return Err(Error::Unsupported(format!(
                    "non-commutative semisimple corner at vertex {}",
                    a.vertices[lambda]
                )));
            }
        }
    }
    let e_l = a.e(lambda);
    let mut idems = vec![e_l.clone()];
    for &c in corner {
        if c == a.idempotents[lambda] {
            continue;
        }
        let mut next = Vec::new();
        for e in &idems {
            let reps = quotient_reps(a, e, corner, r);
            if reps.len() <= 1 {
                next.push(e.clone());
                continue;
            }
            let x = a.mul(&a.mul(e, &a.basis_vec(c)), e);
            let mut cols = reps.clone();
            cols.extend(r.basis().iter().cloned());
            let solver = Solver::new(&Matrix::from_cols(field, a.dim(), &cols));
            let k = reps.len();
            let mut lmat = Matrix::zeros(field, k, k);
            for (col, w) in reps.iter().enumerate() {
                let z = solver
                    .solve(&a.mul(&x, w))
                    .expect("corner is closed under products");
                for row in 0..k {
                    lmat.set(row, col, z[row].clone());
                }
            }
            let mut eig = Vec::new();
            let mut total = 0;
            for t in eigen_candidates(&lmat)? {
                let shifted = lmat.sub(&Matrix::identity(field, k).scale(&t));
                let nullity = k - shifted.rank();
                if nullity > 0 {
                    eig.push(t);
                    total += nullity;
                }
            }
            if total != k {
                return Err(Error::Unsupported(format!(
                    "semisimple corner at vertex {} does not split over {}",
                    a.vertices[lambda], field
                )));
            }
            if eig.len() == 1 {
                next.push(e.clone());
                continue;
            }
            for t in &eig {
                let mut f = e.clone();
                for s in &eig {
                    if s == t {
                        continue;
                    }
                    let factor = vecops::sub(&x, &vecops::scale(s, e));
                    let inv = (t - s).inv().unwrap();
                    f = vecops::scale(&inv, &a.mul(&f, &factor));
                }
                next.push(f);
            }
        }
        idems = next;
    }
    for e in &idems {
        if quotient_reps(a, e, corner, r).len() != 1 {
            return Err(Error::Unsupported(format!(
                "could not split the semisimple corner at vertex {}",
                a.vertices[lambda]
            )));
        }
    }
    // lift to orthogonal idempotents of A
    let m = idems.len();
    let mut acc = a.zero_vec();
    let mut out = Vec::new();
    for u in idems.iter().take(m - 1) {
        let comp = vecops::sub(&e_l, &acc);
        let mut f = a.mul(&a.mul(&comp, u), &comp);
        let mut steps = 0;
        loop {
            let f2 = a.mul(&f, &f);
            if f2 == f {
                break;
            }
            let f3 = a.mul(&f2, &f);
            f = vecops::sub(
                &vecops::scale(&field.from_i64(3), &f2),
                &vecops::scale(&field.from_i64(2), &f3),
            );
            steps += 1;
            if steps > 64 {
                return Err(Error::Unsupported(
                    "idempotent lifting did not converge".into(),
                ));
            }
        }
        acc = vecops::add(&acc, &f);
        out.push(f);
    }
    out.push(vecops::sub(&e_l, &acc));
    Ok(out)
}

pub(crate) fn primitive_idempotents(a: &Algebra) -> Result<Vec<Primitive>> {
    let n = a.dim();
    let rad0 = a.radical_degree_zero();
    let mut out = Vec::new();
    for lambda in 0..a.num_vertices() {
        let corner: Vec<usize> = (0..n)
            .filter(|&i| {
                a.basis[i].degree == 0 && a.basis[i].source == lambda && a.basis[i].target == lambda
            })
            .collect();
        let projected: Vec<Vec<Scalar>> = rad0
            .iter()
            .map(|v| {
                let mut w = a.zero_vec();
                for &i in &corner {
                    w[i] = v[i].clone();
                }
                w
            })
            .collect();
        let r = Subspace::span(a.field, n, &projected);
        if corner.len() - r.dim() == 1 {
            out.push(Primitive {
                vertex: lambda,
                element: a.e(lambda),
            });
            continue;
        }
        for f in refine_corner(a, lambda, &corner, &r)? {
            out.push(Primitive {
                vertex: lambda,
                element: f,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisElem;

    /// Group algebra of Z/m over a field, one vertex.
    pub(crate) fn cyclic_group_algebra(m: usize, field: Field) -> Algebra {
        let basis = (0..m)
            .map(|i| BasisElem {
                label: format!("g{i}"),
                source: 0,
                target: 0,
                degree: 0,
            })
            .collect();
        let mult = (0..m)
            .map(|i| (0..m).map(|j| vec![((i + j) % m, field.one())]).collect())
            .collect();
        Algebra::from_structure("kC", field, vec!["x".into()], basis, mult, vec![0]).unwrap()
    }

    fn s3_algebra(field: Field) -> Algebra {
        // permutations of {0,1,2} as arrays
        let mut perms: Vec<[usize; 3]> = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if a != b && b != c && a != c {
                        perms.push([a, b, c]);
                    }
                }
            }
        }
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let basis = (0..6)
            .map(|i| BasisElem {
                label: format!("s{i}"),
                source: 0,
                target: 0,
                degree: 0,
            })
            .collect();
        let mult = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        let (p, q) = (perms[i], perms[j]);
                        vec![(idx([p[q[0]], p[q[1]], p[q[2]]]), field.one())]
                    })
                    .collect()
            })
            .collect();
        Algebra::from_structure(
            "kS3",
            field,
            vec!["x".into()],
            basis,
            mult,
            vec![idx([0, 1, 2])],
        )
        .unwrap()
    }

    #[test]
    fn group_algebra_radicals() {
        let gf = |p| Field::gf(p).unwrap();
        assert_eq!(
            cyclic_group_algebra(2, gf(2)).radical_degree_zero().len(),
            1
        );
        assert_eq!(
            cyclic_group_algebra(2, gf(3)).radical_degree_zero().len(),
            0
        );
        assert_eq!(
            cyclic_group_algebra(3, gf(3)).radical_degree_zero().len(),
            2
        );
        assert_eq!(
            cyclic_group_algebra(4, gf(2)).radical_degree_zero().len(),
            3
        );
        assert_eq!(
            cyclic_group_algebra(3, Field::Rationals)
                .radical_degree_zero()
                .len(),
            0
        );
        assert_eq!(s3_algebra(gf(2)).radical_degree_zero().len(), 1);
        assert_eq!(s3_algebra(gf(3)).radical_degree_zero().len(), 4);
    }

    #[test]
    fn split_group_algebra_primitives() {
        let a = cyclic_group_algebra(2, Field::gf(3).unwrap());
        let p = a.primitives().unwrap();
        assert_eq!(p.len(), 2);
        for x in p {
            assert_eq!(a.mul(&x.element, &x.element), x.element);
        }
        assert!(vecops::is_zero(&a.mul(&p[0].element, &p[1].element)));
        let q = cyclic_group_algebra(2, Field::Rationals);
        assert_eq!(q.primitives().unwrap().len(), 2);
        let local = cyclic_group_algebra(2, Field::gf(2).unwrap());
        assert_eq!(local.primitives().unwrap().len(), 1);
    }

    #[test]
    fn non_split_is_unsupported() {
        // Q[C3] = Q x Q(ω)
        let a = cyclic_group_algebra(3, Field::Rationals);
        assert!(matches!(a.primitives(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rational_root_search() {
        let f = Field::Rationals;
        // (x - 1/2)(x + 3) x = x^3 + 5/2 x^2 - 3/2 x
        let roots = rational_roots(&[
            f.zero(),
            f.parse_scalar("-3/2").unwrap(),
            f.parse_scalar("5/2").unwrap(),
            f.one(),
        ])
        .unwrap();
        assert_eq!(roots.len(), 3);
    }
}
