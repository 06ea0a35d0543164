//! Exact scalars over Q or GF(p) and dense linear algebra.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn gf(p: u64) -> Result<Field, String> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Field::Prime(p))
        } else {
            Err(format!("{p} is not a supported prime"))
        }
    }

    pub fn parse(s: &str) -> Result<Field, String> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("unknown field `{t}`"))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| format!("bad characteristic `{inner}`"))?;
        Field::gf(p)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod(0, p),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(p as i64) as u64, p),
        }
    }

    /// n/d in this field; None when d is not invertible.
    pub fn from_ratio(self, n: &BigInt, d: &BigInt) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(Scalar::Rat(BigRational::new(n.clone(), d.clone()))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let nn = n.mod_floor(&pb).to_u64().unwrap();
                let dd = d.mod_floor(&pb).to_u64().unwrap();
                let dinv = Scalar::Mod(dd, p).inv()?;
                Some(&Scalar::Mod(nn, p) * &dinv)
            }
        }
    }

    /// Parses `3`, `-2`, `3/4`.
    pub fn parse_scalar(self, s: &str) -> Option<Scalar> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<BigInt>().ok()?,
                b.trim().parse::<BigInt>().ok()?,
            ),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        self.from_ratio(&n, &d)
    }

    /// All elements, for finite fields.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Mod(v, p)).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Mod(v, p) => {
                if *v == 0 {
                    return None;
                }
                // extended Euclid
                let (mut a, mut b) = (*v as i128, *p as i128);
                let (mut x0, mut x1) = (1i128, 0i128);
                while b != 0 {
                    let q = a / b;
                    (a, b) = (b, a - q * b);
                    (x0, x1) = (x1, x0 - q * x1);
                }
                Some(Scalar::Mod(x0.rem_euclid(*p as i128) as u64, *p))
            }
        }
    }

    /// Integer representative in [0, p) for prime fields.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod(v, _) => Some(*v),
            Scalar::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod(..) => None,
        }
    }

    fn check(&self, other: &Scalar) {
        debug_assert_eq!(self.field(), other.field(), "mixed fields");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + b) % p, *p),
            _ => panic!("mixed fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + p - b) % p, *p),
            _ => panic!("mixed fields"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => {
                Scalar::Mod(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("mixed fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, p) => Scalar::Mod((p - a) % p, *p),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Vector helpers on `Vec<Scalar>`.
pub mod vecops {
    use super::{Field, Scalar};

    pub fn zeros(field: Field, n: usize) -> Vec<Scalar> {
        vec![field.zero(); n]
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = zeros(field, n);
        v[i] = field.one();
        v
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(|x| x.is_zero())
    }

    /// a += c * b
    pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (x, y) in a.iter_mut().zip(b) {
            if !y.is_zero() {
                *x = &*x + &(c * y);
            }
        }
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| c * x).collect()
    }

    pub fn support(v: &[Scalar]) -> Vec<usize> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    pub data: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let rs: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, &rs)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut r = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * r.cols + j;
                    r.data[idx] = &r.data[idx] + &(a * b);
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vecops::zeros(self.field, self.rows);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, k);
                if !a.is_zero() {
                    out[i] = &out[i] + &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| c * a).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    /// self += c * o
    pub fn add_scaled(&mut self, c: &Scalar, o: &Matrix) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a = &*a + &(c * b);
            }
        }
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            rows: self.rows + o.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place Gauss-Jordan elimination; returns pivot columns.
    fn eliminate(&mut self, limit_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit_cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).inv().unwrap();
            if !inv.is_one() {
                for j in c..self.cols {
                    let v = self.get(r, j);
                    if !v.is_zero() {
                        let nv = v * &inv;
                        self.set(r, j, nv);
                    }
                }
            }
            let prow: Vec<(usize, Scalar)> = (c..self.cols)
                .filter_map(|j| {
                    let v = self.get(r, j);
                    (!v.is_zero()).then(|| (j, v.clone()))
                })
                .collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &prow {
                    let idx = i * self.cols + j;
                    self.data[idx] = &self.data[idx] - &(&f * v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.eliminate(m.cols);
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of {x : self * x = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let r = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vecops::zeros(f, self.cols);
                v[fc] = f.one();
                for (row, &pc) in r.pivots.iter().enumerate() {
                    let a = r.matrix.get(row, fc);
                    if !a.is_zero() {
                        v[pc] = -a;
                    }
                }
                v
            })
            .collect()
    }

    /// Some x with self * x = b, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        Solver::new(self).solve(b)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let s = Solver::new(self);
        if s.rank != self.rows {
            return None;
        }
        let n = self.rows;
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|i| s.solve(&vecops::unit(self.field, n, i)).unwrap())
            .collect();
        Some(Matrix::from_cols(self.field, n, &cols))
    }

    /// Column space basis (as rref rows).
    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.field, self.rows, &self.columns())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reusable solver for a fixed coefficient matrix.
#[derive(Clone, Debug)]
pub struct Solver {
    field: Field,
    rows: usize,
    cols: usize,
    /// T with T*A = R
    transform: Matrix,
    reduced: Matrix,
    pivots: Vec<usize>,
    pub rank: usize,
}

impl Solver {
    pub fn new(a: &Matrix) -> Solver {
        let aug = a.hstack(&Matrix::identity(a.field, a.rows));
        let mut m = aug;
        let pivots = m.eliminate(a.cols);
        let rank = pivots.len();
        let all_rows: Vec<usize> = (0..a.rows).collect();
        let left: Vec<usize> = (0..a.cols).collect();
        let right: Vec<usize> = (a.cols..a.cols + a.rows).collect();
        Solver {
            field: a.field,
            rows: a.rows,
            cols: a.cols,
            reduced: m.select(&all_rows, &left),
            transform: m.select(&all_rows, &right),
            pivots,
            rank,
        }
    }

    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let tb = self.transform.mul_vec(b);
        if tb[self.rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vecops::zeros(self.field, self.cols);
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tb[r].clone();
        }
        let _ = &self.reduced;
        Some(x)
    }
}

/// Subspace of k^n kept as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub field: Field,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            field,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let rows = (0..ambient)
            .map(|i| vecops::unit(field, ambient, i))
            .collect();
        Subspace {
            ambient,
            field,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: Field, ambient: usize, vecs: &[Vec<Scalar>]) -> Subspace {
        if vecs.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vecs);
        let r = m.rref();
        let rows = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient,
            field,
            rows,
            pivots: r.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// v minus its reduction by the echelon basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = -&w[p];
                vecops::axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vecops::is_zero(&self.reduce(v))
    }

    /// Coefficients of v in the echelon basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            let nc = -c;
            vecops::axpy(&mut w, &nc, row);
        }
        vecops::is_zero(&w).then_some(coords)
    }

    /// Adds v; returns false when v was already contained.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().unwrap();
        let w = vecops::scale(&inv, &w);
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -&row[p];
                vecops::axpy(row, &c, &w);
            }
        }
        let pos = self
            .pivots
            .iter()
            .position(|&q| q > p)
            .unwrap_or(self.pivots.len());
        self.rows.insert(pos, w);
        self.pivots.insert(pos, p);
        true
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &o.rows {
            s.insert(v);
        }
        s
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        if self.dim() == 0 || o.dim() == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        let mut cols: Vec<Vec<Scalar>> = self.rows.clone();
        cols.extend(o.rows.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = Matrix::from_cols(self.field, self.ambient, &cols);
        let ker = m.kernel_basis();
        let vecs: Vec<Vec<Scalar>> = ker
            .iter()
            .map(|k| {
                let mut v = vecops::zeros(self.field, self.ambient);
                for (c, row) in k.iter().zip(&self.rows) {
                    vecops::axpy(&mut v, c, row);
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.ambient, &vecs)
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.rows.iter().all(|v| o.contains(v))
    }

    /// Standard basis vectors completing this subspace to the ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    pub fn complement(&self) -> Vec<Vec<Scalar>> {
        self.complement_indices()
            .into_iter()
            .map(|i| vecops::unit(self.field, self.ambient, i))
            .collect()
    }

    /// Vectors from `candidates` extending this subspace to `self + span(candidates)`.
    pub fn extend_from(&self, candidates: &[Vec<Scalar>]) -> Vec<usize> {
        let mut s = self.clone();
        let mut chosen = vec![];
        for (i, c) in candidates.iter().enumerate() {
            if s.insert(c) {
                chosen.push(i);
            }
        }
        chosen
    }
}

/// Results of the basic subspace operations on a pair.
#[derive(Clone, Debug)]
pub struct SubspacePair {
    pub intersection: Subspace,
    pub sum: Subspace,
    pub complement_of_first: Vec<Vec<Scalar>>,
}

pub fn subspace_ops(
    field: Field,
    ambient: usize,
    u: &[Vec<Scalar>],
    v: &[Vec<Scalar>],
) -> SubspacePair {
    let su = Subspace::span(field, ambient, u);
    let sv = Subspace::span(field, ambient, v);
    SubspacePair {
        intersection: su.intersection(&sv),
        sum: su.sum(&sv),
        complement_of_first: su.complement(),
    }
}

pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

/// Integer lift helper used by the radical computation over prime fields.
pub fn lift_matrix(m: &Matrix) -> Vec<Vec<u128>> {
    (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.residue().unwrap() as u128)
                .collect()
        })
        .collect()
}

pub fn rational_abs_bound(x: &Scalar) -> Option<(BigInt, BigInt)> {
    x.as_rational()
        .map(|r| (r.numer().abs(), r.denom().clone()))
}
