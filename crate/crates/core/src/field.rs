//! Coefficient fields and sparse linear algebra over them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::matrix::IntegerMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("bad field `{0}`: expected `q` or `f<prime>` with prime < 2^31")]
    BadField(String),
}

/// Which coefficient field a computation runs over.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl FieldKind {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(FieldError::BadField(format!("f{p}")));
        }
        Ok(FieldKind::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => *p,
        }
    }
}

pub fn is_prime(p: u64) -> bool {
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

impl FromStr for FieldKind {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" {
            return Ok(FieldKind::Rational);
        }
        let digits = lower
            .strip_prefix("fp")
            .or_else(|| lower.strip_prefix('f'))
            .ok_or_else(|| FieldError::BadField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::BadField(s.to_string()))?;
        FieldKind::prime(p).map_err(|_| FieldError::BadField(s.to_string()))
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl Serialize for FieldKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn embed_i64(&self, x: i64) -> Self::Elem;
    fn embed_bigint(&self, x: &BigInt) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn embed_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn embed_bigint(&self, x: &BigInt) -> BigRational {
        BigRational::from_integer(x.clone())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        FieldKind::prime(p).map(|_| PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        let ext = (*a as i64).extended_gcd(&(self.p as i64));
        ext.x.rem_euclid(self.p as i64) as u64
    }
    fn embed_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn embed_bigint(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits")
    }
}

/// Runs `$body` with `$f` bound to the concrete field selected by `$kind`.
#[macro_export]
macro_rules! with_field {
    ($kind:expr, |$f:ident| $body:expr) => {
        match $kind {
            $crate::field::FieldKind::Rational => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldKind::Prime(p) => {
                let $f = $crate::field::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `target - k * src`.
pub fn axpy<F: Field>(field: &F, target: &SparseVec<F::Elem>, k: &F::Elem, src: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        if j >= src.len() || (i < target.len() && target[i].0 < src[j].0) {
            out.push(target[i].clone());
            i += 1;
        } else if i >= target.len() || src[j].0 < target[i].0 {
            out.push((src[j].0, field.neg(&field.mul(k, &src[j].1))));
            j += 1;
        } else {
            let v = field.sub(&target[i].1, &field.mul(k, &src[j].1));
            if !field.is_zero(&v) {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, v: &SparseVec<F::Elem>, k: &F::Elem) -> SparseVec<F::Elem> {
    if field.is_zero(k) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(x, k))).collect()
}

/// Accumulates unsorted `(index, value)` terms into a sparse vector.
pub fn collect_terms<F: Field>(field: &F, mut terms: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some((li, lv)) if *li == i => *lv = field.add(lv, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

/// Column-major sparse matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn from_integer<F: Field<Elem = E>>(field: &F, m: &IntegerMatrix) -> Self {
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            columns: m
                .columns()
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|(r, v)| (*r, field.embed_bigint(v)))
                        .filter(|(_, v)| !field.is_zero(v))
                        .collect()
                })
                .collect(),
        }
    }

    /// `self * v`.
    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut terms = Vec::new();
        for (k, a) in v {
            for (r, b) in &self.columns[*k] {
                terms.push((*r, field.mul(a, b)));
            }
        }
        collect_terms(field, terms)
    }

    /// `self * rhs`.
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, rhs: &SparseMatrix<E>) -> SparseMatrix<E> {
        assert_eq!(self.cols, rhs.rows);
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns: rhs.columns.iter().map(|c| self.apply(field, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

struct EchelonRow<E> {
    vector: SparseVec<E>,
    coef: SparseVec<E>,
}

/// Row-echelon basis built incrementally. Each stored row has a distinct
/// leading index normalized to one and remembers an optional coefficient
/// vector expressing it in terms of the inserted generators.
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<EchelonRow<F::Elem>>,
    pivots: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` by leading entries; returns the remainder and updated `coef`.
    pub fn reduce(&self, mut v: SparseVec<F::Elem>, mut coef: SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        while let Some((lead, a)) = v.first().cloned() {
            let Some(&row) = self.pivots.get(&lead) else { break };
            let row = &self.rows[row];
            v = axpy(f, &v, &a, &row.vector);
            if !row.coef.is_empty() {
                coef = axpy(f, &coef, &a, &row.coef);
            }
        }
        (v, coef)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v.clone(), Vec::new()).0.is_empty()
    }

    /// Inserts `v` (with its coefficient vector). Returns the remainder and
    /// coefficients when `v` was already in the span, `None` if it was added.
    pub fn insert(&mut self, v: SparseVec<F::Elem>, coef: SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let (rem, coef) = self.reduce(v, coef);
        match rem.first() {
            None => Some(coef),
            Some((lead, a)) => {
                let inv = self.field.inv(a);
                let lead = *lead;
                let row = EchelonRow {
                    vector: scale(&self.field, &rem, &inv),
                    coef: scale(&self.field, &coef, &inv),
                };
                self.pivots.insert(lead, self.rows.len());
                self.rows.push(row);
                None
            }
        }
    }
}

/// Rank of an integer matrix after reduction into `field`.
pub fn rank_over<F: Field>(field: &F, m: &IntegerMatrix) -> usize {
    let sm = SparseMatrix::from_integer(field, m);
    rank_sparse(field, &sm)
}

pub fn rank_sparse<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    let mut ech = Echelon::new(field.clone());
    for col in &m.columns {
        ech.insert(col.clone(), Vec::new());
    }
    ech.rank()
}

/// Basis of the null space of `m`, in order of discovery by column.
pub fn kernel_basis<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Vec<SparseVec<F::Elem>> {
    let mut ech = Echelon::new(field.clone());
    let mut kernel = Vec::new();
    for (k, col) in m.columns.iter().enumerate() {
        if let Some(coef) = ech.insert(col.clone(), vec![(k, field.one())]) {
            kernel.push(coef);
        }
    }
    kernel
}
