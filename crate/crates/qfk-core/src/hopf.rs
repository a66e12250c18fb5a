//! The Hopf algebra `H = L (x) kG (x) R` on the triangular basis
//! `v^a g w^b`. Multiplication rewrites straddling products `w^b v^a'`
//! letter by letter through the relation
//! `w_i v_j = v_j w_i + delta_ij chi_j(g_i) c_i (f_j - g_i)`;
//! every application strictly lowers the combined degree, so the rewriting
//! terminates. The coproduct is the multiplicative extension of
//! `Delta(v_j) = v_j (x) 1 + f_j (x) v_j`, `Delta(g) = g (x) g`,
//! `Delta(w_i) = 1 (x) w_i + w_i (x) g_i`, and the antipode is assembled
//! from `S(v_j) = -f_j^{-1} v_j`, `S(g) = g^{-1}`, `S(w_i) = -w_i g_i^{-1}`
//! and certified by the axiom suite.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::datum::QlsDatum;
use crate::linalg::Matrix;
use crate::prenichols::{check_degree_one_symmetry, BraidedAlgebra, QlsAlgebra, Side, SparseVec};
use crate::scalar::{Scalar, ScalarField};
use crate::util::SplitMix64;

/// A sparse linear combination over `usize`-indexed basis elements.
/// Canonical: zero coefficients are never stored, so `==` is linear equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseElem(pub BTreeMap<usize, Scalar>);

impl SparseElem {
    pub fn zero() -> SparseElem {
        SparseElem(BTreeMap::new())
    }

    pub fn basis(idx: usize, field: &ScalarField) -> SparseElem {
        let mut m = BTreeMap::new();
        m.insert(idx, field.one());
        SparseElem(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, idx: usize, c: &Scalar, field: &ScalarField) {
        if field.is_zero(c) {
            return;
        }
        match self.0.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add(e.get(), c);
                if field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseElem, c: &Scalar, field: &ScalarField) {
        if field.is_zero(c) {
            return;
        }
        for (idx, s) in &other.0 {
            self.add_term(*idx, &field.mul(s, c), field);
        }
    }

    pub fn scale(&self, c: &Scalar, field: &ScalarField) -> SparseElem {
        let mut out = SparseElem::zero();
        out.add_scaled(self, c, field);
        out
    }

    pub fn add(&self, other: &SparseElem, field: &ScalarField) -> SparseElem {
        let mut out = self.clone();
        out.add_scaled(other, &field.one(), field);
        out
    }

    pub fn sub(&self, other: &SparseElem, field: &ScalarField) -> SparseElem {
        let mut out = self.clone();
        out.add_scaled(other, &field.from_i64(-1), field);
        out
    }

    pub fn to_dense(&self, dim: usize, field: &ScalarField) -> Vec<Scalar> {
        let mut v = vec![field.zero(); dim];
        for (i, c) in &self.0 {
            v[*i] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[Scalar], field: &ScalarField) -> SparseElem {
        let mut out = SparseElem::zero();
        for (i, c) in v.iter().enumerate() {
            out.add_term(i, c, field);
        }
        out
    }
}

/// Element of `H` in triangular-basis coordinates.
pub type HElement = SparseElem;

/// Element of `H (x) H`; key = `i * dim + j`.
pub type TensorElem = SparseElem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HopfError {
    InvalidDatum(Vec<String>),
    /// Antipode matrix singular: impossible for a correct build, fatal.
    SingularAntipode,
    /// Exhaustive verification requested beyond the cost guard.
    CostGuard {
        dim: usize,
        limit: usize,
    },
}

impl fmt::Display for HopfError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfError::InvalidDatum(v) => write!(out, "invalid datum: {}", v.join("; ")),
            HopfError::SingularAntipode => write!(out, "antipode matrix is singular"),
            HopfError::CostGuard { dim, limit } => {
                write!(out, "exhaustive mode limited to dim <= {limit}, got {dim}")
            }
        }
    }
}

impl std::error::Error for HopfError {}

/// Verification mode for the axiom suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { tuples: usize, seed: u64 },
}

/// Outcome of an axiom run: counts per law plus human-readable witnesses of
/// any failures (there must be none).
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub struct HopfAlgebraH {
    pub datum: QlsDatum,
    pub left: BraidedAlgebra,
    pub right: BraidedAlgebra,
    field: ScalarField,
    dim_l: usize,
    dim_g: usize,
    dim_r: usize,
    dim: usize,
    /// Normal forms of `w^b . v^a'`, `dim_r x dim_l`.
    straddle: Vec<Vec<HElement>>,
    /// Structure constants: a full table at small dimensions, a concurrent
    /// pure-function cache beyond the threshold.
    mult: MultTable,
    /// `Delta` of each basis element over pair keys `i * dim + j`.
    coprod: Vec<TensorElem>,
    counit: Vec<Scalar>,
    zdeg: Vec<i64>,
    antipode: OnceLock<Result<AntipodeTables, HopfError>>,
}

/// Above this dimension the multiplication table is filled on demand
/// instead of materialized up front.
const EAGER_MULT_LIMIT: usize = 1024;

enum MultTable {
    Eager(Vec<Vec<Arc<HElement>>>),
    Lazy(RwLock<HashMap<(usize, usize), Arc<HElement>>>),
}

struct AntipodeTables {
    cols: Vec<HElement>,
    inv_cols: Vec<HElement>,
}

impl HopfAlgebraH {
    /// Builds `H` from a validated datum with quantum-linear-space factors.
    pub fn build(datum: &QlsDatum) -> Result<HopfAlgebraH, HopfError> {
        let report = datum.validate();
        if !report.ok() {
            return Err(HopfError::InvalidDatum(
                report.violations.iter().map(|v| v.to_string()).collect(),
            ));
        }
        let left = BraidedAlgebra::Qls(QlsAlgebra::build(datum, Side::Left));
        let right = BraidedAlgebra::Qls(QlsAlgebra::build(datum, Side::Right));
        Self::build_with_factors(datum, left, right)
    }

    /// Builds `H` over explicitly supplied braided factors (imported
    /// pre-Nichols algebras included). The degree-1 symmetry hypothesis is
    /// the only cross-side condition checkable for imports.
    pub fn build_with_factors(
        datum: &QlsDatum,
        left: BraidedAlgebra,
        right: BraidedAlgebra,
    ) -> Result<HopfAlgebraH, HopfError> {
        check_degree_one_symmetry(&left, &right, &datum.field, &datum.group)
            .map_err(|e| HopfError::InvalidDatum(vec![e.to_string()]))?;
        let field = datum.field.clone();
        let dim_l = left.dim();
        let dim_g = datum.group.order() as usize;
        let dim_r = right.dim();
        let dim = dim_l * dim_g * dim_r;
        let mut h = HopfAlgebraH {
            datum: datum.clone(),
            left,
            right,
            field,
            dim_l,
            dim_g,
            dim_r,
            dim,
            straddle: vec![],
            mult: MultTable::Lazy(RwLock::new(HashMap::new())),
            coprod: vec![],
            counit: vec![],
            zdeg: vec![],
            antipode: OnceLock::new(),
        };
        h.build_tables()?;
        Ok(h)
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dim_l, self.dim_g, self.dim_r)
    }

    #[inline]
    pub fn index(&self, a: usize, g: usize, b: usize) -> usize {
        (a * self.dim_g + g) * self.dim_r + b
    }

    #[inline]
    pub fn split(&self, idx: usize) -> (usize, usize, usize) {
        let b = idx % self.dim_r;
        let rest = idx / self.dim_r;
        (rest / self.dim_g, rest % self.dim_g, b)
    }

    /// Basis index of the grouplike `g`.
    pub fn grouplike(&self, g_idx: usize) -> usize {
        self.index(self.left.unit(), g_idx, self.right.unit())
    }

    pub fn one_index(&self) -> usize {
        self.grouplike(0)
    }

    pub fn one(&self) -> HElement {
        SparseElem::basis(self.one_index(), &self.field)
    }

    /// Basis index of the generator `v_i`.
    pub fn v_index(&self, i: usize) -> usize {
        self.index(self.left.generator(i), 0, self.right.unit())
    }

    /// Basis index of the generator `w_i`.
    pub fn w_index(&self, i: usize) -> usize {
        self.index(self.left.unit(), 0, self.right.generator(i))
    }

    /// Z-degree of a basis element: `|a| - |b|`.
    pub fn zdeg(&self, idx: usize) -> i64 {
        self.zdeg[idx]
    }

    fn build_tables(&mut self) -> Result<(), HopfError> {
        let field = self.field.clone();
        let group = self.datum.group.clone();
        let n = self.datum.rank();

        self.zdeg = (0..self.dim)
            .map(|idx| {
                let (a, _, b) = self.split(idx);
                self.left.degree(a) as i64 - self.right.degree(b) as i64
            })
            .collect();
        self.counit = (0..self.dim)
            .map(|idx| {
                let (a, _, b) = self.split(idx);
                if a == self.left.unit() && b == self.right.unit() {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();

        // letter straddles: w_i . v^alpha for each R generator i and L basis
        // alpha, by recursion on the degree of alpha
        let mut letter: Vec<Vec<Option<HElement>>> = vec![vec![None; self.dim_l]; n];
        let mut order: Vec<usize> = (0..self.dim_l).collect();
        order.sort_by_key(|&a| self.left.degree(a));
        // first-letter decomposition of every non-unit L basis element:
        // alpha = v_lambda * rest with rest a sparse combination one degree
        // lower; rest is computed from the attached word
        let mut first_letter: Vec<Option<(usize, SparseVec)>> = vec![None; self.dim_l];
        for &alpha in &order {
            if alpha == self.left.unit() {
                continue;
            }
            let word = self.left.word(alpha);
            let lambda = word[0];
            let mut rest: SparseVec = vec![(self.left.unit(), field.one())];
            for &letter_j in &word[1..] {
                let gen_basis = self.left.generator(letter_j);
                let mut next: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (t, c) in &rest {
                    for (u, s) in self.left.multiply(*t, gen_basis) {
                        let e = next.entry(u).or_insert_with(|| field.zero());
                        *e = field.add(e, &field.mul(c, &s));
                    }
                }
                rest = next
                    .into_iter()
                    .filter(|(_, c)| !field.is_zero(c))
                    .collect();
            }
            first_letter[alpha] = Some((lambda, rest));
        }

        for &alpha in &order {
            for i in 0..n {
                let elem = if alpha == self.left.unit() {
                    SparseElem::basis(
                        self.index(self.left.unit(), 0, self.right.generator(i)),
                        &field,
                    )
                } else {
                    let (lambda, rest) = first_letter[alpha].clone().unwrap();
                    let mut acc = SparseElem::zero();
                    // w_i v_lambda = v_lambda w_i + delta chi_lambda(g_i) c_i (f_lambda - g_i)
                    for (t, c) in &rest {
                        // term 1: v_lambda * (w_i . v^t)
                        let s = letter[i][*t].as_ref().expect("lower degree computed first");
                        let shifted = self.lmul_l_letter(lambda, s);
                        acc.add_scaled(&shifted, c, &field);
                        // term 2: the correction, only when the letters pair up
                        if lambda == i {
                            let chi_gi = self.datum.chi_at(lambda, &self.datum.g[i]);
                            let coeff = field.mul(&field.mul(&chi_gi, &self.datum.c[i]), c);
                            if !field.is_zero(&coeff) {
                                for (elt, sign) in
                                    [(&self.datum.f[lambda], 1i64), (&self.datum.g[i], -1)]
                                {
                                    let act = group
                                        .char_eval(self.left.action_char(*t), elt, &field)
                                        .expect("root order checked");
                                    let gi = group.element_index(elt);
                                    let idx = self.index(*t, gi, self.right.unit());
                                    let c2 =
                                        field.mul(&coeff, &field.mul(&act, &field.from_i64(sign)));
                                    acc.add_term(idx, &c2, &field);
                                }
                            }
                        }
                    }
                    acc
                };
                letter[i][alpha] = Some(elem);
            }
        }

        // full straddles: w^beta . v^alpha, iterating beta's word backwards
        let mut straddle: Vec<Vec<HElement>> =
            vec![vec![SparseElem::zero(); self.dim_l]; self.dim_r];
        for beta in 0..self.dim_r {
            let word = self.right.word(beta);
            for alpha in 0..self.dim_l {
                let mut x = SparseElem::basis(self.index(alpha, 0, self.right.unit()), &field);
                for &rho in word.iter().rev() {
                    x = self.lmul_r_letter_straddle(rho, &x, &letter);
                }
                straddle[beta][alpha] = x;
            }
        }

        self.straddle = straddle;

        // structure constants: materialize when small, fill on demand when
        // the square table would dominate memory
        if self.dim <= EAGER_MULT_LIMIT {
            let mut mult: Vec<Vec<Arc<HElement>>> = Vec::with_capacity(self.dim);
            for x in 0..self.dim {
                let mut row = Vec::with_capacity(self.dim);
                for y in 0..self.dim {
                    row.push(Arc::new(self.compute_mult(x, y)));
                }
                mult.push(row);
            }
            self.mult = MultTable::Eager(mult);
        }

        // coproducts, multiplicatively from the generators
        let mut coprod: Vec<TensorElem> = Vec::with_capacity(self.dim);
        for idx in 0..self.dim {
            let (a, g, b) = self.split(idx);
            let mut t = self.tensor_basis(self.grouplike(g), self.grouplike(g));
            for &j in self.left.word(a).iter().rev() {
                let dv = self.coprod_v(j);
                t = self.tensor_mul(&dv, &t);
            }
            for &i in &self.right.word(b) {
                let dw = self.coprod_w(i);
                t = self.tensor_mul(&t, &dw);
            }
            coprod.push(t);
        }
        self.coprod = coprod;

        Ok(())
    }

    /// Normal form of the product of two basis elements, through the
    /// straddle table.
    fn compute_mult(&self, x: usize, y: usize) -> HElement {
        let field = &self.field;
        let group = &self.datum.group;
        let (ax, gx, bx) = self.split(x);
        let (ay, gy, by) = self.split(y);
        let mut out = SparseElem::zero();
        for (kidx, kc) in &self.straddle[bx][ay].0 {
            let (gamma, u, delta) = self.split(*kidx);
            // v^ax gx (v^gamma u w^delta) gy w^by
            let act_l = group
                .char_eval(
                    self.left.action_char(gamma),
                    &group.element_from_index(gx),
                    field,
                )
                .expect("root order checked");
            let act_r = group
                .char_eval(
                    self.right.action_char(delta),
                    &group.element_from_index(gy),
                    field,
                )
                .expect("root order checked");
            let gu = group.mul(
                &group.mul(&group.element_from_index(gx), &group.element_from_index(u)),
                &group.element_from_index(gy),
            );
            let gu_idx = group.element_index(&gu);
            let c0 = field.mul(kc, &field.mul(&act_l, &act_r));
            for (gamma2, cl) in self.left.multiply(ax, gamma) {
                for (delta2, cr) in self.right.multiply(delta, by) {
                    let idx = self.index(gamma2, gu_idx, delta2);
                    let c = field.mul(&c0, &field.mul(&cl, &cr));
                    out.add_term(idx, &c, field);
                }
            }
        }
        out
    }

    /// Antipode columns and their inverse, built on first use: the images
    /// of the basis under `S` are reversed products of the generator
    /// images, and `S^{-1}` comes from inverting the resulting matrix.
    fn antipode_tables(&self) -> &Result<AntipodeTables, HopfError> {
        self.antipode.get_or_init(|| {
            let field = &self.field;
            let group = &self.datum.group;
            let mut cols = Vec::with_capacity(self.dim);
            for idx in 0..self.dim {
                let (a, g, b) = self.split(idx);
                let mut acc = self.one();
                for &i in self.right.word(b).iter().rev() {
                    // S(w_i) = -w_i g_i^{-1} = -chi_i(g_i)^{-1} g_i^{-1} w_i
                    let gi_inv = group.inv(&self.datum.g[i]);
                    let coeff = field.neg(&field.inv(&self.datum.chi_at(i, &self.datum.g[i])));
                    let s_w = SparseElem::basis(
                        self.index(
                            self.left.unit(),
                            group.element_index(&gi_inv),
                            self.right.generator(i),
                        ),
                        field,
                    )
                    .scale(&coeff, field);
                    acc = self.multiply(&acc, &s_w);
                }
                let g_inv = group.inv(&group.element_from_index(g));
                let s_g = SparseElem::basis(self.grouplike(group.element_index(&g_inv)), field);
                acc = self.multiply(&acc, &s_g);
                for &j in self.left.word(a).iter().rev() {
                    // S(v_j) = -f_j^{-1} v_j = -chi_j(f_j)^{-1} v_j f_j^{-1}
                    let fj_inv = group.inv(&self.datum.f[j]);
                    let coeff = field.neg(&field.inv(&self.datum.chi_at(j, &self.datum.f[j])));
                    let s_v = SparseElem::basis(
                        self.index(
                            self.left.generator(j),
                            group.element_index(&fj_inv),
                            self.right.unit(),
                        ),
                        field,
                    )
                    .scale(&coeff, field);
                    acc = self.multiply(&acc, &s_v);
                }
                cols.push(acc);
            }
            let mut s_mat = Matrix::zeros(field, self.dim, self.dim);
            for (j, col) in cols.iter().enumerate() {
                for (i, c) in &col.0 {
                    s_mat.set(*i, j, c.clone());
                }
            }
            let inv = s_mat.inverse().ok_or(HopfError::SingularAntipode)?;
            let inv_cols = (0..self.dim)
                .map(|j| {
                    let mut col = SparseElem::zero();
                    for i in 0..self.dim {
                        col.add_term(i, inv.get(i, j), field);
                    }
                    col
                })
                .collect();
            Ok(AntipodeTables { cols, inv_cols })
        })
    }

    fn antipode_ok(&self) -> Result<&AntipodeTables, HopfError> {
        self.antipode_tables().as_ref().map_err(|e| e.clone())
    }

    fn coprod_v(&self, j: usize) -> TensorElem {
        // Delta(v_j) = v_j (x) 1 + f_j (x) v_j
        let field = &self.field;
        let group = &self.datum.group;
        let mut t = SparseElem::zero();
        let vj = self.v_index(j);
        t.add_term(vj * self.dim + self.one_index(), &field.one(), field);
        let fj = self.grouplike(group.element_index(&self.datum.f[j]));
        t.add_term(fj * self.dim + vj, &field.one(), field);
        t
    }

    fn coprod_w(&self, i: usize) -> TensorElem {
        // Delta(w_i) = 1 (x) w_i + w_i (x) g_i
        let field = &self.field;
        let group = &self.datum.group;
        let mut t = SparseElem::zero();
        let wi = self.w_index(i);
        t.add_term(self.one_index() * self.dim + wi, &field.one(), field);
        let gi = self.grouplike(group.element_index(&self.datum.g[i]));
        t.add_term(wi * self.dim + gi, &field.one(), field);
        t
    }

    fn tensor_basis(&self, i: usize, j: usize) -> TensorElem {
        SparseElem::basis(i * self.dim + j, &self.field)
    }

    /// Left multiplication of an `HElement` by the letter `v_lambda`.
    fn lmul_l_letter(&self, lambda: usize, x: &HElement) -> HElement {
        let field = &self.field;
        let gen_basis = self.left.generator(lambda);
        let mut out = SparseElem::zero();
        for (idx, c) in &x.0 {
            let (gamma, u, delta) = self.split(*idx);
            for (gamma2, s) in self.left.multiply(gen_basis, gamma) {
                out.add_term(self.index(gamma2, u, delta), &field.mul(c, &s), field);
            }
        }
        out
    }

    /// Left multiplication by the letter `w_rho` using the letter-straddle
    /// table (used only during construction).
    fn lmul_r_letter_straddle(
        &self,
        rho: usize,
        x: &HElement,
        letter: &[Vec<Option<HElement>>],
    ) -> HElement {
        let field = &self.field;
        let group = &self.datum.group;
        let mut out = SparseElem::zero();
        for (idx, c) in &x.0 {
            let (gamma, u, delta) = self.split(*idx);
            let s = letter[rho][gamma]
                .as_ref()
                .expect("letter straddles complete");
            // w_rho v^gamma = s; then s * (u w^delta)
            for (sidx, sc) in &s.0 {
                let (gamma2, u2, delta2) = self.split(*sidx);
                let act = group
                    .char_eval(
                        self.right.action_char(delta2),
                        &group.element_from_index(u),
                        field,
                    )
                    .expect("root order checked");
                let unew = group.mul(&group.element_from_index(u2), &group.element_from_index(u));
                let unew_idx = group.element_index(&unew);
                let c0 = field.mul(c, &field.mul(sc, &act));
                for (delta3, cr) in self.right.multiply(delta2, delta) {
                    out.add_term(
                        self.index(gamma2, unew_idx, delta3),
                        &field.mul(&c0, &cr),
                        field,
                    );
                }
            }
        }
        out
    }

    pub fn mult_basis(&self, x: usize, y: usize) -> Arc<HElement> {
        match &self.mult {
            MultTable::Eager(table) => table[x][y].clone(),
            MultTable::Lazy(cache) => {
                if let Some(hit) = cache.read().unwrap().get(&(x, y)) {
                    return hit.clone();
                }
                let value = Arc::new(self.compute_mult(x, y));
                cache
                    .write()
                    .unwrap()
                    .entry((x, y))
                    .or_insert(value)
                    .clone()
            }
        }
    }

    pub fn multiply(&self, x: &HElement, y: &HElement) -> HElement {
        let field = &self.field;
        let mut out = SparseElem::zero();
        for (i, c) in &x.0 {
            for (j, d) in &y.0 {
                out.add_scaled(&self.mult_basis(*i, *j), &field.mul(c, d), field);
            }
        }
        out
    }

    pub fn coproduct_basis(&self, idx: usize) -> &TensorElem {
        &self.coprod[idx]
    }

    pub fn coproduct(&self, x: &HElement) -> TensorElem {
        let field = &self.field;
        let mut out = SparseElem::zero();
        for (i, c) in &x.0 {
            out.add_scaled(&self.coprod[*i], c, field);
        }
        out
    }

    /// `(id (x) Delta) Delta(x)` over triple keys `(i*dim + j)*dim + k`.
    pub fn coproduct2(&self, x: &HElement) -> SparseElem {
        let field = &self.field;
        let d = self.dim;
        let mut out = SparseElem::zero();
        for (key, c) in &self.coproduct(x).0 {
            let (i, j) = (key / d, key % d);
            for (key2, s) in &self.coprod[j].0 {
                out.add_term((i * d + key2 / d) * d + key2 % d, &field.mul(c, s), field);
            }
        }
        out
    }

    pub fn counit_basis(&self, idx: usize) -> &Scalar {
        &self.counit[idx]
    }

    pub fn counit(&self, x: &HElement) -> Scalar {
        let field = &self.field;
        let mut acc = field.zero();
        for (i, c) in &x.0 {
            acc = field.add(&acc, &field.mul(&self.counit[*i], c));
        }
        acc
    }

    pub fn antipode_basis(&self, idx: usize) -> &HElement {
        let tables = self
            .antipode_tables()
            .as_ref()
            .expect("antipode matrix invertible");
        &tables.cols[idx]
    }

    pub fn antipode(&self, x: &HElement) -> HElement {
        let field = &self.field;
        let mut out = SparseElem::zero();
        for (i, c) in &x.0 {
            out.add_scaled(self.antipode_basis(*i), c, field);
        }
        out
    }

    pub fn antipode_inv_basis(&self, idx: usize) -> &HElement {
        let tables = self
            .antipode_tables()
            .as_ref()
            .expect("antipode matrix invertible");
        &tables.inv_cols[idx]
    }

    pub fn antipode_inv(&self, x: &HElement) -> HElement {
        let field = &self.field;
        let mut out = SparseElem::zero();
        for (i, c) in &x.0 {
            out.add_scaled(self.antipode_inv_basis(*i), c, field);
        }
        out
    }

    /// Multiplication of two elements of `H (x) H` componentwise (no
    /// braiding: `H` is an ordinary Hopf algebra).
    pub fn tensor_mul(&self, x: &TensorElem, y: &TensorElem) -> TensorElem {
        let field = &self.field;
        let d = self.dim;
        let mut out = SparseElem::zero();
        for (kx, cx) in &x.0 {
            let (x1, x2) = (kx / d, kx % d);
            for (ky, cy) in &y.0 {
                let (y1, y2) = (ky / d, ky % d);
                let c = field.mul(cx, cy);
                for (i, a) in &self.mult_basis(x1, y1).0 {
                    for (j, b) in &self.mult_basis(x2, y2).0 {
                        out.add_term(i * d + j, &field.mul(&c, &field.mul(a, b)), field);
                    }
                }
            }
        }
        out
    }

    /// Extracts the `L (x) kG (x) R` coordinates of `x` through the iterated
    /// coproduct followed by the three quotient projections. For a basis
    /// element `v^a g w^b` this returns exactly `v^a (x) g (x) w^b`; the
    /// result shares the triangular index space.
    pub fn triangular_components(&self, x: &HElement) -> SparseElem {
        let field = &self.field;
        let d = self.dim;
        let mut out = SparseElem::zero();
        for (key, c) in &self.coproduct2(x).0 {
            let k3 = key % d;
            let k2 = (key / d) % d;
            let k1 = key / (d * d);
            // pi_L (x) pi_G (x) pi_R
            let (a1, _, b1) = self.split(k1);
            if b1 != self.right.unit() {
                continue;
            }
            let (a2, g2, b2) = self.split(k2);
            if a2 != self.left.unit() || b2 != self.right.unit() {
                continue;
            }
            let (a3, _, b3) = self.split(k3);
            if a3 != self.left.unit() {
                continue;
            }
            out.add_term(self.index(a1, g2, b3), c, field);
        }
        out
    }

    /// Re-multiplies triangular components back into `H`.
    pub fn triangular_product(&self, t: &SparseElem) -> HElement {
        let field = &self.field;
        let mut out = SparseElem::zero();
        for (key, c) in &t.0 {
            let (a, g, b) = self.split(*key);
            let x = self.multiply(
                &SparseElem::basis(self.index(a, 0, self.right.unit()), field),
                &SparseElem::basis(self.index(self.left.unit(), g, b), field),
            );
            out.add_scaled(&x, c, field);
        }
        out
    }

    /// Runs the full Hopf-axiom suite: associativity, coassociativity,
    /// counit laws, multiplicativity of the coproduct, both antipode axioms,
    /// and `S^{-1} o S = id`.
    pub fn verify_axioms(&self, mode: VerifyMode) -> Result<AxiomReport, HopfError> {
        if matches!(mode, VerifyMode::Exhaustive) && self.dim > 128 {
            return Err(HopfError::CostGuard {
                dim: self.dim,
                limit: 128,
            });
        }
        let field = &self.field;
        let mut report = AxiomReport::default();
        let antipode = self.antipode_ok()?;

        // per-basis checks are cheap and always exhaustive
        for x in 0..self.dim {
            let d = self.dim;
            // coassociativity
            let lhs = {
                // (Delta (x) id) Delta
                let mut out = SparseElem::zero();
                for (key, c) in &self.coprod[x].0 {
                    let (i, j) = (key / d, key % d);
                    for (key2, s) in &self.coprod[i].0 {
                        out.add_term(key2 * d + j, &field.mul(c, s), field);
                    }
                }
                out
            };
            let rhs = self.coproduct2(&SparseElem::basis(x, field));
            if lhs != rhs {
                report
                    .failures
                    .push(format!("coassociativity fails on basis {x}"));
            }
            // counit laws
            let mut left_counit = SparseElem::zero();
            let mut right_counit = SparseElem::zero();
            for (key, c) in &self.coprod[x].0 {
                let (i, j) = (key / d, key % d);
                left_counit.add_term(j, &field.mul(c, &self.counit[i]), field);
                right_counit.add_term(i, &field.mul(c, &self.counit[j]), field);
            }
            let unit_x = SparseElem::basis(x, field);
            if left_counit != unit_x || right_counit != unit_x {
                report
                    .failures
                    .push(format!("counit law fails on basis {x}"));
            }
            // antipode axioms both sides
            let mut s_left = SparseElem::zero();
            let mut s_right = SparseElem::zero();
            for (key, c) in &self.coprod[x].0 {
                let (i, j) = (key / d, key % d);
                let sx = &antipode.cols[i];
                for (k, sc) in &sx.0 {
                    s_left.add_scaled(&self.mult_basis(*k, j), &field.mul(c, sc), field);
                }
                let sy = &antipode.cols[j];
                for (k, sc) in &sy.0 {
                    s_right.add_scaled(&self.mult_basis(i, *k), &field.mul(c, sc), field);
                }
            }
            let target = self.one().scale(&self.counit[x], field);
            if s_left != target || s_right != target {
                report
                    .failures
                    .push(format!("antipode axiom fails on basis {x}"));
            }
            // S^-1 S = id
            let mut round = SparseElem::zero();
            for (i, c) in &antipode.cols[x].0 {
                round.add_scaled(&antipode.inv_cols[*i], c, field);
            }
            if round != SparseElem::basis(x, field) {
                report.failures.push(format!("S^-1 o S != id on basis {x}"));
            }
            report.checked += 4;
        }

        // binary and ternary laws
        let check_pair = |x: usize, y: usize, report: &mut AxiomReport| {
            let dxy = {
                let mut out = SparseElem::zero();
                for (i, c) in &self.mult_basis(x, y).0 {
                    out.add_scaled(&self.coprod[*i], c, field);
                }
                out
            };
            let dxdy = self.tensor_mul(&self.coprod[x], &self.coprod[y]);
            if dxy != dxdy {
                report
                    .failures
                    .push(format!("coproduct not multiplicative on pair ({x}, {y})"));
            }
            report.checked += 1;
        };
        let check_triple = |x: usize, y: usize, z: usize, report: &mut AxiomReport| {
            let mut lhs = SparseElem::zero();
            for (i, c) in &self.mult_basis(x, y).0 {
                lhs.add_scaled(&self.mult_basis(*i, z), c, field);
            }
            let mut rhs = SparseElem::zero();
            for (j, c) in &self.mult_basis(y, z).0 {
                rhs.add_scaled(&self.mult_basis(x, *j), c, field);
            }
            if lhs != rhs {
                report
                    .failures
                    .push(format!("associativity fails on triple ({x}, {y}, {z})"));
            }
            report.checked += 1;
        };
        match mode {
            VerifyMode::Exhaustive => {
                for x in 0..self.dim {
                    for y in 0..self.dim {
                        check_pair(x, y, &mut report);
                    }
                }
                for x in 0..self.dim {
                    for y in 0..self.dim {
                        for z in 0..self.dim {
                            check_triple(x, y, z, &mut report);
                        }
                    }
                }
            }
            VerifyMode::Sampled { tuples, seed } => {
                let mut rng = SplitMix64::new(seed);
                for _ in 0..tuples {
                    let x = rng.below(self.dim);
                    let y = rng.below(self.dim);
                    check_pair(x, y, &mut report);
                }
                for _ in 0..tuples {
                    let x = rng.below(self.dim);
                    let y = rng.below(self.dim);
                    let z = rng.below(self.dim);
                    check_triple(x, y, z, &mut report);
                }
            }
        }
        Ok(report)
    }
}
