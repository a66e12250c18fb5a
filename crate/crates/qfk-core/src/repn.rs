//! Simple-module machinery for `H` and `D(H)`: one-dimensional Borel
//! modules, induced modules `M(lambda)`, the largest proper submodule by a
//! shrinking fixpoint, simple quotients with simplicity certificates,
//! pairwise distinguishability through Borel coinvariants, torus weight
//! decompositions, and an independent trace-form radical oracle.

use std::fmt;
use std::sync::Arc;

use crate::double::{BorelSide, DGen, DoubleAlgebra, DoubleElement};
use crate::group::{AbelianGroup, ProductWeight};
use crate::hopf::{HopfAlgebraH, SparseElem};
use crate::linalg::{EchelonSpan, Matrix};
use crate::scalar::{Scalar, ScalarField};
use crate::util::par_map;

/// A character of the grouplike torus naming an induced or simple module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightLabel {
    /// `lambda` in `Ghat` for modules over `H`.
    H(crate::group::Character),
    /// `lambda` in `G x Ghat` for modules over `D(H)`.
    Double(ProductWeight),
}

impl WeightLabel {
    pub fn label(&self) -> String {
        match self {
            WeightLabel::H(chi) => format!("chi{:?}", chi.0),
            WeightLabel::Double(w) => format!("(g{:?}, chi{:?})", w.g0.0, w.mu.0),
        }
    }
}

/// A finite-dimensional left module: one action matrix per canonical
/// generator of the ambient algebra.
#[derive(Clone)]
pub struct Representation {
    pub dim: usize,
    pub gens: Vec<DGen>,
    pub mats: Vec<Matrix>,
    pub weight: Option<WeightLabel>,
}

/// An induced module `M(lambda)` with its cyclic vector.
#[derive(Clone)]
pub struct InducedModule {
    pub rep: Representation,
    pub cyclic: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepnError {
    /// Induced dimension disagrees with the tensorial-presentation
    /// prediction; fatal, would falsify the implementation.
    DimensionMismatch { expected: usize, got: usize },
    /// Torus action failed to diagonalize; impossible under the field
    /// constraints.
    TorusNotDiagonalizable,
    /// Trace-form oracle outside its validity window.
    OraclePrecondition { characteristic: u64, dim: usize },
}

impl fmt::Display for RepnError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepnError::DimensionMismatch { expected, got } => {
                write!(out, "induced module dimension {got}, predicted {expected}")
            }
            RepnError::TorusNotDiagonalizable => {
                write!(out, "torus action is not diagonalizable")
            }
            RepnError::OraclePrecondition {
                characteristic,
                dim,
            } => write!(
                out,
                "trace oracle requires char 0 or char > dim; got char {characteristic}, dim {dim}"
            ),
        }
    }
}

impl std::error::Error for RepnError {}

/// One classification row.
pub struct ClassRow {
    pub weight: WeightLabel,
    pub dim_induced: usize,
    pub dim_submodule: usize,
    pub dim_simple: usize,
    pub certified_simple: bool,
    pub simple: Representation,
    pub weight_multiplicities: Vec<(WeightLabel, usize)>,
}

/// The complete table over all weights, with the distinguishability matrix.
pub struct Classification {
    pub rows: Vec<ClassRow>,
    /// `distinguish[l][m] = dim k_A(mu_m) (x)_A L(lambda_l)`.
    pub distinguish: Vec<Vec<usize>>,
    pub all_certified: bool,
    pub distinguish_diagonal: bool,
}

impl Classification {
    pub fn sum_of_squares(&self) -> usize {
        self.rows.iter().map(|r| r.dim_simple * r.dim_simple).sum()
    }
}

/// What a module engine must expose: the ambient generator list, the Borel
/// data on both sides, and induction.
pub trait ModuleEngine: Sync {
    fn field(&self) -> &ScalarField;
    fn group(&self) -> &AbelianGroup;
    fn algebra_dim(&self) -> usize;
    fn predicted_induced_dim(&self) -> usize;
    fn weights(&self) -> Vec<WeightLabel>;
    fn gen_labels(&self) -> &[DGen];
    /// Positions (into the generator list) of the generators of the left
    /// tensor factor whose augmentation ideal controls submodules.
    fn left_factor_positions(&self) -> Vec<usize>;
    /// Positions of the torus generators with their weight values.
    fn torus_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)>;
    /// Positions and `mu~`-values of the `A`-side Borel generators.
    fn borel_a_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)>;
    /// Positions and `lambda~`-values of the `B`-side Borel generators.
    fn borel_b_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)>;
    /// Induced module by the right-freeness reduction.
    fn induce(&self, w: &WeightLabel) -> Result<InducedModule, RepnError>;
    /// Structure constants of the ambient algebra (for the trace oracle).
    fn algebra_product(&self, i: usize, j: usize) -> SparseElem;
    /// A basis element of the ambient algebra for every generator, plus the
    /// unit, enabling the closure cross-check.
    fn gen_algebra_elements(&self) -> Vec<SparseElem>;
    fn algebra_unit(&self) -> SparseElem;
}

/// `Lambda = H`: generators are the group generators, the `v_i`, the `w_i`.
pub struct HModules {
    pub h: Arc<HopfAlgebraH>,
    gens: Vec<DGen>,
}

impl HModules {
    pub fn new(h: Arc<HopfAlgebraH>) -> HModules {
        let mut gens = vec![];
        for j in 0..h.datum.group.rank() {
            gens.push(DGen::G(j));
        }
        for i in 0..h.datum.rank() {
            gens.push(DGen::V(i));
        }
        for i in 0..h.datum.rank() {
            gens.push(DGen::W(i));
        }
        HModules { h, gens }
    }

    /// The `H`-basis index realizing a generator.
    pub fn gen_index(&self, g: &DGen) -> usize {
        let group = &self.h.datum.group;
        match g {
            DGen::G(j) => self.h.grouplike(group.element_index(&group.generator(*j))),
            DGen::V(i) => self.h.v_index(*i),
            DGen::W(i) => self.h.w_index(*i),
            _ => unreachable!("not an H generator"),
        }
    }
}

impl ModuleEngine for HModules {
    fn field(&self) -> &ScalarField {
        self.h.field()
    }

    fn group(&self) -> &AbelianGroup {
        &self.h.datum.group
    }

    fn algebra_dim(&self) -> usize {
        self.h.dim()
    }

    fn predicted_induced_dim(&self) -> usize {
        self.h.left.dim()
    }

    fn weights(&self) -> Vec<WeightLabel> {
        self.group()
            .enumerate_dual()
            .into_iter()
            .map(WeightLabel::H)
            .collect()
    }

    fn gen_labels(&self) -> &[DGen] {
        &self.gens
    }

    fn left_factor_positions(&self) -> Vec<usize> {
        self.gens
            .iter()
            .enumerate()
            .filter_map(|(p, g)| matches!(g, DGen::V(_)).then_some(p))
            .collect()
    }

    fn torus_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)> {
        let WeightLabel::H(chi) = w else {
            panic!("H weight expected")
        };
        let group = self.group();
        let field = self.field();
        self.gens
            .iter()
            .enumerate()
            .filter_map(|(p, g)| match g {
                DGen::G(j) => Some((
                    p,
                    group
                        .char_eval(chi, &group.generator(*j), field)
                        .expect("root order"),
                )),
                _ => None,
            })
            .collect()
    }

    fn borel_a_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)> {
        // A = L (x) kG: group generators with weight values, v_i by zero
        let mut out = self.torus_values(w);
        let field = self.field();
        for (p, g) in self.gens.iter().enumerate() {
            if matches!(g, DGen::V(_)) {
                out.push((p, field.zero()));
            }
        }
        out
    }

    fn borel_b_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)> {
        // B = kG (x) R: group generators with weight values, w_i by zero
        let mut out = self.torus_values(w);
        let field = self.field();
        for (p, g) in self.gens.iter().enumerate() {
            if matches!(g, DGen::W(_)) {
                out.push((p, field.zero()));
            }
        }
        out
    }

    fn induce(&self, w: &WeightLabel) -> Result<InducedModule, RepnError> {
        let WeightLabel::H(chi) = w else {
            panic!("H weight expected")
        };
        let field = self.field().clone();
        let group = self.group().clone();
        let dim_m = self.h.left.dim();
        let mut mats = vec![];
        for g in &self.gens {
            let z = self.gen_index(g);
            let mut mat = Matrix::zeros(&field, dim_m, dim_m);
            for alpha in 0..dim_m {
                let src = self.h.index(alpha, 0, self.h.right.unit());
                for (key, c) in &self.h.mult_basis(z, src).0 {
                    let (gamma, u, delta) = self.h.split(*key);
                    if delta != self.h.right.unit() {
                        continue; // lambda~ kills R^+
                    }
                    let lam = group
                        .char_eval(chi, &group.element_from_index(u), &field)
                        .expect("root order");
                    let t = field.add(mat.get(gamma, alpha), &field.mul(c, &lam));
                    mat.set(gamma, alpha, t);
                }
            }
            mats.push(mat);
        }
        let mut cyclic = vec![field.zero(); dim_m];
        cyclic[self.h.left.unit()] = field.one();
        let rep = Representation {
            dim: dim_m,
            gens: self.gens.clone(),
            mats,
            weight: Some(w.clone()),
        };
        if rep.dim != self.predicted_induced_dim() {
            return Err(RepnError::DimensionMismatch {
                expected: self.predicted_induced_dim(),
                got: rep.dim,
            });
        }
        Ok(InducedModule { rep, cyclic })
    }

    fn algebra_product(&self, i: usize, j: usize) -> SparseElem {
        (*self.h.mult_basis(i, j)).clone()
    }

    fn gen_algebra_elements(&self) -> Vec<SparseElem> {
        self.gens
            .iter()
            .map(|g| SparseElem::basis(self.gen_index(g), self.field()))
            .collect()
    }

    fn algebra_unit(&self) -> SparseElem {
        self.h.one()
    }
}

/// `Lambda = D(H)`: generators are those of both Borel subalgebras.
pub struct DoubleModules {
    pub dd: Arc<DoubleAlgebra>,
    gens: Vec<DGen>,
    gen_elems: Vec<DoubleElement>,
    /// `xi_{L*}(a) xi_R(b)` for every induced-basis pair, flattened as
    /// `a * dim_R + b`.
    base_pairs: Vec<DoubleElement>,
}

impl DoubleModules {
    pub fn new(dd: Arc<DoubleAlgebra>) -> DoubleModules {
        let borel_b = dd.borel(BorelSide::B);
        let borel_a = dd.borel(BorelSide::A);
        let mut gens: Vec<DGen> = vec![];
        let mut gen_elems: Vec<DoubleElement> = vec![];
        // torus generators once (shared by both sides)
        for (g, e) in &borel_b.gens {
            if g.is_grouplike() {
                gens.push(g.clone());
                gen_elems.push(e.clone());
            }
        }
        for (g, e) in borel_b.gens.iter().chain(borel_a.gens.iter()) {
            if !g.is_grouplike() {
                gens.push(g.clone());
                gen_elems.push(e.clone());
            }
        }
        let h = dd.h.clone();
        let dim_l = h.left.dim();
        let dim_r = h.right.dim();
        let mut base_pairs = Vec::with_capacity(dim_l * dim_r);
        let field = dd.field().clone();
        for a in 0..dim_l {
            for b in 0..dim_r {
                let mut x = SparseElem::zero();
                let primal = h.index(h.left.unit(), 0, b);
                for g in 0..h.datum.group.order() as usize {
                    x.add_term(
                        dd.pair_key(h.index(a, g, h.right.unit()), primal),
                        &field.one(),
                        &field,
                    );
                }
                base_pairs.push(x);
            }
        }
        DoubleModules {
            dd,
            gens,
            gen_elems,
            base_pairs,
        }
    }

    fn dim_r(&self) -> usize {
        self.dd.h.right.dim()
    }
}

impl ModuleEngine for DoubleModules {
    fn field(&self) -> &ScalarField {
        self.dd.field()
    }

    fn group(&self) -> &AbelianGroup {
        &self.dd.h.datum.group
    }

    fn algebra_dim(&self) -> usize {
        self.dd.dim()
    }

    fn predicted_induced_dim(&self) -> usize {
        self.dd.h.left.dim() * self.dd.h.right.dim()
    }

    fn weights(&self) -> Vec<WeightLabel> {
        self.group()
            .enumerate_product_weights()
            .into_iter()
            .map(WeightLabel::Double)
            .collect()
    }

    fn gen_labels(&self) -> &[DGen] {
        &self.gens
    }

    fn left_factor_positions(&self) -> Vec<usize> {
        // left factor L* (x) R: generated by the L*-generators and the w_i
        self.gens
            .iter()
            .enumerate()
            .filter_map(|(p, g)| matches!(g, DGen::LDual(..) | DGen::W(_)).then_some(p))
            .collect()
    }

    fn torus_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)> {
        let WeightLabel::Double(pw) = w else {
            panic!("double weight expected")
        };
        let group = self.group();
        let field = self.field();
        self.gens
            .iter()
            .enumerate()
            .filter_map(|(p, g)| match g {
                DGen::GHat(j) => {
                    let mut exps = vec![0i64; group.rank()];
                    exps[*j] = 1;
                    Some((
                        p,
                        group
                            .char_eval(&group.character(&exps), &pw.g0, field)
                            .expect("root order"),
                    ))
                }
                DGen::G(j) => Some((
                    p,
                    group
                        .char_eval(&pw.mu, &group.generator(*j), field)
                        .expect("root order"),
                )),
                _ => None,
            })
            .collect()
    }

    fn borel_a_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)> {
        // A = L* (x) R (x) k(Ghat x G): torus plus L*-gens and w_i by zero
        let mut out = self.torus_values(w);
        let field = self.field();
        for (p, g) in self.gens.iter().enumerate() {
            if matches!(g, DGen::LDual(..) | DGen::W(_)) {
                out.push((p, field.zero()));
            }
        }
        out
    }

    fn borel_b_values(&self, w: &WeightLabel) -> Vec<(usize, Scalar)> {
        // B = k(Ghat x G) (x) L (x) R*: torus plus v_i and R*-gens by zero
        let mut out = self.torus_values(w);
        let field = self.field();
        for (p, g) in self.gens.iter().enumerate() {
            if matches!(g, DGen::V(_) | DGen::RDual(..)) {
                out.push((p, field.zero()));
            }
        }
        out
    }

    fn induce(&self, w: &WeightLabel) -> Result<InducedModule, RepnError> {
        let WeightLabel::Double(pw) = w else {
            panic!("double weight expected")
        };
        let field = self.field().clone();
        let group = self.group().clone();
        let dim_m = self.predicted_induced_dim();
        let dim_r = self.dim_r();
        let mut mats = vec![];
        for elem in &self.gen_elems {
            let mut mat = Matrix::zeros(&field, dim_m, dim_m);
            for (src, base) in self.base_pairs.iter().enumerate() {
                let prod = self.dd.multiply(elem, base);
                let coords = self
                    .dd
                    .to_pbw(&prod)
                    .expect("PBW certified before induction");
                for (t, c) in coords {
                    if t.l != self.dd.h.left.unit() || t.r_dual != self.dd.h.right.unit() {
                        continue; // lambda~ kills the augmentation parts
                    }
                    let ghat = group.character_from_index(t.ghat);
                    let gval = group.char_eval(&ghat, &pw.g0, &field).expect("root order");
                    let muval = group
                        .char_eval(&pw.mu, &group.element_from_index(t.g), &field)
                        .expect("root order");
                    let tgt = t.l_dual * dim_r + t.r;
                    let add = field.mul(&c, &field.mul(&gval, &muval));
                    let s = field.add(mat.get(tgt, src), &add);
                    mat.set(tgt, src, s);
                }
            }
            mats.push(mat);
        }
        let mut cyclic = vec![field.zero(); dim_m];
        cyclic[self.dd.h.left.unit() * dim_r + self.dd.h.right.unit()] = field.one();
        let rep = Representation {
            dim: dim_m,
            gens: self.gens.clone(),
            mats,
            weight: Some(w.clone()),
        };
        Ok(InducedModule { rep, cyclic })
    }

    fn algebra_product(&self, i: usize, j: usize) -> SparseElem {
        self.dd.multiply(
            &SparseElem::basis(i, self.field()),
            &SparseElem::basis(j, self.field()),
        )
    }

    fn gen_algebra_elements(&self) -> Vec<SparseElem> {
        self.gen_elems.clone()
    }

    fn algebra_unit(&self) -> SparseElem {
        self.dd.unit()
    }
}

/// The one-dimensional `B`-module `k_B(lambda)`: grouplikes act through the
/// weight, augmentation-positive generators by zero.
pub fn one_dim_module<E: ModuleEngine>(engine: &E, w: &WeightLabel) -> Representation {
    let field = engine.field();
    let values = engine.borel_b_values(w);
    let mut mats = vec![];
    let mut labels = vec![];
    for (p, v) in values {
        labels.push(engine.gen_labels()[p].clone());
        let mut m = Matrix::zeros(field, 1, 1);
        m.set(0, 0, v);
        mats.push(m);
    }
    Representation {
        dim: 1,
        gens: labels,
        mats,
        weight: Some(w.clone()),
    }
}

/// Largest proper submodule of an induced module: start from the image of
/// the left factor's augmentation ideal and shrink to the largest subspace
/// stable under every ambient generator.
pub fn maximal_submodule<E: ModuleEngine>(engine: &E, m: &InducedModule) -> Vec<Vec<Scalar>> {
    let field = engine.field();
    let rep = &m.rep;
    let mut w0 = EchelonSpan::new(field, rep.dim);
    let tpos = engine.left_factor_positions();
    // seed: images of the left-factor generators
    let mut frontier: Vec<Vec<Scalar>> = vec![];
    for &p in &tpos {
        for col in 0..rep.dim {
            let mut e = vec![field.zero(); rep.dim];
            e[col] = field.one();
            let v = rep.mats[p].mul_vec(&e);
            if w0.insert(v.clone()).is_some() {
                frontier.push(v);
            }
        }
    }
    // close under the left factor
    while let Some(v) = frontier.pop() {
        for &p in &tpos {
            let u = rep.mats[p].mul_vec(&v);
            if w0.insert(u.clone()).is_some() {
                frontier.push(u);
            }
        }
    }
    let mut basis: Vec<Vec<Scalar>> = w0.rows().to_vec();
    // shrink: W <- {x in W : Z x in W for all generators Z}
    loop {
        if basis.is_empty() {
            return basis;
        }
        let mut span = EchelonSpan::new(field, rep.dim);
        for b in &basis {
            span.insert(b.clone());
        }
        let r = basis.len();
        // rows: complement coordinates of Z b_i for each generator
        let mut constraint_rows: Vec<Vec<Scalar>> = vec![];
        let comp = span.complement_cols();
        for mat in &rep.mats {
            let mut reduced: Vec<Vec<Scalar>> = Vec::with_capacity(r);
            for b in &basis {
                reduced.push(span.reduce(mat.mul_vec(b)));
            }
            for &c in &comp {
                let mut row = Vec::with_capacity(r);
                let mut nonzero = false;
                for red in &reduced {
                    nonzero |= !field.is_zero(&red[c]);
                    row.push(red[c].clone());
                }
                if nonzero {
                    constraint_rows.push(row);
                }
            }
        }
        if constraint_rows.is_empty() {
            return basis;
        }
        let mat = Matrix::from_rows(field, constraint_rows);
        let null = mat.nullspace();
        if null.len() == basis.len() {
            return basis;
        }
        // new basis from the nullspace coefficients
        let mut next: Vec<Vec<Scalar>> = vec![];
        for coeffs in null {
            let mut v = vec![field.zero(); rep.dim];
            for (i, c) in coeffs.iter().enumerate() {
                if field.is_zero(c) {
                    continue;
                }
                for (j, b) in basis[i].iter().enumerate() {
                    v[j] = field.add(&v[j], &field.mul(c, b));
                }
            }
            next.push(v);
        }
        basis = next;
    }
}

/// Quotient of an induced module by a submodule basis.
pub fn quotient_module<E: ModuleEngine>(
    engine: &E,
    m: &InducedModule,
    submodule: &[Vec<Scalar>],
) -> Representation {
    let field = engine.field();
    let rep = &m.rep;
    let mut span = EchelonSpan::new(field, rep.dim);
    for b in submodule {
        span.insert(b.clone());
    }
    let comp = span.complement_cols();
    let qdim = comp.len();
    let mut mats = vec![];
    for mat in &rep.mats {
        let mut q = Matrix::zeros(field, qdim, qdim);
        for (j, &cj) in comp.iter().enumerate() {
            let mut e = vec![field.zero(); rep.dim];
            e[cj] = field.one();
            let red = span.reduce(mat.mul_vec(&e));
            for (i, &ci) in comp.iter().enumerate() {
                q.set(i, j, red[ci].clone());
            }
        }
        mats.push(q);
    }
    Representation {
        dim: qdim,
        gens: rep.gens.clone(),
        mats,
        weight: rep.weight.clone(),
    }
}

/// `L(lambda) = M(lambda) / I(lambda)` in one step; also returns the
/// dimension of the discarded maximal submodule.
pub fn simple_quotient<E: ModuleEngine>(
    engine: &E,
    w: &WeightLabel,
) -> Result<(Representation, usize), RepnError> {
    let m = engine.induce(w)?;
    let sub = maximal_submodule(engine, &m);
    let dim_sub = sub.len();
    Ok((quotient_module(engine, &m, &sub), dim_sub))
}

/// Sound-and-complete simplicity certificate for the simple quotients: the
/// fixpoint applied inside the image of the left factor's augmentation
/// ideal must shrink to zero.
pub fn verify_simple<E: ModuleEngine>(engine: &E, rep: &Representation) -> bool {
    let probe = InducedModule {
        rep: rep.clone(),
        cyclic: vec![engine.field().zero(); rep.dim],
    };
    maximal_submodule(engine, &probe).is_empty()
}

/// `dim k_A(mu) (x)_A S`: the quotient of `S` by the span of
/// `a x - mu~(a) x` over the `A`-side Borel generators.
pub fn distinguish<E: ModuleEngine>(engine: &E, mu: &WeightLabel, rep: &Representation) -> usize {
    let field = engine.field();
    let mut span = EchelonSpan::new(field, rep.dim);
    for (p, val) in engine.borel_a_values(mu) {
        let mat = &rep.mats[p];
        for col in 0..rep.dim {
            let mut e = vec![field.zero(); rep.dim];
            e[col] = field.one();
            let mut v = mat.mul_vec(&e);
            v[col] = field.sub(&v[col], &val);
            span.insert(v);
        }
    }
    rep.dim - span.dim()
}

/// Simultaneous eigenspace decomposition under the grouplike torus.
pub fn weight_decomposition<E: ModuleEngine>(
    engine: &E,
    rep: &Representation,
) -> Result<Vec<(WeightLabel, usize)>, RepnError> {
    let field = engine.field();
    let mut out = vec![];
    let mut total = 0usize;
    for w in engine.weights() {
        let tv = engine.torus_values(&w);
        // stack (Z - value I) over all torus generators, nullspace dim
        let mut rows: Vec<Vec<Scalar>> = vec![];
        for (p, val) in tv {
            let mat = &rep.mats[p];
            for i in 0..rep.dim {
                let mut row: Vec<Scalar> = (0..rep.dim).map(|j| mat.get(i, j).clone()).collect();
                row[i] = field.sub(&row[i], &val);
                rows.push(row);
            }
        }
        let mult = if rows.is_empty() {
            rep.dim
        } else {
            Matrix::from_rows(field, rows).nullspace().len()
        };
        if mult > 0 {
            out.push((w, mult));
            total += mult;
        }
    }
    if total != rep.dim {
        return Err(RepnError::TorusNotDiagonalizable);
    }
    Ok(out)
}

/// The full classification: one row per weight, plus the distinguish
/// matrix. Per-weight work runs in parallel.
pub fn all_simples<E: ModuleEngine>(engine: &E) -> Result<Classification, RepnError> {
    let weights = engine.weights();
    let rows: Vec<Result<ClassRow, RepnError>> = par_map(&weights, |w| {
        let m = engine.induce(w)?;
        if m.rep.dim != engine.predicted_induced_dim() {
            return Err(RepnError::DimensionMismatch {
                expected: engine.predicted_induced_dim(),
                got: m.rep.dim,
            });
        }
        let sub = maximal_submodule(engine, &m);
        let simple = quotient_module(engine, &m, &sub);
        let certified = verify_simple(engine, &simple);
        let wm = weight_decomposition(engine, &simple)?;
        Ok(ClassRow {
            weight: w.clone(),
            dim_induced: m.rep.dim,
            dim_submodule: sub.len(),
            dim_simple: simple.dim,
            certified_simple: certified,
            simple,
            weight_multiplicities: wm,
        })
    });
    let mut table = vec![];
    for r in rows {
        table.push(r?);
    }
    let indices: Vec<usize> = (0..table.len()).collect();
    let distinguish_mat: Vec<Vec<usize>> = par_map(&indices, |&l| {
        weights
            .iter()
            .map(|mu| distinguish(engine, mu, &table[l].simple))
            .collect()
    });
    let mut diagonal = true;
    for (l, row) in distinguish_mat.iter().enumerate() {
        for (m, &v) in row.iter().enumerate() {
            if (l == m && v == 0) || (l != m && v != 0) {
                diagonal = false;
            }
        }
    }
    let all_certified = table.iter().all(|r| r.certified_simple);
    Ok(Classification {
        rows: table,
        distinguish: distinguish_mat,
        all_certified,
        distinguish_diagonal: diagonal,
    })
}

/// Dimension of the solution space of `X Z_g = Z_g X` over all generator
/// actions; equals 1 exactly for absolutely simple modules.
pub fn endomorphism_dim(field: &ScalarField, rep: &Representation) -> usize {
    let d = rep.dim;
    let mut rows: Vec<Vec<Scalar>> = vec![];
    for mat in &rep.mats {
        // (X Z - Z X)_{ab} = sum_s X_{as} Z_{sb} - sum_r Z_{ar} X_{rb}
        for a in 0..d {
            for b in 0..d {
                let mut row = vec![field.zero(); d * d];
                for s in 0..d {
                    row[a * d + s] = field.add(&row[a * d + s], mat.get(s, b));
                }
                for r in 0..d {
                    row[r * d + b] = field.sub(&row[r * d + b], mat.get(a, r));
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(field, rows).nullspace().len()
}

/// Jacobson-radical dimension through the trace form of left
/// multiplications. Valid for char 0 or char > dim; refuses otherwise.
pub fn trace_radical_dim<E: ModuleEngine>(engine: &E) -> Result<usize, RepnError> {
    let field = engine.field();
    let dim = engine.algebra_dim();
    let p = field.characteristic();
    if p != 0 && p <= dim as u64 {
        return Err(RepnError::OraclePrecondition {
            characteristic: p,
            dim,
        });
    }
    // structure constants of left multiplication
    let indices: Vec<usize> = (0..dim).collect();
    let prods: Vec<Vec<SparseElem>> = par_map(&indices, |&i| {
        (0..dim).map(|m| engine.algebra_product(i, m)).collect()
    });
    // gram[i][j] = tr(L_i L_j) = sum_m sum_k [x_j x_m]_k [x_i x_k]_m
    let gram_rows: Vec<Vec<Scalar>> = par_map(&indices, |&i| {
        let mut row = vec![field.zero(); dim];
        for j in 0..dim {
            let mut acc = field.zero();
            for m in 0..dim {
                for (k, c) in &prods[j][m].0 {
                    if let Some(d) = prods[i][*k].0.get(&m) {
                        acc = field.add(&acc, &field.mul(c, d));
                    }
                }
            }
            row[j] = acc;
        }
        row
    });
    let gram = Matrix::from_rows(field, gram_rows);
    Ok(gram.nullspace().len())
}

/// Reference construction of `M(lambda)` by iterative left-ideal
/// closure inside the ambient algebra. Cross-checks the fast reduction
/// path; intended for ambient dimension <= 300.
pub fn induce_by_closure<E: ModuleEngine>(
    engine: &E,
    w: &WeightLabel,
) -> Result<InducedModule, RepnError> {
    let field = engine.field();
    let dim = engine.algebra_dim();
    let gens = engine.gen_algebra_elements();
    // ideal generators: z - lambda~(z) 1 over the B-side Borel generators
    let unit = engine.algebra_unit();
    let mut span = EchelonSpan::new(field, dim);
    let mut frontier: Vec<Vec<Scalar>> = vec![];
    for (p, val) in engine.borel_b_values(w) {
        let mut z = gens[p].clone();
        z.add_scaled(&unit, &field.neg(&val), field);
        let v = z.to_dense(dim, field);
        if span.insert(v.clone()).is_some() {
            frontier.push(v);
        }
    }
    // close under left multiplication by every ambient generator
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let mut prod = vec![field.zero(); dim];
            for (gi, gc) in &g.0 {
                for (vi, vc) in v.iter().enumerate() {
                    if field.is_zero(vc) {
                        continue;
                    }
                    for (k, c) in &engine.algebra_product(*gi, vi).0 {
                        prod[*k] = field.add(&prod[*k], &field.mul(gc, &field.mul(vc, c)));
                    }
                }
            }
            if span.insert(prod.clone()).is_some() {
                frontier.push(prod);
            }
        }
    }
    let comp = span.complement_cols();
    let qdim = comp.len();
    if qdim != engine.predicted_induced_dim() {
        return Err(RepnError::DimensionMismatch {
            expected: engine.predicted_induced_dim(),
            got: qdim,
        });
    }
    // induced action matrices on the complement basis
    let mut mats = vec![];
    for g in &gens {
        let mut mat = Matrix::zeros(field, qdim, qdim);
        for (j, &cj) in comp.iter().enumerate() {
            let mut prod = vec![field.zero(); dim];
            for (gi, gc) in &g.0 {
                for (k, c) in &engine.algebra_product(*gi, cj).0 {
                    prod[*k] = field.add(&prod[*k], &field.mul(gc, c));
                }
            }
            let red = span.reduce(prod);
            for (i, &ci) in comp.iter().enumerate() {
                mat.set(i, j, red[ci].clone());
            }
        }
        mats.push(mat);
    }
    let unit_red = span.reduce(unit.to_dense(dim, field));
    let cyclic: Vec<Scalar> = comp.iter().map(|&c| unit_red[c].clone()).collect();
    Ok(InducedModule {
        rep: Representation {
            dim: qdim,
            gens: engine.gen_labels().to_vec(),
            mats,
            weight: Some(w.clone()),
        },
        cyclic,
    })
}

/// Checks that two induced-module constructions agree: the cyclic-vector
/// transport must be an invertible intertwiner.
pub fn induced_modules_agree<E: ModuleEngine>(
    engine: &E,
    fast: &InducedModule,
    closure: &InducedModule,
) -> bool {
    let field = engine.field();
    if fast.rep.dim != closure.rep.dim {
        return false;
    }
    let d = fast.rep.dim;
    // transport: both are cyclic on the image of 1; generate matching bases
    // by applying identical generator words to both cyclic vectors
    let mut span = EchelonSpan::new(field, d);
    let mut basis_fast: Vec<Vec<Scalar>> = vec![];
    let mut basis_closure: Vec<Vec<Scalar>> = vec![];
    let mut frontier = vec![(fast.cyclic.clone(), closure.cyclic.clone())];
    if span.insert(fast.cyclic.clone()).is_some() {
        basis_fast.push(fast.cyclic.clone());
        basis_closure.push(closure.cyclic.clone());
    }
    while let Some((vf, vc)) = frontier.pop() {
        for p in 0..fast.rep.mats.len() {
            let nf = fast.rep.mats[p].mul_vec(&vf);
            let nc = closure.rep.mats[p].mul_vec(&vc);
            if span.insert(nf.clone()).is_some() {
                basis_fast.push(nf.clone());
                basis_closure.push(nc.clone());
                frontier.push((nf, nc));
            }
        }
    }
    if basis_fast.len() != d {
        return false; // cyclic vector fails to generate
    }
    // T maps basis_fast[i] -> basis_closure[i]; check T is invertible and
    // intertwines all generators
    let bf = Matrix::from_rows(field, basis_fast.clone()).transpose();
    let bc = Matrix::from_rows(field, basis_closure.clone()).transpose();
    let Some(bf_inv) = bf.inverse() else {
        return false;
    };
    let t = bc.mul(&bf_inv);
    if t.inverse().is_none() {
        return false;
    }
    for p in 0..fast.rep.mats.len() {
        let lhs = t.mul(&fast.rep.mats[p]);
        let rhs = closure.rep.mats[p].mul(&t);
        if !lhs.sub(&rhs).is_zero() {
            return false;
        }
    }
    true
}
