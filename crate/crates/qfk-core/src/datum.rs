//! The input datum for the whole construction: a finite abelian group, per
//! generator a pair of grading elements `f_i, g_i`, a character `chi_i`, a
//! pairing constant `c_i`, a height `m_i` and an optional char-p exponent
//! `e_i`, together with the coefficient field. Validation checks every
//! hypothesis the construction needs; presets cover the worked examples.

use std::fmt;

use crate::group::{AbelianGroup, Character, GroupElement};
use crate::scalar::{FieldSpec, Scalar, ScalarError, ScalarField};

/// One violated hypothesis, with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `chi_i(f_j) chi_j(g_i) != 1`.
    PairingSymmetry { i: usize, j: usize },
    /// `chi_i(f_j) chi_j(f_i) != 1` for `i < j`.
    QlsSymmetry { i: usize, j: usize },
    /// Nichols case: `q_i = chi_i(f_i)` must differ from 1.
    UnitSelfBraiding { i: usize },
    /// Height does not match `p^{e_i} ord(q_i)` (with `e_i = 0` allowed).
    HeightMismatch { i: usize, expected: u64, got: u64 },
    /// Heights below 2 never give a positive-dimensional relation.
    HeightTooSmall { i: usize },
    /// `e_i > 0` requires positive characteristic (pre-Nichols data are
    /// forbidden in characteristic 0).
    PreNicholsInCharZero { i: usize },
    /// Field characteristic divides the group order.
    CharDividesGroupOrder { p: u64, order: u64 },
    /// Field root order is not a multiple of the group exponent.
    MissingRootOfUnity { need: u64, have: u64 },
    /// An `f_i` or `g_i` entry is not an element of the group.
    ForeignElement { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PairingSymmetry { i, j } => {
                write!(out, "chi_{i}(f_{j}) * chi_{j}(g_{i}) != 1")
            }
            Violation::QlsSymmetry { i, j } => {
                write!(out, "chi_{i}(f_{j}) * chi_{j}(f_{i}) != 1")
            }
            Violation::UnitSelfBraiding { i } => {
                write!(out, "chi_{i}(f_{i}) = 1 requires e_{i} > 0")
            }
            Violation::HeightMismatch { i, expected, got } => {
                write!(out, "height m_{i} = {got}, expected {expected}")
            }
            Violation::HeightTooSmall { i } => write!(out, "height m_{i} < 2"),
            Violation::PreNicholsInCharZero { i } => {
                write!(out, "pre-Nichols forbidden in characteristic 0 (e_{i} > 0)")
            }
            Violation::CharDividesGroupOrder { p, order } => {
                write!(out, "characteristic {p} divides the group order {order}")
            }
            Violation::MissingRootOfUnity { need, have } => {
                write!(
                    out,
                    "field provides root order {have}, group exponent is {need}"
                )
            }
            Violation::ForeignElement { i } => {
                write!(out, "f_{i} or g_{i} is not an element of the group")
            }
        }
    }
}

/// Non-fatal observations surfaced to the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flag {
    /// `c_i = 0`: the straddle pairing is degenerate at index `i`.
    DegeneratePairing { i: usize },
    /// `f_i = g_i`: the correction term of the straddle relation vanishes.
    CommutingStraddle { i: usize },
}

impl fmt::Display for Flag {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::DegeneratePairing { i } => write!(out, "degenerate pairing (c_{i} = 0)"),
            Flag::CommutingStraddle { i } => write!(out, "commuting straddle (f_{i} = g_{i})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub flags: Vec<Flag>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatumError {
    UnknownPreset(String),
    Field(ScalarError),
    /// Cartan matrix is not of type `A_1^n`; such data must come in through
    /// the structure-constant import hook instead.
    NonDiagonalCartan,
    BadCartanParameters(String),
}

impl fmt::Display for DatumError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumError::UnknownPreset(name) => write!(out, "unknown preset '{name}'"),
            DatumError::Field(e) => write!(out, "field configuration: {e}"),
            DatumError::NonDiagonalCartan => write!(
                out,
                "Cartan matrix is not of type A1^n; supply the braided algebras \
                 through the pre-Nichols structure-constant import instead"
            ),
            DatumError::BadCartanParameters(msg) => write!(out, "{msg}"),
        }
    }
}

impl std::error::Error for DatumError {}

impl From<ScalarError> for DatumError {
    fn from(e: ScalarError) -> Self {
        DatumError::Field(e)
    }
}

/// The quantum-linear-space datum: everything needed to build `H`.
#[derive(Debug, Clone)]
pub struct QlsDatum {
    pub group: AbelianGroup,
    pub field: ScalarField,
    /// Grading element of `v_i`.
    pub f: Vec<GroupElement>,
    /// Grading element of `w_i`.
    pub g: Vec<GroupElement>,
    pub chi: Vec<Character>,
    /// Straddle pairing constants `delta(w_i, v_i) = c_i`.
    pub c: Vec<Scalar>,
    /// Heights: `v_i^{m_i} = 0` and `w_i^{m_i} = 0`.
    pub m: Vec<u64>,
    /// Char-p exponents; `m_i = p^{e_i} ord(chi_i(f_i))` when `e_i > 0`.
    pub e: Vec<u32>,
}

impl QlsDatum {
    pub fn rank(&self) -> usize {
        self.f.len()
    }

    /// `chi_i(f_j)` as a field scalar.
    pub fn chi_of_f(&self, i: usize, j: usize) -> Scalar {
        self.group
            .char_eval(&self.chi[i], &self.f[j], &self.field)
            .expect("validated datum")
    }

    /// `chi_i(g_j)` as a field scalar.
    pub fn chi_of_g(&self, i: usize, j: usize) -> Scalar {
        self.group
            .char_eval(&self.chi[i], &self.g[j], &self.field)
            .expect("validated datum")
    }

    /// `chi_i` evaluated on an arbitrary group element.
    pub fn chi_at(&self, i: usize, x: &GroupElement) -> Scalar {
        self.group
            .char_eval(&self.chi[i], x, &self.field)
            .expect("validated datum")
    }

    pub fn dim_l(&self) -> u64 {
        self.m.iter().product()
    }

    pub fn dim_h(&self) -> u64 {
        self.dim_l() * self.group.order() * self.dim_l()
    }

    /// Checks every construction hypothesis; reports all failures instead of
    /// stopping at the first.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = vec![];
        let mut flags = vec![];
        let n = self.rank();
        let field = &self.field;
        let p = field.characteristic();

        let nf = field.root_order();
        let need = self.group.exponent();
        if nf % need != 0 {
            violations.push(Violation::MissingRootOfUnity { need, have: nf });
            // evaluation below would be meaningless
            return ValidationReport { violations, flags };
        }
        if p != 0 && self.group.order() % p == 0 {
            violations.push(Violation::CharDividesGroupOrder {
                p,
                order: self.group.order(),
            });
        }
        for i in 0..n {
            if !self.group.contains(&self.f[i]) || !self.group.contains(&self.g[i]) {
                violations.push(Violation::ForeignElement { i });
                return ValidationReport { violations, flags };
            }
        }

        let one = field.one();
        for i in 0..n {
            for j in 0..n {
                let lhs = field.mul(&self.chi_of_f(i, j), &self.chi_of_g(j, i));
                if lhs != one {
                    violations.push(Violation::PairingSymmetry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = field.mul(&self.chi_of_f(i, j), &self.chi_of_f(j, i));
                if lhs != one {
                    violations.push(Violation::QlsSymmetry { i, j });
                }
            }
        }
        for i in 0..n {
            if self.m[i] < 2 {
                violations.push(Violation::HeightTooSmall { i });
            }
            let q = self.chi_of_f(i, i);
            let e_exp = self.group.char_exponent(&self.chi[i], &self.f[i]);
            let ord = if e_exp == 0 {
                1
            } else {
                need / num_integer::gcd(need, e_exp)
            };
            debug_assert!(field.is_one(&field.pow(&q, ord as i64)));
            if self.e[i] == 0 {
                if field.is_one(&q) {
                    violations.push(Violation::UnitSelfBraiding { i });
                } else if self.m[i] != ord {
                    violations.push(Violation::HeightMismatch {
                        i,
                        expected: ord,
                        got: self.m[i],
                    });
                }
            } else if p == 0 {
                violations.push(Violation::PreNicholsInCharZero { i });
            } else {
                let expected = p.pow(self.e[i]) * ord;
                if self.m[i] != expected {
                    violations.push(Violation::HeightMismatch {
                        i,
                        expected,
                        got: self.m[i],
                    });
                }
            }
        }
        for i in 0..n {
            if field.is_zero(&self.c[i]) {
                flags.push(Flag::DegeneratePairing { i });
            }
            if self.f[i] == self.g[i] {
                flags.push(Flag::CommutingStraddle { i });
            }
        }
        ValidationReport { violations, flags }
    }

    /// Built-in data. `field` overrides the preset's default coefficient
    /// field (used e.g. to rerun a preset over a large prime for the trace
    /// oracle).
    pub fn preset(name: &str, field: Option<FieldSpec>) -> Result<QlsDatum, DatumError> {
        match name {
            "min-z4" => {
                let group = AbelianGroup::new(vec![4]);
                let spec = field.unwrap_or(FieldSpec::Prime { p: 13 });
                let field = ScalarField::create(&spec, group.exponent())?;
                let one = field.one();
                Ok(QlsDatum {
                    f: vec![group.element(&[1])],
                    g: vec![group.element(&[3])],
                    chi: vec![group.character(&[2])],
                    c: vec![one],
                    m: vec![2],
                    e: vec![0],
                    group,
                    field,
                })
            }
            "frobenius-sl2-l3" => {
                // rank-1 quantum Frobenius kernel: G = Z/6, f1 = g1^-1,
                // chi1(g1) = q^2 for q a primitive cube root, heights 3
                let group = AbelianGroup::new(vec![6]);
                let spec = field.unwrap_or(FieldSpec::Prime { p: 7 });
                let field = ScalarField::create(&spec, group.exponent())?;
                let one = field.one();
                Ok(QlsDatum {
                    f: vec![group.element(&[5])],
                    g: vec![group.element(&[1])],
                    chi: vec![group.character(&[4])],
                    c: vec![one],
                    m: vec![3],
                    e: vec![0],
                    group,
                    field,
                })
            }
            "prenichols-char3" => {
                let group = AbelianGroup::new(vec![2]);
                let spec = field.unwrap_or(FieldSpec::Prime { p: 3 });
                let field = ScalarField::create(&spec, group.exponent())?;
                let one = field.one();
                Ok(QlsDatum {
                    f: vec![group.element(&[1])],
                    g: vec![group.element(&[1])],
                    chi: vec![group.character(&[1])],
                    c: vec![one],
                    m: vec![6],
                    e: vec![1],
                    group,
                    field,
                })
            }
            other => Err(DatumError::UnknownPreset(other.to_string())),
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        &["min-z4", "frobenius-sl2-l3", "prenichols-char3"]
    }

    /// Builds the datum of a quantum Frobenius kernel of Cartan type `A_1^n`
    /// at an odd root of unity: `G = (Z/2l)^n`, `f_i = g_i^{-1}`,
    /// `chi_i(g_j) = q^{d_i a_ij}`, heights `ord(q^{2 d_i})`.
    ///
    /// `q` must be a primitive `l`-th root in `field`, whose designated root
    /// order must be (a multiple of) `2l`.
    pub fn from_cartan(
        ell: u64,
        cartan: &[Vec<i64>],
        q: &Scalar,
        field: &ScalarField,
    ) -> Result<QlsDatum, DatumError> {
        if ell <= 1 || ell % 2 == 0 {
            return Err(DatumError::BadCartanParameters(format!(
                "l = {ell} must be an odd integer > 1"
            )));
        }
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|row| row.len() != n) {
            return Err(DatumError::BadCartanParameters(
                "Cartan matrix must be square".into(),
            ));
        }
        if cartan.iter().flatten().any(|&a| a == -3) && ell % 3 == 0 {
            return Err(DatumError::BadCartanParameters(
                "entry -3 requires l not divisible by 3".into(),
            ));
        }
        for (i, row) in cartan.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                let want = if i == j { 2 } else { 0 };
                if a != want {
                    return Err(DatumError::NonDiagonalCartan);
                }
            }
        }
        if field.root_order() % (2 * ell) != 0 {
            return Err(DatumError::BadCartanParameters(format!(
                "field root order {} does not contain zeta_{}",
                field.root_order(),
                2 * ell
            )));
        }
        if field.order_dividing(q, ell) != Some(ell) {
            return Err(DatumError::BadCartanParameters(
                "q is not a primitive l-th root of unity".into(),
            ));
        }
        // express q as a power of the designated root so the characters can
        // be written as exponent vectors
        let nf = field.root_order();
        let s = (0..nf)
            .find(|&e| field.root_power(e as i64) == *q)
            .expect("a primitive l-th root is a power of zeta_N");

        let group = AbelianGroup::new(vec![2 * ell; n]);
        let n_g = group.exponent(); // = 2l
        let step = nf / n_g;
        assert_eq!(
            s % step,
            0,
            "q lives in the subgroup generated by zeta_exp(G)"
        );
        let s_local = s / step; // q = zeta_{2l}^{s_local}
        let mut f = vec![];
        let mut g = vec![];
        let mut chi = vec![];
        let mut m = vec![];
        for i in 0..n {
            g.push(group.generator(i));
            f.push(group.inv(&group.generator(i)));
            // chi_i(g_j) = q^{d_i a_ij}; type A1^n has d_i = 1, a_ij = 2 delta_ij
            let mut exps = vec![0i64; n];
            exps[i] = (2 * s_local) as i64;
            chi.push(group.character(&exps));
            let q2 = field.pow(q, 2);
            let ord = field
                .order_dividing(&q2, ell)
                .expect("q^2 is an l-th root of unity");
            m.push(ord);
        }
        Ok(QlsDatum {
            c: vec![field.one(); n],
            e: vec![0; n],
            f,
            g,
            chi,
            m,
            group,
            field: field.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in QlsDatum::preset_names() {
            let d = QlsDatum::preset(name, None).unwrap();
            let report = d.validate();
            assert!(report.ok(), "{name}: {:?}", report.violations);
        }
    }

    #[test]
    fn preset_dimensions() {
        let d = QlsDatum::preset("min-z4", None).unwrap();
        assert_eq!((d.dim_l(), d.dim_h()), (2, 16));
        let d = QlsDatum::preset("frobenius-sl2-l3", None).unwrap();
        assert_eq!((d.dim_l(), d.dim_h()), (3, 54));
        let d = QlsDatum::preset("prenichols-char3", None).unwrap();
        assert_eq!((d.dim_l(), d.dim_h()), (6, 72));
    }

    #[test]
    fn preset_flags() {
        let d = QlsDatum::preset("prenichols-char3", None).unwrap();
        let report = d.validate();
        assert!(report.flags.contains(&Flag::CommutingStraddle { i: 0 }));
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(
            QlsDatum::preset("nope", None),
            Err(DatumError::UnknownPreset(_))
        ));
    }

    #[test]
    fn pairing_symmetry_violation_reported() {
        // chi_1(g) = i of order 4 with g_1 = g: i * i = -1 != 1
        let group = AbelianGroup::new(vec![4]);
        let field = ScalarField::create(&FieldSpec::Prime { p: 13 }, 4).unwrap();
        let d = QlsDatum {
            f: vec![group.element(&[1])],
            g: vec![group.element(&[1])],
            chi: vec![group.character(&[1])],
            c: vec![field.one()],
            m: vec![4],
            e: vec![0],
            group,
            field,
        };
        let report = d.validate();
        assert!(report
            .violations
            .contains(&Violation::PairingSymmetry { i: 0, j: 0 }));
    }

    #[test]
    fn prenichols_rejected_in_char_zero() {
        let group = AbelianGroup::new(vec![2]);
        let field = ScalarField::create(&FieldSpec::Cyclotomic { m: 2 }, 2).unwrap();
        let d = QlsDatum {
            f: vec![group.element(&[1])],
            g: vec![group.element(&[1])],
            chi: vec![group.character(&[1])],
            c: vec![field.one()],
            m: vec![6],
            e: vec![1],
            group,
            field,
        };
        let report = d.validate();
        assert!(report
            .violations
            .contains(&Violation::PreNicholsInCharZero { i: 0 }));
    }

    #[test]
    fn height_checks() {
        // Nichols case with wrong height
        let group = AbelianGroup::new(vec![4]);
        let field = ScalarField::create(&FieldSpec::Prime { p: 13 }, 4).unwrap();
        let d = QlsDatum {
            f: vec![group.element(&[1])],
            g: vec![group.element(&[3])],
            chi: vec![group.character(&[2])],
            c: vec![field.one()],
            m: vec![3],
            e: vec![0],
            group,
            field,
        };
        let report = d.validate();
        assert!(report.violations.contains(&Violation::HeightMismatch {
            i: 0,
            expected: 2,
            got: 3
        }));
    }

    #[test]
    fn cartan_rank1_matches_frobenius_preset() {
        let field = ScalarField::create(&FieldSpec::Prime { p: 7 }, 6).unwrap();
        // q = zeta_6^2 is a primitive cube root
        let q = field.root_power(2);
        let d = QlsDatum::from_cartan(3, &[vec![2]], &q, &field).unwrap();
        assert!(d.validate().ok());
        assert_eq!(d.m, vec![3]);
        assert_eq!(d.dim_h(), 54);
        // chi_1(g_1) = q^2
        assert_eq!(d.chi_of_g(0, 0), field.pow(&q, 2));
        let preset = QlsDatum::preset("frobenius-sl2-l3", None).unwrap();
        assert_eq!(d.chi_of_g(0, 0), preset.chi_of_g(0, 0));
        assert_eq!(d.chi_of_f(0, 0), preset.chi_of_f(0, 0));
    }

    #[test]
    fn cartan_ell5() {
        let field = ScalarField::create(&FieldSpec::Prime { p: 11 }, 10).unwrap();
        let q = field.root_power(2); // primitive 5th root
        let d = QlsDatum::from_cartan(5, &[vec![2]], &q, &field).unwrap();
        assert!(d.validate().ok());
        assert_eq!(d.m, vec![5]);
        assert_eq!(d.dim_h(), 5 * 10 * 5);
    }

    #[test]
    fn cartan_rejects_non_diagonal() {
        let field = ScalarField::create(&FieldSpec::Prime { p: 7 }, 6).unwrap();
        let q = field.root_power(2);
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        assert!(matches!(
            QlsDatum::from_cartan(3, &a2, &q, &field),
            Err(DatumError::NonDiagonalCartan)
        ));
    }

    #[test]
    fn cartan_output_satisfies_pairing_symmetry_exactly() {
        let field = ScalarField::create(&FieldSpec::Prime { p: 31 }, 10).unwrap();
        let q = field.root_power(2);
        let d = QlsDatum::from_cartan(5, &[vec![2, 0], vec![0, 2]], &q, &field).unwrap();
        let one = field.one();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(field.mul(&d.chi_of_f(i, j), &d.chi_of_g(j, i)), one);
            }
        }
        assert!(d.validate().ok());
    }

    #[test]
    fn heights_have_exact_order() {
        // in every ok datum with e_i = 0: chi_i(f_i)^(m_i) = 1 and no
        // smaller positive power is 1
        for name in ["min-z4", "frobenius-sl2-l3"] {
            let d = QlsDatum::preset(name, None).unwrap();
            for i in 0..d.rank() {
                let q = d.chi_of_f(i, i);
                assert!(d.field.is_one(&d.field.pow(&q, d.m[i] as i64)));
                for j in 1..d.m[i] {
                    assert!(!d.field.is_one(&d.field.pow(&q, j as i64)));
                }
            }
        }
    }

    #[test]
    fn rank_zero_datum_is_valid() {
        let group = AbelianGroup::new(vec![3]);
        let field = ScalarField::create(&FieldSpec::Prime { p: 7 }, 3).unwrap();
        let d = QlsDatum {
            f: vec![],
            g: vec![],
            chi: vec![],
            c: vec![],
            m: vec![],
            e: vec![],
            group,
            field,
        };
        assert!(d.validate().ok());
        assert_eq!(d.dim_l(), 1);
        assert_eq!(d.dim_h(), 3);
    }
}
