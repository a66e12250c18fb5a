//! Finite abelian groups presented as products of cyclic groups, their dual
//! groups of characters, and character evaluation in a scalar field.
//!
//! Groups keep the user's moduli list as given; no invariant-factor
//! canonicalization is performed, so generator labels survive round trips.

use std::fmt;

use crate::scalar::{Scalar, ScalarField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Element exponent vector does not match the group's moduli list.
    MixedGroups,
    /// Field's designated root order is not a multiple of the group exponent.
    RootOrderTooSmall { need: u64, have: u64 },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::MixedGroups => write!(f, "element does not belong to this group"),
            GroupError::RootOrderTooSmall { need, have } => {
                write!(
                    f,
                    "field root order {have} is not a multiple of the group exponent {need}"
                )
            }
        }
    }
}

impl std::error::Error for GroupError {}

/// `Z/m_1 x ... x Z/m_k` with cached order and exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// Exponent vector reduced componentwise mod the moduli.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

/// A character of the group, stored as an exponent vector: the `j`-th
/// standard generator maps to `zeta_N^((N/m_j) * a_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub Vec<u64>);

/// A character of `Ghat x G`, identified with a pair `(g0, mu)` in `G x Ghat`
/// evaluating as `(ghat, g) -> ghat(g0) * mu(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductWeight {
    pub g0: GroupElement,
    pub mu: Character,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> AbelianGroup {
        assert!(moduli.iter().all(|&m| m >= 1), "moduli must be positive");
        let order = moduli.iter().product::<u64>().max(1);
        let exponent = moduli.iter().fold(1u64, |acc, &m| num_integer::lcm(acc, m));
        AbelianGroup {
            moduli,
            order,
            exponent,
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.moduli.len()])
    }

    /// The `j`-th standard generator.
    pub fn generator(&self, j: usize) -> GroupElement {
        let mut e = vec![0; self.moduli.len()];
        e[j] = 1 % self.moduli[j];
        GroupElement(e)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.moduli.len() && x.0.iter().zip(&self.moduli).all(|(e, m)| e < m)
    }

    pub fn element(&self, exps: &[i64]) -> GroupElement {
        assert_eq!(exps.len(), self.moduli.len());
        GroupElement(
            exps.iter()
                .zip(&self.moduli)
                .map(|(e, m)| e.rem_euclid(*m as i64) as u64)
                .collect(),
        )
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(x) && self.contains(y));
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.moduli)
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
        )
    }

    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(x));
        GroupElement(
            x.0.iter()
                .zip(&self.moduli)
                .map(|(a, m)| if *a == 0 { 0 } else { m - a })
                .collect(),
        )
    }

    pub fn pow(&self, x: &GroupElement, e: i64) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.moduli)
                .map(|(a, m)| ((*a as i64 * e).rem_euclid(*m as i64)) as u64)
                .collect(),
        )
    }

    /// Checked group operation per the external contract.
    pub fn group_ops(
        &self,
        x: &GroupElement,
        y: Option<&GroupElement>,
        invert: bool,
    ) -> Result<GroupElement, GroupError> {
        if !self.contains(x) || y.is_some_and(|y| !self.contains(y)) {
            return Err(GroupError::MixedGroups);
        }
        Ok(if invert {
            self.inv(x)
        } else {
            self.mul(x, y.expect("mul requires two operands"))
        })
    }

    /// Mixed-radix index of an element; lexicographic in the exponent vector.
    pub fn element_index(&self, x: &GroupElement) -> usize {
        debug_assert!(self.contains(x));
        let mut idx = 0usize;
        for (e, m) in x.0.iter().zip(&self.moduli) {
            idx = idx * (*m as usize) + *e as usize;
        }
        idx
    }

    pub fn element_from_index(&self, mut idx: usize) -> GroupElement {
        let mut exps = vec![0u64; self.moduli.len()];
        for j in (0..self.moduli.len()).rev() {
            let m = self.moduli[j] as usize;
            exps[j] = (idx % m) as u64;
            idx /= m;
        }
        GroupElement(exps)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order as usize)
            .map(|i| self.element_from_index(i))
            .collect()
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.moduli.len()])
    }

    pub fn character(&self, exps: &[i64]) -> Character {
        Character(self.element(exps).0)
    }

    pub fn character_index(&self, chi: &Character) -> usize {
        self.element_index(&GroupElement(chi.0.clone()))
    }

    pub fn character_from_index(&self, idx: usize) -> Character {
        Character(self.element_from_index(idx).0)
    }

    /// Pointwise product of characters.
    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(
            self.mul(&GroupElement(a.0.clone()), &GroupElement(b.0.clone()))
                .0,
        )
    }

    pub fn char_inv(&self, a: &Character) -> Character {
        Character(self.inv(&GroupElement(a.0.clone())).0)
    }

    pub fn char_pow(&self, a: &Character, e: i64) -> Character {
        Character(self.pow(&GroupElement(a.0.clone()), e).0)
    }

    /// The exponent of `zeta_N` (N = group exponent) giving `chi(g)`.
    pub fn char_exponent(&self, chi: &Character, g: &GroupElement) -> u64 {
        debug_assert!(self.contains(g) && chi.0.len() == self.moduli.len());
        let n = self.exponent;
        let mut acc = 0u64;
        for ((a, e), m) in chi.0.iter().zip(&g.0).zip(&self.moduli) {
            acc = (acc + (n / m) * ((a * e) % m)) % n;
        }
        acc
    }

    /// Evaluates `chi(g)` in `field`; the field's root order must be a
    /// multiple of the group exponent.
    pub fn char_eval(
        &self,
        chi: &Character,
        g: &GroupElement,
        field: &ScalarField,
    ) -> Result<Scalar, GroupError> {
        let nf = field.root_order();
        if nf % self.exponent != 0 {
            return Err(GroupError::RootOrderTooSmall {
                need: self.exponent,
                have: nf,
            });
        }
        if !self.contains(g) {
            return Err(GroupError::MixedGroups);
        }
        let e = self.char_exponent(chi, g);
        Ok(field.root_power(((nf / self.exponent) * e) as i64))
    }

    /// All `|G|` characters in lexicographic order of exponent vectors.
    pub fn enumerate_dual(&self) -> Vec<Character> {
        (0..self.order as usize)
            .map(|i| self.character_from_index(i))
            .collect()
    }

    /// All `|G|^2` characters of `Ghat x G`, lexicographic in `(g0, mu)`.
    pub fn enumerate_product_weights(&self) -> Vec<ProductWeight> {
        let mut out = Vec::with_capacity((self.order * self.order) as usize);
        for i in 0..self.order as usize {
            let g0 = self.element_from_index(i);
            for j in 0..self.order as usize {
                out.push(ProductWeight {
                    g0: g0.clone(),
                    mu: self.character_from_index(j),
                });
            }
        }
        out
    }

    /// Evaluates a product weight on `(ghat, g)`.
    pub fn weight_eval(
        &self,
        w: &ProductWeight,
        ghat: &Character,
        g: &GroupElement,
        field: &ScalarField,
    ) -> Result<Scalar, GroupError> {
        let a = self.char_eval(ghat, &w.g0, field)?;
        let b = self.char_eval(&w.mu, g, field)?;
        Ok(field.mul(&a, &b))
    }

    pub fn format_element(&self, g: &GroupElement) -> String {
        format!("g{:?}", g.0)
    }

    pub fn format_character(&self, chi: &Character) -> String {
        format!("chi{:?}", chi.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::scalar::FieldSpec;

    #[test]
    fn cyclic_inverse_pair() {
        let g = AbelianGroup::new(vec![4]);
        let a = g.element(&[1]);
        let b = g.element(&[3]);
        assert_eq!(g.mul(&a, &b), g.identity());
        assert_eq!(g.group_ops(&a, None, true).unwrap(), b);
    }

    #[test]
    fn componentwise_arithmetic() {
        let g = AbelianGroup::new(vec![2, 3]);
        let x = g.element(&[1, 2]);
        assert_eq!(g.mul(&x, &x), g.element(&[0, 1]));
        assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        assert_eq!(g.order(), 6);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn mixed_groups_detected() {
        let g = AbelianGroup::new(vec![4]);
        let alien = GroupElement(vec![1, 1]);
        assert_eq!(
            g.group_ops(&g.identity(), Some(&alien), false),
            Err(GroupError::MixedGroups)
        );
    }

    #[test]
    fn character_evaluation_z4() {
        // chi = (2) on Z/4 over F_13 (zeta_4 = 8): chi(g) = 8^2 = 12 = -1.
        let g = AbelianGroup::new(vec![4]);
        let f = ScalarField::create(&FieldSpec::Prime { p: 13 }, 4).unwrap();
        let chi = g.character(&[2]);
        let gen = g.generator(0);
        assert_eq!(g.char_eval(&chi, &gen, &f).unwrap(), f.from_i64(12));
        assert_eq!(
            g.char_eval(&g.trivial_character(), &gen, &f).unwrap(),
            f.one()
        );
        assert_eq!(g.char_eval(&chi, &g.identity(), &f).unwrap(), f.one());
    }

    #[test]
    fn char_eval_requires_root_order() {
        let g = AbelianGroup::new(vec![4]);
        let f = ScalarField::create(&FieldSpec::Prime { p: 7 }, 2).unwrap();
        assert!(matches!(
            g.char_eval(&g.trivial_character(), &g.identity(), &f),
            Err(GroupError::RootOrderTooSmall { need: 4, have: 2 })
        ));
    }

    #[test]
    fn dual_enumeration_counts() {
        assert_eq!(AbelianGroup::new(vec![2]).enumerate_dual().len(), 2);
        assert_eq!(AbelianGroup::new(vec![4]).enumerate_dual().len(), 4);
        assert_eq!(AbelianGroup::new(vec![2, 3]).enumerate_dual().len(), 6);
        assert_eq!(
            AbelianGroup::new(vec![2]).enumerate_product_weights().len(),
            4
        );
        assert_eq!(
            AbelianGroup::new(vec![4]).enumerate_product_weights().len(),
            16
        );
    }

    #[test]
    fn characters_are_multiplicative() {
        let g = AbelianGroup::new(vec![4, 3]);
        let f = ScalarField::create(&FieldSpec::Prime { p: 13 }, 12).unwrap();
        for chi in g.enumerate_dual() {
            for x in g.elements() {
                for y in g.elements() {
                    let lhs = g.char_eval(&chi, &g.mul(&x, &y), &f).unwrap();
                    let rhs = f.mul(
                        &g.char_eval(&chi, &x, &f).unwrap(),
                        &g.char_eval(&chi, &y, &f).unwrap(),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn orthogonality_sums() {
        // sum_g chi(g) = 0 for nontrivial chi, |G| for trivial chi.
        for moduli in [vec![4], vec![2, 3], vec![8, 2], vec![2, 2, 2, 2]] {
            let g = AbelianGroup::new(moduli);
            assert!(g.order() <= 64);
            let f = ScalarField::create(&FieldSpec::PrimeAuto { min: 2 }, g.exponent()).unwrap();
            for chi in g.enumerate_dual() {
                let mut acc = f.zero();
                for x in g.elements() {
                    acc = f.add(&acc, &g.char_eval(&chi, &x, &f).unwrap());
                }
                if chi == g.trivial_character() {
                    assert_eq!(acc, f.from_i64(g.order() as i64));
                } else {
                    assert!(f.is_zero(&acc), "nontrivial character sum nonzero");
                }
            }
        }
    }

    #[test]
    fn double_duality_pairing_nondegenerate() {
        // the matrix [chi(g)] is invertible over k for |G| <= 16
        for moduli in [vec![4], vec![2, 2], vec![3, 4], vec![16]] {
            let g = AbelianGroup::new(moduli);
            assert!(g.order() <= 16);
            let f = ScalarField::create(&FieldSpec::PrimeAuto { min: 2 }, g.exponent()).unwrap();
            let n = g.order() as usize;
            let mut mat = Matrix::zeros(&f, n, n);
            for (i, chi) in g.enumerate_dual().iter().enumerate() {
                for (j, x) in g.elements().iter().enumerate() {
                    mat.set(i, j, g.char_eval(chi, x, &f).unwrap());
                }
            }
            assert_eq!(mat.rank(), n);
        }
    }

    #[test]
    fn product_weights_are_multiplicative() {
        let g = AbelianGroup::new(vec![4]);
        let f = ScalarField::create(&FieldSpec::Prime { p: 13 }, 4).unwrap();
        let ws = g.enumerate_product_weights();
        assert_eq!(ws.len(), 16);
        // identity weight evaluates to 1 everywhere
        let id = &ws[0];
        for ghat in g.enumerate_dual() {
            for x in g.elements() {
                assert!(f.is_one(&g.weight_eval(id, &ghat, &x, &f).unwrap()));
            }
        }
        // multiplicativity on Ghat x G for every weight
        for w in &ws {
            for a in g.enumerate_dual().iter().take(2) {
                for b in g.enumerate_dual().iter().take(2) {
                    for x in g.elements().iter().take(2) {
                        for y in g.elements().iter().take(2) {
                            let lhs = g
                                .weight_eval(w, &g.char_mul(a, b), &g.mul(x, y), &f)
                                .unwrap();
                            let rhs = f.mul(
                                &g.weight_eval(w, a, x, &f).unwrap(),
                                &g.weight_eval(w, b, y, &f).unwrap(),
                            );
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let g = AbelianGroup::new(vec![3, 2, 5]);
        for i in 0..g.order() as usize {
            assert_eq!(g.element_index(&g.element_from_index(i)), i);
        }
    }
}
