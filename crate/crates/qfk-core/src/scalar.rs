//! Exact field arithmetic over the two coefficient backends: prime fields
//! `F_p` and cyclotomic fields `Q(zeta_M)`. Each field carries a designated
//! primitive `N`-th root of unity, chosen deterministically so that repeated
//! runs produce identical scalars.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Errors raised while configuring or operating on a scalar field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    /// The prime-field modulus failed the primality check.
    CompositeModulus(u64),
    /// Requested root order `n` does not divide `p - 1`.
    RootOrderNotInPrimeField { p: u64, n: u64 },
    /// Requested root order `n` does not divide the conductor `M`.
    RootOrderNotInConductor { m: u64, n: u64 },
    /// Root order or conductor must be positive.
    ZeroParameter,
    /// Operands belong to different fields.
    MixedFields,
    /// Division by zero.
    DivisionByZero,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::CompositeModulus(p) => write!(f, "modulus {p} is not prime"),
            ScalarError::RootOrderNotInPrimeField { p, n } => {
                write!(
                    f,
                    "no primitive {n}-th root in F_{p}: {n} does not divide {}",
                    p - 1
                )
            }
            ScalarError::RootOrderNotInConductor { m, n } => {
                write!(
                    f,
                    "no designated {n}-th root in Q(zeta_{m}): {n} does not divide {m}"
                )
            }
            ScalarError::ZeroParameter => write!(f, "root order and conductor must be positive"),
            ScalarError::MixedFields => write!(f, "operands belong to different scalar fields"),
            ScalarError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for ScalarError {}

/// Arithmetic operation selector for [`ScalarField::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Backend selector plus parameters for building a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    /// `F_p` with the given prime modulus.
    Prime { p: u64 },
    /// `F_p` for the least prime `p >= min` with `n | p - 1`.
    PrimeAuto { min: u64 },
    /// `Q(zeta_m)`, rationals modulo the `m`-th cyclotomic polynomial.
    Cyclotomic { m: u64 },
}

#[derive(Debug)]
enum FieldRepr {
    Prime {
        p: u64,
        root_order: u64,
        zeta: u64,
    },
    Cyclotomic {
        m: u64,
        root_order: u64,
        /// Monic integer coefficients of the `m`-th cyclotomic polynomial,
        /// length `deg + 1`, constant term first.
        phi: Vec<BigInt>,
        deg: usize,
    },
}

/// An exact coefficient field with a designated primitive root of unity.
///
/// Cheap to clone; all scalar arithmetic goes through field methods so that
/// cyclotomic reduction always has the modulus available.
#[derive(Clone, Debug)]
pub struct ScalarField(Arc<FieldRepr>);

/// A canonical scalar value. Prime-field values carry their modulus and
/// cyclotomic values their conductor, so mixing fields is detectable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Fp { p: u64, val: u64 },
    Cyc { m: u64, coeffs: Vec<BigRational> },
}

impl ScalarField {
    /// Builds a field guaranteeing a primitive `root_order`-th root of unity.
    ///
    /// The root is pinned deterministically: `g0^((p-1)/N)` for the least
    /// primitive root `g0` of `F_p`, or the class of `x^(M/N)` in the
    /// cyclotomic case.
    pub fn create(spec: &FieldSpec, root_order: u64) -> Result<ScalarField, ScalarError> {
        if root_order == 0 {
            return Err(ScalarError::ZeroParameter);
        }
        match *spec {
            FieldSpec::Prime { p } => {
                if !is_prime_u64(p) {
                    return Err(ScalarError::CompositeModulus(p));
                }
                if (p - 1) % root_order != 0 {
                    return Err(ScalarError::RootOrderNotInPrimeField { p, n: root_order });
                }
                let g0 = least_primitive_root(p);
                let zeta = pow_mod(g0, (p - 1) / root_order, p);
                Ok(ScalarField(Arc::new(FieldRepr::Prime {
                    p,
                    root_order,
                    zeta,
                })))
            }
            FieldSpec::PrimeAuto { min } => {
                let mut p = min.max(2);
                loop {
                    if is_prime_u64(p) && (p - 1) % root_order == 0 {
                        return ScalarField::create(&FieldSpec::Prime { p }, root_order);
                    }
                    p += 1;
                }
            }
            FieldSpec::Cyclotomic { m } => {
                if m == 0 {
                    return Err(ScalarError::ZeroParameter);
                }
                if m % root_order != 0 {
                    return Err(ScalarError::RootOrderNotInConductor { m, n: root_order });
                }
                let phi = cyclotomic_polynomial(m);
                let deg = phi.len() - 1;
                Ok(ScalarField(Arc::new(FieldRepr::Cyclotomic {
                    m,
                    root_order,
                    phi,
                    deg,
                })))
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self.0 {
            FieldRepr::Prime { p, .. } => p,
            FieldRepr::Cyclotomic { .. } => 0,
        }
    }

    /// Order of the designated root of unity.
    pub fn root_order(&self) -> u64 {
        match *self.0 {
            FieldRepr::Prime { root_order, .. } => root_order,
            FieldRepr::Cyclotomic { root_order, .. } => root_order,
        }
    }

    /// Conductor `M` of the cyclotomic backend, `None` over a prime field.
    pub fn conductor(&self) -> Option<u64> {
        match *self.0 {
            FieldRepr::Prime { .. } => None,
            FieldRepr::Cyclotomic { m, .. } => Some(m),
        }
    }

    pub fn same_field(&self, other: &ScalarField) -> bool {
        match (&*self.0, &*other.0) {
            (
                FieldRepr::Prime {
                    p: a,
                    root_order: na,
                    ..
                },
                FieldRepr::Prime {
                    p: b,
                    root_order: nb,
                    ..
                },
            ) => a == b && na == nb,
            (
                FieldRepr::Cyclotomic {
                    m: a,
                    root_order: na,
                    ..
                },
                FieldRepr::Cyclotomic {
                    m: b,
                    root_order: nb,
                    ..
                },
            ) => a == b && na == nb,
            _ => false,
        }
    }

    fn owns(&self, s: &Scalar) -> bool {
        match (&*self.0, s) {
            (FieldRepr::Prime { p, .. }, Scalar::Fp { p: q, .. }) => p == q,
            (FieldRepr::Cyclotomic { m, .. }, Scalar::Cyc { m: mm, .. }) => m == mm,
            _ => false,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match &*self.0 {
            FieldRepr::Prime { p, .. } => {
                let r = v.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: r }
            }
            FieldRepr::Cyclotomic { m, deg, .. } => {
                let mut coeffs = vec![BigRational::zero(); *deg];
                if *deg > 0 {
                    coeffs[0] = BigRational::from(BigInt::from(v));
                }
                Scalar::Cyc { m: *m, coeffs }
            }
        }
    }

    pub fn from_rational(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match &*self.0 {
            FieldRepr::Prime { .. } => {
                let n = self.from_i64(num);
                let d = self.from_i64(den);
                self.div(&n, &d)
            }
            FieldRepr::Cyclotomic { m, deg, .. } => {
                let mut coeffs = vec![BigRational::zero(); *deg];
                if *deg > 0 {
                    coeffs[0] = BigRational::new(BigInt::from(num), BigInt::from(den));
                }
                Scalar::Cyc { m: *m, coeffs }
            }
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Cyc { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        *s == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        debug_assert!(self.owns(a) && self.owns(b), "mixed fields");
        match (a, b) {
            (Scalar::Fp { p, val: x }, Scalar::Fp { val: y, .. }) => {
                let s = x + y;
                Scalar::Fp {
                    p: *p,
                    val: if s >= *p { s - p } else { s },
                }
            }
            (Scalar::Cyc { m, coeffs: x }, Scalar::Cyc { coeffs: y, .. }) => {
                let coeffs = x.iter().zip(y).map(|(u, v)| u + v).collect();
                Scalar::Cyc { m: *m, coeffs }
            }
            _ => panic!("mixed scalar backends"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        debug_assert!(self.owns(a), "mixed fields");
        match a {
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
            Scalar::Cyc { m, coeffs } => Scalar::Cyc {
                m: *m,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        debug_assert!(self.owns(a) && self.owns(b), "mixed fields");
        match (a, b) {
            (Scalar::Fp { p, val: x }, Scalar::Fp { val: y, .. }) => Scalar::Fp {
                p: *p,
                val: mul_mod(*x, *y, *p),
            },
            (Scalar::Cyc { m, coeffs: x }, Scalar::Cyc { coeffs: y, .. }) => {
                let FieldRepr::Cyclotomic { phi, deg, .. } = &*self.0 else {
                    panic!("mixed scalar backends")
                };
                if *deg == 0 {
                    return Scalar::Cyc {
                        m: *m,
                        coeffs: vec![],
                    };
                }
                let mut prod = vec![BigRational::zero(); 2 * deg - 1];
                for (i, u) in x.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        prod[i + j] += u * v;
                    }
                }
                reduce_mod_phi(&mut prod, phi);
                Scalar::Cyc {
                    m: *m,
                    coeffs: prod,
                }
            }
            _ => panic!("mixed scalar backends"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!self.is_zero(a), "inverse of zero");
        match a {
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: pow_mod(*val, p - 2, *p),
            },
            Scalar::Cyc { m, coeffs } => {
                let FieldRepr::Cyclotomic { phi, deg, .. } = &*self.0 else {
                    panic!("mixed scalar backends")
                };
                let mut inv = poly_mod_inverse(coeffs, phi);
                inv.resize(*deg, BigRational::zero());
                Scalar::Cyc { m: *m, coeffs: inv }
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Scalar, e: i64) -> Scalar {
        if e < 0 {
            return self.pow(&self.inv(a), -e);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Checked arithmetic entry point: validates field membership and the
    /// divisor before dispatching.
    pub fn arith(&self, a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        if !self.owns(a) || !self.owns(b) {
            return Err(ScalarError::MixedFields);
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => {
                if self.is_zero(b) {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(self.div(a, b))
                }
            }
        }
    }

    /// The designated primitive root `zeta_N` raised to the power `e`.
    pub fn root_power(&self, e: i64) -> Scalar {
        let n = self.root_order() as i64;
        let e = e.rem_euclid(n);
        match &*self.0 {
            FieldRepr::Prime { p, zeta, .. } => Scalar::Fp {
                p: *p,
                val: pow_mod(*zeta, e as u64, *p),
            },
            FieldRepr::Cyclotomic {
                m,
                root_order,
                phi,
                deg,
            } => {
                // zeta_N = x^(M/N), so zeta_N^e = x^(e*M/N) reduced mod Phi_M.
                let k = (e as u64 * (m / root_order)) % m;
                let mut raw = vec![BigRational::zero(); k as usize + 1];
                raw[k as usize] = BigRational::one();
                reduce_mod_phi(&mut raw, phi);
                raw.resize(*deg, BigRational::zero());
                Scalar::Cyc { m: *m, coeffs: raw }
            }
        }
    }

    pub fn zeta(&self) -> Scalar {
        self.root_power(1)
    }

    /// For the cyclotomic backend, the class of `x` in `Q[x]/Phi_M` (a
    /// primitive `M`-th root); `None` over a prime field.
    pub fn conductor_root(&self) -> Option<Scalar> {
        match &*self.0 {
            FieldRepr::Prime { .. } => None,
            FieldRepr::Cyclotomic { m, deg, phi, .. } => {
                let mut raw = vec![BigRational::zero(); 2];
                raw[1] = BigRational::one();
                reduce_mod_phi(&mut raw, phi);
                raw.resize(*deg, BigRational::zero());
                Some(Scalar::Cyc { m: *m, coeffs: raw })
            }
        }
    }

    /// Multiplicative order of `s`, searched among divisors of `bound`.
    /// Returns `None` if `s` is zero or `s^bound != 1`.
    pub fn order_dividing(&self, s: &Scalar, bound: u64) -> Option<u64> {
        if self.is_zero(s) {
            return None;
        }
        (1..=bound)
            .filter(|d| bound % d == 0)
            .find(|&d| self.is_one(&self.pow(s, d as i64)))
    }

    /// Re-normalizes a scalar; canonical inputs come back unchanged.
    pub fn canon(&self, s: &Scalar) -> Scalar {
        match s {
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: val % p,
            },
            Scalar::Cyc { m, coeffs } => {
                let FieldRepr::Cyclotomic { phi, deg, .. } = &*self.0 else {
                    panic!("mixed scalar backends")
                };
                let mut c = coeffs.clone();
                reduce_mod_phi(&mut c, phi);
                c.resize(*deg, BigRational::zero());
                Scalar::Cyc { m: *m, coeffs: c }
            }
        }
    }

    /// Renders a scalar for reports: a residue for `F_p`, a coefficient
    /// vector of reduced fractions for the cyclotomic backend.
    pub fn display(&self, s: &Scalar) -> String {
        match s {
            Scalar::Fp { val, .. } => format!("{val}"),
            Scalar::Cyc { coeffs, .. } => {
                let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }
}

/// Schoolbook polynomial remainder by the monic modulus `phi` (integer
/// coefficients, constant term first), in place on `poly`. Afterwards
/// `poly.len() == deg(phi)`.
fn reduce_mod_phi(poly: &mut Vec<BigRational>, phi: &[BigInt]) {
    let deg = phi.len() - 1;
    while poly.len() > deg {
        let lead = poly.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let top = poly.len() - deg;
        for (k, c) in phi[..deg].iter().enumerate() {
            if !c.is_zero() {
                let t = &lead * BigRational::from(c.clone());
                poly[top + k] -= t;
            }
        }
    }
    poly.resize(deg, BigRational::zero());
}

/// Extended Euclid in `Q[x]`: inverse of `a` modulo the monic `phi`.
fn poly_mod_inverse(a: &[BigRational], phi: &[BigInt]) -> Vec<BigRational> {
    let phi_q: Vec<BigRational> = phi.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut r0 = trim(phi_q);
    let mut r1 = trim(a.to_vec());
    let mut s0: Vec<BigRational> = vec![];
    let mut s1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = trim(s2);
    }
    // r0 is a nonzero constant: Phi_M is irreducible over Q.
    assert_eq!(
        r0.len(),
        1,
        "element not invertible modulo the cyclotomic polynomial"
    );
    let c = r0[0].clone();
    s0.iter().map(|x| x / &c).collect()
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, u) in a.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for (j, v) in b.iter().enumerate() {
            out[i + j] += u * v;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, u) in a.iter().enumerate() {
        out[i] += u;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    for k in (0..quot.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let q = &top / &lead;
        for (j, c) in b.iter().enumerate() {
            let t = &q * c;
            rem[k + j] -= t;
        }
        quot[k] = q;
    }
    (trim(quot), trim(rem))
}

/// The `m`-th cyclotomic polynomial over `Z`, constant term first, computed
/// by exact division of `x^m - 1` by the lower cyclotomic factors.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut memo: Vec<Option<Vec<BigInt>>> = vec![None; m as usize + 1];
    cyclo_rec(m, &mut memo)
}

fn cyclo_rec(m: u64, memo: &mut Vec<Option<Vec<BigInt>>>) -> Vec<BigInt> {
    if let Some(p) = &memo[m as usize] {
        return p.clone();
    }
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclo_rec(d, memo);
            num = int_poly_exact_div(&num, &phi_d);
        }
    }
    memo[m as usize] = Some(num.clone());
    num
}

fn int_poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for k in (0..quot.len()).rev() {
        let top = rem[k + db].clone();
        if top.is_zero() {
            continue;
        }
        // every cyclotomic factor is monic
        for (j, c) in b.iter().enumerate() {
            rem[k + j] -= &top * c;
        }
        quot[k] = top;
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "non-exact polynomial division"
    );
    quot
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the chosen base set decides every 64-bit
/// integer correctly.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn factor_u64(mut n: u64) -> Vec<u64> {
    let mut primes = vec![];
    for q in [2u64, 3, 5] {
        if n % q == 0 {
            primes.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
    }
    let mut d = 7u64;
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            primes.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += steps[i % 8];
        i += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// Least primitive root of `F_p` (deterministic scan).
pub fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let prime_factors = factor_u64(p - 1);
    'cand: for g in 2..p {
        for q in &prime_factors {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("every prime field has a primitive root")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    #[test]
    fn primitive_root_in_f13() {
        // 2 is the least primitive root mod 13, so zeta_4 = 2^(12/4) = 8.
        let f = ScalarField::create(&FieldSpec::Prime { p: 13 }, 4).unwrap();
        assert_eq!(f.zeta(), Scalar::Fp { p: 13, val: 8 });
        // 8^2 = 64 = 12 = -1 mod 13
        assert_eq!(f.root_power(2), f.from_i64(12));
        assert_eq!(f.mul(&f.zeta(), &f.zeta()), f.from_i64(-1));
    }

    #[test]
    fn trivial_root_order() {
        let f = ScalarField::create(&FieldSpec::Prime { p: 7 }, 1).unwrap();
        assert_eq!(f.zeta(), f.one());
    }

    #[test]
    fn rejects_bad_configurations() {
        assert!(matches!(
            ScalarField::create(&FieldSpec::Prime { p: 7 }, 4),
            Err(ScalarError::RootOrderNotInPrimeField { p: 7, n: 4 })
        ));
        assert!(matches!(
            ScalarField::create(&FieldSpec::Prime { p: 12 }, 1),
            Err(ScalarError::CompositeModulus(12))
        ));
        assert!(matches!(
            ScalarField::create(&FieldSpec::Cyclotomic { m: 6 }, 4),
            Err(ScalarError::RootOrderNotInConductor { m: 6, n: 4 })
        ));
    }

    #[test]
    fn mixed_fields_and_zero_division_are_reported() {
        let f13 = ScalarField::create(&FieldSpec::Prime { p: 13 }, 4).unwrap();
        let f7 = ScalarField::create(&FieldSpec::Prime { p: 7 }, 1).unwrap();
        let a = f13.one();
        let b = f7.one();
        assert_eq!(
            f13.arith(&a, &b, ArithOp::Add),
            Err(ScalarError::MixedFields)
        );
        assert_eq!(
            f13.arith(&a, &f13.zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn gaussian_integers_defining_relation() {
        // Q(zeta_4) = Q[x]/(x^2 + 1): x * x = -1.
        let f = ScalarField::create(&FieldSpec::Cyclotomic { m: 4 }, 4).unwrap();
        let x = f.zeta();
        assert_eq!(f.mul(&x, &x), f.from_i64(-1));
        assert_eq!(f.root_power(4), f.one());
        assert_eq!(f.root_power(0), f.one());
    }

    #[test]
    fn cyclotomic_inverse_and_canon() {
        let f = ScalarField::create(&FieldSpec::Cyclotomic { m: 12 }, 12).unwrap();
        let z = f.zeta();
        let a = f.add(&f.mul(&z, &z), &f.from_rational(3, 7));
        let inv = f.inv(&a);
        assert!(f.is_one(&f.mul(&a, &inv)));
        assert_eq!(f.canon(&a), a);
        assert_eq!(f.canon(&f.canon(&a)), f.canon(&a));
    }

    #[test]
    fn designated_root_has_exact_order() {
        for (spec, n) in [
            (FieldSpec::Prime { p: 13 }, 4u64),
            (FieldSpec::Prime { p: 7 }, 6),
            (FieldSpec::Prime { p: 257 }, 4),
            (FieldSpec::Cyclotomic { m: 6 }, 6),
            (FieldSpec::Cyclotomic { m: 12 }, 4),
        ] {
            let f = ScalarField::create(&spec, n).unwrap();
            let z = f.zeta();
            assert!(f.is_one(&f.pow(&z, n as i64)));
            for d in 1..n {
                if n % d == 0 {
                    assert!(!f.is_one(&f.pow(&z, d as i64)), "order divides {d} < {n}");
                }
            }
            assert_eq!(f.order_dividing(&z, n), Some(n));
        }
    }

    #[test]
    fn field_axioms_randomized() {
        // associativity, distributivity, inverses over >= 1000 random triples
        // per backend
        let fields = [
            ScalarField::create(&FieldSpec::Prime { p: 257 }, 4).unwrap(),
            ScalarField::create(&FieldSpec::Cyclotomic { m: 12 }, 12).unwrap(),
        ];
        for f in &fields {
            let mut rng = SplitMix64::new(0x5ca1ab1e);
            let sample = |rng: &mut SplitMix64, f: &ScalarField| {
                let e = (rng.next_u64() % 24) as i64;
                let k = (rng.next_u64() % 11) as i64 - 5;
                f.add(&f.pow(&f.zeta(), e), &f.from_i64(k))
            };
            for _ in 0..1000 {
                let a = sample(&mut rng, f);
                let b = sample(&mut rng, f);
                let c = sample(&mut rng, f);
                assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                if !f.is_zero(&a) {
                    assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
                }
                assert_eq!(f.add(&a, &f.zero()), a);
            }
        }
    }

    #[test]
    fn prime_auto_picks_least_admissible() {
        let f = ScalarField::create(&FieldSpec::PrimeAuto { min: 250 }, 4).unwrap();
        assert_eq!(f.characteristic(), 257);
    }

    #[test]
    fn cyclotomic_polynomial_values() {
        let to_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.into_iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(to_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }
}
