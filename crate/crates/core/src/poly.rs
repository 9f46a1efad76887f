//! Dense univariate polynomials over a finite field, with the factorization
//! pipeline needed to enumerate places: squarefree decomposition (valid in
//! characteristic p), distinct-degree splitting, and randomized equal-degree
//! splitting with a fixed seed. Output ordering is deterministic.

use std::fmt;

use num::BigUint;
use num::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, FqElem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot factor the zero polynomial")]
    ZeroFactor,
}

/// Polynomial in one variable with coefficients in a fixed finite field.
/// Coefficients are stored densely, constant term first, trailing zeros
/// stripped; the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<FqElem>) -> Poly {
        let mut coeffs = coeffs;
        while coeffs.last().map(FqElem::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        for c in &coeffs {
            assert!(c.field() == field, "coefficient from a different field");
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(FqElem::one(field))
    }

    pub fn constant(c: FqElem) -> Poly {
        let field = c.field().clone();
        Poly::new(&field, vec![c])
    }

    /// The variable `t`.
    pub fn var(field: &Field) -> Poly {
        Poly::new(field, vec![FqElem::zero(field), FqElem::one(field)])
    }

    /// Convenience constructor from integer coefficients, constant term first.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| FqElem::from_int(field, c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FqElem::zero(&self.field))
    }

    pub fn leading_coeff(&self) -> FqElem {
        self.coeffs.last().cloned().unwrap_or_else(|| FqElem::zero(&self.field))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(FqElem::is_one).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.leading_coeff().inv().unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &FqElem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FqElem::zero(&self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(&self.field, coeffs)
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let mut acc = FqElem::zero(x.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &FqElem::from_int(&self.field, i as i64))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    /// Euclidean division by a nonzero divisor; returns (quotient, remainder).
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading_coeff().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FqElem::zero(&self.field); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = &rem[rem.len() - 1] * &lead_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                let sub = dc * &q;
                rem[k + i] = &rem[k + i] - &sub;
            }
            while rem.last().map(FqElem::is_zero).unwrap_or(false) {
                rem.pop();
            }
            quot[k] = q;
            if rem.len() <= k + dd {
                // leading term eliminated; loop condition re-checks
            }
        }
        (Poly::new(&self.field, quot), Poly::new(&self.field, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m` with an arbitrary-precision exponent.
    pub fn powmod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
        }
        acc
    }

    /// Apply a map to every coefficient (Frobenius, embeddings, ...).
    pub fn map_coeffs<F: Fn(&FqElem) -> FqElem>(&self, field: &Field, f: F) -> Poly {
        Poly::new(field, self.coeffs.iter().map(f).collect())
    }

    /// Composition `self(other)`.
    pub fn compose(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    /// p-th root of a polynomial all of whose exponents are divisible by p
    /// (coefficientwise inverse Frobenius; finite fields are perfect).
    fn pth_root(&self) -> Poly {
        let p = self.field.characteristic() as usize;
        let q = self.field.order();
        let root_exp = (q / p as u64) as i64; // c^(q/p) is the p-th root of c
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                coeffs.push(c.pow(root_exp));
            } else {
                assert!(c.is_zero(), "pth_root of a polynomial not in F_q[t^p]");
            }
        }
        Poly::new(&self.field, coeffs)
    }

    /// Key used for deterministic ordering of factor lists: (degree,
    /// coefficient indices from the constant term up).
    fn sort_key(&self) -> (usize, Vec<u64>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().map(FqElem::index).collect(),
        )
    }

    /// Distinct roots in the coefficient field, sorted by enumeration index.
    /// Small fields are searched exhaustively; larger ones go through the
    /// factorization pipeline.
    pub fn roots(&self) -> Vec<FqElem> {
        if self.is_zero() || self.is_constant() {
            return Vec::new();
        }
        let mut out: Vec<FqElem> = if self.field.order() <= 512 {
            crate::field::enumerate(&self.field)
                .filter(|e| self.eval(e).is_zero())
                .collect()
        } else {
            self.factor()
                .unwrap()
                .factors
                .into_iter()
                .filter(|(f, _)| f.degree() == Some(1))
                .map(|(f, _)| -f.coeff(0))
                .collect()
        };
        out.sort_by_key(FqElem::index);
        out
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let f = self.monic();
                let fact = f.factor().unwrap();
                fact.factors.len() == 1 && fact.factors[0].1 == 1
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients). `unit * prod(f_i^{e_i})` equals the
    /// input exactly.
    pub fn factor(&self) -> Result<Factorization, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroFactor);
        }
        let unit = self.leading_coeff();
        let monic = self.monic();
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        for (sqfree, mult) in squarefree_decomposition(&monic) {
            for irr in factor_squarefree(&sqfree) {
                factors.push((irr, mult));
            }
        }
        factors.sort_by_key(|(p, _)| p.sort_key());
        Ok(Factorization { unit, factors })
    }
}

/// Result of [`Poly::factor`]: a unit (the leading coefficient) and sorted
/// monic irreducible factors with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Poly {
        let field = self.unit.field().clone();
        let mut acc = Poly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(u64::from(*e));
        }
        let _ = field;
        acc
    }
}

/// Squarefree decomposition valid in characteristic p: pairs (g, m) with g
/// monic squarefree, pairwise coprime, and `prod g^m` = input.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().characteristic();
    let df = f.derivative();
    if df.is_zero() {
        // f = g(t^p); recurse on the p-th root with multiplicities scaled
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if !z.is_constant() {
            out.push((z.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if !c.is_constant() {
        // the remaining part is a p-th power
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    let field = f.field().clone();
    let q = field.order();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::var(&field);
    let mut h = x.clone(); // x^(q^d) mod rest, updated in place
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            // the remainder is irreducible
            out.push(rest.clone());
            break;
        }
        h = h.powmod(&BigUint::from(q), &rest);
        let g = rest.gcd(&(&h - &x));
        if g.degree().unwrap_or(0) > 0 {
            for irr in equal_degree_split(&g, d) {
                out.push(irr);
            }
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: `f` is monic squarefree, all
/// irreducible factors of degree `d`. Uses an internally seeded generator so
/// runs are reproducible; the returned order is normalized by the caller.
fn equal_degree_split(f: &Poly, d: usize) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a7e_5eed_0451_c0de);
    let mut stack = vec![f.clone()];
    let mut out = Vec::new();
    let field = f.field().clone();
    let q = field.order();
    while let Some(g) = stack.pop() {
        let dg = g.degree().unwrap();
        if dg == d {
            out.push(g.monic());
            continue;
        }
        let split = loop {
            let a = random_poly(&field, dg, &mut rng);
            if a.is_constant() {
                continue;
            }
            let candidate = if field.characteristic() == 2 {
                // trace map sum_{i<d*log2(q^?)} a^(2^i)
                let bits = (q.ilog2() as usize) * d;
                let mut acc = Poly::zero(&field);
                let mut cur = a.rem(&g);
                for _ in 0..bits {
                    acc = (&acc + &cur).rem(&g);
                    cur = (&cur * &cur).rem(&g);
                }
                acc
            } else {
                let e = (BigUint::from(q).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
                &a.powmod(&e, &g) - &Poly::one(&field)
            };
            let h = g.gcd(&candidate);
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && dh < dg {
                break h;
            }
        };
        let other = g.divrem(&split).0;
        stack.push(split);
        stack.push(other);
    }
    out
}

fn random_poly(field: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.order();
    let len = rng.gen_range(1..=max_deg + 1);
    let coeffs = (0..len)
        .map(|_| FqElem::from_index(field, rng.gen_range(0..q)))
        .collect();
    Poly::new(field, coeffs)
}

macro_rules! poly_binop {
    ($trait:ident, $fn:ident) => {
        impl std::ops::$trait<Poly> for Poly {
            type Output = Poly;
            fn $fn(self, rhs: Poly) -> Poly {
                std::ops::$trait::$fn(&self, &rhs)
            }
        }
    };
}

impl std::ops::Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::new(&self.field, coeffs)
    }
}
impl std::ops::Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::new(&self.field, coeffs)
    }
}
impl std::ops::Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut coeffs =
            vec![FqElem::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, coeffs)
    }
}
impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}
impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let coeff_part = if cs.contains('+') || cs.contains('*') || cs.contains('^') {
                format!("({cs})")
            } else {
                cs
            };
            let term = match i {
                0 => coeff_part,
                _ => {
                    let var = if i == 1 { "t".to_string() } else { format!("t^{i}") };
                    if c.is_one() {
                        var
                    } else {
                        format!("{coeff_part}*{var}")
                    }
                }
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f3() -> Field {
        FieldSpec::prime(3).unwrap()
    }

    fn f9() -> Field {
        FieldSpec::new(3, 2, None).unwrap()
    }

    #[test]
    fn degree_and_trim() {
        let f = f3();
        let p = Poly::from_ints(&f, &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::zero(&f).degree(), None);
    }

    #[test]
    fn divrem_roundtrip() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 0, 2, 1, 1]);
        let b = Poly::from_ints(&f, &[2, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn factor_t2_minus_t() {
        // t^2 - t = t(t-1)
        let f = f3();
        let p = Poly::from_ints(&f, &[0, -1, 1]);
        let fact = p.factor().unwrap();
        assert_eq!(fact.factors.len(), 2);
        assert_eq!(fact.factors[0].0, Poly::from_ints(&f, &[0, 1]));
        assert_eq!(fact.factors[1].0, Poly::from_ints(&f, &[2, 1])); // t - 1 = t + 2
        assert!(fact.factors.iter().all(|&(_, e)| e == 1));
    }

    #[test]
    fn factor_t2_plus_1_is_irreducible_over_f3() {
        // no roots in F_3 by exhaustion, hence irreducible as a quadratic
        let f = f3();
        let p = Poly::from_ints(&f, &[1, 0, 1]);
        for x in crate::field::enumerate(&f) {
            assert!(!p.eval(&x).is_zero());
        }
        let fact = p.factor().unwrap();
        assert_eq!(fact.factors, vec![(p.clone(), 1)]);
        assert!(p.is_irreducible());
    }

    #[test]
    fn factor_t4_minus_t() {
        // brute-force oracle: the monic irreducible quadratics over F_3 are
        // those with no roots; t^4 - t = t(t-1)(t^2+t+1).
        let f = f3();
        let p = Poly::from_ints(&f, &[0, -1, 0, 0, 1]);
        let fact = p.factor().unwrap();
        let expected = vec![
            (Poly::from_ints(&f, &[0, 1]), 1),
            (Poly::from_ints(&f, &[2, 1]), 1),
            (Poly::from_ints(&f, &[1, 1, 1]), 1),
        ];
        assert_eq!(fact.factors, expected);
    }

    #[test]
    fn factor_with_pth_power_multiplicities() {
        // (t+1)^3 has zero derivative in characteristic 3
        let f = f3();
        let p = Poly::from_ints(&f, &[1, 1]).pow(3);
        assert!(p.derivative().is_zero());
        let fact = p.factor().unwrap();
        assert_eq!(fact.factors, vec![(Poly::from_ints(&f, &[1, 1]), 3)]);
    }

    #[test]
    fn factor_remultiplies_over_f3_and_f9() {
        for field in [f3(), f9()] {
            let q = field.order();
            let mut state = 7u64;
            for trial in 0..500 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let deg = (trial % 12) + 1;
                let mut coeffs = Vec::new();
                for k in 0..=deg {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(trial);
                    coeffs.push(FqElem::from_index(&field, (state >> 11) % q));
                    let _ = k;
                }
                let p = Poly::new(&field, coeffs);
                if p.is_zero() {
                    continue;
                }
                let fact = p.factor().unwrap();
                assert_eq!(fact.product(), p, "re-multiplied factorization must match");
                for (irr, _) in &fact.factors {
                    assert!(irr.is_monic());
                }
            }
        }
    }

    #[test]
    fn zero_polynomial_cannot_be_factored() {
        assert_eq!(Poly::zero(&f3()).factor().unwrap_err(), PolyError::ZeroFactor);
    }

    #[test]
    fn compose_substitutes() {
        let f = f3();
        let p = Poly::from_ints(&f, &[1, 1]); // t + 1
        let s4 = Poly::from_ints(&f, &[0, 0, 0, 0, 1]); // t^4
        assert_eq!(p.compose(&s4), Poly::from_ints(&f, &[1, 0, 0, 0, 1]));
    }
}
