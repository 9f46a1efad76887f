//! Exact arithmetic in small finite fields `F_{p^n}`.
//!
//! Fields are described by a [`FieldSpec`] (characteristic, extension degree
//! and a monic irreducible modulus over the prime field). Elements carry a
//! shared handle to their spec; arithmetic between elements of different
//! fields panics rather than coercing, and explicit embeddings
//! `F_{p^m} -> F_{p^{mn}}` are provided by [`Embedding`].

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field order p^n does not fit in 64 bits")]
    OrderTooLarge,
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulusDegree { expected: usize, got: usize },
    #[error("modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("field of order {order} has no primitive root of unity of order {wanted}")]
    NoSuchRoot { order: u64, wanted: u32 },
    #[error("no embedding: target degree {target} is not a multiple of source degree {source}")]
    NoEmbedding { source: usize, target: usize },
    #[error("fields have different characteristics ({0} vs {1})")]
    CharMismatch(u32, u32),
}

/// Description of `F_{p^n}` as `F_p[x]/(modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    degree: usize,
    /// Monic, length `degree + 1`, entries reduced mod `p`.
    modulus: Vec<u32>,
}

/// Shared handle to a field; cheap to clone.
pub type Field = Arc<FieldSpec>;

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

// ---- dense polynomial arithmetic over F_p on raw coefficient vectors ----

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn add_mod(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
        *o = x % p;
    }
    trim(out)
}

fn mul_mod(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += u64::from(x) * u64::from(y);
        }
    }
    trim(out.into_iter().map(|x| (x % u64::from(p)) as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients mod `p`.
fn rem_mod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while {
        r = trim(r);
        r.len() > dm
    } {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mc) in m.iter().enumerate() {
            let idx = shift + i;
            let sub = (u64::from(lead) * u64::from(mc)) % u64::from(p);
            let cur = u64::from(r[idx]) + u64::from(p) - sub % u64::from(p);
            r[idx] = (cur % u64::from(p)) as u32;
        }
    }
    r
}

fn poly_divides(d: &[u32], a: &[u32], p: u32) -> bool {
    // d must be monic
    rem_mod(a, d, p).is_empty()
}

/// Decode index `k` into the coefficient vector of a polynomial with base-p digits.
fn poly_from_index(mut k: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for o in out.iter_mut() {
        *o = (k % u64::from(p)) as u32;
        k /= u64::from(p);
    }
    out
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| (x * (a % p)) % p == 1).expect("nonzero residue is a unit")
}

/// Remainder modulo an arbitrary nonzero divisor (monicized internally).
fn rem_general(a: &[u32], d: &[u32], p: u32) -> Vec<u32> {
    let d = trim(d.to_vec());
    let lead = *d.last().unwrap();
    if lead == 1 {
        return rem_mod(a, &d, p);
    }
    let li = inv_mod_p(lead, p);
    let monic: Vec<u32> = d.iter().map(|&c| (c * li) % p).collect();
    rem_mod(a, &monic, p)
}

fn gcd_raw(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem_general(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mulrem_raw(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem_mod(&mul_mod(a, b, p), m, p)
}

/// `x^e mod m` over F_p for a monic modulus, arbitrary-precision exponent.
fn x_powmod_raw(e: &num::BigUint, m: &[u32], p: u32) -> Vec<u32> {
    let x = rem_mod(&[0, 1], m, p);
    let mut base = x;
    let mut acc = vec![1u32];
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = mulrem_raw(&acc, &base, m, p);
        }
        base = mulrem_raw(&base, &base, m, p);
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn irreducible_over_prime_field(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg <= 8 {
        // Trial division by all monic polynomials of degree 1..=deg/2.
        for d in 1..=deg / 2 {
            for k in 0..u64::from(p).pow(d as u32) {
                let mut cand = poly_from_index(k, p, d + 1);
                cand[d] = 1;
                if poly_divides(&cand, m, p) {
                    return false;
                }
            }
        }
        return true;
    }
    // Rabin's test for larger degrees: x^(p^deg) = x mod m, and
    // gcd(x^(p^(deg/l)) - x, m) = 1 for every prime l dividing deg.
    let big_p = num::BigUint::from(p);
    let h = x_powmod_raw(&big_p.pow(deg as u32), m, p);
    let x_minus = |mut v: Vec<u32>| -> Vec<u32> {
        while v.len() < 2 {
            v.push(0);
        }
        v[1] = (v[1] + p - 1) % p;
        trim(v)
    };
    if !x_minus(h).is_empty() {
        return false;
    }
    for l in prime_divisors(deg) {
        let hk = x_powmod_raw(&big_p.pow((deg / l) as u32), m, p);
        let g = gcd_raw(&x_minus(hk), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least (by base-p integer encoding) monic irreducible of degree `n`.
fn default_modulus(p: u32, n: usize) -> Vec<u32> {
    for k in 0..u64::from(p).pow(n as u32) {
        let mut cand = poly_from_index(k, p, n + 1);
        cand[n] = 1;
        if irreducible_over_prime_field(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree over F_p")
}

impl FieldSpec {
    /// Construct `F_{p^n}`, validating primality and irreducibility. When no
    /// modulus is given, the deterministic default (least monic irreducible
    /// of degree `n` in base-p encoding order) is chosen.
    pub fn new(p: u32, n: usize, modulus: Option<Vec<u32>>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if u32::try_from(n).is_err() || u64::from(p).checked_pow(n as u32).is_none() {
            return Err(FieldError::OrderTooLarge);
        }
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u32> = m.into_iter().map(|c| c % p).collect();
                let m = trim(m);
                if m.len() != n + 1 || *m.last().unwrap() != 1 {
                    return Err(FieldError::BadModulusDegree {
                        expected: n,
                        got: m.len().saturating_sub(1),
                    });
                }
                if !irreducible_over_prime_field(&m, p) {
                    return Err(FieldError::ReducibleModulus);
                }
                m
            }
            None => default_modulus(p, n),
        };
        Ok(Arc::new(FieldSpec { p, degree: n, modulus }))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        FieldSpec::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements, `p^degree`.
    pub fn order(&self) -> u64 {
        u64::from(self.p).pow(self.degree as u32)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

/// An element of `F_{p^n}`, stored as its coordinate vector in the power
/// basis of the class of `x` modulo the field's modulus.
#[derive(Debug, Clone)]
pub struct FqElem {
    field: Field,
    /// Length `degree`, entries in `0..p`.
    coords: Vec<u32>,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}
impl Eq for FqElem {}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

fn same_field(a: &FqElem, b: &FqElem) -> Field {
    assert!(
        a.field == b.field,
        "mixed-field arithmetic: F_{}^{} vs F_{}^{} (use an explicit Embedding)",
        a.field.p,
        a.field.degree,
        b.field.p,
        b.field.degree
    );
    a.field.clone()
}

impl FqElem {
    pub fn new(field: &Field, coords: Vec<u32>) -> FqElem {
        assert!(coords.len() <= field.degree, "coordinate vector too long");
        let mut c: Vec<u32> = coords.into_iter().map(|x| x % field.p).collect();
        c.resize(field.degree, 0);
        FqElem { field: field.clone(), coords: c }
    }

    pub fn zero(field: &Field) -> FqElem {
        FqElem::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> FqElem {
        FqElem::new(field, vec![1])
    }

    /// Image of the integer `k` under the prime-subfield map.
    pub fn from_int(field: &Field, k: i64) -> FqElem {
        let p = i64::from(field.p);
        let r = ((k % p) + p) % p;
        FqElem::new(field, vec![r as u32])
    }

    /// The class of `x` (a generator of the field over `F_p` as an algebra).
    pub fn generator(field: &Field) -> FqElem {
        if field.degree == 1 {
            // x reduces to the negative of the modulus constant term
            let c = field.modulus[0];
            FqElem::new(field, vec![(field.p - c) % field.p])
        } else {
            FqElem::new(field, vec![0, 1])
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&c| c == 0)
    }

    /// Position of this element in the field's enumeration order.
    pub fn index(&self) -> u64 {
        let mut idx = 0u64;
        for &c in self.coords.iter().rev() {
            idx = idx * u64::from(self.field.p) + u64::from(c);
        }
        idx
    }

    /// Element at position `idx` in enumeration order (base-p digits).
    pub fn from_index(field: &Field, idx: u64) -> FqElem {
        FqElem::new(field, poly_from_index(idx, field.p, field.degree))
    }

    pub fn inv(&self) -> Result<FqElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(i64::try_from(self.field.order()).unwrap() - 2))
    }

    pub fn pow(&self, e: i64) -> FqElem {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = FqElem::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The p-power Frobenius map.
    pub fn frobenius(&self) -> FqElem {
        self.pow(i64::from(self.field.p))
    }

    /// Inverse of Frobenius (finite fields are perfect): the unique `y`
    /// with `y^p = self`.
    pub fn pth_root(&self) -> FqElem {
        let e = self.field.order() / u64::from(self.field.p);
        self.pow(i64::try_from(e).unwrap())
    }

    /// Multiplicative order; zero input panics.
    pub fn mult_order(&self) -> u64 {
        assert!(!self.is_zero(), "multiplicative order of zero");
        let mut k = 1u64;
        let mut acc = self.clone();
        while !acc.is_one() {
            acc = &acc * self;
            k += 1;
        }
        k
    }
}

impl fmt::Display for FqElem {
    /// Prime-field elements print as integers; extension elements as
    /// polynomials in the generator symbol `g`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let mut terms: Vec<String> = Vec::new();
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

macro_rules! fq_binop {
    ($trait:ident, $fn:ident, $imp:expr) => {
        impl std::ops::$trait<&FqElem> for &FqElem {
            type Output = FqElem;
            fn $fn(self, rhs: &FqElem) -> FqElem {
                let field = same_field(self, rhs);
                #[allow(clippy::redundant_closure_call)]
                let coords = ($imp)(&field, &self.coords, &rhs.coords);
                FqElem::new(&field, coords)
            }
        }
        impl std::ops::$trait<FqElem> for FqElem {
            type Output = FqElem;
            fn $fn(self, rhs: FqElem) -> FqElem {
                std::ops::$trait::$fn(&self, &rhs)
            }
        }
    };
}

fq_binop!(Add, add, |f: &Field, a: &[u32], b: &[u32]| add_mod(a, b, f.p));
fq_binop!(Sub, sub, |f: &Field, a: &[u32], b: &[u32]| {
    let neg_b: Vec<u32> = b.iter().map(|&c| (f.p - c) % f.p).collect();
    add_mod(a, &neg_b, f.p)
});
fq_binop!(Mul, mul, |f: &Field, a: &[u32], b: &[u32]| rem_mod(
    &mul_mod(a, b, f.p),
    &f.modulus,
    f.p
));

impl std::ops::Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        let p = self.field.p;
        let coords = self.coords.iter().map(|&c| (p - c) % p).collect();
        FqElem::new(&self.field, coords)
    }
}
impl std::ops::Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        -&self
    }
}

impl std::ops::Div<&FqElem> for &FqElem {
    type Output = FqElem;
    fn div(self, rhs: &FqElem) -> FqElem {
        self * &rhs.inv().expect("division by zero field element")
    }
}

/// All elements of the field in enumeration order.
pub fn enumerate(field: &Field) -> impl Iterator<Item = FqElem> + '_ {
    (0..field.order()).map(move |i| FqElem::from_index(field, i))
}

/// The least element `z` (in enumeration order) with `z^2 = -1`; such `z`
/// is automatically a primitive 4th root of unity in odd characteristic.
pub fn primitive_fourth_root(field: &Field) -> Result<FqElem, FieldError> {
    primitive_root_of_unity(field, 4)
}

/// Least element of multiplicative order exactly `m`; requires `m | p^n - 1`.
pub fn primitive_root_of_unity(field: &Field, m: u32) -> Result<FqElem, FieldError> {
    let q = field.order();
    if m == 0 || (q - 1) % u64::from(m) != 0 {
        return Err(FieldError::NoSuchRoot { order: q, wanted: m });
    }
    enumerate(field)
        .filter(|e| !e.is_zero())
        .find(|e| e.mult_order() == u64::from(m))
        .ok_or(FieldError::NoSuchRoot { order: q, wanted: m })
}

/// Field homomorphism `F_{p^m} -> F_{p^{mk}}` sending the source generator to
/// the least root of the source modulus in the target field.
#[derive(Debug, Clone)]
pub struct Embedding {
    src: Field,
    dst: Field,
    gen_image: FqElem,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Embedding, FieldError> {
        if src.p != dst.p {
            return Err(FieldError::CharMismatch(src.p, dst.p));
        }
        if dst.degree % src.degree != 0 {
            return Err(FieldError::NoEmbedding { source: src.degree, target: dst.degree });
        }
        // least root (enumeration order) of the source modulus in the target
        let modulus_up = crate::poly::Poly::from_ints(
            dst,
            &src.modulus.iter().map(|&c| i64::from(c)).collect::<Vec<_>>(),
        );
        let gen_image = modulus_up
            .roots()
            .into_iter()
            .next()
            .expect("source modulus always has a root in a compatible extension");
        Ok(Embedding { src: src.clone(), dst: dst.clone(), gen_image })
    }

    /// Identity embedding of a field into itself.
    pub fn identity(field: &Field) -> Embedding {
        Embedding {
            src: field.clone(),
            dst: field.clone(),
            gen_image: FqElem::generator(field),
        }
    }

    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, e: &FqElem) -> FqElem {
        assert!(e.field == self.src, "embedding applied to element of the wrong field");
        let mut acc = FqElem::zero(&self.dst);
        for &c in e.coords.iter().rev() {
            acc = &(&acc * &self.gen_image) + &FqElem::from_int(&self.dst, i64::from(c));
        }
        acc
    }
}

// External interface: field specs serialize as {p, n, modulus}, elements as
// coefficient lists.
impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FieldSpec", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("n", &self.degree)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.end()
    }
}

impl Serialize for FqElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Rebuild a field from its `{p, n, modulus}` serialization.
pub fn field_from_json(v: &serde_json::Value) -> Result<Field, FieldError> {
    let p = v.get("p").and_then(|x| x.as_u64()).unwrap_or(0) as u32;
    let n = v.get("n").and_then(|x| x.as_u64()).unwrap_or(0) as usize;
    let modulus: Option<Vec<u32>> = v.get("modulus").and_then(|m| m.as_array()).map(|a| {
        a.iter().map(|x| x.as_u64().unwrap_or(0) as u32).collect()
    });
    FieldSpec::new(p, n, modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        FieldSpec::prime(3).unwrap()
    }

    fn f9() -> Field {
        FieldSpec::new(3, 2, None).unwrap()
    }

    #[test]
    fn default_modulus_for_f9_is_x2_plus_1() {
        // x^2+1 is irreducible over F_3 (exhaustive root check) and is the
        // least monic irreducible quadratic in encoding order.
        for a in 0..3u32 {
            assert_ne!((a * a + 1) % 3, 0, "x^2+1 must have no roots in F_3");
        }
        assert_eq!(f9().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert_eq!(
            FieldSpec::new(4, 1, None).unwrap_err(),
            FieldError::NonPrimeCharacteristic(4)
        );
        assert!(FieldSpec::new(9, 1, None).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert_eq!(
            FieldSpec::new(3, 2, Some(vec![2, 0, 1])).unwrap_err(),
            FieldError::ReducibleModulus
        );
    }

    #[test]
    fn inverse_of_two_in_f3() {
        let f = f3();
        let two = FqElem::from_int(&f, 2);
        assert_eq!(two.inv().unwrap(), two);
    }

    #[test]
    fn primitive_fourth_root_in_f9_is_class_of_x() {
        let f = f9();
        let z = primitive_fourth_root(&f).unwrap();
        assert_eq!(z, FqElem::generator(&f));
        let minus_one = -FqElem::one(&f);
        assert_eq!(&z * &z, minus_one);
    }

    #[test]
    fn no_fourth_root_in_f3() {
        assert!(matches!(
            primitive_fourth_root(&f3()),
            Err(FieldError::NoSuchRoot { .. })
        ));
    }

    #[test]
    fn fourth_root_in_f81_has_order_four() {
        let f = FieldSpec::new(3, 4, None).unwrap();
        let z = primitive_fourth_root(&f).unwrap();
        assert_eq!(z.mult_order(), 4);
    }

    #[test]
    fn frobenius_on_zeta_gives_minus_zeta() {
        let f = f9();
        let z = primitive_fourth_root(&f).unwrap();
        // zeta^3 = zeta^2 * zeta = -zeta
        assert_eq!(z.frobenius(), -z.clone());
        assert_eq!(z.frobenius(), z.pow(3));
    }

    #[test]
    fn fermat_and_frobenius_identity_on_all_of_f9() {
        let f = f9();
        for e in enumerate(&f) {
            assert_eq!(e.pow(9), e, "e^9 = e must hold for all e");
            assert_eq!(e.frobenius().frobenius(), e);
            if !e.is_zero() {
                assert!(e.pow(8).is_one());
            }
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let f = f9();
        let all: Vec<FqElem> = enumerate(&f).collect();
        assert_eq!(all.len(), 9);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(a.index(), i as u64);
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let f = FieldSpec::new(3, 2, None).unwrap();
        // deterministic pseudo-random walk through triples
        let mut idx = 1u64;
        for _ in 0..200 {
            idx = (idx * 48271) % 2147483647;
            let a = FqElem::from_index(&f, idx % 9);
            let b = FqElem::from_index(&f, (idx / 9) % 9);
            let c = FqElem::from_index(&f, (idx / 81) % 9);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a * &b, &b * &a);
        }
    }

    #[test]
    fn embedding_f3_to_f9_respects_arithmetic() {
        let small = f3();
        let big = f9();
        let emb = Embedding::new(&small, &big).unwrap();
        for a in enumerate(&small) {
            for b in enumerate(&small) {
                assert_eq!(emb.apply(&(&a + &b)), &emb.apply(&a) + &emb.apply(&b));
                assert_eq!(emb.apply(&(&a * &b)), &emb.apply(&a) * &emb.apply(&b));
            }
        }
    }

    #[test]
    fn embedding_f9_to_f81_is_a_field_hom() {
        let f9 = f9();
        let f81 = FieldSpec::new(3, 4, None).unwrap();
        let emb = Embedding::new(&f9, &f81).unwrap();
        let g = FqElem::generator(&f9);
        let img = emb.apply(&g);
        // image satisfies x^2 + 1 = 0
        assert!((&(&img * &img) + &FqElem::one(&f81)).is_zero());
    }

    #[test]
    #[should_panic(expected = "mixed-field arithmetic")]
    fn mixed_field_arithmetic_panics() {
        let a = FqElem::one(&f3());
        let b = FqElem::one(&f9());
        let _ = &a + &b;
    }

    #[test]
    fn spec_roundtrip_through_json() {
        let f = f9();
        let v = serde_json::to_value(f.as_ref()).unwrap();
        assert_eq!(v["p"], 3);
        assert_eq!(v["n"], 2);
        let back = field_from_json(&v).unwrap();
        assert_eq!(back, f);
    }
}
