//! Rational functions over `F_q`, places of `F_q(t)` with valuations and
//! residue fields, and substitution along covers of the line.
//!
//! The place at infinity is handled uniformly by the substitution `t -> 1/u`
//! and reduction to the finite place `(u)`; nothing downstream special-cases
//! it beyond that.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::field::{Embedding, Field, FieldSpec, FqElem};
use crate::poly::Poly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FuncError {
    #[error("division by zero rational function")]
    DivisionByZero,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("pole at the place: valuation {0}")]
    PoleAtPlace(i64),
    #[error("substitution by a constant is not a field homomorphism")]
    ConstantSubstitution,
    #[error("place polynomial must be monic and irreducible")]
    InvalidPlace,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

/// Element of `F_q(t)` in canonical reduced form: the denominator is monic
/// and coprime to the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, FuncError> {
        if den.is_zero() {
            return Err(FuncError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc { num: Poly::zero(num.field()), den: Poly::one(den.field()) };
        }
        let g = num.gcd(&den);
        let num = num.divrem(&g).0;
        let den = den.divrem(&g).0;
        let lead_inv = den.leading_coeff().inv().unwrap();
        RatFunc { num: num.scale(&lead_inv), den: den.monic() }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let one = Poly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn constant(c: FqElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(field: &Field, k: i64) -> RatFunc {
        RatFunc::constant(FqElem::from_int(field, k))
    }

    /// The coordinate `t` itself.
    pub fn var(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::var(field))
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn inv(&self) -> Result<RatFunc, FuncError> {
        if self.is_zero() {
            return Err(FuncError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        RatFunc::reduced(self.num.pow(e as u64), self.den.pow(e as u64))
    }

    /// Order of vanishing at a place; `PlusInfinity` for the zero function.
    /// At the infinite place this is `deg(den) - deg(num)`.
    pub fn valuation(&self, place: &Place) -> Valuation {
        if self.is_zero() {
            return Valuation::PlusInfinity;
        }
        match place {
            Place::Finite(pi) => {
                let v = multiplicity(&self.num, pi) as i64 - multiplicity(&self.den, pi) as i64;
                Valuation::Finite(v)
            }
            Place::Infinity => {
                let v = self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64;
                Valuation::Finite(v)
            }
        }
    }

    /// Substitution `t -> r(s)`, a field homomorphism when `r` is
    /// non-constant.
    pub fn substitute(&self, r: &RatFunc) -> Result<RatFunc, FuncError> {
        if r.is_constant() {
            return Err(FuncError::ConstantSubstitution);
        }
        let n = eval_poly_at_ratfunc(&self.num, r);
        let d = eval_poly_at_ratfunc(&self.den, r);
        // d != 0: den is a nonzero polynomial and r is non-constant
        Ok((&n / &d).expect("denominator composed with non-constant map is nonzero"))
    }

    /// Coefficientwise application of a constant-field embedding.
    pub fn extend_constants(&self, emb: &Embedding) -> RatFunc {
        RatFunc {
            num: self.num.map_coeffs(emb.target(), |c| emb.apply(c)),
            den: self.den.map_coeffs(emb.target(), |c| emb.apply(c)),
        }
    }
}

fn multiplicity(p: &Poly, pi: &Poly) -> u32 {
    let mut m = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.divrem(pi);
        if !r.is_zero() {
            return m;
        }
        m += 1;
        cur = q;
    }
}

/// `P(A/B) = (sum_i p_i A^i B^(d-i)) / B^d` for a polynomial `P` of degree d.
fn eval_poly_at_ratfunc(p: &Poly, r: &RatFunc) -> RatFunc {
    let field = p.field();
    if p.is_zero() {
        return RatFunc::zero(field);
    }
    let d = p.degree().unwrap();
    let mut num = Poly::zero(field);
    for (i, c) in p.coeffs().iter().enumerate() {
        let term = &(&r.num.pow(i as u64) * &r.den.pow((d - i) as u64)) * &Poly::constant(c.clone());
        num = &num + &term;
    }
    RatFunc::reduced(num, r.den.pow(d as u64))
}

macro_rules! rf_binop {
    ($trait:ident, $fn:ident) => {
        impl std::ops::$trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $fn(self, rhs: RatFunc) -> RatFunc {
                std::ops::$trait::$fn(&self, &rhs)
            }
        }
    };
}

impl std::ops::Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduced(num, &self.den * &rhs.den)
    }
}
impl std::ops::Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}
impl std::ops::Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}
impl std::ops::Div<&RatFunc> for &RatFunc {
    type Output = Result<RatFunc, FuncError>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc, FuncError> {
        Ok(self * &rhs.inv()?)
    }
}
impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}
impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}
rf_binop!(Add, add);
rf_binop!(Sub, sub);
rf_binop!(Mul, mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Valuation value: an integer, or `+infinity` for the zero function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    PlusInfinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::PlusInfinity => None,
        }
    }

    pub fn at_least(self, k: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::PlusInfinity => true,
        }
    }

    pub fn is_exactly(self, k: i64) -> bool {
        self == Valuation::Finite(k)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::PlusInfinity, Valuation::PlusInfinity) => Ordering::Equal,
            (Valuation::PlusInfinity, _) => Ordering::Greater,
            (_, Valuation::PlusInfinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

/// Closed point of the projective line over `F_q`: a monic irreducible
/// polynomial, or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Place, FuncError> {
        if !pi.is_monic() || !pi.is_irreducible() {
            return Err(FuncError::InvalidPlace);
        }
        Ok(Place::Finite(pi))
    }

    /// The place `(t - a)` for a rational point `a`.
    pub fn at(a: &FqElem) -> Place {
        let field = a.field().clone();
        Place::Finite(Poly::new(&field, vec![-a, FqElem::one(&field)]))
    }

    pub fn var(field: &Field) -> Place {
        Place::at(&FqElem::zero(field))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    /// A function with valuation exactly 1 here: the place polynomial, or
    /// `1/t` at infinity.
    pub fn uniformizer(&self, field: &Field) -> RatFunc {
        match self {
            Place::Finite(pi) => RatFunc::from_poly(pi.clone()),
            Place::Infinity => RatFunc::var(field).inv().unwrap(),
        }
    }

    fn sort_key(&self) -> (usize, Vec<u64>) {
        match self {
            Place::Finite(pi) => (pi.degree().unwrap(), pi.coeffs().iter().map(FqElem::index).collect()),
            Place::Infinity => (usize::MAX, Vec::new()),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "{pi}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Reduction map onto the residue field of a place, together with a section
/// (lift). The residue field of a degree-d place over `F_{p^n}` is realized
/// as the flat field `F_{p^{nd}}` through a deterministic embedding.
pub struct ResidueMap {
    base: Field,
    place: Place,
    target: Field,
    emb: Embedding,
    /// Image of `t` in the residue field (root of the place polynomial).
    theta: FqElem,
    /// For places of degree > 1: inverse of the F_p-linear change of basis,
    /// used to lift residue elements back to polynomials of degree < d.
    lift_matrix: Option<Vec<Vec<u32>>>,
}

impl ResidueMap {
    pub fn new(base: &Field, place: &Place) -> ResidueMap {
        match place {
            Place::Infinity => {
                // residues at infinity are taken after t -> 1/u at (u)
                ResidueMap {
                    base: base.clone(),
                    place: place.clone(),
                    target: base.clone(),
                    emb: Embedding::identity(base),
                    theta: FqElem::zero(base),
                    lift_matrix: None,
                }
            }
            Place::Finite(pi) => {
                let d = pi.degree().unwrap();
                if d == 1 {
                    let theta = -pi.coeff(0);
                    ResidueMap {
                        base: base.clone(),
                        place: place.clone(),
                        target: base.clone(),
                        emb: Embedding::identity(base),
                        theta,
                        lift_matrix: None,
                    }
                } else {
                    let n = base.degree();
                    let target = FieldSpec::new(base.characteristic(), n * d, None)
                        .expect("residue field construction");
                    let emb = Embedding::new(base, &target).unwrap();
                    let pi_up = pi.map_coeffs(&target, |c| emb.apply(c));
                    let theta = pi_up
                        .roots()
                        .into_iter()
                        .next()
                        .expect("place polynomial splits in the residue field");
                    let lift_matrix = Some(build_lift_matrix(base, &target, &emb, &theta));
                    ResidueMap {
                        base: base.clone(),
                        place: place.clone(),
                        target,
                        emb,
                        theta,
                        lift_matrix,
                    }
                }
            }
        }
    }

    /// The residue field as a flat extension of the prime field.
    pub fn residue_field(&self) -> &Field {
        &self.target
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    /// Reduce a function that is regular at the place.
    pub fn residue(&self, f: &RatFunc) -> Result<FqElem, FuncError> {
        match &self.place {
            Place::Infinity => {
                let u_inv = RatFunc::var(&self.base).inv().unwrap();
                let g = f.substitute(&u_inv).expect("1/t is non-constant");
                let at_zero = ResidueMap::new(&self.base, &Place::var(&self.base));
                at_zero.residue(&g)
            }
            Place::Finite(pi) => {
                if f.is_zero() {
                    return Ok(FqElem::zero(&self.target));
                }
                match f.valuation(&self.place) {
                    Valuation::Finite(v) if v < 0 => Err(FuncError::PoleAtPlace(v)),
                    Valuation::Finite(v) if v > 0 => Ok(FqElem::zero(&self.target)),
                    _ => {
                        let strip = |p: &Poly| -> Poly {
                            let mut cur = p.clone();
                            loop {
                                let (q, r) = cur.divrem(pi);
                                if r.is_zero() {
                                    cur = q;
                                } else {
                                    return cur;
                                }
                            }
                        };
                        let n = self.reduce_poly(&strip(f.num()));
                        let d = self.reduce_poly(&strip(f.den()));
                        Ok(&n / &d)
                    }
                }
            }
        }
    }

    fn reduce_poly(&self, p: &Poly) -> FqElem {
        let mut acc = FqElem::zero(&self.target);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * &self.theta) + &self.emb.apply(c);
        }
        acc
    }

    /// Section of the residue map: a polynomial of degree < d (a constant at
    /// rational places and at infinity) reducing to the given element.
    pub fn lift(&self, e: &FqElem) -> RatFunc {
        assert!(e.field() == &self.target, "lift of an element of the wrong residue field");
        match &self.lift_matrix {
            None => {
                // residue field = base field; constants are their own lifts
                RatFunc::constant(e.clone())
            }
            Some(m) => {
                let p = self.base.characteristic();
                let n = self.base.degree();
                let d = self.place.degree();
                let coords = apply_matrix(m, e.coords(), p);
                let mut t_coeffs = Vec::with_capacity(d);
                for j in 0..d {
                    let chunk: Vec<u32> = (0..n).map(|i| coords[j * n + i]).collect();
                    t_coeffs.push(FqElem::new(&self.base, chunk));
                }
                RatFunc::from_poly(Poly::new(&self.base, t_coeffs))
            }
        }
    }

    /// All residue field elements, in enumeration order.
    pub fn elements(&self) -> Vec<FqElem> {
        crate::field::enumerate(&self.target).collect()
    }
}

/// Convenience wrapper: residue of `f` at `v` in the flat residue field.
pub fn residue(f: &RatFunc, v: &Place) -> Result<FqElem, FuncError> {
    ResidueMap::new(f.field(), v).residue(f)
}

// ---- small F_p linear algebra for the lift section ----

fn build_lift_matrix(base: &Field, target: &Field, emb: &Embedding, theta: &FqElem) -> Vec<Vec<u32>> {
    let p = base.characteristic();
    let n = base.degree();
    let d = target.degree() / n;
    let dim = n * d;
    let g_img = emb.apply(&FqElem::generator(base));
    // columns: coords of g^i * theta^j at index j*n + i
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(dim);
    for j in 0..d {
        for i in 0..n {
            let v = &g_img.pow(i as i64) * &theta.pow(j as i64);
            cols.push(v.coords().to_vec());
        }
    }
    invert_mod_p(&cols, p)
}

/// Invert the matrix whose columns are given, over F_p (Gauss-Jordan).
fn invert_mod_p(cols: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let dim = cols.len();
    // rows of [A | I]
    let mut aug: Vec<Vec<u32>> = (0..dim)
        .map(|r| {
            let mut row: Vec<u32> = (0..dim).map(|c| cols[c][r]).collect();
            row.extend((0..dim).map(|c| u32::from(c == r)));
            row
        })
        .collect();
    let inv_mod = |a: u32| -> u32 {
        (1..p).find(|&x| (x * a) % p == 1).expect("unit mod p")
    };
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| aug[r][col] % p != 0).expect("basis matrix is invertible");
        aug.swap(col, pivot);
        let inv = inv_mod(aug[col][col] % p);
        for x in aug[col].iter_mut() {
            *x = (*x * inv) % p;
        }
        for r in 0..dim {
            if r != col && aug[r][col] % p != 0 {
                let f = aug[r][col] % p;
                for c in 0..2 * dim {
                    let sub = (f * aug[col][c]) % p;
                    aug[r][c] = (aug[r][c] + p * p - sub) % p;
                }
            }
        }
    }
    // rows of A^{-1}
    aug.into_iter().map(|row| row[dim..].to_vec()).collect()
}

fn apply_matrix(rows: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    rows.iter()
        .map(|row| {
            let s: u64 = row.iter().zip(v).map(|(&a, &b)| u64::from(a) * u64::from(b)).sum();
            (s % u64::from(p)) as u32
        })
        .collect()
}

// ---- parsing ----

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    field: Field,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, FuncError> {
        Err(FuncError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).map(|b| b.is_ascii_whitespace()).unwrap_or(false) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, FuncError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, FuncError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = match &acc / &rhs {
                        Ok(v) => v,
                        Err(_) => return self.err("division by zero"),
                    };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, FuncError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, FuncError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if base.is_zero() && e < 0 {
                return self.err("zero raised to a negative power");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, FuncError> {
        self.skip_ws();
        let neg = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.bytes.get(self.pos).map(|b| b.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v: i64 = s.parse().map_err(|_| FuncError::Parse {
            pos: start,
            msg: "integer out of range".to_string(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<RatFunc, FuncError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::var(&self.field))
            }
            Some(b'g') => {
                self.pos += 1;
                if self.field.degree() == 1 {
                    self.pos -= 1;
                    return self.err("generator symbol 'g' is undefined over the prime field");
                }
                Ok(RatFunc::constant(FqElem::generator(&self.field)))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(RatFunc::from_int(&self.field, v))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a rational function over the alphabet `t g digits + - * / ^ ( )`.
pub fn parse_ratfunc(s: &str, field: &Field) -> Result<RatFunc, FuncError> {
    let mut p = Parser { bytes: s.as_bytes(), pos: 0, field: field.clone() };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parse a place: `inf`, or a polynomial that must be monic irreducible.
pub fn parse_place(s: &str, field: &Field) -> Result<Place, FuncError> {
    if s.trim() == "inf" {
        return Ok(Place::Infinity);
    }
    let f = parse_ratfunc(s, field)?;
    if !f.is_polynomial() {
        return Err(FuncError::InvalidPlace);
    }
    Place::finite(f.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::enumerate;

    fn f3() -> Field {
        FieldSpec::prime(3).unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s, &f3()).unwrap()
    }

    fn place_t() -> Place {
        Place::var(&f3())
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(rf("t").valuation(&place_t()), Valuation::Finite(1));
        // a6 coefficient of the additive-reduction example curve
        assert_eq!(rf("t^2+t^4+t^5").valuation(&place_t()), Valuation::Finite(2));
        assert_eq!(rf("t").valuation(&Place::Infinity), Valuation::Finite(-1));
        assert_eq!(rf("0").valuation(&place_t()), Valuation::PlusInfinity);
        assert_eq!(rf("1/t").valuation(&Place::Infinity), Valuation::Finite(1));
    }

    #[test]
    fn valuation_is_additive() {
        let cases = [rf("t+1"), rf("t^2/(t+2)"), rf("(t^3+t)/(t^2+1)")];
        for v in [place_t(), Place::Infinity] {
            for f in &cases {
                for g in &cases {
                    let lhs = (f * g).valuation(&v).finite().unwrap();
                    let rhs = f.valuation(&v).finite().unwrap() + g.valuation(&v).finite().unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn residue_examples() {
        let one = FqElem::one(&f3());
        assert_eq!(residue(&rf("t+1"), &place_t()).unwrap(), one);
        assert_eq!(residue(&rf("1/(t+1)"), &place_t()).unwrap(), one);
        // at infinity: substitute t = 1/u and evaluate at u = 0
        assert_eq!(residue(&rf("t^2/(t^2+1)"), &Place::Infinity).unwrap(), one);
        assert!(matches!(
            residue(&rf("1/t"), &place_t()),
            Err(FuncError::PoleAtPlace(-1))
        ));
    }

    #[test]
    fn residue_is_a_ring_homomorphism() {
        let fs = [rf("t+1"), rf("2*t^2+t+2"), rf("(t+2)/(t+1)")];
        for v in [place_t(), Place::Infinity] {
            for f in &fs {
                for g in &fs {
                    let r = |x: &RatFunc| residue(x, &v).unwrap();
                    assert_eq!(r(&(f + g)), &r(f) + &r(g));
                    assert_eq!(r(&(f * g)), &r(f) * &r(g));
                }
            }
        }
    }

    #[test]
    fn residue_at_higher_degree_place_with_lift() {
        let field = f3();
        let pi = Poly::from_ints(&field, &[1, 0, 1]); // t^2 + 1
        let place = Place::finite(pi).unwrap();
        let map = ResidueMap::new(&field, &place);
        assert_eq!(map.residue_field().order(), 9);
        // lift is a section of the residue map over every residue element
        for e in map.elements() {
            let lifted = map.lift(&e);
            assert!(lifted.is_polynomial());
            assert!(lifted.num().degree().unwrap_or(0) < 2);
            assert_eq!(map.residue(&lifted).unwrap(), e);
        }
        // t reduces to a square root of -1
        let t_res = map.residue(&RatFunc::var(&field)).unwrap();
        assert_eq!(&t_res * &t_res, -FqElem::one(map.residue_field()));
    }

    #[test]
    fn substitution_examples() {
        let f3 = f3();
        let s4 = rf("t^4");
        assert_eq!(rf("t+1").substitute(&s4).unwrap(), rf("t^4+1"));
        let artin_schreier = rf("t^3-t");
        assert_eq!(rf("1/t").substitute(&artin_schreier).unwrap(), rf("1/(t^3-t)"));
        assert_eq!(
            Place::Infinity.uniformizer(&f3),
            rf("1/t")
        );
        assert!(matches!(
            rf("t").substitute(&rf("2")),
            Err(FuncError::ConstantSubstitution)
        ));
    }

    #[test]
    fn substitution_is_a_field_homomorphism() {
        let r = rf("t^3-t");
        let fs = [rf("t+1"), rf("t^2/(t+2)"), rf("(2*t+1)/(t^2+t+2)")];
        for f in &fs {
            for g in &fs {
                let sub = |x: &RatFunc| x.substitute(&r).unwrap();
                assert_eq!(sub(&(f + g)), &sub(f) + &sub(g));
                assert_eq!(sub(&(f * g)), &sub(f) * &sub(g));
            }
        }
    }

    #[test]
    fn product_formula_on_random_functions() {
        // sum over all places of deg(v) * v(f) = 0
        let field = f3();
        let mut state = 11u64;
        for _ in 0..60 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let mk = |seed: u64| -> Poly {
                let deg = (seed % 5 + 1) as usize;
                let coeffs: Vec<FqElem> = (0..=deg)
                    .map(|i| FqElem::from_index(&field, (seed >> (3 * i)) % 3))
                    .collect();
                Poly::new(&field, coeffs)
            };
            let num = mk(state);
            let den = mk(state.rotate_left(17) | 1);
            if num.is_zero() || den.is_zero() {
                continue;
            }
            let f = RatFunc::new(num, den).unwrap();
            if f.is_zero() {
                continue;
            }
            let mut total: i64 = f.valuation(&Place::Infinity).finite().unwrap();
            for part in [f.num(), f.den()] {
                if part.is_constant() {
                    continue;
                }
                for (pi, _) in part.factor().unwrap().factors {
                    let place = Place::Finite(pi.clone());
                    let v = f.valuation(&place).finite().unwrap();
                    total += (place.degree() as i64) * v;
                }
            }
            assert_eq!(total, 0, "product formula failed for {f}");
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_ratfunc("t+%", &f3()) {
            Err(FuncError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_ratfunc("g+1", &f3()).is_err());
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert!(parse_ratfunc("g^2+t", &f9).is_ok());
    }

    #[test]
    fn display_parses_back() {
        for s in ["t^2+2*t+1", "(t^2+1)/(t^3+2*t)", "2", "0", "1/t"] {
            let f = rf(s);
            let printed = f.to_string();
            assert_eq!(parse_ratfunc(&printed, &f3()).unwrap(), f, "round trip of {s} via {printed}");
        }
    }

    #[test]
    fn higher_degree_place_ordering_is_deterministic() {
        let field = f3();
        let p1 = Place::finite(Poly::from_ints(&field, &[0, 1])).unwrap();
        let p2 = Place::finite(Poly::from_ints(&field, &[1, 0, 1])).unwrap();
        let mut places = vec![Place::Infinity, p2.clone(), p1.clone()];
        places.sort();
        assert_eq!(places, vec![p1, p2, Place::Infinity]);
    }

    #[test]
    fn residues_cover_the_whole_residue_field() {
        let field = f3();
        let pi = Poly::from_ints(&field, &[1, 0, 1]);
        let map = ResidueMap::new(&field, &Place::finite(pi).unwrap());
        let mut seen: Vec<FqElem> = Vec::new();
        for e in enumerate(map.residue_field()) {
            let r = map.residue(&map.lift(&e)).unwrap();
            assert!(!seen.contains(&r));
            seen.push(r);
        }
        assert_eq!(seen.len(), 9);
    }
}
