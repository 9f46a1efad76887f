//! Weierstrass models over `F_q(t)`: standard invariants, coordinate
//! changes, twisting constructors, and base change along covers of the line.

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::field::{Embedding, Field, FqElem};
use crate::ratfunc::{parse_ratfunc, FuncError, RatFunc};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("singular model: the discriminant vanishes")]
    Singular,
    #[error("isomorphism scaling factor u must be nonzero")]
    ZeroScaling,
    #[error("twisting parameter must be nonzero")]
    ZeroTwist,
    #[error("quadratic twists require characteristic != 2")]
    CharTwo,
    #[error(transparent)]
    Func(#[from] FuncError),
}

/// Nonsingular Weierstrass quintuple `(a1, a2, a3, a4, a6)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    a1: RatFunc,
    a2: RatFunc,
    a3: RatFunc,
    a4: RatFunc,
    a6: RatFunc,
}

/// The standard `b`-, `c`- and discriminant invariants of a model.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub b2: RatFunc,
    pub b4: RatFunc,
    pub b6: RatFunc,
    pub b8: RatFunc,
    pub c4: RatFunc,
    pub c6: RatFunc,
    pub disc: RatFunc,
}

impl Invariants {
    /// `j = c4^3 / disc`; the constructor guarantees `disc != 0`.
    pub fn j(&self) -> RatFunc {
        (&self.c4.pow(3) / &self.disc).expect("nonsingular model has nonzero discriminant")
    }
}

impl WeierstrassModel {
    pub fn new(a: [RatFunc; 5]) -> Result<WeierstrassModel, ModelError> {
        let [a1, a2, a3, a4, a6] = a;
        let model = WeierstrassModel { a1, a2, a3, a4, a6 };
        if model.invariants().disc.is_zero() {
            return Err(ModelError::Singular);
        }
        Ok(model)
    }

    pub fn from_strings(field: &Field, a: [&str; 5]) -> Result<WeierstrassModel, ModelError> {
        let parse = |s: &str| parse_ratfunc(s, field);
        Ok(WeierstrassModel::new([
            parse(a[0])?,
            parse(a[1])?,
            parse(a[2])?,
            parse(a[3])?,
            parse(a[4])?,
        ])?)
    }

    pub fn coefficients(&self) -> [&RatFunc; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn field(&self) -> &Field {
        self.a1.field()
    }

    pub fn invariants(&self) -> Invariants {
        let f = self.field();
        let int = |k: i64| RatFunc::from_int(f, k);
        let [a1, a2, a3, a4, a6] = [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6];
        let b2 = &(a1 * a1) + &(&int(4) * a2);
        let b4 = &(&int(2) * a4) + &(a1 * a3);
        let b6 = &(a3 * a3) + &(&int(4) * a6);
        let b8 = &(&(&(&(a1 * a1) * a6) + &(&(&int(4) * a2) * a6)) - &(&(a1 * a3) * a4))
            + &(&(&(a2 * a3) * a3) - &(a4 * a4));
        let c4 = &(&b2 * &b2) - &(&int(24) * &b4);
        let c6 = &(&(-&b2.pow(3)) + &(&(&int(36) * &b2) * &b4)) - &(&int(216) * &b6);
        let disc = &(&(&(-&(&(&b2 * &b2) * &b8)) - &(&int(8) * &b4.pow(3)))
            - &(&int(27) * &(&b6 * &b6)))
            + &(&(&(&int(9) * &b2) * &b4) * &b6);
        Invariants { b2, b4, b6, b8, c4, c6, disc }
    }

    pub fn j_invariant(&self) -> RatFunc {
        self.invariants().j()
    }

    /// Coefficientwise substitution `t -> r(s)` (base change along a cover
    /// of the line). No minimalization is attempted.
    pub fn pullback(&self, r: &RatFunc) -> Result<WeierstrassModel, ModelError> {
        Ok(WeierstrassModel::new([
            self.a1.substitute(r)?,
            self.a2.substitute(r)?,
            self.a3.substitute(r)?,
            self.a4.substitute(r)?,
            self.a6.substitute(r)?,
        ])?)
    }

    /// Constant-field extension of every coefficient.
    pub fn extend_constants(&self, emb: &Embedding) -> WeierstrassModel {
        WeierstrassModel {
            a1: self.a1.extend_constants(emb),
            a2: self.a2.extend_constants(emb),
            a3: self.a3.extend_constants(emb),
            a4: self.a4.extend_constants(emb),
            a6: self.a6.extend_constants(emb),
        }
    }

    /// Complete the square in `y` (legal away from characteristic 2),
    /// producing an isomorphic model with `a1 = a3 = 0`.
    pub fn complete_square(&self) -> Result<WeierstrassModel, ModelError> {
        if self.field().characteristic() == 2 {
            return Err(ModelError::CharTwo);
        }
        let half = RatFunc::from_int(self.field(), 2).inv().unwrap();
        let iso = ModelIso {
            u: RatFunc::one(self.field()),
            r: RatFunc::zero(self.field()),
            s: -&(&half * &self.a1),
            w: -&(&half * &self.a3),
        };
        transform(self, &iso)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "q": self.field().order(),
            "a": self.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{},{},{}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// The standard change of Weierstrass coordinates
/// `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + w`. The translation usually
/// called `t` is named `w` to keep clear of the base coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelIso {
    pub u: RatFunc,
    pub r: RatFunc,
    pub s: RatFunc,
    pub w: RatFunc,
}

impl ModelIso {
    pub fn new(u: RatFunc, r: RatFunc, s: RatFunc, w: RatFunc) -> Result<ModelIso, ModelError> {
        if u.is_zero() {
            return Err(ModelError::ZeroScaling);
        }
        Ok(ModelIso { u, r, s, w })
    }

    pub fn identity(field: &Field) -> ModelIso {
        ModelIso {
            u: RatFunc::one(field),
            r: RatFunc::zero(field),
            s: RatFunc::zero(field),
            w: RatFunc::zero(field),
        }
    }

    /// Pure rescaling `(u, 0, 0, 0)`.
    pub fn scaling(u: RatFunc) -> Result<ModelIso, ModelError> {
        if u.is_zero() {
            return Err(ModelError::ZeroScaling);
        }
        let field = u.field().clone();
        Ok(ModelIso {
            u,
            r: RatFunc::zero(&field),
            s: RatFunc::zero(&field),
            w: RatFunc::zero(&field),
        })
    }

    /// Pure translation `(1, r, s, w)`.
    pub fn translation(r: RatFunc, s: RatFunc, w: RatFunc) -> ModelIso {
        let field = r.field().clone();
        ModelIso { u: RatFunc::one(&field), r, s, w }
    }

    /// Composite `self` followed by `then`.
    pub fn compose(&self, then: &ModelIso) -> ModelIso {
        // (u1,r1,s1,w1) * (u2,r2,s2,w2)
        let u = &self.u * &then.u;
        let r = &(&(&self.u * &self.u) * &then.r) + &self.r;
        let s = &(&self.u * &then.s) + &self.s;
        let w = &(&(&self.u.pow(3) * &then.w) + &(&(&(&self.u * &self.u) * &self.s) * &then.r))
            + &self.w;
        ModelIso { u, r, s, w }
    }

    pub fn inverse(&self) -> ModelIso {
        let ui = self.u.inv().expect("iso has nonzero u");
        let u2 = &ui * &ui;
        let u3 = &u2 * &ui;
        let r = -&(&u2 * &self.r);
        let s = -&(&ui * &self.s);
        let w = &(&(&u3 * &self.s) * &self.r) - &(&u3 * &self.w);
        ModelIso { u: ui, r, s, w }
    }
}

/// Apply a coordinate change to a model.
pub fn transform(e: &WeierstrassModel, iso: &ModelIso) -> Result<WeierstrassModel, ModelError> {
    if iso.u.is_zero() {
        return Err(ModelError::ZeroScaling);
    }
    let f = e.field();
    let int = |k: i64| RatFunc::from_int(f, k);
    let (u, r, s, w) = (&iso.u, &iso.r, &iso.s, &iso.w);
    let [a1, a2, a3, a4, a6] = e.coefficients().map(|c| c.clone());
    let ui = u.inv().unwrap();
    let u2 = &ui * &ui;
    let u3 = &u2 * &ui;
    let u4 = &u2 * &u2;
    let u6 = &u3 * &u3;
    let a1n = &ui * &(&a1 + &(&int(2) * s));
    let a2n = &u2 * &(&(&(&a2 - &(s * &a1)) + &(&int(3) * r)) - &(s * s));
    let a3n = &u3 * &(&(&a3 + &(r * &a1)) + &(&int(2) * w));
    let a4n = &u4
        * &(&(&(&(&a4 - &(s * &a3)) + &(&int(2) * &(r * &a2))) - &(&(w + &(r * s)) * &a1))
            + &(&(&int(3) * &(r * r)) - &(&int(2) * &(s * w))));
    let a6n = &u6
        * &(&(&(&(&(&a6 + &(r * &a4)) + &(&(r * r) * &a2)) + &r.pow(3)) - &(w * &a3))
            - &(&(w * w) + &(&(r * w) * &a1)));
    WeierstrassModel::new([a1n, a2n, a3n, a4n, a6n])
}

/// The cubic twist family `y^2 = x^3 - x + f`, i.e. the model
/// `[0, 0, 0, -1, f]`.
pub fn artin_schreier_twist(f: &RatFunc) -> Result<WeierstrassModel, ModelError> {
    let field = f.field();
    WeierstrassModel::new([
        RatFunc::zero(field),
        RatFunc::zero(field),
        RatFunc::zero(field),
        -RatFunc::one(field),
        f.clone(),
    ])
}

/// Quadratic twist by `d`: on a model with `a1 = a3 = 0` this sends
/// `(a2, a4, a6)` to `(d a2, d^2 a4, d^3 a6)`; general models are first
/// completed-squared. Requires characteristic != 2 and `d != 0`.
pub fn quadratic_twist(e: &WeierstrassModel, d: &RatFunc) -> Result<WeierstrassModel, ModelError> {
    if d.is_zero() {
        return Err(ModelError::ZeroTwist);
    }
    let sq = e.complete_square()?;
    let field = e.field();
    let [_, a2, _, a4, a6] = sq.coefficients().map(|c| c.clone());
    WeierstrassModel::new([
        RatFunc::zero(field),
        d * &a2,
        RatFunc::zero(field),
        &(d * d) * &a4,
        &d.pow(3) * &a6,
    ])
}
