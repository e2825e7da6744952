//! Minimal weak Drazin inverses.
//!
//! `T_l(a) = { x : x a^{i(a)+1} = a^{i(a)}, a x^2 = x }` is infinite, so it is
//! represented by a membership predicate plus a complete parametrized
//! sampler `z ↦ a^D + a^D z (1 - a a^D)`. The right-handed set `T_r(a)` and
//! the idempotents `E_l(a) = { e : e^2 = e, eR = a a^D R }` get the same
//! treatment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Mat;
use crate::geninv;

/// Cached powers and Drazin data of one base element `a`.
#[derive(Debug, Clone)]
pub struct WeakDrazinBase {
    a: Mat,
    index: usize,
    a_k: Mat,
    a_k1: Mat,
    drazin: Mat,
    projector: Mat,
}

impl WeakDrazinBase {
    pub fn new(a: &Mat) -> Result<Self> {
        let d = geninv::drazin(a)?;
        let a_k = a.pow(d.index);
        let a_k1 = &a_k * a;
        let projector = a * &d.inverse;
        Ok(Self {
            a: a.clone(),
            index: d.index,
            a_k,
            a_k1,
            drazin: d.inverse,
            projector,
        })
    }

    pub fn base(&self) -> &Mat {
        &self.a
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn drazin(&self) -> &Mat {
        &self.drazin
    }

    /// `a a^D`.
    pub fn projector(&self) -> &Mat {
        &self.projector
    }

    fn check_shape(&self, x: &Mat) -> Result<()> {
        if x.shape() == self.a.shape() {
            Ok(())
        } else {
            Err(Error::Shape {
                op: "weak Drazin membership",
                left: self.a.shape(),
                right: x.shape(),
            })
        }
    }

    pub fn tl_contains(&self, x: &Mat) -> Result<bool> {
        self.check_shape(x)?;
        Ok((x * &self.a_k1) == self.a_k && &(&self.a * &(x * x)) == x)
    }

    pub fn tr_contains(&self, z: &Mat) -> Result<bool> {
        self.check_shape(z)?;
        Ok((&self.a_k1 * z) == self.a_k && &(&(z * z) * &self.a) == z)
    }

    /// `e^2 = e`, `(a a^D) e = e` and `e (a a^D) = a a^D`.
    pub fn el_contains(&self, e: &Mat) -> Result<bool> {
        self.check_shape(e)?;
        let p = &self.projector;
        Ok(e.is_idempotent() && &(p * e) == e && &(e * p) == p)
    }

    fn complement(&self) -> Mat {
        &Mat::identity(self.a.rows()) - &self.projector
    }

    pub fn tl_value(&self, z: &Mat) -> Result<Mat> {
        self.check_shape(z)?;
        Ok(&self.drazin + &(&(&self.drazin * z) * &self.complement()))
    }

    pub fn tr_value(&self, z: &Mat) -> Result<Mat> {
        self.check_shape(z)?;
        Ok(&self.drazin + &(&(&self.complement() * z) * &self.drazin))
    }

    pub fn el_value(&self, z: &Mat) -> Result<Mat> {
        self.check_shape(z)?;
        Ok(&self.projector + &(&(&self.projector * z) * &self.complement()))
    }

    pub fn tl_sample(&self, z: &Mat) -> Result<WdiSample> {
        let value = self.tl_value(z)?;
        if !self.tl_contains(&value)? {
            return Err(Error::Verification {
                what: "T_l sampler".into(),
                detail: "sample rejected by membership test".into(),
            });
        }
        Ok(WdiSample {
            base: self.a.clone(),
            parameter: z.clone(),
            value,
        })
    }

    pub fn tr_sample(&self, z: &Mat) -> Result<Mat> {
        let value = self.tr_value(z)?;
        if !self.tr_contains(&value)? {
            return Err(Error::Verification {
                what: "T_r sampler".into(),
                detail: "sample rejected by membership test".into(),
            });
        }
        Ok(value)
    }

    pub fn el_sample(&self, z: &Mat) -> Result<IdempotentSample> {
        let value = self.el_value(z)?;
        if !self.el_contains(&value)? {
            return Err(Error::Verification {
                what: "E_l sampler".into(),
                detail: "sample rejected by membership test".into(),
            });
        }
        Ok(IdempotentSample {
            base: self.a.clone(),
            value,
        })
    }

    pub fn phi(&self, x: &Mat) -> Result<Mat> {
        if !self.tl_contains(x)? {
            return Err(Error::Domain("phi: argument is not in T_l(a)".into()));
        }
        Ok(&self.a * x)
    }

    pub fn psi(&self, e: &Mat) -> Result<Mat> {
        if !self.el_contains(e)? {
            return Err(Error::Domain("psi: argument is not in E_l(a)".into()));
        }
        Ok(&self.drazin * e)
    }
}

/// An element of `T_l(a)` together with the parameter that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdiSample {
    pub base: Mat,
    pub parameter: Mat,
    pub value: Mat,
}

/// An element of `E_l(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentSample {
    pub base: Mat,
    pub value: Mat,
}

pub fn tl_member(a: &Mat, x: &Mat) -> Result<bool> {
    WeakDrazinBase::new(a)?.tl_contains(x)
}

pub fn tr_member(a: &Mat, z: &Mat) -> Result<bool> {
    WeakDrazinBase::new(a)?.tr_contains(z)
}

pub fn el_member(a: &Mat, e: &Mat) -> Result<bool> {
    WeakDrazinBase::new(a)?.el_contains(e)
}

pub fn tl_sample(a: &Mat, z: &Mat) -> Result<WdiSample> {
    WeakDrazinBase::new(a)?.tl_sample(z)
}

pub fn phi(a: &Mat, x: &Mat) -> Result<Mat> {
    WeakDrazinBase::new(a)?.phi(x)
}

pub fn psi(a: &Mat, e: &Mat) -> Result<Mat> {
    WeakDrazinBase::new(a)?.psi(e)
}

/// One factor `a^k x^s` of a product word.
#[derive(Debug, Clone)]
pub struct WordFactor {
    pub a_power: usize,
    pub x: Mat,
    pub x_power: usize,
}

/// Compares `Π a^{k_i} x_i^{s_i}` with `a^{Σk} x_n^{Σs}`.
pub fn product_collapse_check(a: &Mat, word: &[WordFactor]) -> Result<bool> {
    let base = WeakDrazinBase::new(a)?;
    let last = word
        .last()
        .ok_or_else(|| Error::Domain("empty product word".into()))?;
    if last.x_power == 0 {
        return Err(Error::Domain(
            "last factor must carry a positive power of x".into(),
        ));
    }
    for f in word {
        if !base.tl_contains(&f.x)? {
            return Err(Error::Domain("word factor is not in T_l(a)".into()));
        }
    }
    let n = a.rows();
    let mut lhs = Mat::identity(n);
    for f in word {
        lhs = &(&lhs * &a.pow(f.a_power)) * &f.x.pow(f.x_power);
    }
    let k: usize = word.iter().map(|f| f.a_power).sum();
    let s: usize = word.iter().map(|f| f.x_power).sum();
    let rhs = &a.pow(k) * &last.x.pow(s);
    Ok(lhs == rhs)
}

/// Instance check of: `a^m x^n = x^n a^m` for `x ∈ T_l(a)` forces `x = a^D`.
/// Vacuously true when the powers do not commute.
pub fn commuting_power_check(a: &Mat, x: &Mat, m: usize, n: usize) -> Result<bool> {
    let base = WeakDrazinBase::new(a)?;
    if !base.tl_contains(x)? {
        return Err(Error::Domain(
            "commuting_power_check: x is not in T_l(a)".into(),
        ));
    }
    let am = a.pow(m);
    let xn = x.pow(n);
    if &am * &xn != &xn * &am {
        return Ok(true);
    }
    Ok(x == base.drazin())
}
