//! Generalized inverses computed by explicit algorithms and certified
//! against their defining equations before they are returned.

pub mod oracle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Drazin,
    Group,
    MoorePenrose,
    Core,
    PseudoCore,
    DualPseudoCore,
    WeakGroup,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Drazin,
        Kind::Group,
        Kind::MoorePenrose,
        Kind::Core,
        Kind::PseudoCore,
        Kind::DualPseudoCore,
        Kind::WeakGroup,
    ];

    /// Name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Kind::Drazin => "drazin",
            Kind::Group => "group",
            Kind::MoorePenrose => "mp",
            Kind::Core => "core",
            Kind::PseudoCore => "core-ep",
            Kind::DualPseudoCore => "dual-core-ep",
            Kind::WeakGroup => "weak-group",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.cli_name() == s)
            .ok_or_else(|| Error::Parse {
                token: s.to_string(),
                message: "unknown inverse kind".into(),
            })
    }
}

/// Labeled outcomes of the defining equations of one inverse kind.
pub type Certificate = Vec<(String, bool)>;

/// A certified generalized inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenInv {
    pub kind: Kind,
    pub index: usize,
    pub inverse: Mat,
    pub certificate: Certificate,
}

impl GenInv {
    fn certified(kind: Kind, index: usize, inverse: Mat, certificate: Certificate) -> Result<Self> {
        if let Some((label, _)) = certificate.iter().find(|(_, ok)| !ok) {
            return Err(Error::Verification {
                what: kind.to_string(),
                detail: format!("defining equation `{label}` fails"),
            });
        }
        Ok(GenInv {
            kind,
            index,
            inverse,
            certificate,
        })
    }
}

/// Drazin index: the least `k >= 0` with `rank(A^k) = rank(A^{k+1})`,
/// clamped to at least 1 so invertible and zero matrices report 1.
pub fn drazin_index(a: &Mat) -> Result<usize> {
    let n = a.require_square()?;
    let mut power = Mat::identity(n);
    let mut rank = n;
    for k in 0..=n {
        let next = &power * a;
        let next_rank = next.rank();
        if next_rank == rank {
            return Ok(k.max(1));
        }
        power = next;
        rank = next_rank;
    }
    unreachable!("rank sequence stabilizes within n steps")
}

/// Drazin inverse by Cline's recursion `(BC)^D = B ((CB)^D)^2 C`.
fn cline(a: &Mat) -> Mat {
    let (b, c) = match a.full_rank_factorization() {
        Ok(f) => f,
        Err(_) => return Mat::zeros(a.rows(), a.cols()),
    };
    let cb = &c * &b;
    if cb.is_zero() {
        return Mat::zeros(a.rows(), a.cols());
    }
    let inner = match cb.inverse() {
        Ok(inv) => inv,
        Err(_) => cline(&cb),
    };
    &(&(&b * &inner) * &inner) * &c
}

pub fn drazin(a: &Mat) -> Result<GenInv> {
    let k = drazin_index(a)?;
    let x = cline(a);
    let cert = verify_defining(a, &x, Kind::Drazin, k)?;
    GenInv::certified(Kind::Drazin, k, x, cert)
}

pub fn group_inverse(a: &Mat) -> Result<GenInv> {
    let k = drazin_index(a)?;
    if k > 1 {
        return Err(Error::NotGroupInvertible { index: k });
    }
    let x = cline(a);
    let cert = verify_defining(a, &x, Kind::Group, 1)?;
    GenInv::certified(Kind::Group, 1, x, cert)
}

fn moore_penrose_matrix(a: &Mat) -> Mat {
    let (b, c) = match a.full_rank_factorization() {
        Ok(f) => f,
        Err(_) => return Mat::zeros(a.cols(), a.rows()),
    };
    let bs = b.adjoint();
    let cs = c.adjoint();
    let ccs_inv = (&c * &cs)
        .inverse()
        .expect("C C* is invertible for a full row rank C");
    let bsb_inv = (&bs * &b)
        .inverse()
        .expect("B* B is invertible for a full column rank B");
    &(&(&cs * &ccs_inv) * &bsb_inv) * &bs
}

/// Moore-Penrose inverse from a full-rank factorization `A = BC`:
/// `A^† = C* (C C*)^{-1} (B* B)^{-1} B*`.
pub fn moore_penrose(a: &Mat) -> Result<GenInv> {
    let x = moore_penrose_matrix(a);
    let index = if a.is_square() { drazin_index(a)? } else { 1 };
    let cert = verify_defining(a, &x, Kind::MoorePenrose, index)?;
    GenInv::certified(Kind::MoorePenrose, index, x, cert)
}

/// Core-EP (pseudo core) inverse, built as `A^D A^k (A^k)^†`.
pub fn pseudo_core(a: &Mat) -> Result<GenInv> {
    let k = drazin_index(a)?;
    let ak = a.pow(k);
    let x = &(&cline(a) * &ak) * &moore_penrose_matrix(&ak);
    let cert = verify_defining(a, &x, Kind::PseudoCore, k)?;
    GenInv::certified(Kind::PseudoCore, k, x, cert)
}

/// Dual core-EP inverse, built as `(A^k)^† A^k A^D`.
pub fn dual_pseudo_core(a: &Mat) -> Result<GenInv> {
    let k = drazin_index(a)?;
    let ak = a.pow(k);
    let x = &(&moore_penrose_matrix(&ak) * &ak) * &cline(a);
    let cert = verify_defining(a, &x, Kind::DualPseudoCore, k)?;
    GenInv::certified(Kind::DualPseudoCore, k, x, cert)
}

pub fn core_inverse(a: &Mat) -> Result<GenInv> {
    let k = drazin_index(a)?;
    if k > 1 {
        return Err(Error::NotCoreInvertible { index: k });
    }
    let x = pseudo_core(a)?.inverse;
    let cert = verify_defining(a, &x, Kind::Core, 1)?;
    GenInv::certified(Kind::Core, 1, x, cert)
}

/// Weak group inverse `(A^⊕)^2 A`.
pub fn weak_group(a: &Mat) -> Result<GenInv> {
    let pc = pseudo_core(a)?;
    let x = &(&pc.inverse * &pc.inverse) * a;
    let cert = verify_defining(a, &x, Kind::WeakGroup, pc.index)?;
    GenInv::certified(Kind::WeakGroup, pc.index, x, cert)
}

pub fn compute(a: &Mat, kind: Kind) -> Result<GenInv> {
    match kind {
        Kind::Drazin => drazin(a),
        Kind::Group => group_inverse(a),
        Kind::MoorePenrose => moore_penrose(a),
        Kind::Core => core_inverse(a),
        Kind::PseudoCore => pseudo_core(a),
        Kind::DualPseudoCore => dual_pseudo_core(a),
        Kind::WeakGroup => weak_group(a),
    }
}

/// EP: group invertible with `A A^#` Hermitian.
pub fn is_ep(a: &Mat) -> Result<bool> {
    if drazin_index(a)? > 1 {
        return Ok(false);
    }
    let g = group_inverse(a)?;
    Ok((a * &g.inverse).is_hermitian())
}

/// Smallest `m` in `1..=n` with `A^m` EP, if any.
pub fn is_star_dmp(a: &Mat) -> Result<Option<usize>> {
    let n = a.require_square()?;
    let mut power = a.clone();
    for m in 1..=n.max(1) {
        if is_ep(&power)? {
            return Ok(Some(m));
        }
        power = &power * a;
    }
    Ok(None)
}

/// Evaluates each defining equation of `kind` for the candidate `x` at
/// exponent `k`. Returns the labeled outcomes without judging them.
pub fn verify_defining(a: &Mat, x: &Mat, kind: Kind, k: usize) -> Result<Certificate> {
    let eq = |label: &str, lhs: Mat, rhs: &Mat| (label.to_string(), &lhs == rhs);
    if kind == Kind::MoorePenrose {
        if x.shape() != (a.cols(), a.rows()) {
            return Err(Error::Shape {
                op: "verify_defining",
                left: a.shape(),
                right: x.shape(),
            });
        }
        let ax = a * x;
        let xa = x * a;
        return Ok(vec![
            eq("axa=a", &ax * a, a),
            eq("xax=x", &xa * x, x),
            eq("(ax)*=ax", ax.adjoint(), &ax),
            eq("(xa)*=xa", xa.adjoint(), &xa),
        ]);
    }
    a.require_square()?;
    if x.shape() != a.shape() {
        return Err(Error::Shape {
            op: "verify_defining",
            left: a.shape(),
            right: x.shape(),
        });
    }
    let ak = a.pow(k);
    let ak1 = &ak * a;
    let ax = a * x;
    let xa = x * a;
    let xx = x * x;
    Ok(match kind {
        Kind::Drazin | Kind::Group => vec![
            eq("xa^(k+1)=a^k", x * &ak1, &ak),
            eq("ax^2=x", a * &xx, x),
            eq("xa=ax", xa, &ax),
        ],
        Kind::Core | Kind::PseudoCore => vec![
            eq("xa^(k+1)=a^k", x * &ak1, &ak),
            eq("ax^2=x", a * &xx, x),
            eq("(ax)*=ax", ax.adjoint(), &ax),
        ],
        Kind::DualPseudoCore => vec![
            eq("a^(k+1)x=a^k", &ak1 * x, &ak),
            eq("x^2a=x", &xx * a, x),
            eq("(xa)*=xa", xa.adjoint(), &xa),
        ],
        Kind::WeakGroup => {
            let aks = ak.adjoint();
            vec![
                eq("ax^2=x", a * &xx, x),
                eq("(a^k)*a^2x=(a^k)*a", &(&aks * &(a * a)) * x, &(&aks * a)),
            ]
        }
        Kind::MoorePenrose => unreachable!(),
    })
}
