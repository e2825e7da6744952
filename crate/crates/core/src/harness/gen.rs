//! Random instances with prescribed structure.
//!
//! A matrix with Drazin index `k` is assembled as `P diag(C, N) P^{-1}`.
//! Perturbations are built in block coordinates `Q = [V W]`, where `V` spans
//! `R(A^k)` and `W` spans a chosen complement: in those coordinates
//! `A = [[T, S], [0, M]]` and the generator picks `F = A + B = [[K, R], [L, J]]`
//! block by block. Every block profile is checked with projector identities
//! before it is returned.

use serde::{Deserialize, Serialize};

use super::rng::InstanceRng;
use crate::error::{Error, Result};
use crate::exact::{GaussRational, Mat};
use crate::geninv;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Unconstrained,
    /// `L = 0`, `R = 0`, tail nilpotent, core-nilpotent coordinates.
    CommutingBlocks,
    /// `L = 0`, `R` random, tail nilpotent, core-nilpotent coordinates.
    UpperBlocks,
    /// `L = 0`, `R` random, tail nilpotent, orthogonal coordinates.
    ProjectorCompatible,
    /// `L = 0`, `R = 0`, tail nilpotent, orthogonal coordinates.
    DmpCompatible,
    /// `L = 0`, `R = 0`, `J = 0`, orthogonal coordinates.
    EpCompatible,
    /// `L = 0`, `R = K T^{-1} S`, tail nilpotent, orthogonal coordinates.
    WeakGroupCompatible,
    NegativeB3,
    NegativeTail,
    NegativeB2,
    NegativeProjectorB3,
    NegativeProjectorTail,
    NegativeProjectorB2,
}

impl Profile {
    pub const ALL: [Profile; 13] = [
        Profile::Unconstrained,
        Profile::CommutingBlocks,
        Profile::UpperBlocks,
        Profile::ProjectorCompatible,
        Profile::DmpCompatible,
        Profile::EpCompatible,
        Profile::WeakGroupCompatible,
        Profile::NegativeB3,
        Profile::NegativeTail,
        Profile::NegativeB2,
        Profile::NegativeProjectorB3,
        Profile::NegativeProjectorTail,
        Profile::NegativeProjectorB2,
    ];

    fn plan(self) -> Option<(Frame, Recipe)> {
        use Profile::*;
        let (frame, upper, lower_nonzero, tail) = match self {
            Unconstrained => return None,
            CommutingBlocks => (Frame::CoreNilpotent, Upper::Zero, false, Tail::Nilpotent),
            UpperBlocks => (Frame::CoreNilpotent, Upper::Random, false, Tail::Nilpotent),
            ProjectorCompatible => (Frame::Orthogonal, Upper::Random, false, Tail::Nilpotent),
            DmpCompatible => (Frame::Orthogonal, Upper::Zero, false, Tail::Nilpotent),
            EpCompatible => (Frame::Orthogonal, Upper::Zero, false, Tail::Zero),
            WeakGroupCompatible => (Frame::Orthogonal, Upper::WeakGroup, false, Tail::Nilpotent),
            NegativeB3 => (Frame::CoreNilpotent, Upper::Zero, true, Tail::Nilpotent),
            NegativeTail => (Frame::CoreNilpotent, Upper::Zero, false, Tail::NonNilpotent),
            NegativeB2 => (Frame::CoreNilpotent, Upper::Nonzero, false, Tail::Nilpotent),
            NegativeProjectorB3 => (Frame::Orthogonal, Upper::Zero, true, Tail::Nilpotent),
            NegativeProjectorTail => (Frame::Orthogonal, Upper::Zero, false, Tail::NonNilpotent),
            NegativeProjectorB2 => (Frame::Orthogonal, Upper::Nonzero, false, Tail::Nilpotent),
        };
        Some((
            frame,
            Recipe {
                upper,
                lower_nonzero,
                tail,
            },
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenProfile {
    pub n: usize,
    /// Drazin index of generated matrices; for perturbations, the bound `s`
    /// on the nilpotency of the tail block.
    pub index: usize,
    pub entry_bound: i64,
    pub profile: Profile,
    pub seed: u64,
}

impl GenProfile {
    pub fn new(n: usize, index: usize, profile: Profile, seed: u64) -> Self {
        Self {
            n,
            index,
            entry_bound: 3,
            profile,
            seed,
        }
    }
}

pub fn gen_matrix(profile: &GenProfile) -> Result<Mat> {
    let mut rng = InstanceRng::for_trial(profile.seed, "gen_matrix", 0);
    random_with_index(&mut rng, profile.n, profile.index, profile.entry_bound)
}

pub fn gen_conforming_b(a: &Mat, profile: &GenProfile) -> Result<Mat> {
    let mut rng = InstanceRng::for_trial(profile.seed, "gen_conforming_b", 0);
    conforming_b(
        &mut rng,
        a,
        profile.profile,
        profile.index.max(1),
        profile.entry_bound,
    )
}

/// Small Gaussian integer; the imaginary part is nonzero one draw in four.
fn small_int(rng: &mut InstanceRng, bound: i64) -> GaussRational {
    let re = rng.int_in(-bound, bound);
    let im = if rng.chance(1, 4) {
        rng.int_in(-bound, bound)
    } else {
        0
    };
    GaussRational::from_parts(re, 1, im, 1)
}

fn nonzero_small_int(rng: &mut InstanceRng, bound: i64) -> GaussRational {
    loop {
        let z = small_int(rng, bound);
        if !num_traits::Zero::is_zero(&z) {
            return z;
        }
    }
}

/// Unit-lower times unit-upper with integer entries, columns shuffled.
/// Its inverse has Gaussian-integer entries too, which keeps arithmetic cheap.
pub(crate) fn random_unimodular(rng: &mut InstanceRng, n: usize, bound: i64) -> Mat {
    let lower = Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => GaussRational::from_int(1),
        std::cmp::Ordering::Greater => small_int(rng, bound),
        std::cmp::Ordering::Less => GaussRational::from_int(0),
    });
    let upper = Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => GaussRational::from_int(1),
        std::cmp::Ordering::Less => small_int(rng, bound),
        std::cmp::Ordering::Greater => GaussRational::from_int(0),
    });
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.usize_in(0, i);
        order.swap(i, j);
    }
    (&lower * &upper).select_columns(&order)
}

/// Invertible by construction: unit-lower times upper with nonzero diagonal.
pub(crate) fn random_invertible(rng: &mut InstanceRng, n: usize, bound: i64) -> Mat {
    let lower = Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => GaussRational::from_int(1),
        std::cmp::Ordering::Greater => rng.scalar(bound),
        std::cmp::Ordering::Less => GaussRational::from_int(0),
    });
    let upper = Mat::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => rng.nonzero_scalar(bound),
        std::cmp::Ordering::Less => rng.scalar(bound),
        std::cmp::Ordering::Greater => GaussRational::from_int(0),
    });
    &lower * &upper
}

/// Strictly upper `len × len` block with nonzero superdiagonal, so its
/// nilpotency index is exactly `len`.
fn chain(rng: &mut InstanceRng, len: usize, bound: i64) -> Mat {
    Mat::from_fn(len, len, |i, j| {
        if j == i + 1 {
            nonzero_small_int(rng, bound)
        } else if j > i + 1 {
            small_int(rng, bound)
        } else {
            GaussRational::from_int(0)
        }
    })
}

/// Nilpotent `m × m` matrix of nilpotency index exactly `index`
/// (`1 <= index <= m`, or `m = 0`), conjugated by a random unimodular matrix.
pub(crate) fn random_nilpotent(rng: &mut InstanceRng, m: usize, index: usize, bound: i64) -> Mat {
    if m == 0 {
        return Mat::zeros(0, 0);
    }
    let index = index.clamp(1, m);
    let mut lengths = vec![index];
    let mut rest = m - index;
    while rest > 0 {
        let len = rng.usize_in(1, index.min(rest));
        lengths.push(len);
        rest -= len;
    }
    let mut n = Mat::zeros(0, 0);
    for len in lengths {
        n = Mat::block_diag(&n, &chain(rng, len, bound));
    }
    let p = random_unimodular(rng, m, 1);
    let p_inv = p.inverse().expect("unimodular");
    &(&p * &n) * &p_inv
}

/// `P diag(C, N) P^{-1}` with Drazin index exactly `index`.
pub(crate) fn random_with_index(
    rng: &mut InstanceRng,
    n: usize,
    index: usize,
    bound: i64,
) -> Result<Mat> {
    if n == 0 || index == 0 || index > n {
        return Err(Error::Profile(format!(
            "no {n}x{n} matrix has Drazin index {index}"
        )));
    }
    let min_tail = if index >= 2 { index } else { 0 };
    let m = rng.usize_in(min_tail, n);
    let c = random_invertible(rng, n - m, bound);
    let nil = random_nilpotent(rng, m, index, bound);
    let p = random_unimodular(rng, n, bound);
    let p_inv = p.inverse().expect("unimodular");
    let a = &(&p * &Mat::block_diag(&c, &nil)) * &p_inv;
    let got = geninv::drazin_index(&a)?;
    if got != index {
        return Err(Error::Verification {
            what: "gen_matrix".into(),
            detail: format!("wanted index {index}, built index {got}"),
        });
    }
    Ok(a)
}

/// Which complement of `R(A^k)` the block coordinates use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Frame {
    /// `N(A^k)`: the projector onto `R(A^k)` is `a a^D`.
    CoreNilpotent,
    /// `N((A^k)^*)`: the projector is `a a^⊕`.
    Orthogonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Upper {
    Zero,
    Random,
    Nonzero,
    WeakGroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Tail {
    Zero,
    /// Nilpotency index at most `s`.
    Nilpotent,
    NonNilpotent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Recipe {
    pub upper: Upper,
    pub lower_nonzero: bool,
    pub tail: Tail,
}

/// Block coordinates `Q = [V W]` for one base matrix.
pub(crate) struct Coords {
    q: Mat,
    q_inv: Mat,
    r: usize,
    t: Mat,
    s: Mat,
    m: Mat,
    /// `Q diag(I, 0) Q^{-1}`
    pub projector: Mat,
}

impl Coords {
    pub fn new(a: &Mat, frame: Frame) -> Result<Self> {
        let k = geninv::drazin_index(a)?;
        let ak = a.pow(k);
        let w = match frame {
            Frame::CoreNilpotent => ak.null_space(),
            Frame::Orthogonal => ak.adjoint().null_space(),
        };
        Self::with_complement(a, &ak.column_basis(), &w)
    }

    /// Complement `N(e)` for an idempotent `e` with `R(e) = R(A^k)`.
    pub fn along(a: &Mat, e: &Mat) -> Result<Self> {
        let k = geninv::drazin_index(a)?;
        Self::with_complement(a, &a.pow(k).column_basis(), &e.null_space())
    }

    fn with_complement(a: &Mat, v: &Mat, w: &Mat) -> Result<Self> {
        let n = a.rows();
        let r = v.cols();
        let q = v.hstack(w)?;
        let q_inv = q.inverse().map_err(|_| Error::Verification {
            what: "block coordinates".into(),
            detail: "range and complement do not span".into(),
        })?;
        let blk = &(&q_inv * a) * &q;
        if !blk.submatrix(r, 0, n - r, r).is_zero() {
            return Err(Error::Verification {
                what: "block coordinates".into(),
                detail: "R(A^k) is not invariant".into(),
            });
        }
        let mut head = Mat::zeros(n, n);
        for i in 0..r {
            head[(i, i)] = GaussRational::from_int(1);
        }
        let projector = &(&q * &head) * &q_inv;
        Ok(Self {
            t: blk.submatrix(0, 0, r, r),
            s: blk.submatrix(0, r, r, n - r),
            m: blk.submatrix(r, r, n - r, n - r),
            q,
            q_inv,
            r,
            projector,
        })
    }

    pub fn tail_size(&self) -> usize {
        self.q.rows() - self.r
    }

    /// `Q [[K, R], [L, J]] Q^{-1}`.
    fn assemble(&self, k: &Mat, r: &Mat, l: &Mat, j: &Mat) -> Mat {
        let blk = Mat::from_blocks(k, r, l, j).expect("block shapes agree");
        &(&self.q * &blk) * &self.q_inv
    }

    fn tail_block(&self) -> &Mat {
        &self.m
    }

    fn core_block(&self) -> &Mat {
        &self.t
    }
}

/// Builds `F = A + B` in the given coordinates and returns `B`, after
/// checking the recipe with projector identities.
pub(crate) fn build_in(
    rng: &mut InstanceRng,
    a: &Mat,
    coords: &Coords,
    recipe: Recipe,
    s: usize,
    bound: i64,
) -> Result<Mat> {
    let r = coords.r;
    let m = coords.tail_size();
    let infeasible = |what: &str| {
        Err(Error::Profile(format!(
            "{what} needs a nontrivial split, r={r}, tail={m}"
        )))
    };
    if (recipe.lower_nonzero || recipe.upper == Upper::Nonzero) && (r == 0 || m == 0) {
        return infeasible("an off-diagonal block");
    }
    if recipe.tail == Tail::NonNilpotent && m == 0 {
        return infeasible("a non-nilpotent tail");
    }
    let k = random_invertible(rng, r, bound);
    let upper = match recipe.upper {
        Upper::Zero => Mat::zeros(r, m),
        Upper::Random => rng.matrix(r, m, bound),
        Upper::Nonzero => rng.nonzero_matrix(r, m, bound),
        Upper::WeakGroup => {
            let t_inv = coords.core_block().inverse().expect("T is invertible");
            &(&k * &t_inv) * &coords.s
        }
    };
    let lower = if recipe.lower_nonzero {
        rng.nonzero_matrix(m, r, bound)
    } else {
        Mat::zeros(m, r)
    };
    let tail = match recipe.tail {
        Tail::Zero => Mat::zeros(m, m),
        Tail::Nilpotent => {
            let idx = if m == 0 { 0 } else { rng.usize_in(1, s.min(m)) };
            random_nilpotent(rng, m, idx, bound)
        }
        Tail::NonNilpotent => loop {
            let j = rng.nonzero_matrix(m, m, bound);
            if !j.is_nilpotent() {
                break j;
            }
        },
    };
    let f = coords.assemble(&k, &upper, &lower, &tail);
    let b = &f - a;
    verify_recipe(coords, &f, recipe, s)?;
    Ok(b)
}

fn verify_recipe(coords: &Coords, f: &Mat, recipe: Recipe, s: usize) -> Result<()> {
    let p = &coords.projector;
    let q = &Mat::identity(p.rows()) - p;
    let lower = &(&q * f) * p;
    let upper = &(p * f) * &q;
    let tail = &(&q * f) * &q;
    let mut ok = (&(p * f) * p).rank() == coords.r;
    ok &= lower.is_zero() != recipe.lower_nonzero;
    ok &= match recipe.upper {
        Upper::Zero => upper.is_zero(),
        Upper::Nonzero => !upper.is_zero(),
        Upper::Random | Upper::WeakGroup => true,
    };
    ok &= match recipe.tail {
        Tail::Zero => tail.is_zero(),
        Tail::Nilpotent => tail.pow(s).is_zero(),
        Tail::NonNilpotent => !tail.is_nilpotent(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Verification {
            what: "perturbation profile".into(),
            detail: format!("{recipe:?} not satisfied"),
        })
    }
}

pub(crate) fn conforming_b(
    rng: &mut InstanceRng,
    a: &Mat,
    profile: Profile,
    s: usize,
    bound: i64,
) -> Result<Mat> {
    let n = a.require_square()?;
    match profile.plan() {
        None => Ok(rng.matrix(n, n, bound)),
        Some((frame, recipe)) => build_in(rng, a, &Coords::new(a, frame)?, recipe, s, bound),
    }
}

/// `B = diag(K - C, c1 N + c2 N^2)` in core-nilpotent coordinates; with
/// `negative`, the tail becomes `c0 I + c1 N` with `c0 != 0`. Both keep the
/// commuting hypotheses.
pub(crate) fn czwe_b(rng: &mut InstanceRng, a: &Mat, negative: bool, bound: i64) -> Result<Mat> {
    let coords = Coords::new(a, Frame::CoreNilpotent)?;
    let (r, m) = (coords.r, coords.tail_size());
    if negative && m == 0 {
        return Err(Error::Profile(
            "negative tail needs a nilpotent part".into(),
        ));
    }
    let k = random_invertible(rng, r, bound);
    let nil = coords.tail_block();
    let id = Mat::identity(m);
    let c1 = rng.scalar(bound);
    let b4 = if negative {
        &id.scale(&rng.nonzero_scalar(bound)) + &nil.scale(&c1)
    } else {
        &nil.scale(&c1) + &(nil * nil).scale(&rng.scalar(bound))
    };
    let f = coords.assemble(&k, &Mat::zeros(r, m), &Mat::zeros(m, r), &(nil + &b4));
    let b = &f - a;
    let p = &coords.projector;
    let q = &Mat::identity(a.rows()) - p;
    let aq = a * &q;
    let tail_nil = (&(&q * &f) * &q).is_nilpotent();
    if (p * &b) != (&b * p) || (&aq * &b) != (&b * &aq) || tail_nil == negative {
        return Err(Error::Verification {
            what: "czwe perturbation".into(),
            detail: "commuting hypotheses or tail shape violated".into(),
        });
    }
    Ok(b)
}

/// `E = diag(K - C, -N)`, so `A + E` is group invertible; `negative` keeps a
/// nonzero nilpotent tail instead.
pub(crate) fn wei_e(rng: &mut InstanceRng, a: &Mat, negative: bool, bound: i64) -> Result<Mat> {
    let coords = Coords::new(a, Frame::CoreNilpotent)?;
    let (r, m) = (coords.r, coords.tail_size());
    if negative && m < 2 {
        return Err(Error::Profile(
            "a nonzero nilpotent tail needs size 2".into(),
        ));
    }
    let k = random_invertible(rng, r, bound);
    let tail = if negative {
        let idx = rng.usize_in(2, m);
        random_nilpotent(rng, m, idx, bound)
    } else {
        Mat::zeros(m, m)
    };
    let f = coords.assemble(&k, &Mat::zeros(r, m), &Mat::zeros(m, r), &tail);
    Ok(&f - a)
}

/// Outer inverse `U (V A U)^{-1} V` of rank `t`, or `None` when the random
/// middle factor is singular.
pub(crate) fn random_outer_inverse(
    rng: &mut InstanceRng,
    a: &Mat,
    t: usize,
    bound: i64,
) -> Option<Mat> {
    let n = a.rows();
    let u = rng.matrix(n, t, bound);
    let v = rng.matrix(t, n, bound);
    let mid = (&(&v * a) * &u).inverse().ok()?;
    Some(&(&u * &mid) * &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_index_is_exact() {
        for seed in 0..20 {
            for (n, k) in [(2, 1), (3, 2), (3, 3), (4, 2), (4, 3), (5, 1)] {
                let a = gen_matrix(&GenProfile::new(n, k, Profile::Unconstrained, seed)).unwrap();
                assert_eq!(geninv::drazin_index(&a).unwrap(), k);
            }
        }
        let a = gen_matrix(&GenProfile::new(3, 3, Profile::Unconstrained, 5)).unwrap();
        assert!(a.is_nilpotent());
    }

    #[test]
    fn generation_is_reproducible() {
        let g = GenProfile::new(4, 2, Profile::ProjectorCompatible, 11);
        let a = gen_matrix(&g).unwrap();
        assert_eq!(a, gen_matrix(&g).unwrap());
        assert_eq!(
            gen_conforming_b(&a, &g).unwrap(),
            gen_conforming_b(&a, &g).unwrap()
        );
        assert!(gen_matrix(&GenProfile::new(2, 3, Profile::Unconstrained, 0)).is_err());
    }

    #[test]
    fn every_profile_verifies() {
        for seed in 0..10 {
            let a = gen_matrix(&GenProfile::new(4, 2, Profile::Unconstrained, seed)).unwrap();
            for profile in Profile::ALL {
                let g = GenProfile::new(4, 2, profile, seed);
                match gen_conforming_b(&a, &g) {
                    Ok(b) => assert_eq!(b.shape(), (4, 4)),
                    Err(Error::Profile(_)) => {}
                    Err(e) => panic!("{profile:?}: {e}"),
                }
            }
        }
    }

    #[test]
    fn counterexample_pair_is_projector_compatible() {
        let a0 = Mat::from_ints(&[[1, 1], [0, 0]]);
        let b0 = Mat::from_ints(&[[1, 0], [0, 0]]);
        let c = Coords::new(&a0, Frame::Orthogonal).unwrap();
        let p = &c.projector;
        let q = &Mat::identity(2) - p;
        assert!((&(&q * &b0) * &(&a0 * &geninv::pseudo_core(&a0).unwrap().inverse)).is_zero());
        assert_eq!(p, &b0);
    }

    #[test]
    fn nilpotent_blocks() {
        let mut rng = InstanceRng::new(3);
        for (m, k) in [(1, 1), (3, 1), (3, 2), (4, 4)] {
            let n = random_nilpotent(&mut rng, m, k, 3);
            assert_eq!(n.nilpotency_index(), Some(k));
        }
    }
}
