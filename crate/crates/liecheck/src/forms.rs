//! The normalized invariant symmetric bilinear form on the algebra, linear
//! functionals, and the quadratic form `b_f` used in the rank analysis of
//! coadjoint orbits.
//!
//! The form is fixed by `⟨e_θ, e_{-θ}⟩ = 1` for the highest root θ.  On the
//! rest of the basis:
//!   `⟨e_α, e_{-α}⟩ = (θ,θ)/(α,α)` (an integer in {1,2,3}),
//!   `⟨h_i, h_j⟩ = ⟨α_i, α_j^∨⟩ · (θ,θ)/(α_i,α_i)`,
//! and all other basis pairs are orthogonal.  Invariance
//! `⟨[x,y],z⟩ = ⟨x,[y,z]⟩` is exact over Z and checked exhaustively in the
//! tests.  Mod p the form can degenerate; its radical is computed as the
//! Gram nullspace.

use crate::algebra::{Algebra, GVec};
use crate::error::LieError;
use crate::fp::{add_m, mul_m, red_i64, FpMatrix, Prime};
use crate::Result;

/// The invariant form as an integer Gram matrix plus its mod-p reduction.
pub struct InvForm {
    p: Prime,
    dim: usize,
    gram_z: Vec<Vec<i64>>,
    gram: FpMatrix,
}

/// Build the normalized invariant form for the algebra.
pub fn build_form(a: &Algebra) -> InvForm {
    let rs = a.rs();
    let l = rs.rank();
    let n = a.dim();
    let top = rs.highest_root();
    let top_norm = rs.norm(top);
    let mut gram_z = vec![vec![0i64; n]; n];
    for i in 0..l {
        for j in 0..l {
            let si = rs.simple_index(i);
            let sj = rs.simple_index(j);
            let num = rs.pairing(si, sj) * top_norm;
            let den = rs.norm(si);
            assert_eq!(num % den, 0, "Cartan Gram entry not integral");
            gram_z[i][j] = num / den;
        }
    }
    for r in 0..rs.len() {
        let num = top_norm;
        let den = rs.norm(r);
        assert_eq!(num % den, 0, "length ratio not integral");
        gram_z[a.e_index(r)][a.e_index(rs.neg(r))] = num / den;
    }
    let p = a.p();
    let mut gram = FpMatrix::zero(p, n, n);
    for r in 0..n {
        for c in 0..n {
            gram.set(r, c, red_i64(gram_z[r][c], p.get()));
        }
    }
    InvForm { p, dim: n, gram_z, gram }
}

impl InvForm {
    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &FpMatrix {
        &self.gram
    }

    pub fn gram_z(&self) -> &[Vec<i64>] {
        &self.gram_z
    }

    /// `⟨x, y⟩` mod p.
    pub fn value(&self, x: &GVec, y: &GVec) -> u64 {
        let p = self.p.get();
        let mut acc = 0u64;
        for i in x.support() {
            let row = &self.gram_z[i];
            let xi = x.coeff(i);
            for j in y.support() {
                if row[j] != 0 {
                    let g = red_i64(row[j], p);
                    acc = add_m(acc, mul_m(mul_m(xi, g, p), y.coeff(j), p), p);
                }
            }
        }
        acc
    }

    /// Basis of the radical `{x : ⟨x, ·⟩ = 0}` mod p.
    pub fn radical(&self) -> Vec<GVec> {
        self.gram
            .nullspace()
            .into_iter()
            .map(|v| GVec::new(self.p, v))
            .collect()
    }

    /// The functional `⟨u, ·⟩`.
    pub fn functional(&self, u: &GVec) -> Functional {
        let p = self.p.get();
        let cov: Vec<u64> = (0..self.dim)
            .map(|j| {
                let mut acc = 0u64;
                for i in u.support() {
                    if self.gram_z[i][j] != 0 {
                        let g = red_i64(self.gram_z[i][j], p);
                        acc = add_m(acc, mul_m(u.coeff(i), g, p), p);
                    }
                }
                acc
            })
            .collect();
        Functional { p, cov }
    }
}

/// A linear functional on the algebra, stored as a covector over the
/// Chevalley basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Functional {
    p: u64,
    cov: Vec<u64>,
}

impl Functional {
    pub fn from_covector(p: Prime, cov: Vec<u64>) -> Functional {
        let pm = p.get();
        Functional { p: pm, cov: cov.into_iter().map(|v| v % pm).collect() }
    }

    pub fn covector(&self) -> &[u64] {
        &self.cov
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn apply(&self, x: &GVec) -> u64 {
        debug_assert_eq!(self.p, x.modulus());
        let mut acc = 0u64;
        for i in x.support() {
            acc = add_m(acc, mul_m(self.cov[i], x.coeff(i), self.p), self.p);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.cov.iter().all(|&v| v == 0)
    }

    pub fn scale(&self, s: u64) -> Functional {
        let s = s % self.p;
        Functional {
            p: self.p,
            cov: self.cov.iter().map(|&v| mul_m(v, s, self.p)).collect(),
        }
    }

    /// Pre-compose with a linear map: `x ↦ f(M x)`.
    pub fn twist_by(&self, m: &FpMatrix) -> Functional {
        assert_eq!(m.rows(), self.cov.len());
        let cov = (0..m.cols())
            .map(|j| {
                let mut acc = 0u64;
                for i in 0..m.rows() {
                    acc = add_m(acc, mul_m(self.cov[i], m.get(i, j), self.p), self.p);
                }
                acc
            })
            .collect();
        Functional { p: self.p, cov }
    }
}

/// The quadratic companion form
/// `b_f(x, y) = f([x,y])² + 4 f(x) f(y) ⟨x, y⟩`.
pub fn b_form(a: &Algebra, form: &InvForm, f: &Functional, x: &GVec, y: &GVec) -> u64 {
    let p = a.p().get();
    let br = f.apply(&a.bracket(x, y));
    let first = mul_m(br, br, p);
    let second = mul_m(
        mul_m(4 % p, mul_m(f.apply(x), f.apply(y), p), p),
        form.value(x, y),
        p,
    );
    add_m(first, second, p)
}

/// The coadjoint centralizer `z_g(f) = {x : f([x, y]) = 0 for all y}`.
pub fn coadjoint_centralizer(a: &Algebra, f: &Functional) -> Vec<GVec> {
    let n = a.dim();
    let mut system = FpMatrix::zero(a.p(), n, n);
    for k in 0..n {
        let col_elt = a.basis(k);
        for j in 0..n {
            // row j: constraint against basis y_j, column k: coefficient of x_k.
            let v = f.apply(&a.bracket(&col_elt, &a.basis(j)));
            system.set(j, k, v);
        }
    }
    system
        .nullspace()
        .into_iter()
        .map(|v| GVec::new(a.p(), v))
        .collect()
}

/// Search `points` (long-root elements) for a witness `e'` with
/// `χ([z, e']) ≠ 0`.
///
/// # Errors
/// - `HypothesisViolation` when `z` lies in the coadjoint centralizer of χ,
///   so no witness can exist anywhere in the algebra;
/// - `SearchExhausted` when the hypothesis holds yet no point in the given
///   set works (the set fails to span enough of the algebra).
pub fn find_witness_e(
    a: &Algebra,
    chi: &Functional,
    points: &[GVec],
    z: &GVec,
) -> Result<GVec> {
    for e in points {
        if chi.apply(&a.bracket(z, e)) != 0 {
            return Ok(e.clone());
        }
    }
    // No witness among the points; decide which failure this is.
    let n = a.dim();
    let centralizes = (0..n).all(|j| chi.apply(&a.bracket(z, &a.basis(j))) == 0);
    if centralizes {
        Err(LieError::HypothesisViolation(
            "z lies in the coadjoint centralizer of χ; no witness exists".into(),
        ))
    } else {
        Err(LieError::SearchExhausted(format!(
            "no witness among {} supplied points although χ([z, g]) ≠ 0",
            points.len()
        )))
    }
}
