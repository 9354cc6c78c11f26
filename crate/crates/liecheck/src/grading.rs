//! Integer gradings from cocharacters, root supports, unipotent support
//! clearing, and scaling limits.
//!
//! A cocharacter is given by an integral weight vector `w` in the ε-basis;
//! a root δ sits in degree `⟨δ, w⟩ = 2(δ,w)/(w,w)` and the Cartan in
//! degree 0.  Everything here is a finite, exact computation: gradings are
//! verified bracket-compatible on construction, support clearing logs the
//! exact unipotent conjugations used and replays them, and scaling limits
//! are plain polynomial bookkeeping in a formal parameter t.

use crate::algebra::{Algebra, GVec};
use crate::error::LieError;
use crate::roots::{RootKind, RootSystem};
use crate::Result;
use std::collections::BTreeMap;

/// A one-parameter torus given by an integral ε-weight vector.
#[derive(Clone, Debug)]
pub struct Cocharacter {
    w: Vec<i64>,
    /// Degree of each root under the cocharacter.
    weights: Vec<i64>,
}

impl Cocharacter {
    /// Validates that every root pairs integrally against `w`.
    pub fn new(rs: &RootSystem, w: Vec<i64>) -> Result<Cocharacter> {
        if w.len() != rs.ambient_dim() {
            return Err(LieError::DimensionMismatch {
                context: format!(
                    "cocharacter vector length {} vs ambient {}",
                    w.len(),
                    rs.ambient_dim()
                ),
            });
        }
        let norm: i64 = w.iter().map(|x| x * x).sum();
        let mut weights = Vec::with_capacity(rs.len());
        for r in 0..rs.len() {
            if norm == 0 {
                weights.push(0);
                continue;
            }
            let num: i64 = 2 * rs
                .root(r)
                .coords
                .iter()
                .zip(&w)
                .map(|(a, b)| a * b)
                .sum::<i64>();
            if num % norm != 0 {
                return Err(LieError::PreconditionViolated(format!(
                    "cocharacter weight not integral on root {}",
                    rs.root_string(r)
                )));
            }
            weights.push(num / norm);
        }
        Ok(Cocharacter { w, weights })
    }

    /// The cocharacter dual to a root (weight vector = its coordinates).
    pub fn from_root(rs: &RootSystem, root: usize) -> Cocharacter {
        Cocharacter::new(rs, rs.root(root).coords.clone())
            .expect("root pairings are always integral")
    }

    pub fn weight_vector(&self) -> &[i64] {
        &self.w
    }

    /// Degree of the root with the given index.
    pub fn weight(&self, root: usize) -> i64 {
        self.weights[root]
    }
}

/// A grading of the algebra into integer degrees.
pub struct Grading {
    /// Degree of each basis index (Cartan part in degree 0).
    degree_of_basis: Vec<i64>,
    /// Basis indices per degree.
    components: BTreeMap<i64, Vec<usize>>,
}

/// Grade the algebra by a cocharacter.  Bracket compatibility
/// `[g(i), g(j)] ⊆ g(i+j)` is verified on all basis pairs.
pub fn cochar_grading(a: &Algebra, c: &Cocharacter) -> Grading {
    let l = a.rank();
    let mut degree_of_basis = vec![0i64; a.dim()];
    for r in 0..a.num_roots() {
        degree_of_basis[a.e_index(r)] = c.weight(r);
    }
    let mut components: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &d) in degree_of_basis.iter().enumerate() {
        components.entry(d).or_default().push(k);
    }
    let g = Grading { degree_of_basis, components };
    // Verify compatibility on basis pairs.
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let br = a.bracket(&a.basis(i), &a.basis(j));
            let want = g.degree_of_basis[i] + g.degree_of_basis[j];
            for k in 0..a.dim() {
                assert!(
                    br.coeff(k) == 0 || g.degree_of_basis[k] == want,
                    "grading incompatible with bracket at ({i},{j})"
                );
            }
        }
    }
    let _ = l;
    g
}

impl Grading {
    /// Sorted list of degrees with nonempty component.
    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn component_basis(&self, i: i64) -> &[usize] {
        self.components.get(&i).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, i: i64) -> usize {
        self.component_basis(i).len()
    }

    pub fn degree_of_basis(&self, k: usize) -> i64 {
        self.degree_of_basis[k]
    }

    /// Projection of `x` onto g(i).
    pub fn project(&self, x: &GVec, i: i64) -> GVec {
        let mut out = x.clone();
        for k in 0..x.dim() {
            if self.degree_of_basis[k] != i {
                out.set_coeff(k, 0);
            }
        }
        out
    }
}

/// Decompose `x` into its nonzero graded components, ascending by degree.
pub fn grade_components(x: &GVec, g: &Grading) -> Vec<(i64, GVec)> {
    let mut out = Vec::new();
    for &d in g.components.keys() {
        let part = g.project(x, d);
        if !part.is_zero() {
            out.push((d, part));
        }
    }
    out
}

/// Root support of `x`: the roots with nonzero coefficient.  The Cartan
/// component is excluded by definition.
pub fn support(a: &Algebra, x: &GVec) -> Vec<usize> {
    (0..a.num_roots())
        .filter(|&r| x.coeff(a.e_index(r)) != 0)
        .collect()
}

/// Roots of the unipotent radical U₁: positive pairing against the highest
/// root.
pub fn u1_roots(rs: &RootSystem) -> Vec<usize> {
    let top = rs.highest_root();
    (0..rs.len()).filter(|&r| rs.pairing(r, top) > 0).collect()
}

/// Roots of the Levi L₁: pairing zero against the highest root.
pub fn l1_roots(rs: &RootSystem) -> Vec<usize> {
    let top = rs.highest_root();
    (0..rs.len()).filter(|&r| rs.pairing(r, top) == 0).collect()
}

/// One logged unipotent conjugation step.
pub type TransformLog = Vec<(usize, u64)>;

/// Replay a transform log against `z`.
pub fn replay(a: &Algebra, z: &GVec, log: &TransformLog) -> GVec {
    let mut cur = z.clone();
    for &(nu, t) in log {
        cur = a.adexp(nu, t, &cur);
    }
    cur
}

/// Conjugate `z` by products of root-subgroup elements on `unipotent_roots`
/// until its support avoids every root in `forbidden`.  Returns the exact
/// transform log and the cleared element.
///
/// Forbidden roots are processed in ascending pairing against the highest
/// root (then index order): the cancellation generator for a forbidden
/// root sits one level above it, so side effects land strictly higher and
/// never re-dirty completed levels.
///
/// # Errors
/// - `PreconditionViolated` for p = 2 (the cancellation equations divide
///   by structure constants that vanish there);
/// - `ClearSupportFailed` with the residual support when no single
///   conjugation clears a root without disturbing finished ones.
pub fn clear_support(
    a: &Algebra,
    z: &GVec,
    forbidden: &[usize],
    unipotent_roots: &[usize],
) -> Result<(TransformLog, GVec)> {
    let p = a.p().get();
    if p == 2 {
        return Err(LieError::PreconditionViolated(
            "support clearing requires p ≠ 2".into(),
        ));
    }
    let rs = a.rs();
    let top = rs.highest_root();
    let mut order: Vec<usize> = forbidden.to_vec();
    order.sort_by_key(|&r| (rs.pairing(r, top), r));
    order.dedup();

    let mut log: TransformLog = Vec::new();
    let mut cur = z.clone();
    let mut cleared: Vec<usize> = Vec::new();
    let max_passes = order.len() + 2;
    for _pass in 0..max_passes {
        let mut progress = false;
        for &mu in &order {
            if cur.coeff(a.e_index(mu)) == 0 {
                continue;
            }
            let mut done = false;
            'candidates: for &nu in unipotent_roots {
                for t in 1..p {
                    let cand = a.adexp(nu, t, &cur);
                    if cand.coeff(a.e_index(mu)) != 0 {
                        continue;
                    }
                    if cleared.iter().any(|&m| cand.coeff(a.e_index(m)) != 0) {
                        continue;
                    }
                    log.push((nu, t));
                    cur = cand;
                    done = true;
                    progress = true;
                    break 'candidates;
                }
            }
            if done {
                cleared.push(mu);
            }
        }
        let dirty: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&m| cur.coeff(a.e_index(m)) != 0)
            .collect();
        if dirty.is_empty() {
            debug_assert_eq!(replay(a, z, &log), cur);
            return Ok((log, cur));
        }
        if !progress {
            let residual = dirty
                .iter()
                .map(|&m| rs.root_string(m))
                .collect::<Vec<_>>()
                .join(" ");
            return Err(LieError::ClearSupportFailed { residual });
        }
    }
    let residual = order
        .iter()
        .filter(|&&m| cur.coeff(a.e_index(m)) != 0)
        .map(|&m| rs.root_string(m))
        .collect::<Vec<_>>()
        .join(" ");
    Err(LieError::ClearSupportFailed { residual })
}

/// Treat `t^normalization · (Ad c(t)) · z` as a polynomial in t and return
/// `(top degree, top coefficient)`.  Zero input yields `(normalization, 0)`.
pub fn scaled_limit(
    a: &Algebra,
    z: &GVec,
    c: &Cocharacter,
    normalization: i64,
) -> (i64, GVec) {
    let mut top: Option<(i64, GVec)> = None;
    // Cartan part has weight 0.
    let mut by_weight: BTreeMap<i64, GVec> = BTreeMap::new();
    for k in 0..z.dim() {
        if z.coeff(k) == 0 {
            continue;
        }
        let w = if k < a.rank() { 0 } else { c.weight(k - a.rank()) };
        let entry = by_weight.entry(w).or_insert_with(|| a.zero());
        entry.set_coeff(k, z.coeff(k));
    }
    if let Some((&w, part)) = by_weight.iter().next_back() {
        top = Some((w + normalization, part.clone()));
    }
    top.unwrap_or((normalization, a.zero()))
}

/// The three-dimensional Heisenberg triple in type C.
pub struct HeisenbergTriple {
    pub beta: usize,
    pub gamma: usize,
    pub lowest: usize,
    /// `[e_β, e_γ] = c · e_{-θ}` with c ≠ 0.
    pub c: u64,
}

/// Exhibit `span{e_β, e_γ, e_{-θ}}` as a Heisenberg algebra:
/// `[e_β, e_γ]` is a nonzero multiple of the central `e_{-θ}`.
///
/// # Errors
/// - `UnsupportedConfiguration` outside type C;
/// - `PreconditionViolated` at p = 2, where the defining bracket dies.
pub fn heisenberg_subalgebra(a: &Algebra) -> Result<HeisenbergTriple> {
    if a.rs().kind() != RootKind::C {
        return Err(LieError::UnsupportedConfiguration(format!(
            "Heisenberg triple defined for type C only, got {}{}",
            a.rs().kind(),
            a.rs().rank()
        )));
    }
    if a.p().get() == 2 {
        return Err(LieError::PreconditionViolated(
            "the Heisenberg bracket [e_β, e_γ] = ±2·e_{-θ} vanishes at p = 2".into(),
        ));
    }
    let rs = a.rs();
    let beta = rs.c_beta()?;
    let gamma = rs.c_gamma()?;
    let lowest = rs.neg(rs.c_alpha_tilde()?);
    let br = a.bracket(&a.e(beta), &a.e(gamma));
    let c = br.coeff(a.e_index(lowest));
    assert_ne!(c, 0, "central bracket unexpectedly zero");
    assert_eq!(br, a.e(lowest).scale(c), "bracket not a multiple of e_{{-θ}}");
    // Centrality of the commutator within the triple.
    assert!(a.bracket(&a.e(beta), &br).is_zero());
    assert!(a.bracket(&a.e(gamma), &br).is_zero());
    Ok(HeisenbergTriple { beta, gamma, lowest, c })
}
