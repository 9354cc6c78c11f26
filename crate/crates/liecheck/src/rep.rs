//! Modules with a p-character: baby Verma modules built by PBW
//! straightening, the Jordan-type freeness test, support-point tests,
//! restricted nullcone enumeration, and the verifier for the inclusion of
//! support points in the nullcone centralizer of the character.
//!
//! A module with p-character χ carries, for every x in the algebra, the
//! relation ρ(x)^p − ρ(x^\[p\]) = χ(x)^p·id.  Every `Rep` constructed or
//! loaded here has that relation and bracket compatibility re-verified on
//! the full basis — the defining property is never assumed.

use crate::algebra::{Algebra, GVec};
use crate::cone::ConePoints;
use crate::error::LieError;
use crate::forms::{build_form, Functional};
use crate::fp::{add_m, mul_m, pow_m, red_i64, FpMatrix, Prime};
use crate::roots::RootKind;
use crate::Result;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Hard cap on constructed module dimension.  p^{|R₊|} grows fast; the
/// desk-scale checks only ever need the rank-1 and rank-2 carriers.
pub const VERMA_DIM_BUDGET: usize = 1000;

/// A finite-dimensional module with p-character χ, stored as one action
/// matrix per algebra basis element.
pub struct Rep {
    kind: RootKind,
    rank: usize,
    p: Prime,
    dim: usize,
    chi: Functional,
    action: Vec<FpMatrix>,
}

impl Rep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn chi(&self) -> &Functional {
        &self.chi
    }

    /// Action matrix of the k-th algebra basis element.
    pub fn action(&self, k: usize) -> &FpMatrix {
        &self.action[k]
    }

    /// Action matrix of an arbitrary element.
    pub fn matrix_of(&self, x: &GVec) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.dim, self.dim);
        for (k, &c) in x.coeffs().iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[k].scale(c)).expect("same shape");
            }
        }
        out
    }

    /// Assemble a `Rep` from explicit matrices, re-verifying bracket
    /// compatibility and the p-character relation on the whole basis.
    pub fn from_parts(
        a: &Algebra,
        chi: Functional,
        action: Vec<FpMatrix>,
    ) -> Result<Rep> {
        if action.len() != a.dim() {
            return Err(LieError::DimensionMismatch {
                context: format!(
                    "expected {} action matrices, got {}",
                    a.dim(),
                    action.len()
                ),
            });
        }
        let dim = action[0].rows();
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(LieError::DimensionMismatch {
                    context: "action matrices must be square of equal size".into(),
                });
            }
        }
        let rep = Rep {
            kind: a.rs().kind(),
            rank: a.rank(),
            p: a.p(),
            dim,
            chi,
            action,
        };
        rep.verify(a)?;
        Ok(rep)
    }

    /// Bracket compatibility and the p-character relation on every basis
    /// element or pair.
    fn verify(&self, a: &Algebra) -> Result<()> {
        let n = a.dim();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let bracket_ok = pairs.par_iter().all(|&(i, j)| {
            let lhs = self.matrix_of(&a.bracket(&a.basis(i), &a.basis(j)));
            let ij = self.action[i].mul(&self.action[j]).expect("shape");
            let ji = self.action[j].mul(&self.action[i]).expect("shape");
            lhs == ij.sub(&ji).expect("shape")
        });
        if !bracket_ok {
            return Err(LieError::PreconditionViolated(
                "action does not respect the bracket".into(),
            ));
        }
        let p = self.p.get();
        let char_ok: Result<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|k| {
                let xp = a.p_power(&a.basis(k))?;
                let lhs = self
                    .action[k]
                    .pow(p)
                    .expect("square")
                    .sub(&self.matrix_of(&xp))
                    .expect("shape");
                let c = pow_m(self.chi.apply(&a.basis(k)), p, p);
                let rhs = FpMatrix::identity(self.p, self.dim).scale(c);
                Ok(lhs == rhs)
            })
            .collect();
        if !char_ok?.into_iter().all(|b| b) {
            return Err(LieError::PreconditionViolated(
                "p-character relation fails on a basis element".into(),
            ));
        }
        Ok(())
    }

    /// Serialize in the plain text exchange format.
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "liecheck rep v1").unwrap();
        writeln!(
            out,
            "kind {} rank {} p {} dim {}",
            self.kind,
            self.rank,
            self.p.get(),
            self.dim
        )
        .unwrap();
        let chi: Vec<String> = self.chi.covector().iter().map(|c| c.to_string()).collect();
        writeln!(out, "chi {}", chi.join(" ")).unwrap();
        for (k, m) in self.action.iter().enumerate() {
            writeln!(out, "matrix {k}").unwrap();
            for r in 0..self.dim {
                let row: Vec<String> =
                    (0..self.dim).map(|c| m.get(r, c).to_string()).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
        out
    }

    /// Parse the text exchange format and re-verify all module invariants
    /// against a freshly constructed algebra.
    pub fn load_text(text: &str) -> Result<(Algebra, Rep)> {
        let bad = |m: &str| LieError::Io(format!("rep parse: {m}"));
        let mut lines = text.lines();
        if lines.next() != Some("liecheck rep v1") {
            return Err(bad("missing header"));
        }
        let meta = lines.next().ok_or_else(|| bad("missing metadata"))?;
        let parts: Vec<&str> = meta.split_whitespace().collect();
        if parts.len() != 8 || parts[0] != "kind" || parts[2] != "rank" || parts[4] != "p"
            || parts[6] != "dim"
        {
            return Err(bad("malformed metadata"));
        }
        let kind = RootKind::from_char(
            parts[1].chars().next().ok_or_else(|| bad("empty kind"))?,
        )?;
        let rank: usize = parts[3].parse().map_err(|_| bad("bad rank"))?;
        let p: u64 = parts[5].parse().map_err(|_| bad("bad p"))?;
        let dim: usize = parts[7].parse().map_err(|_| bad("bad dim"))?;
        let prime = Prime::new(p)?;
        let a = crate::algebra::build_algebra(kind, rank, prime)?;
        let chi_line = lines.next().ok_or_else(|| bad("missing chi"))?;
        let chi_parts: Vec<&str> = chi_line.split_whitespace().collect();
        if chi_parts.first() != Some(&"chi") || chi_parts.len() != a.dim() + 1 {
            return Err(bad("malformed chi line"));
        }
        let cov: Vec<u64> = chi_parts[1..]
            .iter()
            .map(|s| s.parse().map_err(|_| bad("bad chi entry")))
            .collect::<Result<_>>()?;
        let chi = Functional::from_covector(prime, cov);
        let mut action = Vec::with_capacity(a.dim());
        for k in 0..a.dim() {
            let head = lines.next().ok_or_else(|| bad("missing matrix header"))?;
            if head != format!("matrix {k}") {
                return Err(bad("matrix header out of order"));
            }
            let mut m = FpMatrix::zero(prime, dim, dim);
            for r in 0..dim {
                let row = lines.next().ok_or_else(|| bad("missing matrix row"))?;
                let vals: Vec<u64> = row
                    .split_whitespace()
                    .map(|s| s.parse().map_err(|_| bad("bad matrix entry")))
                    .collect::<Result<_>>()?;
                if vals.len() != dim {
                    return Err(bad("matrix row length"));
                }
                for (c, &v) in vals.iter().enumerate() {
                    m.set(r, c, v);
                }
            }
            action.push(m);
        }
        let rep = Rep::from_parts(&a, chi, action)?;
        Ok((a, rep))
    }
}

/// PBW straightening state for the baby Verma construction.
struct VermaBuilder<'a> {
    a: &'a Algebra,
    chi: &'a Functional,
    lambda: Vec<u64>,
    p: u64,
    n_pos: usize,
    stride: Vec<usize>,
    /// Memoised sparse action per (algebra basis element, monomial).
    memo: Vec<HashMap<usize, Vec<(usize, u64)>>>,
}

impl<'a> VermaBuilder<'a> {
    fn exponent(&self, mono: usize, j: usize) -> usize {
        (mono / self.stride[j]) % self.p as usize
    }

    fn first_nonzero(&self, mono: usize) -> Option<usize> {
        let mut m = mono;
        let p = self.p as usize;
        for j in 0..self.n_pos {
            if m % p != 0 {
                return Some(j);
            }
            m /= p;
        }
        None
    }

    /// Action of the k-th algebra basis element on the monomial, as a
    /// sparse module vector.
    fn act(&mut self, k: usize, mono: usize) -> Vec<(usize, u64)> {
        if let Some(v) = self.memo[k].get(&mono) {
            return v.clone();
        }
        let out = self.act_uncached(k, mono);
        self.memo[k].insert(mono, out.clone());
        out
    }

    fn act_uncached(&mut self, k: usize, mono: usize) -> Vec<(usize, u64)> {
        let rank = self.a.rank();
        let rs = self.a.rs();
        if k < rank {
            // Cartan element: diagonal with weight λ(h) shifted by the
            // exponents' root weights.
            let mut w: i64 = self.lambda[k] as i64;
            for j in 0..self.n_pos {
                let e = self.exponent(mono, j) as i64;
                if e != 0 {
                    w += e * rs.pairing(self.n_pos + j, rs.simple_index(k));
                }
            }
            let c = red_i64(w, self.p);
            return if c == 0 { vec![] } else { vec![(mono, c)] };
        }
        let r = k - rank;
        let first = self.first_nonzero(mono);
        if r >= self.n_pos {
            // Negative root vector at position t in the PBW order.
            let t = r - self.n_pos;
            match first {
                Some(j) if j < t => self.commute(k, j, mono),
                _ => {
                    let e_t = self.exponent(mono, t);
                    if e_t + 1 < self.p as usize {
                        vec![(mono + self.stride[t], 1)]
                    } else {
                        // f^p acts as the scalar χ(f)^p.
                        let c = pow_m(self.chi.apply(&self.a.e(r)), self.p, self.p);
                        let wrapped = mono - (self.p as usize - 1) * self.stride[t];
                        if c == 0 { vec![] } else { vec![(wrapped, c)] }
                    }
                }
            }
        } else {
            // Positive root vector: kills the highest-weight line.
            match first {
                None => vec![],
                Some(j) => self.commute(k, j, mono),
            }
        }
    }

    /// Straightening step x·(f_j·Y) = f_j·(x·Y) + [x, f_j]·Y where f_j is
    /// the leftmost factor of the monomial.
    fn commute(&mut self, k: usize, j: usize, mono: usize) -> Vec<(usize, u64)> {
        let rest = mono - self.stride[j];
        let f_j_basis = self.a.e_index(self.n_pos + j);
        let inner = self.act(k, rest);
        let mut acc: HashMap<usize, u64> = HashMap::new();
        for &(m2, c2) in &inner {
            for (m3, c3) in self.act(f_j_basis, m2) {
                let e = acc.entry(m3).or_insert(0);
                *e = add_m(*e, mul_m(c2, c3, self.p), self.p);
            }
        }
        let br = self.a.bracket(&self.a.basis(k), &self.a.basis(f_j_basis));
        for (bk, &bc) in br.coeffs().to_vec().iter().enumerate() {
            if bc == 0 {
                continue;
            }
            for (m3, c3) in self.act(bk, rest) {
                let e = acc.entry(m3).or_insert(0);
                *e = add_m(*e, mul_m(bc, c3, self.p), self.p);
            }
        }
        let mut out: Vec<(usize, u64)> =
            acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        out
    }
}

/// Build the baby Verma module: PBW basis ∏ f_β^{a_β} over the negative
/// roots in root order, highest-weight line of weight λ, dimension
/// p^{|R₊|}.
///
/// # Errors
/// - `PreconditionViolated` if χ does not vanish on the Cartan and the
///   positive root vectors, or if λ(h)^p ≠ λ(h^\[p\]) for some Cartan basis
///   element;
/// - `BudgetExceeded` if p^{|R₊|} exceeds the module dimension budget.
pub fn baby_verma(a: &Algebra, chi: &Functional, lambda: &[u64]) -> Result<Rep> {
    let p = a.p().get();
    let rs = a.rs();
    let n_pos = rs.num_pos();
    for i in 0..a.rank() {
        if chi.apply(&a.h(i)) != 0 {
            return Err(LieError::PreconditionViolated(
                "χ must vanish on the Cartan subalgebra".into(),
            ));
        }
    }
    for r in 0..n_pos {
        if chi.apply(&a.e(r)) != 0 {
            return Err(LieError::PreconditionViolated(
                "χ must vanish on the positive root vectors".into(),
            ));
        }
    }
    if lambda.len() != a.rank() {
        return Err(LieError::DimensionMismatch {
            context: format!("λ must have {} entries", a.rank()),
        });
    }
    let lambda: Vec<u64> = lambda.iter().map(|&v| v % p).collect();
    for (i, &li) in lambda.iter().enumerate() {
        let hp = a.p_power(&a.h(i))?;
        let mut rhs = 0u64;
        for k in 0..a.rank() {
            rhs = add_m(rhs, mul_m(hp.coeff(k), lambda[k], p), p);
        }
        assert!(
            (a.rank()..a.dim()).all(|k| hp.coeff(k) == 0),
            "p-power of a Cartan element left the Cartan"
        );
        if pow_m(li, p, p) != rhs {
            return Err(LieError::PreconditionViolated(format!(
                "λ(h_{i})^p ≠ λ(h_{i}^[p])"
            )));
        }
    }
    let mut dim = 1usize;
    let mut stride = Vec::with_capacity(n_pos);
    for _ in 0..n_pos {
        stride.push(dim);
        dim = dim
            .checked_mul(p as usize)
            .filter(|&d| d <= VERMA_DIM_BUDGET)
            .ok_or(LieError::BudgetExceeded {
                context: "baby Verma dimension p^|R₊|".into(),
                budget: VERMA_DIM_BUDGET as u64,
            })?;
    }
    let mut b = VermaBuilder {
        a,
        chi,
        lambda,
        p,
        n_pos,
        stride,
        memo: vec![HashMap::new(); a.dim()],
    };
    let mut action = Vec::with_capacity(a.dim());
    for k in 0..a.dim() {
        let mut m = FpMatrix::zero(a.p(), dim, dim);
        for col in 0..dim {
            for (row, c) in b.act(k, col) {
                m.set(row, col, c);
            }
        }
        action.push(m);
    }
    Rep::from_parts(a, chi.clone(), action)
}

/// Jordan block profile of ρ(z) − χ(z)·id: entry k−1 counts the blocks of
/// size exactly k, for k = 1..p.
pub fn jordan_profile(a: &Algebra, m: &Rep, z: &GVec) -> Result<Vec<usize>> {
    require_nil(a, z)?;
    let p = a.p().get() as usize;
    let n = nil_part(m, z);
    // rank(N^k) for k = 0..p+1; N^p = 0 since ρ(z)^p = χ(z)^p·id.
    let mut ranks = Vec::with_capacity(p + 2);
    let mut pw = FpMatrix::identity(m.p, m.dim);
    for _ in 0..=p {
        ranks.push(pw.rank());
        pw = pw.mul(&n).expect("square");
    }
    ranks.push(pw.rank());
    let mut profile = vec![0usize; p];
    for k in 1..=p {
        let ge_k = ranks[k - 1] - ranks[k];
        let ge_k1 = ranks[k] - ranks[k + 1];
        profile[k - 1] = ge_k - ge_k1;
    }
    Ok(profile)
}

fn nil_part(m: &Rep, z: &GVec) -> FpMatrix {
    let c = m.chi.apply(z);
    m.matrix_of(z)
        .sub(&FpMatrix::identity(m.p, m.dim).scale(c))
        .expect("shape")
}

fn require_nil(a: &Algebra, z: &GVec) -> Result<()> {
    if !a.p_power(z)?.is_zero() {
        return Err(LieError::PreconditionViolated(
            "freeness tests require z^[p] = 0".into(),
        ));
    }
    Ok(())
}

/// Freeness of the module over the one-generator subalgebra of z: all
/// Jordan blocks of ρ(z) at eigenvalue χ(z) have size exactly p, i.e.
/// p | dim and rank((ρ(z) − χ(z)·id)^{p−1}) = dim/p.
///
/// # Errors
/// `PreconditionViolated` when z is not in the restricted nullcone.
pub fn freeness_test(a: &Algebra, m: &Rep, z: &GVec) -> Result<bool> {
    require_nil(a, z)?;
    let p = a.p().get();
    if m.dim % p as usize != 0 {
        return Ok(false);
    }
    let n = nil_part(m, z);
    Ok(n.pow(p - 1).expect("square").rank() == m.dim / p as usize)
}

/// Whether z is a support point of the module: in the restricted nullcone
/// and not free.  Points outside the nullcone are never support points.
pub fn support_point(a: &Algebra, m: &Rep, z: &GVec) -> Result<bool> {
    if !a.p_power(z)?.is_zero() {
        return Ok(false);
    }
    Ok(!freeness_test(a, m, z)?)
}

/// Points of the restricted nullcone: z with z^\[p\] = 0.
pub struct NullconePoints {
    pub points: Vec<GVec>,
    /// Whether this is the full nullcone or a seeded sample.
    pub exhaustive: bool,
}

/// Full scan of the field points for z^\[p\] = 0.  The whole space has
/// p^{dim} candidates; beyond `budget` use `nullcone_sample` instead.
pub fn nullcone_enumerate(a: &Algebra, budget: usize) -> Result<NullconePoints> {
    let p = a.p().get();
    let total = (p as u128).checked_pow(a.dim() as u32);
    match total {
        Some(t) if t <= budget as u128 => {}
        _ => {
            return Err(LieError::BudgetExceeded {
                context: "nullcone enumeration space p^dim".into(),
                budget: budget as u64,
            })
        }
    }
    let total = total.unwrap() as usize;
    let points: Result<Vec<Option<GVec>>> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut c = vec![0u64; a.dim()];
            let mut n = idx;
            for slot in c.iter_mut() {
                *slot = (n % p as usize) as u64;
                n /= p as usize;
            }
            let z = GVec::new(a.p(), c);
            Ok(if a.p_power(&z)?.is_zero() { Some(z) } else { None })
        })
        .collect();
    let points: Vec<GVec> = points?.into_iter().flatten().collect();
    Ok(NullconePoints { points, exhaustive: true })
}

/// Seeded sample of nullcone points: uniform draws filtered by
/// z^\[p\] = 0, reproducible for a fixed seed.
pub fn nullcone_sample(a: &Algebra, seed: u64, count: usize) -> Result<NullconePoints> {
    let p = a.p().get();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    let max_attempts = 500 * count + 1000;
    for _ in 0..max_attempts {
        if points.len() >= count {
            break;
        }
        let c: Vec<u64> = (0..a.dim()).map(|_| rng.gen_range(0..p)).collect();
        let z = GVec::new(a.p(), c);
        if a.p_power(&z)?.is_zero() {
            points.push(z);
        }
    }
    if points.len() < count {
        return Err(LieError::SearchExhausted(format!(
            "only {} nullcone points found in {} draws",
            points.len(),
            max_attempts
        )));
    }
    Ok(NullconePoints { points, exhaustive: false })
}

/// Outcome of the main inclusion check over a nullcone set.
pub struct InclusionReport {
    pub candidates: usize,
    pub support_points: usize,
    /// Support points z with χ([z, g]) ≠ 0, encoded as coefficient lists.
    pub counterexamples: Vec<String>,
    pub pass: bool,
}

/// For every support point z of the module among the given nullcone
/// points, check χ([z, g]) = 0 — i.e. every support point centralizes the
/// character.  Counterexamples are reported verbatim.
pub fn theorem11_check(a: &Algebra, m: &Rep, z_set: &NullconePoints) -> Result<InclusionReport> {
    let results: Result<Vec<(bool, Option<String>)>> = z_set
        .points
        .par_iter()
        .map(|z| {
            if !support_point(a, m, z)? {
                return Ok((false, None));
            }
            let centralizes = (0..a.dim())
                .all(|k| m.chi.apply(&a.bracket(z, &a.basis(k))) == 0);
            let witness = if centralizes {
                None
            } else {
                Some(format!("{:?}", z.coeffs()))
            };
            Ok((true, witness))
        })
        .collect();
    let results = results?;
    let support_points = results.iter().filter(|(s, _)| *s).count();
    let counterexamples: Vec<String> =
        results.into_iter().filter_map(|(_, w)| w).collect();
    Ok(InclusionReport {
        candidates: z_set.points.len(),
        support_points,
        pass: counterexamples.is_empty(),
        counterexamples,
    })
}

/// Outcome of the invertibility-forces-freeness check.
pub struct InvertibilityReport {
    pub applicable: bool,
    pub note: String,
    pub profile: Vec<usize>,
    pub pass: bool,
}

/// If h = [u, z] is central in the triple (u, z, h) and acts invertibly on
/// the module, the module must be free over the subalgebra of z.  A failed
/// hypothesis is reported as not applicable, not as failure.
pub fn invertibility_implies_freeness_check(
    a: &Algebra,
    m: &Rep,
    u: &GVec,
    z: &GVec,
) -> Result<InvertibilityReport> {
    let na = |note: &str| InvertibilityReport {
        applicable: false,
        note: note.into(),
        profile: vec![],
        pass: true,
    };
    let h = a.bracket(u, z);
    if h.is_zero() {
        return Ok(na("the commutator [u, z] vanishes"));
    }
    if !a.bracket(u, &h).is_zero() || !a.bracket(z, &h).is_zero() {
        return Ok(na("the commutator [u, z] is not central in the triple"));
    }
    if m.matrix_of(&h).inverse().is_err() {
        return Ok(na("the commutator [u, z] acts non-invertibly"));
    }
    if !a.p_power(z)?.is_zero() {
        return Ok(na("z is not in the restricted nullcone"));
    }
    let pass = freeness_test(a, m, z)?;
    let profile = jordan_profile(a, m, z)?;
    Ok(InvertibilityReport {
        applicable: true,
        note: "invertible central commutator".into(),
        profile,
        pass,
    })
}

/// Outcome of the sole-eigenvalue check.
pub struct EigenvalueReport {
    pub chi_value: u64,
    pub pass: bool,
}

/// For nilpotent z the only eigenvalue of ρ(z) is χ(z): verified by
/// (ρ(z) − χ(z)·id)^{dim} = 0.
pub fn eigenvalue_check(a: &Algebra, m: &Rep, z: &GVec) -> Result<EigenvalueReport> {
    require_nil(a, z)?;
    let n = nil_part(m, z);
    let pass = n.pow(m.dim as u64).expect("square").is_zero();
    Ok(EigenvalueReport { chi_value: m.chi.apply(z), pass })
}

/// Outcome of the characteristic-two identity suite.
pub struct P2Report {
    pub cone_points: usize,
    pub nullcone_points: usize,
    pub pair_checks: usize,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// At p = 2 in type C: every long-root element e′ has (ad e′)² = 0, and
/// for nullcone z the commutator satisfies \[z,e′\]^\[2\] = ⟨z,e′⟩·\[z,e′\].
pub fn p2_identity_check(
    a: &Algebra,
    z_set: &NullconePoints,
    cone: &ConePoints,
) -> Result<P2Report> {
    if a.p().get() != 2 || a.rs().kind() != RootKind::C {
        return Err(LieError::PreconditionViolated(
            "the identity suite is specific to type C at p = 2".into(),
        ));
    }
    let form = build_form(a);
    let mut violations = Vec::new();
    for e in cone.points() {
        let ad = a.ad(e);
        if !ad.mul(&ad).expect("square").is_zero() {
            violations.push(format!("(ad e')² ≠ 0 at {:?}", e.coeffs()));
        }
    }
    let mut pair_checks = 0usize;
    let pair_violations: Result<Vec<Option<String>>> = z_set
        .points
        .par_iter()
        .map(|z| {
            for e in cone.points() {
                let w = a.bracket(z, e);
                let lhs = a.p_power(&w)?;
                let rhs = w.scale(form.value(z, e));
                if lhs != rhs {
                    return Ok(Some(format!(
                        "p-power identity fails at z={:?} e'={:?}",
                        z.coeffs(),
                        e.coeffs()
                    )));
                }
            }
            Ok(None)
        })
        .collect();
    for v in pair_violations? {
        pair_checks += cone.points().len();
        if let Some(v) = v {
            violations.push(v);
        }
    }
    Ok(P2Report {
        cone_points: cone.points().len(),
        nullcone_points: z_set.points.len(),
        pair_checks,
        pass: violations.is_empty(),
        violations,
    })
}
