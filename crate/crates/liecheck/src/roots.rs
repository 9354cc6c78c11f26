//! Reduced irreducible root systems in explicit integer coordinates.
//!
//! Each type is realized in a lattice where every root has integer
//! coordinates (types E and F use the standard realization scaled by 2 to
//! avoid half-integers; `G` lives in the sum-zero sublattice of Z^3).  All
//! pairings `2(a,b)/(b,b)` are computed from integer dot products, and the
//! global scaling cancels.
//!
//! Positive roots are generated by closure from the simple roots: every
//! positive root of height h+1 is (a positive root of height h) plus a
//! simple root.  The full list is positives ordered by (height,
//! lexicographic coords), followed by their negatives in the same order,
//! so index arithmetic gives negation.

use crate::error::LieError;
use crate::Result;
use std::collections::HashMap;

/// The Cartan–Killing type of a simple root system.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum RootKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootKind {
    pub fn from_char(c: char) -> Result<RootKind> {
        match c.to_ascii_uppercase() {
            'A' => Ok(RootKind::A),
            'B' => Ok(RootKind::B),
            'C' => Ok(RootKind::C),
            'D' => Ok(RootKind::D),
            'E' => Ok(RootKind::E),
            'F' => Ok(RootKind::F),
            'G' => Ok(RootKind::G),
            other => Err(LieError::Usage(format!("unknown root system type '{other}'"))),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            RootKind::A => 'A',
            RootKind::B => 'B',
            RootKind::C => 'C',
            RootKind::D => 'D',
            RootKind::E => 'E',
            RootKind::F => 'F',
            RootKind::G => 'G',
        }
    }
}

impl std::fmt::Display for RootKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One root: ambient integer coordinates plus its expansion in the simple
/// roots (whose signed sum is the height).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Root {
    pub coords: Vec<i64>,
    pub simple: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A complete root system with a fixed deterministic ordering.
pub struct RootSystem {
    kind: RootKind,
    rank: usize,
    ambient: usize,
    /// Positives in (height, lex) order, then negatives mirrored.
    roots: Vec<Root>,
    n_pos: usize,
    /// Indices (into `roots`) of the simple roots, in Dynkin order.
    simple_idx: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
}

/// Ambient coordinates of the simple roots for each supported type.
fn simple_roots(kind: RootKind, rank: usize) -> Result<Vec<Vec<i64>>> {
    let unsupported = || LieError::UnsupportedRootSystem { kind: kind.as_char(), rank };
    let mut s = Vec::new();
    match kind {
        RootKind::A => {
            if rank < 1 {
                return Err(unsupported());
            }
            for k in 0..rank {
                let mut v = vec![0i64; rank + 1];
                v[k] = 1;
                v[k + 1] = -1;
                s.push(v);
            }
        }
        RootKind::B | RootKind::C | RootKind::D => {
            let min = if kind == RootKind::D { 4 } else { 2 };
            if rank < min {
                return Err(unsupported());
            }
            for k in 0..rank - 1 {
                let mut v = vec![0i64; rank];
                v[k] = 1;
                v[k + 1] = -1;
                s.push(v);
            }
            let mut last = vec![0i64; rank];
            match kind {
                RootKind::B => last[rank - 1] = 1,
                RootKind::C => last[rank - 1] = 2,
                RootKind::D => {
                    last[rank - 2] = 1;
                    last[rank - 1] = 1;
                }
                _ => unreachable!(),
            }
            s.push(last);
        }
        RootKind::G => {
            if rank != 2 {
                return Err(unsupported());
            }
            s.push(vec![1, -1, 0]);
            s.push(vec![-2, 1, 1]);
        }
        RootKind::F => {
            if rank != 4 {
                return Err(unsupported());
            }
            s.push(vec![0, 2, -2, 0]);
            s.push(vec![0, 0, 2, -2]);
            s.push(vec![0, 0, 0, 2]);
            s.push(vec![1, -1, -1, -1]);
        }
        RootKind::E => {
            if !(6..=8).contains(&rank) {
                return Err(unsupported());
            }
            let all: [[i64; 8]; 8] = [
                [1, -1, -1, -1, -1, -1, -1, 1],
                [2, 2, 0, 0, 0, 0, 0, 0],
                [-2, 2, 0, 0, 0, 0, 0, 0],
                [0, -2, 2, 0, 0, 0, 0, 0],
                [0, 0, -2, 2, 0, 0, 0, 0],
                [0, 0, 0, -2, 2, 0, 0, 0],
                [0, 0, 0, 0, -2, 2, 0, 0],
                [0, 0, 0, 0, 0, -2, 2, 0],
            ];
            for row in all.iter().take(rank) {
                s.push(row.to_vec());
            }
        }
    }
    Ok(s)
}

/// Membership test for the ambient realization of each type (vectors not in
/// the span of the simple roots never arise from the closure process).
fn is_root_coords(kind: RootKind, v: &[i64]) -> bool {
    let norm = dot(v, v);
    let nonzero = v.iter().filter(|&&x| x != 0).count();
    match kind {
        RootKind::A => norm == 2 && nonzero == 2 && v.iter().sum::<i64>() == 0,
        RootKind::B => (norm == 2 && nonzero == 2) || (norm == 1 && nonzero == 1),
        RootKind::C => {
            (norm == 2 && nonzero == 2) || (norm == 4 && nonzero == 1 && v.iter().all(|&x| x.abs() != 1))
        }
        RootKind::D => norm == 2 && nonzero == 2,
        RootKind::G => {
            v.iter().sum::<i64>() == 0 && (norm == 2 || norm == 6) && v.iter().all(|&x| x.abs() <= 2)
        }
        RootKind::F => {
            let all_even = v.iter().all(|&x| x % 2 == 0);
            let all_odd = v.iter().all(|&x| x.abs() == 1);
            (all_even && norm == 8 && nonzero == 2)
                || (all_even && norm == 4 && nonzero == 1)
                || (all_odd && norm == 4)
        }
        RootKind::E => {
            let all_even = v.iter().all(|&x| x % 2 == 0);
            let all_unit = v.iter().all(|&x| x.abs() == 1);
            (all_even && norm == 8 && nonzero == 2)
                || (all_unit && norm == 8 && v.iter().filter(|&&x| x < 0).count() % 2 == 0)
        }
    }
}

/// Construct the root system of the given type and rank.
///
/// # Errors
/// `UnsupportedRootSystem` for ranks outside the classification
/// (A: l ≥ 1, B/C: l ≥ 2, D: l ≥ 4, E: 6–8, F: 4, G: 2).
pub fn build_root_system(kind: RootKind, rank: usize) -> Result<RootSystem> {
    let simples = simple_roots(kind, rank)?;
    let ambient = simples[0].len();

    // Closure: grow positives level by level.
    let mut pos: Vec<Root> = simples
        .iter()
        .enumerate()
        .map(|(k, coords)| {
            let mut simple = vec![0i64; rank];
            simple[k] = 1;
            Root { coords: coords.clone(), simple }
        })
        .collect();
    let mut seen: HashMap<Vec<i64>, usize> = pos
        .iter()
        .enumerate()
        .map(|(i, r)| (r.coords.clone(), i))
        .collect();
    let mut frontier: Vec<usize> = (0..pos.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &ri in &frontier {
            for (k, srt) in simples.iter().enumerate() {
                let cand: Vec<i64> = pos[ri]
                    .coords
                    .iter()
                    .zip(srt)
                    .map(|(a, b)| a + b)
                    .collect();
                if seen.contains_key(&cand) || !is_root_coords(kind, &cand) {
                    continue;
                }
                let mut simple = pos[ri].simple.clone();
                simple[k] += 1;
                let idx = pos.len();
                seen.insert(cand.clone(), idx);
                pos.push(Root { coords: cand, simple });
                next.push(idx);
            }
        }
        frontier = next;
    }

    pos.sort_by(|a, b| (a.height(), &a.coords).cmp(&(b.height(), &b.coords)));
    let n_pos = pos.len();
    let mut roots = pos;
    for i in 0..n_pos {
        let coords: Vec<i64> = roots[i].coords.iter().map(|&x| -x).collect();
        let simple: Vec<i64> = roots[i].simple.iter().map(|&x| -x).collect();
        roots.push(Root { coords, simple });
    }
    let index: HashMap<Vec<i64>, usize> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.coords.clone(), i))
        .collect();
    let simple_idx: Vec<usize> = simples.iter().map(|s| index[s]).collect();
    Ok(RootSystem { kind, rank, ambient, roots, n_pos, simple_idx, index })
}

impl RootSystem {
    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Number of positive roots.
    pub fn num_pos(&self) -> usize {
        self.n_pos
    }

    /// Total number of roots (2 · num_pos).
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    /// Index of the k-th simple root (Dynkin numbering, 0-based).
    pub fn simple_index(&self, k: usize) -> usize {
        self.simple_idx[k]
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Index of the negative of root `i`.
    pub fn neg(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Index of `roots[i] + roots[j]` if that sum is again a root.
    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        let coords: Vec<i64> = self.roots[i]
            .coords
            .iter()
            .zip(&self.roots[j].coords)
            .map(|(a, b)| a + b)
            .collect();
        self.index_of(&coords)
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].height()
    }

    pub fn dot(&self, i: usize, j: usize) -> i64 {
        dot(&self.roots[i].coords, &self.roots[j].coords)
    }

    pub fn norm(&self, i: usize) -> i64 {
        self.dot(i, i)
    }

    /// Cartan pairing `⟨r_i, r_j^∨⟩ = 2 (r_i, r_j) / (r_j, r_j)`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        let num = 2 * self.dot(i, j);
        let den = self.norm(j);
        debug_assert_eq!(num % den, 0, "pairing not integral");
        num / den
    }

    /// Pairing of an arbitrary ambient vector against a coroot.
    pub fn pairing_coords(&self, v: &[i64], j: usize) -> Option<i64> {
        let num = 2 * dot(v, &self.roots[j].coords);
        let den = self.norm(j);
        if num % den != 0 {
            return None;
        }
        Some(num / den)
    }

    fn max_norm(&self) -> i64 {
        (0..self.n_pos).map(|i| self.norm(i)).max().unwrap()
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.norm(i) == self.max_norm()
    }

    /// "long" or "short"; simply-laced systems have a single class, "long".
    pub fn class_name(&self, i: usize) -> &'static str {
        if self.is_long(i) {
            "long"
        } else {
            "short"
        }
    }

    /// The highest root (unique positive root of maximal height).
    pub fn highest_root(&self) -> usize {
        self.n_pos - 1
    }

    /// The Cartan matrix `⟨α_i, α_j^∨⟩` over the simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.pairing(self.simple_idx[i], self.simple_idx[j]))
                    .collect()
            })
            .collect()
    }

    /// Largest k with `roots[b] - k·roots[a]` still a root (the down-string
    /// length used in structure-constant magnitudes).
    pub fn chain_down(&self, a: usize, b: usize) -> i64 {
        let mut k = 0;
        let mut cur: Vec<i64> = self.roots[b].coords.clone();
        loop {
            for (x, y) in cur.iter_mut().zip(&self.roots[a].coords) {
                *x -= y;
            }
            if self.index_of(&cur).is_none() {
                return k;
            }
            k += 1;
        }
    }

    pub fn root_string(&self, i: usize) -> String {
        let inner: Vec<String> = self.roots[i].coords.iter().map(|c| c.to_string()).collect();
        format!("({})", inner.join(","))
    }

    /// Text table: one root per line — coordinates, length class, height.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            out.push_str(&format!(
                "{} {} {}\n",
                self.root_string(i),
                self.class_name(i),
                self.height(i)
            ));
        }
        out
    }

    fn require_type_c(&self) -> Result<()> {
        if self.kind != RootKind::C {
            return Err(LieError::UnsupportedConfiguration(format!(
                "operation defined for type C only, got {}{}",
                self.kind, self.rank
            )));
        }
        Ok(())
    }

    /// Type C: the highest root `2ε₁`.
    pub fn c_alpha_tilde(&self) -> Result<usize> {
        self.require_type_c()?;
        Ok(self.highest_root())
    }

    /// Type C: the root `ε₂ - ε₁` (negative of the first simple root).
    pub fn c_beta(&self) -> Result<usize> {
        self.require_type_c()?;
        let mut v = vec![0i64; self.rank];
        v[0] = -1;
        v[1] = 1;
        Ok(self.index_of(&v).expect("root of C_l"))
    }

    /// Type C: the short negative root `-ε₁ - ε₂`.
    pub fn c_gamma(&self) -> Result<usize> {
        self.require_type_c()?;
        let mut v = vec![0i64; self.rank];
        v[0] = -1;
        v[1] = -1;
        Ok(self.index_of(&v).expect("root of C_l"))
    }

    /// Type C: the long negative root `-2ε₂`.
    pub fn c_minus_two_eps2(&self) -> Result<usize> {
        self.require_type_c()?;
        let mut v = vec![0i64; self.rank];
        v[1] = -2;
        Ok(self.index_of(&v).expect("root of C_l"))
    }

    /// Type C: the distinguished set
    /// `{-2ε₂, ε₁-ε₂} ∪ {-ε₂ ± ε_j : 3 ≤ j ≤ l}` of size `2l - 2`,
    /// returned in list order.
    pub fn special_set_r2_minus(&self) -> Result<Vec<usize>> {
        self.require_type_c()?;
        let l = self.rank;
        let mut coord_list: Vec<Vec<i64>> = Vec::new();
        let mut v = vec![0i64; l];
        v[1] = -2;
        coord_list.push(v);
        let mut v = vec![0i64; l];
        v[0] = 1;
        v[1] = -1;
        coord_list.push(v);
        for j in 2..l {
            for s in [1i64, -1] {
                let mut v = vec![0i64; l];
                v[1] = -1;
                v[j] = s;
                coord_list.push(v);
            }
        }
        let mut idx: Vec<usize> = coord_list
            .iter()
            .map(|c| self.index_of(c).expect("root of C_l"))
            .collect();
        idx.sort_unstable();
        Ok(idx)
    }

    /// The lowest-numbered simple root not orthogonal to the highest root.
    pub fn first_simple_nonorthogonal_to_highest(&self) -> usize {
        let top = self.highest_root();
        for &s in &self.simple_idx {
            if self.dot(s, top) != 0 {
                return s;
            }
        }
        unreachable!("highest root orthogonal to every simple root")
    }
}
