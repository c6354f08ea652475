//! Tambara–Yamagami data over the Klein four-group: bicharacter checks, the
//! pentagon equation on all quadruples of simples, and a fusion-ring
//! comparison with a Hopf algebra's corepresentations.

use rayon::prelude::*;
use serde::Serialize;

use crate::corep::{intertwiners, tensor_corep, Corep};
use crate::cyclotomic::CycQ8;

/// Simples: 0..4 are e, a, b, c; 4 is ρ.
pub const RHO: usize = 4;
pub const NAMES: [&str; 5] = ["e", "a", "b", "c", "ρ"];

/// K₄ as F₂²: e = (0,0), a = (1,0), b = (0,1), c = (1,1).
pub fn k4_mul(s: usize, t: usize) -> usize {
    s ^ t
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TyError {
    #[error("χ is not symmetric at ({0}, {1})")]
    NotSymmetric(&'static str, &'static str),
    #[error("χ is not multiplicative at ({0}, {1}, {2})")]
    NotBicharacter(&'static str, &'static str, &'static str),
    #[error("χ takes a value outside ±1 at ({0}, {1})")]
    NotSign(&'static str, &'static str),
    #[error("τ must be nonzero")]
    ZeroTau,
}

/// How to read the associator on (ρ, s, ρ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RhoSRho {
    /// ⊕_k χ(s, k) on the summand k.
    PerSummand,
    /// The display taken literally with the free letter set to s: χ(s, s) on every summand.
    Literal,
}

#[derive(Debug, Clone, Serialize)]
pub struct TyData {
    pub chi: [[i64; 4]; 4],
    #[serde(serialize_with = "ser_cyc")]
    pub tau: CycQ8,
    pub reading: RhoSRho,
    pub nondegenerate: bool,
}

fn ser_cyc<S: serde::Serializer>(x: &CycQ8, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// χ_c(x, y) = (−1)^{x₁y₁ + x₂y₂}: χ(a,a) = χ(b,b) = −1, χ(a,b) = 1.
pub fn chi_c() -> [[i64; 4]; 4] {
    let mut m = [[1; 4]; 4];
    for (s, row) in m.iter_mut().enumerate() {
        for (t, v) in row.iter_mut().enumerate() {
            let e = (s & 1) * (t & 1) + ((s >> 1) & 1) * ((t >> 1) & 1);
            *v = if e % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

pub fn build_ty_data(chi: [[i64; 4]; 4], tau: CycQ8) -> Result<TyData, TyError> {
    if tau.is_zero() {
        return Err(TyError::ZeroTau);
    }
    for s in 0..4 {
        for t in 0..4 {
            if chi[s][t].abs() != 1 {
                return Err(TyError::NotSign(NAMES[s], NAMES[t]));
            }
            if chi[s][t] != chi[t][s] {
                return Err(TyError::NotSymmetric(NAMES[s], NAMES[t]));
            }
            for u in 0..4 {
                if chi[k4_mul(s, t)][u] != chi[s][u] * chi[t][u] {
                    return Err(TyError::NotBicharacter(NAMES[s], NAMES[t], NAMES[u]));
                }
            }
        }
    }
    let nondegenerate = (1..4).all(|s| (0..4).any(|t| chi[s][t] != 1));
    Ok(TyData { chi, tau, reading: RhoSRho::PerSummand, nondegenerate })
}

impl TyData {
    pub fn with_reading(mut self, reading: RhoSRho) -> Self {
        self.reading = reading;
        self
    }

    /// Simples appearing in x ⊗ y.
    pub fn fuse(&self, x: usize, y: usize) -> Vec<usize> {
        match (x == RHO, y == RHO) {
            (false, false) => vec![k4_mul(x, y)],
            (true, true) => vec![0, 1, 2, 3],
            _ => vec![RHO],
        }
    }

    pub fn admissible(&self, x: usize, y: usize, z: usize) -> bool {
        self.fuse(x, y).contains(&z)
    }

    /// F^{abc}_d[e, f]: (a⊗b → e)⊗c → d versus a⊗(b⊗c → f) → d.
    pub fn f(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> CycQ8 {
        if !(self.admissible(a, b, e) && self.admissible(e, c, d) && self.admissible(b, c, f) && self.admissible(a, f, d)) {
            return CycQ8::zero();
        }
        let chi = |s: usize, t: usize| CycQ8::from_int(self.chi[s][t]);
        match (a == RHO, b == RHO, c == RHO) {
            (false, true, false) => chi(a, c),
            (true, false, true) => match self.reading {
                RhoSRho::PerSummand => chi(b, d),
                RhoSRho::Literal => chi(b, b),
            },
            (true, true, true) => &self.tau * &chi(e, f),
            _ => CycQ8::one(),
        }
    }

    /// Hom-space dimension of d in (a⊗b)⊗c by fusion recursion.
    pub fn hom_dim_left(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        self.fuse(a, b).into_iter().filter(|&e| self.admissible(e, c, d)).count()
    }

    pub fn hom_dim_right(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        self.fuse(b, c).into_iter().filter(|&f| self.admissible(a, f, d)).count()
    }

    /// The F-matrix of (a, b, c; d) indexed by admissible e (rows) and f (columns).
    pub fn f_matrix(&self, a: usize, b: usize, c: usize, d: usize) -> crate::linalg::Matrix {
        let es: Vec<usize> = self.fuse(a, b).into_iter().filter(|&e| self.admissible(e, c, d)).collect();
        let fs: Vec<usize> = self.fuse(b, c).into_iter().filter(|&f| self.admissible(a, f, d)).collect();
        let rows = es.iter().map(|&e| fs.iter().map(|&f| self.f(a, b, c, d, e, f)).collect()).collect();
        crate::linalg::Matrix::from_rows(rows).unwrap_or_else(|_| crate::linalg::Matrix::zeros(0, 0))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PentagonReport {
    pub quadruples: usize,
    pub failing: Vec<[&'static str; 4]>,
    pub associators_unitary: bool,
    pub hom_dims_consistent: bool,
}

impl PentagonReport {
    pub fn passed(&self) -> bool {
        self.failing.is_empty() && self.associators_unitary && self.hom_dims_consistent
    }

    pub fn fails_at(&self, q: [usize; 4]) -> bool {
        let names = q.map(|x| NAMES[x]);
        self.failing.contains(&names)
    }
}

/// Table of all F values, indexed a·5⁵ + b·5⁴ + c·5³ + d·5² + e·5 + f.
struct FTable(Vec<CycQ8>);

impl FTable {
    fn new(t: &TyData) -> Self {
        let mut v = Vec::with_capacity(5usize.pow(6));
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    for d in 0..5 {
                        for e in 0..5 {
                            for f in 0..5 {
                                v.push(t.f(a, b, c, d, e, f));
                            }
                        }
                    }
                }
            }
        }
        FTable(v)
    }

    fn get(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> &CycQ8 {
        &self.0[((((a * 5 + b) * 5 + c) * 5 + d) * 5 + e) * 5 + f]
    }
}

/// Does the pentagon hold for the quadruple (a, b, c, d) of simples?
///
/// F^{fcd}_e[g,l] F^{abl}_e[f,k] = Σ_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]
/// for all outer labels e and intermediate f, g, k, l.
fn pentagon_quadruple(t: &FTable, a: usize, b: usize, c: usize, d: usize) -> bool {
    for e in 0..5 {
        for f in 0..5 {
            for g in 0..5 {
                for k in 0..5 {
                    for l in 0..5 {
                        let x = t.get(f, c, d, e, g, l);
                        let y = t.get(a, b, l, e, f, k);
                        let lhs = if x.is_zero() || y.is_zero() { CycQ8::zero() } else { x * y };
                        let mut rhs = CycQ8::zero();
                        for h in 0..5 {
                            let p = t.get(a, b, c, g, f, h);
                            if p.is_zero() {
                                continue;
                            }
                            let q = t.get(a, h, d, e, g, k);
                            let r = t.get(b, c, d, k, h, l);
                            if q.is_zero() || r.is_zero() {
                                continue;
                            }
                            rhs += &(&(p * q) * r);
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

pub fn pentagon_check(t: &TyData) -> PentagonReport {
    let table = FTable::new(t);
    let quads: Vec<[usize; 4]> =
        (0..625).map(|n| [n / 125, (n / 25) % 5, (n / 5) % 5, n % 5]).collect();
    let failing: Vec<[&'static str; 4]> = quads
        .par_iter()
        .filter(|q| !pentagon_quadruple(&table, q[0], q[1], q[2], q[3]))
        .map(|q| q.map(|x| NAMES[x]))
        .collect();
    let mut associators_unitary = true;
    let mut hom_dims_consistent = true;
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                for d in 0..5 {
                    let (l, r) = (t.hom_dim_left(a, b, c, d), t.hom_dim_right(a, b, c, d));
                    let m = t.f_matrix(a, b, c, d);
                    hom_dims_consistent &= l == r && m.rows() == l && m.cols() == r;
                    if l > 0 {
                        associators_unitary &= m.is_unitary();
                    }
                }
            }
        }
    }
    PentagonReport { quadruples: quads.len(), failing, associators_unitary, hom_dims_consistent }
}

/// χ relabeled by a permutation of {a, b, c}: χ'(s, t) = χ(σ⁻¹s, σ⁻¹t).
pub fn relabel_chi(chi: &[[i64; 4]; 4], sigma: [usize; 4]) -> [[i64; 4]; 4] {
    let mut inv = [0; 4];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    let mut out = [[0; 4]; 4];
    for s in 0..4 {
        for u in 0..4 {
            out[s][u] = chi[inv[s]][inv[u]];
        }
    }
    out
}

/// The six permutations of {a, b, c} fixing e, as maps on 0..4.
pub fn k4_automorphisms() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for p in [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]] {
        out.push([0, p[0], p[1], p[2]]);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionMatch {
    /// Each tried relabeling, as the images of (a, b, c) among the non-unit group-likes, and whether all 25 products agree.
    pub relabelings: Vec<([usize; 3], bool)>,
    pub rho_squared: Vec<usize>,
    pub unit_matches: bool,
}

impl FusionMatch {
    pub fn passed(&self) -> bool {
        self.unit_matches && self.relabelings.iter().any(|(_, ok)| *ok)
    }
}

/// Compare the fusion rules of T with the decomposition of tensor products of
/// the supplied coreps: four group-likes (the first is the unit) and a 2-dim fundamental.
pub fn fusion_ring_match(t: &TyData, one_dims: &[Corep], fund: &Corep) -> FusionMatch {
    let unit_matches = one_dims.first().map(|u| u.size() == 1).unwrap_or(false) && one_dims.len() == 4;
    // Multiplicities N[x][y][z] on the corep side, with irreps ordered u₁..u₄, fund.
    let irreps: Vec<&Corep> = one_dims.iter().chain(std::iter::once(fund)).collect();
    let n = irreps.len();
    let mut mult = vec![vec![vec![0usize; n]; n]; n];
    for x in 0..n {
        for y in 0..n {
            let xy = tensor_corep(irreps[x], irreps[y]);
            for z in 0..n {
                mult[x][y][z] = intertwiners(irreps[z], &xy).dim();
            }
        }
    }
    let rho_squared = mult[n - 1][n - 1].clone();
    let mut relabelings = Vec::new();
    for p in k4_automorphisms() {
        // simple s ↦ corep index p[s]; ρ ↦ fund.
        let map = |s: usize| if s == RHO { n - 1 } else { p[s] };
        let ok = n == 5
            && (0..5).all(|x| {
                (0..5).all(|y| {
                    let fused = t.fuse(x, y);
                    (0..5).all(|z| mult[map(x)][map(y)][map(z)] == usize::from(fused.contains(&z)))
                })
            });
        relabelings.push(([p[1], p[2], p[3]], ok));
    }
    FusionMatch { relabelings, rho_squared, unit_matches }
}

pub fn half() -> CycQ8 {
    CycQ8::frac(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_c_values() {
        let chi = chi_c();
        assert_eq!((chi[1][1], chi[2][2], chi[1][2], chi[3][3]), (-1, -1, 1, 1));
        assert!(build_ty_data(chi, half()).unwrap().nondegenerate);
        assert!(!build_ty_data([[1; 4]; 4], half()).unwrap().nondegenerate);
    }

    #[test]
    fn group_quadruple_is_trivial() {
        let t = build_ty_data(chi_c(), half()).unwrap();
        let table = FTable::new(&t);
        assert!(pentagon_quadruple(&table, 1, 2, 1, 2));
    }

    #[test]
    fn tau_one_fails_on_rho4() {
        let t = build_ty_data(chi_c(), CycQ8::one()).unwrap();
        let table = FTable::new(&t);
        assert!(!pentagon_quadruple(&table, RHO, RHO, RHO, RHO));
    }
}
