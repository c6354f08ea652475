//! Corepresentations: verification, tensor products, intertwiner spaces,
//! group-like elements and the fusion graph of a fundamental corep.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::CycQ8;
use crate::hopf::HopfAlgebra;
use crate::linalg::{solve_sparse, Echelon, LinalgError, Matrix, SparseVec};
use crate::models::{c, e, mat2, KPModel, ALPHA, BETA, EPS, GAMMA, MBLOCK};
use crate::multimatrix::AlgElement;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CorepError {
    #[error("corep needs {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("irreducible list is incomplete: sum of squared dimensions {sum} != {dim}")]
    Incomplete { sum: usize, dim: usize },
    #[error("irreducibles {0} and {1} are isomorphic")]
    Duplicate(String, String),
    #[error("{0} is not irreducible (dim End = {1})")]
    Reducible(String, usize),
    #[error("group-like search: {0}")]
    Unsupported(String),
}

/// An n×n matrix of algebra elements, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Corep {
    n: usize,
    entries: Vec<AlgElement>,
}

impl Corep {
    pub fn new(n: usize, entries: Vec<AlgElement>) -> Result<Self, CorepError> {
        if entries.len() != n * n || n == 0 {
            return Err(CorepError::Shape { expected: n * n, got: entries.len() });
        }
        Ok(Corep { n, entries })
    }

    pub fn one_dim(u: AlgElement) -> Self {
        Corep { n: 1, entries: vec![u] }
    }

    pub fn trivial(h: &HopfAlgebra) -> Self {
        Corep::one_dim(h.unit())
    }

    pub fn from_rows(rows: &[[AlgElement; 2]; 2]) -> Self {
        Corep { n: 2, entries: rows.iter().flat_map(|r| r.iter().cloned()).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgElement {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[AlgElement] {
        &self.entries
    }

    /// Block-diagonal sum U ⊕ V.
    pub fn direct_sum(&self, other: &Corep) -> Corep {
        let n = self.n + other.n;
        let zero = AlgElement::zero(self.entries[0].algebra());
        let mut entries = vec![zero; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                entries[(self.n + i) * n + self.n + j] = other.get(i, j).clone();
            }
        }
        Corep { n, entries }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorepReport {
    pub comultiplicative: bool,
    pub counit: bool,
    pub unitary: bool,
    pub witness: Option<String>,
}

impl CorepReport {
    pub fn is_corep(&self) -> bool {
        self.comultiplicative && self.counit
    }
}

pub fn verify_corep(h: &HopfAlgebra, u: &Corep) -> CorepReport {
    let n = u.size();
    let mut witness = None;
    let mut comultiplicative = true;
    let mut counit = true;
    let mut unitary = true;
    let one = h.unit();
    let zero = AlgElement::zero(h.algebra());
    for i in 0..n {
        for j in 0..n {
            let rhs = (0..n).fold(AlgElement::zero(&h.square().product), |acc, k| acc + h.tensor(u.get(i, k), u.get(k, j)));
            if h.delta(u.get(i, j)) != rhs {
                comultiplicative = false;
                witness.get_or_insert_with(|| format!("Δ(u[{i}][{j}]) != Σ_k u[{i}][k]⊗u[k][{j}]"));
            }
            let want = if i == j { CycQ8::one() } else { CycQ8::zero() };
            if h.epsilon(u.get(i, j)) != want {
                counit = false;
                witness.get_or_insert_with(|| format!("ε(u[{i}][{j}]) = {}", h.epsilon(u.get(i, j))));
            }
            let expect = if i == j { &one } else { &zero };
            let rows = (0..n).fold(zero.clone(), |acc, k| acc + u.get(i, k) * &u.get(j, k).star());
            let cols = (0..n).fold(zero.clone(), |acc, k| acc + &u.get(k, i).star() * u.get(k, j));
            if &rows != expect || &cols != expect {
                unitary = false;
                witness.get_or_insert_with(|| format!("unitarity fails at ({i},{j})"));
            }
        }
    }
    CorepReport { comultiplicative, counit, unitary, witness }
}

/// (U⊗V)_{(i,k),(j,l)} = u_ij v_kl with (i,k) ↦ i·n_V + k.
pub fn tensor_corep(u: &Corep, v: &Corep) -> Corep {
    let (nu, nv) = (u.size(), v.size());
    let n = nu * nv;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..nu {
        for k in 0..nv {
            for j in 0..nu {
                for l in 0..nv {
                    entries.push(u.get(i, j) * v.get(k, l));
                }
            }
        }
    }
    Corep { n, entries }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntertwinerSpace {
    pub source_size: usize,
    pub target_size: usize,
    /// n_V × n_U scalar matrices.
    pub basis: Vec<Matrix>,
}

impl IntertwinerSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// All scalar T with (T⊗1)U = V(T⊗1).
pub fn intertwiners(u: &Corep, v: &Corep) -> IntertwinerSpace {
    let (nu, nv) = (u.size(), v.size());
    let nvars = nv * nu;
    let dim = u.get(0, 0).algebra().dim();
    let mut ech = Echelon::new(nvars);
    for a in 0..nv {
        for j in 0..nu {
            // Σ_b T_ab u_bj − Σ_c v_ac T_cj, coordinate by coordinate.
            let mut rows: BTreeMap<usize, BTreeMap<usize, CycQ8>> = BTreeMap::new();
            for b in 0..nu {
                for (r, x) in u.get(b, j).sparse() {
                    *rows.entry(r).or_default().entry(a * nu + b).or_insert_with(CycQ8::zero) += &x;
                }
            }
            for cc in 0..nv {
                for (r, x) in v.get(a, cc).sparse() {
                    *rows.entry(r).or_default().entry(cc * nu + j).or_insert_with(CycQ8::zero) -= &x;
                }
            }
            for (_, row) in rows {
                let sv: SparseVec = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if !sv.is_empty() {
                    ech.insert(sv);
                }
            }
        }
    }
    debug_assert!(dim > 0);
    let basis = ech
        .null_space(nvars)
        .into_iter()
        .map(|t| Matrix::from_rows(t.chunks(nu).map(|r| r.to_vec()).collect()).expect("rectangular"))
        .collect();
    IntertwinerSpace { source_size: nu, target_size: nv, basis }
}

#[derive(Debug, Clone, Serialize)]
pub struct OneDimGroup {
    #[serde(skip)]
    pub elements: Vec<AlgElement>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
    pub is_group: bool,
    pub is_klein_four: bool,
}

impl OneDimGroup {
    pub fn coreps(&self) -> Vec<Corep> {
        self.elements.iter().cloned().map(Corep::one_dim).collect()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn mu8() -> Vec<CycQ8> {
    (0..8).map(CycQ8::zeta_pow).collect()
}

/// All group-like unitaries u (Δu = u⊗u, ε(u) = 1, u*u = 1) with
/// coordinates in Q(ζ₈).
///
/// The coefficient of u in each 1-dim block is a root of unity lying in
/// Q(ζ₈), so it ranges over μ₈. A depth-first search assigns those, pruning
/// with the coordinates of Δu = u⊗u that only involve 1-dim blocks. Once all
/// are fixed, the rows of Δu = u⊗u with a 1-dim tensor factor are linear in
/// the remaining coordinates and are solved exactly.
pub fn one_dim_group(h: &HopfAlgebra) -> Result<OneDimGroup, CorepError> {
    let alg = h.algebra().clone();
    let sq = h.square().clone();
    let one_dim: Vec<usize> = (0..alg.num_blocks()).filter(|&b| alg.block_sizes()[b] == 1).map(|b| alg.offset(b)).collect();
    let is_one_dim = |p: usize| alg.block_sizes()[alg.basis_coords(p).0] == 1;
    let n = alg.dim();
    let delta_cols: Vec<SparseVec> = (0..n).map(|x| h.coproduct().sparse_column(x).clone()).collect();
    // Δ as rows: for each tensor coordinate, the (x, coefficient) pairs.
    let mut delta_rows: BTreeMap<usize, Vec<(usize, CycQ8)>> = BTreeMap::new();
    for (x, col) in delta_cols.iter().enumerate() {
        for (r, v) in col {
            delta_rows.entry(*r).or_default().push((x, v.clone()));
        }
    }
    let counit_pos: Vec<usize> = one_dim.iter().copied().filter(|&p| !h.epsilon(&h.basis(p)).is_zero()).collect();

    // Rows usable for pruning: both factors 1-dim, support only in 1-dim coordinates.
    let mut prune: Vec<(usize, usize, Vec<(usize, CycQ8)>)> = Vec::new();
    for &p in &one_dim {
        for &q in &one_dim {
            let r = sq.index(p, q);
            let row = delta_rows.get(&r).cloned().unwrap_or_default();
            if row.iter().all(|(x, _)| is_one_dim(*x)) {
                prune.push((p, q, row));
            }
        }
    }

    let roots = mu8();
    let mut found = Vec::new();
    let mut assign: Vec<Option<CycQ8>> = vec![None; n];
    fn dfs(
        depth: usize,
        one_dim: &[usize],
        roots: &[CycQ8],
        counit_pos: &[usize],
        prune: &[(usize, usize, Vec<(usize, CycQ8)>)],
        assign: &mut Vec<Option<CycQ8>>,
        out: &mut Vec<Vec<CycQ8>>,
    ) {
        if depth == one_dim.len() {
            out.push(one_dim.iter().map(|&p| assign[p].clone().expect("assigned")).collect());
            return;
        }
        let p = one_dim[depth];
        let choices: Vec<CycQ8> = if counit_pos.contains(&p) { vec![CycQ8::one()] } else { roots.to_vec() };
        for cand in choices {
            assign[p] = Some(cand);
            let ok = prune.iter().all(|(a, b, row)| {
                let (Some(ua), Some(ub)) = (&assign[*a], &assign[*b]) else { return true };
                let mut lhs = CycQ8::zero();
                for (x, v) in row {
                    match &assign[*x] {
                        Some(ux) => lhs += &(v * ux),
                        None => return true,
                    }
                }
                lhs == ua * ub
            });
            if ok {
                dfs(depth + 1, one_dim, roots, counit_pos, prune, assign, out);
            }
            assign[p] = None;
        }
    }
    let mut partials = Vec::new();
    dfs(0, &one_dim, &roots, &counit_pos, &prune, &mut assign, &mut partials);

    let free: Vec<usize> = (0..n).filter(|&x| !is_one_dim(x)).collect();
    let var_of: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    for fixed in partials {
        let mut value: BTreeMap<usize, CycQ8> = one_dim.iter().copied().zip(fixed).collect();
        let mut eqs = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let (known, var) = match (value.get(&p), value.get(&q)) {
                    (Some(cp), _) => (cp.clone(), q),
                    (None, Some(cq)) => (cq.clone(), p),
                    _ => continue,
                };
                // Σ_x Δ[(p,q),x] u_x − known · u_var = 0
                let mut coeffs: BTreeMap<usize, CycQ8> = BTreeMap::new();
                let mut rhs = CycQ8::zero();
                let row = delta_rows.get(&sq.index(p, q)).cloned().unwrap_or_default();
                let mut add = |x: usize, v: CycQ8, coeffs: &mut BTreeMap<usize, CycQ8>| match value.get(&x) {
                    Some(ux) => rhs -= &(&v * ux),
                    None => *coeffs.entry(var_of[&x]).or_insert_with(CycQ8::zero) += &v,
                };
                for (x, v) in row {
                    add(x, v, &mut coeffs);
                }
                add(var, -known, &mut coeffs);
                let sv: SparseVec = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                eqs.push((sv, rhs));
            }
        }
        let sol = match solve_sparse(free.len(), eqs) {
            Ok(s) => s,
            Err(LinalgError::Inconsistent) => continue,
            Err(e) => return Err(CorepError::Unsupported(e.to_string())),
        };
        let params: Vec<CycQ8> = match sol.kernel.len() {
            0 => vec![CycQ8::zero()],
            1 => {
                let lift = |v: &[CycQ8], fixed: bool| -> Vec<CycQ8> {
                    (0..n)
                        .map(|x| match var_of.get(&x) {
                            Some(&k) => v[k].clone(),
                            None if fixed => value[&x].clone(),
                            None => CycQ8::zero(),
                        })
                        .collect()
                };
                let a = lift(&sol.particular, true);
                let b = lift(&sol.kernel[0], false);
                quadratic_parameters(&free, &delta_rows, &sq, &a, &b)?
            }
            k => return Err(CorepError::Unsupported(format!("affine family of dimension {k} in the matrix blocks"))),
        };
        for t in params {
            let mut coeffs = vec![CycQ8::zero(); n];
            for x in 0..n {
                coeffs[x] = match var_of.get(&x) {
                    Some(&k) => {
                        let mut v = sol.particular[k].clone();
                        if let Some(kv) = sol.kernel.first() {
                            v += &(&t * &kv[k]);
                        }
                        v
                    }
                    None => value[&x].clone(),
                };
            }
            let u = AlgElement::from_coeffs(&alg, coeffs).expect("dimension");
            if h.delta(&u) == h.tensor(&u, &u) && h.epsilon(&u).is_one() && &u.star() * &u == h.unit() && !found.contains(&u) {
                found.push(u);
            }
        }
        value.clear();
    }
    let unit_elem = h.unit();
    let unit = found.iter().position(|u| *u == unit_elem).unwrap_or(0);
    let table: Vec<Vec<usize>> = found
        .iter()
        .map(|a| found.iter().map(|b| found.iter().position(|x| *x == a * b).unwrap_or(usize::MAX)).collect())
        .collect();
    let closed = table.iter().flatten().all(|&k| k != usize::MAX);
    let has_inverses = closed && found.iter().enumerate().all(|(i, a)| found.iter().any(|b| table[i][found.iter().position(|x| x == b).unwrap()] == unit && a.star() == *b));
    let is_group = found.contains(&unit_elem) && closed && has_inverses;
    let is_klein_four =
        is_group && found.len() == 4 && (0..4).all(|i| table[i][i] == unit && (0..4).all(|j| table[i][j] == table[j][i]));
    Ok(OneDimGroup { elements: found, table, unit, is_group, is_klein_four })
}

/// Values of t for which u = a + t·b satisfies the rows of Δu = u⊗u with
/// both factors in matrix blocks, each a quadratic c₂t² + c₁t + c₀ = 0.
fn quadratic_parameters(
    free: &[usize],
    delta_rows: &BTreeMap<usize, Vec<(usize, CycQ8)>>,
    sq: &crate::multimatrix::TensorLayout,
    a: &[CycQ8],
    b: &[CycQ8],
) -> Result<Vec<CycQ8>, CorepError> {
    let mut eqs = Vec::new();
    for &p in free {
        for &q in free {
            let row = delta_rows.get(&sq.index(p, q)).cloned().unwrap_or_default();
            let la = row.iter().fold(CycQ8::zero(), |acc, (x, v)| acc + v * &a[*x]);
            let lb = row.iter().fold(CycQ8::zero(), |acc, (x, v)| acc + v * &b[*x]);
            let c2 = &b[p] * &b[q];
            let c1 = &(&(&a[p] * &b[q]) + &(&a[q] * &b[p])) - &lb;
            let c0 = &(&a[p] * &a[q]) - &la;
            eqs.push((c2, c1, c0));
        }
    }
    let roots_of = |(c2, c1, c0): &(CycQ8, CycQ8, CycQ8)| -> Option<Vec<CycQ8>> {
        if c2.is_zero() && c1.is_zero() {
            return None;
        }
        if c2.is_zero() {
            return Some(vec![-(c0.try_div(c1).expect("nonzero"))]);
        }
        let disc = &(c1 * c1) - &(&(c2 * c0) * &c(4));
        let Some(r) = disc.sqrt() else { return Some(vec![]) };
        let two_a = c2 * &c(2);
        Some(vec![(&r - c1).try_div(&two_a).expect("nonzero"), (&(-&r) - c1).try_div(&two_a).expect("nonzero")])
    };
    let Some(cands) = eqs.iter().find_map(roots_of) else {
        return Err(CorepError::Unsupported("quadratic constraints are degenerate".into()));
    };
    Ok(cands
        .into_iter()
        .filter(|t| eqs.iter().all(|(c2, c1, c0)| (&(&(c2 * t) * t) + &(&(c1 * t) + c0)).is_zero()))
        .collect())
}

/// The four printed group-likes u₁..u₄ of C(G_KP): coefficients on (ε, α, β, γ) and the M₂ part.
pub fn kp_printed_one_dim(kp: &KPModel) -> Vec<AlgElement> {
    let alg = kp.hopf.algebra();
    let data: [([i64; 4], [i64; 2]); 4] =
        [([1, 1, 1, 1], [1, 1]), ([1, -1, -1, 1], [1, -1]), ([1, 1, 1, 1], [-1, -1]), ([1, -1, -1, 1], [-1, 1])];
    data.iter()
        .map(|(one, diag)| {
            let mut x = AlgElement::in_block(alg, MBLOCK, &mat2(c(diag[0]), c(0), c(0), c(diag[1])));
            for (k, s) in [EPS, ALPHA, BETA, GAMMA].iter().zip(one) {
                x = x + AlgElement::basis(alg, *k).scale(&c(*s));
            }
            x
        })
        .collect()
}

/// The printed projections P₁..P₄ in the basis (i,k) ↦ 2i + k.
pub fn printed_projections() -> [Matrix; 4] {
    let q = |s: i64, rows: [[i64; 4]; 4]| {
        let rs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        Matrix::from_ints(&rs).scale(&CycQ8::frac(1, s))
    };
    [
        q(2, [[0, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]]),
        q(4, [[1, 1, -1, 1], [1, 1, -1, 1], [-1, -1, 1, -1], [1, 1, -1, 1]]),
        q(2, [[1, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 1]]),
        q(4, [[1, -1, 1, 1], [-1, 1, -1, -1], [1, -1, 1, 1], [1, -1, 1, 1]]),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorSquareReport {
    pub projections: bool,
    pub orthogonal: bool,
    pub sum_is_identity: bool,
    pub traces_one: bool,
    pub decomposition: bool,
    pub witness: Option<String>,
}

impl TensorSquareReport {
    pub fn passed(&self) -> bool {
        self.projections && self.orthogonal && self.sum_is_identity && self.traces_one && self.decomposition
    }
}

/// Checks U⊗U = Σ P_i ⊗ u_i with the printed P_i and group-likes.
pub fn tensor_square_check(u: &Corep, ps: &[Matrix; 4], us: &[AlgElement]) -> TensorSquareReport {
    let mut witness = None;
    let projections = ps.iter().all(|p| p.mul(p).ok().as_ref() == Some(p) && p.adjoint() == *p);
    let mut orthogonal = true;
    for a in 0..4 {
        for b in 0..4 {
            if a != b && !ps[a].mul(&ps[b]).expect("4x4").is_zero() {
                orthogonal = false;
                witness.get_or_insert_with(|| format!("P{}·P{} != 0", a + 1, b + 1));
            }
        }
    }
    let sum = ps.iter().skip(1).fold(ps[0].clone(), |acc, p| acc.add(p));
    let sum_is_identity = sum == Matrix::identity(4);
    let traces_one = ps.iter().all(|p| p.trace().is_one());
    let uu = tensor_corep(u, u);
    let alg = u.get(0, 0).algebra().clone();
    let mut decomposition = uu.size() == 4;
    'outer: for r in 0..4 {
        for col in 0..4 {
            let rhs = (0..4).fold(AlgElement::zero(&alg), |acc, m| acc + us[m].scale(ps[m].get(r, col)));
            if uu.get(r, col) != &rhs {
                decomposition = false;
                let k = (0..alg.dim()).find(|&k| uu.get(r, col).coeff(k) != rhs.coeff(k)).unwrap_or(0);
                witness.get_or_insert_with(|| {
                    format!(
                        "(U⊗U)[{r}][{col}] coefficient of {}: {} vs {}",
                        alg.describe_basis(k),
                        uu.get(r, col).coeff(k),
                        rhs.coeff(k)
                    )
                });
                break 'outer;
            }
        }
    }
    TensorSquareReport { projections, orthogonal, sum_is_identity, traces_one, decomposition, witness }
}

/// The KP instance: U is the fundamental, u₁..u₄ the printed group-likes.
pub fn tensor_square_kp_check(kp: &KPModel, u: &Corep) -> TensorSquareReport {
    tensor_square_check(u, &printed_projections(), &kp_printed_one_dim(kp))
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionGraph {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    /// M[x][y] = multiplicity of y in fund ⊗ x.
    pub multiplicity: Vec<Vec<usize>>,
    /// M[x][y]·dim(y)/dim(x) for each nonzero edge x → y.
    pub weights: Vec<(String, String, String)>,
    pub dimension_consistent: bool,
}

impl FusionGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph fusion {\n");
        for (l, d) in self.labels.iter().zip(&self.dims) {
            s.push_str(&format!("  \"{l}\" [label=\"{l} ({d})\"];\n"));
        }
        for (x, y, w) in &self.weights {
            s.push_str(&format!("  \"{x}\" -> \"{y}\" [label=\"{w}\"];\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// Undirected edges {x, y} with M[x][y] > 0 or M[y][x] > 0.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let n = self.labels.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x..n {
                if self.multiplicity[x][y] > 0 || self.multiplicity[y][x] > 0 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// A star: one center adjacent to every other vertex, no other edges.
    pub fn star_center(&self) -> Option<usize> {
        let edges = self.undirected_edges();
        let n = self.labels.len();
        (0..n).find(|&c| edges.len() == n - 1 && edges.iter().all(|&(x, y)| (x == c) != (y == c)))
    }
}

pub fn fusion_graph(h: &HopfAlgebra, fund: &Corep, irreducibles: &[(String, Corep)]) -> Result<FusionGraph, CorepError> {
    let sum: usize = irreducibles.iter().map(|(_, u)| u.size() * u.size()).sum();
    if sum != h.dim() {
        return Err(CorepError::Incomplete { sum, dim: h.dim() });
    }
    for (i, (li, ui)) in irreducibles.iter().enumerate() {
        let end = intertwiners(ui, ui).dim();
        if end != 1 {
            return Err(CorepError::Reducible(li.clone(), end));
        }
        for (lj, uj) in &irreducibles[..i] {
            if ui.size() == uj.size() && intertwiners(ui, uj).dim() > 0 {
                return Err(CorepError::Duplicate(lj.clone(), li.clone()));
            }
        }
    }
    let labels: Vec<String> = irreducibles.iter().map(|(l, _)| l.clone()).collect();
    let dims: Vec<usize> = irreducibles.iter().map(|(_, u)| u.size()).collect();
    let multiplicity: Vec<Vec<usize>> = irreducibles
        .iter()
        .map(|(_, x)| {
            let fx = tensor_corep(fund, x);
            irreducibles.iter().map(|(_, y)| intertwiners(y, &fx).dim()).collect()
        })
        .collect();
    let dimension_consistent = (0..labels.len())
        .all(|x| (0..labels.len()).map(|y| multiplicity[x][y] * dims[y]).sum::<usize>() == fund.size() * dims[x]);
    let mut weights = Vec::new();
    for x in 0..labels.len() {
        for y in 0..labels.len() {
            if multiplicity[x][y] > 0 {
                let w = crate::cyclotomic::rat((multiplicity[x][y] * dims[y]) as i64, dims[x] as i64);
                weights.push((labels[x].clone(), labels[y].clone(), crate::cyclotomic::format_rational(&w)));
            }
        }
    }
    Ok(FusionGraph { labels, dims, multiplicity, weights, dimension_consistent })
}

/// Matrix units of C(G_KP) used in tests: e_ij as an algebra element.
pub fn kp_matrix_unit(kp: &KPModel, i: usize, j: usize) -> AlgElement {
    kp.hopf.basis(e(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::build_kp;

    #[test]
    fn kp_group_likes_are_printed_ones() {
        let kp = build_kp().unwrap();
        let g = one_dim_group(&kp.hopf).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_klein_four);
        let printed = kp_printed_one_dim(&kp);
        for u in &printed {
            assert!(g.elements.contains(u));
            assert!(verify_corep(&kp.hopf, &Corep::one_dim(u.clone())).unitary);
        }
        assert_eq!(printed[0], kp.hopf.unit());
    }

    #[test]
    fn distinct_one_dims_have_no_intertwiners() {
        let kp = build_kp().unwrap();
        let p = kp_printed_one_dim(&kp);
        assert_eq!(intertwiners(&Corep::one_dim(p[0].clone()), &Corep::one_dim(p[1].clone())).dim(), 0);
        assert_eq!(intertwiners(&Corep::one_dim(p[1].clone()), &Corep::one_dim(p[1].clone())).dim(), 1);
    }

    #[test]
    fn projections_sum_to_identity() {
        let ps = printed_projections();
        assert_eq!(ps[1].trace(), CycQ8::one());
        let s = ps.iter().skip(1).fold(ps[0].clone(), |a, p| a.add(p));
        assert_eq!(s, Matrix::identity(4));
    }
}
