//! Hopf *-algebra bundles over multimatrix algebras and exact axiom checks.
//!
//! All identities are checked on canonical basis elements; bilinearity does
//! the rest. Counit and antipode are never entered by hand: they are solved
//! from the coproduct.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycQ8;
use crate::linalg::{self, Matrix, SparseVec};
use crate::multimatrix::{tensor_layout, AlgElement, AlgebraError, LinearMap, MultiMatrixAlgebra, TensorLayout};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HopfError {
    #[error("no counit/antipode exists: {0}")]
    NoSolution(String),
    #[error("{what} is not unique (solution space of dimension {kernel_dim})")]
    NonUnique { what: &'static str, kernel_dim: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed Hopf algebra JSON: {0}")]
    Json(String),
    #[error("Hopf axioms failed: {0}")]
    Axioms(String),
}

#[derive(Clone)]
pub struct HopfAlgebra {
    algebra: Arc<MultiMatrixAlgebra>,
    square: Arc<TensorLayout>,
    coproduct: LinearMap,
    counit: LinearMap,
    antipode: LinearMap,
}

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HopfAlgebra(blocks {:?})", self.algebra.block_sizes())
    }
}

impl HopfAlgebra {
    /// Bundle explicitly supplied structure maps. Nothing is verified here.
    pub fn new(
        algebra: &Arc<MultiMatrixAlgebra>,
        coproduct: LinearMap,
        counit: LinearMap,
        antipode: LinearMap,
    ) -> Result<Self, HopfError> {
        let square = tensor_layout(algebra, algebra);
        let n = algebra.dim();
        let shape = |m: &LinearMap| (m.matrix().rows(), m.matrix().cols());
        if shape(&coproduct) != (n * n, n) || shape(&counit) != (1, n) || shape(&antipode) != (n, n) {
            return Err(AlgebraError::Dimension("structure maps do not match the algebra".into()).into());
        }
        // Re-anchor the maps on the shared Arc so tensor layouts line up.
        let coproduct = LinearMap::new(algebra, &square.product, coproduct.matrix().clone())?;
        let counit = LinearMap::new(algebra, &MultiMatrixAlgebra::scalars(), counit.matrix().clone())?;
        let antipode = LinearMap::new(algebra, algebra, antipode.matrix().clone())?;
        Ok(HopfAlgebra { algebra: algebra.clone(), square, coproduct, counit, antipode })
    }

    /// Solve counit and antipode from the coproduct.
    pub fn from_coproduct(algebra: &Arc<MultiMatrixAlgebra>, coproduct: LinearMap) -> Result<Self, HopfError> {
        let (counit, antipode) = solve_counit_antipode(algebra, &coproduct)?;
        Self::new(algebra, coproduct, counit, antipode)
    }

    /// Build from the images Δ(e_b) of the canonical basis.
    pub fn from_coproduct_images(algebra: &Arc<MultiMatrixAlgebra>, images: &[AlgElement]) -> Result<Self, HopfError> {
        let square = tensor_layout(algebra, algebra);
        let delta = LinearMap::from_images(algebra, &square.product, images)?;
        Self::from_coproduct(algebra, delta)
    }

    pub fn algebra(&self) -> &Arc<MultiMatrixAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn square(&self) -> &Arc<TensorLayout> {
        &self.square
    }

    pub fn coproduct(&self) -> &LinearMap {
        &self.coproduct
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn delta(&self, a: &AlgElement) -> AlgElement {
        self.coproduct.apply(a).expect("element of this algebra")
    }

    pub fn epsilon(&self, a: &AlgElement) -> CycQ8 {
        self.counit.apply(a).expect("element of this algebra").coeff(0).clone()
    }

    pub fn s(&self, a: &AlgElement) -> AlgElement {
        self.antipode.apply(a).expect("element of this algebra")
    }

    pub fn basis(&self, idx: usize) -> AlgElement {
        AlgElement::basis(&self.algebra, idx)
    }

    pub fn unit(&self) -> AlgElement {
        AlgElement::unit(&self.algebra)
    }

    pub fn tensor(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        self.square.tensor_elements(a, b)
    }

    /// Δ^op = Σ∘Δ.
    pub fn delta_op(&self, a: &AlgElement) -> AlgElement {
        self.square.flip(&self.delta(a))
    }

    pub fn to_json(&self) -> HopfJson {
        HopfJson {
            block_sizes: self.algebra.block_sizes().to_vec(),
            coproduct_matrix: self.coproduct.matrix().clone(),
            counit_matrix: self.counit.matrix().clone(),
            antipode_matrix: self.antipode.matrix().clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(j: &HopfJson) -> Result<Self, HopfError> {
        let algebra = MultiMatrixAlgebra::new(j.block_sizes.clone())?;
        let sq = tensor_layout(&algebra, &algebra);
        let delta = LinearMap::new(&algebra, &sq.product, j.coproduct_matrix.clone())?;
        let eps = LinearMap::new(&algebra, &MultiMatrixAlgebra::scalars(), j.counit_matrix.clone())?;
        let s = LinearMap::new(&algebra, &algebra, j.antipode_matrix.clone())?;
        Self::new(&algebra, delta, eps, s)
    }

    pub fn from_json_str(s: &str) -> Result<Self, HopfError> {
        let j: HopfJson = serde_json::from_str(s).map_err(|e| HopfError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

/// On-disk form of a Hopf algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopfJson {
    pub block_sizes: Vec<usize>,
    pub coproduct_matrix: Matrix,
    pub counit_matrix: Matrix,
    pub antipode_matrix: Matrix,
}

/// Rows `Σ_p c_{p,q} ε_p = δ_{b,q}` from (ε⊗id)Δ(e_b) = e_b, then the
/// antipode from m(S⊗id)Δ(e_b) = ε(e_b)·1 with unknowns S_{k,p} at k·n+p.
pub fn solve_counit_antipode(
    algebra: &Arc<MultiMatrixAlgebra>,
    coproduct: &LinearMap,
) -> Result<(LinearMap, LinearMap), HopfError> {
    let n = algebra.dim();
    let sq = tensor_layout(algebra, algebra);
    if coproduct.matrix().rows() != n * n || coproduct.matrix().cols() != n {
        return Err(AlgebraError::Dimension("coproduct has the wrong shape".into()).into());
    }

    let mut rows: Vec<(SparseVec, CycQ8)> = Vec::new();
    for b in 0..n {
        let mut per_q: Vec<SparseVec> = vec![Vec::new(); n];
        for (r, c) in coproduct.sparse_column(b) {
            let (p, q) = sq.split(*r);
            per_q[q].push((p, c.clone()));
        }
        for (q, mut row) in per_q.into_iter().enumerate() {
            row.sort_by_key(|(p, _)| *p);
            let rhs = if q == b { CycQ8::one() } else { CycQ8::zero() };
            rows.push((row, rhs));
        }
    }
    let sol = linalg::solve_sparse(n, rows).map_err(|_| HopfError::NoSolution("(ε⊗id)Δ = id has no solution".into()))?;
    if !sol.kernel.is_empty() {
        return Err(HopfError::NonUnique { what: "counit", kernel_dim: sol.kernel.len() });
    }
    let eps_vals = sol.particular;
    let counit = LinearMap::new(algebra, &MultiMatrixAlgebra::scalars(), Matrix::from_rows(vec![eps_vals.clone()]).expect("row"))?;

    let unit = AlgElement::unit(algebra);
    let mut rows: Vec<(SparseVec, CycQ8)> = Vec::new();
    for b in 0..n {
        // Coefficient of e_r: Σ_{p,q,k : e_k e_q = e_r} c_{pq} S_{k,p}.
        let mut per_r: Vec<std::collections::BTreeMap<usize, CycQ8>> = vec![Default::default(); n];
        for (idx, c) in coproduct.sparse_column(b) {
            let (p, q) = sq.split(*idx);
            for k in 0..n {
                if let Some(r) = algebra.basis_product(k, q) {
                    let e = per_r[r].entry(k * n + p).or_insert_with(CycQ8::zero);
                    *e += c;
                }
            }
        }
        for (r, m) in per_r.into_iter().enumerate() {
            let row: SparseVec = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            rows.push((row, &eps_vals[b] * unit.coeff(r)));
        }
    }
    let sol = linalg::solve_sparse(n * n, rows)
        .map_err(|_| HopfError::NoSolution("m(S⊗id)Δ = ηε has no solution".into()))?;
    if !sol.kernel.is_empty() {
        return Err(HopfError::NonUnique { what: "antipode", kernel_dim: sol.kernel.len() });
    }
    let mut s = Matrix::zeros(n, n);
    for k in 0..n {
        for p in 0..n {
            s.set(k, p, sol.particular[k * n + p].clone());
        }
    }
    Ok((counit, LinearMap::new(algebra, algebra, s)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: &'static str,
    pub passed: bool,
    /// Description of the first failing basis element or pair.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub components: Vec<AxiomResult>,
    /// Recorded, never gated on.
    pub antipode_squared_is_identity: bool,
    pub antipode_star_involutive: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.components.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.components.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&AxiomResult> {
        self.components.iter().find(|c| !c.passed)
    }
}

fn result(name: &'static str, witness: Option<String>) -> AxiomResult {
    AxiomResult { name, passed: witness.is_none(), witness }
}

fn first_failure(n: usize, mut ok: impl FnMut(usize) -> bool, describe: impl Fn(usize) -> String) -> Option<String> {
    (0..n).find(|&i| !ok(i)).map(describe)
}

pub fn verify_hopf_axioms(h: &HopfAlgebra) -> AxiomReport {
    let a = &h.algebra;
    let n = a.dim();
    let sq = &h.square;
    let id = LinearMap::identity(a);
    let left3 = tensor_layout(&sq.product, a);
    let right3 = tensor_layout(a, &sq.product);
    let scal = MultiMatrixAlgebra::scalars();
    let k_a = tensor_layout(&scal, a);
    let a_k = tensor_layout(a, &scal);
    let name = |i: usize| a.describe_basis(i);
    let name2 = |i: usize, j: usize| format!("({}, {})", a.describe_basis(i), a.describe_basis(j));

    let deltas: Vec<AlgElement> = (0..n).map(|b| h.delta(&h.basis(b))).collect();
    let mut components = Vec::new();

    components.push(result(
        "coassociativity",
        first_failure(
            n,
            |b| {
                let l = LinearMap::apply_tensor(&h.coproduct, &id, sq, &left3, &deltas[b]);
                let r = LinearMap::apply_tensor(&id, &h.coproduct, sq, &right3, &deltas[b]);
                l.coeffs() == r.coeffs()
            },
            name,
        ),
    ));

    components.push(result(
        "counit",
        first_failure(
            n,
            |b| {
                let l = LinearMap::apply_tensor(&h.counit, &id, sq, &k_a, &deltas[b]);
                let r = LinearMap::apply_tensor(&id, &h.counit, sq, &a_k, &deltas[b]);
                let e = h.basis(b);
                l.coeffs() == e.coeffs() && r.coeffs() == e.coeffs()
            },
            name,
        ),
    ));

    let unit = h.unit();
    components.push(result(
        "antipode",
        first_failure(
            n,
            |b| {
                let target = unit.scale(&h.epsilon(&h.basis(b)));
                let l = sq.multiply(&LinearMap::apply_tensor(&h.antipode, &id, sq, sq, &deltas[b]));
                let r = sq.multiply(&LinearMap::apply_tensor(&id, &h.antipode, sq, sq, &deltas[b]));
                l == target && r == target
            },
            name,
        ),
    ));

    let mut mult_witness = None;
    'outer: for p in 0..n {
        for q in 0..n {
            let lhs = match a.basis_product(p, q) {
                Some(r) => deltas[r].clone(),
                None => AlgElement::zero(&sq.product),
            };
            if lhs != &deltas[p] * &deltas[q] {
                mult_witness = Some(name2(p, q));
                break 'outer;
            }
        }
    }
    components.push(result("coproduct_multiplicative", mult_witness));

    let one_one = h.tensor(&unit, &unit);
    components.push(result(
        "coproduct_unital",
        (h.delta(&unit) != one_one).then(|| "Δ(1) ≠ 1⊗1".to_string()),
    ));

    components.push(result(
        "coproduct_star",
        first_failure(n, |p| deltas[a.basis_star(p)] == deltas[p].star(), name),
    ));

    let eps: Vec<CycQ8> = (0..n).map(|b| h.epsilon(&h.basis(b))).collect();
    let mut char_witness = None;
    if h.epsilon(&unit) != CycQ8::one() {
        char_witness = Some("ε(1) ≠ 1".to_string());
    }
    'outer2: for p in 0..n {
        if char_witness.is_some() {
            break;
        }
        if eps[a.basis_star(p)] != eps[p].conj() {
            char_witness = Some(format!("ε({}*) ≠ conj ε", name(p)));
            break;
        }
        for q in 0..n {
            let lhs = a.basis_product(p, q).map_or_else(CycQ8::zero, |r| eps[r].clone());
            if lhs != &eps[p] * &eps[q] {
                char_witness = Some(name2(p, q));
                break 'outer2;
            }
        }
    }
    components.push(result("counit_star_character", char_witness));

    let full = n * n;
    let left_rank = linalg::sparse_rank(
        full,
        (0..n).flat_map(|x| {
            let xa = AlgElement::basis(a, x);
            let t = h.tensor(&xa, &unit);
            deltas.iter().map(move |d| (&t * d).sparse()).collect::<Vec<_>>()
        }),
    );
    let right_rank = linalg::sparse_rank(
        full,
        (0..n).flat_map(|x| {
            let xa = AlgElement::basis(a, x);
            let t = h.tensor(&unit, &xa);
            deltas.iter().map(move |d| (&t * d).sparse()).collect::<Vec<_>>()
        }),
    );
    components.push(result(
        "cancellation_left",
        (left_rank != full).then(|| format!("rank {left_rank} < {full}")),
    ));
    components.push(result(
        "cancellation_right",
        (right_rank != full).then(|| format!("rank {right_rank} < {full}")),
    ));

    let s2 = h.antipode.matrix().mul(h.antipode.matrix()).expect("square");
    let antipode_squared_is_identity = s2 == Matrix::identity(n);
    let antipode_star_involutive = (0..n).all(|p| {
        let x = h.basis(p);
        h.s(&h.s(&x.star()).star()) == x
    });

    AxiomReport { components, antipode_squared_is_identity, antipode_star_involutive }
}

/// Cancellation-law span rank of {(a⊗1)Δ(b)} over basis pairs.
pub fn cancellation_rank(h: &HopfAlgebra) -> usize {
    let a = &h.algebra;
    let unit = h.unit();
    let deltas: Vec<AlgElement> = (0..a.dim()).map(|b| h.delta(&h.basis(b))).collect();
    linalg::sparse_rank(
        a.dim() * a.dim(),
        (0..a.dim()).flat_map(|x| {
            let t = h.tensor(&AlgElement::basis(a, x), &unit);
            deltas.iter().map(move |d| (&t * d).sparse()).collect::<Vec<_>>()
        }),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismRequirement {
    Hom,
    Surjective,
    Iso,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub components: Vec<AxiomResult>,
    pub rank: usize,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.components.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomResult> {
        self.components.iter().find(|c| !c.passed)
    }
}

pub fn check_hopf_morphism(
    f: &LinearMap,
    h1: &HopfAlgebra,
    h2: &HopfAlgebra,
    require: MorphismRequirement,
) -> MorphismReport {
    let (a1, a2) = (&h1.algebra, &h2.algebra);
    if f.matrix().cols() != a1.dim() || f.matrix().rows() != a2.dim() {
        return MorphismReport {
            components: vec![result("shape", Some("map does not go between these algebras".into()))],
            rank: 0,
        };
    }
    let f = LinearMap::new(a1, a2, f.matrix().clone()).expect("shape checked");
    let n = a1.dim();
    let img: Vec<AlgElement> = (0..n).map(|b| f.image_of_basis(b)).collect();
    let name = |i: usize| a1.describe_basis(i);
    let mut components = Vec::new();

    let mut w = None;
    'outer: for p in 0..n {
        for q in 0..n {
            let lhs = a1.basis_product(p, q).map_or_else(|| AlgElement::zero(a2), |r| img[r].clone());
            if lhs != &img[p] * &img[q] {
                w = Some(format!("({}, {})", name(p), name(q)));
                break 'outer;
            }
        }
    }
    components.push(result("multiplicative", w));
    components.push(result(
        "unital",
        (f.apply(&h1.unit()).expect("shape") != h2.unit()).then(|| "f(1) ≠ 1".to_string()),
    ));
    components.push(result("star", first_failure(n, |p| img[a1.basis_star(p)] == img[p].star(), name)));
    components.push(result(
        "coproduct",
        first_failure(
            n,
            |b| {
                let lhs = LinearMap::apply_tensor(&f, &f, &h1.square, &h2.square, &h1.delta(&h1.basis(b)));
                lhs.coeffs() == h2.delta(&img[b]).coeffs()
            },
            name,
        ),
    ));
    components.push(result("counit", first_failure(n, |b| h2.epsilon(&img[b]) == h1.epsilon(&h1.basis(b)), name)));

    let rank = f.rank();
    match require {
        MorphismRequirement::Hom => {}
        MorphismRequirement::Surjective => components.push(result(
            "surjective",
            (rank != a2.dim()).then(|| format!("rank {rank} < {}", a2.dim())),
        )),
        MorphismRequirement::Iso => components.push(result(
            "bijective",
            (rank != a2.dim() || rank != n).then(|| format!("rank {rank}, dims {n} -> {}", a2.dim())),
        )),
    }
    MorphismReport { components, rank }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutativityFlags {
    pub is_commutative: bool,
    pub is_cocommutative: bool,
    pub noncommutative_witness: Option<(String, String)>,
    pub noncocommutative_witness: Option<String>,
}

pub fn commutativity_flags(h: &HopfAlgebra) -> CommutativityFlags {
    let a = &h.algebra;
    let n = a.dim();
    let mut noncommutative_witness = None;
    'outer: for p in 0..n {
        for q in (p + 1)..n {
            if a.basis_product(p, q) != a.basis_product(q, p) {
                noncommutative_witness = Some((a.describe_basis(p), a.describe_basis(q)));
                break 'outer;
            }
        }
    }
    let noncocommutative_witness =
        (0..n).find(|&b| h.delta_op(&h.basis(b)) != h.delta(&h.basis(b))).map(|b| a.describe_basis(b));
    CommutativityFlags {
        is_commutative: noncommutative_witness.is_none(),
        is_cocommutative: noncocommutative_witness.is_none(),
        noncommutative_witness,
        noncocommutative_witness,
    }
}

/// Transport the structure along an algebra isomorphism given as a basis
/// permutation `perm` (new index of old basis element `i` is `perm[i]`).
pub fn permute_basis(h: &HopfAlgebra, perm: &[usize]) -> Result<HopfAlgebra, HopfError> {
    let a = &h.algebra;
    let n = a.dim();
    let mut p = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p.set(j, i, CycQ8::one());
    }
    let pm = LinearMap::new(a, a, p.clone())?;
    let pinv = LinearMap::new(a, a, p.transpose())?;
    let images: Vec<AlgElement> = (0..n)
        .map(|b| {
            let old = pinv.apply(&h.basis(b)).expect("shape");
            LinearMap::apply_tensor(&pm, &pm, &h.square, &h.square, &h.delta(&old))
        })
        .collect();
    let delta = LinearMap::from_images(a, &h.square.product, &images)?;
    let eps = h.counit.compose(&pinv)?;
    let s = pm.compose(&h.antipode.compose(&pinv)?)?;
    HopfAlgebra::new(a, delta, eps, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// C(Z/2) with Δδ_h = Σ_{k1 k2 = h} δ_{k1}⊗δ_{k2}.
    fn cz2() -> HopfAlgebra {
        let a = MultiMatrixAlgebra::new(vec![1, 1]).unwrap();
        let sq = tensor_layout(&a, &a);
        let images: Vec<_> = (0..2)
            .map(|h| {
                let mut v = AlgElement::zero(&sq.product);
                for k1 in 0..2 {
                    let k2 = (h + k1) % 2;
                    v = v + sq.basis_pair(k1, k2);
                }
                v
            })
            .collect();
        HopfAlgebra::from_coproduct_images(&a, &images).unwrap()
    }

    #[test]
    fn z2_function_algebra_passes() {
        let h = cz2();
        let r = verify_hopf_axioms(&h);
        assert!(r.passed(), "{r:?}");
        assert!(r.antipode_squared_is_identity);
        assert_eq!(h.epsilon(&h.basis(0)), CycQ8::one());
        assert_eq!(h.epsilon(&h.basis(1)), CycQ8::zero());
        assert_eq!(h.s(&h.basis(1)), h.basis(1));
        let f = commutativity_flags(&h);
        assert!(f.is_commutative && f.is_cocommutative);
    }

    #[test]
    fn identity_is_iso() {
        let h = cz2();
        let r = check_hopf_morphism(&LinearMap::identity(h.algebra()), &h, &h, MorphismRequirement::Iso);
        assert!(r.passed());
    }

    #[test]
    fn collapse_to_counit_is_a_hom_but_not_iso() {
        let h = cz2();
        let a = h.algebra();
        let images: Vec<_> = (0..2).map(|b| AlgElement::unit(a).scale(&h.epsilon(&h.basis(b)))).collect();
        let f = LinearMap::from_images(a, a, &images).unwrap();
        assert!(check_hopf_morphism(&f, &h, &h, MorphismRequirement::Hom).passed());
        let iso = check_hopf_morphism(&f, &h, &h, MorphismRequirement::Iso);
        assert_eq!(iso.first_failure().map(|c| c.name), Some("bijective"));
    }

    #[test]
    fn non_coproduct_has_no_counit() {
        let a = MultiMatrixAlgebra::new(vec![1, 1]).unwrap();
        let sq = tensor_layout(&a, &a);
        let zero = LinearMap::new(&a, &sq.product, Matrix::zeros(4, 2)).unwrap();
        assert!(matches!(HopfAlgebra::from_coproduct(&a, zero), Err(HopfError::NoSolution(_))));
    }

    #[test]
    fn json_roundtrip() {
        let h = cz2();
        let s = h.to_json_string();
        let back = HopfAlgebra::from_json_str(&s).unwrap();
        assert_eq!(back.to_json_string(), s);
    }
}
