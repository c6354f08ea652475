//! Concrete models: the Kac–Paljutkin algebra C(G_KP), the group Ṽ ⊂ SU(2)
//! and the graded twist C(Ṽ)^{t,α}, the isomorphism Φ between them, and the
//! generator images u′_ij that witness the quotient of C(SU₋₁(2)).
//!
//! Coproduct formulas are entered term by term as displayed; counit and
//! antipode are solved.

use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::CycQ8;
use crate::group::{
    conjugation_action, generate_group, graded_twist, realize, smash_product, subgroup_conditions, CentralGrading,
    FiniteMatrixGroup, GroupAction2, GroupError, NaturalSmash, Realization, SubgroupConditions,
};
use crate::hopf::{check_hopf_morphism, verify_hopf_axioms, HopfAlgebra, HopfError, MorphismReport, MorphismRequirement};
use crate::linalg::Matrix;
use crate::multimatrix::{span_rank, tensor_layout, AlgElement, LinearMap, MultiMatrixAlgebra, TensorLayout};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("{0}")]
    Mismatch(String),
}

pub const EPS: usize = 0;
pub const ALPHA: usize = 1;
pub const BETA: usize = 2;
pub const GAMMA: usize = 3;
/// Block index of the M₂ summand.
pub const MBLOCK: usize = 4;

pub fn c(n: i64) -> CycQ8 {
    CycQ8::from_int(n)
}

pub fn mat2(a: CycQ8, b: CycQ8, c: CycQ8, d: CycQ8) -> Matrix {
    Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

fn i() -> CycQ8 {
    CycQ8::i()
}

pub fn u_alpha() -> Matrix {
    mat2(c(0), i(), c(1), c(0))
}

pub fn u_beta() -> Matrix {
    mat2(c(0), c(1), i(), c(0))
}

pub fn u_gamma() -> Matrix {
    mat2(c(-1), c(0), c(0), c(1))
}

pub fn w_alpha_p() -> Matrix {
    mat2(c(-1), c(0), c(0), c(1))
}

pub fn w_beta_p() -> Matrix {
    mat2(c(0), c(1), i(), c(0))
}

pub fn w_gamma_p() -> Matrix {
    mat2(c(0), -i(), c(-1), c(0))
}

pub fn v_unitary() -> Matrix {
    mat2(c(-1), c(0), c(0), i())
}

pub fn s1() -> Matrix {
    let r = CycQ8::inv_sqrt2();
    mat2(&i() * &r, &i() * &r, &i() * &r, -(&i() * &r))
}

pub fn s2() -> Matrix {
    let r = CycQ8::inv_sqrt2();
    mat2(-(&i() * &r), &i() * &r, &i() * &r, &i() * &r)
}

pub fn s3() -> Matrix {
    mat2(c(0), c(-1), c(1), c(0))
}

pub fn action_unitary() -> Matrix {
    mat2(i(), c(0), c(0), -i())
}

pub fn minus(m: &Matrix) -> Matrix {
    m.scale(&c(-1))
}

fn ad(u: &Matrix, x: &Matrix) -> Matrix {
    u.mul(x).and_then(|y| y.mul(&u.adjoint())).expect("2x2")
}

pub fn kp_algebra(primed: bool) -> Arc<MultiMatrixAlgebra> {
    let names: [&str; 5] = if primed { ["ε", "α′", "β′", "γ′", "M"] } else { ["ε", "α", "β", "γ", "M"] };
    MultiMatrixAlgebra::with_labels(vec![1, 1, 1, 1, 2], names.iter().map(|s| s.to_string()).collect()).expect("valid")
}

/// Index of the matrix unit e_{ij} (1-based as printed) in the KP-shaped algebra.
pub fn e(i: usize, j: usize) -> usize {
    4 + 2 * (i - 1) + (j - 1)
}

/// One displayed term `coeff · x ⊗ y` on basis indices.
type Term = (usize, usize, CycQ8);

fn half(t: CycQ8) -> CycQ8 {
    t * CycQ8::frac(1, 2)
}

/// The four displays for the one-dimensional blocks, in the order
/// (first, second, third, fourth) of the printed formulas, as term lists.
/// `kp = true` gives the C(G_KP) display, otherwise the twisted one.
fn one_dim_terms(kp: bool) -> [Vec<Term>; 4] {
    let pair = |a: usize, b: usize| (a, b, c(1));
    let diag_all = |s: i64| {
        vec![
            (e(1, 1), e(1, 1), half(c(1))),
            (e(1, 2), e(1, 2), half(c(s))),
            (e(2, 1), e(2, 1), half(c(s))),
            (e(2, 2), e(2, 2), half(c(1))),
        ]
    };
    let cross = |s: i64| {
        vec![
            (e(1, 1), e(2, 2), half(c(1))),
            (e(1, 2), e(2, 1), half(i().scale(&crate::cyclotomic::rat(s, 1)))),
            (e(2, 1), e(1, 2), half(i().scale(&crate::cyclotomic::rat(-s, 1)))),
            (e(2, 2), e(1, 1), half(c(1))),
        ]
    };
    let with = |mut head: Vec<Term>, tail: Vec<Term>| {
        head.extend(tail);
        head
    };
    let d_eps = vec![pair(EPS, EPS), pair(ALPHA, ALPHA), pair(BETA, BETA), pair(GAMMA, GAMMA)];
    let d_alpha = vec![pair(EPS, ALPHA), pair(ALPHA, EPS), pair(BETA, GAMMA), pair(GAMMA, BETA)];
    let d_beta = vec![pair(EPS, BETA), pair(BETA, EPS), pair(ALPHA, GAMMA), pair(GAMMA, ALPHA)];
    let d_gamma = vec![pair(EPS, GAMMA), pair(GAMMA, EPS), pair(ALPHA, BETA), pair(BETA, ALPHA)];
    if kp {
        [with(d_eps, diag_all(1)), with(d_alpha, cross(1)), with(d_beta, cross(-1)), with(d_gamma, diag_all(-1))]
    } else {
        [with(d_eps, diag_all(-1)), with(d_alpha, diag_all(1)), with(d_beta, cross(1)), with(d_gamma, cross(-1))]
    }
}

/// Δ(x) = ε⊗x + Σ_k δ_k⊗u_k x u_k* + x⊗ε + Σ_k ū_k x ū_k*⊗δ_k for x ∈ M₂.
fn m2_coproduct(alg: &Arc<MultiMatrixAlgebra>, sq: &TensorLayout, x: &Matrix, us: &[Matrix; 3]) -> AlgElement {
    let xe = AlgElement::in_block(alg, MBLOCK, x);
    let eps = AlgElement::basis(alg, EPS);
    let mut out = sq.tensor_elements(&eps, &xe) + sq.tensor_elements(&xe, &eps);
    for (k, u) in us.iter().enumerate() {
        let dk = AlgElement::basis(alg, k + 1);
        let right = AlgElement::in_block(alg, MBLOCK, &ad(u, x));
        let left = AlgElement::in_block(alg, MBLOCK, &ad(&u.conj(), x));
        out = out + sq.tensor_elements(&dk, &right) + sq.tensor_elements(&left, &dk);
    }
    out
}

/// Coproduct images of the KP-shaped basis from the displayed formulas.
pub fn displayed_coproduct(alg: &Arc<MultiMatrixAlgebra>, kp: bool, us: &[Matrix; 3]) -> Vec<AlgElement> {
    let sq = tensor_layout(alg, alg);
    let mut images: Vec<AlgElement> = one_dim_terms(kp)
        .into_iter()
        .map(|terms| {
            let mut v = AlgElement::zero(&sq.product);
            for (a, b, coef) in terms {
                v = v + sq.basis_pair(a, b).scale(&coef);
            }
            v
        })
        .collect();
    for idx in 4..8 {
        let (_, r, col) = alg.basis_coords(idx);
        let mut x = Matrix::zeros(2, 2);
        x.set(r, col, CycQ8::one());
        images.push(m2_coproduct(alg, &sq, &x, us));
    }
    images
}

#[derive(Debug, Clone)]
pub struct KPModel {
    pub hopf: HopfAlgebra,
    pub u_alpha: Matrix,
    pub u_beta: Matrix,
    pub u_gamma: Matrix,
}

impl KPModel {
    pub fn element(&self, idx: usize) -> AlgElement {
        self.hopf.basis(idx)
    }

    pub fn m2(&self, x: &Matrix) -> AlgElement {
        AlgElement::in_block(self.hopf.algebra(), MBLOCK, x)
    }
}

pub fn build_kp() -> Result<KPModel, ModelError> {
    let alg = kp_algebra(false);
    let us = [u_alpha(), u_beta(), u_gamma()];
    let images = displayed_coproduct(&alg, true, &us);
    let hopf = HopfAlgebra::from_coproduct_images(&alg, &images)?;
    let report = verify_hopf_axioms(&hopf);
    if let Some(f) = report.first_failure() {
        return Err(ModelError::Mismatch(format!("C(G_KP) fails {}: {:?}", f.name, f.witness)));
    }
    let [u_alpha, u_beta, u_gamma] = us;
    Ok(KPModel { hopf, u_alpha, u_beta, u_gamma })
}

/// Ṽ with its action and named elements.
#[derive(Debug, Clone)]
pub struct VTilde {
    pub group: FiniteMatrixGroup,
    pub theta: GroupAction2,
    pub grading: CentralGrading,
}

impl VTilde {
    /// Index of a named element: "I", "s1", "-s2", ...
    pub fn idx(&self, name: &str) -> usize {
        let (neg, base) = name.strip_prefix('-').map_or((false, name), |b| (true, b));
        let m = match base {
            "I" => Matrix::identity(2),
            "s1" => s1(),
            "s2" => s2(),
            "s3" => s3(),
            _ => panic!("unknown element {name}"),
        };
        let m = if neg { minus(&m) } else { m };
        self.group.index_of(&m).expect("element of Ṽ")
    }

    pub fn name(&self, h: usize) -> String {
        for base in ["I", "s1", "s2", "s3"] {
            for neg in ["", "-"] {
                let n = format!("{neg}{base}");
                if self.idx(&n) == h {
                    return n;
                }
            }
        }
        format!("h{h}")
    }
}

pub fn build_vtilde() -> Result<VTilde, ModelError> {
    let group = generate_group(&[s1(), s2(), s3()], 64)?;
    let theta = conjugation_action(&group, &action_unitary())?;
    let grading = CentralGrading::new(&group, &minus(&Matrix::identity(2)))?;
    Ok(VTilde { group, theta, grading })
}

#[derive(Debug, Clone)]
pub struct TwistModel {
    pub vtilde: VTilde,
    /// Realization with the primed basis (ε, α′, β′, γ′, M₂).
    pub twist: Realization,
    /// The construction's own Wedderburn basis, before relabeling.
    pub generic: Realization,
    pub w_alpha: Matrix,
    pub w_beta: Matrix,
    pub w_gamma: Matrix,
    pub v: Matrix,
}

impl TwistModel {
    pub fn hopf(&self) -> &HopfAlgebra {
        &self.twist.hopf
    }

    pub fn natural(&self) -> &NaturalSmash {
        &self.twist.natural
    }

    /// δ_h ± δ_{-h} as a function on Ṽ.
    pub fn pm(&self, name: &str, sign: i64) -> Vec<CycQ8> {
        let n = self.vtilde.group.order();
        let h = self.vtilde.idx(name);
        let zh = self.vtilde.grading.partner(h);
        let mut f = vec![CycQ8::zero(); n];
        f[h] += &c(1);
        f[zh] += &c(sign);
        f
    }

    /// (δ_h + δ_{-h}) in natural coordinates.
    pub fn even(&self, name: &str) -> Vec<CycQ8> {
        self.natural().with_lambda(&self.pm(name, 1), 0)
    }

    /// (δ_h − δ_{-h})λ in natural coordinates.
    pub fn odd_lambda(&self, name: &str) -> Vec<CycQ8> {
        self.natural().with_lambda(&self.pm(name, -1), 1)
    }
}

/// Source combinations and their displayed images, for the relabeling.
fn relabel_table(t: &TwistModel, alg: &Arc<MultiMatrixAlgebra>) -> Vec<(Vec<CycQ8>, AlgElement)> {
    let b = |k: usize| AlgElement::basis(alg, k);
    vec![
        (t.even("s1"), b(e(1, 1))),
        (t.even("s2"), b(e(2, 2))),
        (t.even("s3"), b(BETA) + b(GAMMA)),
        (t.even("I"), b(EPS) + b(ALPHA)),
        (t.odd_lambda("s1"), -b(e(1, 2))),
        (t.odd_lambda("s2"), b(e(2, 1))),
        (t.odd_lambda("s3"), (b(BETA) - b(GAMMA)).scale(&i())),
        (t.odd_lambda("I"), b(EPS) - b(ALPHA)),
    ]
}

pub fn build_vtilde_twist() -> Result<TwistModel, ModelError> {
    let vtilde = build_vtilde()?;
    let generic = graded_twist(&vtilde.group, &vtilde.grading, &vtilde.theta)?;
    if generic.hopf.dim() != 8 {
        return Err(ModelError::Mismatch(format!("twist has dimension {}", generic.hopf.dim())));
    }
    let mut model = TwistModel {
        vtilde,
        twist: generic.clone(),
        generic,
        w_alpha: w_alpha_p(),
        w_beta: w_beta_p(),
        w_gamma: w_gamma_p(),
        v: v_unitary(),
    };

    // Invert the displayed relabeling: E = Src · Tgt⁻¹.
    let alg = kp_algebra(true);
    let table = relabel_table(&model, &alg);
    let nd = model.natural().dim();
    let src = Matrix::from_columns(nd, &table.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>());
    let tgt = Matrix::from_columns(8, &table.iter().map(|(_, t)| t.coeffs().to_vec()).collect::<Vec<_>>());
    let tgt_inv = tgt.inverse().map_err(|e| ModelError::Mismatch(format!("relabeling not invertible: {e}")))?;
    let embed = src.mul(&tgt_inv).expect("shapes");
    let twist = realize(model.generic.natural.clone(), &alg, embed)?;

    // Same subspace as the construction's own basis.
    for j in 0..8 {
        let col = twist.embed.column(j);
        if !model.generic.contains(&col) {
            return Err(ModelError::Mismatch(format!("relabeled basis vector {} is outside the twist", alg.describe_basis(j))));
        }
    }

    let us = [model.w_alpha.clone(), model.w_beta.clone(), model.w_gamma.clone()];
    let expected = displayed_coproduct(&alg, false, &us);
    if let Some(msg) = first_coproduct_mismatch(&twist.hopf, &expected) {
        return Err(ModelError::Mismatch(msg));
    }
    model.twist = twist;
    Ok(model)
}

/// First coefficient where Δ differs from the expected images.
pub fn first_coproduct_mismatch(h: &HopfAlgebra, expected: &[AlgElement]) -> Option<String> {
    let alg = h.algebra();
    let sq = h.square();
    for (b, exp) in expected.iter().enumerate() {
        let got = h.delta(&h.basis(b));
        for r in 0..sq.product.dim() {
            if got.coeff(r) != exp.coeff(r) {
                let (p, q) = sq.split(r);
                return Some(format!(
                    "Δ({}) coefficient of {}⊗{}: computed {}, displayed {}",
                    alg.describe_basis(b),
                    alg.describe_basis(p),
                    alg.describe_basis(q),
                    got.coeff(r),
                    exp.coeff(r)
                ));
            }
        }
    }
    None
}

/// The untwisted smash product C(Ṽ) ⋊ Z/2.
pub fn build_vtilde_smash() -> Result<Realization, ModelError> {
    let v = build_vtilde()?;
    Ok(smash_product(&v.group, &v.theta)?)
}

pub fn vtilde_subgroup_conditions() -> Result<(SubgroupConditions, String), ModelError> {
    let v = build_vtilde()?;
    let cond = subgroup_conditions(&v.group, &action_unitary());
    let witness = cond.abcd_witness.map(|h| v.name(h)).unwrap_or_default();
    Ok((cond, witness))
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop7Witnesses {
    /// (δ_{s1}+δ_{-s1})(δ_{s2}−δ_{-s2})λ = 0.
    pub left_product_zero: bool,
    /// (δ_{s2}−δ_{-s2})λ(δ_{s1}+δ_{-s1}) = (δ_{s2}−δ_{-s2})λ ≠ 0.
    pub right_product_equals_odd: bool,
    /// λ δ_{s1} = δ_{-s2} λ.
    pub lambda_commutation: bool,
    /// Δ ≠ Δ^op on (δ_{s3}−δ_{-s3})λ.
    pub delta_differs_from_op: bool,
    /// Δ((δ_{s3}−δ_{-s3})λ) equals o_{s1}⊗o_{s2} − o_{s2}⊗o_{s1} + o_{s3}⊗o_I + o_I⊗o_{s3}, all times λ⊗λ.
    pub expansion_matches: bool,
    /// The same with the final term read as o_I⊗o_{s1}, as literally printed.
    pub literal_expansion_matches: bool,
    pub witnesses_in_twist: bool,
}

impl Prop7Witnesses {
    pub fn holds(&self) -> bool {
        self.left_product_zero
            && self.right_product_equals_odd
            && self.lambda_commutation
            && self.delta_differs_from_op
            && self.expansion_matches
            && self.witnesses_in_twist
    }
}

pub fn prop7_witnesses(t: &TwistModel) -> Prop7Witnesses {
    let nat = t.natural();
    let x = t.even("s1");
    let y = t.odd_lambda("s2");
    let left_product_zero = nat.mul(&x, &y).iter().all(CycQ8::is_zero);
    let right = nat.mul(&y, &x);
    let right_product_equals_odd = right == y && !y.iter().all(CycQ8::is_zero);

    let lam = nat.lambda();
    let d_s1 = nat.delta_fn(t.vtilde.idx("s1"));
    let d_ms2 = nat.delta_fn(t.vtilde.idx("-s2"));
    let lambda_commutation = nat.mul(&lam, &d_s1) == nat.mul(&d_ms2, &lam);

    let w = t.odd_lambda("s3");
    let dw = nat.delta(&w);
    let delta_differs_from_op = nat.flip(&dw) != dw;
    let o = |n: &str| t.odd_lambda(n);
    let sum = |terms: &[(i64, &str, &str)]| {
        let mut acc = vec![CycQ8::zero(); nat.dim() * nat.dim()];
        for (s, a, b) in terms {
            for (x, y) in acc.iter_mut().zip(nat.tensor(&o(a), &o(b))) {
                *x += &(&y * &c(*s));
            }
        }
        acc
    };
    let expansion_matches = sum(&[(1, "s1", "s2"), (-1, "s2", "s1"), (1, "s3", "I"), (1, "I", "s3")]) == dw;
    let literal_expansion_matches = sum(&[(1, "s1", "s2"), (-1, "s2", "s1"), (1, "s3", "I"), (1, "I", "s1")]) == dw;
    let witnesses_in_twist = t.twist.contains(&x) && t.twist.contains(&y) && t.twist.contains(&w);
    Prop7Witnesses {
        left_product_zero,
        right_product_equals_odd,
        lambda_commutation,
        delta_differs_from_op,
        expansion_matches,
        literal_expansion_matches,
        witnesses_in_twist,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiReport {
    #[serde(skip)]
    pub phi: LinearMap,
    pub morphism: MorphismReport,
    /// v w_{α′} v* = u_γ, v w_{β′} v* = u_α, v w_{γ′} v* = u_β.
    pub unitary_identities: [bool; 3],
    /// Δ_gr(ε, α′, β′, γ′) mapped by Φ⊗Φ equals Δ_KP(ε, γ, α, β).
    pub one_dim_coincidences: [bool; 4],
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.morphism.passed() && self.unitary_identities.iter().all(|&b| b) && self.one_dim_coincidences.iter().all(|&b| b)
    }
}

pub fn build_phi(kp: &KPModel, t: &TwistModel) -> LinearMap {
    let src = t.hopf().algebra();
    let tgt = kp.hopf.algebra();
    let mut images: Vec<AlgElement> = [EPS, GAMMA, ALPHA, BETA].iter().map(|&k| AlgElement::basis(tgt, k)).collect();
    for idx in 4..8 {
        let (_, r, col) = src.basis_coords(idx);
        let mut x = Matrix::zeros(2, 2);
        x.set(r, col, CycQ8::one());
        images.push(AlgElement::in_block(tgt, MBLOCK, &ad(&t.v, &x)));
    }
    LinearMap::from_images(src, tgt, &images).expect("dimensions")
}

pub fn build_phi_and_verify(kp: &KPModel, t: &TwistModel) -> PhiReport {
    let phi = build_phi(kp, t);
    let morphism = check_hopf_morphism(&phi, t.hopf(), &kp.hopf, MorphismRequirement::Iso);
    let unitary_identities = [
        ad(&t.v, &t.w_alpha) == kp.u_gamma,
        ad(&t.v, &t.w_beta) == kp.u_alpha,
        ad(&t.v, &t.w_gamma) == kp.u_beta,
    ];
    let mut one_dim_coincidences = [false; 4];
    for (slot, (src, dst)) in [(EPS, EPS), (ALPHA, GAMMA), (BETA, ALPHA), (GAMMA, BETA)].into_iter().enumerate() {
        let lhs = LinearMap::apply_tensor(&phi, &phi, t.hopf().square(), kp.hopf.square(), &t.hopf().delta(&t.hopf().basis(src)));
        one_dim_coincidences[slot] = lhs.coeffs() == kp.hopf.delta(&kp.hopf.basis(dst)).coeffs();
    }
    PhiReport { phi, morphism, unitary_identities, one_dim_coincidences }
}

/// 2x2 matrix of algebra elements.
pub type ElemMatrix = [[AlgElement; 2]; 2];

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub unitary: bool,
    /// u₂₂ = u₁₁*, u₁₂ = u₂₁*, i.e. U = F U^c F⁻¹ with F = [[0,1],[1,0]].
    pub f_relation: bool,
    pub comultiplicative: bool,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.unitary && self.f_relation && self.comultiplicative
    }
}

pub fn check_su2m1_relations(h: &HopfAlgebra, u: &ElemMatrix) -> RelationReport {
    let one = h.unit();
    let zero = AlgElement::zero(h.algebra());
    let mut unitary = true;
    for a in 0..2 {
        for b in 0..2 {
            let expect = if a == b { &one } else { &zero };
            let uu_star = &(&u[a][0] * &u[b][0].star()) + &(&u[a][1] * &u[b][1].star());
            let u_star_u = &(&u[0][a].star() * &u[0][b]) + &(&u[1][a].star() * &u[1][b]);
            unitary &= &uu_star == expect && &u_star_u == expect;
        }
    }
    // (F U^c F⁻¹)_{ij} = u_{σi,σj}* with σ the swap.
    let f_relation = (0..2).all(|a| (0..2).all(|b| u[a][b] == u[1 - a][1 - b].star()));
    let comultiplicative = (0..2).all(|a| {
        (0..2).all(|b| {
            let rhs = &h.tensor(&u[a][0], &u[0][b]) + &h.tensor(&u[a][1], &u[1][b]);
            h.delta(&u[a][b]) == rhs
        })
    });
    RelationReport { unitary, f_relation, comultiplicative }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorImages {
    #[serde(skip)]
    pub u_prime: ElemMatrix,
    #[serde(skip)]
    pub u_kp: ElemMatrix,
    pub in_twist: bool,
    pub in_odd_component: bool,
    pub twist_relations: RelationReport,
    pub kp_relations: RelationReport,
    /// Rank of the span of words of length ≤ L, for L = 0, 1, 2, ... until it stabilizes.
    pub word_ranks: Vec<usize>,
    pub rank_at_length_3: usize,
    pub surjective: bool,
}

impl GeneratorImages {
    pub fn holds(&self) -> bool {
        self.in_twist && self.in_odd_component && self.twist_relations.holds() && self.kp_relations.holds() && self.surjective
    }
}

/// u′_ij = (Σ_h h_ij δ_h)λ in natural coordinates.
pub fn u_prime_natural(t: &TwistModel, a: usize, b: usize) -> Vec<CycQ8> {
    let f: Vec<CycQ8> = t.vtilde.group.elements().iter().map(|m| m.get(a, b).clone()).collect();
    t.natural().with_lambda(&f, 1)
}

/// Ranks of spans of words of length ≤ L until two consecutive lengths agree.
pub fn word_span_ranks(gens: &[AlgElement], max_len: usize) -> Vec<usize> {
    let Some(g0) = gens.first() else { return vec![] };
    let alg = g0.algebra().clone();
    let mut all = vec![AlgElement::unit(&alg)];
    let mut frontier = vec![AlgElement::unit(&alg)];
    let mut ranks = vec![span_rank(&all)];
    for _ in 0..max_len {
        frontier = frontier.iter().flat_map(|w| gens.iter().map(move |g| w * g)).filter(|w| !w.is_zero()).collect();
        frontier.dedup();
        all.extend(frontier.iter().cloned());
        ranks.push(span_rank(&all));
        let k = ranks.len();
        if ranks[k - 1] == ranks[k - 2] && k > 2 {
            break;
        }
    }
    ranks
}

pub fn fundamental_images_and_su2m1_check(kp: &KPModel, t: &TwistModel) -> Result<GeneratorImages, ModelError> {
    let mut in_twist = true;
    let mut in_odd_component = true;
    let mut elems = Vec::new();
    let n = t.vtilde.group.order();
    for a in 0..2 {
        for b in 0..2 {
            let nat = u_prime_natural(t, a, b);
            in_odd_component &= nat[..n].iter().all(CycQ8::is_zero)
                && (0..n).all(|h| nat[n + h] == -nat[n + t.vtilde.grading.partner(h)].clone());
            match t.twist.from_natural(&nat) {
                Ok(x) => elems.push(x),
                Err(_) => {
                    in_twist = false;
                    elems.push(AlgElement::zero(t.hopf().algebra()));
                }
            }
        }
    }
    let u_prime: ElemMatrix = [[elems[0].clone(), elems[1].clone()], [elems[2].clone(), elems[3].clone()]];
    let twist_relations = check_su2m1_relations(t.hopf(), &u_prime);
    let phi = build_phi(kp, t);
    let map = |x: &AlgElement| phi.apply(x).expect("dimension");
    let u_kp: ElemMatrix = [[map(&u_prime[0][0]), map(&u_prime[0][1])], [map(&u_prime[1][0]), map(&u_prime[1][1])]];
    let kp_relations = check_su2m1_relations(&kp.hopf, &u_kp);
    let word_ranks = word_span_ranks(&elems, 12);
    let rank_at_length_3 = word_ranks.get(3).or(word_ranks.last()).copied().unwrap_or(0);
    let surjective = word_ranks.last() == Some(&kp.hopf.dim());
    Ok(GeneratorImages {
        u_prime,
        u_kp,
        in_twist,
        in_odd_component,
        twist_relations,
        kp_relations,
        word_ranks,
        rank_at_length_3,
        surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::commutativity_flags;

    #[test]
    fn kp_gamma_coefficient() {
        let kp = build_kp().unwrap();
        let h = &kp.hopf;
        let dg = h.delta(&h.basis(GAMMA));
        let idx = h.square().index(e(1, 2), e(1, 2));
        assert_eq!(dg.coeff(idx), &CycQ8::frac(-1, 2));
        assert_eq!(h.epsilon(&h.basis(EPS)), CycQ8::one());
        for k in 1..8 {
            assert!(h.epsilon(&h.basis(k)).is_zero());
        }
    }

    #[test]
    fn kp_flags() {
        let kp = build_kp().unwrap();
        let f = commutativity_flags(&kp.hopf);
        assert!(!f.is_commutative && !f.is_cocommutative);
    }

    #[test]
    fn vtilde_has_order_eight_and_printed_action() {
        let v = build_vtilde().unwrap();
        assert_eq!(v.group.order(), 8);
        assert_eq!(s1().mul(&s2()).unwrap(), s3());
        for (x, y) in [("s1", "-s2"), ("s2", "-s1"), ("s3", "-s3"), ("I", "I")] {
            assert_eq!(v.theta.apply(v.idx(x)), v.idx(y));
        }
    }

    #[test]
    fn twist_relabeling_matches_display() {
        let t = build_vtilde_twist().unwrap();
        let h = t.hopf();
        let idx = h.square().index(e(1, 2), e(1, 2));
        assert_eq!(h.delta(&h.basis(EPS)).coeff(idx), &CycQ8::frac(-1, 2));
        // δ_{s1}+δ_{-s1} is the (1,1) matrix unit.
        assert_eq!(t.twist.from_natural(&t.even("s1")).unwrap(), h.basis(e(1, 1)));
    }

    #[test]
    fn phi_sends_alpha_prime_to_gamma() {
        let kp = build_kp().unwrap();
        let t = build_vtilde_twist().unwrap();
        let phi = build_phi(&kp, &t);
        assert_eq!(phi.apply(&t.hopf().basis(ALPHA)).unwrap(), kp.hopf.basis(GAMMA));
        assert_eq!(ad(&t.v, &t.w_alpha), u_gamma());
    }

    #[test]
    fn u11_vanishes_at_s3() {
        let t = build_vtilde_twist().unwrap();
        let nat = u_prime_natural(&t, 0, 0);
        let n = t.vtilde.group.order();
        assert!(nat[n + t.vtilde.idx("s3")].is_zero());
    }
}
