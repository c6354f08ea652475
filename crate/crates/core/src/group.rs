//! Finite matrix groups over Q(ζ₈) and the constructions built on their
//! function algebras: conjugation actions of Z/2, the smash product
//! C(G) ⋊ Z/2 and its graded twist by a central element of order two.
//!
//! Smash-product elements are handled in "natural" coordinates: the vector
//! index of δ_h λ^k is `k·|G| + h`. Each construction then picks images of
//! matrix units in natural coordinates and [`realize`] turns that embedding
//! into a standalone multimatrix Hopf algebra.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycQ8;
use crate::hopf::{check_hopf_morphism, HopfAlgebra, HopfError, MorphismRequirement};
use crate::linalg::{Echelon, Matrix};
use crate::multimatrix::{tensor_layout, AlgElement, LinearMap, MultiMatrixAlgebra};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {0}")]
    CapExceeded(usize),
    #[error("generator {0} is not a unitary 2x2 matrix")]
    NotUnitary(usize),
    #[error("generator {0} does not have determinant 1")]
    NotUnimodular(usize),
    #[error("conjugation does not map the group onto itself (element {0})")]
    NotStable(usize),
    #[error("the action does not square to the identity")]
    NotInvolutive,
    #[error("grading element: {0}")]
    Grading(String),
    #[error("the action does not act by Hopf automorphisms: {0}")]
    NotHopfAutomorphism(String),
    #[error("subspace not closed: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("model file: {0}")]
    Model(String),
}

fn det2(m: &Matrix) -> CycQ8 {
    m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)
}

#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    elements: Vec<Matrix>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// Every row and column of the table is a permutation.
    pub fn is_latin_square(&self) -> bool {
        let n = self.order();
        let perm = |v: &mut Vec<usize>| {
            v.sort_unstable();
            v.iter().copied().eq(0..n)
        };
        (0..n).all(|a| perm(&mut self.table[a].clone()) && perm(&mut (0..n).map(|b| self.table[b][a]).collect()))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.order()).all(|h| self.table[z][h] == self.table[h][z])
    }
}

/// Breadth-first closure of the generators under right multiplication.
pub fn generate_group(generators: &[Matrix], cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
    for (i, g) in generators.iter().enumerate() {
        if g.rows() != 2 || g.cols() != 2 || !g.is_unitary() {
            return Err(GroupError::NotUnitary(i));
        }
        if !det2(g).is_one() {
            return Err(GroupError::NotUnimodular(i));
        }
    }
    let id = Matrix::identity(2);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = elements[x].mul(g).expect("2x2");
            if !elements.contains(&y) {
                if elements.len() == cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                elements.push(y);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = elements[a].mul(&elements[b]).expect("2x2");
            table[a][b] = elements.iter().position(|e| *e == p).expect("closed under products");
        }
    }
    let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("finite group")).collect();
    Ok(FiniteMatrixGroup { elements, table, inverse, identity: 0 })
}

/// C(G) with basis δ_h, one 1x1 block per group element.
pub fn function_algebra(g: &FiniteMatrixGroup) -> Result<HopfAlgebra, GroupError> {
    let n = g.order();
    let a = MultiMatrixAlgebra::new(vec![1; n]).expect("positive sizes");
    let sq = tensor_layout(&a, &a);
    let mut images = vec![AlgElement::zero(&sq.product); n];
    for k1 in 0..n {
        for k2 in 0..n {
            let h = g.mul(k1, k2);
            images[h] = &images[h] + &sq.basis_pair(k1, k2);
        }
    }
    Ok(HopfAlgebra::from_coproduct_images(&a, &images)?)
}

/// Z/2 action h ↦ u h u* on a finite matrix group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAction2 {
    perm: Vec<usize>,
    unitary: Matrix,
}

impl GroupAction2 {
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, h: usize) -> usize {
        self.perm[h]
    }

    pub fn unitary(&self) -> &Matrix {
        &self.unitary
    }

    pub fn is_trivial(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// The induced automorphism δ_h ↦ δ_{θ(h)} of C(G).
    pub fn automorphism(&self, a: &HopfAlgebra) -> LinearMap {
        let alg = a.algebra();
        let images: Vec<AlgElement> = self.perm.iter().map(|&p| AlgElement::basis(alg, p)).collect();
        LinearMap::from_images(alg, alg, &images).expect("permutation")
    }
}

pub fn conjugation_action(g: &FiniteMatrixGroup, u: &Matrix) -> Result<GroupAction2, GroupError> {
    if u.rows() != 2 || u.cols() != 2 || !u.is_unitary() {
        return Err(GroupError::NotUnitary(0));
    }
    let ustar = u.adjoint();
    let mut perm = Vec::with_capacity(g.order());
    for (h, m) in g.elements().iter().enumerate() {
        let c = u.mul(m).and_then(|x| x.mul(&ustar)).expect("2x2");
        perm.push(g.index_of(&c).ok_or(GroupError::NotStable(h))?);
    }
    if (0..perm.len()).any(|h| perm[perm[h]] != h) {
        return Err(GroupError::NotInvolutive);
    }
    Ok(GroupAction2 { perm, unitary: u.clone() })
}

/// Z/2 grading of C(G) by a central element z with z² = e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralGrading {
    z: usize,
    shift: Vec<usize>,
}

impl CentralGrading {
    pub fn new(g: &FiniteMatrixGroup, z: &Matrix) -> Result<Self, GroupError> {
        let zi = g.index_of(z).ok_or_else(|| GroupError::Grading("not a group element".into()))?;
        if !g.is_central(zi) {
            return Err(GroupError::Grading("not central".into()));
        }
        if g.mul(zi, zi) != g.identity() {
            return Err(GroupError::Grading("does not square to the identity".into()));
        }
        Ok(CentralGrading { z: zi, shift: (0..g.order()).map(|h| g.mul(zi, h)).collect() })
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn is_trivial(&self) -> bool {
        self.shift.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// z·h.
    pub fn partner(&self, h: usize) -> usize {
        self.shift[h]
    }

    /// Even basis vectors δ_h + δ_{zh} (one per coset, smaller index first).
    pub fn even_basis(&self) -> Vec<Vec<CycQ8>> {
        self.coset_reps().into_iter().map(|h| self.combo(h, 1)).collect()
    }

    /// Odd basis vectors δ_h − δ_{zh}; empty when z is the identity.
    pub fn odd_basis(&self) -> Vec<Vec<CycQ8>> {
        if self.is_trivial() {
            return Vec::new();
        }
        self.coset_reps().into_iter().map(|h| self.combo(h, -1)).collect()
    }

    pub fn coset_reps(&self) -> Vec<usize> {
        (0..self.shift.len()).filter(|&h| h <= self.shift[h]).collect()
    }

    fn combo(&self, h: usize, sign: i64) -> Vec<CycQ8> {
        let mut v = vec![CycQ8::zero(); self.shift.len()];
        v[h] += &CycQ8::one();
        v[self.shift[h]] += &CycQ8::from_int(sign);
        v
    }
}

/// Arithmetic of C(G) ⋊_θ Z/2 in natural coordinates (index k·|G| + h).
#[derive(Debug, Clone)]
pub struct NaturalSmash {
    group: FiniteMatrixGroup,
    theta: GroupAction2,
}

impl NaturalSmash {
    pub fn new(group: FiniteMatrixGroup, theta: GroupAction2) -> Self {
        NaturalSmash { group, theta }
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    pub fn theta(&self) -> &GroupAction2 {
        &self.theta
    }

    pub fn dim(&self) -> usize {
        2 * self.group.order()
    }

    pub fn index(&self, h: usize, k: usize) -> usize {
        k * self.group.order() + h
    }

    pub fn delta_fn(&self, h: usize) -> Vec<CycQ8> {
        self.basis(self.index(h, 0))
    }

    pub fn basis(&self, i: usize) -> Vec<CycQ8> {
        let mut v = vec![CycQ8::zero(); self.dim()];
        v[i] = CycQ8::one();
        v
    }

    pub fn zero(&self) -> Vec<CycQ8> {
        vec![CycQ8::zero(); self.dim()]
    }

    pub fn unit(&self) -> Vec<CycQ8> {
        let n = self.group.order();
        (0..self.dim()).map(|i| if i < n { CycQ8::one() } else { CycQ8::zero() }).collect()
    }

    pub fn lambda(&self) -> Vec<CycQ8> {
        let n = self.group.order();
        (0..self.dim()).map(|i| if i >= n { CycQ8::one() } else { CycQ8::zero() }).collect()
    }

    /// Embed a function on G (length |G|) as aλ^k.
    pub fn with_lambda(&self, f: &[CycQ8], k: usize) -> Vec<CycQ8> {
        let mut v = self.zero();
        for (h, c) in f.iter().enumerate() {
            v[self.index(h, k)] = c.clone();
        }
        v
    }

    /// (δ_h λ^j)(δ_g λ^k) = δ_h δ_{θ^j g} λ^{j+k}.
    pub fn mul(&self, x: &[CycQ8], y: &[CycQ8]) -> Vec<CycQ8> {
        let n = self.group.order();
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let (h, j) = (i % n, i / n);
            for k in 0..2 {
                let g = if j == 1 { self.theta.apply(h) } else { h };
                let b = &y[self.index(g, k)];
                if !b.is_zero() {
                    out[self.index(h, (j + k) % 2)] += &(a * b);
                }
            }
        }
        out
    }

    /// (aλ)* = θ(a*)λ, so (δ_h λ)* = δ_{θh} λ.
    pub fn star(&self, x: &[CycQ8]) -> Vec<CycQ8> {
        let n = self.group.order();
        let mut out = self.zero();
        for h in 0..n {
            out[h] += &x[h].conj();
            out[self.index(self.theta.apply(h), 1)] += &x[self.index(h, 1)].conj();
        }
        out
    }

    /// Δ(δ_h λ^k) = Σ_{k1 k2 = h} δ_{k1} λ^k ⊗ δ_{k2} λ^k as (left, right, coefficient).
    pub fn delta_basis(&self, i: usize) -> Vec<(usize, usize, CycQ8)> {
        let n = self.group.order();
        let (h, k) = (i % n, i / n);
        let mut out = Vec::new();
        for k1 in 0..n {
            let k2 = self.group.mul(self.group.inv(k1), h);
            out.push((self.index(k1, k), self.index(k2, k), CycQ8::one()));
        }
        out
    }

    /// Coproduct of an arbitrary natural vector as a dense |nat|² array (index l·dim + r).
    pub fn delta(&self, x: &[CycQ8]) -> Vec<CycQ8> {
        let d = self.dim();
        let mut out = vec![CycQ8::zero(); d * d];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (l, r, v) in self.delta_basis(i) {
                out[l * d + r] += &(c * &v);
            }
        }
        out
    }

    pub fn flip(&self, t: &[CycQ8]) -> Vec<CycQ8> {
        let d = self.dim();
        let mut out = vec![CycQ8::zero(); d * d];
        for l in 0..d {
            for r in 0..d {
                out[r * d + l] = t[l * d + r].clone();
            }
        }
        out
    }

    pub fn tensor(&self, x: &[CycQ8], y: &[CycQ8]) -> Vec<CycQ8> {
        let mut out = Vec::with_capacity(x.len() * y.len());
        for a in x {
            for b in y {
                out.push(a * b);
            }
        }
        out
    }
}

/// A *-subalgebra of a natural smash product identified with a multimatrix
/// algebra through the images of its matrix units.
#[derive(Debug, Clone)]
pub struct Realization {
    pub natural: NaturalSmash,
    pub hopf: HopfAlgebra,
    /// Natural coordinates of each matrix unit (column j = image of e_j).
    pub embed: Matrix,
    /// Left inverse of `embed`.
    pub left_inverse: Matrix,
}

impl Realization {
    pub fn to_natural(&self, a: &AlgElement) -> Vec<CycQ8> {
        self.embed.mul_vec(a.coeffs()).expect("dimension")
    }

    /// Pull a natural vector back; errors if it is outside the subalgebra.
    pub fn from_natural(&self, v: &[CycQ8]) -> Result<AlgElement, GroupError> {
        let x = self.left_inverse.mul_vec(v).expect("dimension");
        if self.embed.mul_vec(&x).expect("dimension") != v {
            return Err(GroupError::NotClosed("vector is not in the realized subalgebra".into()));
        }
        Ok(AlgElement::from_coeffs(self.hopf.algebra(), x).expect("dimension"))
    }

    pub fn contains(&self, v: &[CycQ8]) -> bool {
        self.from_natural(v).is_ok()
    }
}

/// Check that the columns of `embed` behave like matrix units of `algebra`
/// inside the natural smash product, then transport the coproduct.
pub fn realize(
    natural: NaturalSmash,
    algebra: &Arc<MultiMatrixAlgebra>,
    embed: Matrix,
) -> Result<Realization, GroupError> {
    let d = algebra.dim();
    let nd = natural.dim();
    if embed.rows() != nd || embed.cols() != d {
        return Err(GroupError::NotClosed("embedding has the wrong shape".into()));
    }
    // Left inverse from d independent rows.
    let mut ech = Echelon::new(d);
    let mut chosen = Vec::new();
    for i in 0..nd {
        if ech.insert(crate::linalg::to_sparse(embed.row(i))) {
            chosen.push(i);
        }
    }
    if chosen.len() != d {
        return Err(GroupError::NotClosed("matrix-unit images are linearly dependent".into()));
    }
    let square = Matrix::from_rows(chosen.iter().map(|&i| embed.row(i).to_vec()).collect()).expect("rows");
    let sq_inv = square.inverse().map_err(|e| GroupError::NotClosed(e.to_string()))?;
    let mut left_inverse = Matrix::zeros(d, nd);
    for (c, &i) in chosen.iter().enumerate() {
        for r in 0..d {
            left_inverse.set(r, i, sq_inv.get(r, c).clone());
        }
    }

    let cols: Vec<Vec<CycQ8>> = (0..d).map(|j| embed.column(j)).collect();
    let zero = natural.zero();
    for p in 0..d {
        for q in 0..d {
            let expect = algebra.basis_product(p, q).map_or(&zero, |r| &cols[r]);
            if natural.mul(&cols[p], &cols[q]) != *expect {
                return Err(GroupError::NotClosed(format!(
                    "product of {} and {}",
                    algebra.describe_basis(p),
                    algebra.describe_basis(q)
                )));
            }
        }
        if natural.star(&cols[p]) != cols[algebra.basis_star(p)] {
            return Err(GroupError::NotClosed(format!("star of {}", algebra.describe_basis(p))));
        }
    }
    let mut total = natural.zero();
    for (p, col) in cols.iter().enumerate() {
        let (_, i, j) = algebra.basis_coords(p);
        if i == j {
            for (t, c) in total.iter_mut().zip(col) {
                *t += c;
            }
        }
    }
    if total != natural.unit() {
        return Err(GroupError::NotClosed("matrix units do not sum to the unit".into()));
    }

    let sq = tensor_layout(algebra, algebra);
    let mut images = Vec::with_capacity(d);
    for (p, col) in cols.iter().enumerate() {
        let v = natural.delta(col);
        // x = (L⊗L) v, then require (E⊗E) x = v.
        let mut x = vec![CycQ8::zero(); d * d];
        for l in 0..nd {
            for r in 0..nd {
                let c = &v[l * nd + r];
                if c.is_zero() {
                    continue;
                }
                for a in 0..d {
                    let la = left_inverse.get(a, l);
                    if la.is_zero() {
                        continue;
                    }
                    let lac = la * c;
                    for b in 0..d {
                        let lb = left_inverse.get(b, r);
                        if !lb.is_zero() {
                            x[a * d + b] += &(&lac * lb);
                        }
                    }
                }
            }
        }
        let mut back = vec![CycQ8::zero(); nd * nd];
        for a in 0..d {
            for b in 0..d {
                let c = &x[a * d + b];
                if c.is_zero() {
                    continue;
                }
                for l in 0..nd {
                    let ea = embed.get(l, a);
                    if ea.is_zero() {
                        continue;
                    }
                    let eac = ea * c;
                    for r in 0..nd {
                        let eb = embed.get(r, b);
                        if !eb.is_zero() {
                            back[l * nd + r] += &(&eac * eb);
                        }
                    }
                }
            }
        }
        if back != v {
            return Err(GroupError::NotClosed(format!("Δ({}) leaves the tensor square", algebra.describe_basis(p))));
        }
        let coeffs: Vec<CycQ8> = (0..d * d)
            .map(|r| {
                let (a, b) = sq.split(r);
                x[a * d + b].clone()
            })
            .collect();
        images.push(AlgElement::from_coeffs(&sq.product, coeffs).expect("dimension"));
    }
    let hopf = HopfAlgebra::from_coproduct_images(algebra, &images)?;
    Ok(Realization { natural, hopf, embed, left_inverse })
}

/// C(G) ⋊_θ Z/2 in Wedderburn form.
///
/// A θ-fixed h contributes two 1x1 blocks δ_h(1 ± λ)/2. A free pair
/// {h, θh} contributes M₂ with e11 = δ_h, e12 = δ_h λ, e21 = δ_{θh} λ, e22 = δ_{θh}.
pub fn smash_product(g: &FiniteMatrixGroup, theta: &GroupAction2) -> Result<Realization, GroupError> {
    let base = function_algebra(g)?;
    let auto = theta.automorphism(&base);
    let rep = check_hopf_morphism(&auto, &base, &base, MorphismRequirement::Iso);
    if !rep.passed() {
        return Err(GroupError::NotHopfAutomorphism(format!("{:?}", rep.first_failure())));
    }
    let nat = NaturalSmash::new(g.clone(), theta.clone());
    let half = CycQ8::frac(1, 2);
    let mut sizes = Vec::new();
    let mut cols: Vec<Vec<CycQ8>> = Vec::new();
    for h in 0..g.order() {
        let th = theta.apply(h);
        if th == h {
            for sign in [1, -1] {
                let mut v = nat.zero();
                v[nat.index(h, 0)] = half.clone();
                v[nat.index(h, 1)] = half.scale(&crate::cyclotomic::rat(sign, 1));
                cols.push(v);
                sizes.push(1);
            }
        } else if h < th {
            cols.push(nat.basis(nat.index(h, 0)));
            cols.push(nat.basis(nat.index(h, 1)));
            cols.push(nat.basis(nat.index(th, 1)));
            cols.push(nat.basis(nat.index(th, 0)));
            sizes.push(2);
        }
    }
    let alg = MultiMatrixAlgebra::new(sizes).expect("positive sizes");
    realize(nat.clone(), &alg, Matrix::from_columns(nat.dim(), &cols))
}

/// The graded twist C(G)_even ⊕ C(G)_odd·λ inside the smash product.
///
/// With x = {h, zh} (h the smaller index), p_x = δ_h + δ_{zh} and
/// o_x = δ_h − δ_{zh}: a θ-fixed coset with θh = h gives (p ± oλ)/2, one with
/// θh = zh gives (p ± i·oλ)/2, and a free pair {x, θx} gives M₂ with
/// e11 = p_x, e12 = o_x λ, e21 = θ(o_x) λ, e22 = p_{θx}.
pub fn graded_twist(
    g: &FiniteMatrixGroup,
    grading: &CentralGrading,
    theta: &GroupAction2,
) -> Result<Realization, GroupError> {
    if theta.apply(grading.z()) != grading.z() {
        return Err(GroupError::Grading("z is not fixed by the action".into()));
    }
    let base = function_algebra(g)?;
    let auto = theta.automorphism(&base);
    if !check_hopf_morphism(&auto, &base, &base, MorphismRequirement::Iso).passed() {
        return Err(GroupError::NotHopfAutomorphism("θ".into()));
    }
    let nat = NaturalSmash::new(g.clone(), theta.clone());
    let n = g.order();
    if grading.is_trivial() {
        let cols: Vec<Vec<CycQ8>> = (0..n).map(|h| nat.delta_fn(h)).collect();
        let alg = MultiMatrixAlgebra::new(vec![1; n]).expect("positive sizes");
        return realize(nat.clone(), &alg, Matrix::from_columns(nat.dim(), &cols));
    }
    let rep_of = |h: usize| h.min(grading.partner(h));
    let p = |h: usize| {
        let mut v = nat.zero();
        v[h] = CycQ8::one();
        v[grading.partner(h)] = CycQ8::one();
        v
    };
    let o_lambda = |h: usize, c: &CycQ8| {
        let mut v = nat.zero();
        v[nat.index(h, 1)] += c;
        v[nat.index(grading.partner(h), 1)] -= c;
        v
    };
    let half = CycQ8::frac(1, 2);
    let mut sizes = Vec::new();
    let mut cols: Vec<Vec<CycQ8>> = Vec::new();
    for h in grading.coset_reps() {
        let th = theta.apply(h);
        if rep_of(th) == h {
            let phase = if th == h { CycQ8::one() } else { CycQ8::i() };
            for sign in [1, -1] {
                let c = phase.scale(&crate::cyclotomic::rat(sign, 1));
                let v: Vec<CycQ8> = p(h).iter().zip(o_lambda(h, &c)).map(|(a, b)| &(a + &b) * &half).collect();
                cols.push(v);
                sizes.push(1);
            }
        } else if h < rep_of(th) {
            cols.push(p(h));
            cols.push(o_lambda(h, &CycQ8::one()));
            cols.push(o_lambda(th, &CycQ8::one()));
            cols.push(p(th));
            sizes.push(2);
        }
    }
    let alg = MultiMatrixAlgebra::new(sizes).expect("positive sizes");
    realize(nat.clone(), &alg, Matrix::from_columns(nat.dim(), &cols))
}

/// The three conditions a closed subgroup must meet to give a quantum
/// subgroup of SU₋₁(2) with noncommutative function algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupConditions {
    pub contains_plus_minus_identity: bool,
    pub stable_under_action: bool,
    /// Index of the first element [[a,b],[c,d]] with abcd ≠ 0.
    pub abcd_witness: Option<usize>,
}

impl SubgroupConditions {
    pub fn all_hold(&self) -> bool {
        self.contains_plus_minus_identity && self.stable_under_action && self.abcd_witness.is_some()
    }
}

pub fn subgroup_conditions(g: &FiniteMatrixGroup, action_unitary: &Matrix) -> SubgroupConditions {
    let minus = Matrix::identity(2).scale(&CycQ8::from_int(-1));
    let contains_plus_minus_identity = g.index_of(&Matrix::identity(2)).is_some() && g.index_of(&minus).is_some();
    let stable_under_action = conjugation_action(g, action_unitary).is_ok();
    let abcd_witness = g.elements().iter().position(|m| {
        let prod = m.get(0, 0) * m.get(0, 1) * m.get(1, 0) * m.get(1, 1);
        !prod.is_zero()
    });
    SubgroupConditions { contains_plus_minus_identity, stable_under_action, abcd_witness }
}

/// User model file: a finite group, a conjugating unitary and a central element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub generators: Vec<Matrix>,
    pub action_unitary: Matrix,
    pub central_element: Matrix,
    pub cap: usize,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let m: ModelFile = serde_json::from_str(text)
            .map_err(|e| GroupError::Model(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        let check = |name: String, mat: &Matrix| {
            if mat.rows() != 2 || mat.cols() != 2 {
                Err(GroupError::Model(format!("field `{name}` must be a 2x2 matrix")))
            } else {
                Ok(())
            }
        };
        for (i, g) in m.generators.iter().enumerate() {
            check(format!("generators[{i}]"), g)?;
        }
        check("action_unitary".into(), &m.action_unitary)?;
        check("central_element".into(), &m.central_element)?;
        Ok(m)
    }

    pub fn build(&self) -> Result<ModelBuild, GroupError> {
        let group = generate_group(&self.generators, self.cap)?;
        let theta = conjugation_action(&group, &self.action_unitary)?;
        let grading = CentralGrading::new(&group, &self.central_element)?;
        let function = function_algebra(&group)?;
        let smash = smash_product(&group, &theta)?;
        let twist = graded_twist(&group, &grading, &theta)?;
        Ok(ModelBuild { group, theta, grading, function, smash, twist })
    }
}

#[derive(Debug, Clone)]
pub struct ModelBuild {
    pub group: FiniteMatrixGroup,
    pub theta: GroupAction2,
    pub grading: CentralGrading,
    pub function: HopfAlgebra,
    pub smash: Realization,
    pub twist: Realization,
}

/// Human-readable names for the elements of a group given a name table.
pub fn name_elements(g: &FiniteMatrixGroup, named: &[(&str, Matrix)]) -> HashMap<usize, String> {
    named.iter().filter_map(|(n, m)| g.index_of(m).map(|i| (i, n.to_string()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{commutativity_flags, verify_hopf_axioms};

    fn i_diag() -> Matrix {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, CycQ8::i());
        m.set(1, 1, -CycQ8::i());
        m
    }

    fn minus_one() -> Matrix {
        Matrix::identity(2).scale(&CycQ8::from_int(-1))
    }

    #[test]
    fn trivial_and_cyclic_groups() {
        assert_eq!(generate_group(&[Matrix::identity(2)], 10).unwrap().order(), 1);
        let c4 = generate_group(&[i_diag()], 10).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_latin_square() && c4.is_abelian());
        assert!(matches!(generate_group(&[i_diag()], 3), Err(GroupError::CapExceeded(3))));
    }

    #[test]
    fn rejects_bad_generators() {
        let two = Matrix::identity(2).scale(&CycQ8::from_int(2));
        assert_eq!(generate_group(&[two], 10).unwrap_err(), GroupError::NotUnitary(0));
        let mut swap = Matrix::zeros(2, 2);
        swap.set(0, 1, CycQ8::one());
        swap.set(1, 0, CycQ8::one());
        assert_eq!(generate_group(&[swap], 10).unwrap_err(), GroupError::NotUnimodular(0));
    }

    #[test]
    fn z2_function_algebra() {
        let z2 = generate_group(&[minus_one()], 4).unwrap();
        let h = function_algebra(&z2).unwrap();
        assert!(verify_hopf_axioms(&h).passed());
        let f = commutativity_flags(&h);
        assert!(f.is_commutative && f.is_cocommutative);
    }

    #[test]
    fn trivial_action_smash_is_four_dimensional() {
        let z2 = generate_group(&[minus_one()], 4).unwrap();
        let theta = conjugation_action(&z2, &Matrix::identity(2)).unwrap();
        assert!(theta.is_trivial());
        let s = smash_product(&z2, &theta).unwrap();
        assert_eq!(s.hopf.dim(), 4);
        assert!(s.hopf.algebra().is_commutative());
        assert!(verify_hopf_axioms(&s.hopf).passed());
    }

    #[test]
    fn trivial_grading_returns_function_algebra() {
        let c4 = generate_group(&[i_diag()], 10).unwrap();
        let theta = conjugation_action(&c4, &Matrix::identity(2)).unwrap();
        let grading = CentralGrading::new(&c4, &Matrix::identity(2)).unwrap();
        assert!(grading.odd_basis().is_empty());
        let t = graded_twist(&c4, &grading, &theta).unwrap();
        let f = function_algebra(&c4).unwrap();
        assert_eq!(t.hopf.to_json(), f.to_json());
    }

    #[test]
    fn inner_action_on_cyclic_subgroup_is_identity() {
        let mut s3 = Matrix::zeros(2, 2);
        s3.set(0, 1, CycQ8::from_int(-1));
        s3.set(1, 0, CycQ8::one());
        let g = generate_group(&[s3.clone()], 10).unwrap();
        assert!(conjugation_action(&g, &s3).unwrap().is_trivial());
    }

    #[test]
    fn unstable_action_rejected() {
        let c4 = generate_group(&[i_diag()], 10).unwrap();
        let h = (CycQ8::inv_sqrt2(), CycQ8::inv_sqrt2());
        let u = Matrix::from_rows(vec![vec![h.0.clone(), h.1.clone()], vec![h.1.clone(), -h.0.clone()]]).unwrap();
        assert!(matches!(conjugation_action(&c4, &u), Err(GroupError::NotStable(_))));
    }

    #[test]
    fn model_file_diagnostics() {
        let err = ModelFile::parse("{\"generators\": [], \n \"cap\": \"x\"}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = ModelFile::parse(
            r#"{"generators": [[[["1","0","0","0"]]]], "action_unitary": [], "central_element": [], "cap": 8}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("generators[0]"), "{err}");
    }
}
