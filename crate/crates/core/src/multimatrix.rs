//! Finite-dimensional *-algebras presented as direct sums of full matrix
//! blocks over Q(ζ₈).
//!
//! Canonical basis: matrix units ordered block by block, row-major inside each
//! block. Every [`LinearMap`] matrix is expressed against this order. For a
//! tensor product `A ⊗ B` the blocks are ordered lexicographically in
//! `(block of A, block of B)` and each block is the Kronecker product, so
//! `(A ⊗ B) ⊗ C` and `A ⊗ (B ⊗ C)` have literally the same canonical basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycQ8;
use crate::linalg::{self, Matrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras ({0:?} vs {1:?})")]
    Mismatch(Vec<usize>, Vec<usize>),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid block structure: {0}")]
    Blocks(String),
}

#[derive(Debug)]
pub struct MultiMatrixAlgebra {
    block_sizes: Vec<usize>,
    labels: Option<Vec<String>>,
    offsets: Vec<usize>,
    dim: usize,
    /// For each canonical basis index: (block, row, col).
    coords: Vec<(usize, usize, usize)>,
}

impl PartialEq for MultiMatrixAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.block_sizes == other.block_sizes
    }
}

impl Eq for MultiMatrixAlgebra {}

impl MultiMatrixAlgebra {
    pub fn new(block_sizes: Vec<usize>) -> Result<Arc<Self>, AlgebraError> {
        Self::build(block_sizes, None)
    }

    pub fn with_labels(block_sizes: Vec<usize>, labels: Vec<String>) -> Result<Arc<Self>, AlgebraError> {
        if labels.len() != block_sizes.len() {
            return Err(AlgebraError::Blocks(format!(
                "{} labels for {} blocks",
                labels.len(),
                block_sizes.len()
            )));
        }
        Self::build(block_sizes, Some(labels))
    }

    fn build(block_sizes: Vec<usize>, labels: Option<Vec<String>>) -> Result<Arc<Self>, AlgebraError> {
        if block_sizes.iter().any(|&n| n == 0) {
            return Err(AlgebraError::Blocks("block sizes must be positive".into()));
        }
        let mut offsets = Vec::with_capacity(block_sizes.len());
        let mut coords = Vec::new();
        let mut dim = 0;
        for (b, &n) in block_sizes.iter().enumerate() {
            offsets.push(dim);
            for i in 0..n {
                for j in 0..n {
                    coords.push((b, i, j));
                }
            }
            dim += n * n;
        }
        Ok(Arc::new(MultiMatrixAlgebra { block_sizes, labels, offsets, dim, coords }))
    }

    /// The one-dimensional algebra of scalars.
    pub fn scalars() -> Arc<Self> {
        Self::new(vec![1]).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn block_label(&self, b: usize) -> String {
        self.labels.as_ref().map_or_else(|| format!("B{b}"), |l| l[b].clone())
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn basis_index(&self, block: usize, i: usize, j: usize) -> usize {
        let n = self.block_sizes[block];
        assert!(i < n && j < n, "matrix unit out of range");
        self.offsets[block] + i * n + j
    }

    pub fn basis_coords(&self, idx: usize) -> (usize, usize, usize) {
        self.coords[idx]
    }

    pub fn describe_basis(&self, idx: usize) -> String {
        let (b, i, j) = self.coords[idx];
        if self.block_sizes[b] == 1 {
            self.block_label(b)
        } else {
            format!("{}[{},{}]", self.block_label(b), i + 1, j + 1)
        }
    }

    /// Product of two matrix units: `Some(r)` with `e_p e_q = e_r`, or `None` when it vanishes.
    pub fn basis_product(&self, p: usize, q: usize) -> Option<usize> {
        let (b1, i, j) = self.coords[p];
        let (b2, k, l) = self.coords[q];
        (b1 == b2 && j == k).then(|| self.basis_index(b1, i, l))
    }

    /// Index of the conjugate-transposed matrix unit.
    pub fn basis_star(&self, p: usize) -> usize {
        let (b, i, j) = self.coords[p];
        self.basis_index(b, j, i)
    }

    pub fn is_commutative(&self) -> bool {
        self.block_sizes.iter().all(|&n| n == 1)
    }
}

/// Canonical-basis element of a multimatrix algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgElement {
    algebra: Arc<MultiMatrixAlgebra>,
    coeffs: Vec<CycQ8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Mul,
    Add,
    Sub,
}

/// Binary arithmetic with a shape check.
pub fn alg_arith(a: &AlgElement, b: &AlgElement, op: ArithOp) -> Result<AlgElement, AlgebraError> {
    a.check_same(b)?;
    Ok(match op {
        ArithOp::Add => a.zip_with(b, |x, y| x + y),
        ArithOp::Sub => a.zip_with(b, |x, y| x - y),
        ArithOp::Mul => a.mul_unchecked(b),
    })
}

impl AlgElement {
    pub fn zero(algebra: &Arc<MultiMatrixAlgebra>) -> Self {
        AlgElement { algebra: algebra.clone(), coeffs: vec![CycQ8::zero(); algebra.dim()] }
    }

    pub fn unit(algebra: &Arc<MultiMatrixAlgebra>) -> Self {
        let mut e = Self::zero(algebra);
        for (b, &n) in algebra.block_sizes().iter().enumerate() {
            for i in 0..n {
                e.coeffs[algebra.basis_index(b, i, i)] = CycQ8::one();
            }
        }
        e
    }

    pub fn scalar(algebra: &Arc<MultiMatrixAlgebra>, s: CycQ8) -> Self {
        Self::unit(algebra).scale(&s)
    }

    pub fn basis(algebra: &Arc<MultiMatrixAlgebra>, idx: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[idx] = CycQ8::one();
        e
    }

    pub fn matrix_unit(algebra: &Arc<MultiMatrixAlgebra>, block: usize, i: usize, j: usize) -> Self {
        Self::basis(algebra, algebra.basis_index(block, i, j))
    }

    /// Identity of one block (a central projection).
    pub fn block_unit(algebra: &Arc<MultiMatrixAlgebra>, block: usize) -> Self {
        let mut e = Self::zero(algebra);
        for i in 0..algebra.block_sizes()[block] {
            e.coeffs[algebra.basis_index(block, i, i)] = CycQ8::one();
        }
        e
    }

    pub fn from_coeffs(algebra: &Arc<MultiMatrixAlgebra>, coeffs: Vec<CycQ8>) -> Result<Self, AlgebraError> {
        if coeffs.len() != algebra.dim() {
            return Err(AlgebraError::Dimension(format!(
                "{} coefficients for dimension {}",
                coeffs.len(),
                algebra.dim()
            )));
        }
        Ok(AlgElement { algebra: algebra.clone(), coeffs })
    }

    pub fn from_sparse(algebra: &Arc<MultiMatrixAlgebra>, v: &SparseVec) -> Self {
        AlgElement { algebra: algebra.clone(), coeffs: linalg::to_dense(v, algebra.dim()) }
    }

    /// Build from one square matrix per block.
    pub fn from_blocks(algebra: &Arc<MultiMatrixAlgebra>, blocks: &[Matrix]) -> Result<Self, AlgebraError> {
        if blocks.len() != algebra.num_blocks() {
            return Err(AlgebraError::Dimension(format!(
                "{} blocks for an algebra with {}",
                blocks.len(),
                algebra.num_blocks()
            )));
        }
        let mut e = Self::zero(algebra);
        for (b, m) in blocks.iter().enumerate() {
            let n = algebra.block_sizes()[b];
            if m.rows() != n || m.cols() != n {
                return Err(AlgebraError::Dimension(format!("block {b} must be {n}x{n}")));
            }
            for i in 0..n {
                for j in 0..n {
                    e.coeffs[algebra.basis_index(b, i, j)] = m.get(i, j).clone();
                }
            }
        }
        Ok(e)
    }

    /// Place a matrix into one block, zero elsewhere.
    pub fn in_block(algebra: &Arc<MultiMatrixAlgebra>, block: usize, m: &Matrix) -> Self {
        let n = algebra.block_sizes()[block];
        assert_eq!((m.rows(), m.cols()), (n, n), "block shape");
        let mut e = Self::zero(algebra);
        for i in 0..n {
            for j in 0..n {
                e.coeffs[algebra.basis_index(block, i, j)] = m.get(i, j).clone();
            }
        }
        e
    }

    pub fn algebra(&self) -> &Arc<MultiMatrixAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[CycQ8] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> &CycQ8 {
        &self.coeffs[idx]
    }

    pub fn sparse(&self) -> SparseVec {
        linalg::to_sparse(&self.coeffs)
    }

    pub fn block(&self, b: usize) -> Matrix {
        let n = self.algebra.block_sizes()[b];
        let off = self.algebra.offset(b);
        Matrix::from_rows((0..n).map(|i| self.coeffs[off + i * n..off + (i + 1) * n].to_vec()).collect())
            .expect("square block")
    }

    pub fn blocks(&self) -> Vec<Matrix> {
        (0..self.algebra.num_blocks()).map(|b| self.block(b)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycQ8::is_zero)
    }

    fn check_same(&self, other: &AlgElement) -> Result<(), AlgebraError> {
        if self.algebra.block_sizes() != other.algebra.block_sizes() {
            return Err(AlgebraError::Mismatch(
                self.algebra.block_sizes().to_vec(),
                other.algebra.block_sizes().to_vec(),
            ));
        }
        Ok(())
    }

    fn zip_with(&self, other: &AlgElement, f: impl Fn(&CycQ8, &CycQ8) -> CycQ8) -> AlgElement {
        AlgElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn mul_unchecked(&self, other: &AlgElement) -> AlgElement {
        let alg = &self.algebra;
        let mut out = vec![CycQ8::zero(); alg.dim()];
        for (b, &n) in alg.block_sizes().iter().enumerate() {
            let off = alg.offset(b);
            for i in 0..n {
                for k in 0..n {
                    let a = &self.coeffs[off + i * n + k];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let c = &other.coeffs[off + k * n + j];
                        if !c.is_zero() {
                            out[off + i * n + j] += &(a * c);
                        }
                    }
                }
            }
        }
        AlgElement { algebra: alg.clone(), coeffs: out }
    }

    pub fn try_mul(&self, other: &AlgElement) -> Result<AlgElement, AlgebraError> {
        alg_arith(self, other, ArithOp::Mul)
    }

    pub fn try_add(&self, other: &AlgElement) -> Result<AlgElement, AlgebraError> {
        alg_arith(self, other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &AlgElement) -> Result<AlgElement, AlgebraError> {
        alg_arith(self, other, ArithOp::Sub)
    }

    pub fn scale(&self, s: &CycQ8) -> AlgElement {
        AlgElement { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    /// Entry-wise conjugation plus transpose inside every block.
    pub fn star(&self) -> AlgElement {
        let alg = &self.algebra;
        let mut out = vec![CycQ8::zero(); alg.dim()];
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (b, i, j) = alg.basis_coords(idx);
            out[alg.basis_index(b, j, i)] = c.conj();
        }
        AlgElement { algebra: alg.clone(), coeffs: out }
    }

    pub fn commutes_with(&self, other: &AlgElement) -> bool {
        self * other == other * self
    }

    pub fn is_projection(&self) -> bool {
        &(self * self) == self && self.star() == *self
    }

    pub fn pow(&self, e: u32) -> AlgElement {
        let mut out = AlgElement::unit(&self.algebra);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})·{}", self.algebra.describe_basis(i)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl<'a> std::ops::$tr<&'a AlgElement> for &'a AlgElement {
            type Output = AlgElement;
            fn $method(self, rhs: &'a AlgElement) -> AlgElement {
                alg_arith(self, rhs, $op).expect("algebra mismatch")
            }
        }
        impl std::ops::$tr<AlgElement> for AlgElement {
            type Output = AlgElement;
            fn $method(self, rhs: AlgElement) -> AlgElement {
                alg_arith(&self, &rhs, $op).expect("algebra mismatch")
            }
        }
        impl<'a> std::ops::$tr<&'a AlgElement> for AlgElement {
            type Output = AlgElement;
            fn $method(self, rhs: &'a AlgElement) -> AlgElement {
                alg_arith(&self, rhs, $op).expect("algebra mismatch")
            }
        }
    };
}

elem_binop!(Add, add, ArithOp::Add);
elem_binop!(Sub, sub, ArithOp::Sub);
elem_binop!(Mul, mul, ArithOp::Mul);

impl std::ops::Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        self.scale(&CycQ8::from_int(-1))
    }
}

impl std::ops::Neg for AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    blocks: Vec<Vec<Vec<CycQ8>>>,
}

impl AlgElement {
    /// JSON form `{"blocks": [[[cyc, ...], ...], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let blocks = self.blocks().iter().map(Matrix::to_rows).collect();
        serde_json::to_value(ElementJson { blocks }).expect("serializable")
    }

    pub fn from_json(algebra: &Arc<MultiMatrixAlgebra>, v: &serde_json::Value) -> Result<Self, AlgebraError> {
        let parsed: ElementJson =
            serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Dimension(e.to_string()))?;
        let blocks = parsed
            .blocks
            .into_iter()
            .map(|rows| Matrix::from_rows(rows).map_err(|e| AlgebraError::Dimension(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_blocks(algebra, &blocks)
    }
}

/// Index bookkeeping between `A`, `B` and `A ⊗ B`.
#[derive(Debug)]
pub struct TensorLayout {
    pub left: Arc<MultiMatrixAlgebra>,
    pub right: Arc<MultiMatrixAlgebra>,
    pub product: Arc<MultiMatrixAlgebra>,
    /// `index[p * dim(B) + q]` = canonical index of `e_p ⊗ e_q`.
    index: Vec<usize>,
    /// Inverse of `index`.
    split: Vec<(usize, usize)>,
}

/// Tensor product of two multimatrix algebras (lexicographic block order).
pub fn tensor(a: &Arc<MultiMatrixAlgebra>, b: &Arc<MultiMatrixAlgebra>) -> Arc<MultiMatrixAlgebra> {
    tensor_layout(a, b).product.clone()
}

pub fn tensor_layout(a: &Arc<MultiMatrixAlgebra>, b: &Arc<MultiMatrixAlgebra>) -> Arc<TensorLayout> {
    let mut sizes = Vec::with_capacity(a.num_blocks() * b.num_blocks());
    for &n in a.block_sizes() {
        for &m in b.block_sizes() {
            sizes.push(n * m);
        }
    }
    let product = match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => {
            let labels = la.iter().flat_map(|x| lb.iter().map(move |y| format!("{x}⊗{y}"))).collect();
            MultiMatrixAlgebra::with_labels(sizes, labels).expect("valid")
        }
        _ => MultiMatrixAlgebra::new(sizes).expect("valid"),
    };
    let kb = b.num_blocks();
    let mut index = vec![0; a.dim() * b.dim()];
    let mut split = vec![(0, 0); a.dim() * b.dim()];
    for p in 0..a.dim() {
        let (ba, i1, j1) = a.basis_coords(p);
        for q in 0..b.dim() {
            let (bb, i2, j2) = b.basis_coords(q);
            let m = b.block_sizes()[bb];
            let r = product.basis_index(ba * kb + bb, i1 * m + i2, j1 * m + j2);
            index[p * b.dim() + q] = r;
            split[r] = (p, q);
        }
    }
    Arc::new(TensorLayout { left: a.clone(), right: b.clone(), product, index, split })
}

impl TensorLayout {
    pub fn index(&self, p: usize, q: usize) -> usize {
        self.index[p * self.right.dim() + q]
    }

    pub fn split(&self, r: usize) -> (usize, usize) {
        self.split[r]
    }

    /// Element-level tensor product (Kronecker product per block pair).
    pub fn tensor_elements(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        assert_eq!(a.algebra().block_sizes(), self.left.block_sizes());
        assert_eq!(b.algebra().block_sizes(), self.right.block_sizes());
        let mut out = AlgElement::zero(&self.product);
        let bs = b.sparse();
        for (p, x) in a.sparse() {
            for (q, y) in &bs {
                out.coeffs[self.index(p, *q)] = &x * y;
            }
        }
        out
    }

    pub fn basis_pair(&self, p: usize, q: usize) -> AlgElement {
        AlgElement::basis(&self.product, self.index(p, q))
    }

    /// Tensor flip Σ(a ⊗ b) = b ⊗ a; requires A = B.
    pub fn flip(&self, v: &AlgElement) -> AlgElement {
        assert_eq!(self.left.block_sizes(), self.right.block_sizes(), "flip needs A ⊗ A");
        let mut out = AlgElement::zero(&self.product);
        for (r, c) in v.sparse() {
            let (p, q) = self.split(r);
            out.coeffs[self.index(q, p)] = c;
        }
        out
    }

    /// Multiplication map m: A ⊗ A → A.
    pub fn multiply(&self, v: &AlgElement) -> AlgElement {
        assert_eq!(self.left.block_sizes(), self.right.block_sizes(), "multiplication needs A ⊗ A");
        let mut out = AlgElement::zero(&self.left);
        for (r, c) in v.sparse() {
            let (p, q) = self.split(r);
            if let Some(k) = self.left.basis_product(p, q) {
                out.coeffs[k] += &c;
            }
        }
        out
    }
}

pub fn tensor_elements(a: &AlgElement, b: &AlgElement) -> AlgElement {
    tensor_layout(a.algebra(), b.algebra()).tensor_elements(a, b)
}

/// Exact matrix of a linear map between canonical bases.
#[derive(Clone)]
pub struct LinearMap {
    source: Arc<MultiMatrixAlgebra>,
    target: Arc<MultiMatrixAlgebra>,
    matrix: Matrix,
    sparse_cols: OnceLock<Vec<SparseVec>>,
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.block_sizes() == other.source.block_sizes()
            && self.target.block_sizes() == other.target.block_sizes()
            && self.matrix == other.matrix
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap({} -> {})", self.source.dim(), self.target.dim())
    }
}

impl LinearMap {
    pub fn new(
        source: &Arc<MultiMatrixAlgebra>,
        target: &Arc<MultiMatrixAlgebra>,
        matrix: Matrix,
    ) -> Result<Self, AlgebraError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(AlgebraError::Dimension(format!(
                "matrix {}x{} for a map of dimension {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(LinearMap { source: source.clone(), target: target.clone(), matrix, sparse_cols: OnceLock::new() })
    }

    /// Build column by column from images of the canonical basis.
    pub fn from_images(
        source: &Arc<MultiMatrixAlgebra>,
        target: &Arc<MultiMatrixAlgebra>,
        images: &[AlgElement],
    ) -> Result<Self, AlgebraError> {
        if images.len() != source.dim() {
            return Err(AlgebraError::Dimension(format!("{} images for dimension {}", images.len(), source.dim())));
        }
        let cols: Vec<Vec<CycQ8>> = images.iter().map(|e| e.coeffs().to_vec()).collect();
        if cols.iter().any(|c| c.len() != target.dim()) {
            return Err(AlgebraError::Dimension("image in the wrong algebra".into()));
        }
        Self::new(source, target, Matrix::from_columns(target.dim(), &cols))
    }

    pub fn identity(a: &Arc<MultiMatrixAlgebra>) -> Self {
        Self::new(a, a, Matrix::identity(a.dim())).expect("square")
    }

    pub fn source(&self) -> &Arc<MultiMatrixAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MultiMatrixAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn sparse_column(&self, j: usize) -> &SparseVec {
        &self.sparse_cols.get_or_init(|| (0..self.matrix.cols()).map(|c| self.matrix.sparse_column(c)).collect())[j]
    }

    pub fn image_of_basis(&self, j: usize) -> AlgElement {
        AlgElement::from_sparse(&self.target, self.sparse_column(j))
    }

    pub fn apply(&self, a: &AlgElement) -> Result<AlgElement, AlgebraError> {
        if a.algebra().block_sizes() != self.source.block_sizes() {
            return Err(AlgebraError::Mismatch(a.algebra().block_sizes().to_vec(), self.source.block_sizes().to_vec()));
        }
        let mut out = vec![CycQ8::zero(); self.target.dim()];
        for (j, x) in a.sparse() {
            for (i, m) in self.sparse_column(j) {
                out[*i] += &(m * &x);
            }
        }
        AlgElement::from_coeffs(&self.target, out)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> Result<LinearMap, AlgebraError> {
        if first.target.block_sizes() != self.source.block_sizes() {
            return Err(AlgebraError::Dimension("compose: target/source mismatch".into()));
        }
        let m = self.matrix.mul(&first.matrix).map_err(|e| AlgebraError::Dimension(e.to_string()))?;
        LinearMap::new(&first.source, &self.target, m)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Dense Kronecker product aligned with the canonical tensor bases.
    pub fn tensor_of_maps(f: &LinearMap, g: &LinearMap) -> LinearMap {
        let src = tensor_layout(&f.source, &g.source);
        let tgt = tensor_layout(&f.target, &g.target);
        let mut m = Matrix::zeros(tgt.product.dim(), src.product.dim());
        for p in 0..f.source.dim() {
            for q in 0..g.source.dim() {
                let col = src.index(p, q);
                for (pp, x) in f.sparse_column(p) {
                    for (qq, y) in g.sparse_column(q) {
                        m.set(tgt.index(*pp, *qq), col, x * y);
                    }
                }
            }
        }
        LinearMap::new(&src.product, &tgt.product, m).expect("shapes agree")
    }

    /// Evaluate `(f ⊗ g)(v)` without forming the Kronecker matrix.
    pub fn apply_tensor(
        f: &LinearMap,
        g: &LinearMap,
        src: &TensorLayout,
        tgt: &TensorLayout,
        v: &AlgElement,
    ) -> AlgElement {
        debug_assert_eq!(src.left.block_sizes(), f.source.block_sizes());
        debug_assert_eq!(src.right.block_sizes(), g.source.block_sizes());
        let mut out = vec![CycQ8::zero(); tgt.product.dim()];
        for (r, c) in v.sparse() {
            let (p, q) = src.split(r);
            for (pp, x) in f.sparse_column(p) {
                let xc = x * &c;
                for (qq, y) in g.sparse_column(q) {
                    out[tgt.index(*pp, *qq)] += &(&xc * y);
                }
            }
        }
        AlgElement::from_coeffs(&tgt.product, out).expect("dimension")
    }
}

/// Rank of the coefficient matrix of a family of elements.
pub fn span_rank(vectors: &[AlgElement]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let dim = first.algebra().dim();
    linalg::sparse_rank(dim, vectors.iter().map(AlgElement::sparse))
}
