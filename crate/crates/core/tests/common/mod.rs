//! Property suites shared by the proptest targets and the acceptance test.
#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use hopfcheck::checks::kp_fundamental;
use hopfcheck::corep::{intertwiners, kp_printed_one_dim, tensor_corep, Corep};
use hopfcheck::cyclotomic::{rat, CycQ8};
use hopfcheck::linalg::Matrix;
use hopfcheck::models::{build_kp, KPModel};
use hopfcheck::multimatrix::{tensor_layout, AlgElement, LinearMap, MultiMatrixAlgebra};

pub const CASES: u32 = 1000;

pub fn kp() -> &'static KPModel {
    static KP: OnceLock<KPModel> = OnceLock::new();
    KP.get_or_init(|| build_kp().expect("KP builds"))
}

pub fn cyc() -> impl Strategy<Value = CycQ8> {
    prop::array::uniform4((-6i64..=6, 1i64..=4)).prop_map(|cs| {
        CycQ8::new([rat(cs[0].0, cs[0].1), rat(cs[1].0, cs[1].1), rat(cs[2].0, cs[2].1), rat(cs[3].0, cs[3].1)])
    })
}

fn small_cyc() -> impl Strategy<Value = CycQ8> {
    prop::array::uniform4(-2i64..=2).prop_map(|c| CycQ8::from_ints(c))
}

pub fn element(alg: Arc<MultiMatrixAlgebra>) -> impl Strategy<Value = AlgElement> {
    let n = alg.dim();
    prop::collection::vec(small_cyc(), n).prop_map(move |v| AlgElement::from_coeffs(&alg, v).expect("dimension"))
}

/// Elements with at most four nonzero coordinates.
pub fn sparse_element(alg: Arc<MultiMatrixAlgebra>) -> impl Strategy<Value = AlgElement> {
    let n = alg.dim();
    prop::collection::vec((0..n, small_cyc()), 0..5).prop_map(move |terms| {
        let mut v = vec![CycQ8::zero(); n];
        for (i, c) in terms {
            v[i] += &c;
        }
        AlgElement::from_coeffs(&alg, v).expect("dimension")
    })
}

fn linear_map(alg: Arc<MultiMatrixAlgebra>) -> impl Strategy<Value = LinearMap> {
    let n = alg.dim();
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..12).prop_map(move |entries| {
        let mut m = Matrix::zeros(n, n);
        for (r, c, v) in entries {
            m.add_at(r, c, &CycQ8::from_int(v));
        }
        LinearMap::new(&alg, &alg, m).expect("square")
    })
}

fn run<S: Strategy>(cases: u32, strat: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strat, test).map_err(|e| e.to_string())
}

/// Q(ζ₈) is a field with an involutive automorphism.
pub fn field_axioms(cases: u32) -> Result<(), String> {
    run(cases, (cyc(), cyc(), cyc()), |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CycQ8::zero(), a.clone());
        prop_assert_eq!(&a * &CycQ8::one(), a.clone());
        prop_assert!((&a + &(-a.clone())).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        Ok(())
    })
}

/// x ↦ x* is a conjugate-linear anti-automorphism of C(G_KP) and is
/// compatible with Δ.
pub fn star_anti_automorphism(cases: u32) -> Result<(), String> {
    let h = &kp().hopf;
    let alg = h.algebra().clone();
    run(cases, (element(alg.clone()), element(alg), small_cyc()), |(x, y, l)| {
        prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(x.scale(&l).star(), x.star().scale(&l.conj()));
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
        prop_assert_eq!(h.delta(&x.star()), h.delta(&x).star());
        Ok(())
    })
}

/// (f⊗g)(a⊗b) = f(a)⊗g(b), (f⊗g)∘(f′⊗g′) = (ff′)⊗(gg′) on vectors, and
/// (a⊗b)(c⊗d) = ac⊗bd.
pub fn tensor_functoriality(cases: u32) -> Result<(), String> {
    let alg = kp().hopf.algebra().clone();
    let sq = tensor_layout(&alg, &alg);
    let strat = (
        linear_map(alg.clone()),
        linear_map(alg.clone()),
        linear_map(alg.clone()),
        linear_map(alg.clone()),
        sparse_element(alg.clone()),
        sparse_element(alg.clone()),
        sparse_element(alg.clone()),
        sparse_element(alg),
    );
    run(cases, strat, |(f, g, f2, g2, a, b, c, d)| {
        let ab = sq.tensor_elements(&a, &b);
        let lhs = LinearMap::apply_tensor(&f, &g, &sq, &sq, &ab);
        prop_assert_eq!(lhs, sq.tensor_elements(&f.apply(&a).unwrap(), &g.apply(&b).unwrap()));
        let v = &ab + &sq.tensor_elements(&c, &d);
        let two_step = LinearMap::apply_tensor(&f, &g, &sq, &sq, &LinearMap::apply_tensor(&f2, &g2, &sq, &sq, &v));
        let fused = LinearMap::apply_tensor(&f.compose(&f2).unwrap(), &g.compose(&g2).unwrap(), &sq, &sq, &v);
        prop_assert_eq!(two_step, fused);
        prop_assert_eq!(&ab * &sq.tensor_elements(&c, &d), sq.tensor_elements(&(&a * &c), &(&b * &d)));
        Ok(())
    })
}

/// Unitary coreps of C(G_KP) built from the irreducibles by ⊗ and ⊕.
pub fn corep_pool() -> &'static Vec<Corep> {
    static POOL: OnceLock<Vec<Corep>> = OnceLock::new();
    POOL.get_or_init(|| {
        let u = kp_fundamental().expect("fundamental");
        let ones: Vec<Corep> = kp_printed_one_dim(kp()).into_iter().map(Corep::one_dim).collect();
        let mut pool = ones.clone();
        pool.push(u.clone());
        pool.push(tensor_corep(&u, &u));
        for o in &ones[1..] {
            pool.push(tensor_corep(o, &u));
            pool.push(o.direct_sum(&u));
        }
        pool.push(ones[1].direct_sum(&ones[2]));
        pool.push(u.direct_sum(&u));
        pool
    })
}

/// Conjugate U by a signed permutation matrix with phases in {±1, ±i}.
pub fn conjugate(u: &Corep, perm_seed: usize, phases: &[u8]) -> Corep {
    let n = u.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = perm_seed;
    for i in (1..n).rev() {
        perm.swap(i, s % (i + 1));
        s /= i + 1;
    }
    let ph = |k: usize| CycQ8::zeta_pow(2 * phases[k % phases.len()] as i64);
    // (T U T*)_{ij} = t_i conj(t_j) u_{π(i) π(j)}
    let entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| u.get(perm[i], perm[j]).scale(&(&ph(i) * &ph(j).conj())))
        .collect();
    Corep::new(n, entries).expect("square")
}

/// dim Mor(U, V) = dim Mor(V, U) for unitary coreps.
pub fn intertwiner_symmetry(cases: u32) -> Result<(), String> {
    let pool = corep_pool();
    let n = pool.len();
    let strat = (0..n, 0..n, 0usize..100_000, prop::collection::vec(0u8..4, 1..8), 0usize..100_000, prop::collection::vec(0u8..4, 1..8));
    run(cases, strat, |(a, b, sa, pa, sb, pb)| {
        let u = conjugate(&pool[a], sa, &pa);
        let v = conjugate(&pool[b], sb, &pb);
        prop_assert_eq!(intertwiners(&u, &v).dim(), intertwiners(&v, &u).dim());
        Ok(())
    })
}
