use hopfcheck::checks::kp_fundamental;
use hopfcheck::corep::{
    fusion_graph, intertwiners, kp_printed_one_dim, one_dim_group, tensor_corep, verify_corep, Corep,
};
use hopfcheck::cyclotomic::CycQ8;
use hopfcheck::group::{function_algebra, generate_group};
use hopfcheck::hopf::{verify_hopf_axioms, HopfAlgebra};
use hopfcheck::linalg::Matrix;
use hopfcheck::models::*;
use hopfcheck::multimatrix::AlgElement;

fn half() -> CycQ8 {
    CycQ8::frac(1, 2)
}

fn kp_elem(kp: &KPModel, one: [i64; 4], m: Matrix) -> AlgElement {
    let mut x = kp.m2(&m);
    for (k, s) in one.iter().enumerate() {
        x = x + kp.element(k).scale(&c(*s));
    }
    x
}

#[test]
fn kp_coproduct_coefficients() {
    let kp = build_kp().unwrap();
    let h = &kp.hopf;
    let sq = h.square();
    let d_alpha = h.delta(&h.basis(ALPHA));
    assert_eq!(d_alpha.coeff(sq.index(e(1, 2), e(2, 1))), &(&CycQ8::i() * &half()));
    assert_eq!(d_alpha.coeff(sq.index(e(2, 1), e(1, 2))), &-(&CycQ8::i() * &half()));
    assert_eq!(d_alpha.coeff(sq.index(BETA, GAMMA)), &CycQ8::one());
    let d_gamma = h.delta(&h.basis(GAMMA));
    assert_eq!(d_gamma.coeff(sq.index(e(1, 2), e(1, 2))), &-half());
    // Δ(e11) contains α ⊗ u_α e11 u_α* = α ⊗ e22.
    let d_e11 = h.delta(&h.basis(e(1, 1)));
    assert_eq!(d_e11.coeff(sq.index(ALPHA, e(2, 2))), &CycQ8::one());
    assert_eq!(d_e11.coeff(sq.index(EPS, e(1, 1))), &CycQ8::one());
}

#[test]
fn kp_build_is_deterministic() {
    assert_eq!(build_kp().unwrap().hopf.to_json_string(), build_kp().unwrap().hopf.to_json_string());
}

#[test]
fn vtilde_structure() {
    let v = build_vtilde().unwrap();
    for s in [s1(), s2(), s3()] {
        assert_eq!(s.mul(&s).unwrap(), minus(&Matrix::identity(2)));
        assert!(s.is_unitary());
    }
    assert_eq!(v.theta.apply(v.idx("s1")), v.idx("-s2"));
    assert!(v.group.is_central(v.grading.z()));
    let (cond, w) = vtilde_subgroup_conditions().unwrap();
    assert!(cond.all_hold());
    assert!(!w.is_empty());
}

#[test]
fn twist_witnesses() {
    let t = build_vtilde_twist().unwrap();
    let w = prop7_witnesses(&t);
    assert!(w.holds());
    assert!(w.lambda_commutation);
    assert!(w.expansion_matches);
    // The last term read as o_I ⊗ o_{s1} does not reproduce Δ.
    assert!(!w.literal_expansion_matches);
}

#[test]
fn twist_matches_generic_construction() {
    let t = build_vtilde_twist().unwrap();
    let mut sizes = t.generic.hopf.algebra().block_sizes().to_vec();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 1, 1, 2]);
    for j in 0..8 {
        assert!(t.generic.contains(&t.twist.embed.column(j)));
    }
    assert!(verify_hopf_axioms(&t.generic.hopf).passed());
}

#[test]
fn phi_images_of_generators() {
    let kp = build_kp().unwrap();
    let t = build_vtilde_twist().unwrap();
    let g = fundamental_images_and_su2m1_check(&kp, &t).unwrap();
    let r = CycQ8::inv_sqrt2();
    let i = CycQ8::i();
    let m = |a: CycQ8, b: CycQ8, cc: CycQ8, d: CycQ8| mat2(a, b, cc, d);
    let z = CycQ8::zero();
    let expected = [
        kp_elem(&kp, [1, 0, 0, -1], m(z.clone(), r.clone(), -r.clone(), z.clone())),
        kp_elem(&kp, [0, 0, 0, 0], m(z.clone(), r.clone(), r.clone(), z.clone())) + kp.element(ALPHA).scale(&-i.clone()) + kp.element(BETA).scale(&i),
        kp_elem(&kp, [0, 0, 0, 0], m(z.clone(), r.clone(), r.clone(), z.clone())) + kp.element(ALPHA).scale(&i) + kp.element(BETA).scale(&-i.clone()),
        kp_elem(&kp, [1, 0, 0, -1], m(z.clone(), -r.clone(), r.clone(), z)),
    ];
    let got: Vec<AlgElement> = g.u_kp.iter().flatten().cloned().collect();
    assert_eq!(got, expected);
    assert!(g.holds());
    assert_eq!(g.rank_at_length_3, 8);
}

#[test]
fn phi_is_iso_and_unitaries_match() {
    let kp = build_kp().unwrap();
    let t = build_vtilde_twist().unwrap();
    let r = build_phi_and_verify(&kp, &t);
    assert!(r.passed(), "{:?}", r.morphism.first_failure());
    assert_eq!(r.unitary_identities, [true; 3]);
    assert_eq!(r.one_dim_coincidences, [true; 4]);
}

#[test]
fn group_likes_of_kp() {
    let kp = build_kp().unwrap();
    let g = one_dim_group(&kp.hopf).unwrap();
    assert!(g.is_klein_four);
    let printed = kp_printed_one_dim(&kp);
    assert_eq!(printed[1], kp_elem(&kp, [1, -1, -1, 1], mat2(c(1), c(0), c(0), c(-1))));
    // u₂u₂ = u₁, and the 1-dim tensor product is the product element.
    let u2 = Corep::one_dim(printed[1].clone());
    let sq = tensor_corep(&u2, &u2);
    assert_eq!(sq.get(0, 0), &printed[0]);
    assert!(verify_corep(&kp.hopf, &u2).unitary);
}

#[test]
fn group_likes_of_twist_and_z2() {
    let t = build_vtilde_twist().unwrap();
    assert_eq!(one_dim_group(t.hopf()).unwrap().order(), 4);
    let z2 = generate_group(&[minus(&Matrix::identity(2))], 4).unwrap();
    let h = function_algebra(&z2).unwrap();
    let g = one_dim_group(&h).unwrap();
    assert_eq!(g.order(), 2);
    assert!(g.is_group);
}

#[test]
fn trivial_corep_and_tensor_unit() {
    let kp = build_kp().unwrap();
    let one = Corep::trivial(&kp.hopf);
    let r = verify_corep(&kp.hopf, &one);
    assert!(r.is_corep() && r.unitary);
    let u = kp_fundamental().unwrap();
    assert_eq!(tensor_corep(&one, &u), u);
    assert_eq!(intertwiners(&u, &u).dim(), 1);
    assert_eq!(intertwiners(&one, &tensor_corep(&u, &u)).dim(), 1);
}

#[test]
fn fusion_graph_weights_and_dot() {
    let kp = build_kp().unwrap();
    let u = kp_fundamental().unwrap();
    let mut irr: Vec<(String, Corep)> =
        kp_printed_one_dim(&kp).into_iter().zip(["e", "a", "b", "c"]).map(|(x, l)| (l.to_string(), Corep::one_dim(x))).collect();
    irr.push(("ρ".into(), u.clone()));
    let g = fusion_graph(&kp.hopf, &u, &irr).unwrap();
    assert_eq!(g.multiplicity[4], vec![1, 1, 1, 1, 0]);
    for x in 0..4 {
        assert_eq!(g.multiplicity[x], vec![0, 0, 0, 0, 1]);
    }
    assert_eq!(g.star_center(), Some(4));
    assert!(g.weights.contains(&("e".into(), "ρ".into(), "2".into())));
    assert!(g.weights.contains(&("ρ".into(), "e".into(), "1/2".into())));
    assert!(g.to_dot().contains("\"e\" -> \"ρ\" [label=\"2\"]"));

    let incomplete = fusion_graph(&kp.hopf, &u, &irr[..4]);
    assert!(incomplete.is_err());
}

#[test]
fn json_round_trip_from_library() {
    let t = build_vtilde_twist().unwrap();
    let s = t.hopf().to_json_string();
    let back = HopfAlgebra::from_json_str(&s).unwrap();
    assert_eq!(back.to_json_string(), s);
}
