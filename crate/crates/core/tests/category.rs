use hopfcheck::category::modcat::{build_module_data, g_diagram, printed_module_data, sign_repair_search, verify_module_diagrams, Source};
use hopfcheck::category::ty::*;
use hopfcheck::checks::kp_fundamental;
use hopfcheck::corep::{kp_printed_one_dim, Corep};
use hopfcheck::cyclotomic::CycQ8;
use hopfcheck::linalg::Matrix;
use hopfcheck::models::build_kp;

#[test]
fn bicharacter_values() {
    let chi = chi_c();
    assert_eq!(chi[1][1], -1);
    assert_eq!(chi[2][2], -1);
    assert_eq!(chi[1][2], 1);
    assert_eq!(chi[3][3], 1);
    let mut bad = chi;
    bad[1][2] = -1;
    assert!(build_ty_data(bad, CycQ8::frac(1, 2)).is_err());
}

#[test]
fn pentagon_verdicts() {
    let good = pentagon_check(&build_ty_data(chi_c(), CycQ8::frac(1, 2)).unwrap());
    assert_eq!(good.quadruples, 625);
    assert!(good.passed());
    let bad = pentagon_check(&build_ty_data(chi_c(), CycQ8::one()).unwrap());
    assert!(!bad.passed() && bad.fails_at([RHO; 4]));
    assert!(!bad.associators_unitary);
    let literal = pentagon_check(&build_ty_data(chi_c(), CycQ8::frac(1, 2)).unwrap().with_reading(RhoSRho::Literal));
    assert_eq!(literal.failing.len(), 19);
}

#[test]
fn pentagon_invariant_under_chi_preserving_relabeling() {
    let chi = chi_c();
    let preserving: Vec<_> = k4_automorphisms().into_iter().filter(|p| relabel_chi(&chi, *p) == chi).collect();
    assert_eq!(preserving.len(), 2);
    for tau in [CycQ8::frac(1, 2), CycQ8::one()] {
        let base = pentagon_check(&build_ty_data(chi, tau.clone()).unwrap()).passed();
        for p in k4_automorphisms() {
            let t = build_ty_data(relabel_chi(&chi, p), tau.clone()).unwrap();
            assert_eq!(pentagon_check(&t).passed(), base);
        }
    }
}

#[test]
fn fusion_ring_matches_every_relabeling() {
    let kp = build_kp().unwrap();
    let ones: Vec<Corep> = kp_printed_one_dim(&kp).into_iter().map(Corep::one_dim).collect();
    let t = build_ty_data(chi_c(), CycQ8::frac(1, 2)).unwrap();
    let m = fusion_ring_match(&t, &ones, &kp_fundamental().unwrap());
    assert_eq!(m.rho_squared, vec![1, 1, 1, 1, 0]);
    assert_eq!(m.relabelings.len(), 6);
    assert!(m.relabelings.iter().all(|(_, ok)| *ok));
    // Shuffling the group-likes does not change the outcome.
    let mut shuffled = ones.clone();
    shuffled.swap(1, 3);
    assert!(fusion_ring_match(&t, &shuffled, &kp_fundamental().unwrap()).passed());
}

#[test]
fn printed_psi_maps() {
    let m = printed_module_data();
    assert_eq!(m.psi_g[2], Matrix::from_ints(&[&[1, 0], &[0, -1]]));
    let r = CycQ8::inv_sqrt2();
    assert_eq!(m.psi_g[1], Matrix::from_rows(vec![vec![r.clone(), -r.clone()], vec![r.clone(), r.clone()]]).unwrap());
    assert_eq!(m.psi_rho.column(2), vec![r.clone(), CycQ8::zero(), CycQ8::zero(), r]);
    let gram = m.psi_rho.adjoint().mul(&m.psi_rho).unwrap();
    // (√2 + √2)/4
    assert_eq!(gram.get(1, 2), &(&CycQ8::sqrt2() * &CycQ8::frac(1, 2)));
    let rep = verify_module_diagrams(&m);
    assert!(!rep.all_unitary());
}

#[test]
fn repair_search_results() {
    let res = sign_repair_search(&printed_module_data()).unwrap();
    assert_eq!(res.solutions.len(), 256);
    assert_eq!(res.minimal.changes, 1);
    assert_eq!(res.minimal.entries[3][2], 2);
    let fixed = build_module_data(Source::Repaired);
    assert_eq!(fixed.psi_rho.adjoint().mul(&fixed.psi_rho).unwrap(), Matrix::identity(4));
    assert!(g_diagram(&fixed, 0).holds);
    let rep = verify_module_diagrams(&fixed);
    assert!(rep.passed());
    assert!(rep.g_diagrams[2].lhs.contains("e1⊗e1⊗ξ_b") && rep.g_diagrams[2].lhs.contains("e2⊗e2⊗ξ_b"));
}
