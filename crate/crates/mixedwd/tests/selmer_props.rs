mod common;

use common::*;
use mixedwd::exact::{q, Q};
use mixedwd::selmer::cocycle::{coface0, coface1, z1_via_cofaces};
use mixedwd::selmer::examples::{free_class3, heisenberg, heisenberg_monodromy, monodromy_pair, upper_triangular};
use mixedwd::selmer::normalize::normal_cocycle;
use mixedwd::selmer::{act_g, normalize_f, normalize_g, normalize_g_by_solve, vge, z1g_check, D0Point, D1Point, GCocycle, PhiNLieDatum};
use proptest::prelude::*;

fn data() -> Vec<PhiNLieDatum> {
    let half = mixedwd::exact::qf(1, 2);
    vec![
        heisenberg(3).unwrap(),
        heisenberg_monodromy(2).unwrap(),
        monodromy_pair(5).unwrap(),
        upper_triangular(4, 2).unwrap(),
        free_class3(2, [[q(0), -half.clone()], [q(1), q(0)]], &[]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn g_normal_form_round_trip(seed in any::<u64>(), which in 0usize..5) {
        let d = &data()[which];
        let mut r = rng(seed);
        let fixed = vge(d).unwrap().phi_fixed;
        let v0 = fixed.basis().mul_vec(&small_vec(&mut r, fixed.dim()));
        let w = small_vec(&mut r, d.dim());
        let c = act_g(d, &normal_cocycle(d, &d.identity(), &v0), &d.identity(), &w).unwrap();
        prop_assert!(z1g_check(d, &c));
        let nf = normalize_g(d, &c.v, &c.u).unwrap();
        prop_assert_eq!(&nf.v0, &v0);
        prop_assert_eq!(&nf.w, &d.inv(&w));
        prop_assert_eq!(normalize_g_by_solve(d, &c.v, &c.u).unwrap(), nf);
    }

    #[test]
    fn f_normal_form_is_free_and_transitive(seed in any::<u64>(), which in 0usize..5) {
        let d = &data()[which];
        let mut r = rng(seed);
        let ker = mixedwd::exact::Subspace::kernel(d.n());
        let u = ker.basis().mul_vec(&small_vec(&mut r, ker.dim()));
        let w = normalize_f(d, &u).unwrap();
        prop_assert_eq!(d.mul_all(&[&d.inv(&w), &u, &d.apply_phi(&w)]), d.identity());
        let w2 = ker.basis().mul_vec(&small_vec(&mut r, ker.dim()));
        let u2 = d.mul_all(&[&d.inv(&w2), &u, &d.apply_phi(&w2)]);
        prop_assert_eq!(normalize_f(d, &u2).unwrap(), d.mul(&d.inv(&w2), &w));
    }

    #[test]
    fn cofaces_are_cosimplicial(seed in any::<u64>(), which in 0usize..5) {
        let d = &data()[which];
        let mut r = rng(seed);
        let a = D0Point { x0: small_vec(&mut r, d.dim()), u0: small_vec(&mut r, d.dim()) };
        let f = |i: usize, j: usize| coface1(d, j, &coface0(d, i, &a).unwrap()).unwrap();
        prop_assert_eq!(f(0, 1), f(0, 0));
        prop_assert_eq!(f(0, 2), f(1, 0));
        prop_assert_eq!(f(1, 2), f(1, 1));
    }

    #[test]
    fn cocycle_conditions_agree(seed in any::<u64>(), which in 0usize..5) {
        let d = &data()[which];
        let mut r = rng(seed);
        let c = GCocycle { x: small_vec(&mut r, d.dim()), v: small_vec(&mut r, d.dim()), u: small_vec(&mut r, d.dim()) };
        prop_assert_eq!(z1g_check(d, &c), z1_via_cofaces(d, &D1Point::from_cocycle(d, &c)));
    }
}

#[test]
fn non_crystalline_and_non_cocycle_inputs_are_rejected() {
    let d = monodromy_pair(3).unwrap();
    assert!(normalize_f(&d, &[q(1), q(0)]).is_err());
    let v: Vec<Q> = vec![q(0), q(1)];
    assert!(normalize_g(&d, &v, &d.identity()).is_err());
}
