use proptest::prelude::*;

use rtorsion::cw::{circle, EdgeChain, IntegralH1};
use rtorsion::euler::canonical_structure;
use rtorsion::fixtures::{axis_bundle, axis_loop, circle_loop, torus2};
use rtorsion::flat::FlatRep;
use rtorsion::matrix::Matrix;
use rtorsion::scalar::{powi, q, qf, Q};
use rtorsion::torsion::Twisted;

fn nonzero_q() -> impl Strategy<Value = Q> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| qf(if neg { -n } else { n }, d))
}

/// Scalars that keep a circle bundle acyclic.
fn acyclic_q() -> impl Strategy<Value = Q> {
    nonzero_q().prop_filter("t = 1 has homology", |t| *t != q(1))
}

fn invertible_2x2() -> impl Strategy<Value = Matrix> {
    prop::array::uniform4(-3i64..=3)
        .prop_filter("singular", |[a, b, c, d]| a * d - b * c != 0)
        .prop_map(|[a, b, c, d]| Matrix::from_i64(&[&[a, b], &[c, d]]))
}

fn same_bundle(k: usize, f: &FlatRep, g: &FlatRep) -> bool {
    (0..k).all(|e| f.edge_matrix(e) == g.edge_matrix(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_is_a_homomorphism_on_cycles(a in nonzero_q(), b in nonzero_q(), c in nonzero_q(), i in -3i64..=3, j in -3i64..=3) {
        let k = torus2();
        let f = axis_bundle(&k, 0, &Matrix::diag(&[a.clone(), b.clone()])).unwrap()
            .tensor(&axis_bundle(&k, 1, &Matrix::scalar(c.clone())).unwrap()).unwrap();
        let (l0, l1) = (axis_loop(&k, 0).unwrap(), axis_loop(&k, 1).unwrap());
        let mut z = l0.scaled(i);
        z.add_scaled(&l1, j);
        let whole = f.det_on(&k, &z).unwrap();
        let parts = f.det_on(&k, &l0.scaled(i)).unwrap() * f.det_on(&k, &l1.scaled(j)).unwrap();
        prop_assert_eq!(&whole, &parts);
        prop_assert_eq!(whole, powi(&(a * b), i) * powi(&c, 2 * j));
    }

    #[test]
    fn dual_is_an_involution(n in 3usize..=6, a in nonzero_q(), b in nonzero_q(), g in invertible_2x2()) {
        let k = circle(n).unwrap();
        let f = FlatRep::circle_monodromy(&k, &Matrix::diag(&[a, b])).unwrap().conjugate(&g).unwrap();
        prop_assert!(same_bundle(k.count(1), &f.dual().dual(), &f));
    }

    #[test]
    fn char_class_is_constant_mod_2(n in 3usize..=6, h in -4i64..=4, g in -4i64..=4) {
        let k = circle(n).unwrap();
        let h1 = IntegralH1::new(&k).unwrap();
        let lp = circle_loop(&k).unwrap();
        let x = canonical_structure(&k, 0).unwrap();
        let c1 = x.act(&k, &lp.scaled(h)).unwrap().char_cycle(&k).unwrap();
        let c2 = x.act(&k, &lp.scaled(g)).unwrap().char_cycle(&k).unwrap();
        let mut d = c1;
        d.add_scaled(&c2, -1);
        prop_assert!(h1.class_of(&k, &d).unwrap().coords.iter().all(|x| x % 2 == 0));
    }

    #[test]
    fn torsion_is_gauge_invariant(n in 3usize..=5, a in acyclic_q(), b in acyclic_q(), g in invertible_2x2(), h in -2i64..=2) {
        let k = circle(n).unwrap();
        let f = FlatRep::circle_monodromy(&k, &Matrix::diag(&[a, b])).unwrap();
        let fg = f.conjugate(&g).unwrap();
        let xi = canonical_structure(&k, 0).unwrap().act(&k, &circle_loop(&k).unwrap().scaled(h)).unwrap();
        let t = Twisted::new(&k, f).euler(&xi).unwrap();
        let tg = Twisted::new(&k, fg).euler(&xi).unwrap();
        prop_assert_eq!(t.coeff(), tg.coeff());
    }

    #[test]
    fn torsion_ignores_the_basepoint(n in 3usize..=6, t in acyclic_q(), h in -2i64..=2, y in 0usize..6) {
        let k = circle(n).unwrap();
        let y = y % n;
        let f = FlatRep::circle_monodromy(&k, &Matrix::scalar(t)).unwrap();
        let tw = Twisted::new(&k, f);
        let xi = canonical_structure(&k, 0).unwrap().act(&k, &circle_loop(&k).unwrap().scaled(h)).unwrap();
        let moved = xi.reroot(&k, y).unwrap();
        let (a, b) = (tw.euler(&xi).unwrap(), tw.euler(&moved).unwrap());
        prop_assert_eq!(a.coeff(), b.coeff());
        // and the two roots see the same structure
        let back = moved.reroot(&k, 0).unwrap();
        let h1 = IntegralH1::new(&k).unwrap();
        prop_assert!(back.diff_class(&k, &h1, &xi).unwrap().is_zero());
    }

    #[test]
    fn zero_chain_has_trivial_determinant(n in 3usize..=6, t in nonzero_q()) {
        let k = circle(n).unwrap();
        let f = FlatRep::circle_monodromy(&k, &Matrix::scalar(t)).unwrap();
        prop_assert_eq!(f.det_on(&k, &EdgeChain::zero(&k)).unwrap(), q(1));
    }
}
