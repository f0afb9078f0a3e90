use gjms_core::exact::{rat, Assignment, MultiPoly, Var};
use gjms_core::intertwinor::{apply_g, apply_u, Mode, ModeVector};
use num_rational::BigRational;
use proptest::prelude::*;

const VARS: [Var; 3] = [Var::C, Var::B, Var::Q];

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d).unwrap())
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), rational()), 0..6).prop_map(|terms| {
        MultiPoly::from_terms(
            &VARS,
            terms.into_iter().map(|((a, b, c), x)| (vec![a, b, c], x)),
        )
    })
}

fn assignment() -> impl Strategy<Value = Assignment> {
    (rational(), rational(), rational())
        .prop_map(|(c, b, q)| Assignment::from([(Var::C, c), (Var::B, b), (Var::Q, q)]))
}

fn mode_vector() -> impl Strategy<Value = ModeVector> {
    prop::collection::vec(((-6i64..=6, -6i64..=6), rational()), 0..5).prop_map(|terms| {
        ModeVector::from_terms(terms.into_iter().map(|((j, f), c)| (Mode::new(j, f), c)))
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(), b in poly(), at in assignment()) {
        let ea = a.eval(&at).unwrap();
        let eb = b.eval(&at).unwrap();
        prop_assert_eq!((&a * &b).eval(&at).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&at).unwrap(), ea + eb);
    }

    #[test]
    fn shift_round_trip(a in poly(), t in rational(), v in prop::sample::select(VARS.to_vec())) {
        let there = a.substitute_shift(v, &t).unwrap();
        prop_assert_eq!(there.substitute_shift(v, &-t).unwrap(), a);
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(MultiPoly::parse(&text, &VARS).unwrap(), a);
    }

    #[test]
    fn u_is_linear(r in -4i64..=4, x in rational(), y in rational(), v in mode_vector(), w in mode_vector()) {
        let combo = &v.scale(&x) + &w.scale(&y);
        let expected = &apply_u(r, &v).scale(&x) + &apply_u(r, &w).scale(&y);
        prop_assert_eq!(apply_u(r, &combo), expected);
    }

    #[test]
    fn u_moves_to_diagonal_neighbours(r in -4i64..=4, j in -10i64..=10, f in -10i64..=10) {
        let out = apply_u(r, &ModeVector::basis(Mode::new(j, f)));
        for t in out.support() {
            prop_assert_eq!((t.j - j).abs(), 1);
            prop_assert_eq!((t.f - f).abs(), 1);
        }
        let twice = apply_u(r, &out);
        let parity = Mode::new(j, f).parity();
        for t in twice.support() {
            prop_assert_eq!(t.parity(), parity);
        }
    }

    #[test]
    fn g_sign_symmetry(m in 1usize..=5, j in -12i64..=12, f in -12i64..=12) {
        let g = |jj, ff| apply_g(m, &ModeVector::basis(Mode::new(jj, ff))).unwrap().coeff(Mode::new(jj, ff));
        let base = g(j, f);
        prop_assert_eq!(&g(-j, f), &base);
        prop_assert_eq!(&g(j, -f), &base);
    }
}

#[test]
fn values_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<MultiPoly>();
    check::<ModeVector>();
    check::<gjms_core::VerificationReport>();
    check::<gjms_core::spectrum::SpectrumTable>();
}
