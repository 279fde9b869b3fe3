//! Property tests over random formulas, matrices and machines.

use proptest::prelude::*;

use hxlab::formula::RenderStyle;
use hxlab::hilbert::unify::{is_instance, match_instance, unify};
use hxlab::matrix::{classify, evaluate, Assignment, Classification, Value};
use hxlab::turing::{
    bits_to_text, bounded_io_equivalence, build_halt_probe, decode_fields, decode_machine, encode_fields,
    encode_machine, observe, probe_inputs, simulate, text_to_bits, Behavior, EquivalenceVerdict, Move,
    Symbol, TuringMachine,
};
use hxlab::{matrix_t, matrix_tprime, parse_formula, Formula, Substitution, Var};

fn formula(max_depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just("p"), Just("q"), Just("r"), Just("x1")].prop_map(Formula::var);
    leaf.prop_recursive(max_depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

fn machine() -> impl Strategy<Value = TuringMachine> {
    let cell = proptest::option::weighted(
        0.8,
        (0..3usize, 0..3usize, any::<bool>()).prop_map(|(next, w, right)| (next, Symbol::ALL[w], right)),
    );
    proptest::collection::vec(cell, 9).prop_map(|cells| {
        let mut m = TuringMachine::new(3, 0).unwrap();
        for (i, c) in cells.into_iter().enumerate() {
            if let Some((next, write, right)) = c {
                let d = if right { Move::R } else { Move::L };
                m.add(i / 3, Symbol::ALL[i % 3], next, write, d).unwrap();
            }
        }
        m
    })
}

fn binary(max: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('0'), Just('1')], 0..=max)
        .prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_parse_round_trip(f in formula(5)) {
        prop_assert_eq!(parse_formula(&f.render()).unwrap(), f.clone());
        prop_assert_eq!(parse_formula(&f.render_with(RenderStyle::Full)).unwrap(), f);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        f in formula(4),
        images in proptest::collection::vec(formula(3), 4),
        values in proptest::collection::vec(0u8..3, 4),
        three in any::<bool>(),
    ) {
        let m = if three { matrix_tprime() } else { matrix_t() };
        let names = ["p", "q", "r", "x1"];
        let s: Substitution = names.iter().zip(&images).map(|(n, g)| (Var::new(n).unwrap(), g.clone())).collect();
        let mut a = Assignment::new();
        for (n, v) in names.iter().zip(&values) {
            a.set(Var::new(n).unwrap(), v % m.size() as Value);
        }
        let mut composed = Assignment::new();
        for (n, g) in names.iter().zip(&images) {
            composed.set(Var::new(n).unwrap(), evaluate(g, &m, &a).unwrap());
        }
        prop_assert_eq!(evaluate(&s.apply(&f), &m, &a).unwrap(), evaluate(&f, &m, &composed).unwrap());
    }

    #[test]
    fn tprime_validity_implies_classical(f in formula(4)) {
        if classify(&f, &matrix_tprime()).unwrap() == Classification::T {
            prop_assert_eq!(classify(&f, &matrix_t()).unwrap(), Classification::T);
        }
    }

    #[test]
    fn unifiers_unify(a in formula(3), b in formula(3)) {
        if let Some(s) = unify(&a, &b) {
            prop_assert_eq!(s.apply(&a), s.apply(&b));
        }
        let matched = match_instance(&a, &b);
        prop_assert_eq!(matched.is_some(), is_instance(&a, &b));
        if let Some(s) = matched {
            prop_assert_eq!(s.apply(&a), b);
        }
    }

    #[test]
    fn fields_round_trip(fields in proptest::collection::vec(".{0,12}", 0..5)) {
        prop_assert_eq!(decode_fields(&encode_fields(&fields)).unwrap(), fields);
    }

    #[test]
    fn bits_round_trip(text in ".{0,20}") {
        prop_assert_eq!(bits_to_text(&text_to_bits(&text)).unwrap(), text);
    }

    #[test]
    fn machines_round_trip_and_simulate_deterministically(m in machine(), w in binary(6)) {
        prop_assert_eq!(decode_machine(&encode_machine(&m)).unwrap(), m.clone());
        prop_assert_eq!(simulate(&m, &w, 500).unwrap(), simulate(&m, &w, 500).unwrap());
    }

    #[test]
    fn trapped_runs_never_halt(m in machine(), w in binary(5)) {
        if let Behavior::Diverges { .. } = observe(&m, &w, 1000).unwrap() {
            prop_assert!(simulate(&m, &w, 5000).unwrap().output().is_none());
        }
    }

    #[test]
    fn witnesses_reverify(a in machine(), b in machine()) {
        if let EquivalenceVerdict::ProvenDifferent { witness, left, right } =
            bounded_io_equivalence(&a, &b, &probe_inputs(3), 2000).unwrap()
        {
            prop_assert_eq!(observe(&a, &witness, 2000).unwrap(), left);
            prop_assert_eq!(observe(&b, &witness, 2000).unwrap(), right);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // the probe ignores its input and halts, with w, exactly when m halts on w
    #[test]
    fn halt_probe_matches_direct_runs(m in machine(), w in binary(4), x in binary(5), y in binary(5)) {
        let direct = observe(&m, &w, 300).unwrap();
        let probe = build_halt_probe(&m, &w);
        let (px, py) = (observe(&probe, &x, 100_000).unwrap(), observe(&probe, &y, 100_000).unwrap());
        match direct {
            Behavior::Halted { .. } => {
                prop_assert!(matches!(&px, Behavior::Halted { output, .. } if *output == w), "{}", px);
                prop_assert!(matches!(&py, Behavior::Halted { output, .. } if *output == w), "{}", py);
            }
            Behavior::Diverges { .. } => {
                prop_assert!(!matches!(px, Behavior::Halted { .. }), "{}", px);
                prop_assert!(!matches!(py, Behavior::Halted { .. }), "{}", py);
            }
            Behavior::Unknown { .. } => {}
        }
    }
}
