use gflow_core::certify::check_optimality_uncap;
use gflow_core::enhanced::enhanced_continuous_scaling;
use gflow_core::format::{check_report, parse_instance, parse_report, write_instance, write_report, Instance, Report};
use gflow_core::generate::{random_lp2, random_std, random_uncap, GenParams};
use gflow_core::lp2::{solve_lp2, Lp2Outcome};
use gflow_core::rational::{format_rational, parse_rational, ratio};
use gflow_core::scaling::continuous_scaling;
use gflow_core::transform::{solve_standard, StdOutcome};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = GenParams> {
    (2usize..=6, 1usize..=14, 1u32..=5, any::<u64>()).prop_map(|(nodes, arcs, bits, seed)| GenParams {
        nodes,
        arcs,
        bits,
        seed,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_print_and_parse_back(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = ratio(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn instances_survive_text(p in params()) {
        for inst in [Instance::Uncap(random_uncap(p)), Instance::Std(random_std(p)), Instance::Lp2(random_lp2(p))] {
            prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
        }
    }

    #[test]
    fn both_algorithms_certify_the_same_value(p in params()) {
        let inst = random_uncap(p);
        let weak = continuous_scaling(&inst).unwrap();
        let strong = enhanced_continuous_scaling(&inst).unwrap();
        prop_assert!(check_optimality_uncap(&inst, &weak.flow, &weak.labels).is_ok());
        prop_assert!(check_optimality_uncap(&inst, &strong.flow, &strong.labels).is_ok());
        prop_assert_eq!(weak.value, strong.value);
    }

    #[test]
    fn standard_answers_check_after_a_text_round_trip(p in params()) {
        let std = random_std(p);
        let report = match solve_standard(&std).unwrap() {
            StdOutcome::Optimal(s) => Report::optimal_std(&std, &s.flow, &s.labels, &s.value),
            StdOutcome::Unbounded(c) => Report::unbounded_std(&std, &c),
        };
        let report = parse_report(&write_report(&report)).unwrap();
        prop_assert_eq!(check_report(&Instance::Std(std), &report), Ok(()));
    }

    #[test]
    fn lp2_answers_verify(p in params()) {
        let lp = random_lp2(GenParams { bits: p.bits.min(3), ..p });
        match solve_lp2(&lp).unwrap() {
            Lp2Outcome::Feasible(x) => prop_assert_eq!(lp.check_solution(&x), Ok(())),
            Lp2Outcome::Infeasible(cert) => prop_assert_eq!(lp.check_certificate(&cert), Ok(())),
        }
    }
}
