//! First-order relaxation and evaluation over bounded structures.

mod common;

use beliefrev::fol::{eval_formula, prenex, FolSignature, FolSystem, QuantifierRelaxation};
use beliefrev::io::parse_fol;
use beliefrev::relax::{check_extensivity, exhaustivity_index};
use beliefrev::{SatisfactionSystem, Semantics};
use common::fol_formula;
use proptest::prelude::*;

fn sig() -> FolSignature {
    FolSignature::new(&["s"], &[("c", &[], "s")], &[("P", &["s"]), ("R", &["s", "s"])]).unwrap()
}

fn sem() -> Semantics<FolSystem> {
    Semantics::new(FolSystem::new(sig(), 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quantifier_relaxation_is_a_relaxation(f in fol_formula()) {
        let sem = sem();
        let s = prenex(&f, &sig()).unwrap();
        prop_assert!(check_extensivity(&sem, &QuantifierRelaxation, &s).unwrap());
        let cap = s.max_prefix() + 1;
        prop_assert!(exhaustivity_index(&sem, &QuantifierRelaxation, &s, cap).unwrap().is_some());
    }

    #[test]
    fn prenex_agrees_with_direct_evaluation(f in fol_formula(), pick in any::<prop::sample::Index>()) {
        let sem = sem();
        let s = prenex(&f, &sig()).unwrap();
        let m = sem.system().model(pick.index(sem.space()));
        prop_assert_eq!(eval_formula(&m, &f).unwrap(), sem.system().satisfies(&m, &s));
    }

    #[test]
    fn printed_sentences_parse_back(f in fol_formula()) {
        let s = prenex(&f, &sig()).unwrap();
        let again = prenex(&parse_fol(&s.to_string()).unwrap(), &sig()).unwrap();
        prop_assert_eq!(again, s);
    }
}
