//! Horn closure and relaxation.

mod common;

use beliefrev::horn::{intersection_closure, is_intersection_closed, HornRelaxation, HornSystem};
use beliefrev::relax::{check_extensivity, exhaustivity_index};
use beliefrev::{KnowledgeBase, ModelSet, SatisfactionSystem, Semantics};
use common::{horn_sentence, ATOMS};
use proptest::prelude::*;

const SPACE: usize = 8;

fn model_set() -> impl Strategy<Value = ModelSet> {
    prop::collection::vec(any::<bool>(), SPACE)
        .prop_map(|bits| ModelSet::from_indices(SPACE, (0..SPACE).filter(|&i| bits[i])))
}

fn sem() -> Semantics<HornSystem> {
    Semantics::new(HornSystem::with_atoms(ATOMS).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn intersection_closure_is_a_closure(s in model_set(), extra in model_set()) {
        let cl = intersection_closure(&s);
        prop_assert!(s.is_subset(&cl));
        prop_assert!(is_intersection_closed(&cl));
        prop_assert_eq!(intersection_closure(&cl), cl.clone());
        prop_assert!(cl.is_subset(&intersection_closure(&s.union(&extra))));
    }

    #[test]
    fn horn_relaxation_is_extensive_and_exhaustive(phi in horn_sentence()) {
        let sem = sem();
        prop_assert!(check_extensivity(&sem, &HornRelaxation, &phi).unwrap());
        let k = exhaustivity_index(&sem, &HornRelaxation, &phi, ATOMS.len() + 1).unwrap();
        prop_assert!(k.is_some());
    }

    #[test]
    fn all_true_is_always_a_model(phi in horn_sentence()) {
        let sem = sem();
        let triv = sem.trivial_models().clone();
        prop_assert_eq!(triv.len(), 1);
        prop_assert!(triv.is_subset(&sem.sentence_models(&phi).unwrap()));
    }

    #[test]
    fn horn_models_resynthesize(phis in prop::collection::vec(horn_sentence(), 0..3)) {
        let sem = sem();
        let kb = KnowledgeBase::new(phis);
        let models = sem.models_of(&kb).unwrap();
        prop_assert!(is_intersection_closed(&models));
        let theory = sem.system().definable_theory(&models).unwrap().unwrap();
        prop_assert!(sem.cn_equal(&KnowledgeBase::new(theory), &kb).unwrap());
    }
}
