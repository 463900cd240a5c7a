use bicover_core::automata::{cover_from_nfa, eliminate_epsilon, equivalent, language_of, nfa_from_cover, nfa_from_network};
use bicover_core::families::{from_name, is_permutation_invariant, midpoint_cut_cover, perm_invariant_network, random_bipartite};
use bicover_core::measures::{cov_lower_bound, kappa};
use bicover_core::rational::int;
use bicover_core::rectifier::{cover_to_depth2, depth2_to_cover, eligible_edge_cover};
use bicover_core::report::bound_report;
use bicover_core::setcover::{biclique_instance, exact_opt, greedy, lp_relax, verify_chain};
use bicover_core::{realizes, samples, validate_cover, BicliqueCover, BipartiteGraph, RectifierNetwork};
use proptest::prelude::*;

fn realized(r: &RectifierNetwork, g: &BipartiteGraph) -> bool {
    realizes(r, g).unwrap().is_realized()
}

#[test]
fn sample_end_to_end() {
    let g = samples::graph();
    let bi = biclique_instance(&g).unwrap();
    let opt = bi.cover(&exact_opt(&bi.instance).unwrap());
    assert_eq!(validate_cover(&g, &opt).unwrap(), 13);

    let r = cover_to_depth2(&g, &opt).unwrap();
    assert!(realized(&r, &g));
    assert_eq!(r.size(), 13);

    let report = bound_report(&g, &samples::compact_network(), &samples::cover(), 1 << 20).unwrap();
    assert_eq!(report.cov_upper, 13);
    assert_eq!(report.rect_upper, 12);
    assert_eq!(report.kappa, kappa(&g).unwrap());
    assert!(report.alpha.is_some());

    let l = language_of(&g).unwrap();
    let from_cover = nfa_from_cover(&opt, &l).unwrap();
    let from_net = eliminate_epsilon(&nfa_from_network(&samples::compact_network(), &l).unwrap());
    assert!(equivalent(&from_cover, &from_net).unwrap());
    assert_eq!(cover_from_nfa(&from_cover).unwrap().cover.weight(), 13);
}

#[test]
fn orthogonal_four_through_the_layered_network() {
    let g = from_name("orthogonal:4", 0).unwrap();
    let spec = is_permutation_invariant(&g).unwrap().expect("orthogonality graphs are permutation invariant");
    let pn = perm_invariant_network(&spec).unwrap();
    assert!(realized(&pn.network, &spec.graph().unwrap()));
    let (cut, bound) = midpoint_cut_cover(&pn, &spec.graph().unwrap()).unwrap();
    let spec_graph = spec.graph().unwrap();
    let w = validate_cover(&spec_graph, &cut).unwrap();
    assert!(u128::from(w) <= bound);
    assert!(int(w as i64) >= cov_lower_bound(&spec_graph).unwrap().cov);
    let eligible = eligible_edge_cover(&pn.network, &spec_graph).unwrap();
    validate_cover(&spec_graph, &eligible).unwrap();
}

#[test]
fn greedy_and_lp_bracket_the_sample_cover() {
    let g = samples::graph();
    let bi = biclique_instance(&g).unwrap();
    let lp = lp_relax(&bi.instance).unwrap();
    let opt = exact_opt(&bi.instance).unwrap().total_cost;
    let gr = greedy(&bi.instance).unwrap().total_cost;
    assert!(lp <= opt && opt <= gr);
    assert!(verify_chain(&bi.instance).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_graph_round_trips(na in 1usize..5, nb in 1usize..5, seed in any::<u64>()) {
        let g = random_bipartite(na, nb, 0.5, seed).unwrap();
        prop_assume!(g.edge_count() > 0);
        let bi = biclique_instance(&g).unwrap();
        let c = bi.cover(&exact_opt(&bi.instance).unwrap());
        let r = cover_to_depth2(&g, &c).unwrap();
        prop_assert!(realized(&r, &g));
        prop_assert_eq!(r.size() as u64, c.weight());
        let back = depth2_to_cover(&r, &g).unwrap();
        prop_assert!(validate_cover(&g, &back).unwrap() <= 2 * r.size() as u64);

        let json = serde_json::to_string(&r.to_json()).unwrap();
        let r2 = RectifierNetwork::from_json_str(&json).unwrap();
        prop_assert!(realized(&r2, &g));
        let cj = c.to_json(&g);
        prop_assert_eq!(BicliqueCover::from_json(&g, &cj).unwrap().weight(), c.weight());

        let l = language_of(&g).unwrap();
        let m = eliminate_epsilon(&nfa_from_network(&r, &l).unwrap());
        prop_assert_eq!(m.language_enumerate().unwrap(), l.word_set());
    }
}
