use legalsys::families::{triangular_prism, tutte};
use legalsys::graph::{are_isomorphic, curvature, find_hamiltonian_cycle, is_hamiltonian_cycle, Order};
use legalsys::legal::{
    exists_strongly_legal_state, remove_cone_vertex, restrict_cone_system, search_partition_system,
    SearchMode, SearchOptions,
};
use legalsys::planar::{
    barycentric_skeleton, cubic, cusped_check, hamilton_to_state, relhyp_quads_check,
    state_to_hamilton, vf_graph, EmbeddedGraph,
};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cycle_edges(c: &[usize]) -> Vec<(usize, usize)> {
    let mut es: Vec<_> = (0..c.len())
        .map(|i| {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            (a.min(b), a.max(b))
        })
        .collect();
    es.sort();
    es
}

#[test]
fn tutte_vertex_face_graph() {
    let e = tutte().embedding.unwrap();
    let vf = vf_graph(&e).unwrap();
    assert_eq!((vf.graph().n(), vf.graph().edge_count()), (71, 138));
    assert_eq!(curvature(vf.graph(), Order::Finite(2)), Ratio::from_integer(0));
    let verdict = cusped_check(&vf.embedding).unwrap();
    assert!(verdict.pass(), "{:?}", verdict.conditions);
    assert_eq!(verdict.conditions.len(), 4);
    assert!(relhyp_quads_check(vf.graph()).pass());
}

#[test]
fn tutte_has_no_hamiltonian_cycle() {
    assert_eq!(find_hamiltonian_cycle(&tutte().graph).unwrap(), None);
}

#[test]
fn tutte_cone_chain_reaches_vf() {
    let e = tutte().embedding.unwrap();
    let b = barycentric_skeleton(&e).unwrap();
    assert_eq!(b.graph.n(), 46 + 69 + 25);
    let mut g = b.graph.clone();
    // edge vertices sit in one block; remove from the top so ids below stay put
    for i in (0..b.edges.len()).rev() {
        g = remove_cone_vertex(&g, b.edge_id(i)).unwrap();
    }
    assert_eq!(g.n(), 71);
    let vf = vf_graph(&e).unwrap();
    assert!(are_isomorphic(&g, vf.graph()));
}

#[test]
fn prism_barycentric_system_survives_reduction() {
    let e = triangular_prism().embedding.unwrap();
    let b = barycentric_skeleton(&e).unwrap();
    let found = search_partition_system(&b.graph, SearchMode::Colorings, &SearchOptions::default()).unwrap();
    let (m, s) = found.found().expect("a colored system on the subdivided prism");
    let (mut g, mut m, mut s) = (b.graph.clone(), m.clone(), s.clone());
    for i in (0..b.edges.len()).rev() {
        let r = restrict_cone_system(&g, b.edge_id(i), &m, &s).unwrap();
        assert!(r.report.is_legal());
        (g, m, s) = (r.graph, r.system, r.state);
    }
    assert!(are_isomorphic(&g, vf_graph(&e).unwrap().graph()));
}

#[test]
fn hamiltonian_iff_strongly_legal_up_to_ten() {
    for e in cubic::enumerate(10) {
        let ham = find_hamiltonian_cycle(e.graph()).unwrap();
        let vf = vf_graph(&e).unwrap();
        let strong = exists_strongly_legal_state(vf.graph()).unwrap();
        assert_eq!(ham.is_some(), strong.is_some(), "{:?}", e.graph());
        if let Some(s) = strong {
            let c = state_to_hamilton(&e, &s).unwrap();
            assert!(is_hamiltonian_cycle(e.graph(), &c));
        }
    }
}

#[test]
fn random_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for t in 0..50 {
        let n = 4 + 2 * (t % 9);
        let e: EmbeddedGraph = cubic::random_cubic(n, &mut rng);
        let c = find_hamiltonian_cycle(e.graph()).unwrap().expect("small 3-connected cubic plane graphs are Hamiltonian");
        let s = hamilton_to_state(&e, &c).unwrap();
        let back = state_to_hamilton(&e, &s).unwrap();
        assert_eq!(cycle_edges(&back), cycle_edges(&c));
    }
}
