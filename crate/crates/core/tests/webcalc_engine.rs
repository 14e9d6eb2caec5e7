use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use c2_theta::netforms::{clasp_trace, delta1, delta2, TriLabel};
use c2_theta::qscalar::{q, QScalar};
use c2_theta::webcalc::{
    annihilation_witness, canonicalize, clasp_square_trace, clasp_trace_oracle, close_with,
    compose, crossing_x, dump_web, evaluate, expand_clasp_double, expand_clasp_double_corrected,
    expand_clasp_single, expand_clasp_single_with, glue, glue_theta, last_pair_witness, parse_web,
    reduce_closed, square, theta_oracle, trace_pairs, ReduceOptions, Reducer, Web, WebError,
    WebSum,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn fixture(name: &str) -> Web {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    parse_web(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn sign(n: usize) -> QScalar {
    QScalar::from_int(if n.is_multiple_of(2) { 1 } else { -1 })
}

fn trace(ws: &WebSum, n: usize) -> QScalar {
    reduce_closed(&close_with(ws, &trace_pairs(n)).unwrap()).unwrap()
}

#[test]
fn loops_and_small_webs() {
    assert_eq!(evaluate(&fixture("single_loop.json")).unwrap(), delta1());
    assert_eq!(evaluate(&fixture("double_loop.json")).unwrap(), delta2());
    assert!(evaluate(&fixture("tadpole.json")).unwrap().is_zero());
    let theta_graph = evaluate(&fixture("double_digon.json")).unwrap();
    assert_eq!(theta_graph, -(q(2) * q(2) * delta2()));
    assert_eq!(theta_graph, delta1() * q(5));
}

#[test]
fn nonplanar_rotation_is_rejected() {
    let s = r#"{"vertices": [{"kind": "tetravalent", "half_edges": [0, 1, 2, 3]}], "pairings": [[0, 2], [1, 3]]}"#;
    assert!(matches!(parse_web(s), Err(WebError::NotPlanar { .. })));
}

#[test]
fn unpaired_half_edge_is_rejected() {
    let s =
        r#"{"vertices": [{"kind": "trivalent", "half_edges": [0, 1, 2]}], "pairings": [[0, 1]]}"#;
    assert!(matches!(parse_web(s), Err(WebError::Malformed(_))));
}

#[test]
fn single_clasp_traces_and_sizes() {
    for (n, terms) in [(1, 1), (2, 3), (3, 14), (4, 84)] {
        let p = expand_clasp_single(n).unwrap();
        assert_eq!(p.len(), terms, "n = {n}");
        assert_eq!(
            clasp_trace_oracle(n).unwrap(),
            sign(n) * clasp_trace(n as u32),
            "n = {n}"
        );
    }
}

#[test]
fn clasp_is_idempotent_under_closure() {
    for n in 1..=4 {
        assert_eq!(
            clasp_square_trace(n).unwrap(),
            sign(n) * clasp_trace(n as u32),
            "n = {n}"
        );
    }
}

#[test]
fn clasp_kills_turnbacks() {
    for n in 2..=4 {
        assert!(annihilation_witness(n).unwrap().is_zero(), "n = {n}");
    }
}

#[test]
fn double_clasp_corrected() {
    assert_eq!(
        trace(&expand_clasp_double_corrected(1).unwrap(), 1),
        delta2()
    );
    for (n, dim) in [(2, 14), (3, 30)] {
        let p = expand_clasp_double_corrected(n).unwrap();
        assert_eq!(trace(&p, n).limit_q1().unwrap(), rat(dim, 1), "n = {n}");
        assert!(last_pair_witness(&p, n).unwrap().is_zero(), "n = {n}");
    }
}

#[test]
fn double_clasp_as_drawn_is_not_a_projector() {
    let p = expand_clasp_double(2).unwrap();
    assert_eq!(trace(&p, 2).limit_q1().unwrap(), rat(31, 2));
    assert!(!last_pair_witness(&p, 2).unwrap().is_zero());
}

#[test]
fn term_budget_is_enforced() {
    let opts = ReduceOptions {
        term_budget: 10,
        ..Default::default()
    };
    assert!(matches!(
        expand_clasp_single_with(4, &opts),
        Err(WebError::TermBudget(10))
    ));
}

/// `q -> 1` limits of the diagrammatic theta for `a <= b <= c`.
#[test]
fn oracle_classical_values() {
    let frozen = [
        ((0, 0, 0), rat(1, 1)),
        ((0, 1, 1), rat(-4, 1)),
        ((0, 2, 2), rat(10, 1)),
        ((0, 3, 3), rat(-20, 1)),
        ((0, 4, 4), rat(35, 1)),
        ((1, 1, 2), rat(10, 1)),
        ((1, 2, 3), rat(-20, 1)),
        ((1, 3, 4), rat(35, 1)),
        ((2, 2, 2), rat(-15, 1)),
        ((2, 2, 4), rat(35, 1)),
        ((2, 3, 3), rat(70, 3)),
    ];
    for ((a, b, c), v) in frozen {
        assert_eq!(
            theta_oracle(a, b, c).unwrap().limit_q1().unwrap(),
            v,
            "({a},{b},{c})"
        );
    }
}

#[test]
fn oracle_is_symmetric_up_to_sign() {
    for (a, b, c) in [(1, 1, 2), (2, 2, 2), (1, 2, 3), (2, 0, 2)] {
        let v = theta_oracle(a, b, c).unwrap();
        for t in TriLabel::new(a, b, c).permutations() {
            let w = theta_oracle(t.a, t.b, t.c).unwrap();
            assert!(w == v || w == -&v, "{t}");
        }
    }
}

#[test]
fn inadmissible_oracle_errors() {
    assert!(matches!(
        theta_oracle(1, 1, 1),
        Err(WebError::Inadmissible(..))
    ));
}

fn closed_webs() -> Vec<Web> {
    let mut v = vec![
        fixture("double_digon.json"),
        fixture("tadpole.json"),
        fixture("single_loop.json"),
    ];
    for ws in [
        close_with(&WebSum::from_web(&crossing_x()), &trace_pairs(2)).unwrap(),
        close_with(
            &WebSum::from_web(&compose(&square(), &square(), 2).unwrap()),
            &trace_pairs(2),
        )
        .unwrap(),
        glue_theta(1, 1, 2).unwrap(),
    ] {
        v.extend(ws.terms().map(|(w, _)| w.clone()));
    }
    v
}

fn open_webs() -> Vec<Web> {
    expand_clasp_single(3)
        .unwrap()
        .terms()
        .map(|(w, _)| w.clone())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disjoint_union_multiplies(i in 0usize..16, j in 0usize..16) {
        let ws = closed_webs();
        let (a, b) = (&ws[i % ws.len()], &ws[j % ws.len()]);
        let both = glue(&[a, b], &[], &[]).unwrap();
        prop_assert_eq!(evaluate(&both).unwrap(), evaluate(a).unwrap() * evaluate(b).unwrap());
    }

    #[test]
    fn dump_round_trip(i in 0usize..64) {
        let mut ws = closed_webs();
        ws.extend(open_webs());
        let w = &ws[i % ws.len()];
        let back = parse_web(&dump_web(w)).unwrap();
        prop_assert_eq!(&back, w);
        prop_assert_eq!(canonicalize(&back), canonicalize(w));
    }

    #[test]
    fn random_orders_agree_on_clasp_closure(seed in any::<u64>()) {
        let ws = close_with(&expand_clasp_single(3).unwrap(), &trace_pairs(3)).unwrap();
        let mut r = Reducer::new(ReduceOptions { log: true, ..ReduceOptions::randomized(seed) });
        prop_assert_eq!(r.reduce_closed(&ws).unwrap(), -clasp_trace(3));
        prop_assert!(r.log.iter().all(|s| s.after.iter().all(|a| *a < s.before)));
    }
}
