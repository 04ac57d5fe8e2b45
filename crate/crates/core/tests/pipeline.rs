mod common;

use cosine_threshold::export::{build_graph, emit_edgelist, parse_edgelist, ThresholdSpec};
use cosine_threshold::matrix::{cocitation, norm_profiles, usable_entities};
use cosine_threshold::measures::cosine;
use cosine_threshold::sheaf::{cloud, envelope, line_params};
use cosine_threshold::threshold::{compute_thresholds, verify_guarantee};
use cosine_threshold::vectors::norm_ratio;
use cosine_threshold::{DataMatrix, Orientation};
use proptest::prelude::*;

use common::*;

fn edge<'a>(
    g: &'a cosine_threshold::export::SimilarityGraph,
    x: &str,
    y: &str,
) -> Option<&'a cosine_threshold::export::Edge> {
    g.edges
        .iter()
        .find(|e| (e.source == x && e.target == y) || (e.source == y && e.target == x))
}

#[test]
fn occurrence_data_shape_and_profiles() {
    let m = occurrence_279();
    assert_eq!((m.nrows(), m.ncols()), (279, 24));
    assert!(m.is_binary());
    let usable = usable_entities(&m, Orientation::Columns, true).unwrap();
    assert_eq!(usable.kept.len(), 24);
    assert!(usable.dropped.is_empty());
    for (v, &(label, k)) in usable.kept.iter().zip(&OCCURRENCE_TOTALS) {
        assert_eq!(v.label(), label);
        assert!((norm_ratio(v).unwrap() - k.sqrt()).abs() < 1e-12, "{label}");
    }
}

#[test]
fn occurrence_thresholds() {
    let m = occurrence_279();
    let (profiles, _) = norm_profiles(&m, Orientation::Columns).unwrap();
    let t = compute_thresholds(&profiles, 279).unwrap();
    assert!((t.lower - 0.068006).abs() < 1e-6);
    assert!((t.upper - 0.2221066).abs() < 1e-7);
    assert_eq!(t.max_pair, ("Narin".to_owned(), "Schubert".to_owned()));
    assert_eq!(t.min_pair, ("Blair".to_owned(), "Dervin".to_owned()));
}

#[test]
fn cocitation_ratio_thresholds() {
    let t = compute_thresholds(&cocitation_profiles(), 24).unwrap();
    assert!((t.lower - 0.2325928).abs() < 2e-6);
    assert!((t.upper - 0.39588).abs() < 1e-6);
    let env = envelope(&cocitation_profiles(), 24).unwrap();
    assert!((env.ab_min - 5.5822502).abs() < 1e-6);
    assert!((env.ab_max - 9.501121).abs() < 1e-6);
    assert!(env.min_line.slope < env.max_line.slope);
}

#[test]
fn croft_tijssen_edge_depends_on_threshold() {
    let m = occurrence_279();
    let lower = build_graph(&m, Orientation::Columns, ThresholdSpec::AutoLower).unwrap();
    let e = edge(&lower, "Croft", "Tijssen").expect("kept above the lower threshold");
    assert!((e.cos - 0.101).abs() < 1e-3);
    assert!((e.r - 0.031).abs() < 1e-3);
    assert!(!e.negative);

    let upper = build_graph(&m, Orientation::Columns, ThresholdSpec::AutoUpper).unwrap();
    assert!(edge(&upper, "Croft", "Tijssen").is_none());
    assert!(upper.edges.iter().all(|e| !e.negative));
    // the lower cut lets some negative correlations through
    assert!(lower.edges.iter().any(|e| e.negative));
}

#[test]
fn near_one_threshold_leaves_only_duplicates() {
    let m = occurrence_279();
    let g = build_graph(&m, Orientation::Columns, ThresholdSpec::Explicit(1.0 - 1e-9)).unwrap();
    assert!(g.edges.is_empty());

    let dup = DataMatrix::new(
        None,
        vec!["a".into(), "b".into(), "c".into()],
        vec![vec![1., 1., 0.], vec![0., 0., 1.], vec![2., 2., 1.]],
    )
    .unwrap();
    let g = build_graph(&dup, Orientation::Columns, ThresholdSpec::Explicit(1.0 - 1e-9)).unwrap();
    assert_eq!(g.edges.len(), 1);
    assert_eq!((g.edges[0].source.as_str(), g.edges[0].target.as_str()), ("a", "b"));
}

#[test]
fn occurrence_cloud_lies_on_its_lines() {
    let m = occurrence_279();
    let pts = cloud(&m, Orientation::Columns).unwrap();
    assert_eq!(pts.len(), 276);
    for p in &pts {
        let line = line_params(p.a, p.b, 279).unwrap();
        assert!((p.r - line.predict_r(p.cos)).abs() <= 1e-10, "{:?}", p.pair);
    }
    let (profiles, _) = norm_profiles(&m, Orientation::Columns).unwrap();
    let t = compute_thresholds(&profiles, 279).unwrap();
    assert!(verify_guarantee(&m, Orientation::Columns, t.upper).unwrap().is_empty());
    assert!(!verify_guarantee(&m, Orientation::Columns, t.lower).unwrap().is_empty());
}

#[test]
fn cocitation_diagonal_bridges_to_ratios() {
    let m = occurrence_279();
    let co = cocitation(&m).unwrap();
    assert_eq!(co.nrows(), 24);
    for (i, &(_, total)) in OCCURRENCE_TOTALS.iter().enumerate() {
        assert_eq!(co.get(i, i), total);
        for j in 0..24 {
            assert_eq!(co.get(i, j), co.get(j, i));
        }
    }
    let croft = m.col_labels().iter().position(|l| l == "Croft").unwrap();
    let tijssen = m.col_labels().iter().position(|l| l == "Tijssen").unwrap();
    assert_eq!(co.get(croft, tijssen), 2.0);
    // co-citation rows are non-binary but still valid similarity input
    let rows = co.entities(Orientation::Rows).unwrap();
    assert!(cosine(&rows[0], &rows[1]).unwrap() > 0.0);
}

fn small_matrix() -> impl Strategy<Value = DataMatrix> {
    (3usize..20, 3usize..8).prop_flat_map(|(rows, cols)| {
        let cell = prop_oneof![3 => Just(0.0), 2 => Just(1.0), 2 => 0.0f64..5.0];
        prop::collection::vec(prop::collection::vec(cell, cols), rows).prop_map(move |data| {
            let labels = (0..cols).map(|c| format!("n{c}")).collect();
            DataMatrix::new(None, labels, data).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn raising_threshold_never_adds_edges(m in small_matrix(), t1 in 0.0f64..0.99, dt in 0.0f64..0.5) {
        let t2 = (t1 + dt).min(0.999);
        let Ok(low) = build_graph(&m, Orientation::Columns, ThresholdSpec::Explicit(t1)) else { return Ok(()) };
        let high = build_graph(&m, Orientation::Columns, ThresholdSpec::Explicit(t2)).unwrap();
        prop_assert!(high.edges.iter().all(|e| low.edges.contains(e)));
        prop_assert!(high.edges.iter().all(|e| e.cos > t2 && e.source < e.target));
    }

    #[test]
    fn auto_upper_graph_has_no_negative_edge(m in small_matrix()) {
        let Ok(g) = build_graph(&m, Orientation::Columns, ThresholdSpec::AutoUpper) else { return Ok(()) };
        prop_assert!(g.edges.iter().all(|e| !e.negative));
    }

    #[test]
    fn edge_list_round_trips(m in small_matrix()) {
        let Ok(g) = build_graph(&m, Orientation::Columns, ThresholdSpec::Explicit(0.0)) else { return Ok(()) };
        let mut buf = Vec::new();
        emit_edgelist(&g, &mut buf).unwrap();
        prop_assert_eq!(parse_edgelist(buf.as_slice()).unwrap(), g.edges);
    }
}
