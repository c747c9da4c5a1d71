mod common;

use common::oracle::{gini_naive, pearson_moments, simple_edges, taxonomy_reference, Triple};
use netmobility::snapshot::{prefix_degrees, snapshots, SnapshotView};
use netmobility::stream::parse_edge_list;
use netmobility::taxonomy::trajectories_between;
use netmobility::*;
use proptest::prelude::*;

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..100.0, 2..200)
        .prop_filter("needs a positive value", |v| v.iter().any(|&x| x > 0.0))
}

/// Small temporal graphs over labels n0..n11 with possible repeats and loops.
fn temporal_graph(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Vec<Triple>> {
    prop::collection::vec((0..max_nodes, 0..max_nodes, 0u32..20), 1..=max_edges).prop_map(|v| {
        v.into_iter()
            .map(|(a, b, t)| (format!("n{a}"), format!("n{b}"), f64::from(t)))
            .collect()
    })
}

fn to_raw(triples: &[Triple]) -> Vec<RawEdge> {
    triples
        .iter()
        .map(|(a, b, t)| RawEdge::new(a.clone(), b.clone(), *t))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gini_matches_double_sum(xs in values()) {
        let fast = gini(&xs).unwrap();
        prop_assert!((fast - gini_naive(&xs)).abs() < 1e-12);
    }

    #[test]
    fn pearson_matches_moment_formula(
        pairs in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 2..100)
    ) {
        let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let r = pearson(&xs, &ys).unwrap();
        let oracle = pearson_moments(&xs, &ys);
        match (r, oracle) {
            (Some(a), Some(b)) => prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}"),
            (a, b) => prop_assert_eq!(a, b),
        }
    }
}

proptest! {
    #[test]
    fn gini_scale_invariant(xs in values(), c in 0.01f64..1000.0) {
        let scaled: Vec<f64> = xs.iter().map(|x| x * c).collect();
        prop_assert!((gini(&xs).unwrap() - gini(&scaled).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gini_permutation_invariant(xs in values(), rot in 0usize..200) {
        let mut perm = xs.clone();
        perm.reverse();
        let k = rot % perm.len();
        perm.rotate_left(k);
        prop_assert!((gini(&xs).unwrap() - gini(&perm).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gini_replication_invariant(xs in values()) {
        let doubled: Vec<f64> = xs.iter().chain(xs.iter()).copied().collect();
        prop_assert!((gini(&xs).unwrap() - gini(&doubled).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gini_bounds(xs in values()) {
        let g = gini(&xs).unwrap();
        prop_assert!((0.0..1.0).contains(&g));
        let all_equal = xs.iter().all(|&x| x == xs[0]);
        prop_assert_eq!(g == 0.0, all_equal);
    }

    #[test]
    fn pearson_symmetric_and_affine_invariant(
        pairs in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 3..60),
        a in 0.1f64..10.0,
        b in -100.0f64..100.0,
    ) {
        let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let r = pearson(&xs, &ys).unwrap();
        prop_assert_eq!(r, pearson(&ys, &xs).unwrap());
        let mapped: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
        let r2 = pearson(&mapped, &ys).unwrap();
        if let (Some(r), Some(r2)) = (r, r2) {
            prop_assert!((r - r2).abs() < 1e-12);
            prop_assert!((-1.0..=1.0).contains(&r));
        }
    }

    #[test]
    fn canonicalize_idempotent(g in temporal_graph(12, 30)) {
        if let Ok(once) = canonicalize(to_raw(&g), None) {
            let twice = canonicalize(once.raw_edges(), None).unwrap();
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.edge_count() <= g.len());
            let mut pairs: Vec<_> = once.edges().iter().map(|e| (e.source, e.target)).collect();
            prop_assert!(once.edges().windows(2).all(|w| w[0].timestamp <= w[1].timestamp));
            pairs.sort();
            pairs.dedup();
            prop_assert_eq!(pairs.len(), once.edge_count());
        }
    }

    #[test]
    fn parsing_is_delimiter_invariant(g in temporal_graph(8, 20)) {
        let render = |sep: &str| -> String {
            g.iter().map(|(a, b, t)| format!("{a}{sep}{b}{sep}{t}\n")).collect()
        };
        let streams: Vec<_> = [(Delimiter::Comma, ","), (Delimiter::Tab, "\t"), (Delimiter::Whitespace, "  ")]
            .into_iter()
            .map(|(d, sep)| {
                let parsed = parse_edge_list(&render(sep), &FormatOptions::with_delimiter(d)).unwrap();
                canonicalize(parsed.edges, None)
            })
            .collect();
        prop_assert_eq!(&streams[0], &streams[1]);
        prop_assert_eq!(&streams[1], &streams[2]);
    }

    #[test]
    fn nested_cuts_grow_degrees(g in temporal_graph(12, 30), a in 0.01f64..=1.0, b in 0.01f64..=1.0) {
        let Ok(s) = canonicalize(to_raw(&g), None) else { return Ok(()) };
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for mode in [CutMode::EdgeFraction, CutMode::NormalizedTime] {
            let cuts = [CutSpec::new(mode, lo).unwrap(), CutSpec::new(mode, hi).unwrap()];
            let views = snapshots(&s, &cuts).unwrap();
            for v in &views {
                let total: usize = v.degree_sequence().iter().sum();
                prop_assert_eq!(total, 2 * v.included_edges());
                prop_assert!(v.nodes().all(|n| v.degree(n) == v.neighbours(n).len()));
            }
            for i in 0..s.node_count() {
                let n = NodeId(i as u32);
                prop_assert!(views[0].degree(n) <= views[1].degree(n));
            }
        }
        let full_e = snapshot(&s, CutSpec::edge_fraction(1.0).unwrap()).unwrap();
        let full_t = snapshot(&s, CutSpec::normalized_time(1.0).unwrap()).unwrap();
        prop_assert_eq!(full_e, full_t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn taxonomy_matches_brute_force(
        g in temporal_graph(12, 30),
        frac in 0.05f64..0.95,
    ) {
        let edges = simple_edges(&g);
        prop_assume!(edges.len() >= 2);
        let s = canonicalize(to_raw(&g), None).unwrap();
        prop_assert_eq!(s.edge_count(), edges.len());

        let t1 = CutSpec::edge_fraction(frac).unwrap();
        let k1 = ((frac * edges.len() as f64 + 1e-9).floor() as usize).max(1);
        prop_assume!(k1 < edges.len());
        let reference = taxonomy_reference(&edges, k1, edges.len());

        let point = match taxonomy_point(&s, t1, CutSpec::full()) {
            Ok(p) => p,
            Err(Error::TooFewNodes(n)) => {
                prop_assert_eq!(n, reference.nodes);
                return Ok(());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(point.included_nodes, reference.nodes);
        prop_assert!((point.gini_t1 - reference.gini_t1).abs() < 1e-12);
        for (got, want) in point.aspects.values().iter().zip(reference.aspects) {
            match (got, want) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}"),
                (a, b) => prop_assert_eq!(*a, b),
            }
        }

        // per-node quantities and grow-only signs
        let traj = node_trajectories(&s, t1, CutSpec::full()).unwrap();
        for (node, row) in traj.iter() {
            let want = reference.rows[s.label(node)];
            prop_assert_eq!(row.d1 as f64, want.0);
            prop_assert_eq!(row.delta_d as f64, want.1);
            prop_assert!((row.n1 - want.2).abs() < 1e-12);
            prop_assert!((row.delta_n - want.3).abs() < 1e-12);
            prop_assert!(row.delta_n >= 0.0);
        }
    }

    #[test]
    fn assortativity_consistent_with_snapshot(g in temporal_graph(12, 30), frac in 0.05f64..0.95) {
        let Ok(s) = canonicalize(to_raw(&g), None) else { return Ok(()) };
        let t1 = CutSpec::edge_fraction(frac).unwrap();
        let Ok(point) = taxonomy_point(&s, t1, CutSpec::full()) else { return Ok(()) };
        let view = snapshot(&s, t1).unwrap();
        let (d, n): (Vec<f64>, Vec<f64>) = view
            .nodes()
            .map(|u| (view.degree(u) as f64, view.mean_neighbour_degree(u).unwrap()))
            .unzip();
        match (point.aspects.assortativity, pearson(&d, &n).unwrap()) {
            (Some(a), Some(b)) => prop_assert!((a - b).abs() < 1e-12),
            (a, b) => prop_assert_eq!(a, b),
        }
        for v in point.aspects.values().into_iter().flatten() {
            prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&v));
        }
    }
}

#[test]
fn generators_emit_canonical_streams() {
    for seed in 0..5 {
        let cfg = GrowthConfig::new(400, 3, seed);
        for s in [
            generate_ba(&cfg).unwrap(),
            generate_fortunato(&cfg).unwrap(),
        ] {
            let again = canonicalize(s.raw_edges(), None).unwrap();
            assert_eq!(again, s);
            let times: Vec<f64> = s.edges().iter().map(|e| e.timestamp).collect();
            let expected: Vec<f64> = (1..=s.edge_count()).map(|t| t as f64).collect();
            assert_eq!(times, expected);
        }
    }
}

#[test]
fn generated_stream_survives_text_round_trip() {
    let s = generate_ba(&GrowthConfig::new(500, 2, 9)).unwrap();
    let text = s.to_edge_list(Delimiter::Whitespace);
    let parsed = parse_edge_list(&text, &FormatOptions::default()).unwrap();
    let back = canonicalize(parsed.edges, None).unwrap();
    assert_eq!(back, s);
    assert_eq!(back.to_edge_list(Delimiter::Whitespace), text);
}

#[test]
fn grow_only_on_generated_streams() {
    for seed in 0..3 {
        let cfg = GrowthConfig::new(1000, 2, seed);
        for s in [
            generate_ba(&cfg).unwrap(),
            generate_fortunato(&cfg).unwrap(),
        ] {
            for k in [1, 10, 500, 1996] {
                let traj = trajectories_between(&s, k, s.edge_count()).unwrap();
                assert!(traj.rows.iter().all(|r| r.d1 >= 1 && r.delta_n >= 0.0));
            }
            let mut prev = prefix_degrees(&s, 0);
            for k in (0..=s.edge_count()).step_by(97) {
                let cur = prefix_degrees(&s, k);
                assert!(prev.iter().zip(&cur).all(|(a, b)| a <= b));
                prev = cur;
            }
        }
    }
}

#[test]
fn ba_is_heavy_tailed() {
    let mut hits = 0;
    for seed in 0..10 {
        let s = generate_ba(&GrowthConfig::new(5000, 2, seed)).unwrap();
        let mut d = SnapshotView::from_prefix(&s, s.edge_count()).degree_sequence();
        d.sort_unstable();
        let median = d[d.len() / 2];
        let max = d[d.len() - 1];
        if max >= 20 * median {
            hits += 1;
        }
    }
    assert!(hits >= 9, "heavy tail in only {hits}/10 seeds");
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut r = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

#[test]
fn ba_gain_increases_with_degree() {
    for seed in 0..5 {
        let s = generate_ba(&GrowthConfig::new(3000, 2, seed)).unwrap();
        let traj = trajectories_between(&s, s.edge_count() / 2, s.edge_count()).unwrap();
        let d1: Vec<f64> = traj.rows.iter().map(|r| r.d1 as f64).collect();
        let gain: Vec<f64> = traj.rows.iter().map(|r| r.delta_d as f64).collect();
        let rho = pearson(&ranks(&d1), &ranks(&gain)).unwrap().unwrap();
        assert!(rho > 0.0, "seed {seed}: spearman {rho}");
    }
}

/// Uniform attachment control: every earlier node equally likely.
fn uniform_degrees(n: usize, m: usize, seed: u64) -> Vec<usize> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut deg = vec![0usize; n];
    deg[..=m].fill(m);
    for new in (m + 1)..n {
        let mut chosen = Vec::new();
        while chosen.len() < m {
            let t = rng.gen_range(0..new);
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for t in chosen {
            deg[t] += 1;
            deg[new] += 1;
        }
    }
    deg
}

#[test]
fn fortunato_concentrates_on_early_nodes() {
    let (n, m) = (5000, 2);
    for seed in 0..3 {
        let s = generate_fortunato(&GrowthConfig::new(n, m, seed)).unwrap();
        let view = SnapshotView::from_prefix(&s, s.edge_count());
        let total = 2.0 * s.edge_count() as f64;
        let early: usize = (1..=10)
            .map(|r| view.degree(s.node_id(&r.to_string()).unwrap()))
            .sum();
        let control = uniform_degrees(n, m, seed);
        let control_early: usize = control[..10].iter().sum();
        let control_total: usize = control.iter().sum();
        let share = early as f64 / total;
        let control_share = control_early as f64 / control_total as f64;
        assert!(
            share > control_share,
            "seed {seed}: {share} vs {control_share}"
        );
    }
}
