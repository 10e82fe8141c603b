mod common;

use coupled_tent::analysis::{
    correlation, density, merge, Discrepancy, HistogramAccumulator1D, HistogramAccumulator2D, Partition1D,
};
use coupled_tent::map::{CouplingConfig, CouplingMatrix};
use coupled_tent::sampler::{min_gap, sample_mixed, sample_threshold, MixingSampler, ThresholdSampler};
use coupled_tent::{Generator, StateVector};
use proptest::prelude::*;

use common::*;

const SLACK: f64 = 1.0 / (1u64 << 40) as f64;

/// Explicit coupling vectors that keep every diagonal positive.
fn coupling() -> impl Strategy<Value = CouplingConfig<f64>> {
    (1usize..=12).prop_flat_map(|p| {
        let cap = if p == 1 { 1.0 } else { 0.999 / (p - 1) as f64 };
        prop::collection::vec(0.0..cap, p).prop_map(|eps| CouplingConfig::explicit(eps).unwrap())
    })
}

fn coupled_with_state() -> impl Strategy<Value = (CouplingConfig<f64>, Vec<f64>)> {
    coupling().prop_flat_map(|c| {
        let p = c.dimension();
        (Just(c), prop::collection::vec(-1.0f64..=1.0, p))
    })
}

/// Points in `[-1, 1]` with the endpoints and box edges over-represented.
fn point(m: usize) -> impl Strategy<Value = f64> {
    prop_oneof![
        6 => -1.0f64..=1.0,
        2 => (0..=m).prop_map(move |i| -1.0 + 2.0 * i as f64 / m as f64),
        1 => Just(-1.0),
        1 => Just(1.0),
    ]
}

fn stream() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (1usize..=16).prop_flat_map(|m| (Just(m), prop::collection::vec(point(m), 1..300)))
}

fn small_coupled_run(steps: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    (prop::collection::vec(-0.99f64..0.99, 4), 0.0f64..1e-10).prop_map(move |(x0, eps1)| {
        let mut g = Generator::new(CouplingConfig::linear(4, eps1).unwrap(), StateVector::new(x0).unwrap())
            .unwrap()
            .with_transient(100);
        g.iterate(steps as u64).map(|s| s.unwrap().into_inner()).collect()
    })
}

fn histogram_1d(m: usize, xs: &[f64]) -> HistogramAccumulator1D {
    let mut h = HistogramAccumulator1D::with_boxes(m).unwrap();
    xs.iter().for_each(|&x| h.tally(x).unwrap());
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn coupling_rows_sum_to_one(c in coupling()) {
        let a = CouplingMatrix::new(&c).unwrap();
        let p = c.dimension();
        for i in 0..p {
            prop_assert!((a.row_sum(i) - 1.0).abs() <= p as f64 * f64::EPSILON);
        }
    }

    #[test]
    fn linear_rows_sum_to_one(p in 1usize..=32, eps1 in 0.0f64..1e-4) {
        let c = CouplingConfig::linear(p, eps1).unwrap();
        let a = CouplingMatrix::new(&c).unwrap();
        for i in 0..p {
            prop_assert!((a.row_sum(i) - 1.0).abs() <= p as f64 * f64::EPSILON);
        }
    }

    #[test]
    fn step_stays_in_range((c, x0) in coupled_with_state()) {
        let mut g = Generator::new(c, StateVector::new(x0).unwrap()).unwrap();
        for _ in 0..50 {
            let x = g.step().unwrap();
            prop_assert!(x.iter().all(|v| v.abs() <= 1.0 + SLACK));
        }
    }

    #[test]
    fn decoupled_matches_scalar_orbits(x0 in prop::collection::vec(-1.0f64..=1.0, 1..8)) {
        let p = x0.len();
        let orbits: Vec<Vec<f64>> = x0.iter().map(|&x| scalar_tent_orbit(x, 500)).collect();
        let mut g = Generator::new(CouplingConfig::linear(p, 0.0).unwrap(), StateVector::new(x0).unwrap()).unwrap();
        for n in 0..500 {
            let x = g.step().unwrap();
            for j in 0..p {
                prop_assert_eq!(x[j].to_bits(), orbits[j][n].to_bits());
            }
        }
    }

    #[test]
    fn identical_generators_agree_bitwise((c, x0) in coupled_with_state()) {
        let x0 = StateVector::new(x0).unwrap();
        let mut g = Generator::new(c.clone(), x0.clone()).unwrap().with_transient(7);
        let mut h = Generator::new(c, x0).unwrap().with_transient(7);
        for _ in 0..200 {
            let a = g.next_state().unwrap().to_vec();
            let b = h.next_state().unwrap();
            prop_assert!(a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }

    #[test]
    fn minus_one_is_fixed(c in coupling()) {
        let p = c.dimension();
        let mut g = Generator::new(c, StateVector::new(vec![-1.0; p]).unwrap()).unwrap();
        for _ in 0..10 {
            prop_assert!(g.step().unwrap().iter().all(|&x| x == -1.0));
        }
    }

    #[test]
    fn every_point_has_one_box(m in 1usize..=2000, x in -1.0f64..=1.0, i in 0usize..2000) {
        let part = Partition1D::new(m).unwrap();
        let b = part.index(x).unwrap();
        prop_assert!(b < m);
        prop_assert!(part.edge(b) <= x);
        prop_assert!(x < part.edge(b + 1) || (b == m - 1 && x <= 1.0));
        prop_assert_eq!(part.index(1.0).unwrap(), m - 1);
        let i = i % m;
        prop_assert_eq!(part.index(part.edge(i)).unwrap(), i);
    }

    #[test]
    fn tallies_match_naive_scan((m, xs) in stream()) {
        let h = histogram_1d(m, &xs);
        let counts = naive_counts_1d(m, &xs);
        prop_assert_eq!(h.counts(), &counts[..]);
        prop_assert_eq!(h.total(), xs.len() as u64);
        let d = density(&h).unwrap();
        prop_assert_eq!(&d.values, &naive_density(m, &counts));
        let (l1, l2) = naive_norms(&d.values, 2.0);
        prop_assert_eq!(d.l1(), l1);
        prop_assert_eq!(d.l2_squared(), l2);
    }

    #[test]
    fn pair_tallies_match_naive_scan((m, xs) in stream()) {
        let pts: Vec<(f64, f64)> = xs.windows(2).map(|w| (w[0], w[1])).collect();
        prop_assume!(!pts.is_empty());
        let mut h = HistogramAccumulator2D::with_boxes(m).unwrap();
        pts.iter().for_each(|&(x, y)| h.tally(x, y).unwrap());
        let counts = naive_counts_2d(m, &pts);
        prop_assert_eq!(h.counts(), &counts[..]);
        let c = correlation(&h).unwrap();
        prop_assert_eq!(&c.values, &naive_correlation(m, &counts));
        let (l1, l2) = naive_norms(&c.values, 4.0);
        prop_assert_eq!(c.l1(), l1);
        prop_assert_eq!(c.l2_squared(), l2);
    }

    #[test]
    fn merging_ignores_split_and_order((m, xs) in stream(), a in 0usize..300, b in 0usize..300) {
        let (a, b) = (a.min(xs.len()), b.min(xs.len()));
        let (lo, hi) = (a.min(b), a.max(b));
        let parts = [&xs[..lo], &xs[lo..hi], &xs[hi..]].map(|s| histogram_1d(m, s));
        let whole = histogram_1d(m, &xs);
        let left = merge(&merge(&parts[0], &parts[1]).unwrap(), &parts[2]).unwrap();
        let right = merge(&parts[0], &merge(&parts[1], &parts[2]).unwrap()).unwrap();
        let swapped = merge(&parts[2], &merge(&parts[1], &parts[0]).unwrap()).unwrap();
        prop_assert_eq!(left.counts(), whole.counts());
        prop_assert_eq!(right.counts(), whole.counts());
        prop_assert_eq!(swapped.counts(), whole.counts());
    }

    #[test]
    fn discrepancies_stay_in_range((m, xs) in stream()) {
        let d = density(&histogram_1d(m, &xs)).unwrap();
        let sum: f64 = d.values.iter().sum();
        prop_assert!((2.0 / m as f64 * sum - 1.0).abs() < 1e-12);
        prop_assert!((0.0..=2.0).contains(&d.l1()));
        prop_assert!(d.l2_squared() >= 0.0);
        let uniform = h_is_uniform(m, &xs);
        prop_assert_eq!(d.l1() == 0.0, uniform);
        prop_assert_eq!(d.l2_squared() == 0.0, uniform);
    }

    #[test]
    fn uniform_counts_have_zero_discrepancy(m in 1usize..=64, k in 1usize..20) {
        let part = Partition1D::new(m).unwrap();
        let xs: Vec<f64> = (0..m).flat_map(|i| std::iter::repeat_n(part.edge(i), k)).collect();
        let d = density(&histogram_1d(m, &xs)).unwrap();
        prop_assert_eq!(d.l1(), 0.0);
        prop_assert_eq!(d.l2_squared(), 0.0);
    }

    #[test]
    fn threshold_selection_replays(run in small_coupled_run(3000), t in 0.5f64..0.99, src in 0usize..4, ctl in 0usize..4) {
        prop_assume!(src != ctl);
        let cfg = ThresholdSampler::new(src, ctl, t).unwrap();
        let s = sample_threshold(&run, &cfg, usize::MAX).unwrap();
        let mut emitted = s.indices.iter().zip(&s.values).peekable();
        for (n, x) in run.iter().enumerate() {
            let hit = x[ctl] > t && x[ctl] < 1.0;
            match emitted.peek() {
                Some(&(&i, &v)) if i == n as u64 => {
                    prop_assert!(hit);
                    prop_assert_eq!(v.to_bits(), x[src].to_bits());
                    emitted.next();
                }
                _ => prop_assert!(!hit, "index {} skipped", n),
            }
        }
        prop_assert!(emitted.next().is_none());
        prop_assert!(s.indices.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn mixing_selection_replays(run in small_coupled_run(3000), t in prop::array::uniform3(0.5f64..0.999)) {
        let mut t = t;
        t.sort_by(f64::total_cmp);
        prop_assume!(t[0] < t[1] && t[1] < t[2]);
        let cfg = MixingSampler::new([0, 1, 2], 3, t).unwrap();
        let s = sample_mixed(&run, &cfg, usize::MAX).unwrap();
        let expected: Vec<(u64, f64)> = run
            .iter()
            .enumerate()
            .filter_map(|(n, x)| {
                let c = x[3];
                let band = if c > t[0] && c < t[1] {
                    Some(0)
                } else if c >= t[1] && c < t[2] {
                    Some(1)
                } else if c >= t[2] && c < 1.0 {
                    Some(2)
                } else {
                    None
                };
                band.map(|b| (n as u64, x[b]))
            })
            .collect();
        let got: Vec<(u64, f64)> = s.indices.iter().copied().zip(s.values.iter().copied()).collect();
        prop_assert_eq!(got, expected);
        prop_assert!(s.indices.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn mixing_bands_are_disjoint(c in prop_oneof![0.9f64..=1.0, Just(0.99), Just(0.995), Just(0.999), Just(1.0)]) {
        let t = [0.99, 0.995, 0.999];
        let cfg = MixingSampler::new([0, 1, 2], 3, t).unwrap();
        let memberships = [c > t[0] && c < t[1], c >= t[1] && c < t[2], c >= t[2] && c < 1.0];
        prop_assert!(memberships.iter().filter(|&&m| m).count() <= 1);
        prop_assert_eq!(cfg.band(c), memberships.iter().position(|&m| m));
        prop_assert_eq!(cfg.band(c).is_some(), c > t[0] && c < 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn high_threshold_gaps_exceed_one(run in small_coupled_run(200_000), t in 0.6f64..0.999) {
        let cfg = ThresholdSampler::new(0, 3, t).unwrap();
        let s = sample_threshold(&run, &cfg, usize::MAX).unwrap();
        if s.len() >= 2 {
            prop_assert!(min_gap(&s).unwrap() >= 2);
        }
    }
}

fn h_is_uniform(m: usize, xs: &[f64]) -> bool {
    let counts = naive_counts_1d(m, xs);
    counts.iter().all(|&c| c == counts[0])
}
