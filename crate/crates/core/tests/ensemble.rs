use rvb_core::algebra::rational_to_f64;
use rvb_core::collapse::{mixed_state_ensemble, sample_collapse};
use rvb_core::emission::emission_probability;
use rvb_core::spin::SystemShape;

#[test]
fn ensembles_are_orthogonal_and_mixed() {
    for mu in 1..=10u32 {
        for m in 0..=mu {
            let shape = SystemShape::new(m, mu - m).unwrap();
            let e = mixed_state_ensemble(shape).unwrap();
            assert!((e.total_probability() - 1.0).abs() < 1e-10);
            assert!(e.max_overlap() < 1e-9, "M={m} N={}", mu - m);
            let squares: f64 = e.outcomes.iter().map(|o| o.probability * o.probability).sum();
            assert!((e.purity() - squares).abs() < 1e-9);
            if e.outcomes.len() > 1 {
                assert!(e.purity() < 1.0);
            }
            for o in &e.outcomes {
                let exact = rational_to_f64(&emission_probability(m, mu - m, i64::from(o.p)).unwrap());
                assert!((o.probability - exact).abs() < 1e-10);
            }
        }
    }
}

/// `|count - shots * prob| <= 4 sigma` for every bin.
fn within_four_sigma(counts: &[u64], probs: &[f64], shots: u64) {
    let n = shots as f64;
    for (&c, &p) in counts.iter().zip(probs) {
        let sigma = (n * p * (1.0 - p)).sqrt();
        assert!((c as f64 - n * p).abs() <= 4.0 * sigma, "count {c} vs mean {}", n * p);
    }
}

#[test]
fn singlet_split_is_even() {
    let r = sample_collapse(SystemShape::new(1, 1).unwrap(), 100_000, 42).unwrap();
    within_four_sigma(&r.counts, &[0.5, 0.5], r.shots);
}

#[test]
fn ladder_frequencies() {
    let r = sample_collapse(SystemShape::new(2, 2).unwrap(), 1_000_000, 1).unwrap();
    within_four_sigma(&r.counts, &[1.0 / 3.0, 0.5, 1.0 / 6.0], r.shots);
}

#[test]
fn distinct_seeds_give_independent_passing_histograms() {
    let shape = SystemShape::new(3, 5).unwrap();
    let reports: Vec<_> = (0..10u64).map(|seed| sample_collapse(shape, 100_000, seed).unwrap()).collect();
    for (i, r) in reports.iter().enumerate() {
        // 0.001 level, split across ten runs
        assert!(r.p_value_bound > 1e-4, "seed {i}: p = {}", r.p_value_bound);
        for other in &reports[i + 1..] {
            assert_ne!(r.counts, other.counts);
        }
    }
    // under the null the p-values are uniform; their mean should not be extreme
    let mean: f64 = reports.iter().map(|r| r.p_value_bound).sum::<f64>() / 10.0;
    assert!((0.15..=0.85).contains(&mean), "mean p-value {mean}");
}
