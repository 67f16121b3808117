use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use rvb_core::algebra::{binomial_exact, cg_general, rational_to_f64, HalfInteger};
use rvb_core::emission::{emission_probability, ln_emission_probability, EmissionDistribution};
use rvb_core::spin::{apply_lowering, collapsed_state, product_state, project_sector, SystemShape};

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coupling_order_symmetry(tj1 in 0i64..6, tj2 in 0i64..6, k1 in 0i64..7, k2 in 0i64..7, kj in 0i64..7) {
        let tm1 = -tj1 + 2 * (k1 % (tj1 + 1));
        let tm2 = -tj2 + 2 * (k2 % (tj2 + 1));
        let lo = (tj1 - tj2).abs();
        let tj = lo + 2 * (kj % ((tj1 + tj2 - lo) / 2 + 1));
        let tm = tm1 + tm2;
        prop_assume!(tm.abs() <= tj);
        let h = HalfInteger::from_twice;
        let a = cg_general(h(tj1), h(tm1), h(tj2), h(tm2), h(tj), h(tm)).unwrap();
        let b = cg_general(h(tj2), h(tm2), h(tj1), h(tm1), h(tj), h(tm)).unwrap();
        let phase = (tj1 + tj2 - tj) / 2;
        let b = if phase % 2 == 0 { b } else { -b };
        prop_assert_eq!(a, b);
    }

    #[test]
    fn distribution_endpoints_and_total(m in 0u32..60, n in 0u32..60) {
        prop_assume!(m + n > 0);
        let dist = EmissionDistribution::new(m, n).unwrap();
        prop_assert!(dist.is_normalized());
        let top = dist.probability(m).unwrap();
        prop_assert_eq!(top, ratio(1, 1) / BigRational::from_integer(binomial_exact(u64::from(m + n), i64::from(m)).into()));
        if m <= n {
            prop_assert_eq!(dist.probability(0).unwrap(), ratio(u64::from(n - m + 1), u64::from(n + 1)));
        }
        let gamma_bar = rational_to_f64(&dist.mean_p()) / f64::from(m.max(1));
        if m > 0 {
            let floor = (1.0 - f64::from(n) / f64::from(m)).max(0.0);
            prop_assert!(gamma_bar >= floor - 1e-12 && gamma_bar <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn log_path_tracks_exact(m in 1u32..120, n in 0u32..120, k in 0u32..1000) {
        let p_min = m.saturating_sub(n);
        let p = p_min + k % (m - p_min + 1);
        let exact = emission_probability(m, n, i64::from(p)).unwrap();
        let exact_ln = ln_of(&exact);
        let ln = ln_emission_probability(m, n, i64::from(p)).unwrap();
        prop_assert!((ln - exact_ln).abs() <= 1e-10 * exact_ln.abs().max(1.0), "{ln} vs {exact_ln}");
    }

    #[test]
    fn sectors_are_complete(m in 0u32..6, n in 0u32..6) {
        prop_assume!(m + n > 0);
        let shape = SystemShape::new(m, n).unwrap();
        let initial = product_state(shape).unwrap();
        let total: f64 = shape
            .photon_counts()
            .map(|p| project_sector(&initial, shape.sector_spin(p)).unwrap().norm_sqr())
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn collapsed_states_are_row_symmetric_and_dark(m in 0u32..5, n in 0u32..5, k in 0u32..5) {
        prop_assume!(m + n > 0);
        let shape = SystemShape::new(m, n).unwrap();
        let p = shape.p_min() + k % (m - shape.p_min() + 1);
        let state = collapsed_state(shape, i64::from(p)).unwrap();
        for row in [shape.top_sites(), shape.bottom_sites()] {
            for i in row.clone().skip(1) {
                prop_assert!(state.swap_sites(row.start, i).max_abs_diff(&state) < 1e-12);
            }
        }
        prop_assert!(apply_lowering(&state).norm() < 1e-9);
        prop_assert_eq!(shape.unpaired(p).rem_euclid(2), (i64::from(n) - i64::from(m)).rem_euclid(2));
    }
}

fn ln_of(r: &BigRational) -> f64 {
    fn ln_int(x: &BigInt) -> f64 {
        let bits = x.bits();
        let shift = bits.saturating_sub(60);
        (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_int(r.numer()) - ln_int(r.denom())
}

#[test]
fn unit_probability_has_zero_log() {
    assert_eq!(ln_of(&BigRational::one()), 0.0);
    assert_eq!(ln_emission_probability(2, 0, 2).unwrap(), 0.0);
}
