mod common;

use common::*;
use nlinterf_core::analytic::{mandel_fringe, yurke_fringe, yurke_fringe_equal};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn single_port_fringes_stay_nonnegative(p in spec_params()) {
        let y = yurke_fringe(p.0, p.1, p.2, p.3).unwrap();
        prop_assert!(y.baseline - y.amplitude >= -1e-12 * y.baseline.max(1.0));
        let (m, _) = mandel_fringe(p.0, p.1, p.2, p.3).unwrap();
        prop_assert!(m.baseline - m.amplitude >= -1e-12 * m.baseline.max(1.0));
        prop_assert!(y.mean(p.4) >= 0.0 && m.mean(p.4) >= 0.0);
    }

    #[test]
    fn bright_fringe_grows_with_transmission(
        n in 0.0..=50.0f64,
        t in transmittance(),
        lo in transmittance(),
        hi in transmittance(),
    ) {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let signal = (yurke_fringe_equal(n, lo, t).unwrap(), yurke_fringe_equal(n, hi, t).unwrap());
        prop_assert!(signal.0.mean(0.0) <= signal.1.mean(0.0) * (1.0 + 1e-15));
        let idler = (yurke_fringe_equal(n, t, lo).unwrap(), yurke_fringe_equal(n, t, hi).unwrap());
        prop_assert!(idler.0.mean(0.0) <= idler.1.mean(0.0) * (1.0 + 1e-15));
    }

    #[test]
    fn grouping_by_powers_of_n(n in 0.0..=50.0f64, ts in transmittance(), ti in transmittance(), phi in phase()) {
        let f = yurke_fringe_equal(n, ts, ti).unwrap();
        let root = (ts * ti).sqrt();
        let grouped = n * (1.0 + ts + 2.0 * root * phi.cos()) + n * n * (ts + ti + 2.0 * root * phi.cos());
        let plain = f.baseline + f.amplitude * phi.cos();
        prop_assert!(close(grouped, plain, 1e-12, 1e-12, f.baseline));
    }
}
