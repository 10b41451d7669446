use eqdist_core::*;

fn opts(n: u64) -> IntegrationOptions {
    IntegrationOptions::new(n, 7)
}

#[test]
fn two_players_split_evenly() {
    for family in Family::ALL {
        let spec = DistributionSpec::standard(family);
        let cf = distribution_closed(2, &spec, &opts(200_000)).unwrap();
        let p = &cf.distribution.p;
        assert!((p[0] - 0.5).abs() < 5e-3, "{family}: {p:?}");
        assert!((p[1] - 0.5).abs() < 5e-3, "{family}: {p:?}");
    }
}

#[test]
fn configurations_cover_all_probability() {
    for family in Family::ALL {
        let spec = DistributionSpec::standard(family);
        for d in 2..=4 {
            let cf = distribution_closed(d, &spec, &opts(100_000)).unwrap();
            let total = cf.total_probability();
            assert!(
                (total.value - 1.0).abs() <= 5.0 * total.stderr + 1e-3,
                "{family} d={d}: {total:?}"
            );
            // the complement and the directly integrated p_0 agree
            assert!(
                cf.p0_discrepancy.abs() <= 5.0 * total.stderr + 1e-3,
                "{family} d={d}: {}",
                cf.p0_discrepancy
            );
            assert_eq!(cf.terms.len(), RootConfiguration::all(d - 1).len());
            assert!(cf.discard_rate() < 1e-3);
        }
    }
}

#[test]
fn three_players_one_equilibrium_half_the_time() {
    for family in Family::ALL {
        let spec = DistributionSpec::standard(family);
        let cf = distribution_closed(3, &spec, &opts(400_000)).unwrap();
        let p1 = cf.distribution.p[1];
        let se = cf.distribution.stderr[1];
        assert!((p1 - 0.5).abs() <= 4.0 * se + 2e-3, "{family}: {p1} ± {se}");
    }
}

#[test]
fn agrees_with_sampling() {
    for family in Family::ALL {
        let spec = DistributionSpec::standard(family);
        let cf = distribution_closed(3, &spec, &opts(300_000)).unwrap();
        let s = estimate_distribution(&spec, 3, 200_000, 3).unwrap();
        for m in 0..3 {
            let tol = 4.0 * (cf.distribution.stderr[m].powi(2) + s.stderr[m].powi(2)).sqrt();
            assert!(
                (cf.distribution.p[m] - s.p[m]).abs() <= tol + 1e-3,
                "{family} m={m}: {} vs {}",
                cf.distribution.p[m],
                s.p[m]
            );
        }
    }
}

#[test]
fn scale_does_not_change_the_answer() {
    let a = distribution_closed(
        3,
        &DistributionSpec::standard(Family::Gaussian),
        &opts(50_000),
    )
    .unwrap();
    let b = distribution_closed(
        3,
        &DistributionSpec::new(Family::Gaussian, 5.0).unwrap(),
        &opts(50_000),
    )
    .unwrap();
    for (x, y) in a.distribution.p.iter().zip(&b.distribution.p) {
        assert!((x - y).abs() < 1e-9, "{x} vs {y}");
    }
}

#[test]
fn reproducible_from_the_seed() {
    let spec = DistributionSpec::standard(Family::UniformBeta);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| distribution_closed(3, &spec, &opts(60_000)).unwrap())
    };
    let (a, b) = (run(1), run(3));
    for (x, y) in a.distribution.p.iter().zip(&b.distribution.p) {
        assert_eq!(x.to_bits(), y.to_bits());
    }
}

#[test]
fn lattice_points_agree_with_random_points() {
    let spec = DistributionSpec::standard(Family::Gaussian);
    let random = distribution_closed(3, &spec, &opts(200_000)).unwrap();
    let lattice =
        distribution_closed(3, &spec, &opts(200_000).with_point_set(PointSet::Kronecker)).unwrap();
    for (x, y) in random.distribution.p.iter().zip(&lattice.distribution.p) {
        assert!((x - y).abs() < 0.01, "{x} vs {y}");
    }
}

#[test]
fn rejects_invalid_requests() {
    let spec = DistributionSpec::standard(Family::Gaussian);
    assert!(distribution_closed(1, &spec, &opts(10)).is_err());
    assert!(p_m_closed(3, 3, &spec, &opts(10)).is_err());
    assert!(p_m_closed(3, 1, &spec, &opts(0)).is_err());
}
