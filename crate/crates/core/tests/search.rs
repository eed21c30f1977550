use equibasis::families::table1_phases;
use equibasis::search::{random_start, refine_phases, CERT_RESIDUAL_TOL};
use equibasis::{alternating_projection_search, flatness_residual, verify_solution, SearchConfig};

#[test]
fn default_config_converges_for_small_dimensions() {
    for d in 2..=12 {
        let cfg = SearchConfig::new(d);
        let r = alternating_projection_search(&cfg).unwrap();
        assert!(r.converged, "d = {d}: residual {:e}", r.residual);
        assert!(r.residual < cfg.residual_tol);
        assert!(r.theta.is_canonical());
        assert!((flatness_residual(&r.theta) - r.residual).abs() < 1e-15);
        assert!(verify_solution(&r.theta).maximal_at(10.0 * cfg.residual_tol));
    }
}

#[test]
fn search_is_deterministic() {
    for d in [3, 6, 9] {
        let cfg = SearchConfig { restarts: 8, ..SearchConfig::new(d).with_seed(42) };
        let a = alternating_projection_search(&cfg).unwrap();
        let b = alternating_projection_search(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.residual.to_bits(), b.residual.to_bits());
    }
}

#[test]
fn reported_residual_is_minimum_over_restarts() {
    let cfg = SearchConfig { max_iters: 20, restarts: 6, ..SearchConfig::new(11).with_seed(3) };
    let best = alternating_projection_search(&cfg).unwrap();
    let individual: Vec<_> = (0..cfg.restarts)
        .map(|r| refine_phases(&random_start(cfg.d, cfg.rng_seed, r), cfg.max_iters, cfg.residual_tol))
        .collect();
    for (i, r) in individual.iter().enumerate() {
        assert!(best.residual <= r.residual);
        if r.residual == best.residual {
            assert!(best.restart_index <= i);
        }
    }
    assert_eq!(best.residual, individual[best.restart_index].residual);
}

#[test]
fn d5_seed_one_converges() {
    let r = alternating_projection_search(&SearchConfig::new(5).with_seed(1)).unwrap();
    assert!(r.converged && r.residual < 1e-10);
    let cert = verify_solution(&r.theta);
    assert!(cert.maximal());
    assert!(cert.residual < CERT_RESIDUAL_TOL);
}

#[test]
fn starved_search_reports_without_error() {
    let cfg = SearchConfig { max_iters: 1, restarts: 1, ..SearchConfig::new(9).with_seed(2) };
    let r = alternating_projection_search(&cfg).unwrap();
    assert!(r.iterations <= 1);
    assert_eq!(r.converged, r.residual < cfg.residual_tol);
}

#[test]
fn tabulated_row_is_fixed_point() {
    let t = table1_phases(4, 0).unwrap().theta0;
    let r = refine_phases(&t, 10_000, 1e-10);
    assert_eq!(r.iterations, 0);
    assert!(r.residual < 1e-15);
}
