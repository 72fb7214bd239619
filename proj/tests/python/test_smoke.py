"""Smoke tests of the python bindings: construct the main objects, reproduce
a couple of closed-form values, and round-trip the chain machinery."""

import math

try:
    import tempercore as tc
except ImportError:  # in-tree: the extension module sits on PYTHONPATH directly
    import _tempercore as tc


def test_optimal_u():
    opt = tc.optimal_u()
    assert 0.2335 <= opt.acc_star <= 0.2345
    assert abs(opt.u_star - 2.38) < 0.01
    assert opt.stationarity_residual < 1e-8


def test_gaussian_moments():
    fam = tc.make_gaussian_family()
    m = fam.moments(1.0)
    assert abs(m.M + 0.5) < 1e-6
    assert abs(m.I - 0.5) < 1e-6
    assert abs(m.K + 0.5 * math.log(2 * math.pi)) < 1e-6
    assert abs(fam.third_derivative_k(1.0) - 1.0) < 1e-3


def test_custom_family_from_python():
    fam = tc.TemperedFamily(lambda x: -abs(x), tc.Domain.real_line(0.5, 1.0), 1024)
    assert abs(fam.moments(1.0).K + math.log(2.0)) < 1e-6


def test_chain_and_variance():
    target = tc.make_gaussian_target(-3.0, 3.0)
    c1 = tc.build_chain(target, tc.make_constant_sigma(1.0), 16)
    c2 = tc.build_chain(target, tc.make_constant_sigma(0.5), 16)
    c1.validate()
    assert tc.peskun_dominates(c1, c2)
    f = lambda x: x
    v1 = tc.exact_asymptotic_variance(c1, f).v
    v2 = tc.exact_asymptotic_variance(c2, f).v
    assert v1 <= v2 + 1e-10
    assert tc.gap_exact(c1) > tc.gap_lower_bound(
        3.0, 0.0, tc.check_regularity(target, [16]).Q, 1.0, 16, tc.DomainKind.bounded
    )


def test_ladder_and_chain():
    fam = tc.make_gaussian_family()
    ladder = tc.optimal_ladder(fam, 100, 0.3)
    assert ladder.k_d == 2
    assert abs(ladder.betas[1] - 0.6632) < 1e-3
    trace = tc.run_st_chain(fam, ladder, 5000, 42)
    stats = tc.trace_stats(trace, ladder, lambda b: b)
    assert abs(sum(stats.occupancy) - 1.0) < 1e-9
    assert 0.1 < stats.acc_rate_feasible < 0.4
    # determinism through the bindings
    trace2 = tc.run_st_chain(fam, ladder, 5000, 42)
    assert list(trace.indices) == list(trace2.indices)


def test_diffusion():
    spec = tc.langevin_spec(tc.make_gaussian_target(-3.0, 3.0), tc.make_constant_sigma(1.0))
    assert abs(spec.drift(1.0) + 0.5) < 1e-12
    path = tc.simulate_reflected(spec, 0.0, 1e-3, 50.0, 7)
    assert all(-3.0 <= x <= 3.0 for x in path.values)
    est = tc.batch_means_variance(path.values, lambda x: x, 30, path.dt)
    assert est.estimate >= 0.0


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"{t.__name__}: ok")
    print("python smoke: all checks passed")


if __name__ == "__main__":
    main()
