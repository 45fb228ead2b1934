"""Smoke tests for the python module: one pass over every exposed surface."""

import math

import scripsim as ss


def reference_spec(n=50):
    t = ss.AgentType(alpha=0.1, beta=1.0, gamma=1.0, delta=0.95, rho=1.0, chi=1.0)
    return ss.build_game_spec([t], [1.0], h=1, m_num=2, m_den=1, n=n)


def test_spec():
    spec = reference_spec()
    assert spec.total_agents == 50
    assert spec.total_money == 100
    assert spec.type(0).omega == 1.0
    back = ss.game_spec_from_json(spec.to_json())
    assert back.total_money == spec.total_money
    assert ss.per_round_discount(0.9, 10) == 0.99
    assert ss.money_below_capacity(spec, [5])
    assert not ss.money_below_capacity(spec, [2])


def test_distribution():
    spec = reference_spec()
    sol = ss.solve_lambda(spec, [5])
    assert abs(sol.achieved_mean - 2.0) <= 1e-9
    assert 0 < sol.lambda_ < 1
    d = ss.min_relent_distribution(spec, [5])
    assert abs(d.marginal(0) - 1.0) <= 1e-12
    assert abs(d.mean() - 2.0) <= 1e-9
    q = ss.base_distribution(spec, [5])
    assert abs(q.at(0, 0) - 1.0 / 6.0) <= 1e-12
    assert ss.relative_entropy(d, q) >= 0
    r = ss.nearest_realizable(d, spec)
    assert abs(r.mean() - 2.0) <= 1e-12


def test_simulate():
    spec = reference_spec()
    summary = ss.simulate(spec, [5], rounds=2000, seed=7)
    assert summary.rounds == 2000
    again = ss.simulate(spec, [5], rounds=2000, seed=7)
    assert summary.final_distance_sq == again.final_distance_sq


def test_stationary():
    t = ss.AgentType(alpha=0.1, beta=1.0, gamma=1.0, delta=0.95, rho=1.0, chi=1.0)
    spec = ss.build_game_spec([t], [1.0], h=3, m_num=1, m_den=3, n=1)
    report = ss.exact_stationary(spec, [1])
    assert len(report.states) == 3
    assert report.irreducible and report.aperiodic
    assert not report.mismatch
    for p in report.pi_closed_form:
        assert abs(p - 1.0 / 3.0) <= 1e-12


def test_best_reply_and_equilibrium():
    t = ss.AgentType(alpha=0.1, beta=1.0, gamma=1.0, delta=0.99, rho=1.0, chi=1.0)
    spec = ss.build_game_spec([t], [1.0], h=1, m_num=2, m_den=1, n=50)
    probs = ss.choice_probabilities(spec, [5], 0)
    assert probs.p_d == spec.type(0).rho / spec.n
    phi = ss.discounted_ruin_factor(1, 0.0, 0.001, 0.99)
    assert abs(phi - 0.99 * 0.001 / (1 - 0.99 * 0.999)) <= 1e-15
    report = ss.best_reply_threshold(spec, [5], 0, cap=200)
    policy = ss.value_iteration_policy(spec, [5], 0, state_cap=120)
    assert report.kappa == policy.threshold
    cap = ss.default_threshold_cap(spec)
    result = ss.greatest_equilibrium(spec, cap)
    while result.kind == ss.EquilibriumKind.capped:
        cap *= 2
        result = ss.greatest_equilibrium(spec, cap)
    assert result.kind in (ss.EquilibriumKind.trivial, ss.EquilibriumKind.nontrivial)
    if result.kind == ss.EquilibriumKind.nontrivial:
        assert ss.best_reply_vector(spec, result.thresholds, cap) == result.thresholds


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"ok   {name}")
            except Exception as exc:  # noqa: BLE001
                failures += 1
                print(f"FAIL {name}: {exc!r}")
    if failures:
        raise SystemExit(f"{failures} smoke test(s) failed")
    print("python smoke tests passed")


if __name__ == "__main__":
    main()
