"""End-to-end evaluation: every method reproduces the oracles at the
requested precision with a sound certified bound."""

import pytest
from mpmath import mp, mpf

from zetaodd.coefficients import assemble_detailed
from zetaodd.core import ConvergenceError, DomainError, make_context
from zetaodd.engine import (
    ConstantResult,
    convergence_profile,
    log_prime,
    oracle_zeta,
    pi_power,
    zeta3_first_order,
    zeta_odd,
    zeta_table,
)
from zetaodd.oracles import oracle_log, oracle_pi
from zetaodd.oracles import oracle_zeta as _oz

# every (s, method) combination the formula families cover;
# sqrt3 zeta(4k+1) drops out when k is divisible by 3 (s = 13, 25, ...)
ZETA_COMBOS = [
    (s, m)
    for s in (3, 7)
    for m in ("corollary", "root3", "root7", "root15")
] + [
    (s, m)
    for s in (5, 9)
    for m in ("corollary3", "p2", "p3", "p5", "root3_p", "root7_p", "root15_p")
]


def _reparse(decimal_value: str) -> mpf:
    return mpf(decimal_value)


@pytest.mark.parametrize("s,method", ZETA_COMBOS)
def test_zeta_all_methods_50_digits(s, method):
    res = zeta_odd(s, method=method, target_digits=50)
    assert isinstance(res, ConstantResult)
    with mp.workdps(80):
        want = _oz(s, make_context(60))
        got = _reparse(res.decimal_value)
        # truncated string agrees to 10^-(target-2)
        assert abs(got - want) < mpf("1e-48")
    assert res.error_bound < mpf("1e-50")
    assert res.wall_time >= 0
    assert all(n >= 0 for n in res.terms_used.values())


@pytest.mark.parametrize("target", [50, 200])
@pytest.mark.parametrize("s,method", [(3, "root15"), (5, "p5"), (7, "corollary"),
                                      (9, "corollary3")])
def test_assembled_error_invariant(s, method, target):
    # |assembled - oracle| < 10^-(target-2), checked on the raw mpf value
    ctx = make_context(target)
    table = zeta_table(s, method)
    val, err, _ = assemble_detailed(table, ctx)
    with ctx.workdps():
        want = _oz(s, ctx)
        assert abs(val - want) < mpf(10) ** (-(target - 2))
        assert abs(val - want) <= err * (1 + mpf("1e-20"))


@pytest.mark.parametrize("s,method", [(3, "root7"), (5, "root15_p")])
def test_monotone_refinement(s, method):
    # raising the target never loses accuracy
    errs = []
    for target in (30, 60, 90):
        ctx = make_context(target)
        val, _, _ = assemble_detailed(zeta_table(s, method), ctx)
        with mp.workdps(140):
            errs.append(abs(val - _oz(s, make_context(120))))
    assert errs[0] >= errs[1] >= errs[2]


def test_corollary3_vs_p2_cross_method():
    # two structurally different routes to the same number
    for s in (5, 9):
        a = zeta_odd(s, method="corollary3", target_digits=100)
        b = zeta_odd(s, method="p2", target_digits=100)
        with mp.workdps(130):
            diff = abs(_reparse(a.decimal_value) - _reparse(b.decimal_value))
            assert diff <= a.error_bound + b.error_bound + mpf("1e-99")


def test_zeta3_30_digit_string():
    res = zeta_odd(3, method="corollary", target_digits=30)
    assert res.decimal_value == "1.20205690315959428539973816151"


def test_rapid_method_needs_few_terms():
    res = zeta_odd(5, method="p5", target_digits=100)
    assert max(res.terms_used.values()) <= 20


def test_auto_dispatch():
    assert zeta_table(3).method == "root15"
    assert zeta_table(5).method == "root15_p"
    assert zeta_table(3, "root7").method == "root7"
    # bare root names map onto the parity at hand
    assert zeta_table(5, "root7").method == "root7_p"


def test_parity_guard():
    with pytest.raises(DomainError):
        zeta_odd(3, method="p5")
    with pytest.raises(DomainError):
        zeta_odd(5, method="corollary")
    with pytest.raises(DomainError):
        zeta_odd(4)
    with pytest.raises(DomainError):
        zeta_odd(1)
    with pytest.raises(DomainError):
        zeta_odd(13, method="root3_p")  # k = 3 degenerates


def test_pi_power_routes():
    for n, want_method in ((1, "example62"), (3, "example63"),
                           (5, "example62"), (7, "example63")):
        res = pi_power(n, target_digits=50)
        assert res.method_id == want_method
        with mp.workdps(80):
            want = oracle_pi(make_context(60)) ** n
            assert abs(_reparse(res.decimal_value) - want) < mpf("1e-44") * want


@pytest.mark.parametrize("method,n", [
    ("prop_pi5", 5), ("prop_pi3", 3), ("prop_pi5_fast", 5), ("prop_pi3_fast", 3),
])
def test_pi_power_named_methods(method, n):
    res = pi_power(n, method=method, target_digits=50)
    with mp.workdps(80):
        want = oracle_pi(make_context(60)) ** n
        assert abs(_reparse(res.decimal_value) - want) < mpf("1e-44") * want


def test_pi_power_rejects_even():
    with pytest.raises(DomainError):
        pi_power(2)
    with pytest.raises(DomainError):
        pi_power(0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_log_prime(p):
    res = log_prime(p, target_digits=50)
    with mp.workdps(80):
        want = oracle_log(p, make_context(60))
        assert abs(_reparse(res.decimal_value) - want) < mpf("1e-48")


def test_log_prime_rejects_7():
    with pytest.raises(DomainError):
        log_prime(7)


def test_zeta3_first_order_error():
    v = zeta3_first_order()
    with mp.workdps(60):
        err = v - _oz(3, make_context(50))
        assert abs(err) < mpf("5e-10")


def test_oracle_zeta_wrapper():
    ctx = make_context(40)
    with ctx.workdps():
        assert abs(oracle_zeta(3, 40) - mp.zeta(3)) < mpf("1e-38")


# ----------------------------------------------------------------- profiles


def test_profile_slope_p5():
    p = convergence_profile("zeta(5)", "p5", 12, make_context(120))
    assert abs(p.slope - 5.4575) < 0.15
    # digits recorded against the oracle grow strictly at first
    ns, digits = zip(*p.points)
    assert ns == tuple(range(1, 13))
    assert digits[3] > digits[0]


def test_profile_slope_root7():
    p = convergence_profile("zeta(3)", "root7", 12, make_context(120))
    assert abs(p.slope - 3.6116) < 0.15


def test_profile_handles_saturation():
    # target 30 saturates after ~6 terms of the sqrt15 family; the fit must
    # quietly use the unsaturated prefix
    p = convergence_profile("zeta(3)", "root15", 12, make_context(30))
    assert abs(p.slope - 5.2841) < 0.3


def test_profile_needs_three_points():
    with pytest.raises(DomainError):
        convergence_profile("zeta(3)", "root15", 2, make_context(50))


def test_profile_pi_constant():
    p = convergence_profile("pi^3", "example63", 10, make_context(60))
    # slowest nome e^-pi: pi/ln10 ~ 1.364 digits per term
    assert abs(p.slope - 1.3644) < 0.15


def test_term_cap_propagates(monkeypatch):
    from zetaodd.series import TERM_CAP_ENV

    monkeypatch.setenv(TERM_CAP_ENV, "3")
    with pytest.raises(ConvergenceError):
        zeta_odd(3, method="corollary", target_digits=60)
