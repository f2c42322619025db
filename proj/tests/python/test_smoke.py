import cmath

import pytest

import modrop


def test_params_and_special_values():
    p = modrop.make_params(0.8)
    assert p.omega == pytest.approx(0.4j)
    assert p.omega_p == pytest.approx(0.625j)
    g = modrop.GammaEvaluator(0.8)
    # Reflection at the origin: gamma(0)^2 = e^{i beta}.
    assert abs(g.gamma(0) ** 2 - cmath.exp(1j * p.beta)) < 1e-12
    assert abs(g.gamma(10) - 1) < 1e-8
    assert abs(g.D(0, 1.5) - 1) < 1e-14
    value, err = g.gamma_estimate(0.3 + 0.1j)
    assert err < 1e-10


def test_singularity_is_reported():
    g = modrop.GammaEvaluator(0.8)
    with pytest.raises(modrop.SingularityError):
        g.gamma(g.params.omega_pp)


def test_complex_literals():
    assert modrop.parse_complex("0.3-0.1i") == 0.3 - 0.1j
    assert modrop.format_complex(-2j) == "-2i"
    with pytest.raises(modrop.DomainError):
        modrop.parse_complex("1+x")


def test_run_relations_report():
    doc = modrop.run_relations(["gamma-refl", "qsl2"], {"spins": {"s": "0.25"}})
    assert doc["schema"] == 1
    assert doc["version"] == modrop.version()
    assert doc["config"]["spins"]["s"] == "0.25"
    assert [r["relation_id"] for r in doc["reports"]] == ["gamma-refl", "qsl2"]
    assert all(r["pass"] for r in doc["reports"])
    assert "gamma-refl" in modrop.render_table(doc)


def test_unknown_relation_and_bad_config():
    with pytest.raises(modrop.DomainError):
        modrop.run_relations(["nosuch"])
    with pytest.raises(modrop.DomainError):
        modrop.run_relations(["qsl2"], {"bogus": 1})


def test_convergence_and_exact_checks():
    t = modrop.convergence_series("FourierD", [10, 20, 40])
    assert t["non_increasing"]
    assert len(t["rows"]) == 3
    r = modrop.sl2c.check_RLL((3, 4, 1, 0), 3)
    assert r["pass"] and r["nonzero"] == 0
    assert "YB1" in modrop.relation_ids()
