"""End-to-end smoke tests for the python bindings."""

import json
import math

import pytest

import ordyn


def test_young_function_basics():
    phi = ordyn.YoungFunction.power(2.0)
    assert phi(3.0) == pytest.approx(4.5)
    assert phi.conjugate(2.0) == pytest.approx(2.0, abs=1e-8)
    assert phi.inverse(2.0) == pytest.approx(2.0, abs=1e-9)
    assert phi.young_gap(1.0, 2.0) == pytest.approx(0.5, abs=1e-6)

    pl = ordyn.YoungFunction.power_log(2.0)
    assert pl(1.0) == pytest.approx(1.0)


def test_atom_norms():
    Z = ordyn.GroupSpace.integer_line()
    phi = ordyn.YoungFunction.power(2.0)
    atom = ordyn.SimpleFunction(Z, [([0], 1.0)])
    assert ordyn.orlicz_norm(atom, phi).value == pytest.approx(math.sqrt(2.0), abs=1e-6)
    assert ordyn.luxemburg_norm(atom, phi).value == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-8)
    assert ordyn.modular(atom, phi) == pytest.approx(0.5)

    eq = ordyn.norm_equivalence_check(atom, phi)
    assert 1.0 - 1e-8 <= eq["ratio"] <= 2.0 + 1e-6

    oracle = ordyn.dual_ball_oracle(atom, phi.conjugate_function())
    assert oracle == pytest.approx(math.sqrt(2.0), abs=1e-4)


def test_translation_and_torsion():
    Z = ordyn.GroupSpace.integer_line()
    a = Z.point([1])
    f = ordyn.SimpleFunction(Z, [([0], 1.0)])
    shifted = ordyn.translate(f, a, 7)
    assert shifted.support() == [([7], 1.0 + 0.0j)]

    C4 = ordyn.GroupSpace.cyclic(4)
    assert ordyn.is_torsion(C4, C4.point([1]), 100) == 4
    assert ordyn.is_torsion(Z, a, 1000) is None

    trace = ordyn.orbit(f, a, 20, ordyn.Weight.constant(1.0), ordyn.YoungFunction.power(2.0))
    assert len(trace["entries"]) == 20


def test_certificates():
    Z = ordyn.GroupSpace.integer_line()
    K = ordyn.PointSet.box(Z, [-3], [3])
    a = Z.point([1])
    phi = ordyn.YoungFunction.power(2.0)

    cert = ordyn.transitivity_certificate(Z, K, a, ordyn.Weight.exp_abs(-1.0), phi,
                                          list(range(1, 31)))
    assert cert["verdict"] == "certified-decaying"
    assert cert["decay_ratio"] == pytest.approx(math.exp(-1.0), abs=0.05)

    flat = ordyn.transitivity_certificate(Z, K, a, ordyn.Weight.constant(1.0), phi,
                                          list(range(1, 31)))
    assert flat["verdict"] == "inconclusive"

    grow = ordyn.transitivity_certificate(Z, K, a, ordyn.Weight.exp_abs(1.0), phi,
                                          list(range(1, 31)))
    assert grow["verdict"] == "obstructed"
    assert grow["obstruction"]["bound"] >= 1.0


def test_periodic_point():
    Z = ordyn.GroupSpace.integer_line()
    f = ordyn.SimpleFunction(Z, [([0], 1.0)])
    E = ordyn.PointSet(Z, [[0]])
    cand = ordyn.periodic_point(f, E, Z.point([1]), 5, 3,
                                ordyn.Weight.exp_abs(-1.0),
                                ordyn.YoungFunction.power(2.0))
    assert cand["residual_bound"] < 1e-6
    assert cand["recomputed_residual"] <= cand["residual_bound"] + 1e-8


def test_run_json_preset_roundtrip():
    presets = ordyn.presets()
    assert "heisenberg-a103" in presets
    report = json.loads(ordyn.run_json(json.dumps(presets["integers-decay"])))
    assert report["payload"]["certificate"]["verdict"] == "certified-decaying"
    assert report["mode"] == "certify-transitive"

    heis = ordyn.run(presets["heisenberg-a103"])
    steps = heis["payload"]["certificate"]["steps"]
    assert [s["a_pow"] for s in steps] == [[5, 0, 15], [10, 0, 30], [15, 0, 45]]


def test_criterion_and_probe():
    Z = ordyn.GroupSpace.integer_line()
    phi = ordyn.YoungFunction.power(2.0)
    w = ordyn.Weight.exp_abs(-1.0)
    E = ordyn.PointSet(Z, [[0]])
    a = Z.point([1])

    q = ordyn.criterion_quantity(Z, E, a, 5, w, phi)
    assert q == pytest.approx(math.sqrt(2.0) * math.exp(-5.0), abs=1e-5)
    assert abs(q - ordyn.criterion_quantity_direct(Z, E, a, 5, w, phi)) <= 1e-4

    f = ordyn.SimpleFunction(Z, [([0], 1.0)])
    probe = ordyn.blowup_collapse_probe(f, f, 0.01, a, w, phi, list(range(1, 31)))
    assert probe["found"] and probe["n_k"] == 5

    rep = ordyn.validate_weight(Z, w, [([1], [-1])])
    assert rep["verdict"] == "refuted"

    obs = ordyn.abelian_obstruction_check(Z, ordyn.PointSet.box(Z, [-3], [3]), a,
                                          ordyn.Weight.exp_abs(1.0))
    assert obs["status"] == "holds" and obs["bound"] == pytest.approx(1.0)

    d2 = ordyn.delta2_probe(phi, [0.01, 0.1, 1.0, 10.0, 100.0])
    assert d2["pass"] and d2["constant"] == pytest.approx(4.0)

    tab = ordyn.tabulate_conjugate(ordyn.YoungFunction.power(1.0), 0.0, 2.0, 9)
    assert tab["values"][-1] == "inf"


def test_error_mapping():
    Z = ordyn.GroupSpace.integer_line()
    with pytest.raises(ordyn.PreconditionError):
        ordyn.transitivity_certificate(Z, ordyn.PointSet(Z, []), Z.point([1]),
                                       ordyn.Weight.constant(1.0),
                                       ordyn.YoungFunction.power(2.0), [1, 2, 3])
    with pytest.raises(ordyn.DivergenceError):
        ordyn.YoungFunction.power(1.0).conjugate(2.0)
    with pytest.raises(ordyn.ParseError):
        ordyn.run_json("{ not json")
