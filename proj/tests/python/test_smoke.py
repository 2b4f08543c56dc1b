import numpy as np
import pytest

import qestkit as qk


def test_zoo_catalog_lists_five_models():
    names = {e["name"] for e in qk.zoo_catalog()}
    assert names == {
        "classical-diagonal",
        "qubit-full",
        "qubit-equatorial",
        "qubit-fixed-radius",
        "qutrit-qc",
    }


def test_equatorial_metric_and_bounds():
    model = qk.zoo_model("qubit-equatorial")
    point = qk.evaluate(model, [0.5, 0.0])
    mats = qk.matrices(point)
    assert mats["G"] == pytest.approx(np.diag([4.0 / 3.0, 1.0]), abs=1e-10)
    assert np.abs(np.imag(mats["Z"])).max() < 1e-10

    out = qk.bounds(point)
    assert out["sld_bound"] == pytest.approx(1.75, abs=1e-10)
    assert out["holevo"]["value"] == pytest.approx(1.75, abs=1e-10)
    assert out["holevo"]["method"] == "closed-form-sld"

    numeric = qk.bounds(point, method="numeric")
    assert numeric["holevo"]["value"] == pytest.approx(1.75, abs=1e-6)


def test_qutrit_classification_verdicts():
    model = qk.zoo_model("qutrit-qc", {"c": 2.0})
    point = qk.evaluate(model, [0.2, 0.3])
    report = qk.classify(point)
    assert not report["classical"]["verdict"]
    assert report["quasi_classical"]["verdict"]
    assert not report["d_invariant"]["verdict"]
    assert report["asymptotically_classical"]["verdict"]
    assert report["consistent"]


def test_explicit_point_from_numpy():
    rho = np.array([[0.75, 0.25], [0.25, 0.25]], dtype=complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    point = qk.make_point([0.0], rho, [0.5 * sx])
    assert point.dim == 2
    assert point.params == 1

    mats = qk.matrices(point)
    assert mats["G"].shape == (1, 1)
    out = qk.bounds(point)
    assert out["holevo"]["method"] == "closed-form-sld"
    assert out["holevo"]["value"] == pytest.approx(out["sld_bound"], abs=1e-10)


def test_lemma_suite_passes_on_zoo_member():
    point = qk.evaluate(qk.zoo_model("qubit-full"), [0.2, -0.1, 0.3])
    suite = qk.lemma_suite(point)
    assert suite["pass"]
    asserted = [c for c in suite["checks"] if c["asserted"]]
    assert max(c["residual"] for c in asserted) < 1e-8


def test_fixed_radius_grid_is_globally_d_invariant():
    model = qk.zoo_model("qubit-fixed-radius")
    grid = [[a, b] for a in (0.1, 0.25, 0.4) for b in (0.1, 0.25, 0.4)]
    report = qk.classify_global(model, grid)
    assert report["global"]["d_invariant"]
    assert not report["global"]["asymptotically_classical"]

    bloch = qk.bloch_classify(model, grid)
    assert bloch["agrees"]
    assert bloch["radius_spread"] < 1e-12


def test_invalid_inputs_raise():
    with pytest.raises(qk.InputError):
        qk.zoo_model("no-such-model")
    with pytest.raises(qk.InputError):
        qk.evaluate(qk.zoo_model("qubit-equatorial"), [0.1])
    rho = np.eye(2, dtype=complex) / 2
    with pytest.raises(qk.RegularityError):
        qk.make_point([0.0], rho, [np.zeros((2, 2), dtype=complex)])


def test_model_json_round_trip():
    model = qk.zoo_model("qutrit-qc", {"c": 2.0})
    clone = qk.model_from_json(qk.model_to_json(model))
    theta = [0.2, 0.3]
    a = qk.evaluate(model, theta)
    b = qk.evaluate(clone, theta)
    assert a.rho == pytest.approx(b.rho, abs=1e-12)
    for da, db in zip(a.drho, b.drho):
        assert da == pytest.approx(db, abs=1e-12)
