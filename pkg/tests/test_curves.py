import json
import math

import numpy as np
import pytest

from zpeff.curves import FIGURE_A_VALUES, CurveTable, emit_curves
from zpeff.errors import DomainError, ValidationError
from zpeff.pareto import gini_from_beta, zero_efficiency_threshold


def test_table_invariants():
    with pytest.raises(ValidationError):
        CurveTable("x", {"a": [1.0, 2.0], "b": [1.0]})
    with pytest.raises(ValidationError):
        CurveTable("x", {"a": [2.0, 1.0]})
    with pytest.raises(ValidationError):
        CurveTable("x", {})


def test_bad_figure_and_grid():
    with pytest.raises(DomainError):
        emit_curves(6, 100)
    with pytest.raises(DomainError):
        emit_curves(2, 9)


def test_figure1_argmax_and_ordering():
    t = emit_curves(1, 199)
    p = np.array(t.columns["p"])
    assert len(t) == 199 and 0.5 in p
    prev = None
    for a in FIGURE_A_VALUES:
        eta = np.array(t.columns[f"eta_a{a:g}"])
        assert p[np.argmax(eta)] == pytest.approx(0.5)
        assert np.all(np.diff(eta, 2) <= 1e-12)
        if prev is not None:
            assert np.all(eta > prev)
        prev = eta


def test_figure2_divergence_markers():
    t = emit_curves(2, 400)
    a, eta = t.columns["a"], t.columns["eta"]
    assert a[0] == 0.0 and a[-1] == 0.5
    assert eta[0] == -math.inf and eta[-1] == math.inf
    assert all(math.isfinite(v) for v in eta[1:-1])
    csv_lines = t.to_csv().splitlines()
    assert csv_lines[1].endswith("-inf") and csv_lines[-1].endswith(",inf")


def test_figure3_zero_crossing_at_critical_gini():
    grid = 400
    t = emit_curves(3, grid)
    g, eta = np.array(t.columns["gini"]), np.array(t.columns["eta"])
    k = int(np.nonzero((eta[:-1] > 0) & (eta[1:] <= 0))[0][0])
    g_star = gini_from_beta(1 / zero_efficiency_threshold() - 1)
    assert g[k + 1] <= g_star <= g[k]
    assert g_star == pytest.approx(0.1373, abs=1e-3)
    assert eta[0] == math.inf and g[0] == 1.0


def test_figure4_columns():
    t = emit_curves(4, 50)
    assert list(t.columns) == ["beta", "a", "eta", "shannon"]
    assert t.columns["eta"][0] == math.inf and t.columns["shannon"][0] == 2.0


def test_figure5_bs_finite_power_divergent():
    t = emit_curves(5, 50)
    assert t.columns["varentropy_bs"][0] == pytest.approx(1.0)
    assert t.columns["varentropy_power"][0] == math.inf
    obj = t.to_dict()
    assert obj["columns"]["varentropy_power"][0] is None
    assert obj["diverges"]["varentropy_power"][0] == 1
    assert obj["diverges"]["varentropy_bs"][0] == 0


@pytest.mark.parametrize("figure", [1, 2, 3, 4, 5])
def test_csv_round_trip_byte_exact(figure):
    text = emit_curves(figure, 37).to_csv()
    assert CurveTable.from_csv(text).to_csv() == text


@pytest.mark.parametrize("figure", [2, 5])
def test_json_round_trip(figure):
    t = emit_curves(figure, 20)
    back = CurveTable.from_dict(json.loads(t.to_json()))
    assert back.columns == t.columns
    assert back.to_json() == t.to_json()


def test_bit_identical_across_calls():
    for f in range(1, 6):
        assert emit_curves(f, 64).to_csv() == emit_curves(f, 64).to_csv()
