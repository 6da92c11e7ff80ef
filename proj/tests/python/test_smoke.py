import math

import pytest

import acctraj


def test_smooth_speed_constant():
    out = acctraj.smooth_speed([5.0] * 20)
    assert all(abs(v - 5.0) < 1e-12 for v in out)


def test_compute_acceleration_ramp():
    t = [0.1 * i for i in range(20)]
    v = [2.0 * ti for ti in t]
    a = acctraj.compute_acceleration(v, t)
    assert a[0] == pytest.approx(2.0)
    assert a[-1] == a[-2]


def test_dtw_distance():
    res = acctraj.dtw_distance([0.0, 1.0, 2.0], [0.0, 2.0])
    assert res.distance == pytest.approx(1.0)
    assert res.normalized == pytest.approx(1.0 / 3.0)
    assert acctraj.dtw_distance([1.0, 2.0], [1.0, 2.0]).distance == 0.0


def test_dtw_raises_on_empty():
    with pytest.raises(acctraj.DataError):
        acctraj.dtw_distance([], [1.0])


def test_downsample():
    series = [float(i) for i in range(25)]
    assert acctraj.downsample(series, 10.0, 1.0) == [0.0, 10.0, 20.0]


def test_pairwise_matrix():
    trajs = [("a", [1.0, 2.0, 3.0]), ("b", [1.0, 2.0, 3.0]), ("c", [9.0, 9.0, 9.0])]
    m = acctraj.pairwise_matrix(trajs)
    assert m.ids == ["a", "b", "c"]
    assert m.dist[0][1] == 0.0
    assert m.dist[0][2] == m.dist[2][0] > 0.0


def test_compute_asv():
    t = [0.1 * i for i in range(100)]
    res = acctraj.compute_asv([20.0] * 100, t, 20.0)
    assert res.asv == 0.0
    assert acctraj.estimate_v_star([5.0, 7.0]) == pytest.approx(6.0)


def test_fit_vs_curve():
    jam, s_c, desired = 3.57, 6.17, 20.0
    points = []
    for i in range(2000):
        s = jam + 0.2 + (3.0 * s_c - jam - 0.2) * (i / 1999.0)
        v = desired if s >= s_c else desired * (s - jam) / (s_c - jam)
        points.append((s, v))
    fit = acctraj.fit_vs_curve(points, jam, desired)
    assert fit.critical_spacing == pytest.approx(s_c, abs=1e-3)
    assert fit.evaluate(jam) == 0.0
    assert fit.evaluate(100.0) == desired


def test_safety_indicators():
    assert acctraj.compute_ttc(10.0, -2.0) == pytest.approx(5.0)
    assert math.isinf(acctraj.compute_ttc(10.0, 2.0))
    assert acctraj.compute_drac(10.0, -2.0) == pytest.approx(0.4)
    assert acctraj.compute_drac(10.0, 2.0) == 0.0


def test_emissions(tmp_path):
    path = tmp_path / "coeff.csv"
    rows = ["emission_type,regime,r,q,value"]
    for etype in ("Fuel", "HC", "CO", "NOx"):
        for regime in ("positive", "negative"):
            for r in range(4):
                for q in range(4):
                    value = 1.0 if (r, q) == (0, 0) else 0.0
                    rows.append(f"{etype},{regime},{r},{q},{value}")
    path.write_text("\n".join(rows) + "\n")

    table = acctraj.EmissionCoefficientTable.load(path)
    rate = acctraj.instantaneous_moe(10.0, 0.5, table, acctraj.EmissionType.Fuel)
    assert rate == pytest.approx(math.e)
    literal = acctraj.instantaneous_moe(
        10.0, 0.5, table, acctraj.EmissionType.Fuel, acctraj.EmissionForm.LiteralPolynomial
    )
    assert literal == pytest.approx(1.0)


def test_summarize_group():
    s = acctraj.summarize_group([1.0, 2.0, 3.0, 4.0, 5.0])
    assert (s.min, s.p25, s.median, s.p75, s.max) == (1.0, 2.0, 3.0, 4.0, 5.0)
