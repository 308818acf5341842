import math

from reproduce_operators import main as reproduce_main
from success_vs_theta import SweepConfig, sweep


def test_sweep_matches_closed_form():
    for theta, closed, analytic, rate in sweep(SweepConfig(points=3, trials=4000, seed=1)):
        assert abs(closed - analytic) < 1e-12
        assert abs(rate - analytic) <= 4 * math.sqrt(0.25 / 4000)


def test_reproduce_operators_runs(capsys):
    reproduce_main()
    out = capsys.readouterr().out
    assert "yeo-chua: Perfect" in out and "w4: Impossible" in out
