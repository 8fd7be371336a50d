import numpy as np
import pytest

from holorecon.experiments import SweepConfig, SweepResult, SweepRow, evaluate, run_sweep, series_stats, summarize
from holorecon.io import format_sweep_csv
from holorecon.metrics import LossReport
from holorecon.propagation import reconstruct
from holorecon.simulate import DetectorSpec, Scenario, SphereSpec, preset_microwave, simulate, truth_mask
from holorecon.metrics import loss_report


def rows_from(values, sizes=None):
    sizes = sizes or list(range(len(values)))
    return SweepResult([SweepRow(s, 1, 1, LossReport(v, v, 1, 1)) for s, v in zip(sizes, values)], "x")


def test_config_validation():
    sc = preset_microwave()
    for sizes in ([0, 0], [3, 2], [-1, 2], []):
        with pytest.raises(ValueError):
            SweepConfig(sc, sizes, 0.15)
    with pytest.raises(ValueError):
        SweepConfig(sc, [0], 0.0)


def test_single_size_is_base_detector():
    result = run_sweep(SweepConfig(preset_microwave(), [0], 0.15))
    (row,) = result.rows
    assert (row.size, row.nx, row.ny) == (0, 52, 62)
    assert row.report.n_pixels == 3224


def test_size_zero_row_matches_standalone_pipeline():
    sc = preset_microwave()
    row = run_sweep(SweepConfig(sc, [0, 4], 0.15)).rows[0]
    standalone = loss_report(truth_mask(sc), reconstruct(simulate(sc), 0.15))
    assert row.report == standalone


def test_growth_is_symmetric_and_odd_extra_goes_high():
    det = DetectorSpec.centered_on(52, 62, 0.005, 0.15, 0.15)
    for s in (1, 2, 7, 10):
        g = det.grown(s)
        xs, ys = g.coordinates()
        ci = int(np.argmin(np.abs(xs - 0.15)))
        assert (g.nx, g.ny) == (52 + s, 62 + s)
        assert ci == 26 + s // 2
        assert g.nx - 1 - ci == 52 - 1 - 26 + (s - s // 2)


def test_mask_consistency_across_sizes():
    result = run_sweep(SweepConfig(preset_microwave(), [0, 3, 10], 0.15))
    for row in result.rows:
        assert row.report.n_pixels == row.nx * row.ny == (52 + row.size) * (62 + row.size)
        assert row.report.n_zero_pixels == row.report.n_pixels - 317


def test_determinism():
    cfg = SweepConfig(preset_microwave(), [0, 5, 11], 0.15, "Monostatic")
    assert format_sweep_csv(run_sweep(cfg)) == format_sweep_csv(run_sweep(cfg))
    assert run_sweep(cfg).config_digest == cfg.digest()


def test_digest_tracks_config():
    sc = preset_microwave()
    assert SweepConfig(sc, [0, 1], 0.15).digest() != SweepConfig(sc, [0, 2], 0.15).digest()
    assert SweepConfig(sc, [0, 1], 0.15).digest() != SweepConfig(sc, [0, 1], 0.15, "Fresnel").digest()


def test_null_scatterer_rows_recorded_as_failed():
    sc = preset_microwave()
    s = sc.sphere
    null = Scenario(sc.wavelength, 1.0, SphereSpec(s.center, s.radius, s.refraction_index, 0.0), sc.detector)
    result = run_sweep(SweepConfig(null, [0, 2], 0.15))
    assert [r.size for r in result.rows] == [0, 2]
    assert all(not r.ok and r.status.startswith("failed") for r in result.rows)
    assert [(r.nx, r.ny) for r in result.rows] == [(52, 62), (54, 64)]


def test_sweep_trend_decreasing():
    result = run_sweep(SweepConfig(preset_microwave(), [0, 20, 40], 0.15))
    l2z = [r.report.l2_zero for r in result.rows]
    assert l2z[-1] < l2z[0]


def test_series_stats():
    st = series_stats([0, 1, 2], [4, 2, 1])
    assert st["reduction"] == pytest.approx(0.75) and st["min_size"] == 2 and st["local_minima"] == []
    st = series_stats([0, 1, 2, 3], [5, 5, 5, 5])
    assert st["reduction"] == 0 and st["local_minima"] == []
    st = series_stats([0, 10, 20, 30, 40], [5, 3, 4, 2, 2.5])
    assert st["local_minima"] == [10, 30]


def test_summarize_paper_endpoints():
    text = summarize(rows_from([7.6, 2.76], [0, 22]))
    assert "reduction=63.7%" in text
    assert "min=2.76 at size=22" in text


def test_summarize_hand_series():
    text = summarize(rows_from([4.0, 2.0, 1.0]))
    assert "reduction=75.0%" in text and "local_minima=none" in text
    assert "reduction=0.0%" in summarize(rows_from([3.0, 3.0, 3.0]))


def test_summarize_needs_two_rows():
    with pytest.raises(ValueError):
        summarize(rows_from([1.0]))


def test_summarize_skips_failed_rows():
    result = rows_from([4.0, 2.0])
    result = SweepResult(result.rows + [SweepRow(9, 1, 1, None, "failed: x")], "x")
    assert "failed rows: 1" in summarize(result)


def test_evaluate_matches_manual_pipeline():
    sc = preset_microwave()
    assert evaluate(sc, 0.1, "Fresnel") == loss_report(truth_mask(sc), reconstruct(simulate(sc), 0.1, mode="Fresnel"))
