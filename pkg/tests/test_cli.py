import subprocess
import sys

import numpy as np
import pytest

from holorecon import io
from holorecon.cli import main
from holorecon.grid import ComplexField, ScalarGrid
from holorecon.simulate import preset_microwave


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "mw.cfg"
    io.write_scenario(path, preset_microwave())
    return path


@pytest.fixture
def hologram_file(tmp_path, scenario_file):
    out = tmp_path / "holo.txt"
    assert main(["simulate", "--scenario", str(scenario_file), "--out", str(out)]) == 0
    return out


def test_simulate(tmp_path, scenario_file, capsys):
    out, img = tmp_path / "h.txt", tmp_path / "h.pgm"
    assert main(["simulate", "--scenario", str(scenario_file), "--out", str(out), "--image", str(img)]) == 0
    holo = io.read_grid(out)
    assert (holo.nx, holo.ny) == (52, 62)
    assert img.read_bytes().split(b"\n")[1] == b"52 62"


def test_missing_out_is_usage_error(scenario_file, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--scenario", str(scenario_file)])
    assert exc.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_unknown_subcommand_and_flag(capsys):
    for argv in (["frobnicate"], ["selftest", "--verbose"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_reconstruct_peak(tmp_path, hologram_file):
    out = tmp_path / "slice.txt"
    assert main(["reconstruct", "--hologram", str(hologram_file), "--depth", "0.15", "--mode", "OneWay",
                 "--out", str(out), "--image", str(tmp_path / "s.pgm")]) == 0
    slice_ = io.read_grid(out)
    assert isinstance(slice_, ComplexField)
    j, i = np.unravel_index(np.argmax(np.abs(slice_.data)), slice_.data.shape)
    assert abs(i - 26) <= 1 and abs(j - 31) <= 1


def test_reconstruct_negative_depth(tmp_path, hologram_file, capsys):
    rc = main(["reconstruct", "--hologram", str(hologram_file), "--depth", "-1", "--mode", "OneWay",
               "--out", str(tmp_path / "x.txt")])
    assert rc == 2
    assert "depth" in capsys.readouterr().err


def test_reconstruct_modes_differ(tmp_path, hologram_file):
    outs = {}
    for mode in ("OneWay", "Fresnel"):
        out = tmp_path / f"{mode}.txt"
        assert main(["reconstruct", "--hologram", str(hologram_file), "--depth", "0.15", "--mode", mode,
                     "--out", str(out)]) == 0
        outs[mode] = out.read_bytes()
    assert outs["OneWay"] != outs["Fresnel"]


def test_reconstruct_is_byte_stable(tmp_path, hologram_file):
    args = ["reconstruct", "--hologram", str(hologram_file), "--depth", "0.1", "--mode", "Monostatic"]
    main(args + ["--out", str(tmp_path / "a.txt")])
    main(args + ["--out", str(tmp_path / "b.txt")])
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_metrics_identical(tmp_path):
    mask = ScalarGrid(np.array([[0.0, 1.0], [1.0, 0.0]]), 0.01, wavelength=0.15)
    io.write_grid(tmp_path / "t.txt", mask)
    io.write_grid(tmp_path / "s.txt", ComplexField(mask.data * 2, 0.01, 0.15))
    assert main(["metrics", "--truth", str(tmp_path / "t.txt"), "--slice", str(tmp_path / "s.txt"),
                 "--out", str(tmp_path / "m.csv")]) == 0
    assert (tmp_path / "m.csv").read_text() == "l2,l2_zero,n_pixels,n_zero_pixels\n0,0,4,2\n"


def test_metrics_hand_case(tmp_path):
    # truth [[1, 0], [0, 0]] vs normalized slice [[1, 1], [0, 0]]: one unit error
    io.write_grid(tmp_path / "t.txt", ScalarGrid(np.array([[1.0, 0.0], [0.0, 0.0]]), 0.01, wavelength=0.15))
    io.write_grid(tmp_path / "s.txt", ComplexField(np.array([[1.0, 1.0], [0.0, 0.0]]), 0.01, 0.15))
    assert main(["metrics", "--truth", str(tmp_path / "t.txt"), "--slice", str(tmp_path / "s.txt"),
                 "--out", str(tmp_path / "m.csv")]) == 0
    l2, l2z, n, n0 = (tmp_path / "m.csv").read_text().splitlines()[1].split(",")
    assert float(l2) == 0.25
    assert float(l2z) == pytest.approx(1 / 3, abs=1e-15)
    assert (n, n0) == ("4", "3")


def test_metrics_dimension_mismatch(tmp_path):
    io.write_grid(tmp_path / "t.txt", ScalarGrid(np.zeros((2, 2)), 0.01, wavelength=0.15))
    io.write_grid(tmp_path / "s.txt", ComplexField(np.ones((3, 2)), 0.01, 0.15))
    assert main(["metrics", "--truth", str(tmp_path / "t.txt"), "--slice", str(tmp_path / "s.txt"),
                 "--out", str(tmp_path / "m.csv")]) == 2


def test_sweep_single_size(tmp_path, scenario_file):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--scenario", str(scenario_file), "--sizes", "0", "--depth", "0.15",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2 and lines[1].startswith("0,52,62,")


def test_sweep_summary(tmp_path, scenario_file, capsys):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--scenario", str(scenario_file), "--sizes", "0,20,40", "--depth", "0.15",
                 "--out", str(out), "--summary"]) == 0
    text = capsys.readouterr().out
    assert "l2_zero:" in text and "reduction=" in text
    rows = [l.split(",") for l in out.read_text().splitlines()[1:]]
    assert float(rows[-1][4]) < float(rows[0][4])


@pytest.mark.parametrize("sizes", ["10,0", "0,0", "a,b"])
def test_sweep_bad_sizes(tmp_path, scenario_file, sizes):
    rc = None
    try:
        rc = main(["sweep", "--scenario", str(scenario_file), "--sizes", sizes, "--depth", "0.15",
                   "--out", str(tmp_path / "s.csv")])
    except SystemExit as exc:
        rc = exc.code
    assert rc == 1


def test_missing_file_is_runtime_error(tmp_path):
    assert main(["simulate", "--scenario", str(tmp_path / "nope.cfg"), "--out", str(tmp_path / "o")]) == 2


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) >= 4 and all(l.startswith("PASS ") for l in lines)


def test_selftest_fault_injection(capsys):
    assert main(["selftest", "--inject-fault", "kernel-sign"]) != 0
    assert any(l.startswith("FAIL ") for l in capsys.readouterr().out.splitlines())


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "holorecon.cli", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS dft_roundtrip" in proc.stdout
