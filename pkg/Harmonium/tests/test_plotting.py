import io
import logging

import matplotlib
matplotlib.use("Agg")

from Harmonium.cli.main import dispatch
from Harmonium.tuning.euler import EulerPoint, pitch_grid
from Harmonium.tuning.pythag import Construction
from Harmonium.visualization.plotting import plot_euler_lattice, plot_fifths_spiral

def test_plot_euler_lattice(tmp_path):
    path = tmp_path / "lattice.png"
    plot_euler_lattice([p for p, _ in pitch_grid(1)], save_path=str(path))
    assert path.stat().st_size > 0

def test_plot_euler_lattice_with_labels(tmp_path):
    path = tmp_path / "labels.png"
    points = [EulerPoint(), EulerPoint(-1, 1, 0), EulerPoint(-2, 0, 1)]
    plot_euler_lattice(points, save_path=str(path), labels=["1", "3/2", "5/4"])
    assert path.exists()

def test_plot_euler_lattice_empty(tmp_path, caplog):
    path = tmp_path / "empty.png"
    with caplog.at_level(logging.WARNING):
        plot_euler_lattice([], save_path=str(path))
    assert not path.exists()
    assert "nothing to plot" in caplog.text

def test_plot_fifths_spiral(tmp_path):
    for construction in Construction:
        path = tmp_path / f"spiral-{construction.value}.png"
        plot_fifths_spiral(4, construction, save_path=str(path))
        assert path.stat().st_size > 0

def test_cli_lattice_plot(tmp_path):
    path = tmp_path / "cli.png"
    assert dispatch(["euler", "lattice", "--plot", str(path)], io.StringIO(), io.StringIO()) == 0
    assert path.exists()
