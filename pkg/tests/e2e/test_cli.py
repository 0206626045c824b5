"""
End-to-end tests of the command line: files in, exit codes and files out.
"""

from pathlib import Path
from typing import List

import numpy as np
import orjson
import pytest

from cone_tutte.config import settings
from cone_tutte.domain.harmonic import EdgeWeights
from cone_tutte.domain.mesh import make_polygon
from cone_tutte.main import EXIT_ERROR, EXIT_OK, EXIT_REJECTED, main
from cone_tutte.repositories import drawings, meshes, polygons, run_configs, weights
from cone_tutte.schemas import DrawingFile, PolygonFile, RunConfig, WeightsFile
from tests.factories.meshes import SQUARE, jitter_interior, square_fan_drawing

pytestmark = pytest.mark.e2e


def _read_json(path: Path):
    return orjson.loads(path.read_bytes())


def _flags(**paths: Path) -> List[str]:
    """--name value pairs for path arguments."""
    return [item for name, path in paths.items() for item in (f"--{name}", str(path))]


@pytest.fixture
def fan_files(tmp_path):
    """OFF fan mesh and the unit square polygon."""
    mesh = tmp_path / "fan.off"
    polygon = tmp_path / "square.json"
    meshes.write_off(mesh, square_fan_drawing())
    polygons.write(polygon, PolygonFile.from_domain(make_polygon(SQUARE)))
    return mesh, polygon


@pytest.fixture
def l_drawing_file(tmp_path, l_grid):
    path = tmp_path / "l.json"
    drawings.write(path, DrawingFile.from_domain(l_grid))
    return path


@pytest.fixture
def skewed_weights_file(tmp_path, l_grid):
    """Uniform weights except one reflex edge pulled to weight 100."""
    coords = l_grid.coords
    reflex = int(np.flatnonzero(np.all(coords == (1.0, 1.0), axis=1))[0])
    pull = int(np.flatnonzero(np.all(coords == (1.5, 1.0), axis=1))[0])
    w = EdgeWeights.uniform(l_grid.tri).updated({(reflex, pull): 100.0})
    path = tmp_path / "skewed.json"
    weights.write(path, WeightsFile.from_domain(w))
    return path


class TestEmbedCommand:
    """Test cone-tutte embed."""

    def test_fan_embedding(self, tmp_path, fan_files):
        """Test that the square fan embeds with its center in the middle."""
        mesh, polygon = fan_files
        out, report = tmp_path / "drawing.json", tmp_path / "cert.json"
        code = main(["embed", *_flags(mesh=mesh, polygon=polygon, out=out, report=report)])
        assert code == EXIT_OK
        coords = _read_json(out)["coords"]
        np.testing.assert_allclose(coords[4], (0.5, 0.5), atol=1e-14)
        assert _read_json(report)["verdict"] == "certified_embedding"

    def test_run_config(self, tmp_path, fan_files):
        """Test inputs and outputs taken from --config."""
        mesh, polygon = fan_files
        out = tmp_path / "drawing.json"
        config = tmp_path / "run.json"
        run_configs.write(
            config,
            RunConfig(
                subcommand="embed",
                inputs={"mesh": str(mesh), "polygon": str(polygon)},
                outputs={"out": str(out)},
                tolerances={"tol_rel": 1e-8},
            ),
        )
        before = settings.TOL_REL
        assert main(["--config", str(config), "embed"]) == EXIT_OK
        assert out.is_file()
        assert settings.TOL_REL == before

    def test_config_for_other_command(self, tmp_path, fan_files):
        """Test a config written for a different subcommand."""
        mesh, polygon = fan_files
        config = tmp_path / "run.json"
        run_configs.write(config, RunConfig(subcommand="certify"))
        code = main(["--config", str(config), "embed", "--mesh", str(mesh), "--polygon", str(polygon)])
        assert code == EXIT_ERROR

    def test_missing_input(self, tmp_path, fan_files):
        """Test that a missing input file stops the run before any work."""
        mesh, _ = fan_files
        code = main(["embed", "--mesh", str(mesh), "--polygon", str(tmp_path / "absent.json")])
        assert code == EXIT_ERROR

    def test_missing_argument(self, fan_files, capsys):
        """Test an embed run without a polygon."""
        mesh, _ = fan_files
        assert main(["embed", "--mesh", str(mesh)]) == EXIT_ERROR
        assert "--polygon" in capsys.readouterr().err

    def test_usage_error(self):
        """Test that argparse usage errors exit with 1."""
        with pytest.raises(SystemExit) as exc_info:
            main(["embed", "--bogus"])
        assert exc_info.value.code == EXIT_ERROR


class TestCertifyCommand:
    """Test cone-tutte certify."""

    def test_folded_drawing_rejected(self, tmp_path, capsys):
        """Test that a folded fan exits 2 and prints the certificate."""
        path = tmp_path / "folded.json"
        drawings.write(path, DrawingFile.from_domain(square_fan_drawing(center=(2.0, 0.5))))
        assert main(["certify", "--target", str(path)]) == EXIT_REJECTED
        document = orjson.loads(capsys.readouterr().out)
        assert document["verdict"] == "rejected"
        assert document["counts"]["flipped_triangle"] == 1

    def test_homeomorphism(self, tmp_path, l_drawing_file, l_grid, rng):
        """Test a source to target certificate with its determinant report."""
        target = tmp_path / "jittered.json"
        drawings.write(target, DrawingFile.from_domain(jitter_interior(l_grid, rng, 0.05)))
        report = tmp_path / "det.json"
        code = main(
            ["certify", *_flags(source=l_drawing_file, target=target, out=tmp_path / "c.json", report=report)]
        )
        assert code == EXIT_OK
        assert _read_json(report)["positive"] is True

    def test_folded_target_rejected(self, tmp_path):
        """Test that a source to target map onto a folded fan exits 2."""
        source, target = tmp_path / "fan.json", tmp_path / "folded.json"
        drawings.write(source, DrawingFile.from_domain(square_fan_drawing()))
        drawings.write(target, DrawingFile.from_domain(square_fan_drawing(center=(2.0, 0.5))))
        report = tmp_path / "det.json"
        code = main(["certify", *_flags(source=source, target=target, report=report)])
        assert code == EXIT_REJECTED
        assert not report.exists()


class TestConesAndRender:
    """Test cone reports and their rendering."""

    def test_failing_cone_rendered_in_fail_color(self, tmp_path, l_drawing_file, skewed_weights_file):
        """Test exit 2 for a failing cone and a reproducible SVG marking it."""
        cones = tmp_path / "cones.json"
        code = main(["cones", *_flags(drawing=l_drawing_file, weights=skewed_weights_file, out=cones)])
        assert code == EXIT_REJECTED
        assert _read_json(cones)["passes"] is False

        first, second = tmp_path / "a.svg", tmp_path / "b.svg"
        for svg in (first, second):
            assert main(["render", *_flags(drawing=l_drawing_file, cones=cones, svg=svg)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        assert b"#d62728" in first.read_bytes()

    def test_render_needs_svg(self, l_drawing_file):
        """Test a render run without an output path."""
        assert main(["render", "--drawing", str(l_drawing_file)]) == EXIT_ERROR


class TestExtendAndRecover:
    """Test the extension and weight recovery commands."""

    def test_extend(self, tmp_path, l_drawing_file):
        """Test that the L lattice extends and reproduces itself."""
        out = tmp_path / "ext.json"
        assert main(["extend", "--drawing", str(l_drawing_file), "--out", str(out)]) == EXIT_OK
        document = _read_json(out)
        assert len(document["pockets"]) == 1
        assert document["reproduction_error"] < 1e-9

    def test_extend_refuses_failing_cone(self, l_drawing_file, skewed_weights_file):
        """Test that a cone violation is an input error, not a rejection."""
        code = main(["extend", "--drawing", str(l_drawing_file), "--weights", str(skewed_weights_file)])
        assert code == EXIT_ERROR

    def test_recover_weights(self, tmp_path, l_drawing_file, l_grid, rng):
        """Test that recovered weights are written for a jittered target."""
        target = tmp_path / "jittered.json"
        drawings.write(target, DrawingFile.from_domain(jitter_interior(l_grid, rng, 0.05)))
        out = tmp_path / "w.json"
        code = main(["recover-weights", *_flags(source=l_drawing_file, target=target, out=out)])
        assert code == EXIT_OK
        assert all(row[2] > 0 for row in _read_json(out)["edges"])


class TestDiskCommand:
    """Test cone-tutte disk."""

    def test_audit(self, capsys):
        """Test the diameter profile audit."""
        assert main(["disk", "audit"]) == EXIT_OK
        assert orjson.loads(capsys.readouterr().out)["best"] == "2/pi"

    def test_grid_csv(self, tmp_path):
        """Test grid samples of the identity written as CSV."""
        csv = tmp_path / "grid.csv"
        out = tmp_path / "map.json"
        code = main(["disk", "grid", "--angles", "16", "--radii", "4", "--csv", str(csv), "--out", str(out)])
        assert code == EXIT_OK
        assert len(csv.read_text().splitlines()) == 65

    def test_choquet_needs_polygon(self):
        """Test the choquet mode without a polygon."""
        assert main(["disk", "choquet"]) == EXIT_ERROR

    def test_unknown_mode(self):
        """Test a mode outside the choices."""
        with pytest.raises(SystemExit) as exc_info:
            main(["disk", "spiral"])
        assert exc_info.value.code == EXIT_ERROR
