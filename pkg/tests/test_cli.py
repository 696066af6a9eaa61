import json
import re
import subprocess
import sys

import pytest

from troploc.cli import main
from troploc.location import LocationInstance, solve
from troploc.svg import render_svg

from .conftest import DATA, reference_instance


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestSolve:
    def test_full_json(self, capsys):
        code, out, _ = run(capsys, "solve", DATA / "reference-full.json", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["theta"] == 8
        assert doc["endpoints"] == [[5, 4], [4, 5]]

    def test_unconstrained_json(self, capsys):
        code, out, _ = run(capsys, "solve", DATA / "reference-unconstrained.json", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["theta"] == 7
        assert doc["endpoints"] == [[5, 3], [2, 6]]

    def test_text(self, capsys):
        code, out, _ = run(capsys, "solve", DATA / "reference-boundary.json")
        assert code == 0
        assert "theta: 7" in out
        assert "endpoints: (5, 3) -> (4, 4)" in out

    def test_infeasible(self, capsys):
        code, out, err = run(capsys, "solve", DATA / "reference-infeasible.json", "--format", "json")
        assert code == 2
        assert json.loads(out)["diagnostics"]["term"] == "g1-h1"
        assert "g1-h1" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve", tmp_path / "nope.json")
        assert code == 1
        assert "error" in err

    def test_invalid_document(self, capsys, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text('{"schema_version": "1", "mode": "full", "points": []}')
        code, _, err = run(capsys, "solve", f)
        assert code == 1
        assert "points" in err

    def test_usage_error_is_input_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve"])
        assert exc.value.code == 1

    def test_svg_written(self, capsys, tmp_path):
        f = tmp_path / "fig.svg"
        code, _, _ = run(capsys, "solve", DATA / "reference-full.json", "--svg", f)
        assert code == 0
        assert f.read_text().startswith("<?xml")

    def test_deterministic(self, capsys, tmp_path):
        outs = []
        for k in range(2):
            f = tmp_path / f"fig{k}.svg"
            _, out, _ = run(capsys, "solve", DATA / "reference-full.json", "--format", "json", "--svg", f)
            outs.append((out, f.read_bytes()))
        assert outs[0] == outs[1]


class TestVerify:
    @pytest.mark.parametrize("mode", ["full", "distance", "boundary", "unconstrained"])
    def test_reference_modes_pass(self, capsys, mode):
        code, out, _ = run(capsys, "verify", DATA / f"reference-{mode}.json")
        assert code == 0
        assert "verdict: pass" in out

    def test_coarse_grid(self, capsys):
        code, _, err = run(capsys, "verify", DATA / "reference-full.json", "--step", "1")
        assert code == 1
        assert "feasible grid points" in err

    def test_fault_fixture(self, capsys):
        code, out, _ = run(capsys, "verify", DATA / "reference-full.json", "--format", "json",
                           "--solution", DATA / "reference-full-bad-solution.json")
        assert code == 3
        assert json.loads(out)["verdict"] == "fail"

    def test_infeasible(self, capsys):
        code, _, _ = run(capsys, "verify", DATA / "reference-infeasible.json")
        assert code == 2


class TestCctv:
    def test_reference_cameras(self, capsys):
        code, out, _ = run(capsys, "cctv", DATA / "cctv-cameras.txt", "--cable", 9,
                           "--strip-left", 4, "--strip-right", 8)
        assert code == 0
        doc = json.loads(out)
        assert doc["mode"] == "full"
        assert [p["max_distance"] for p in doc["points"]] == [7, 8, 8]

    def test_no_strip(self, capsys):
        code, out, _ = run(capsys, "cctv", DATA / "cctv-cameras.txt", "--cable", 9)
        assert code == 0
        assert json.loads(out)["mode"] == "distance"

    def test_unreachable(self, capsys, tmp_path):
        f = tmp_path / "cams.txt"
        f.write_text("0 0 10\n")
        code, _, err = run(capsys, "cctv", f, "--cable", 9)
        assert code == 1
        assert "exceeds cable length" in err

    def test_half_strip(self, capsys):
        code, _, _ = run(capsys, "cctv", DATA / "cctv-cameras.txt", "--cable", 9, "--strip-left", 4)
        assert code == 1

    def test_pipeline(self, capsys, tmp_path):
        _, out, _ = run(capsys, "cctv", DATA / "cctv-cameras.txt", "--cable", 9,
                        "--strip-left", 4, "--strip-right", 8)
        f = tmp_path / "inst.json"
        f.write_text(out)
        code, _, _ = run(capsys, "verify", f)
        assert code == 0


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "troploc", "solve", str(DATA / "reference-full.json"), "--format", "json"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["theta"] == 8


class TestSvg:
    def count(self, svg, cls):
        return len(re.findall(rf'class="{cls}"', svg))

    def test_full_figure(self):
        inst = reference_instance()
        svg = render_svg(inst, solve(inst))
        assert self.count(svg, "diamond") == 3
        assert self.count(svg, "strip") == 2
        assert self.count(svg, "demand") == 3
        assert 'points="5,-4 4,-5"' in svg  # y flipped

    def test_unconstrained_figure(self):
        inst = reference_instance("unconstrained")
        svg = render_svg(inst, solve(inst))
        assert self.count(svg, "diamond") == 0
        assert self.count(svg, "strip") == 0
        assert 'points="5,-3 2,-6"' in svg

    def test_single_point(self):
        inst = LocationInstance(((1, 1),), (0,))
        svg = render_svg(inst, solve(inst))
        assert self.count(svg, "solution") == 1
        assert "<polyline" not in svg

    def test_byte_identical(self):
        inst = reference_instance()
        assert render_svg(inst, solve(inst)) == render_svg(inst, solve(inst))

    def test_well_formed(self):
        import xml.etree.ElementTree as ET
        inst = reference_instance("distance")
        root = ET.fromstring(render_svg(inst, solve(inst)))
        assert root.tag.endswith("svg")
