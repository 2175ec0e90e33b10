"""Drive the command line in-process and pin its transcripts."""

import io
import json
import re
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from types import SimpleNamespace

import pytest

from hivecomb import cli
from hivecomb.diagram import canonical_diagram, diagram
from hivecomb.hive import Hive, enumerate_lattice_hives
from hivecomb.honeycomb import build_gl_tinkertoy, standard_configuration
from hivecomb.weights import BoundaryTriple

ADJ = BoundaryTriple((2, 1, 0), (2, 1, 0), (-1, -2, -3))


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


def std(n):
    return standard_configuration(build_gl_tinkertoy(n))


def save(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


class TestLrCount:
    def test_adjoint_square(self):
        code, out, _ = run("lr-count", "-n", "3", "--lambda", "2,1,0",
                           "--mu", "2,1,0", "--nu", "-1,-2,-3", "--verify")
        assert (code, out) == (0, "2\n")

    def test_gl1(self):
        code, out, _ = run("lr-count", "-n", "1", "--lambda", "5",
                           "--mu", "-2", "--nu", "-3")
        assert (code, out) == (0, "1\n")

    def test_zero_sum_failure(self):
        code, _, err = run("lr-count", "-n", "2", "--lambda", "3,0",
                           "--mu", "1,0", "--nu", "0,-1")
        assert code == 2
        assert "invalid input" in err

    def test_fractional_weights_rejected(self):
        code, _, err = run("lr-count", "-n", "2", "--lambda", "1/2,0",
                           "--mu", "1,0", "--nu", "-1/2,-1")
        assert code == 2
        assert "integral" in err

    def test_part_count_mismatch(self):
        code, _, _ = run("lr-count", "-n", "4", "--lambda", "2,1,0",
                         "--mu", "2,1,0", "--nu", "-1,-2,-3")
        assert code == 2

    def test_oracle_mismatch_exits_3(self, monkeypatch):
        monkeypatch.setattr(cli, "transcribed_lr_count", lambda t: 99)
        code, _, err = run("lr-count", "-n", "3", "--lambda", "2,1,0",
                           "--mu", "2,1,0", "--nu", "-1,-2,-3", "--verify")
        assert code == 3
        assert "verification failed" in err


class TestDecompose:
    def test_adjoint_square_table(self):
        code, out, _ = run("decompose", "-n", "3", "--lambda", "2,1,0",
                           "--mu", "2,1,0")
        assert code == 0
        assert out == ("4,2,0: 1\n4,1,1: 1\n3,3,0: 1\n"
                       "3,2,1: 2\n2,2,2: 1\n")

    def test_gl2_square(self):
        code, out, _ = run("decompose", "--lambda", "1,0", "--mu", "1,0")
        assert (code, out) == (0, "2,0: 1\n1,1: 1\n")

    def test_zero_mu(self):
        code, out, _ = run("decompose", "--lambda", "3,1", "--mu", "0,0")
        assert (code, out) == (0, "3,1: 1\n")


class TestGtCount:
    def test_adjoint(self):
        assert run("gt-count", "--lambda", "2,1,0") == (0, "8\n", "")

    def test_gl2(self):
        assert run("gt-count", "--lambda", "1,0") == (0, "2\n", "")


class TestLift:
    ARGS = ("lift", "-n", "3", "--lambda", "4,1,0", "--mu", "4,1,0",
            "--nu", "-2,-3,-5")

    def test_report_shape(self, tmp_path):
        out = tmp_path / "r.json"
        code, _, _ = run(*self.ARGS, "-o", str(out))
        assert code == 0
        rep = json.loads(out.read_text())
        assert sorted(rep) == ["acyclic", "hive", "integral",
                               "max_multiplicity", "objective_value",
                               "vertex_kinds"]
        assert rep["integral"] is True
        assert all("/" not in e for e in rep["hive"]["entries"])
        assert rep["max_multiplicity"] == 1
        assert rep["acyclic"] is True
        assert "6-valent" not in rep["vertex_kinds"]

    def test_reruns_are_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(*self.ARGS, "-o", str(a))
        run(*self.ARGS, "-o", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_env_seed_matches_flag(self, tmp_path, monkeypatch):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(*self.ARGS, "--seed", "9", "-o", str(a))
        monkeypatch.setenv("HIVECOMB_SEED", "9")
        run(*self.ARGS, "-o", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_infeasible_exits_4(self):
        code, _, err = run("lift", "-n", "2", "--lambda", "1,0",
                           "--mu", "1,0", "--nu", "1,-3")
        assert code == 4
        assert "infeasible" in err

    def test_nonintegral_regular_exits_3(self, monkeypatch):
        fake = SimpleNamespace(integral=False)
        monkeypatch.setattr(cli, "largest_lift", lambda t, w, **kw: fake)
        code, _, err = run(*self.ARGS)
        assert code == 3
        assert "nonintegral" in err


class TestJsonRoundtrips:
    def test_hive(self):
        for h in enumerate_lattice_hives(ADJ):
            assert cli.hive_from_json(cli.hive_to_json(h)) == h

    def test_fractional_hive(self):
        h = Hive(2, [0, 1, 2, Fraction(3, 2), 2, 1])
        back = cli.hive_from_json(cli.hive_to_json(h))
        assert back == h
        assert "3/2" in cli.hive_to_json(h)["entries"]

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_honeycomb(self, n):
        h = std(n)
        assert cli.honeycomb_from_json(cli.honeycomb_to_json(h)) == h

    def test_diagram(self):
        m = diagram(std(3))
        assert cli.diagram_from_json(cli.diagram_to_json(m)) == m

    def test_ray_length_is_inf(self):
        data = cli.diagram_to_json(diagram(std(2)))
        assert sum(1 for row in data if row["length"] == "inf") == 6


class TestRender:
    def test_standard_tau2_counts(self, tmp_path):
        path = save(tmp_path, "h.json", cli.honeycomb_to_json(std(2)))
        out = tmp_path / "h.svg"
        code, _, _ = run("render", path, "-o", str(out))
        assert code == 0
        svg = out.read_text()
        assert svg.count("<path") == 9
        assert svg.count("<circle") == 4

    def test_one_path_per_segment(self):
        for n in (2, 3):
            m = diagram(std(n))
            svg = cli.render_svg(m)
            assert svg.count("<path") == len(m.segments)

    def test_diagram_input(self, tmp_path):
        path = save(tmp_path, "d.json", cli.diagram_to_json(diagram(std(2))))
        out = tmp_path / "d.svg"
        assert run("render", path, "-o", str(out))[0] == 0
        assert out.read_text().count("<path") == 9

    def test_multiplicity_labels(self):
        m = diagram(std(2))
        doubled = canonical_diagram(list(m.segments) + list(m.segments))
        svg = cli.render_svg(doubled)
        assert svg.count(">2</text>") == svg.count("<path")
        assert 'stroke-width="3.0"' in svg

    def test_vertex_kind_titles(self):
        svg = cli.render_svg(diagram(std(2)))
        assert svg.count("<title>Y</title>") == 3
        assert svg.count("<title>inverted-Y</title>") == 1

    def test_rays_stay_inside_viewbox(self):
        svg = cli.render_svg(diagram(std(3)), box_margin=2.0)
        x0, y0, w, h = map(float, re.search(
            r'viewBox="([^"]+)"', svg).group(1).split())
        for path in re.finditer(r'd="M (\S+) (\S+) L (\S+) (\S+)"', svg):
            ax, ay, bx, by = map(float, path.groups())
            for x, y in ((ax, ay), (bx, by)):
                assert x0 - 0.1 <= x <= x0 + w + 0.1
                assert y0 - 0.1 <= y <= y0 + h + 0.1

    def test_broken_json_exits_2(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        assert run("render", str(path), "-o", "/dev/null")[0] == 2

    def test_loose_end_exits_5(self, tmp_path):
        path = save(tmp_path, "loose.json",
                    [{"base": ["0", "0", "0"], "direction": "NE",
                      "length": "2", "multiplicity": "1"}])
        code, _, err = run("render", path, "-o", "/dev/null")
        assert code == 5
        assert "malformed diagram" in err


class TestOverlayCli:
    def test_self_overlay(self, tmp_path):
        path = save(tmp_path, "h.json", cli.honeycomb_to_json(std(2)))
        out = tmp_path / "ov.json"
        code, _, _ = run("overlay", path, path, "-o", str(out))
        assert code == 0
        data = json.loads(out.read_text())
        assert data["type"] == [4, 0, 4, 0, 4, 0]
        m = diagram(std(2))
        back = cli.honeycomb_from_json(data)
        assert diagram(back) == canonical_diagram(
            list(m.segments) + list(m.segments))

    def test_missing_file_exits_2(self, tmp_path):
        path = save(tmp_path, "h.json", cli.honeycomb_to_json(std(2)))
        assert run("overlay", path, str(tmp_path / "nope.json"))[0] == 2


class TestPrvCli:
    def test_witness_boundary(self, tmp_path):
        out = tmp_path / "w.json"
        code, _, _ = run("prv", "-n", "2", "--lambda", "2,0", "--mu", "2,1",
                         "--w", "0,1", "--v", "0,1", "-o", str(out))
        assert code == 0
        h = cli.honeycomb_from_json(json.loads(out.read_text()))
        bc = h.boundary_conditions()
        assert (bc.lam, bc.mu, bc.nu) == ((2, 0), (2, 1), (-1, -4))

    def test_nondominant_sum_exits_2(self):
        code, _, _ = run("prv", "-n", "2", "--lambda", "2,0", "--mu", "2,1",
                         "--w", "1,0", "--v", "0,1")
        assert code == 2

    def test_bad_permutation_exits_2(self):
        code, _, _ = run("prv", "-n", "2", "--lambda", "2,0", "--mu", "2,1",
                         "--w", "0,0", "--v", "0,1")
        assert code == 2


class TestSaturateCheck:
    def test_gl2_grid(self):
        code, out, _ = run("saturate-check", "-n", "2", "--max-entry", "2")
        assert code == 0
        assert "scale-invariant" in out

    def test_sampled(self):
        code, out, _ = run("saturate-check", "-n", "4", "--samples", "25",
                           "--N", "3", "--seed", "1")
        assert code == 0
        assert "checked 25 triples" in out

    def test_bad_factor_exits_2(self):
        assert run("saturate-check", "-n", "2", "--N", "0")[0] == 2

    def test_violation_exits_3(self, monkeypatch):
        flips = iter([True, False])
        monkeypatch.setattr(cli, "exists_lattice_hive",
                            lambda t: next(flips))
        code, _, err = run("saturate-check", "-n", "2", "--max-entry", "1")
        assert code == 3
        assert "saturation violated" in err


class TestFindNonintegralVertexCli:
    def test_small_rank_certifies_none(self):
        assert run("find-nonintegral-vertex", "-n", "3") == (0, "none\n", "")

    def test_witness_serialization(self, monkeypatch, tmp_path):
        t = BoundaryTriple((1, 0), (1, 0), (-1, -1))
        h = Hive(2, [0, 1, 2, Fraction(3, 2), 2, 1])
        monkeypatch.setattr(cli, "find_nonintegral_vertex",
                            lambda *a, **kw: (t, h))
        out = tmp_path / "w.json"
        code, _, _ = run("find-nonintegral-vertex", "-n", "2",
                         "-o", str(out))
        assert code == 0
        data = json.loads(out.read_text())
        assert data["boundary"]["lambda"] == ["1", "0"]
        assert "3/2" in data["hive"]["entries"]


class TestSeedPlumbing:
    def test_default_seed_reads_env(self, monkeypatch):
        monkeypatch.delenv("HIVECOMB_SEED", raising=False)
        assert cli.default_seed() == 0
        monkeypatch.setenv("HIVECOMB_SEED", "42")
        assert cli.default_seed() == 42

    def test_negative_weights_parse(self):
        args = cli.build_parser().parse_args(
            ["lr-count", "-n", "3", "--lambda", "2,1,0", "--mu", "2,1,0",
             "--nu", "-1,-2,-3"])
        assert args.nu == "-1,-2,-3"
