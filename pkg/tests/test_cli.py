import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from hashnoise.cli import main


def schema(name):
    return json.loads(resources.files("hashnoise").joinpath(f"schemas/{name}").read_text())


def run(*argv):
    return subprocess.run([sys.executable, "-m", "hashnoise", *argv], capture_output=True, text=True)


def test_render_example(tmp_path):
    out = tmp_path / "a.pgm"
    assert main(["render", "--mode", "noise", "--hash", "partial-fnv1", "--dim", "2",
                 "--size", "256x256", "--out", str(out)]) == 0
    assert out.read_bytes().startswith(b"P5\n256 256\n255\n")
    assert len(out.read_bytes()) == 15 + 256 * 256


def test_render_clouds_3d(tmp_path, capsys):
    out = tmp_path / "c.ppm"
    assert main(["render", "--mode", "clouds", "--hash", "murmur", "--dim", "3",
                 "--size", "16x8", "--workers", "3", "--out", str(out)]) == 0
    assert out.read_bytes().startswith(b"P6\n16 8\n255\n")
    assert capsys.readouterr().out.startswith(str(out))


def test_render_bad_hash_exits_nonzero(tmp_path):
    r = run("render", "--hash", "bogus", "--out", str(tmp_path / "x.pgm"))
    assert r.returncode != 0
    assert "bogus" in r.stderr


def test_render_unwritable_path(tmp_path, capsys):
    bad = tmp_path / "nope" / "x.pgm"
    assert main(["render", "--size", "2x2", "--out", str(bad)]) == 1
    assert str(bad) in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["render", "--size", "0x4", "--out", "x.pgm"],
    ["render", "--size", "big", "--out", "x.pgm"],
    ["render", "--hash", "table", "--period", "512", "--out", "x.pgm"],
    ["stats", "--bins", "4"],
    ["stats", "--samples", "0"],
    ["bench", "--reps", "2", "--size", "4x4"],
    ["shadergen", "--hash", "murmur", "--dim", "2"],
])
def test_bad_arguments_exit_nonzero(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code != 0


def test_stats_json_is_stable(capsys):
    argv = ["stats", "--hash", "jenkins", "--dim", "3", "--samples", "20000", "--trials", "500", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    jsonschema.validate(json.loads(first), schema("stats.schema.json"))


def test_stats_table_has_no_avalanche(capsys):
    main(["stats", "--hash", "table", "--samples", "1000", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["meanFlippedBits"] is None and doc["period"] == 256


def test_stats_text(capsys):
    main(["stats", "--hash", "murmur", "--samples", "1000", "--bins", "5", "--trials", "100"])
    out = capsys.readouterr().out
    assert "variant=murmur" in out and "bins=" in out


def test_stats_murmur_seed_42_mean(capsys):
    main(["stats", "--hash", "murmur", "--dim", "2", "--samples", "1000000", "--seed", "42", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["mean"]) <= 0.01
    assert doc["n"] == 1_000_000 and sum(doc["bins"]) == 1_000_000


def test_bench_json(capsys):
    assert main(["bench", "--dim", "2", "--size", "32x24", "--reps", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, schema("bench.schema.json"))
    assert [r["variant"] for r in doc["results"]] == [
        "fnv1", "partial-fnv1", "jenkins", "partial-jenkins", "murmur", "table"]
    assert all(len(r["secondsPerRep"]) == 3 for r in doc["results"])


def test_bench_table(capsys):
    main(["bench", "--dim", "3", "--size", "8x8", "--reps", "3"])
    out = capsys.readouterr().out
    for label in ("FNV1", "PartialJenkins", "Float"):
        assert label in out


def test_shadergen_stdout_and_file(tmp_path, capsys):
    main(["shadergen", "--hash", "murmur"])
    text = capsys.readouterr().out
    assert "1540483477" in text
    out = tmp_path / "m.glsl"
    main(["shadergen", "--hash", "murmur", "--out", str(out)])
    assert out.read_text() == text


def test_shadergen_rejects_table():
    assert run("shadergen", "--hash", "table").returncode != 0


def test_figures(tmp_path, capsys):
    assert main(["figures", "--outdir", str(tmp_path), "--size", "8x8", "--with-table"]) == 0
    assert len(list(tmp_path.iterdir())) == 18
    assert capsys.readouterr().out.splitlines()[-1].startswith("18 images")


def test_module_entry_point():
    r = run("--help")
    assert r.returncode == 0
    for cmd in ("render", "stats", "bench", "shadergen", "figures"):
        assert cmd in r.stdout
