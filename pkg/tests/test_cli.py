import io
import subprocess
import sys

import pytest

from vrbarcode.cli import format_value, main
from vrbarcode.datasets import random_pseudometric

from conftest import RECTANGLE_TEXT


@pytest.fixture
def rect_file(tmp_path):
    path = tmp_path / "rect.txt"
    path.write_text(RECTANGLE_TEXT + "\n")
    return str(path)


def run_cli(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_text_output(capsys, rect_file):
    code, out, _ = run_cli(capsys, rect_file)
    assert code == 0
    assert out.splitlines() == [
        "distance matrix with 4 points, using threshold 5",
        "persistence intervals in dim 0:",
        " [0,3)",
        " [0,3)",
        " [0,4)",
        " [0, )",
        "persistence intervals in dim 1:",
        " [4,5)",
    ]


def test_explicit_run_and_stdin(capsys, monkeypatch, rect_file):
    _, expected, _ = run_cli(capsys, rect_file)
    monkeypatch.setattr(sys, "stdin", io.StringIO(RECTANGLE_TEXT))
    code, out, _ = run_cli(capsys, "run")
    assert code == 0 and out == expected


def test_csv_output(capsys, rect_file):
    code, out, _ = run_cli(capsys, rect_file, "--output", "csv")
    assert code == 0
    assert out.splitlines() == ["dim,birth,death", "0,0,3", "0,0,3", "0,0,4", "0,0,", "1,4,5"]


def test_csv_and_text_agree(capsys, tmp_path):
    path = tmp_path / "points.txt"
    path.write_text(" ".join(map(repr, random_pseudometric(9, 3).distances.tolist())))
    _, text, _ = run_cli(capsys, str(path), "--dim", "2")
    _, table, _ = run_cli(capsys, str(path), "--dim", "2", "--output", "csv")
    from_text, dim = [], None
    for line in text.splitlines()[1:]:
        if line.startswith("persistence"):
            dim = line.split()[-1].rstrip(":")
        else:
            b, d = line.strip()[1:-1].split(",")
            from_text.append((dim, b, d.strip()))
    from_csv = [tuple(row.split(",")) for row in table.splitlines()[1:]]
    assert sorted(from_text) == sorted(from_csv)


def test_output_is_deterministic(capsys, rect_file):
    outs = {run_cli(capsys, rect_file, "--dim", "2", "--modulus", "3")[1] for _ in range(3)}
    assert len(outs) == 1


def test_stats(capsys, rect_file):
    code, out, _ = run_cli(capsys, rect_file, "--stats")
    lines = out.splitlines()
    assert code == 0
    assert lines[lines.index("pair statistics by birth dimension:") + 1].split() == [
        "dim", "total", "zero", "shortcut", "apparent", "emergent",
    ]
    assert "  1          3         2         2         2         2" in lines
    assert lines[-1].startswith("wall-clock time:")
    code, out, err = run_cli(capsys, rect_file, "--stats", "--output", "csv")
    assert "wall-clock" not in out and "wall-clock" in err


def test_bad_modulus(capsys, rect_file):
    code, _, err = run_cli(capsys, rect_file, "--modulus", "4")
    assert code == 1 and "modulus must be prime" in err
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize(
    "args",
    [
        ["--dim", "-1"],
        ["--threshold", "-2"],
        ["--threshold", "abc"],
        ["--format", "nope"],
        ["--bogus"],
    ],
)
def test_usage_errors(capsys, rect_file, args):
    code, _, err = run_cli(capsys, rect_file, *args)
    assert code == 1 and err.strip()


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2")
    assert run_cli(capsys, str(bad))[0] == 1
    assert run_cli(capsys, str(tmp_path / "missing.txt"))[0] == 1
    bad.write_text("0 1\n2 0")
    code, _, err = run_cli(capsys, str(bad), "--format", "full-distance")
    assert code == 1 and "symmetric" in err


def test_empty_input(capsys, tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    code, out, _ = run_cli(capsys, str(path))
    assert code == 0
    assert out.splitlines()[:3] == [
        "distance matrix with 1 points, using threshold 0",
        "persistence intervals in dim 0:",
        " [0, )",
    ]


def test_explicit_threshold_and_formats(capsys, tmp_path):
    path = tmp_path / "pts.txt"
    path.write_text("0 0\n3 0\n0 4\n3 4\n")
    code, out, _ = run_cli(capsys, str(path), "--format", "point-cloud", "--threshold", "4.5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "distance matrix with 4 points, using threshold 4.5"
    assert lines[-1] == " [4, )"


def test_verify(capsys, rect_file, tmp_path):
    code, out, _ = run_cli(capsys, "verify", rect_file)
    assert code == 0 and out.startswith("barcodes match")
    path = tmp_path / "seven.txt"
    path.write_text(" ".join(map(repr, random_pseudometric(7, 42).distances.tolist())))
    assert run_cli(capsys, "verify", str(path), "--dim", "2", "--modulus", "3")[0] == 0


def test_verify_negative_control(capsys, rect_file):
    code, out, _ = run_cli(capsys, "verify", rect_file, "--corrupt-interval")
    assert code == 2 and out.startswith("mismatch: dim 0:")


def test_verify_cap(capsys, rect_file):
    code, _, err = run_cli(capsys, "verify", rect_file, "--cap", "10")
    assert code == 1 and "cap" in err


def test_format_value():
    assert format_value(3.0) == "3"
    assert format_value(0.1) == "0.1"
    assert format_value(1e20) == "1e+20"
    assert format_value(float("inf")) == "inf"
    assert float(format_value(2 / 3)) == 2 / 3


def test_module_entry_point(rect_file):
    proc = subprocess.run(
        [sys.executable, "-m", "vrbarcode", rect_file, "--output", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.endswith("1,4,5\n")
