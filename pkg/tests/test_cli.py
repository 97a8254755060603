import json

import pytest

from chowtwist import cli


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_cohomology_q8_omega2(capsys):
    code, out = run(capsys, ["cohomology", "--group", "Q8",
                             "--module", "omega2Z", "--degree", "2"])
    assert code == 0
    assert "Z/8" in out


def test_cohomology_klein_trivial_f2(capsys):
    code, out = run(capsys, ["cohomology", "--group", "klein4",
                             "--module", "trivialF2", "--degree", "5"])
    assert code == 0
    assert "dim 6" in out


def test_cohomology_trivial_group(capsys):
    code, out = run(capsys, ["cohomology", "--group", "C1",
                             "--module", "trivialZ", "--degree", "3"])
    assert code == 0
    assert "0" in out


def test_tate_negative_range(capsys):
    code, out = run(capsys, ["tate", "--group", "C4",
                             "--module", "trivialZ", "--degree=-2..2"])
    assert code == 0
    lines = [l for l in out.strip().splitlines() if l and not l.startswith("degree")]
    assert len(lines) == 5


def test_twisted_chow_klein_omega(capsys):
    code, out = run(capsys, ["twisted-chow", "--group", "klein4",
                             "--module", "omega:-4", "--degree", "1"])
    assert code == 0
    assert "dim 7" in out


def test_twisted_chow_cyclic_trivial(capsys):
    code, out = run(capsys, ["twisted-chow", "--group", "C6",
                             "--module", "trivialZ", "--degree", "2"])
    assert code == 0
    assert "Z/6" in out


def test_twisted_chow_show_exponent(capsys):
    code, out = run(capsys, ["twisted-chow", "--group", "Q8", "--module",
                             "omega2Z", "--degree", "1", "--show-exponent"])
    assert code == 0
    assert "exponent | 4" in out


def test_twisted_chow_with_oracle_json(capsys):
    code, out = run(capsys, ["twisted-chow", "--group", "C4", "--module",
                             "sign", "--degree", "1..2", "--oracle",
                             "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["group"] == "C4"
    for entry in data["results"]:
        assert entry["oracle"] == entry["value"]


def test_json_deterministic(capsys):
    argv = ["cohomology", "--group", "klein4", "--module", "omega:-2",
            "--degree", "0..3", "--format", "json"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second


def test_twisted_motivic(capsys):
    code, out = run(capsys, ["twisted-motivic", "--group", "klein4",
                             "--module", "omega:-2", "--degree", "1"])
    assert code == 0
    # motivic 2m+2 = 6 next to chow m+3 = 5 at m = 2
    assert "6" in out and "5" in out


def test_coflasque_predicate_and_resolve(capsys):
    code, out = run(capsys, ["coflasque", "--group", "C4", "--module", "sign"])
    assert code == 0
    assert "False" in out or "no" in out.lower()
    code, out = run(capsys, ["coflasque", "--group", "C4", "--module", "sign",
                             "--resolve"])
    assert code == 0


def test_graded_command(capsys):
    code, out = run(capsys, ["graded", "--group", "klein4",
                             "--module", "omega:-3"])
    assert code == 0
    assert "regularity" in out.lower()


def test_verify_regularity(capsys):
    code, out = run(capsys, ["verify", "regularity", "--m", "2..3"])
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_alias(capsys):
    code, out = run(capsys, ["verify-paper", "coflasque", "--m", "2"])
    assert code == 0
    assert "PASS" in out


def test_parse_error_exit_2(capsys):
    assert cli.main(["twisted-chow", "--group", "C4",
                     "--module", "nonsense", "--degree", "1"]) == cli.EXIT_PARSE
    assert cli.main(["cohomology", "--group", "/does/not/exist.json",
                     "--module", "trivialZ", "--degree", "1"]) == cli.EXIT_PARSE
    assert cli.main(["cohomology", "--group", "C4", "--module", "trivialZ",
                     "--degree", "2..1"]) == cli.EXIT_PARSE


def test_resource_cap_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("CHOWTWIST_MAX_CELLS", "50")
    code = cli.main(["cohomology", "--group", "C6", "--module", "regular",
                     "--degree", "3"])
    out = capsys.readouterr().out + capsys.readouterr().err
    assert code == cli.EXIT_CAP


def test_unsupported_family_exit_4(tmp_path, capsys):
    import itertools

    from chowtwist.groups import FiniteGroup
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    S3 = FiniteGroup(table, name="S3")
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(S3.to_json()))
    code = cli.main(["twisted-chow", "--group", str(path),
                     "--module", "trivialZ", "--degree", "1"])
    assert code == cli.EXIT_FAMILY


def test_module_from_json_file(tmp_path, capsys):
    from chowtwist import gmodules as gm
    from chowtwist.groups import make_cyclic
    G = make_cyclic(4)
    path = tmp_path / "triv.json"
    path.write_text(json.dumps(gm.make_trivial(G).to_json()))
    code, out = run(capsys, ["twisted-chow", "--group", "C4",
                             "--module", str(path), "--degree", "1"])
    assert code == 0
    assert "Z/4" in out


def test_max_degree_flag(capsys):
    code = cli.main(["twisted-chow", "--group", "C4", "--module", "trivialZ",
                     "--degree", "5"])
    assert code == cli.EXIT_PARSE  # beyond the default --max-degree 3
    code2, out = run(capsys, ["twisted-chow", "--group", "C4", "--module",
                              "trivialZ", "--degree", "5", "--max-degree", "6"])
    assert code2 == 0
