import json
import os
import subprocess

import pytest

CLI = os.environ.get("QSHELF_CLI", "qshelf")


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("QSHELF_DEFAULT_ORDER", None)
    if env:
        full_env.update(env)
    proc = subprocess.run(
        [CLI, *args], capture_output=True, text=True, env=full_env
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_series_table_and_json():
    code, out, _ = run("series", "--k", "3", "--shelf", "0", "--i", "1",
                       "--order", "20")
    assert code == 0
    assert out.startswith("1 + ")
    code, out, _ = run("series", "--k", "4", "--ghost", "--j", "2", "--i", "3",
                       "--order", "30", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"valuation", "order", "coeffs"}
    assert doc["valuation"] == 0
    assert doc["coeffs"][0] == "1"


def test_usage_errors_exit_2():
    for args in (
        ("series", "--k", "3", "--i", "7"),
        ("series", "--k", "1", "--i", "1"),
        ("series", "--k", "3", "--i", "2", "--ghost", "--i", "1"),
        ("verify", "nonsense"),
        ("verify", "counts", "--inject-fault", "compare:1:2"),
        ("verify", "counts", "--inject-fault", "typo:1:2:1"),
        ("count", "--k", "3", "--kind", "h", "--J", "1", "--j", "1",
         "--l", "1", "--i", "1"),
        ("hmatrix", "--k", "3"),
        ("dictionary", "--k", "3", "--i", "4"),
        ("series", "--k", "3", "--i", "1", "--format", "yaml"),
    ):
        code, _, _ = run(*args)
        assert code == 2, args


def test_help_exits_0():
    code, out, _ = run("--help")
    assert code == 0
    assert "verify" in out


def test_fault_produces_certificate():
    code, _, err = run("verify", "andrews-bressoud", "--k", "2", "--n-max",
                       "12", "--inject-fault", "compare:1:7:1")
    assert code == 1
    cert = json.loads(err.splitlines()[-1])
    assert cert["exponent"] == 7
    assert cert["suite"] == "andrews-bressoud"
    assert "lhs" in cert and "rhs" in cert


def test_recursion_fault_names_division():
    code, _, err = run("verify", "recursion", "--k", "3", "--j-max", "3",
                       "--order", "24", "--inject-fault",
                       "recursion-ghost:3:0:1")
    assert code == 1
    cert = json.loads(err.splitlines()[-1])
    assert cert["exponent"] == 0
    assert "remainder" in cert["reason"]


def test_clean_suites_exit_0():
    code, out, _ = run("verify", "all", "--k", "3", "--j-max", "2", "--J-max",
                       "1", "--n-max", "10", "--order", "16", "--format",
                       "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert len(doc["reports"]) == 11
    assert all(r["pass"] for r in doc["reports"])


def test_determinism_across_jobs():
    args = ("verify", "all", "--k", "3", "--j-max", "2", "--J-max", "1",
            "--n-max", "10", "--order", "16", "--format", "json")
    a = run(*args, "--jobs", "1")
    b = run(*args, "--jobs", "4")
    assert a == b


def test_env_var_sets_default_order():
    code, out, _ = run("series", "--k", "3", "--i", "1", "--format", "json",
                       env={"QSHELF_DEFAULT_ORDER": "12"})
    assert code == 0
    assert json.loads(out)["order"] == 12
    # explicit flag wins
    code, out, _ = run("series", "--k", "3", "--i", "1", "--order", "8",
                       "--format", "json",
                       env={"QSHELF_DEFAULT_ORDER": "12"})
    assert json.loads(out)["order"] == 8
    code, _, _ = run("series", "--k", "3", "--i", "1",
                     env={"QSHELF_DEFAULT_ORDER": "zebra"})
    assert code == 2


def test_count_csv_and_witness(tmp_path):
    wit = tmp_path / "witness.jsonl"
    code, out, _ = run("count", "--k", "3", "--r", "2", "--n-max", "9",
                       "--format", "csv", "--witness", str(wit))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,r,n,kind,count"
    counts = {}
    for line in lines[1:]:
        k, r, n, kind, count = line.split(",")
        assert (k, r, kind) == ("3", "2", "official")
        counts[int(n)] = int(count)
    streamed = [json.loads(line) for line in wit.read_text().splitlines()]
    by_n = {}
    for parts in streamed:
        assert parts == sorted(parts, reverse=True)
        by_n[sum(parts)] = by_n.get(sum(parts), 0) + 1
    for n in range(10):
        assert by_n.get(n, 0) == counts[n]


def test_eh_csv_rows():
    code, out, _ = run("verify", "eh", "--k", "3", "--j-max", "2", "--format",
                       "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,j,i,kind,strength,f,pass"
    assert all(line.endswith("true") for line in lines[1:])
    kinds = {line.split(",")[3] for line in lines[1:]}
    assert kinds == {"official", "ghost"}


def test_hmatrix_json_shape():
    code, out, _ = run("hmatrix", "--k", "3", "--J", "0", "--j", "2",
                       "--order", "10", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "h"
    assert doc["k"] == 3 and doc["J"] == 0 and doc["j"] == 2
    code, out, _ = run("hmatrix", "--k", "3", "--transfer", "Btilde", "--j",
                       "1", "--order", "8", "--format", "json")
    assert code == 0
    assert json.loads(out)["kind"] == "Btilde"


def test_dictionary_json_sorted():
    code, out, _ = run("dictionary", "--k", "3", "--i", "2", "--order", "12",
                       "--format", "json")
    assert code == 0
    entries = json.loads(out)
    keys = [(e["b"], e["a"]) for e in entries]
    assert keys == sorted(keys)
    code, out, _ = run("dictionary", "--k", "3", "--i", "2", "--specialize",
                       "1", "--order", "12", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "exponent,coefficient"


def test_output_flag_writes_file(tmp_path):
    target = tmp_path / "series.json"
    code, out, _ = run("series", "--k", "2", "--i", "1", "--order", "6",
                       "--format", "json", "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["coeffs"][0] == "1"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
