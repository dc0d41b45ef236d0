import json

import pytest

from partialskew import instances as inst
from partialskew.cli import (
    EXIT_BUDGET, EXIT_FAIL, EXIT_PARSE, EXIT_PASS, Job, main, run_job, run_suite,
)
from partialskew.errors import IllFormed


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_verify_thm26_json(tmp_path, capsys):
    out = tmp_path / "cert.json"
    code = main(["verify", "thm26", "--seed", "3", "--json", str(out)])
    assert code == EXIT_PASS
    cert = json.loads(out.read_text())
    assert cert["pass"] is True and cert["claim"] == "thm26" and cert["seed"] == 3
    assert len(cert["instance_hash"]) == 64
    assert "thm26: PASS" in capsys.readouterr().out


def test_certificate_deterministic():
    a = run_job(Job("prop36", seed=5))[1]
    b = run_job(Job("prop36", seed=5))[1]
    assert a == b


def test_instance_file(tmp_path):
    path = write(tmp_path, "a.json", inst.z2_swap().to_json())
    assert main(["verify", "prop312", "--instance", path, "--field", "f2"]) == EXIT_PASS


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", "thm26", "--instance", str(bad)]) == EXIT_PARSE
    assert main(["verify", "thm26", "--field", "reals"]) == EXIT_PARSE
    assert main(["verify", "cor43"]) == EXIT_PARSE
    # a well-formed file that is not a partial action
    obj = inst.z2_swap().to_json()
    obj["maps"]["1"] = {"1": "1", "2": "1"}
    assert main(["verify", "thm26", "--instance", write(tmp_path, "b.json", obj)]) == EXIT_PARSE


def test_budget_exit():
    assert run_job(Job("thm26", seed=1, cap_bisections=1))[0] == EXIT_BUDGET


def test_fail_exit():
    assert run_job(Job("pgr", group="sym:3"))[0] == EXIT_FAIL


def test_graph_claims(tmp_path):
    g = write(tmp_path, "g.json", inst.example_graph().to_json())
    assert main(["lpa", "--graph", g, "--verify", "cor43"]) == EXIT_PASS
    assert main(["verify", "lemma44", "--graph", g]) == EXIT_PASS
    # the example graph is not star-injective
    assert main(["verify", "cor45", "--graph", g]) == EXIT_FAIL


def test_other_commands(capsys):
    assert main(["oracle", "--group", "zmod:3"]) == EXIT_PASS
    assert main(["pgr", "--group", "z2xz2"]) == EXIT_PASS
    assert main(["ideals", "--seed", "2"]) == EXIT_PASS
    assert capsys.readouterr().out


def test_suite_codes(tmp_path):
    good = {"entries": [{"claim": "exel", "group": "zmod:2"},
                        {"claim": "thm26", "seeds": [0, 1]}]}
    code, rows = run_suite(good)
    assert code == EXIT_PASS and len(rows) == 3
    mixed = {"entries": good["entries"] + [{"claim": "pgr", "group": "sym:3"}]}
    assert run_suite(mixed)[0] == EXIT_FAIL
    budget = {"entries": mixed["entries"] + [{"claim": "thm26", "seed": 1, "cap_bisections": 1}]}
    assert run_suite(budget)[0] == EXIT_BUDGET
    parse = {"entries": budget["entries"] + [{"claim": "thm26", "instance": "missing.json"}]}
    assert run_suite(parse, str(tmp_path))[0] == EXIT_PARSE


def test_suite_manifest_relative(tmp_path):
    write(tmp_path, "act.json", inst.z_shift().to_json())
    m = write(tmp_path, "m.json", {"entries": [{"claim": "lemma33", "instance": "act.json"}]})
    assert main(["suite", m]) == EXIT_PASS


def test_unknown_claim():
    with pytest.raises(IllFormed):
        Job("nonsense")
