import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

import cli_cases
from corpus import crossed_modules, distinct_gamma_groups
from eqcross import cli, formats
from eqcross.formats import ExtensionQuery, canonicalize, emit, parse_instance

INSTANCES = sorted(p for p in (cli_cases.ROOT / "instances").glob("*.json") if not p.name.startswith("bad-"))


@pytest.fixture(autouse=True)
def _repo_cwd(monkeypatch):
    monkeypatch.chdir(cli_cases.ROOT)


@pytest.mark.parametrize("name", sorted(cli_cases.CASES))
def test_golden(name):
    expected = (cli_cases.GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    assert cli_cases.render(cli_cases.CASES[name]) == expected


def test_every_golden_has_a_case():
    assert {p.stem for p in cli_cases.GOLDEN.glob("*.txt")} == set(cli_cases.CASES)


@pytest.mark.parametrize("path", INSTANCES, ids=lambda p: p.stem)
def test_instances_are_canonical(path):
    text = path.read_text(encoding="utf-8")
    assert canonicalize(text) == text


def test_canonicalize_normalizes_whitespace():
    text = (cli_cases.ROOT / "instances" / "conj-z3.json").read_text()
    squashed = " ".join(text.split())
    assert canonicalize(squashed) == text


def test_duplicate_key_is_parse_error():
    with pytest.raises(formats.ParseError):
        parse_instance('{"kind": "group", "order": 1, "order": 1, "mul": [[0]]}')


def test_semantic_error_carries_report():
    with pytest.raises(formats.SemanticError) as info:
        parse_instance('{"kind": "group", "order": 2, "mul": [[0, 1], [1, 1]]}')
    assert not info.value.report.ok


_MODULES = [m for _, m in crossed_modules(6)]
_GAMMA_GROUPS = distinct_gamma_groups()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_MODULES))
def test_emit_parse_identity_crossed(m):
    text = emit(m)
    again = parse_instance(text)
    assert emit(again) == text
    assert again.d.map == m.d.map and again.theta == m.theta
    assert again.B.action.act == m.B.action.act and again.D.action.act == m.D.action.act


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(_GAMMA_GROUPS))
def test_emit_parse_identity_gamma_group(g):
    again = parse_instance(emit(g))
    assert again.group.mul == g.group.mul and again.action.act == g.action.act
    assert again.gamma.mul == g.gamma.mul


def test_emit_parse_identity_query():
    q = parse_instance((cli_cases.ROOT / "instances" / "swap-query.json").read_text())
    assert isinstance(q, ExtensionQuery)
    back = parse_instance(emit(q))
    assert back.psi == q.psi and back.Q.action.act == q.Q.action.act


def test_obstruction_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(cli, "obstruction_vanishes", lambda *a, **k: False)
    code = cli.run_command(["obstruction", "instances/s3-query.json"])
    assert code == 1
    assert "does not vanish" in capsys.readouterr().out


def test_help_exits_zero(capsys):
    assert cli.run_command(["--help"]) == 0
    assert "oracle-check" in capsys.readouterr().out


def test_unknown_subcommand_is_usage_error(capsys):
    assert cli.run_command(["frobnicate"]) == 2


def test_console_entry_point():
    env = dict(os.environ, PYTHONPATH=str(cli_cases.ROOT / "src"))
    res = subprocess.run([sys.executable, "-m", "eqcross.cli", "validate", "instances/z3.json"],
                         cwd=cli_cases.ROOT, env=env, capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "group: VALID\n"
