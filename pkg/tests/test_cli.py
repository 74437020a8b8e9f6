"""End-to-end command-line tests against stored golden bytes.

Every golden case is run twice and compared byte-for-byte, both against
the stored file and against its own rerun, so output determinism is part
of the contract.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("residues_anchored_pair.out.json", ["residues", "anchored_pair.json"]),
    (
        "summable_anchored_pair.out.json",
        ["summable", "anchored_pair.json", "--certify", "--oracle"],
    ),
    ("reduce_anchored_pair.out.json", ["reduce", "anchored_pair.json"]),
    ("reduce_spread.out.txt", ["reduce", "spread.json", "--format", "text"]),
    ("summable_ell_diff.out.json", ["summable", "ell_diff.json", "--certify"]),
    ("residues_qdiff.out.json", ["residues", "qdiff.json"]),
    ("summable_qdiff.out.json", ["summable", "qdiff.json", "--certify"]),
    ("residues_shift_blocked.out.json", ["residues", "shift_blocked.json"]),
    ("summable_shift_diff.out.json", ["summable", "shift_diff.json", "--certify"]),
    ("diffdep_divisors.out.json", ["diffdep", "divisors.json"]),
    ("ledger_ledger.out.json", ["ledger", "ledger.json"]),
    ("ledger_ledger.out.txt", ["ledger", "ledger.json", "--format", "text"]),
]


def run_cli(args, env_extra=None, stdin=None, cwd=GOLDEN):
    env = dict(os.environ)
    env.pop("SUMMA_MAX_TERMS", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "summa", *args],
        capture_output=True,
        env=env,
        cwd=cwd,
        input=stdin,
    )


@pytest.mark.parametrize("expected,args", CASES, ids=[c[0] for c in CASES])
def test_golden_output(expected, args):
    first = run_cli(args)
    assert first.returncode == 0, first.stderr.decode()
    assert first.stderr == b""
    second = run_cli(args)
    assert first.stdout == second.stdout
    assert first.stdout == (GOLDEN / expected).read_bytes()


@pytest.mark.parametrize(
    "expected,args",
    [c for c in CASES if c[0].endswith(".json")],
    ids=[c[0] for c in CASES if c[0].endswith(".json")],
)
def test_json_outputs_parse(expected, args):
    doc = json.loads((GOLDEN / expected).read_bytes())
    assert isinstance(doc, dict)


def test_reads_stdin_with_dash():
    blob = (GOLDEN / "anchored_pair.json").read_bytes()
    out = run_cli(["residues", "-"], stdin=blob)
    assert out.returncode == 0
    assert out.stdout == (GOLDEN / "residues_anchored_pair.out.json").read_bytes()


# ----------------------------------------------------------------------
# failure modes and exit codes


def test_invalid_json_is_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("this is not json")
    out = run_cli(["residues", str(bad)])
    assert out.returncode == 2
    assert b"invalid JSON" in out.stderr
    assert out.stdout == b""


def test_missing_file_is_exit_2():
    out = run_cli(["residues", "no_such_file.json"])
    assert out.returncode == 2


def test_kind_command_mismatch_is_exit_2():
    out = run_cli(["diffdep", "anchored_pair.json"])
    assert out.returncode == 2
    assert b"accepts kinds" in out.stderr


def test_unknown_kind_is_exit_2(tmp_path):
    doc = tmp_path / "odd.json"
    doc.write_text(json.dumps({"kind": "surprise", "payload": {}}))
    out = run_cli(["residues", str(doc)])
    assert out.returncode == 2


def test_unbalanced_residues_is_exit_3(tmp_path):
    doc = tmp_path / "unbalanced.json"
    doc.write_text(
        json.dumps(
            {
                "kind": "elliptic",
                "payload": {
                    "terms": [{"orbit": "A", "n": 0, "j": 1, "c": {"1": "1"}}]
                },
            }
        )
    )
    out = run_cli(["residues", str(doc)])
    assert out.returncode == 3
    assert b"order-1" in out.stderr


def test_inadmissible_ledger_is_exit_3(tmp_path):
    doc = tmp_path / "inadm.json"
    doc.write_text(
        json.dumps(
            {
                "kind": "ledger",
                "payload": {
                    "entries": [{"orbit": "A", "m": 0, "j": 1, "t": "1"}]
                },
            }
        )
    )
    out = run_cli(["ledger", str(doc)])
    assert out.returncode == 3


def test_degenerate_q_is_exit_3(tmp_path):
    doc = tmp_path / "badq.json"
    doc.write_text(
        json.dumps(
            {
                "kind": "rational-q",
                "payload": {"mode": "q", "q": "1", "laurent": [], "principal": []},
            }
        )
    )
    out = run_cli(["summable", str(doc)])
    assert out.returncode == 3


def test_negative_degree_in_shift_mode_is_exit_2(tmp_path):
    doc = tmp_path / "neg.json"
    doc.write_text(
        json.dumps(
            {
                "kind": "rational-shift",
                "payload": {
                    "mode": "shift",
                    "laurent": [{"k": -1, "a": "1"}],
                    "principal": [],
                },
            }
        )
    )
    out = run_cli(["residues", str(doc)])
    assert out.returncode == 2


def test_oracle_flag_needs_elliptic_input():
    out = run_cli(["summable", "qdiff.json", "--oracle"])
    assert out.returncode == 2
    assert b"elliptic" in out.stderr


def test_term_cap_from_environment():
    out = run_cli(
        ["residues", "spread.json"], env_extra={"SUMMA_MAX_TERMS": "2"}
    )
    assert out.returncode == 2
    assert b"SUMMA_MAX_TERMS" in out.stderr
    ok = run_cli(["residues", "spread.json"], env_extra={"SUMMA_MAX_TERMS": "3"})
    assert ok.returncode == 0
