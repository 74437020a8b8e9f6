"""Command-line front end.

Problem files are JSON documents::

    {"kind": "<kind>", "payload": {...}, "metadata": {...}?}

with kinds ``elliptic``, ``rational-shift``, ``rational-q``,
``divisors`` and ``ledger``.  Subcommands accept the kinds they can act
on and reject everything else as a schema error.

Exit codes: 0 success, 2 malformed input (JSON, schema, size cap,
kind/command mismatch), 3 precondition violation (non-elliptic table,
bad divisor degree, inadmissible ledger, bad q).  Results go to stdout,
diagnostics to stderr.  Output is deterministic byte-for-byte for a
given input: every table is emitted in sorted order.

The environment variable SUMMA_MAX_TERMS (default 10000) caps the number
of terms/entries accepted from one file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import algledger, logdiff, ratres
from .errors import PreconditionError, SchemaError
from .reduce import is_summable, oracle_summable, reduce as reduce_table
from .ratres import RatPF
from .scalars import SymScalar, rat_from_str, rat_to_str
from .zexp import ZetaExpansion

KINDS = ("elliptic", "rational-shift", "rational-q", "divisors", "ledger")

DEFAULT_MAX_TERMS = 10000


# ----------------------------------------------------------------------
# input handling


def _max_terms() -> int:
    raw = os.environ.get("SUMMA_MAX_TERMS")
    if raw is None:
        return DEFAULT_MAX_TERMS
    try:
        value = int(raw)
    except ValueError:
        raise SchemaError(f"SUMMA_MAX_TERMS must be an integer, got {raw!r}")
    if value < 1:
        raise SchemaError("SUMMA_MAX_TERMS must be positive")
    return value


def _load_problem(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {path}: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}")
    if not isinstance(doc, dict):
        raise SchemaError("problem file must be a JSON object")
    extra = set(doc) - {"kind", "payload", "metadata"}
    if extra:
        raise SchemaError(f"unexpected top-level keys: {sorted(extra)}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"kind must be one of {', '.join(KINDS)}; got {kind!r}")
    payload = doc.get("payload")
    if not isinstance(payload, dict):
        raise SchemaError("payload must be an object")
    if "metadata" in doc and not isinstance(doc["metadata"], dict):
        raise SchemaError("metadata must be an object when present")
    _check_size(kind, payload)
    return kind, payload


def _check_size(kind: str, payload: dict) -> None:
    def _len(value) -> int:
        return len(value) if isinstance(value, list) else 0

    if kind == "elliptic":
        count = _len(payload.get("terms"))
    elif kind in ("rational-shift", "rational-q"):
        count = _len(payload.get("laurent")) + _len(payload.get("principal"))
    elif kind == "divisors":
        raw = payload.get("divisors")
        count = 0
        if isinstance(raw, list):
            for d in raw:
                count += _len(d.get("points")) if isinstance(d, dict) else 0
    else:
        count = _len(payload.get("entries"))
    cap = _max_terms()
    if count > cap:
        raise SchemaError(f"input has {count} terms, exceeding SUMMA_MAX_TERMS={cap}")


def _require_kind(kind: str, allowed: tuple[str, ...], command: str) -> None:
    if kind not in allowed:
        raise SchemaError(
            f"command '{command}' accepts kinds {', '.join(allowed)}; got '{kind}'"
        )


def _parse_rational(kind: str, payload: dict) -> tuple[RatPF, Fraction | None]:
    mode = payload.get("mode")
    expected = "shift" if kind == "rational-shift" else "q"
    if mode != expected:
        raise SchemaError(f"kind {kind} requires mode '{expected}', got {mode!r}")
    f = RatPF.from_json(payload)
    if kind == "rational-shift":
        if any(k < 0 for k in f.laurent):
            raise SchemaError("shift mode: laurent degrees must be >= 0")
        return f, None
    if "q" not in payload:
        raise SchemaError("rational-q payload needs a 'q' value")
    q = rat_from_str(payload["q"]) if isinstance(payload["q"], str) else payload["q"]
    if not isinstance(q, Fraction):
        raise SchemaError("'q' must be a rational string")
    if any(pole == 0 for pole in f.poles()):
        raise SchemaError("q mode: the pole at 0 belongs in the laurent part")
    if q == 0 or abs(q) == 1:
        raise PreconditionError("q must be nonzero with |q| != 1")
    return f, q


# ----------------------------------------------------------------------
# result assembly


def _scalar_doc(s: SymScalar) -> dict:
    return s.to_json()


def _ores_doc(table) -> dict:
    return {
        f"{orbit}:{j}": _scalar_doc(value)
        for (orbit, j), value in sorted(table.items())
    }


def _rat_table_doc(table) -> dict:
    return {
        f"{rat_to_str(base)}:{j}": rat_to_str(value)
        for (base, j), value in sorted(table.items())
    }


def cmd_residues(kind: str, payload: dict, args) -> dict:
    _require_kind(kind, ("elliptic", "rational-shift", "rational-q"), "residues")
    if kind == "elliptic":
        f = ZetaExpansion.from_json(payload)
        return {
            "ores": _ores_doc(f.ores_table()),
            "pano0": _scalar_doc(f.pano0()),
            "pano1": _scalar_doc(f.pano1()),
        }
    f, q = _parse_rational(kind, payload)
    if kind == "rational-shift":
        return {"dres": _rat_table_doc(ratres.shift_orbit_table(f))}
    return {
        "qres": _rat_table_doc(ratres.q_orbit_table(f, q)),
        "qres_inf": rat_to_str(ratres.qres_inf(f)),
    }


def cmd_summable(kind: str, payload: dict, args) -> dict:
    _require_kind(kind, ("elliptic", "rational-shift", "rational-q"), "summable")
    if args.oracle and kind != "elliptic":
        raise SchemaError("--oracle applies to elliptic inputs only")
    doc: dict = {}
    if kind == "elliptic":
        f = ZetaExpansion.from_json(payload)
        verdict = is_summable(f)
        doc["summable"] = verdict
        if args.certify:
            witness = reduce_table(f).witness if verdict else None
            doc["witness"] = witness.to_json() if witness is not None else None
        if args.oracle:
            agrees = oracle_summable(f)
            doc["oracle"] = {"summable": agrees, "agrees": agrees == verdict}
        return doc
    f, q = _parse_rational(kind, payload)
    if kind == "rational-shift":
        verdict = ratres.shift_summable(f)
        witness = ratres.shift_certificate(f) if args.certify and verdict else None
    else:
        verdict = ratres.q_summable(f, q)
        witness = ratres.q_certificate(f, q) if args.certify and verdict else None
    doc["summable"] = verdict
    if args.certify:
        doc["witness"] = witness.to_json() if witness is not None else None
    return doc


def cmd_reduce(kind: str, payload: dict, args) -> dict:
    _require_kind(kind, ("elliptic",), "reduce")
    f = ZetaExpansion.from_json(payload)
    report = reduce_table(f)
    return {
        "canonical": report.canonical.to_json(),
        "witness": report.witness.to_json(),
        "summable": report.summable,
        "ores": _ores_doc(report.ores),
        "pano0": _scalar_doc(report.pano0),
        "pano1": _scalar_doc(report.pano1),
    }


def cmd_diffdep(kind: str, payload: dict, args) -> dict:
    _require_kind(kind, ("divisors",), "diffdep")
    raw = payload.get("divisors")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("payload needs a nonempty 'divisors' list")
    divisors = [logdiff.DivisorData.from_json(d) for d in raw]
    matrix = logdiff.residue_matrix(divisors)
    dependence = logdiff.diffdep(divisors)
    return {
        "dependence": dependence,
        "orbits": matrix.orbits,
        "matrix": matrix.rows,
    }


def cmd_ledger(kind: str, payload: dict, args) -> dict:
    _require_kind(kind, ("ledger",), "ledger")
    table = algledger.ResidueTable.from_json(payload)
    report = algledger.ledger_reduce(table)
    return {
        "ftilde": report.ftilde.to_json(),
        "fbar": report.fbar.to_json(),
        "pano0": _scalar_doc(report.pano0),
        "pano1": _scalar_doc(report.pano1),
    }


HANDLERS = {
    "residues": cmd_residues,
    "summable": cmd_summable,
    "reduce": cmd_reduce,
    "diffdep": cmd_diffdep,
    "ledger": cmd_ledger,
}


# ----------------------------------------------------------------------
# text rendering


def _scalar_text(obj) -> str:
    return repr(SymScalar.from_json(obj))


def _zexp_lines(label: str, obj) -> list[str]:
    lines = [f"{label}.constant = {_scalar_text(obj['constant'])}"]
    for t in obj["terms"]:
        lines.append(f"{label}[{t['orbit']},{t['n']},{t['j']}] = {_scalar_text(t['c'])}")
    return lines


def _ratpf_lines(label: str, obj) -> list[str]:
    lines = []
    for entry in obj["laurent"]:
        lines.append(f"{label}.x^{entry['k']} = {entry['a']}")
    for entry in obj["principal"]:
        lines.append(f"{label}[{entry['pole']};{entry['j']}] = {entry['c']}")
    return lines or [f"{label} = 0"]


def _table_lines(name: str, table: dict) -> list[str]:
    if not table:
        return [f"{name}: (none)"]
    out = []
    for key, value in table.items():
        text = _scalar_text(value) if isinstance(value, dict) else value
        out.append(f"{name}[{key}] = {text}")
    return out


def render_text(command: str, doc: dict) -> str:
    lines: list[str] = []
    if command == "residues":
        for name in ("ores", "dres", "qres"):
            if name in doc:
                lines += _table_lines(name, doc[name])
        for name in ("pano0", "pano1"):
            if name in doc:
                lines.append(f"{name} = {_scalar_text(doc[name])}")
        if "qres_inf" in doc:
            lines.append(f"qres_inf = {doc['qres_inf']}")
    elif command == "summable":
        lines.append("summable: " + ("yes" if doc["summable"] else "no"))
        if "witness" in doc:
            if doc["witness"] is None:
                lines.append("witness: (none)")
            elif "terms" in doc["witness"]:
                lines += _zexp_lines("witness", doc["witness"])
            else:
                lines += _ratpf_lines("witness", doc["witness"])
        if "oracle" in doc:
            lines.append(
                "oracle: "
                + ("yes" if doc["oracle"]["summable"] else "no")
                + (" (agrees)" if doc["oracle"]["agrees"] else " (DISAGREES)")
            )
    elif command == "reduce":
        lines.append("summable: " + ("yes" if doc["summable"] else "no"))
        lines += _zexp_lines("canonical", doc["canonical"])
        lines += _zexp_lines("witness", doc["witness"])
        lines += _table_lines("ores", doc["ores"])
        lines.append(f"pano0 = {_scalar_text(doc['pano0'])}")
        lines.append(f"pano1 = {_scalar_text(doc['pano1'])}")
    elif command == "diffdep":
        dep = doc["dependence"]
        lines.append(
            "dependence: " + (" ".join(str(v) for v in dep) if dep else "none")
        )
        lines.append("orbits: " + (" ".join(doc["orbits"]) or "(none)"))
        for orbit, row in zip(doc["orbits"], doc["matrix"]):
            lines.append(f"row[{orbit}] = " + " ".join(str(v) for v in row))
    elif command == "ledger":
        lines += _zexp_lines("ftilde", doc["ftilde"])
        lines += _zexp_lines("fbar", doc["fbar"])
        lines.append(f"pano0 = {_scalar_text(doc['pano0'])}")
        lines.append(f"pano1 = {_scalar_text(doc['pano1'])}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="summa",
        description="Residue obstructions and certificates for difference equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    command_help = {
        "residues": "orbit and panorbital residue tables of the input",
        "summable": "decide whether the input is a difference tau(g) - g",
        "reduce": "canonical form, witness and obstructions of an elliptic table",
        "diffdep": "integer dependence among divisor residue columns",
        "ledger": "symbolic anchored reduction of a residue table",
    }
    for name, help_text in command_help.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="problem file (JSON), or - for stdin")
        p.add_argument(
            "--format",
            choices=("json", "text"),
            default="json",
            help="output format (default json)",
        )
        if name == "summable":
            p.add_argument(
                "--certify",
                action="store_true",
                help="include a witness g with tau(g) - g = input when summable",
            )
            p.add_argument(
                "--oracle",
                action="store_true",
                help="cross-check with the prefix-sum solver (elliptic only)",
            )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        kind, payload = _load_problem(args.file)
        doc = HANDLERS[args.command](kind, payload, args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(args.command, doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
