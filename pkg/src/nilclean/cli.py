"""Command line front end.

Subcommands:
  decompose  read a matrix (gf2 / mod2k / bool / group format), print its
             nil-clean certificate
  verify     check a certificate against a matrix: PASS (0) or FAIL (1)
  rcf        rational canonical form of a gf2 matrix: transform + factors
  strong     commuting decomposition of a gf2 matrix, or its witness (1)
  group      nil-clean verdicts for End(G) of a finite abelian group
  oracle     brute-force checks at tiny sizes

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 bad input.
Every subcommand takes --json to emit the same information as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .abelian import (
    GroupEndo,
    endo_nil_clean_decompose,
    group_nil_clean_verdict,
    group_strongly_nil_clean_verdict,
    parse_endo_block,
    parse_group,
    strongly_witness,
)
from .canonical import frobenius_form
from .decompose import (
    NilCleanCert,
    NotStronglyNilCleanError,
    StrongCert,
    format_cert,
    nil_clean_decompose,
    strongly_nil_clean_decompose,
    verify_cert,
)
from .gf2 import Gf2Matrix, ParseError, parse_gf2, parse_gf2_block, skip_blank
from .rings import (
    BoolMatrix,
    Mod2kMatrix,
    nil_clean_decompose_boolean,
    nil_clean_decompose_mod2k,
    parse_bool_block,
    parse_mod2k_block,
)

_BLOCK_PARSERS = {
    "gf2": parse_gf2_block,
    "mod2k": parse_mod2k_block,
    "bool": parse_bool_block,
    "group": parse_endo_block,
}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _parse_block_any(lines: list[str], i: int):
    i = skip_blank(lines, i)
    if i >= len(lines):
        raise ParseError("expected a matrix block", i + 1)
    head = lines[i].split()[0]
    parser = _BLOCK_PARSERS.get(head)
    if parser is None:
        raise ParseError(f"unknown matrix format {head!r}", i + 1)
    return parser(lines, i)


def parse_any_matrix(text: str):
    """Parse one matrix in any supported format, rejecting trailing content."""
    lines = text.splitlines()
    mat, nxt = _parse_block_any(lines, 0)
    nxt = skip_blank(lines, nxt)
    if nxt < len(lines):
        raise ParseError("unexpected trailing content", nxt + 1)
    return mat


def parse_cert(text: str) -> NilCleanCert:
    """Parse the certificate format emitted by ``decompose``."""
    lines = text.splitlines()
    i = skip_blank(lines, 0)
    if i >= len(lines) or lines[i].strip() != "E":
        raise ParseError("expected 'E'", i + 1)
    e, i = _parse_block_any(lines, i + 1)
    i = skip_blank(lines, i)
    if i >= len(lines) or lines[i].strip() != "N":
        raise ParseError("expected 'N'", i + 1)
    n, i = _parse_block_any(lines, i + 1)
    i = skip_blank(lines, i)
    if i >= len(lines):
        raise ParseError("expected 'index <k>'", i + 1)
    tokens = lines[i].split()
    if len(tokens) != 2 or tokens[0] != "index":
        raise ParseError("expected 'index <k>'", i + 1)
    try:
        idx = int(tokens[1])
    except ValueError:
        raise ParseError("index must be an integer", i + 1) from None
    if idx < 1:
        raise ParseError("index must be at least 1", i + 1)
    i = skip_blank(lines, i + 1)
    if i >= len(lines):
        raise ParseError("expected 'strong <true|false>'", i + 1)
    tokens = lines[i].split()
    if len(tokens) != 2 or tokens[0] != "strong" or tokens[1] not in ("true", "false"):
        raise ParseError("expected 'strong <true|false>'", i + 1)
    strong = tokens[1] == "true"
    i = skip_blank(lines, i + 1)
    if i < len(lines):
        raise ParseError("unexpected trailing content", i + 1)
    if type(e) is not type(n):
        raise ParseError("certificate parts use different formats", 1)
    if strong:
        return StrongCert(e, n, idx, None)
    return NilCleanCert(e, n, idx)


# ---------------------------------------------------------------------------
# JSON rendering


def _matrix_json(m) -> dict:
    if isinstance(m, Gf2Matrix):
        return {
            "format": "gf2",
            "n_rows": m.n_rows,
            "n_cols": m.n_cols,
            "rows": [
                "".join(str(m.entry(i, j)) for j in range(m.n_cols))
                for i in range(m.n_rows)
            ],
        }
    if isinstance(m, Mod2kMatrix):
        return {"format": "mod2k", "k": m.k, "n": m.n, "rows": [list(r) for r in m.entries]}
    if isinstance(m, BoolMatrix):
        return {
            "format": "bool",
            "m": m.m,
            "n": m.n,
            "rows": [
                ["".join("1" if (v >> c) & 1 else "0" for c in range(m.m)) for v in row]
                for row in m.entries
            ],
        }
    if isinstance(m, GroupEndo):
        return {
            "format": "group",
            "factors": [f"{p}^{k}" for p, k in m.group.factors],
            "rows": [list(r) for r in m.matrix],
        }
    raise TypeError(f"no JSON form for {type(m).__name__}")


def _cert_json(cert: NilCleanCert) -> dict:
    e = cert.e_part
    n = cert.n_part
    return {
        "e": _matrix_json(e),
        "n": _matrix_json(n),
        "index": cert.nilpotency_index,
        "strong": e * n == n * e,
    }


def _emit(args, obj: dict, text: str) -> None:
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_decompose(args) -> int:
    mat = parse_any_matrix(_read_text(args.path))
    if isinstance(mat, Gf2Matrix):
        cert = nil_clean_decompose(mat)
    elif isinstance(mat, Mod2kMatrix):
        cert = nil_clean_decompose_mod2k(mat)
    elif isinstance(mat, BoolMatrix):
        cert = nil_clean_decompose_boolean(mat)
    else:
        cert = endo_nil_clean_decompose(mat)
    _emit(args, _cert_json(cert), format_cert(cert))
    return 0


def _cmd_verify(args) -> int:
    mat = parse_any_matrix(_read_text(args.path))
    cert = parse_cert(_read_text(args.cert))
    ok = verify_cert(mat, cert)
    _emit(args, {"result": "PASS" if ok else "FAIL"}, ("PASS" if ok else "FAIL") + "\n")
    return 0 if ok else 1


def _cmd_rcf(args) -> int:
    mat = parse_gf2(_read_text(args.path))
    form = frobenius_form(mat)
    factors = [str(f) for f in form.invariant_factors]
    text = "transform\n" + form.transform.format_text() + "factors " + " ".join(factors) + "\n"
    _emit(args, {"transform": _matrix_json(form.transform), "factors": factors}, text)
    return 0


def _cmd_strong(args) -> int:
    mat = parse_gf2(_read_text(args.path))
    try:
        cert = strongly_nil_clean_decompose(mat)
    except NotStronglyNilCleanError as err:
        text = "not strongly nil-clean\nwitness\n" + err.witness.format_text()
        _emit(
            args,
            {"strongly_nil_clean": False, "witness": _matrix_json(err.witness)},
            text,
        )
        return 1
    _emit(
        args,
        {"strongly_nil_clean": True, "cert": _cert_json(cert)},
        format_cert(cert),
    )
    return 0


def _cmd_group(args) -> int:
    g = parse_group(_read_text(args.path))
    nil_clean = group_nil_clean_verdict(g)
    strongly = group_strongly_nil_clean_verdict(g)
    witness = strongly_witness(g) if nil_clean and not strongly else None
    lines = [
        f"group {g}",
        f"nil-clean {'true' if nil_clean else 'false'}",
        f"strongly-nil-clean {'true' if strongly else 'false'}",
    ]
    if nil_clean and not strongly:
        if witness is None:
            lines.append("witness none")
        else:
            lines.append("witness")
            lines.append(witness.format_text().rstrip("\n"))
    text = "\n".join(lines) + "\n"
    obj = {
        "group": str(g),
        "nil_clean": nil_clean,
        "strongly_nil_clean": strongly,
        "witness": None if witness is None else _matrix_json(witness),
    }
    _emit(args, obj, text)
    return 0 if nil_clean else 1


def _cmd_oracle(args) -> int:
    check = args.check
    n = args.n
    if check in ("idempotents", "nilpotents"):
        if not 1 <= n <= 4:
            raise ValueError("enumeration is capped at 4x4")
        if n == 4 and not args.extended:
            raise ValueError("the 4x4 scan runs only with --extended")
        mats = (
            oracle.enumerate_idempotents(n)
            if check == "idempotents"
            else oracle.enumerate_nilpotents(n)
        )
        _emit(args, {"check": check, "n": n, "count": len(mats)}, f"count {len(mats)}\n")
        return 0
    if check == "strong":
        _, count = oracle.brute_strongly_nil_clean(n)
        total = 1 << (n * n)
        _emit(
            args,
            {"check": check, "n": n, "count": count, "total": total},
            f"count {count} of {total}\n",
        )
        return 0
    if check == "sweep":
        if not 1 <= n <= 4:
            raise ValueError("the sweep is capped at 4x4")
        if n == 4 and not args.extended:
            raise ValueError("the 4x4 sweep runs only with --extended")
        mask = (1 << n) - 1
        checked = 0
        for code in range(1 << (n * n)):
            mat = Gf2Matrix(n, n, tuple((code >> (i * n)) & mask for i in range(n)))
            cert = nil_clean_decompose(mat)
            if not verify_cert(mat, cert):
                _emit(
                    args,
                    {"check": check, "n": n, "failed_code": code},
                    f"failed at code {code}\n",
                )
                return 1
            if n <= 3 and oracle.brute_nil_clean(mat) is None:
                _emit(
                    args,
                    {"check": check, "n": n, "failed_code": code},
                    f"oracle found nothing at code {code}\n",
                )
                return 1
            checked += 1
        _emit(args, {"check": check, "n": n, "checked": checked}, f"checked {checked}\n")
        return 0
    if check == "f4":
        bad = oracle.f4_negative_check(n)
        _emit(
            args,
            {"check": check, "n": n, "count": len(bad)},
            f"non-nil-clean {len(bad)}\n",
        )
        return 0 if bad else 1
    raise ValueError(f"unknown oracle check {check!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilclean",
        description="Constructive nil-clean decompositions A = E + N.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a matrix, print the certificate")
    p.add_argument("path", nargs="?", default="-", help="matrix file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="check a certificate against a matrix")
    p.add_argument("path", help="matrix file, or - for stdin")
    p.add_argument("--cert", default="-", help="certificate file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("rcf", help="rational canonical form of a gf2 matrix")
    p.add_argument("path", nargs="?", default="-")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_rcf)

    p = sub.add_parser("strong", help="commuting decomposition, or a witness")
    p.add_argument("path", nargs="?", default="-")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_strong)

    p = sub.add_parser("group", help="nil-clean verdicts for End(G)")
    p.add_argument("path", nargs="?", default="-")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("oracle", help="brute-force checks at tiny sizes")
    p.add_argument(
        "check", choices=["idempotents", "nilpotents", "strong", "sweep", "f4"]
    )
    p.add_argument("n", type=int)
    p.add_argument("--extended", action="store_true", help="allow the 4x4 scans")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
