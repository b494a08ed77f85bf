"""Command-line entry point: ``tnn-springer <command> ...``.

Every command writes UTF-8 JSON (or a plain table) to stdout and diagnostics
to stderr.  Exit codes: 0 success, 2 invalid input, 3 failed verification,
4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from . import adjoint_sl3, flag_cells, golden, selftest, springer_cells, tnn_parabolic
from .coxeter import build_weyl
from .errors import TNNError, ValidationError, VerificationError

SCHEMA_VERSION = 1


def parse_index_list(text: str) -> tuple[int, ...]:
    """``"1,3"``, ``"1 3"`` or ``"13"`` -> ``(1, 3)``; empty text is the empty word."""
    text = (text or "").strip()
    if not text:
        return ()
    parts = text.replace(",", " ").split()
    if len(parts) == 1 and parts[0].isdigit():
        parts = list(parts[0])
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValidationError(f"cannot read {text!r} as a list of indices") from None


def dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _document(body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "kind": "atlas", **body}


def atlas_document(type_: str, rank: int, y_word, x_word) -> dict:
    W = build_weyl(type_, rank)
    piece = springer_cells.piece_of(W, y_word, x_word)
    return _document(springer_cells.springer_atlas(piece).to_json())


def flag_atlas_document(type_: str, rank: int, H, y_word, x_word) -> dict:
    W = build_weyl(type_, rank)
    piece = springer_cells.piece_of(W, y_word, x_word)
    return _document(flag_cells.flag_atlas(H, piece).to_json())


def _w(word) -> str:
    return "".join(map(str, word)) or "e"


def _table(doc: dict) -> str:
    head = f"{doc['type']}{doc['rank']}  z={_w(doc['z'])}  z'={_w(doc['zprime'])}"
    if "H" in doc:
        head += f"  H={{{','.join(map(str, doc['H']))}}}"
    lines = [head]
    for c in doc["cells"]:
        if "rt" in c:
            lines.append(f"{c['dim']:>3}  r={_w(c['rt'][0]):<10} t={_w(c['rt'][1]):<10} "
                         f"r'={_w(c['rpt'][0]):<10} t'={_w(c['rpt'][1])}")
        else:
            lines.append(f"{c['dim']:>3}  {_w(c['v']):<10} {_w(c['w'])}")
    hist = ", ".join(f"{k}:{v}" for k, v in doc["dim_histogram"].items())
    lines.append(f"cells={len(doc['cells'])}  dims={{{hist}}}")
    return "\n".join(lines) + "\n"


def _emit_atlas(doc: dict, args) -> int:
    code = 0
    if args.golden:
        diff = golden.diff_against(golden.load_golden(args.golden), doc)
        doc["golden_diff"] = diff.to_json()
        if not diff.ok:
            print(f"golden mismatch ({diff.category}): {len(diff.unexplained)} unexplained "
                  f"differences, {len(diff.count_mismatches)} count mismatches", file=sys.stderr)
            code = 3
        elif diff.suspect:
            print(f"golden match up to {len(diff.suspect)} flagged suspect entries", file=sys.stderr)
    sys.stdout.write(dump(doc) if args.format == "json" else _table(doc))
    return code


def cmd_atlas(args) -> int:
    doc = atlas_document(args.type, args.rank, parse_index_list(args.y_word), parse_index_list(args.x_word))
    return _emit_atlas(doc, args)


def cmd_flag_atlas(args) -> int:
    doc = flag_atlas_document(args.type, args.rank, parse_index_list(args.H),
                              parse_index_list(args.y_word), parse_index_list(args.x_word))
    return _emit_atlas(doc, args)


def cmd_verify_adjoint(args) -> int:
    stored = None
    if args.support_table:
        try:
            with open(args.support_table, encoding="utf-8") as fh:
                raw = json.load(fh)
            stored = {(parse_index_list(v), parse_index_list(w)): frozenset(s) for v, w, s in raw}
        except (OSError, json.JSONDecodeError, ValueError, TypeError) as exc:
            raise ValidationError(f"cannot read support table {args.support_table}: {exc}") from exc
        if len(stored) != 19:
            raise ValidationError("support table must have 19 entries")
    results = adjoint_sl3.run_checks(stored=stored, seed=args.seed)
    for r in results:
        print(r.line())
    return 0 if all(r.ok for r in results) else VerificationError.exit_code


def _infer_n(word: list[tuple]) -> int:
    n = 2
    for g in word:
        n = max(n, len(g[1]) if g[0] == "t" else g[1] + 1)
    return n


def cmd_parabolic(args) -> int:
    word = tnn_parabolic.parse_generators(args.gens)
    n = args.n if args.n is not None else _infer_n(word)
    g = tnn_parabolic.assemble_tnn(n, word)
    sys.stdout.write(dump(tnn_parabolic.parabolic_report(g)))
    return 0


def cmd_selftest(args) -> int:
    results = selftest.run_selftest(args.level, seed=args.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=sys.stderr)
    return 0 if not failed else VerificationError.exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with 2 already; route through our message format
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(ValidationError.exit_code)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tnn-springer", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_args(q):
        q.add_argument("-t", "--type", required=True, help="Dynkin type (A or D)")
        q.add_argument("-r", "--rank", required=True, type=int)
        q.add_argument("--y-word", default="", help="reduced word of z, e.g. 1,3")
        q.add_argument("--x-word", default="", help="reduced word of z'")
        q.add_argument("--format", choices=("json", "table"), default="json")
        q.add_argument("--golden", help="golden file to diff against")

    q = sub.add_parser("atlas", help="cells of a unipotent piece's fibre")
    group_args(q)
    q.set_defaults(fn=cmd_atlas)

    q = sub.add_parser("flag-atlas", help="the same for a partial flag manifold")
    group_args(q)
    q.add_argument("--H", default="", help="parabolic index set, e.g. 2 or 1,3")
    q.set_defaults(fn=cmd_flag_atlas)

    q = sub.add_parser("verify-adjoint", help="invariants of the SL3 adjoint model")
    q.add_argument("--support-table", help="JSON list of [v, w, [basis names]] replacing the stored table")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(fn=cmd_verify_adjoint)

    q = sub.add_parser("parabolic", help="P_g report for a product of generators")
    q.add_argument("--n", type=int, help="matrix size (default: smallest that fits)")
    q.add_argument("--gens", required=True, help='e.g. "y1:1,t:2,0.5,x1:1"')
    q.set_defaults(fn=cmd_parabolic)

    q = sub.add_parser("selftest", help="run the property suites")
    q.add_argument("level", nargs="?", default="quick")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(fn=cmd_selftest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except TNNError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
