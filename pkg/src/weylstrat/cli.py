"""Command-line surface.

Subcommands: subsystems, hasse, coeffs, dcoeffs, kblock, pq, gammax, verify.
Output ordering is fully specified (classes by cardinality then label, rows
lexicographic in Dynkin labels), so emission is byte-stable across runs.
Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from . import costrat, relcoeff, verify as verify_mod
from .lattice import ExpKernel, TorusPoint, gamma_x, kernel_from_file, kernel_preset, pq_map
from .rootsys import LieType, RootSystem, build_root_system
from .subsys import SubsystemClass, are_conjugate, build_poset, enumerate_classes, poset_to_dot
from .weyl import WeylGroup, generate_group


class UsageError(Exception):
    pass


def _build(args) -> Tuple[RootSystem, WeylGroup]:
    rs = build_root_system(LieType(args.family, args.rank))
    return rs, generate_group(rs)


def _classes(rs, wg) -> List[SubsystemClass]:
    return enumerate_classes(rs, wg)


def _find_class(rs, classes: List[SubsystemClass], label: str) -> SubsystemClass:
    if label == "full":
        return max(classes, key=len)
    try:
        want = verify_mod.normalize_label(label)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for c in classes:
        if c.label == want:
            return c
    raise UsageError(
        f"unknown class label {label!r}; available: " + ", ".join(c.label for c in classes)
    )


def _kernel(rs, spec: str) -> Optional[ExpKernel]:
    if spec == "sc":
        return None  # all ratios are 1; the pipeline skips scaling entirely
    if spec == "so-odd":
        return kernel_preset(rs, "so-odd")
    return kernel_from_file(spec)


def _ratios(rs, wg, kernel: Optional[ExpKernel]):
    return None if kernel is None else pq_map(rs, wg, kernel)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _group_header(args) -> dict:
    return {"family": args.family, "rank": args.rank, "kernel": getattr(args, "kernel", "sc")}


def _fmt_lambda(lam: Sequence[int]) -> str:
    return "".join(str(x) for x in lam) if all(0 <= x <= 9 for x in lam) else ",".join(map(str, lam))


def _warn_non_integers(entries: Dict, context: str):
    for lam, v in entries.items():
        if Q(v).denominator != 1:
            print(f"warning: non-integer coefficient {v} at {lam} in {context}", file=sys.stderr)


# -- subcommands ---------------------------------------------------------------


def cmd_subsystems(args) -> int:
    rs, wg = _build(args)
    classes = _classes(rs, wg)
    if args.format == "json":
        payload = {
            "group": _group_header(args),
            "classes": [
                {
                    "label": c.label,
                    "size": len(c),
                    "closed": c.representative.closed,
                    "root_indices": sorted(c.representative.root_indices),
                }
                for c in classes
            ],
        }
        _emit(args, json.dumps(payload, indent=1) + "\n")
        return 0
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf)
        w.writerow(["label", "size", "closed"])
        for c in classes:
            w.writerow([c.label, len(c), c.representative.closed])
    else:
        for c in classes:
            flag = "closed" if c.representative.closed else "non-closed"
            buf.write(f"{c.label:16s} size={len(c):3d}  {flag}\n")
    _emit(args, buf.getvalue())
    return 0


def cmd_hasse(args) -> int:
    rs, wg = _build(args)
    poset = build_poset(wg, _classes(rs, wg))
    if args.format == "csv":
        raise UsageError("hasse supports only dot and json output")
    if args.format == "json":
        payload = {
            "group": _group_header(args),
            "classes": [c.label for c in poset.classes],
            "hasse_edges": sorted(poset.hasse_edges),
        }
        _emit(args, json.dumps(payload, indent=1) + "\n")
    else:
        _emit(args, poset_to_dot(poset))
    return 0


def _coeff_entries(args, with_d: bool):
    rs, wg = _build(args)
    classes = _classes(rs, wg)
    cls = _find_class(rs, classes, args.cls)
    kernel = _kernel(rs, args.kernel)
    table = relcoeff.coeff_table(rs, wg, cls, _ratios(rs, wg, kernel))
    _warn_non_integers(table.entries, f"class {cls.label}")
    dt = costrat.d_coeffs(rs, wg, table) if with_d else None
    lams = set(table.entries)
    if dt is not None:
        lams |= set(dt.entries)
    rows = []
    for lam in sorted(lams):
        row = {"lambda": list(lam), "c_over_n": str(Q(table.entries.get(lam, 0)))}
        if dt is not None:
            row["d"] = str(dt.entries.get(lam, Q(0)))
        rows.append(row)
    return rs, cls, rows


def _emit_table(args, cls, rows, columns: List[str]) -> int:
    if args.format == "json":
        payload = {"group": _group_header(args), "class": cls.label, "entries": rows}
        _emit(args, json.dumps(payload, indent=1) + "\n")
        return 0
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf)
        w.writerow([f"lambda_{i+1}" for i in range(args.rank)] + columns)
        for r in rows:
            w.writerow(r["lambda"] + [r[c] for c in columns])
    else:
        head = "lambda".ljust(2 * args.rank + 2) + "  ".join(c.rjust(10) for c in columns)
        buf.write(head + "\n")
        for r in rows:
            lam = _fmt_lambda(r["lambda"]).ljust(2 * args.rank + 2)
            buf.write(lam + "  ".join(r[c].rjust(10) for c in columns) + "\n")
    _emit(args, buf.getvalue())
    return 0


def cmd_coeffs(args) -> int:
    _rs, cls, rows = _coeff_entries(args, with_d=False)
    return _emit_table(args, cls, rows, ["c_over_n"])


def cmd_dcoeffs(args) -> int:
    _rs, cls, rows = _coeff_entries(args, with_d=True)
    return _emit_table(args, cls, rows, ["c_over_n", "d"])


def cmd_kblock(args) -> int:
    if args.cutoff is None:
        raise UsageError("kblock requires --cutoff")
    rs, wg = _build(args)
    classes = _classes(rs, wg)
    cls = _find_class(rs, classes, args.cls)
    kernel = _kernel(rs, args.kernel)
    table = relcoeff.coeff_table(rs, wg, cls, _ratios(rs, wg, kernel))
    dt = costrat.d_coeffs(rs, wg, table)
    cutoff_sq = Q(args.cutoff) ** 2
    block = costrat.k_block(rs, wg, dt, cutoff_sq)
    cfg = costrat.HbarConfig(args.hbar, len(rs.roots) + rs.rank) if args.hbar else None
    entries = []
    for (row, col), v in sorted(block.entries.items()):
        e = {"lambda_row": list(row), "lambda_col": list(col), "value": str(v)}
        if cfg is not None:
            ratio, _exp = costrat.norm_ratio(rs, cfg, row, col)
            e["value_with_norms"] = repr(ratio * float(v))
        entries.append(e)
    if args.format == "json":
        payload = {
            "group": _group_header(args),
            "class": cls.label,
            "cutoff": str(Q(args.cutoff)),
            "entries": entries,
            "possibly_incomplete_rows": [list(l) for l in sorted(block.incomplete_rows)],
        }
        _emit(args, json.dumps(payload, indent=1) + "\n")
        return 0
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf)
        w.writerow(["lambda_row", "lambda_col", "value"])
        for e in entries:
            w.writerow([_fmt_lambda(e["lambda_row"]), _fmt_lambda(e["lambda_col"]), e["value"]])
    else:
        for e in entries:
            buf.write(
                f"{_fmt_lambda(e['lambda_row']):>10s} {_fmt_lambda(e['lambda_col']):>10s} "
                f"{e['value']:>10s}\n"
            )
        if block.incomplete_rows:
            rows = " ".join(_fmt_lambda(l) for l in sorted(block.incomplete_rows))
            buf.write(f"# possibly incomplete columns near cutoff: {rows}\n")
    _emit(args, buf.getvalue())
    return 0


def cmd_pq(args) -> int:
    rs, wg = _build(args)
    kernel = _kernel(rs, args.kernel)
    if kernel is None:
        kernel = kernel_preset(rs, "sc")
    ratios = pq_map(rs, wg, kernel)
    rows = [
        {
            "root": [str(x) for x in rs.roots[i]],
            "labels": list(rs.root_labels(i)),
            "p": ratios[i].p,
            "q": ratios[i].q,
        }
        for i in range(len(rs.roots))
    ]
    if args.format == "json":
        _emit(args, json.dumps({"group": _group_header(args), "roots": rows}, indent=1) + "\n")
        return 0
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf)
        w.writerow(["root", "p", "q"])
        for r in rows:
            w.writerow(["(" + ",".join(r["root"]) + ")", r["p"], r["q"]])
    else:
        for r in rows:
            buf.write(f"({','.join(r['root'])})  p={r['p']} q={r['q']}\n")
    _emit(args, buf.getvalue())
    return 0


def _parse_point(spec: str, rank: int) -> TorusPoint:
    parts: Dict[str, List[Q]] = {}
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise UsageError(f"bad --point component {chunk!r}; expected A=... or B=...")
        key, vals = chunk.split("=", 1)
        key = key.strip().upper()
        if key not in ("A", "B"):
            raise UsageError(f"bad --point key {key!r}")
        try:
            parts[key] = [Q(tok) for tok in vals.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational in --point: {exc}") from None
    a = parts.get("A", [Q(0)] * rank)
    b = parts.get("B", [Q(0)] * rank)
    if len(a) != rank or len(b) != rank:
        raise UsageError(f"--point coordinates must have length {rank}")
    return TorusPoint.make(a, b)


def cmd_gammax(args) -> int:
    if not args.point:
        raise UsageError("gammax requires --point")
    rs, wg = _build(args)
    kernel = _kernel(rs, args.kernel)
    if kernel is None:
        kernel = kernel_preset(rs, "sc")
    ratios = pq_map(rs, wg, kernel)
    point = _parse_point(args.point, rs.rank)
    sub = gamma_x(rs, ratios, point)
    label = None
    for c in _classes(rs, wg):
        if are_conjugate(wg, sub, c.representative)[0]:
            label = c.label
            break
    payload = {
        "group": _group_header(args),
        "point": {"A": [str(x) for x in point.a_coords], "B": [str(x) for x in point.b_coords]},
        "root_indices": sorted(sub.root_indices),
        "roots": [[str(x) for x in rs.roots[i]] for i in sorted(sub.root_indices)],
        "closed": sub.closed,
        "class": label,
    }
    if args.format == "json":
        _emit(args, json.dumps(payload, indent=1) + "\n")
    else:
        roots = " ".join("(" + ",".join(r) + ")" for r in payload["roots"])
        _emit(
            args,
            f"indices: {payload['root_indices']}\nroots: {roots}\n"
            f"closed: {payload['closed']}\nclass: {label}\n",
        )
    return 0


def cmd_verify(args) -> int:
    if args.corpus:
        with open(args.corpus) as fh:
            groups = [json.load(fh)]
    else:
        groups = verify_mod.load_corpus(args.group)
    buf = io.StringIO()
    total_bad = 0
    for data in groups:
        bad, perm = verify_mod.verify_group(data)
        total_bad += len(bad)
        n_entries = sum(
            1 for r in data["rows"] for pair in r["values"] for v in pair if v is not None
        )
        status = "PASS" if not bad else "FAIL"
        note = "" if perm == tuple(range(data["rank"])) else f" (node permutation {perm})"
        buf.write(f"{status} {data['group']}: {n_entries} table entries{note}\n")
        for m in bad:
            buf.write(
                f"  mismatch group={m.group} class={m.class_label} lambda={_fmt_lambda(m.lam)} "
                f"column={m.column} expected={m.expected} got={m.got}\n"
            )
    buf.write(("OK" if not total_bad else f"{total_bad} MISMATCHES") + "\n")
    _emit(args, buf.getvalue())
    return 0 if not total_bad else 1


# -- parser ---------------------------------------------------------------------


def _make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="weylstrat",
        description="Reflection-type decomposition data: subsystem classes, "
        "relation coefficients, costratification tables.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_type=True):
        if need_type:
            sp.add_argument("--family", required=True, choices=["A", "B", "C", "D"])
            sp.add_argument("--rank", required=True, type=int)
        sp.add_argument("--format", default="text", choices=["json", "csv", "text", "dot"])
        sp.add_argument("--out", default=None, help="write output to a file")

    sp = sub.add_parser("subsystems", help="list subsystem classes with closed flags")
    common(sp)
    sp.set_defaults(func=cmd_subsystems)

    sp = sub.add_parser("hasse", help="Hasse diagram of the class poset (DOT)")
    common(sp)
    sp.set_defaults(func=cmd_hasse)

    for name, fn, help_ in [
        ("coeffs", cmd_coeffs, "reduced relation coefficients of a class"),
        ("dcoeffs", cmd_dcoeffs, "reduced D coefficients (with the C column)"),
        ("kblock", cmd_kblock, "normalized K-matrix block within a norm cutoff"),
    ]:
        sp = sub.add_parser(name, help=help_)
        common(sp)
        sp.add_argument("--class", dest="cls", required=True, help='label like A1+B1, 0, or "full"')
        sp.add_argument("--kernel", default="sc", help="sc, so-odd, or a kernel matrix file")
        sp.add_argument("--cutoff", default=None, help="norm cutoff on shifted weights")
        sp.add_argument("--hbar", type=float, default=None)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("pq", help="coprime p/q ratio per root for a kernel")
    common(sp)
    sp.add_argument("--kernel", default="sc")
    sp.set_defaults(func=cmd_pq)

    sp = sub.add_parser("gammax", help="root subsystem fixing a rational torus point")
    common(sp)
    sp.add_argument("--kernel", default="sc")
    sp.add_argument("--point", required=True, help='e.g. "A=1/4,0" or "A=1/4,0;B=0,0"')
    sp.set_defaults(func=cmd_gammax)

    sp = sub.add_parser("verify", help="recompute the golden tables and diff")
    common(sp, need_type=False)
    sp.add_argument("--group", default=None, help="restrict to one group, e.g. SU(3)")
    sp.add_argument("--corpus", default=None, help="path to an alternative corpus JSON")
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
