"""Golden-table verification: recompute every table entry and diff.

The D4 tables need one extra step: the two fork nodes of the diagram can be
numbered either way around, and the numbering moves both the label strings
and which of the two twelve-root classes is called A3 versus D3. The fork
permutation is resolved by matching the trivial-class column first and then
applied everywhere.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction as Q
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from .costrat import DCoeffTable, d_coeffs
from .relcoeff import CoeffTable, coeff_table
from .rootsys import Labels, LieType, build_root_system
from .subsys import enumerate_classes
from .weyl import generate_group

GROUP_FILES = {
    "SU(2)": "su2.json",
    "SU(3)": "su3.json",
    "SU(4)": "su4.json",
    "SU(5)": "su5.json",
    "Sp(2)": "sp2.json",
    "Sp(3)": "sp3.json",
    "Spin(7)": "spin7.json",
    "Spin(8)": "spin8.json",
}


@dataclass(frozen=True)
class Mismatch:
    group: str
    class_label: str
    lam: Labels
    column: str  # "c" or "d"
    expected: str
    got: str


def normalize_label(label: str) -> str:
    """Canonical factor order: A parts, then D parts, then B/C parts, each ascending."""
    if label in ("0", ""):
        return "0"
    factors = [f.strip() for f in label.replace("⊕", "+").split("+") if f.strip()]
    parsed = []
    for f in factors:
        m = re.fullmatch(r"([ABCD])(\d+)", f)
        if not m:
            raise ValueError(f"bad class label {label!r}")
        parsed.append((m.group(1), int(m.group(2))))
    order = {"A": 0, "D": 1, "B": 2, "C": 2}
    parsed.sort(key=lambda t: (order[t[0]], t[1], t[0]))
    return "+".join(f"{f}{i}" for f, i in parsed)


def load_corpus(name: Optional[str] = None) -> List[dict]:
    names = [name] if name else list(GROUP_FILES)
    out = []
    for n in names:
        if n not in GROUP_FILES:
            raise ValueError(f"unknown group {n!r}; expected one of {sorted(GROUP_FILES)}")
        path = resources.files("weylstrat").joinpath("golden", GROUP_FILES[n])
        out.append(json.loads(path.read_text()))
    return out


_TABLE_CACHE: Dict[Tuple[str, int, str], Tuple[CoeffTable, DCoeffTable]] = {}


def computed_tables(
    family: str, rank: int, class_labels: Sequence[str]
) -> Dict[str, Tuple[CoeffTable, DCoeffTable]]:
    rs = build_root_system(LieType(family, rank))
    wg = generate_group(rs)
    classes = {c.label: c for c in enumerate_classes(rs, wg)}
    out = {}
    for label in class_labels:
        key = (family, rank, normalize_label(label))
        if key not in _TABLE_CACHE:
            cls = classes[key[2]]
            ct = coeff_table(rs, wg, cls)
            _TABLE_CACHE[key] = (ct, d_coeffs(rs, wg, ct))
        out[label] = _TABLE_CACHE[key]
    return out


def _fork_permutations(family: str, rank: int) -> List[Tuple[int, ...]]:
    """Label permutations induced by diagram automorphisms permuting fork nodes."""
    if family == "D" and rank == 4:
        perms = []
        for p in itertools.permutations((0, 2, 3)):
            full = list(range(4))
            for src, dst in zip((0, 2, 3), p):
                full[src] = dst
            perms.append(tuple(full))
        return perms
    if family == "D":
        swap = list(range(rank))
        swap[rank - 2], swap[rank - 1] = swap[rank - 1], swap[rank - 2]
        return [tuple(range(rank)), tuple(swap)]
    return [tuple(range(rank))]


def _permute(lam: Sequence[int], perm: Tuple[int, ...]) -> Labels:
    # perm maps our node positions to table node positions
    out = [0] * len(lam)
    for src, dst in enumerate(perm):
        out[dst] = lam[src]
    return tuple(out)


def _column_diff(
    group: str,
    corpus_label: str,
    column: int,
    corpus_rows: Dict[Labels, list],
    table_entries: Dict[Labels, object],
    perm: Tuple[int, ...],
) -> List[Mismatch]:
    """Diff one class column; column 0 is the C values, 1 the D values."""
    kind = "c" if column == 0 else "d"
    bad = []
    seen = set()
    for lam, values in corpus_rows.items():
        raw = values[column]
        expected = Q(raw) if raw is not None else Q(0)
        got = Q(table_entries.get(_inverse_permute(lam, perm), 0))
        seen.add(_inverse_permute(lam, perm))
        if expected != got:
            bad.append(Mismatch(group, corpus_label, lam, kind, str(expected), str(got)))
    for lam, value in table_entries.items():
        if lam not in seen and value:
            bad.append(
                Mismatch(group, corpus_label, _permute(lam, perm), kind, "absent", str(value))
            )
    return bad


def _inverse_permute(lam: Sequence[int], perm: Tuple[int, ...]) -> Labels:
    return tuple(lam[dst] for dst in perm)


def verify_group(data: dict) -> Tuple[List[Mismatch], Tuple[int, ...]]:
    """Diff one group's tables; returns mismatches and the fork permutation used."""
    group = data["group"]
    family, rank = data["family"], data["rank"]
    corpus_rows = {tuple(r["lambda"]): r["values"] for r in data["rows"]}
    tables = computed_tables(family, rank, data["classes"])

    def diff_under(perm: Tuple[int, ...], only_class: Optional[str] = None) -> List[Mismatch]:
        bad: List[Mismatch] = []
        for ci, label in enumerate(data["classes"]):
            if only_class is not None and label != only_class:
                continue
            ct, dt = tables[label]
            per_class = {lam: vals[ci] for lam, vals in corpus_rows.items()}
            bad += _column_diff(group, label, 0, per_class, ct.entries, perm)
            bad += _column_diff(group, label, 1, per_class, dt.entries, perm)
        return bad

    perms = _fork_permutations(family, rank)
    candidates = [p for p in perms if not diff_under(p, only_class="0")] or perms
    best: Optional[List[Mismatch]] = None
    best_perm = candidates[0]
    for p in candidates:
        bad = diff_under(p)
        if not bad:
            return [], p
        if best is None or len(bad) < len(best):
            best, best_perm = bad, p
    return best or [], best_perm


def verify_corpus(groups: Optional[List[dict]] = None) -> List[Mismatch]:
    groups = groups if groups is not None else load_corpus()
    bad: List[Mismatch] = []
    for data in groups:
        bad_g, _perm = verify_group(data)
        bad += bad_g
    return bad
