"""Costratification data: D coefficient tables and normalized K-matrix blocks.

All K entries are stored in normalized form (the ratio of character norms is
divided out), which keeps every table exact and independent of hbar; the
transcendental factor is reinstated on demand by norm_ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Sequence, Set, Tuple

from .relcoeff import CoeffTable
from .rootsys import Labels, RootSystem
from .subsys import ClassPoset
from .weyl import WeylGroup
from . import repthy


@dataclass
class DCoeffTable:
    """Reduced D coefficients, supported on the dominant weights of the table irreps."""

    class_label: str
    entries: Dict[Labels, Q]


@dataclass
class KBlock:
    class_label: str
    cutoff_norm_sq: Q
    entries: Dict[Tuple[Labels, Labels], Q]  # (row lambda', column lambda) -> value
    incomplete_rows: Set[Labels] = field(default_factory=set)


@dataclass(frozen=True)
class HbarConfig:
    hbar: float
    dim_g: int

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")


def d_coeffs(rs: RootSystem, wg: WeylGroup, table: CoeffTable) -> DCoeffTable:
    """Accumulate coefficient-weighted multiplicities over the table's weight systems."""
    acc: Dict[Labels, Q] = {}
    for lam, c in table.entries.items():
        ws = repthy.dominant_weight_system(rs, wg, lam)
        for mu, m in ws.dominant_entries.items():
            acc[mu] = acc.get(mu, Q(0)) + Q(c) * m
    return DCoeffTable(table.class_label, dict(sorted(acc.items())))


def orbit_shifts(rs: RootSystem, wg: WeylGroup, dtable: DCoeffTable) -> List[Labels]:
    """Every weight in the Weyl orbits of the D-table support."""
    out: Set[Labels] = set()
    for mu in dtable.entries:
        out.update(wg.orbit_labels(mu))
    return sorted(out)


def is_stable(rs: RootSystem, wg: WeylGroup, dtable: DCoeffTable, lam: Sequence[int]) -> bool:
    """True iff lam plus every orbit point of the D-table support stays dominant.

    With this reading the closed-form row formula holds exactly: singular or
    non-dominant shifts are what break it, and those only involve non-dominant
    orbit points of the support.
    """
    lam = tuple(lam)
    for mu in orbit_shifts(rs, wg, dtable):
        if any(a + b < 0 for a, b in zip(lam, mu)):
            return False
    return True


def k_entry(
    rs: RootSystem,
    wg: WeylGroup,
    dtable: DCoeffTable,
    lam_row: Sequence[int],
    lam_col: Sequence[int],
) -> Q:
    """Normalized K entry: sum over the support of D times the orbit sign sum."""
    total = Q(0)
    for mu, d in dtable.entries.items():
        if d:
            total += d * repthy.orbit_sum_t(rs, wg, lam_col, lam_row, mu)
    return total


def k_block(
    rs: RootSystem, wg: WeylGroup, dtable: DCoeffTable, cutoff_norm_sq: Q
) -> KBlock:
    """All normalized entries with both shifted norms within the cutoff."""
    cutoff = Q(cutoff_norm_sq)
    columns = repthy.dominant_labels_within(rs, lambda s: s <= cutoff)
    entries: Dict[Tuple[Labels, Labels], Q] = {}
    incomplete: Set[Labels] = set()
    for lam in columns:
        for mu, d in dtable.entries.items():
            if not d:
                continue
            for mu2 in wg.orbit_labels(mu):
                shifted = tuple(a + b + 1 for a, b in zip(lam, mu2))
                dom, sign, regular = wg.dominant_data(shifted)
                if not regular:
                    continue
                if rs.labels_norm_sq(dom) > cutoff:
                    incomplete.add(lam)
                    continue
                row = tuple(x - 1 for x in dom)
                key = (row, lam)
                val = entries.get(key, Q(0)) + sign * d
                if val:
                    entries[key] = val
                else:
                    entries.pop(key, None)
    return KBlock(dtable.class_label, cutoff, entries, incomplete)


def norm_ratio(
    rs: RootSystem, cfg: HbarConfig, lam_num: Sequence[int], lam_den: Sequence[int]
) -> Tuple[float, Q]:
    """Ratio of character norms and the exact rational coefficient of hbar in its log."""
    a = rs.labels_norm_sq([l + 1 for l in lam_num])
    b = rs.labels_norm_sq([l + 1 for l in lam_den])
    exponent = (a - b) / 2
    return math.exp(cfg.hbar * float(exponent)), exponent


@dataclass(frozen=True)
class VanishingRow:
    class_label: str
    lam: Labels
    coefficients: Tuple[Tuple[Labels, Q], ...]


def vanishing_system(
    rs: RootSystem,
    wg: WeylGroup,
    poset: ClassPoset,
    base_label: str,
    cutoff_norm_sq: Q,
    dtables: Dict[str, DCoeffTable],
) -> List[VanishingRow]:
    """Finite truncation of the linear conditions carving out the subspace of a class.

    One row per (class r with r not >= the base class, dominant lambda within
    the cutoff); each row lists the normalized K entries over the rows within
    the cutoff. This is a truncation only: rows flagged incomplete in the
    underlying block may be missing far columns.
    """
    labels = {c.label for c in poset.classes}
    if base_label not in labels:
        raise ValueError(f"unknown class label {base_label!r}")
    excluded = [c for c in poset.classes if not poset.is_leq(base_label, c.label)]
    rows: List[VanishingRow] = []
    for cls in excluded:
        block = k_block(rs, wg, dtables[cls.label], cutoff_norm_sq)
        per_col: Dict[Labels, List[Tuple[Labels, Q]]] = {}
        for (row, col), val in block.entries.items():
            per_col.setdefault(col, []).append((row, val))
        for lam in repthy.dominant_labels_within(rs, lambda s: s <= Q(cutoff_norm_sq)):
            coeffs = tuple(sorted(per_col.get(lam, [])))
            rows.append(VanishingRow(cls.label, lam, coeffs))
    return rows
