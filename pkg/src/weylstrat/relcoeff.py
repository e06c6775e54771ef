"""Signed subset sums and reduced character coefficients.

The generating map V counts subsets of the complement of a subsystem by the
parity-weighted number of ways their (ratio-scaled) root sums hit each weight;
its coset symmetrization and a single signed fold over shifted dominant
representatives yield the reduced coefficients, all in integer label
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence

from .lattice import PQRatio
from .rootsys import Labels, RootSystem
from .subsys import SubsystemClass
from .weyl import WeylGroup
from . import repthy


@dataclass
class WeightedSum:
    """Finitely supported integer-valued map on weight labels."""

    entries: Dict[tuple, int] = field(default_factory=dict)

    def add(self, key: tuple, value: int):
        if not value:
            return
        new = self.entries.get(key, 0) + value
        if new:
            self.entries[key] = new
        else:
            del self.entries[key]

    def value(self, key: tuple) -> int:
        return self.entries.get(key, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def max_norm_sq(self, rs: RootSystem) -> Q:
        return max((rs.labels_norm_sq(k) for k in self.entries), default=Q(0))

    def __eq__(self, other):
        return isinstance(other, WeightedSum) and self.entries == other.entries

    def __len__(self):
        return len(self.entries)


@dataclass
class CoeffTable:
    """Reduced coefficients (the C-over-N column) for one subsystem class."""

    class_label: str
    entries: Dict[Labels, int]
    stabilizer_order: int


def _key(values: Sequence) -> tuple:
    return tuple(int(v) if isinstance(v, Q) and v.denominator == 1 else v for v in values)


def _scaled_root_labels(
    rs: RootSystem, index: int, ratios: Optional[Sequence[PQRatio]]
) -> tuple:
    lab = rs.root_labels(index)
    if ratios is None:
        return lab
    r = ratios[index]
    return _key([Q(r.q, r.p) * l for l in lab])


def subset_sums(
    rs: RootSystem,
    complement: Sequence[int],
    ratios: Optional[Sequence[PQRatio]] = None,
) -> WeightedSum:
    """Fold the complement roots one at a time instead of walking 2^n subsets."""
    entries: Dict[tuple, int] = {tuple(0 for _ in range(rs.rank)): 1}
    for idx in complement:
        shift = _scaled_root_labels(rs, idx, ratios)
        new = dict(entries)
        for key, v in entries.items():
            moved = tuple(a + b for a, b in zip(key, shift))
            nv = new.get(moved, 0) - v
            if nv:
                new[moved] = nv
            else:
                new.pop(moved, None)
        entries = new
    return WeightedSum(entries)


def symmetrize(wg: WeylGroup, stabilizer, v: WeightedSum) -> WeightedSum:
    """Sum of V over one representative per right coset of the setwise stabilizer."""
    reps = wg.coset_representatives(stabilizer)
    out = WeightedSum()
    for w in reps:
        inv = wg.inverse(w)
        for key, val in v.entries.items():
            out.add(inv.apply_labels(key), val)
    return out


def _le_sqrt_plus(a_sq: Q, m_sq: Q, b_sq: Q) -> bool:
    """Exact test of sqrt(a_sq) <= sqrt(m_sq) + sqrt(b_sq)."""
    r = a_sq - m_sq - b_sq
    if r <= 0:
        return True
    return r * r <= 4 * m_sq * b_sq


def candidate_dominants(rs: RootSystem, max_support_norm_sq: Q) -> List[Labels]:
    """Dominant labels with ||l + delta|| <= M + ||delta||, M^2 the given bound."""
    delta_sq = rs.labels_norm_sq(rs.delta_labels)
    m_sq = Q(max_support_norm_sq)
    return repthy.dominant_labels_within(
        rs, lambda s: _le_sqrt_plus(s, m_sq, delta_sq)
    )


def coeff_table(
    rs: RootSystem,
    wg: WeylGroup,
    cls: SubsystemClass,
    ratios: Optional[Sequence[PQRatio]] = None,
) -> CoeffTable:
    """Reduced coefficients of the class relation in the normalized character basis.

    Folds the symmetrized subset-sum map through the shifted dominant
    representative of each support point; a support point contributes to the
    unique dominant weight whose shifted orbit passes through it.
    """
    members = cls.representative.root_indices
    complement = [i for i in range(len(rs.roots)) if i not in members]
    v = subset_sums(rs, complement, ratios)
    stab = wg.setwise_stabilizer(members)
    vt = symmetrize(wg, stab, v)

    acc: Dict[Labels, int] = {}
    for key, val in vt.entries.items():
        shifted = tuple(k + 1 for k in key)
        if any(isinstance(x, Q) for x in shifted):
            continue  # off the character lattice; cannot meet a shifted dominant orbit
        dom, sign, regular = wg.dominant_data(shifted)
        if not regular:
            continue
        lam = tuple(d - 1 for d in dom)
        acc[lam] = acc.get(lam, 0) + sign * val
    entries = {k: v for k, v in sorted(acc.items()) if v}
    return CoeffTable(cls.label, entries, len(stab))


def identity_value(rs: RootSystem, wg: WeylGroup, table: CoeffTable) -> int:
    """Sum of coefficient times irrep dimension; zero for every non-full class."""
    return sum(c * repthy.weyl_dim(rs, lam) for lam, c in table.entries.items())
