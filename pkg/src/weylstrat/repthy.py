"""Weight systems, multiplicities, and tensor-product bookkeeping.

Dominant weight systems are computed with Freudenthal's recursion in exact
rationals; the recursion always resolves to positive integers. The tau / T
machinery handles the shifted-orbit sums behind the K-matrix entries; the
transcendental norm prefactors never enter here.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable, Dict, List, Sequence, Tuple

from .rootsys import Labels, RootSystem, _invert_rational
from .weyl import WeylGroup


@dataclass(frozen=True)
class WeightSystem:
    highest: Labels
    dominant_entries: Dict[Labels, int]


_WS_CACHE: Dict[Tuple[str, int, Labels], WeightSystem] = {}
_WS_LOCK = threading.Lock()


def dominant_labels_within(rs: RootSystem, accept: Callable[[Q], bool]) -> List[Labels]:
    """Dominant label vectors l with accept(||l + delta||^2) true.

    Relies on the norm being strictly increasing in every label, so a failing
    prefix (padded with zeros) rules out all of its extensions.
    """
    n = rs.rank
    out: List[Labels] = []

    def shifted_norm_sq(prefix: List[int]) -> Q:
        padded = prefix + [0] * (n - len(prefix))
        return rs.labels_norm_sq([p + 1 for p in padded])

    def rec(prefix: List[int]):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        v = 0
        while True:
            prefix.append(v)
            if accept(shifted_norm_sq(prefix)):
                rec(prefix)
                prefix.pop()
                v += 1
            else:
                prefix.pop()
                break

    if accept(shifted_norm_sq([])):
        rec([])
    return sorted(out)


def _root_coords(rs: RootSystem, lab: Sequence[int]) -> List[Q]:
    """Coordinates of a label vector over the simple roots."""
    inv = _cartan_inverse(rs)
    n = rs.rank
    return [sum(inv[i][j] * lab[j] for j in range(n)) for i in range(n)]


_CARTAN_INV: Dict[Tuple[str, int], List[List[Q]]] = {}


def _cartan_inverse(rs: RootSystem):
    key = (rs.lie_type.family, rs.rank)
    if key not in _CARTAN_INV:
        _CARTAN_INV[key] = _invert_rational([[Q(c) for c in row] for row in rs.cartan])
    return _CARTAN_INV[key]


_KOMEGA: Dict[Tuple[str, int], List[List[Q]]] = {}


def _komega(rs: RootSystem) -> List[List[Q]]:
    """komega[p][i] = k(omega_i, alpha_p) over the positive roots."""
    key = (rs.lie_type.family, rs.rank)
    if key not in _KOMEGA:
        fw = rs.fundamental_weights()
        _KOMEGA[key] = [
            [rs.pairing(w, rs.roots[p]) for w in fw] for p in range(rs.num_positive)
        ]
    return _KOMEGA[key]


def _pairing_labels_root(rs: RootSystem, lab: Sequence[int], p: int) -> Q:
    ko = _komega(rs)[p]
    return sum(l * k for l, k in zip(lab, ko))


def dominant_weight_system(rs: RootSystem, wg: WeylGroup, highest: Sequence[int]) -> WeightSystem:
    """Dominant weights of the irrep with the given highest weight, with multiplicities."""
    lam = tuple(int(l) for l in highest)
    if any(l < 0 for l in lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    key = (rs.lie_type.family, rs.rank, lam)
    with _WS_LOCK:
        cached = _WS_CACHE.get(key)
    if cached is not None:
        return cached

    n = rs.rank
    lam_shift_sq = rs.labels_norm_sq([l + 1 for l in lam])
    lam_sq = rs.labels_norm_sq(lam)
    candidates = dominant_labels_within(rs, lambda s: s <= lam_shift_sq)
    members: List[Tuple[int, Labels]] = []
    for mu in candidates:
        coords = _root_coords(rs, [a - b for a, b in zip(lam, mu)])
        if all(c.denominator == 1 and c >= 0 for c in coords):
            members.append((int(sum(c for c in coords)), mu))
    members.sort()

    mult: Dict[Labels, int] = {}
    for height, mu in members:
        if height == 0:
            mult[mu] = 1
            continue
        total = Q(0)
        for p in range(rs.num_positive):
            rl = rs.root_labels(p)
            j = 1
            while True:
                nu = tuple(m + j * r for m, r in zip(mu, rl))
                if rs.labels_norm_sq(nu) > lam_sq:
                    break
                dom, _sign, _reg = wg.dominant_data(nu)
                m_nu = mult.get(dom, 0)
                if m_nu:
                    total += m_nu * _pairing_labels_root(rs, nu, p)
                j += 1
        denom = lam_shift_sq - rs.labels_norm_sq([m + 1 for m in mu])
        m_mu = 2 * total / denom
        if m_mu.denominator != 1 or m_mu <= 0:
            raise AssertionError(f"Freudenthal gave non-integer multiplicity {m_mu} at {mu}")
        mult[mu] = int(m_mu)

    ws = WeightSystem(lam, mult)
    with _WS_LOCK:
        _WS_CACHE[key] = ws
    return ws


def weyl_dim(rs: RootSystem, labels: Sequence[int]) -> int:
    """Dimension of the irrep: product over positive roots of k(l+d,a)/k(d,a)."""
    lam = [int(l) for l in labels]
    if any(l < 0 for l in lam):
        raise ValueError(f"{labels} is not dominant")
    shifted = [l + 1 for l in lam]
    ones = [1] * rs.rank
    out = Q(1)
    for p in range(rs.num_positive):
        out *= _pairing_labels_root(rs, shifted, p) / _pairing_labels_root(rs, ones, p)
    assert out.denominator == 1
    return int(out)


def tau(
    rs: RootSystem, wg: WeylGroup, lam: Sequence[int], lam2: Sequence[int], mu: Sequence[int]
) -> int:
    """Sign of the unique w with w(lam + mu + delta) = lam2 + delta, else 0."""
    v = tuple(a + b + 1 for a, b in zip(lam, mu))
    dom, sign, regular = wg.dominant_data(v)
    if not regular:
        return 0
    if dom != tuple(l + 1 for l in lam2):
        return 0
    return sign


def orbit_sum_t(
    rs: RootSystem, wg: WeylGroup, lam: Sequence[int], lam2: Sequence[int], mu: Sequence[int]
) -> int:
    """T(mu) = sum of tau over the Weyl orbit of the dominant weight mu."""
    return sum(tau(rs, wg, lam, lam2, mu2) for mu2 in wg.orbit_labels(mu))


def tensor_coeff(
    rs: RootSystem, wg: WeylGroup, lam_fac: Sequence[int], lam: Sequence[int], lam2: Sequence[int]
) -> int:
    """Multiplicity of the irrep lam2 inside (irrep lam_fac) tensor (irrep lam)."""
    ws = dominant_weight_system(rs, wg, lam_fac)
    total = sum(
        m * orbit_sum_t(rs, wg, lam, lam2, mu) for mu, m in ws.dominant_entries.items()
    )
    if total < 0:
        raise AssertionError("negative tensor multiplicity")
    return total
