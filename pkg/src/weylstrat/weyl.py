"""Weyl groups as permutations of the root index set.

Elements carry the induced integer matrix on Dynkin labels, so the linear
action on arbitrary weights stays exact and cheap. Groups at rank <= 5 are
small enough (|W| <= a few thousand) to enumerate and store completely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .rootsys import Labels, RootSystem, Vector

IntMatrix = Tuple[Tuple[int, ...], ...]


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _mat_vec(m: IntMatrix, v: Sequence[int]) -> Labels:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in m)


@dataclass(frozen=True)
class WeylElement:
    index: int
    perm: Tuple[int, ...]
    sign: int
    label_mat: IntMatrix
    length: int

    def apply_index(self, i: int) -> int:
        return self.perm[i]

    def apply_labels(self, labels: Sequence[int]) -> Labels:
        return _mat_vec(self.label_mat, labels)


class WeylGroup:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        nroots = len(rs.roots)
        refl = rs.reflection_perms()
        gen_perms = [refl[i] for i in rs.simple_indices]
        # label action of s_i:  l_j -> l_j - l_i * cartan[j][i]
        gen_mats: List[IntMatrix] = []
        for i in range(n):
            m = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            for j in range(n):
                m[j][i] -= rs.cartan[j][i]
            gen_mats.append(tuple(tuple(row) for row in m))
        self.generator_mats = gen_mats

        ident = tuple(range(nroots))
        ident_mat = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
        elements = [WeylElement(0, ident, 1, ident_mat, 0)]
        lookup: Dict[Tuple[int, ...], int] = {ident: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for ei in frontier:
                e = elements[ei]
                for gi in range(n):
                    gp = gen_perms[gi]
                    perm = tuple(gp[p] for p in e.perm)
                    if perm in lookup:
                        continue
                    idx = len(elements)
                    elements.append(
                        WeylElement(
                            idx,
                            perm,
                            -e.sign,
                            _mat_mul(gen_mats[gi], e.label_mat),
                            e.length + 1,
                        )
                    )
                    lookup[perm] = idx
                    nxt.append(idx)
            frontier = nxt
        self.elements: List[WeylElement] = elements
        self._lookup = lookup
        self.identity = elements[0]
        self.generators: List[WeylElement] = [elements[lookup[p]] for p in gen_perms]
        self._inverse_index = [lookup[_invert_perm(e.perm)] for e in elements]

    def __len__(self):
        return len(self.elements)

    def element_from_perm(self, perm: Tuple[int, ...]) -> WeylElement:
        return self.elements[self._lookup[perm]]

    def compose(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """The element a*b acting as: apply b first, then a."""
        return self.elements[self._lookup[tuple(a.perm[p] for p in b.perm)]]

    def inverse(self, a: WeylElement) -> WeylElement:
        return self.elements[self._inverse_index[a.index]]

    def reflection(self, root_index: int) -> WeylElement:
        return self.elements[self._lookup[self.rs.reflection_perms()[root_index]]]

    # -- orbits and dominance ------------------------------------------------

    def orbit_labels(self, labels: Sequence[int]) -> List[Labels]:
        start = tuple(labels)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for lab in frontier:
                for m in self.generator_mats:
                    img = _mat_vec(m, lab)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return sorted(seen)

    def orbit(self, x: Vector) -> List[Vector]:
        return [self.rs.from_labels(l) for l in self.orbit_labels(self.rs.to_labels(x))]

    def dominant_data(self, labels: Sequence[int]) -> Tuple[Labels, int, bool]:
        """Dominant representative, the sign of a mapping element, regularity.

        Regularity is with respect to the input point itself: True iff no
        Weyl element fixes it (no zero label on the dominant representative).
        """
        cur = tuple(labels)
        sign = 1
        while True:
            i = next((j for j, l in enumerate(cur) if l < 0), None)
            if i is None:
                return cur, sign, all(l != 0 for l in cur)
            cur = _mat_vec(self.generator_mats[i], cur)
            sign = -sign

    def dominant_representative(self, x: Vector) -> Tuple[Vector, WeylElement]:
        """Pair (d, w) with w(x) = d dominant."""
        cur = self.rs.to_labels(x)
        w = self.identity
        while True:
            i = next((j for j, l in enumerate(cur) if l < 0), None)
            if i is None:
                return self.rs.from_labels(cur), w
            cur = _mat_vec(self.generator_mats[i], cur)
            w = self.compose(self.generators[i], w)

    # -- subgroups and cosets ------------------------------------------------

    def setwise_stabilizer(self, root_indices: Iterable[int]) -> List[WeylElement]:
        target = frozenset(root_indices)
        if not target:
            return list(self.elements)
        return [
            e for e in self.elements if frozenset(e.perm[i] for i in target) == target
        ]

    def coset_representatives(self, subgroup: Sequence[WeylElement]) -> List[WeylElement]:
        """Minimal-length representatives of the right cosets (subgroup)*w."""
        sub = list(subgroup)
        ids = {e.index for e in sub}
        for a in sub:
            for b in sub:
                if self.compose(a, b).index not in ids:
                    raise ValueError("element list is not closed under composition")
        if len(self) % len(sub):
            raise ValueError("element list is not a subgroup (order does not divide |W|)")
        reps = []
        seen = set()
        for e in self.elements:  # BFS order, so first hit per coset has minimal length
            key = min(self.compose(h, e).perm for h in sub)
            if key not in seen:
                seen.add(key)
                reps.append(e)
        return reps


def _invert_perm(perm: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def generate_group(rs: RootSystem) -> WeylGroup:
    """Enumerate the full Weyl group by closure over the simple reflections."""
    return WeylGroup(rs)


def expected_group_order(rs: RootSystem) -> int:
    n = rs.rank
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    return {
        "A": fact * (n + 1),
        "B": (1 << n) * fact,
        "C": (1 << n) * fact,
        "D": (1 << (n - 1)) * fact,
    }[rs.lie_type.family]
