"""Classical root systems in exact rational coordinates.

Families A, B, C, D are realized in orthonormal coordinates (A_n inside the
trace-zero hyperplane of an (n+1)-dimensional space, B/C/D in n dimensions).
The bilinear form is scaled so that short roots have squared length 2; this
normalization cancels in every reduced coefficient downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[Q, ...]
Labels = Tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _MIN_RANK:
            raise ValueError(f"unknown family {self.family!r}; expected one of A, B, C, D")
        if self.rank < _MIN_RANK[self.family]:
            raise ValueError(
                f"{self.family}_{self.rank} out of range; need rank >= {_MIN_RANK[self.family]}"
            )

    def __str__(self):
        return f"{self.family}{self.rank}"


def _vec(entries: Iterable) -> Vector:
    return tuple(Q(e) for e in entries)


def vec_add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vec_neg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def vec_scale(c, x: Vector) -> Vector:
    c = Q(c)
    return tuple(c * a for a in x)


def _simple_roots(t: LieType) -> List[Vector]:
    n = t.rank
    if t.family == "A":
        dim = n + 1
        e = lambda i: tuple(Q(1) if k == i else Q(0) for k in range(dim))
        return [vec_sub(e(i), e(i + 1)) for i in range(n)]
    e = lambda i: tuple(Q(1) if k == i else Q(0) for k in range(n))
    simple = [vec_sub(e(i), e(i + 1)) for i in range(n - 1)]
    if t.family == "B":
        simple.append(e(n - 1))
    elif t.family == "C":
        simple.append(vec_scale(2, e(n - 1)))
    else:  # D
        simple.append(vec_add(e(n - 2), e(n - 1)))
    return simple


def _all_positive_roots(t: LieType) -> List[Vector]:
    n = t.rank
    if t.family == "A":
        dim = n + 1
        e = lambda i: tuple(Q(1) if k == i else Q(0) for k in range(dim))
        return [vec_sub(e(i), e(j)) for i in range(dim) for j in range(dim) if i < j]
    e = lambda i: tuple(Q(1) if k == i else Q(0) for k in range(n))
    pos: List[Vector] = []
    for i, j in itertools.combinations(range(n), 2):
        pos.append(vec_sub(e(i), e(j)))
        pos.append(vec_add(e(i), e(j)))
    if t.family == "B":
        pos.extend(e(i) for i in range(n))
    elif t.family == "C":
        pos.extend(vec_scale(2, e(i)) for i in range(n))
    return pos


class RootSystem:
    """Root system with exact form, Dynkin-label conversions and named roots.

    Roots are indexed positives-first in lexicographic coordinate order;
    root index i + num_positive is the negative of root index i.
    """

    def __init__(self, lie_type: LieType):
        self.lie_type = lie_type
        n = lie_type.rank
        self.rank = n
        # k = form_scale * (dot product); chosen so short roots have k(a,a) = 2
        self.form_scale = Q(2) if lie_type.family == "B" else Q(1)

        positives = sorted(_all_positive_roots(lie_type))
        self.num_positive = len(positives)
        self.roots: List[Vector] = positives + [vec_neg(a) for a in positives]
        self.dim = len(self.roots[0])
        self.index: dict = {a: i for i, a in enumerate(self.roots)}
        self.simple_roots: List[Vector] = _simple_roots(lie_type)
        self.simple_indices: List[int] = [self.index[a] for a in self.simple_roots]

        half = vec_scale(Q(1, 2), _sum_vecs(positives, self.dim))
        self.delta: Vector = half

        self.root_norms: List[Q] = [self.pairing(a, a) for a in self.roots]
        # cartan[j][i] = <alpha_i, alpha_j^vee>
        self.cartan: List[List[int]] = [
            [int(2 * self.pairing(ai, aj) / self.pairing(aj, aj)) for ai in self.simple_roots]
            for aj in self.simple_roots
        ]
        self._root_labels: List[Labels] = [
            tuple(int(l) for l in self._labels_exact(a)) for a in self.roots
        ]
        # eagerly built so instances are immutable after construction
        self._fund_weights: Optional[List[Vector]] = None
        self._fund_gram: Optional[List[List[Q]]] = None
        self._reflection_perms: Optional[List[Tuple[int, ...]]] = None
        self.fundamental_gram()
        self.reflection_perms()

    # -- form and conversions ------------------------------------------------

    def pairing(self, a: Vector, b: Vector) -> Q:
        if len(a) != self.dim or len(b) != self.dim:
            raise ValueError("dimension mismatch")
        return self.form_scale * sum(x * y for x, y in zip(a, b))

    def norm_sq(self, a: Vector) -> Q:
        return self.pairing(a, a)

    def _labels_exact(self, x: Vector) -> Tuple[Q, ...]:
        return tuple(
            2 * self.pairing(x, aj) / self.pairing(aj, aj) for aj in self.simple_roots
        )

    def to_labels(self, x: Vector) -> Labels:
        """Dynkin labels of a weight-lattice vector; rejects non-lattice input."""
        if self.lie_type.family == "A" and sum(x) != 0:
            raise ValueError("vector is outside the trace-zero weight space of A_n")
        labels = self._labels_exact(x)
        if any(l.denominator != 1 for l in labels):
            raise ValueError(f"non-lattice weight: Dynkin labels {labels} are not integral")
        return tuple(int(l) for l in labels)

    def from_labels(self, labels: Sequence[int]) -> Vector:
        if len(labels) != self.rank:
            raise ValueError("label vector has wrong length")
        fw = self.fundamental_weights()
        out = tuple(Q(0) for _ in range(self.dim))
        for l, w in zip(labels, fw):
            if l:
                out = vec_add(out, vec_scale(l, w))
        return out

    def fundamental_weights(self) -> List[Vector]:
        if self._fund_weights is None:
            inv = _invert_rational([[Q(c) for c in row] for row in self.cartan])
            fw = []
            for i in range(self.rank):
                w = tuple(Q(0) for _ in range(self.dim))
                for m in range(self.rank):
                    if inv[m][i]:
                        w = vec_add(w, vec_scale(inv[m][i], self.simple_roots[m]))
                fw.append(w)
            self._fund_weights = fw
        return self._fund_weights

    def fundamental_gram(self) -> List[List[Q]]:
        """Gram matrix k(omega_i, omega_j) for norms in label space."""
        if self._fund_gram is None:
            fw = self.fundamental_weights()
            self._fund_gram = [[self.pairing(a, b) for b in fw] for a in fw]
        return self._fund_gram

    def labels_norm_sq(self, labels: Sequence) -> Q:
        g = self.fundamental_gram()
        n = self.rank
        return sum(labels[i] * g[i][j] * labels[j] for i in range(n) for j in range(n))

    def root_labels(self, i: int) -> Labels:
        return self._root_labels[i]

    @property
    def delta_labels(self) -> Labels:
        return tuple(1 for _ in range(self.rank))

    # -- roots ---------------------------------------------------------------

    def root_index(self, a: Vector) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise ValueError(f"{a} is not a root of {self.lie_type}") from None

    def negative_index(self, i: int) -> int:
        return i + self.num_positive if i < self.num_positive else i - self.num_positive

    def is_positive(self, i: int) -> bool:
        return i < self.num_positive

    def dual_root(self, a: Vector) -> Vector:
        self.root_index(a)
        return vec_scale(2 / self.pairing(a, a), a)

    def reflect(self, a: Vector, x: Vector) -> Vector:
        """Reflection of x in the hyperplane orthogonal to the root a."""
        self.root_index(a)
        c = 2 * self.pairing(a, x) / self.pairing(a, a)
        return vec_sub(x, vec_scale(c, a))

    def reflection_perms(self) -> List[Tuple[int, ...]]:
        """Permutation of root indices induced by each root's reflection."""
        if self._reflection_perms is None:
            perms = []
            for a in self.roots:
                perms.append(tuple(self.index[self.reflect(a, b)] for b in self.roots))
            self._reflection_perms = perms
        return self._reflection_perms

    def named_root(self, kind: str, l: int) -> Vector:
        """The distinguished roots alpha^A_l, alpha^B_l, alpha^C_l, tilde-alpha^C_l, alpha^D_l."""
        n = self.rank
        s = self.simple_roots
        hi = {"A": n, "B": n - 1, "C": n - 1, "C~": n - 1, "D": n - 3}
        if kind not in hi:
            raise ValueError(f"unknown named-root kind {kind!r}")
        if not 1 <= l <= hi[kind]:
            raise ValueError(f"index l={l} out of range for kind {kind} in rank {n}")
        i = l - 1
        if kind == "A":
            v = _sum_vecs(s[i:], self.dim)
        elif kind == "B":
            v = vec_add(s[i], vec_scale(2, _sum_vecs(s[i + 1 :], self.dim)))
        elif kind == "C":
            v = vec_add(vec_scale(2, _sum_vecs(s[i : n - 1], self.dim)), s[n - 1])
        elif kind == "C~":
            v = vec_add(
                vec_add(s[i], vec_scale(2, _sum_vecs(s[i + 1 : n - 1], self.dim))), s[n - 1]
            )
        else:  # D
            v = vec_add(
                vec_add(s[i], vec_scale(2, _sum_vecs(s[i + 1 : n - 2], self.dim))),
                vec_add(s[n - 2], s[n - 1]),
            )
        if v not in self.index:
            raise ValueError(f"named root kind {kind} is not defined for {self.lie_type}")
        return v


def _sum_vecs(vecs: Sequence[Vector], dim: int) -> Vector:
    out = [Q(0)] * dim
    for v in vecs:
        for k, a in enumerate(v):
            out[k] += a
    return tuple(out)


def _invert_rational(mat: List[List[Q]]) -> List[List[Q]]:
    n = len(mat)
    aug = [row[:] + [Q(1) if i == j else Q(0) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def build_root_system(t: LieType) -> RootSystem:
    """Construct the root system for a classical type, validating rank bounds."""
    return RootSystem(t)


_EXPECTED_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
}


def expected_root_count(t: LieType) -> int:
    return _EXPECTED_COUNT[t.family](t.rank)
