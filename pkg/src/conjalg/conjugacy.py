"""Classes of ``G_n`` under conjugation by ``K_n = S_n``.

``K_n`` permutes columns simultaneously in every row and fixes the labels.
A class is represented by the conjugate whose encoding (see
:meth:`GroupElement.encoding`) is lexicographically smallest.  The search
is exhaustive over all ``n!`` conjugators; it is vectorized, and at every
encoding position candidates whose prefix already exceeds the running
minimum are discarded.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np

from .errors import CapExceeded
from .perm import FamilyDescriptor, GroupElement, Permutation

DEFAULT_CAP = 10


def set_cap(n: int) -> None:
    """Change the ambient cap used when no explicit ``cap`` is passed."""
    global DEFAULT_CAP
    DEFAULT_CAP = n


@dataclass(frozen=True, order=True)
class ConjClass:
    """A ``K_n``-conjugacy class; equality is by ``(family, n, key)``."""

    key: str
    family: FamilyDescriptor = field(compare=False)
    n: int = field(compare=False)
    rep: GroupElement = field(compare=False, repr=False)

    # key already encodes n; family is compared explicitly
    def __eq__(self, other):
        if not isinstance(other, ConjClass):
            return NotImplemented
        return self.key == other.key and self.family == other.family

    def __hash__(self):
        return hash((self.key, self.family))

    @property
    def literal(self) -> str:
        return self.rep.literal()

    def to_json(self) -> dict:
        return {"family": self.family.literal, "n": self.n, "rep": self.literal, "key": self.key}

    def __repr__(self):
        return f"ConjClass({self.family}, {self.literal})"


@lru_cache(maxsize=16)
def _conjugators(n: int, n_fixed: int) -> tuple[np.ndarray, np.ndarray]:
    """All column permutations of ``J_n`` extended to ``X u J_n``, and inverses."""
    count = factorial(n)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int16).reshape(count, n)
    fixed = np.broadcast_to(np.arange(n_fixed, dtype=np.int16), (count, n_fixed))
    tau = np.ascontiguousarray(np.concatenate([fixed, perms + n_fixed], axis=1))
    tau_inv = np.argsort(tau, axis=1).astype(np.int16)
    return tau, tau_inv


def _conjugate_rows(g: GroupElement, tau: np.ndarray, tau_inv: np.ndarray) -> np.ndarray:
    """Encodings of ``t g t^-1`` for each row ``t`` of ``tau``."""
    parts = []
    for r in g.rows:
        img = np.asarray(r.images, dtype=np.int16)
        parts.append(np.take_along_axis(tau, img[tau_inv], axis=1))
    return np.concatenate(parts, axis=1)


def _check_cap(n: int, cap: int | None):
    limit = DEFAULT_CAP if cap is None else cap
    if n > limit:
        raise CapExceeded(f"ambient {n} exceeds canonicalization cap {limit}")


_CANON: dict[tuple, ConjClass] = {}


def _make_class(rep: GroupElement) -> ConjClass:
    return ConjClass(rep.key(), rep.family, rep.n, rep)


def _rows_from_encoding(g: GroupElement, enc) -> GroupElement:
    deg = g.family.row_degree(g.n)
    rows = tuple(
        Permutation._trusted(tuple(int(v) for v in enc[i * deg:(i + 1) * deg]))
        for i in range(len(g.rows))
    )
    return GroupElement._trusted(g.family, g.n, rows)


def canonicalize(g: GroupElement, cap: int | None = None) -> ConjClass:
    """Class of ``g`` with the lexicographically minimal conjugate as representative."""
    _check_cap(g.n, cap)
    cache_key = (g.family, g.n, g.encoding())
    hit = _CANON.get(cache_key)
    if hit is not None:
        return hit
    if g.n <= 1:
        cls = _make_class(g)
    else:
        tau, tau_inv = _conjugators(g.n, g.family.n_fixed)
        deg = g.family.row_degree(g.n)
        cand = np.arange(tau.shape[0])
        for r in g.rows:
            img = np.asarray(r.images, dtype=np.int16)
            for p in range(deg):
                if cand.size == 1:
                    break
                vals = tau[cand, img[tau_inv[cand, p]]]
                cand = cand[vals == vals.min()]
        best = tau[cand[0], g.family.n_fixed:] - g.family.n_fixed
        rep = g.conjugate(Permutation._trusted(tuple(int(v) for v in best)))
        cls = _make_class(rep)
    _CANON[cache_key] = cls
    return cls


def orbit(g: GroupElement, cap: int | None = None) -> set[tuple[int, ...]]:
    """Encodings of all ``K_n``-conjugates of ``g``."""
    _check_cap(g.n, cap)
    tau, tau_inv = _conjugators(g.n, g.family.n_fixed)
    enc = _conjugate_rows(g, tau, tau_inv)
    return {tuple(int(v) for v in row) for row in np.unique(enc, axis=0)}


def group_size(family: FamilyDescriptor, n: int) -> int:
    if family.kind == "full":
        return factorial(n + family.n_fixed)
    return factorial(n) ** family.m


def iter_group(family: FamilyDescriptor, n: int):
    """All elements of ``G_n`` in a deterministic order."""
    deg = family.row_degree(n)
    perms = [Permutation._trusted(p) for p in itertools.permutations(range(deg))]
    for rows in itertools.product(perms, repeat=family.rows):
        yield GroupElement._trusted(family, n, rows)


ENUM_LIMIT = 14400


def _check_enum(family: FamilyDescriptor, n: int, override: bool):
    if override:
        return
    size = group_size(family, n)
    if size > ENUM_LIMIT:
        raise CapExceeded(
            f"|G_{n}| = {size} for {family} exceeds the enumeration guard {ENUM_LIMIT}"
        )


def class_sizes(family: FamilyDescriptor, n: int, override: bool = False) -> dict[ConjClass, int]:
    """Map each class of ``G_n`` to its number of elements."""
    _check_enum(family, n, override)
    seen: set[tuple[int, ...]] = set()
    sizes: dict[ConjClass, int] = {}
    for g in iter_group(family, n):
        enc = g.encoding()
        if enc in seen:
            continue
        orb = orbit(g, cap=max(n, DEFAULT_CAP))
        seen |= orb
        rep = _rows_from_encoding(g, min(orb))
        sizes[_make_class(rep)] = len(orb)
    return dict(sorted(sizes.items()))


def class_enumerate(family: FamilyDescriptor, n: int, override: bool = False) -> list[ConjClass]:
    """All classes of ``G_n``, sorted by key."""
    return list(class_sizes(family, n, override))


def classes_up_to(family: FamilyDescriptor, n_max: int) -> list[ConjClass]:
    out = []
    for n in range(n_max + 1):
        out.extend(class_enumerate(family, n))
    return out


def class_inverse(c: ConjClass) -> ConjClass:
    return canonicalize(c.rep.inverse(), cap=max(c.n, DEFAULT_CAP))


def identity_class(family: FamilyDescriptor, n: int = 0) -> ConjClass:
    return canonicalize(GroupElement.identity(family, n))
