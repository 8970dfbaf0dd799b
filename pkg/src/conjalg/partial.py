"""Partial bijections between segments and local bijections of ``V_N``."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .errors import AmbientMismatch, DegreeMismatch, FamilyMismatch, SizeMismatch
from .perm import FamilyDescriptor, GroupElement, Permutation


@dataclass(frozen=True)
class PartialBijection:
    """A bijection between a subset of ``J_source`` and a subset of ``J_target``.

    ``pairs`` holds 1-based ``(x, y)`` pairs sorted by ``x``.
    """

    source: int
    target: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pairs = tuple(sorted((int(x), int(y)) for x, y in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        xs = [x for x, _ in pairs]
        ys = [y for _, y in pairs]
        if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
            raise ValueError(f"not injective: {pairs}")
        if any(not 1 <= x <= self.source for x in xs) or any(
            not 1 <= y <= self.target for y in ys
        ):
            raise ValueError(f"pairs out of range for J_{self.source} -> J_{self.target}")

    @property
    def rank(self) -> int:
        return len(self.pairs)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(x for x, _ in self.pairs)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(y for _, y in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def __call__(self, x: int) -> int:
        return self.as_dict()[x]

    def __mul__(self, other: PartialBijection) -> PartialBijection:
        """``(self * other)(w) = self(other(w))`` where defined."""
        if not isinstance(other, PartialBijection):
            return NotImplemented
        if self.source != other.target:
            raise SizeMismatch(
                f"cannot compose J_{self.source}->J_{self.target} after "
                f"J_{other.source}->J_{other.target}"
            )
        lam = self.as_dict()
        pairs = tuple((w, lam[y]) for w, y in other.pairs if y in lam)
        return PartialBijection(other.source, self.target, pairs)

    def inverse(self) -> PartialBijection:
        return PartialBijection(self.target, self.source, tuple((y, x) for x, y in self.pairs))

    def __str__(self):
        inner = ",".join(f"{x}->{y}" for x, y in self.pairs)
        return f"PB[{self.source}->{self.target}]{{{inner}}}"


def pb_count(k: int, n: int) -> int:
    return sum(comb(k, d) * comb(n, d) * factorial(d) for d in range(min(k, n) + 1))


@lru_cache(maxsize=None)
def _pb_enumerate(k: int, n: int) -> tuple[PartialBijection, ...]:
    out = []
    for d in range(min(k, n) + 1):
        batch = []
        for dom in itertools.combinations(range(1, k + 1), d):
            for img in itertools.permutations(range(1, n + 1), d):
                batch.append(tuple(zip(dom, img)))
        batch.sort()
        out.extend(PartialBijection(k, n, p) for p in batch)
    return tuple(out)


def pb_enumerate(k: int, n: int) -> list[PartialBijection]:
    """All partial bijections ``J_k -> J_n``, rank-major then lexicographic."""
    return list(_pb_enumerate(k, n))


def pb_product(lam: PartialBijection, mu: PartialBijection) -> PartialBijection:
    return lam * mu


def pb_inverse(lam: PartialBijection) -> PartialBijection:
    return lam.inverse()


def theta(n: int, k: int) -> PartialBijection:
    """The shift ``J_n -> J_{n+k}``, ``j -> j + k``."""
    return PartialBijection(n, n + k, tuple((j, j + k) for j in range(1, n + 1)))


# ---------------------------------------------------------------------------
# local bijections


@dataclass(frozen=True)
class LocalBijection:
    """A bijection of ``X u (I x omega)`` kept as its trivial extension to ``V_N``.

    ``omega`` is the declared column support (1-based, sorted); it may be
    larger than the set of columns actually moved.
    """

    omega: tuple[int, ...]
    element: GroupElement

    def __post_init__(self):
        omega = tuple(sorted(set(int(j) for j in self.omega)))
        object.__setattr__(self, "omega", omega)
        N = self.element.n
        if any(not 1 <= j <= N for j in omega):
            raise ValueError(f"support {omega} not inside J_{N}")
        moved = self.element.column_support()
        if not moved <= {j - 1 for j in omega}:
            raise ValueError("element moves columns outside the declared support")

    @classmethod
    def _trusted(cls, omega: tuple[int, ...], element: GroupElement) -> LocalBijection:
        lb = object.__new__(cls)
        object.__setattr__(lb, "omega", omega)
        object.__setattr__(lb, "element", element)
        return lb

    @classmethod
    def unit(cls, family: FamilyDescriptor, N: int) -> LocalBijection:
        return cls._trusted((), GroupElement.identity(family, N))

    @property
    def family(self) -> FamilyDescriptor:
        return self.element.family

    @property
    def N(self) -> int:
        return self.element.n

    def __mul__(self, other: LocalBijection) -> LocalBijection:
        if not isinstance(other, LocalBijection):
            return NotImplemented
        if self.family != other.family:
            raise FamilyMismatch(f"{self.family} vs {other.family}")
        if self.N != other.N:
            raise AmbientMismatch(f"ambients {self.N} and {other.N}")
        omega = tuple(sorted(set(self.omega) | set(other.omega)))
        return LocalBijection._trusted(omega, self.element * other.element)

    def conjugate(self, sigma: Permutation) -> LocalBijection:
        if sigma.degree != self.N:
            raise DegreeMismatch(f"conjugator degree {sigma.degree} != ambient {self.N}")
        omega = tuple(sorted(sigma.images[j - 1] + 1 for j in self.omega))
        return LocalBijection._trusted(omega, self.element.conjugate(sigma))

    def restrict(self, N: int) -> LocalBijection:
        return LocalBijection._trusted(self.omega, self.element.restrict(N))

    def to_json(self) -> str:
        return json.dumps(
            {"N": self.N, "Omega": list(self.omega), "body": self.element.literal(False)},
            sort_keys=True,
        )

    def __repr__(self):
        return f"<<{self.element.literal(False)}, {set(self.omega) or '{}'}>>@{self.N}"


def lb_product(a: LocalBijection, b: LocalBijection) -> LocalBijection:
    return a * b


def lb_conjugate(sigma: Permutation, a: LocalBijection) -> LocalBijection:
    return a.conjugate(sigma)


def iota(a: LocalBijection) -> GroupElement:
    """Forget the support."""
    return a.element
