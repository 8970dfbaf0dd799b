"""Finite brute-force models at a fixed ambient ``N``.

``A_N[c]`` lives in the group algebra of ``G_N``; ``B_N[c]`` lives in the
semigroup algebra of local bijections of ``V_N``.  Both are built from the
sum over ``n``-subsets ``Omega`` of ``J_N`` and bijections ``J_n -> Omega``,
so every coefficient stays an integer.  These models know nothing about
gluing; they are the independent check for :mod:`conjalg.algebra`.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Generic, Iterable, Mapping, TypeVar

from .algebra import AlgebraElement, star
from .conjugacy import ENUM_LIMIT, ConjClass, group_size
from .errors import AmbientMismatch, FamilyMismatch, GrowNotAllowed, ResourceGuard
from .partial import LocalBijection
from .perm import FamilyDescriptor, GroupElement

T = TypeVar("T", GroupElement, LocalBijection)


class _Sparse(Generic[T]):
    __slots__ = ("family", "N", "_terms")

    def __init__(self, family: FamilyDescriptor, N: int, terms: Mapping[T, int] | None = None):
        self.family = family
        self.N = N
        clean = {}
        for x, a in (terms or {}).items():
            if a:
                clean[x] = int(a)
        self._terms = clean

    @property
    def terms(self) -> dict[T, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, x: T) -> int:
        return self._terms.get(x, 0)

    def mass(self) -> int:
        return sum(self._terms.values())

    def _check(self, other):
        if self.family != other.family:
            raise FamilyMismatch(f"{self.family} vs {other.family}")
        if self.N != other.N:
            raise AmbientMismatch(f"ambients {self.N} and {other.N}")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.family == other.family and self.N == other.N and self._terms == other._terms

    def __add__(self, other):
        self._check(other)
        acc = Counter(self._terms)
        acc.update(other._terms)
        return type(self)(self.family, self.N, acc)

    def __rmul__(self, scalar: int):
        return type(self)(self.family, self.N, {x: scalar * a for x, a in self._terms.items()})

    def __mul__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._check(other)
        acc: Counter = Counter()
        for x, a in self._terms.items():
            for y, b in other._terms.items():
                acc[x * y] += a * b
        return type(self)(self.family, self.N, acc)

    def __repr__(self):
        return f"{type(self).__name__}({self.family}, N={self.N}, {len(self)} terms)"


class GroupAlgebraElement(_Sparse[GroupElement]):
    """Integer combination of elements of ``G_N``."""

    @classmethod
    def single(cls, g: GroupElement, coeff: int = 1) -> GroupAlgebraElement:
        return cls(g.family, g.n, {g: coeff})

    def conjugate(self, tau) -> GroupAlgebraElement:
        return GroupAlgebraElement(
            self.family, self.N, {g.conjugate(tau): a for g, a in self._terms.items()}
        )


class LocalBijAlgebraElement(_Sparse[LocalBijection]):
    """Integer combination of local bijections of ``V_N``."""

    @classmethod
    def single(cls, a: LocalBijection, coeff: int = 1) -> LocalBijAlgebraElement:
        return cls(a.family, a.N, {a: coeff})

    def conjugate(self, tau) -> LocalBijAlgebraElement:
        return LocalBijAlgebraElement(
            self.family, self.N, {x.conjugate(tau): a for x, a in self._terms.items()}
        )


def _placements(n: int, N: int):
    """Pairs ``(Omega, sigma)``: ``Omega`` an n-subset of J_N, ``sigma: J_n -> Omega``."""
    for omega in itertools.combinations(range(N), n):
        for sigma in itertools.permutations(omega):
            yield omega, sigma


def a_n_element(c: ConjClass, N: int) -> GroupAlgebraElement:
    acc: Counter = Counter()
    if N >= c.n:
        for _, sigma in _placements(c.n, N):
            acc[c.rep.transport(sigma, N)] += 1
    return GroupAlgebraElement(c.family, N, acc)


def b_n_element(c: ConjClass, N: int) -> LocalBijAlgebraElement:
    acc: Counter = Counter()
    if N >= c.n:
        for omega, sigma in _placements(c.n, N):
            support = tuple(j + 1 for j in omega)
            acc[LocalBijection._trusted(support, c.rep.transport(sigma, N))] += 1
    return LocalBijAlgebraElement(c.family, N, acc)


def ga_convolve(F: GroupAlgebraElement, G: GroupAlgebraElement) -> GroupAlgebraElement:
    return F * G


def lba_convolve(F: LocalBijAlgebraElement, G: LocalBijAlgebraElement) -> LocalBijAlgebraElement:
    return F * G


def lba_project(F: LocalBijAlgebraElement, N: int) -> LocalBijAlgebraElement:
    """Keep terms supported inside ``J_N`` and view them at ambient ``N``."""
    if N > F.N:
        raise GrowNotAllowed(f"cannot project ambient {F.N} onto {N}")
    kept = {
        x.restrict(N): a for x, a in F.items() if not x.omega or x.omega[-1] <= N
    }
    return LocalBijAlgebraElement(F.family, N, kept)


def lba_iota(F: LocalBijAlgebraElement) -> GroupAlgebraElement:
    acc: Counter = Counter()
    for x, a in F.items():
        acc[x.element] += a
    return GroupAlgebraElement(F.family, F.N, acc)


def expand_a(u: AlgebraElement, N: int) -> GroupAlgebraElement:
    """Image of a stable element at ambient ``N``: ``sum a_r A_N[r]``."""
    acc = GroupAlgebraElement(u.family, N)
    for c, a in u.items():
        acc = acc + a * a_n_element(c, N)
    return acc


def expand_b(u: AlgebraElement, N: int) -> LocalBijAlgebraElement:
    acc = LocalBijAlgebraElement(u.family, N)
    for c, a in u.items():
        acc = acc + a * b_n_element(c, N)
    return acc


# ---------------------------------------------------------------------------
# stability reports


def check_guard(family: FamilyDescriptor, N: int, override: bool = False):
    if not override and group_size(family, N) > ENUM_LIMIT:
        raise ResourceGuard(
            f"N = {N} for {family} exceeds the oracle guard (|G_N| > {ENUM_LIMIT})"
        )


@dataclass
class StabilityCheck:
    N: int
    passed: bool
    lhs_terms: int
    rhs_terms: int


@dataclass
class StabilityReport:
    family: FamilyDescriptor
    g: ConjClass
    h: ConjClass
    constants: AlgebraElement
    checks: list[StabilityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "g": self.g.literal,
            "h": self.h.literal,
            "constants": [{"r": c.literal, "coeff": a} for c, a in self.constants.items()],
            "checks": [
                {"N": ch.N, "pass": ch.passed, "lhs_terms": ch.lhs_terms, "rhs_terms": ch.rhs_terms}
                for ch in self.checks
            ],
        }

    def table(self) -> str:
        lines = [
            f"family {self.family}: B[{self.g.literal}] * B[{self.h.literal}] = {self.constants}",
            f"{'N':>3}  {'lhs_terms':>9}  {'rhs_terms':>9}  result",
        ]
        for ch in self.checks:
            lines.append(
                f"{ch.N:>3}  {ch.lhs_terms:>9}  {ch.rhs_terms:>9}  {'pass' if ch.passed else 'FAIL'}"
            )
        return "\n".join(lines)


def verify_stability(
    g: ConjClass, h: ConjClass, N_range: Iterable[int], override: bool = False, workers: int = 1
) -> StabilityReport:
    """Compare ``A_N[g] * A_N[h]`` with ``sum_r a_r A_N[r]`` for each ``N``."""
    if g.family != h.family:
        raise FamilyMismatch(f"{g.family} vs {h.family}")
    Ns = list(N_range)
    for N in Ns:
        check_guard(g.family, N, override)
    constants = star(AlgebraElement.basis(g), AlgebraElement.basis(h), workers)
    report = StabilityReport(g.family, g, h, constants)
    for N in Ns:
        lhs = a_n_element(g, N) * a_n_element(h, N)
        rhs = expand_a(constants, N)
        report.checks.append(StabilityCheck(N, lhs == rhs, len(lhs), len(rhs)))
    return report


def verify_local_stability(g: ConjClass, h: ConjClass, N: int) -> bool:
    """The same identity one level up, in the local-bijection algebra."""
    constants = star(AlgebraElement.basis(g), AlgebraElement.basis(h))
    return b_n_element(g, N) * b_n_element(h, N) == expand_b(constants, N)
