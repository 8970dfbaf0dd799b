"""Two measurements about the finite elements ``A_N``.

* :func:`ambient_scalars` - the same permutation placed at two ambients
  ``n < n'`` gives proportional elements ``A_N``; the ratio is measured
  directly from the subset sums and compared with the falling factorial
  ``(N - n)! / (N - n')!``.
* :func:`span_index` - the index of the integer span of all ``A_N[c]``,
  ``c`` of ambient ``<= N``, inside the lattice of integer class functions
  on ``G_N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .conjugacy import ConjClass, canonicalize, class_enumerate
from .oracle import a_n_element
from .perm import FamilyDescriptor


@dataclass
class ScalarRow:
    literal: str
    n_low: int
    n_high: int
    N: int
    measured: int | None
    falling_factorial: int

    @property
    def matches(self) -> bool:
        return self.measured == self.falling_factorial


def measured_ratio(low: ConjClass, high: ConjClass, N: int) -> int | None:
    """``q`` with ``A_N[high] == q * A_N[low]``, or ``None`` if not proportional."""
    a_low, a_high = a_n_element(low, N), a_n_element(high, N)
    if not a_low:
        return None
    g, base = next(iter(a_low.items()))
    q, rem = divmod(a_high[g], base)
    if rem or q * a_low != a_high:
        return None
    return q


def ambient_scalars(family: FamilyDescriptor, N_max: int) -> list[ScalarRow]:
    rows = []
    for n_low in range(N_max + 1):
        for c in class_enumerate(family, n_low):
            for n_high in range(n_low + 1, N_max + 1):
                high = canonicalize(c.rep.embed(n_high))
                for N in range(n_high, N_max + 1):
                    rows.append(
                        ScalarRow(
                            c.rep.literal(False),
                            n_low,
                            n_high,
                            N,
                            measured_ratio(c, high, N),
                            factorial(N - n_low) // factorial(N - n_high),
                        )
                    )
    return rows


@dataclass
class SpanReport:
    N: int
    generators: int
    classes: int
    rank: int
    invariants: list[int]

    @property
    def index(self) -> int | None:
        """Index of the span in the class-function lattice (None if infinite)."""
        if self.rank < self.classes:
            return None
        out = 1
        for d in self.invariants:
            out *= d
        return out


def span_index(family: FamilyDescriptor, N: int) -> SpanReport:
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    targets = class_enumerate(family, N)
    vectors = []
    for n in range(N + 1):
        for c in class_enumerate(family, n):
            a = a_n_element(c, N)
            vectors.append([a[t.rep] for t in targets])
    m = Matrix(vectors)
    snf = smith_normal_form(m, domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d]
    return SpanReport(N, len(vectors), len(targets), len(nonzero), nonzero)
