"""The stable algebra of conjugacy classes.

Basis vectors are classes ``c`` of ``G_n`` for every ambient ``n``.  The
product of two basis vectors is a sum over all partial bijections
``lam: J_k -> J_n`` of the class obtained by overlapping the supports of the
two representatives along ``lam`` and composing (:func:`glue`).
"""
from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .conjugacy import ConjClass, canonicalize, class_inverse, identity_class
from .errors import FamilyMismatch, SizeMismatch, ZeroElement
from .partial import PartialBijection, pb_enumerate
from .perm import FamilyDescriptor, GroupElement


class AlgebraElement:
    """Finite integer combination of classes of one family.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("family", "_terms")

    def __init__(self, family: FamilyDescriptor, terms: Mapping[ConjClass, int] | None = None):
        self.family = family
        clean = {}
        for c, a in (terms or {}).items():
            if c.family != family:
                raise FamilyMismatch(f"class of {c.family} in element of {family}")
            if a:
                clean[c] = int(a)
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def basis(cls, c: ConjClass, coeff: int = 1) -> AlgebraElement:
        return cls(c.family, {c: coeff})

    @classmethod
    def of(cls, g: GroupElement) -> AlgebraElement:
        return cls.basis(canonicalize(g))

    @classmethod
    def zero(cls, family: FamilyDescriptor) -> AlgebraElement:
        return cls(family)

    @classmethod
    def unit(cls, family: FamilyDescriptor) -> AlgebraElement:
        return cls.basis(identity_class(family, 0))

    @property
    def terms(self) -> dict[ConjClass, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[ConjClass, int]]:
        return iter(self._terms.items())

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, c: ConjClass) -> int:
        return self._terms.get(c, 0)

    def _check(self, other: AlgebraElement):
        if self.family != other.family:
            raise FamilyMismatch(f"{self.family} vs {other.family}")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.family == other.family and self._terms == other._terms

    def __hash__(self):
        return hash((self.family, tuple(self._terms.items())))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        acc = Counter(self._terms)
        acc.update(other._terms)
        return AlgebraElement(self.family, acc)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.family, {c: -a for c, a in self._terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __rmul__(self, scalar: int) -> AlgebraElement:
        return AlgebraElement(self.family, {c: scalar * a for c, a in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return star(self, other)
        return NotImplemented

    def part(self, n: int) -> AlgebraElement:
        """Terms of ambient exactly ``n``."""
        return AlgebraElement(self.family, {c: a for c, a in self._terms.items() if c.n == n})

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "terms": [
                {"n": c.n, "rep": c.literal, "key": c.key, "coeff": a}
                for c, a in self._terms.items()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> AlgebraElement:
        from .perm import parse_element

        family = FamilyDescriptor.from_json(obj["family"])
        terms: Counter = Counter()
        for t in obj["terms"]:
            terms[canonicalize(parse_element(family, t["rep"]))] += int(t["coeff"])
        return cls(family, terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for c, a in self._terms.items():
            parts.append(f"{a}*B[{c.literal}]")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"AlgebraElement({self.family}, {self})"


# ---------------------------------------------------------------------------
# gluing


def canonical_injections(lam: PartialBijection) -> tuple[list[int], list[int], int]:
    """The fixed admissible pair for ``lam: J_k -> J_n``.

    Returns 0-based ``(sigma0, tau0, M)`` with ``sigma0`` the inclusion of
    ``J_n`` into ``J_M``, ``tau0`` equal to ``lam`` on its domain and sending
    the rest of ``J_k`` increasingly onto ``J_M \\ J_n``; ``M = n + k - rank``.
    """
    k, n = lam.source, lam.target
    M = n + k - lam.rank
    lam_map = lam.as_dict()
    tau0 = []
    nxt = n
    for x in range(1, k + 1):
        if x in lam_map:
            tau0.append(lam_map[x] - 1)
        else:
            tau0.append(nxt)
            nxt += 1
    return list(range(n)), tau0, M


def glue_element(g: GroupElement, h: GroupElement, lam: PartialBijection) -> GroupElement:
    """Representative ``sigma0 g sigma0^-1 . tau0 h tau0^-1`` in ``G_{n+k-d}``."""
    if g.family != h.family:
        raise FamilyMismatch(f"{g.family} vs {h.family}")
    if lam.source != h.n or lam.target != g.n:
        raise SizeMismatch(
            f"partial bijection J_{lam.source}->J_{lam.target} does not match "
            f"ambients k={h.n}, n={g.n}"
        )
    sigma0, tau0, M = canonical_injections(lam)
    return g.transport(sigma0, M) * h.transport(tau0, M)


def glue(g: GroupElement, h: GroupElement, lam: PartialBijection) -> ConjClass:
    return canonicalize(glue_element(g, h, lam))


def _basis_terms(g: GroupElement, h: GroupElement, lams: Iterable[PartialBijection]) -> Counter:
    out: Counter = Counter()
    for lam in lams:
        out[glue(g, h, lam)] += 1
    return out


def _basis_terms_job(args) -> list[tuple[GroupElement, int]]:
    g, h, lams = args
    return [(c.rep, a) for c, a in _basis_terms(g, h, lams).items()]


_STAR: dict[tuple[ConjClass, ConjClass], dict[ConjClass, int]] = {}


def basis_products(pairs: Iterable[tuple[ConjClass, ConjClass]], workers: int = 1) -> None:
    """Fill the basis-product cache for ``pairs``.

    With ``workers > 1`` the partial bijections of every missing pair are
    split into chunks and glued in a process pool; chunk results are merged
    by class, so the outcome does not depend on scheduling.
    """
    todo = []
    for c1, c2 in pairs:
        if c1.family != c2.family:
            raise FamilyMismatch(f"{c1.family} vs {c2.family}")
        if (c1, c2) not in _STAR:
            todo.append((c1, c2))
    todo = list(dict.fromkeys(todo))
    if not todo:
        return
    if workers <= 1:
        for c1, c2 in todo:
            terms = _basis_terms(c1.rep, c2.rep, pb_enumerate(c2.n, c1.n))
            _STAR[(c1, c2)] = dict(sorted(terms.items()))
        return
    jobs, owners = [], []
    for c1, c2 in todo:
        lams = pb_enumerate(c2.n, c1.n)
        for i in range(workers):
            chunk = lams[i::workers]
            if chunk:
                jobs.append((c1.rep, c2.rep, chunk))
                owners.append((c1, c2))
    acc: dict = {pair: Counter() for pair in todo}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for pair, part in zip(owners, pool.map(_basis_terms_job, jobs)):
            for rep, a in part:
                acc[pair][canonicalize(rep)] += a
    for pair, terms in acc.items():
        _STAR[pair] = dict(sorted(terms.items()))


def basis_star(c1: ConjClass, c2: ConjClass, workers: int = 1) -> AlgebraElement:
    basis_products([(c1, c2)], workers)
    return AlgebraElement(c1.family, _STAR[(c1, c2)])


def _bilinear(u: AlgebraElement, v: AlgebraElement, basis_op) -> AlgebraElement:
    u._check(v)
    acc: Counter = Counter()
    for c1, a in u.items():
        for c2, b in v.items():
            for c, x in basis_op(c1, c2).items():
                acc[c] += a * b * x
    return AlgebraElement(u.family, acc)


def star(u: AlgebraElement, v: AlgebraElement, workers: int = 1) -> AlgebraElement:
    """The associative product, summing gluings over all partial bijections."""
    u._check(v)
    basis_products([(c1, c2) for c1 in u for c2 in v], workers)
    return _bilinear(u, v, lambda c1, c2: AlgebraElement(u.family, _STAR[(c1, c2)]))


def involution(u: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(u.family, {class_inverse(c): a for c, a in u.items()})


def degree(u: AlgebraElement) -> int:
    if not u:
        raise ZeroElement("degree of the zero element is undefined")
    return max(c.n for c in u)


def _basis_bullet(c1: ConjClass, c2: ConjClass) -> AlgebraElement:
    empty = PartialBijection(c2.n, c1.n, ())
    return AlgebraElement.basis(glue(c1.rep, c2.rep, empty))


def bullet(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Product of the associated graded algebra (rank-0 gluing only)."""
    return _bilinear(u, v, _basis_bullet)


@lru_cache(maxsize=None)
def _basis_bracket(c1: ConjClass, c2: ConjClass) -> AlgebraElement:
    acc: Counter = Counter()
    g, h = c1.rep, c2.rep
    for lam in pb_enumerate(h.n, g.n):
        if lam.rank != 1:
            continue
        acc[glue(g, h, lam)] += 1
        acc[glue(h, g, lam.inverse())] -= 1
    return AlgebraElement(c1.family, acc)


def bracket_graded(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Lie bracket on the graded algebra, from the rank-1 gluings."""
    return _bilinear(u, v, _basis_bracket)
