"""Finitely supported permutations and the group families G_n.

Conventions used throughout the package:

* permutations store 0-based images internally; everything user facing
  (cycle literals, image lists in JSON, point coordinates) is 1-based;
* products compose right-to-left, ``(a * b)(x) == a(b(x))``;
* the ambient size ``n`` of a group element is data, never recovered from
  the support.

Two families over ``V_n = X u (I x J_n)`` are supported.  ``Product(m)`` has
no fixed labels and ``m`` rows; an element is an ``m``-tuple of
permutations of the columns, one per row.  ``Full(X)`` has one row and the
whole of ``S(X u J_n)`` as ``G_n``; internally its single row is a
permutation of ``|X| + n`` points with the labels first (declaration order)
and the columns after them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    DegreeMismatch,
    DuplicateEntry,
    FamilyMismatch,
    ParseError,
    PointOutOfRange,
    RangeError,
    ShrinkNotAllowed,
)


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation: {imgs}")

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        # skips validation; callers guarantee bijectivity
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> Permutation:
        return cls(tuple(int(v) - 1 for v in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        a = self.images
        return Permutation._trusted(tuple(a[y] for y in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, y in enumerate(self.images):
            inv[y] = i
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == y for i, y in enumerate(self.images))

    def extend(self, degree: int) -> Permutation:
        if degree < self.degree:
            raise ShrinkNotAllowed(f"cannot shrink degree {self.degree} to {degree}")
        return Permutation._trusted(self.images + tuple(range(self.degree, degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        seen = [False] * self.degree
        lengths = []
        for start in range(self.degree):
            if seen[start]:
                continue
            k, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                k += 1
            lengths.append(k)
        return tuple(sorted(lengths, reverse=True))

    def num_cycles(self) -> int:
        return len(self.cycle_type())

    def to_cycles(self, names: Sequence[str] | None = None) -> str:
        cyc = self.cycles()
        if not cyc:
            return "e"
        if names is None:
            names = [str(i + 1) for i in range(self.degree)]
        return "".join("(" + " ".join(names[x] for x in c) + ")" for c in cyc)

    def one_based(self) -> list[int]:
        return [y + 1 for y in self.images]

    def __repr__(self):
        return f"Permutation({self.to_cycles()}, degree={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycle_tokens(text: str) -> list[list[str]]:
    text = text.strip()
    if text == "e":
        return []
    if not text:
        raise ParseError("empty cycle literal")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ParseError(f"unexpected text {text[pos:m.start()]!r} in {text!r}")
        tokens = m.group(1).split()
        if not tokens:
            raise ParseError(f"empty cycle in {text!r}")
        cycles.append(tokens)
        pos = m.end()
    if text[pos:].strip() or not cycles:
        raise ParseError(f"cannot parse cycle literal {text!r}")
    return cycles


def _cycles_to_images(cycles: list[list[int]], degree: int) -> tuple[int, ...]:
    images = list(range(degree))
    seen = set()
    for cyc in cycles:
        for x in cyc:
            if x in seen:
                raise DuplicateEntry(f"point {x + 1} repeated")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    return tuple(images)


def perm_from_cycles(text: str, degree: int) -> Permutation:
    """Parse ``"e"`` or ``"(1 2 3)(4 5)"`` into a permutation of the given degree."""
    cycles = []
    for tokens in _parse_cycle_tokens(text):
        cyc = []
        for t in tokens:
            if not t.isdigit() or int(t) < 1:
                raise ParseError(f"bad token {t!r}")
            if int(t) > degree:
                raise RangeError(f"entry {t} exceeds degree {degree}")
            cyc.append(int(t) - 1)
        cycles.append(cyc)
    return Permutation._trusted(_cycles_to_images(cycles, degree))


def perm_product(a: Permutation, b: Permutation) -> Permutation:
    return a * b


# ---------------------------------------------------------------------------
# families and points


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: str  # "product" or "full"
    m: int = 1
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.kind not in ("product", "full"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        if self.kind == "product" and self.labels:
            raise ValueError("Product families have no fixed labels")
        if self.kind == "full" and self.m != 1:
            raise ValueError("Full families have a single row")
        for lab in self.labels:
            if not lab or lab == "e" or lab.isdigit() or any(c in lab for c in " ()|@,:;+*"):
                raise ValueError(f"invalid label {lab!r}")

    @classmethod
    def product(cls, m: int) -> FamilyDescriptor:
        return cls("product", m, ())

    @classmethod
    def full(cls, labels: Iterable[str]) -> FamilyDescriptor:
        return cls("full", 1, tuple(labels))

    @property
    def n_fixed(self) -> int:
        return len(self.labels)

    @property
    def rows(self) -> int:
        return self.m if self.kind == "product" else 1

    def row_degree(self, n: int) -> int:
        return n + self.n_fixed

    def point_names(self, n: int) -> list[str]:
        return list(self.labels) + [str(j + 1) for j in range(n)]

    @property
    def literal(self) -> str:
        if self.kind == "full":
            return "full:" + ",".join(self.labels)
        if self.m in (1, 2):
            return f"s{self.m}"
        return f"sm:{self.m}"

    def to_json(self) -> dict:
        if self.kind == "full":
            return {"kind": "full", "labels": list(self.labels)}
        return {"kind": "product", "m": self.m}

    @classmethod
    def from_json(cls, obj: dict) -> FamilyDescriptor:
        if obj["kind"] == "full":
            return cls.full(obj["labels"])
        return cls.product(int(obj["m"]))

    @classmethod
    def parse(cls, text: str) -> FamilyDescriptor:
        text = text.strip()
        if text == "s1":
            return cls.product(1)
        if text == "s2":
            return cls.product(2)
        try:
            if text.startswith("sm:"):
                return cls.product(int(text[3:]))
            if text.startswith("full:"):
                body = text[5:]
                return cls.full([s.strip() for s in body.split(",")] if body else [])
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        raise ParseError(f"unknown family literal {text!r}")

    def __str__(self):
        return self.literal


@dataclass(frozen=True)
class Column:
    """Point ``(row, column)`` of ``I x J_n``, both 1-based."""

    row: int
    col: int


@dataclass(frozen=True)
class Fixed:
    label: str


Point = Column | Fixed


def column_shift(tau: Permutation, n_fixed: int) -> Permutation:
    """Extend a column permutation to ``X u J_n``, fixing the labels."""
    if n_fixed == 0:
        return tau
    return Permutation._trusted(
        tuple(range(n_fixed)) + tuple(y + n_fixed for y in tau.images)
    )


@dataclass(frozen=True)
class GroupElement:
    """An element of ``G_n`` for a given family and explicit ambient ``n``."""

    family: FamilyDescriptor
    n: int
    rows: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.n < 0:
            raise ValueError("ambient must be non-negative")
        if len(self.rows) != self.family.rows:
            raise ValueError(
                f"{self.family} needs {self.family.rows} rows, got {len(self.rows)}"
            )
        deg = self.family.row_degree(self.n)
        for r in self.rows:
            if r.degree != deg:
                raise DegreeMismatch(f"row of degree {r.degree}, expected {deg}")

    @classmethod
    def _trusted(cls, family, n, rows) -> GroupElement:
        g = object.__new__(cls)
        object.__setattr__(g, "family", family)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def identity(cls, family: FamilyDescriptor, n: int) -> GroupElement:
        e = Permutation.identity(family.row_degree(n))
        return cls._trusted(family, n, (e,) * family.rows)

    def is_identity(self) -> bool:
        return all(r.is_identity() for r in self.rows)

    def _check_compatible(self, other: GroupElement):
        if self.family != other.family:
            raise FamilyMismatch(f"{self.family} vs {other.family}")
        if self.n != other.n:
            raise AmbientMismatch(f"ambients {self.n} and {other.n}")

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._check_compatible(other)
        rows = tuple(
            Permutation._trusted(tuple(a.images[y] for y in b.images))
            for a, b in zip(self.rows, other.rows)
        )
        return GroupElement._trusted(self.family, self.n, rows)

    def inverse(self) -> GroupElement:
        return GroupElement._trusted(
            self.family, self.n, tuple(r.inverse() for r in self.rows)
        )

    def apply(self, p: Point) -> Point:
        fam = self.family
        if isinstance(p, Fixed):
            if p.label not in fam.labels:
                raise PointOutOfRange(f"label {p.label!r} not in {fam}")
            idx = fam.labels.index(p.label)
            return self._point_at(self.rows[0].images[idx])
        if not (1 <= p.row <= fam.rows and 1 <= p.col <= self.n):
            raise PointOutOfRange(f"{p} outside V_{self.n} of {fam}")
        row = self.rows[p.row - 1]
        y = row.images[p.col - 1 + fam.n_fixed]
        if fam.kind == "full":
            return self._point_at(y)
        return Column(p.row, y + 1)

    def _point_at(self, idx: int) -> Point:
        k = self.family.n_fixed
        if idx < k:
            return Fixed(self.family.labels[idx])
        return Column(1, idx - k + 1)

    def embed(self, N: int) -> GroupElement:
        """Trivial extension to ambient ``N >= n``, new columns fixed."""
        if N < self.n:
            raise ShrinkNotAllowed(f"cannot embed ambient {self.n} into {N}")
        deg = self.family.row_degree(N)
        return GroupElement._trusted(
            self.family, N, tuple(r.extend(deg) for r in self.rows)
        )

    def restrict(self, N: int) -> GroupElement:
        """Inverse of :meth:`embed`; columns beyond ``N`` must be fixed."""
        if N > self.n:
            raise ValueError("restrict cannot grow")
        deg = self.family.row_degree(N)
        for r in self.rows:
            if any(r.images[i] != i for i in range(deg, r.degree)):
                raise PointOutOfRange(f"element moves columns beyond {N}")
        return GroupElement._trusted(
            self.family, N, tuple(Permutation._trusted(r.images[:deg]) for r in self.rows)
        )

    def conjugate(self, tau: Permutation) -> GroupElement:
        """``tau g tau^-1`` with ``tau`` acting on columns of every row."""
        if tau.degree != self.n:
            raise DegreeMismatch(f"conjugator degree {tau.degree} != ambient {self.n}")
        t = column_shift(tau, self.family.n_fixed).images
        rows = []
        for r in self.rows:
            img = [0] * len(t)
            for x, y in enumerate(r.images):
                img[t[x]] = t[y]
            rows.append(Permutation._trusted(tuple(img)))
        return GroupElement._trusted(self.family, self.n, tuple(rows))

    def transport(self, inj: Sequence[int], N: int) -> GroupElement:
        """``s g s^-1`` for an injection ``s: J_n -> J_N`` (0-based ``inj``).

        The result lives in ``G_N`` and fixes every column outside ``s(J_n)``.
        """
        if len(inj) != self.n:
            raise DegreeMismatch(f"injection of length {len(inj)} for ambient {self.n}")
        k = self.family.n_fixed
        s = list(range(k)) + [k + j for j in inj]
        rows = []
        for r in self.rows:
            img = list(range(k + N))
            for x, y in enumerate(r.images):
                img[s[x]] = s[y]
            rows.append(Permutation._trusted(tuple(img)))
        return GroupElement._trusted(self.family, N, tuple(rows))

    def column_support(self) -> frozenset[int]:
        """0-based columns moved in some row (labels excluded)."""
        k = self.family.n_fixed
        moved = set()
        for r in self.rows:
            for x, y in enumerate(r.images):
                if x != y:
                    if x >= k:
                        moved.add(x - k)
                    if y >= k:
                        moved.add(y - k)
        return frozenset(moved)

    def encoding(self) -> tuple[int, ...]:
        """Row images concatenated, labels first inside a row."""
        out: tuple[int, ...] = ()
        for r in self.rows:
            out += r.images
        return out

    def key(self) -> str:
        names = self.family.point_names(self.n)
        body = "|".join(" ".join(names[y] for y in r.images) for r in self.rows)
        return f"{self.n}:{body}"

    def literal(self, with_ambient: bool = True) -> str:
        names = self.family.point_names(self.n)
        body = "|".join(r.to_cycles(names) for r in self.rows)
        return f"{body}@{self.n}" if with_ambient else body

    def __repr__(self):
        return f"GroupElement({self.family}, {self.literal()})"


def element_apply(g: GroupElement, p: Point) -> Point:
    return g.apply(p)


def element_embed(g: GroupElement, N: int) -> GroupElement:
    return g.embed(N)


def element_product(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def element_inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def _row_from_tokens(family: FamilyDescriptor, cycles: list[list[str]], n: int) -> Permutation:
    k = family.n_fixed
    idx_cycles = []
    for tokens in cycles:
        cyc = []
        for t in tokens:
            if t.isdigit():
                j = int(t)
                if j < 1:
                    raise ParseError(f"bad column {t!r}")
                if j > n:
                    raise RangeError(f"column {j} exceeds ambient {n}")
                cyc.append(k + j - 1)
            elif t in family.labels:
                cyc.append(family.labels.index(t))
            else:
                raise ParseError(f"unknown token {t!r} for {family}")
        idx_cycles.append(cyc)
    return Permutation._trusted(_cycles_to_images(idx_cycles, family.row_degree(n)))


def parse_element(family: FamilyDescriptor, text: str) -> GroupElement:
    """Parse an element literal such as ``"(1 2)|e"`` or ``"e@3"``.

    Without an ``@k`` suffix the ambient is the largest column mentioned.
    """
    text = text.strip()
    ambient = None
    if "@" in text:
        text, _, amb = text.rpartition("@")
        if not amb.strip().isdigit():
            raise ParseError(f"bad ambient suffix {amb!r}")
        ambient = int(amb)
    parts = text.split("|")
    if len(parts) != family.rows:
        raise ParseError(f"{family} literal needs {family.rows} row(s), got {len(parts)}")
    token_rows = [_parse_cycle_tokens(p) for p in parts]
    top = max(
        (int(t) for row in token_rows for cyc in row for t in cyc if t.isdigit()),
        default=0,
    )
    if ambient is None:
        ambient = top
    elif top > ambient:
        raise RangeError(f"column {top} exceeds declared ambient {ambient}")
    rows = tuple(_row_from_tokens(family, row, ambient) for row in token_rows)
    return GroupElement._trusted(family, ambient, rows)
