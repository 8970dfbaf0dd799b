"""Checker triangulated surfaces as pairs of permutations.

A surface with ``2N`` faces has plus triangles ``p1..pN`` and minus
triangles ``m1..mN``.  Plus triangle ``i`` is glued to minus triangle
``red(i)`` along its red edge, to ``yellow(i)`` along its yellow edge and to
``i`` along its blue edge.  Unlabeled surfaces are the classes of
``(red, yellow)`` under simultaneous conjugation, i.e. classes of the
``Product(2)`` family.

Vertices are computed on a combinatorial map with one dart per triangle
corner (``6N`` darts).  Each corner sits between two edge colours; the
rotation about its vertex leaves a plus triangle through the first colour of
the pair in the cyclic order red, yellow, blue and a minus triangle through
the second one, which encodes the opposite orientations of the two kinds of
triangle.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .algebra import AlgebraElement, star
from .conjugacy import ConjClass, canonicalize
from .errors import UnsupportedFormat, WrongFamily
from .partial import pb_count
from .perm import FamilyDescriptor, GroupElement, Permutation

PRODUCT2 = FamilyDescriptor.product(2)

RED, YELLOW, BLUE = 0, 1, 2
COLOURS = ("red", "yellow", "blue")
# corner c lies between colours CORNERS[c]; the first entry is the colour a
# plus triangle is left through when turning about the vertex
CORNERS = ((RED, YELLOW), (YELLOW, BLUE), (BLUE, RED))


@dataclass(frozen=True)
class CheckerSurface:
    red: Permutation
    yellow: Permutation
    labeled: bool = False

    def __post_init__(self):
        if self.red.degree != self.yellow.degree:
            raise ValueError("red and yellow permutations must share a degree")

    @property
    def N(self) -> int:
        return self.red.degree

    @property
    def faces(self) -> int:
        return 2 * self.N

    @property
    def edges(self) -> int:
        return 3 * self.N

    def element(self) -> GroupElement:
        return GroupElement(PRODUCT2, self.N, (self.red, self.yellow))

    def relabel(self, tau: Permutation) -> CheckerSurface:
        g = self.element().conjugate(tau)
        return CheckerSurface(g.rows[0], g.rows[1], self.labeled)

    def neighbour(self, colour: int) -> Permutation:
        """Minus triangle across the given edge of each plus triangle."""
        if colour == RED:
            return self.red
        if colour == YELLOW:
            return self.yellow
        return Permutation.identity(self.N)


@dataclass
class ComponentTopology:
    plus_triangles: tuple[int, ...]
    faces: int
    edges: int
    vertices: int

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces

    @property
    def genus(self) -> int:
        return (2 - self.euler) // 2

    def to_json(self) -> dict:
        return {
            "plus_triangles": [i + 1 for i in self.plus_triangles],
            "faces": self.faces,
            "edges": self.edges,
            "vertices": self.vertices,
            "euler": self.euler,
            "genus": self.genus,
        }


@dataclass
class TopologyReport:
    components: list[ComponentTopology] = field(default_factory=list)

    @property
    def faces(self) -> int:
        return sum(c.faces for c in self.components)

    @property
    def edges(self) -> int:
        return sum(c.edges for c in self.components)

    @property
    def vertices(self) -> int:
        return sum(c.vertices for c in self.components)

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces

    def to_json(self) -> dict:
        return {
            "components": [c.to_json() for c in self.components],
            "faces": self.faces,
            "edges": self.edges,
            "vertices": self.vertices,
            "euler": self.euler,
        }

    def text(self) -> str:
        lines = [f"{len(self.components)} component(s); V={self.vertices} E={self.edges} F={self.faces} chi={self.euler}"]
        for idx, c in enumerate(self.components, 1):
            plus = ",".join(f"p{i + 1}" for i in c.plus_triangles)
            lines.append(
                f"  component {idx}: V={c.vertices} E={c.edges} F={c.faces} "
                f"chi={c.euler} genus={c.genus}  [{plus}]"
            )
        return "\n".join(lines)


def surface_from_class(c: ConjClass) -> CheckerSurface:
    if c.family != PRODUCT2:
        raise WrongFamily(f"surfaces need family s2, got {c.family}")
    red, yellow = c.rep.rows
    return CheckerSurface(red, yellow, labeled=False)


def surface_from_element(g: GroupElement) -> CheckerSurface:
    if g.family != PRODUCT2:
        raise WrongFamily(f"surfaces need family s2, got {g.family}")
    return CheckerSurface(g.rows[0], g.rows[1], labeled=True)


def class_from_surface(s: CheckerSurface) -> ConjClass:
    return canonicalize(s.element())


def _darts(s: CheckerSurface):
    """Corner darts ``(sign, triangle, corner)`` and the vertex rotation on them."""
    N = s.N
    across = [s.neighbour(c).images for c in range(3)]
    back = [s.neighbour(c).inverse().images for c in range(3)]
    rotation = {}
    for i in range(N):
        for corner, (first, second) in enumerate(CORNERS):
            rotation[(0, i, corner)] = (1, across[first][i], corner)
            rotation[(1, i, corner)] = (0, back[second][i], corner)
    return rotation


def _components(s: CheckerSurface) -> list[tuple[int, ...]]:
    N = s.N
    seen = [False] * N
    comps = []
    for start in range(N):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            # plus i -> minus red(i) -> plus ... ; moves on plus labels via
            # red, yellow and their inverses (blue pairs p_j with m_j)
            for perm in (s.red, s.yellow, s.red.inverse(), s.yellow.inverse()):
                j = perm.images[i]
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return comps


def surface_topology(s: CheckerSurface) -> TopologyReport:
    rotation = _darts(s)
    vertex_of = {}
    v = 0
    for dart in sorted(rotation):
        if dart in vertex_of:
            continue
        d = dart
        while d not in vertex_of:
            vertex_of[d] = v
            d = rotation[d]
        v += 1
    report = TopologyReport()
    for comp in _components(s):
        verts = {vertex_of[(0, i, c)] for i in comp for c in range(3)}
        report.components.append(
            ComponentTopology(comp, 2 * len(comp), 3 * len(comp), len(verts))
        )
    return report


def vertex_count_formula(s: CheckerSurface) -> int:
    """Cycle count of red, yellow and yellow^-1 red; an independent vertex count."""
    return s.red.num_cycles() + s.yellow.num_cycles() + (s.yellow.inverse() * s.red).num_cycles()


def surface_star(r: CheckerSurface, q: CheckerSurface) -> list[tuple[CheckerSurface, int]]:
    """Product of two unlabeled surfaces, as a list of surfaces with multiplicities."""
    u = AlgebraElement.basis(class_from_surface(r))
    v = AlgebraElement.basis(class_from_surface(q))
    return [(surface_from_class(c), a) for c, a in star(u, v).items()]


def disjoint_union(r: CheckerSurface, q: CheckerSurface) -> CheckerSurface:
    n = r.N
    red = Permutation._trusted(r.red.images + tuple(n + y for y in q.red.images))
    yellow = Permutation._trusted(r.yellow.images + tuple(n + y for y in q.yellow.images))
    return CheckerSurface(red, yellow)


def surface_export(s: CheckerSurface, fmt: str = "json") -> str:
    if fmt == "json":
        obj = {
            "N": s.N,
            "red": s.red.one_based(),
            "yellow": s.yellow.one_based(),
            "topology": surface_topology(s).to_json(),
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if fmt == "dot":
        lines = ["graph surface {"]
        for i in range(s.N):
            lines.append(f"  p{i + 1} [shape=triangle];")
        for i in range(s.N):
            lines.append(f"  m{i + 1} [shape=invtriangle];")
        for i in range(s.N):
            for colour in range(3):
                j = s.neighbour(colour).images[i]
                lines.append(f"  p{i + 1} -- m{j + 1} [color={COLOURS[colour]}];")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise UnsupportedFormat(f"unknown surface format {fmt!r}")


def surface_parse_json(text: str) -> CheckerSurface:
    obj = json.loads(text)
    red = Permutation.from_one_based(obj["red"])
    yellow = Permutation.from_one_based(obj["yellow"])
    if red.degree != obj["N"]:
        raise ValueError("N does not match the permutation degree")
    return CheckerSurface(red, yellow)


def star_face_counts(r: CheckerSurface, q: CheckerSurface) -> Counter:
    """Face-count histogram of a surface product, weighted by multiplicity."""
    out: Counter = Counter()
    for s, a in surface_star(r, q):
        out[s.faces] += a
    return out


def star_mass(r: CheckerSurface, q: CheckerSurface) -> tuple[int, int]:
    """``(total multiplicity, #PB)`` for a surface product."""
    return sum(a for _, a in surface_star(r, q)), pb_count(q.N, r.N)
