"""Quivers, paths and formal linear combinations of parallel paths.

A quiver is a finite directed multigraph; loops and parallel arrows are
allowed, but the underlying undirected graph must be connected.  Paths
compose left to right: in a product ``p * q`` the path ``p`` is walked
first, so consecutive arrows satisfy ``target(a_k) == source(a_{k+1})``.
Every value in this module is immutable and safe to share.
"""

from dataclasses import dataclass
from typing import Optional

from .errors import ValidationError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A composable arrow sequence; empty sequences are trivial paths e_v."""

    source: str
    target: str
    arrows: tuple

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    def sort_key(self):
        """Canonical path order: length first, then arrow names lexicographically."""
        return (len(self.arrows), self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


class Quiver:
    """A finite connected quiver with named vertices and arrows."""

    def __init__(self, vertices, arrows):
        vertices = tuple(vertices)
        arrows = tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows)
        seen = set()
        for v in vertices:
            if not isinstance(v, str) or not v:
                raise ValidationError(f"vertex identifier must be a non-empty string: {v!r}")
            if v in seen:
                raise ValidationError(f"duplicate vertex identifier: {v}")
            seen.add(v)
        names = set()
        for a in arrows:
            if not isinstance(a.name, str) or not a.name:
                raise ValidationError(f"arrow identifier must be a non-empty string: {a.name!r}")
            if a.name in names:
                raise ValidationError(f"duplicate arrow identifier: {a.name}")
            names.add(a.name)
            if a.source not in seen:
                raise ValidationError(f"arrow {a.name}: unknown source vertex {a.source}")
            if a.target not in seen:
                raise ValidationError(f"arrow {a.name}: unknown target vertex {a.target}")
        self.vertices = vertices
        self.arrows = arrows
        self.arrow_by_name = {a.name: a for a in arrows}
        self.out_arrows = {v: [] for v in vertices}
        self.in_arrows = {v: [] for v in vertices}
        for a in arrows:
            self.out_arrows[a.source].append(a)
            self.in_arrows[a.target].append(a)
        self._check_connected()

    def _check_connected(self):
        if not self.vertices:
            raise ValidationError("quiver must have at least one vertex")
        adjacency = {v: set() for v in self.vertices}
        for a in self.arrows:
            adjacency[a.source].add(a.target)
            adjacency[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            missing = [v for v in self.vertices if v not in seen]
            raise ValidationError(
                f"quiver is not connected; unreachable vertices: {', '.join(missing)}"
            )

    def trivial_path(self, v):
        if v not in self.out_arrows:
            raise ValidationError(f"unknown vertex: {v}")
        return Path(v, v, ())

    def path(self, arrow_names):
        """Build a Path from an arrow name sequence, checking composability."""
        arrow_names = tuple(arrow_names)
        if not arrow_names:
            raise ValidationError("cannot build a trivial path from an empty arrow list "
                                  "without a vertex; use trivial_path")
        arrows = []
        for name in arrow_names:
            a = self.arrow_by_name.get(name)
            if a is None:
                raise ValidationError(f"unknown arrow: {name}")
            arrows.append(a)
        for left, right in zip(arrows, arrows[1:]):
            if left.target != right.source:
                raise ValidationError(
                    f"arrows do not compose: {left.name} ends at {left.target}, "
                    f"{right.name} starts at {right.source}"
                )
        return Path(arrows[0].source, arrows[-1].target, arrow_names)

    def contains_path(self, p):
        try:
            if p.is_trivial:
                return p.source == p.target and p.source in self.out_arrows
            return self.path(p.arrows) == p
        except ValidationError:
            return False

    def degrees(self, v):
        """(indegree, outdegree) of a vertex; a loop counts once in each."""
        if v not in self.out_arrows:
            raise ValidationError(f"unknown vertex: {v}")
        return (len(self.in_arrows[v]), len(self.out_arrows[v]))

    def enumerate_paths(self, max_len):
        """All paths of length <= max_len in canonical order.

        Canonical order is length ascending, then lexicographic on the
        arrow name sequence; downstream bases and pivots inherit it.
        """
        if max_len < 0:
            raise ValidationError("max_len must be >= 0")
        result = [self.trivial_path(v) for v in sorted(self.vertices)]
        frontier = result[:]
        for _ in range(max_len):
            layer = []
            for p in frontier:
                for a in self.out_arrows[p.target]:
                    layer.append(Path(p.source, a.target, p.arrows + (a.name,)))
            layer.sort(key=Path.sort_key)
            result.extend(layer)
            frontier = layer
            if not frontier:
                break
        return result

    def is_acyclic(self):
        return self.longest_path_length() is not None

    def longest_path_length(self):
        """Length of the longest path, or None when a directed cycle exists."""
        order = self._topological_order()
        if order is None:
            return None
        longest = {v: 0 for v in self.vertices}
        for v in order:
            for a in self.out_arrows[v]:
                if longest[v] + 1 > longest[a.target]:
                    longest[a.target] = longest[v] + 1
        return max(longest.values())

    def _topological_order(self):
        indeg = {v: len(self.in_arrows[v]) for v in self.vertices}
        queue = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while queue:
            v = queue.pop()
            order.append(v)
            for a in self.out_arrows[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        if len(order) != len(self.vertices):
            return None
        return order


def compose(p: Path, q: Path) -> Optional[Path]:
    """Concatenate two paths, or return None when endpoints mismatch.

    Non-composability is an ordinary value here because the path algebra
    product is zero in that case, not an error.
    """
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


class PathExpr:
    """A finite linear combination of parallel paths.

    The zero expression has no terms.  Any nonzero expression must be
    parallel: all paths share one source and one target.
    """

    def __init__(self, terms):
        cleaned = {}
        for path, coeff in terms.items() if isinstance(terms, dict) else terms:
            if coeff == 0:
                continue
            if path in cleaned:
                coeff = cleaned[path] + coeff
                if coeff == 0:
                    del cleaned[path]
                    continue
            cleaned[path] = coeff
        paths = list(cleaned)
        for p in paths[1:]:
            if p.source != paths[0].source or p.target != paths[0].target:
                raise ValidationError(
                    f"non-parallel combination: {paths[0]} is {paths[0].source}->"
                    f"{paths[0].target} but {p} is {p.source}->{p.target}"
                )
        self.terms = dict(sorted(cleaned.items(), key=lambda kv: kv[0].sort_key()))

    @classmethod
    def from_path(cls, path, coeff):
        return cls({path: coeff})

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_monomial(self):
        return len(self.terms) == 1

    def source(self):
        return next(iter(self.terms)).source if self.terms else None

    def target(self):
        return next(iter(self.terms)).target if self.terms else None

    def min_term_length(self):
        return min(len(p) for p in self.terms)

    def __eq__(self, other):
        return isinstance(other, PathExpr) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for path, coeff in self.terms.items():
            parts.append(f"{coeff}*{path}" if coeff != 1 else str(path))
        return " + ".join(parts)
