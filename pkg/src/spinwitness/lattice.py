"""Interaction graphs for spin lattices and their sublattice two-coloring.

Sites are numbered row-major: in ``cubic`` the last coordinate varies
fastest, and in ``hexagonal``/``triangular`` site ``(r, c)`` has index
``r * cols + c``. Edges are stored as sorted pairs ``(k, l)`` with ``k < l``
in generation order, so every generator is deterministic.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BadConfigError,
    NotBipartiteError,
    OddPeriodicSideError,
    TooSmallError,
)

A, B = "A", "B"


@dataclass(frozen=True)
class InteractionGraph:
    """Sites ``0..n-1`` joined by undirected two-body interaction edges.

    ``cubic_dim`` is set only for periodic hypercubic lattices (every site
    has ``2 * cubic_dim`` neighbours); it selects the closed-form separable
    bounds and the field multiplicity used by the spin Hamiltonians.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    coloring: tuple[str, ...] | None = None
    cubic_dim: int | None = None
    name: str = field(default="graph", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise TooSmallError("graph needs at least one site")
        seen = set()
        for k, l in self.edges:
            if not (0 <= k < self.n and 0 <= l < self.n):
                raise BadConfigError(f"edge {(k, l)} out of range for n={self.n}")
            if k == l:
                raise BadConfigError(f"self-loop at site {k}")
            if k > l:
                raise BadConfigError(f"edge {(k, l)} is not normalized (k < l)")
            if (k, l) in seen:
                raise BadConfigError(f"duplicate edge {(k, l)}")
            seen.add((k, l))
        if self.coloring is not None:
            if len(self.coloring) != self.n or set(self.coloring) - {A, B}:
                raise BadConfigError("coloring must assign 'A' or 'B' to every site")
            for k, l in self.edges:
                if self.coloring[k] == self.coloring[l]:
                    raise BadConfigError(f"edge {(k, l)} joins equally colored sites")

    @property
    def field_multiplicity(self) -> int:
        return self.cubic_dim or 1

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for k, l in self.edges:
            deg[k] += 1
            deg[l] += 1
        return deg

    def neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for k, l in self.edges:
            nbrs[k].append(l)
            nbrs[l].append(k)
        return nbrs

    def colored(self) -> "InteractionGraph":
        """Copy of this graph carrying its two-coloring."""
        return InteractionGraph(
            self.n, self.edges, two_color(self), self.cubic_dim, self.name
        )


def _collect(pairs) -> tuple[tuple[int, int], ...]:
    out: dict[tuple[int, int], None] = {}
    for k, l in pairs:
        if k == l:
            continue
        out[(min(k, l), max(k, l))] = None
    return tuple(out)


def chain(n: int, periodic: bool = True) -> InteractionGraph:
    """Linear chain; the ring closure of a 2-site chain collapses onto its single bond."""
    if n < 2:
        raise TooSmallError(f"chain needs n >= 2, got {n}")
    return cubic(1, n, periodic, _allow_odd=True)


def cubic(d: int, side: int, periodic: bool = True, _allow_odd: bool = False) -> InteractionGraph:
    """``d``-dimensional hypercubic lattice with ``side**d`` sites.

    Periodic lattices with odd ``side`` are rejected because the wrap bonds
    frustrate the two-sublattice structure; ``chain`` bypasses the check so
    that odd rings remain available for the generic minimizer.
    """
    if d < 1:
        raise TooSmallError(f"dimension must be >= 1, got {d}")
    if side < 2:
        raise TooSmallError(f"side must be >= 2, got {side}")
    if periodic and side % 2 and not _allow_odd:
        raise OddPeriodicSideError(f"periodic cubic lattice needs even side, got {side}")
    n = side**d
    strides = [side ** (d - 1 - axis) for axis in range(d)]
    pairs = []
    for site in range(n):
        coords = [(site // s) % side for s in strides]
        for axis in range(d):
            c = coords[axis]
            if c + 1 < side:
                pairs.append((site, site + strides[axis]))
            elif periodic:
                pairs.append((site, site - c * strides[axis]))
    # side 2 wraps onto existing bonds (no longer 2d-regular); odd rings are frustrated
    dim = d if periodic and side > 2 and side % 2 == 0 else None
    kind = "periodic" if periodic else "open"
    return InteractionGraph(n, _collect(pairs), cubic_dim=dim, name=f"cubic(d={d},side={side},{kind})")


def hexagonal(rows: int, cols: int) -> InteractionGraph:
    """Brick-wall honeycomb patch with open boundaries.

    Every row is a horizontal chain; site ``(r, c)`` is bonded to
    ``(r + 1, c)`` when ``r + c`` is even. All sites have degree <= 3.
    """
    if rows < 2 or cols < 2:
        raise TooSmallError("hexagonal patch needs rows, cols >= 2")
    idx = lambda r, c: r * cols + c
    pairs = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                pairs.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows and (r + c) % 2 == 0:
                pairs.append((idx(r, c), idx(r + 1, c)))
    return InteractionGraph(rows * cols, _collect(pairs), name=f"hexagonal({rows},{cols})")


def triangular(rows: int, cols: int) -> InteractionGraph:
    """Triangular patch: square grid plus the ``(r, c)-(r + 1, c + 1)`` diagonals."""
    if rows < 2 or cols < 2:
        raise TooSmallError("triangular patch needs rows, cols >= 2")
    idx = lambda r, c: r * cols + c
    pairs = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                pairs.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                pairs.append((idx(r, c), idx(r + 1, c)))
                if c + 1 < cols:
                    pairs.append((idx(r, c), idx(r + 1, c + 1)))
    return InteractionGraph(rows * cols, _collect(pairs), name=f"triangular({rows},{cols})")


def complete(n: int) -> InteractionGraph:
    if n < 2:
        raise TooSmallError(f"complete graph needs n >= 2, got {n}")
    return InteractionGraph(n, tuple(itertools.combinations(range(n), 2)), name=f"complete({n})")


def two_color(g: InteractionGraph) -> tuple[str, ...]:
    """Breadth-first sublattice coloring; the lowest site of each component is ``A``.

    Raises :class:`NotBipartiteError` carrying an odd cycle when no proper
    coloring exists.
    """
    nbrs = g.neighbors()
    color: list[str | None] = [None] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if color[root] is not None:
            continue
        color[root] = A
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in nbrs[u]:
                if color[v] is None:
                    color[v] = B if color[u] == A else A
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif color[v] == color[u]:
                    raise NotBipartiteError(_odd_cycle(u, v, parent, depth))
    return tuple(color)  # type: ignore[arg-type]


def _odd_cycle(u, v, parent, depth):
    left, right = [u], [v]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    # left ends at the common ancestor; walk back down the right branch
    return left + right[-2::-1]
