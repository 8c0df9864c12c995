"""Abstract simplicial complexes stored by their maximal simplices.

A complex over vertices ``0..n-1`` is a family of maximal simplices
``C_1..C_m``: nonempty vertex sets whose union covers every vertex and none
of which contains another.  Incidence is kept in both directions:
``simpl_of[j]`` lists the simplices containing vertex ``j`` and
``maximal_simplices[i]`` lists the vertices of simplex ``i``.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ._parsing import ParseError, content_lines, parse_floats, parse_ints

__all__ = [
    "InvalidComplexError",
    "SimplicialComplex",
    "VertexDistribution",
    "build_complex",
    "uniform_distribution",
    "vertex_entropy",
    "parse_complex",
    "format_complex",
    "parse_distribution",
    "format_distribution",
]


class InvalidComplexError(ValueError):
    """The input does not describe a valid complex."""


class SimplicialComplex:
    """Immutable simplicial complex; construct through :func:`build_complex`.

    Attributes
    ----------
    n : number of vertices (dense indices ``0..n-1``).
    maximal_simplices : tuple of sorted vertex tuples, one per maximal simplex.
    simpl_of : per-vertex tuple of simplex indices containing that vertex.
    """

    __slots__ = ("n", "maximal_simplices", "simpl_of", "_csr")

    def __init__(self, n: int, maximal_simplices: tuple[tuple[int, ...], ...],
                 simpl_of: tuple[tuple[int, ...], ...]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "maximal_simplices", maximal_simplices)
        object.__setattr__(self, "simpl_of", simpl_of)
        object.__setattr__(self, "_csr", None)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("SimplicialComplex is immutable")

    @property
    def m(self) -> int:
        """Number of maximal simplices."""
        return len(self.maximal_simplices)

    @property
    def max_degree(self) -> int:
        """Largest maximal-simplex cardinality."""
        return max(len(s) for s in self.maximal_simplices)

    def incidence_arrays(self):
        """CSR-style incidence: (face_ptr, face_vert, vert_ptr, vert_simpl).

        ``face_vert[face_ptr[i]:face_ptr[i+1]]`` holds the vertices of simplex
        ``i``; ``vert_simpl[vert_ptr[j]:vert_ptr[j+1]]`` the simplices of
        vertex ``j``.  Arrays are C ``int`` and read-only; built lazily.
        """
        if self._csr is None:
            face_ptr = np.zeros(self.m + 1, dtype=np.intc)
            for i, s in enumerate(self.maximal_simplices):
                face_ptr[i + 1] = face_ptr[i] + len(s)
            face_vert = np.fromiter(
                (v for s in self.maximal_simplices for v in s),
                dtype=np.intc, count=face_ptr[-1])
            vert_ptr = np.zeros(self.n + 1, dtype=np.intc)
            for j, lst in enumerate(self.simpl_of):
                vert_ptr[j + 1] = vert_ptr[j] + len(lst)
            vert_simpl = np.fromiter(
                (i for lst in self.simpl_of for i in lst),
                dtype=np.intc, count=vert_ptr[-1])
            for a in (face_ptr, face_vert, vert_ptr, vert_simpl):
                a.flags.writeable = False
            object.__setattr__(self, "_csr", (face_ptr, face_vert, vert_ptr, vert_simpl))
        return self._csr

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and self.n == other.n
                and self.maximal_simplices == other.maximal_simplices)

    def __hash__(self):
        return hash((self.n, self.maximal_simplices))

    def __repr__(self):
        return f"SimplicialComplex(n={self.n}, m={self.m})"


def _reduce_to_antichain(sets: list[frozenset[int]], strict: bool) -> list[int]:
    """Indices of the sets that survive antichain reduction.

    A set is dominated when another set contains it (ties keep the earliest
    occurrence).  ``strict`` turns any domination into an error.
    """
    membership: dict[int, set[int]] = {}
    for idx, s in enumerate(sets):
        for v in s:
            membership.setdefault(v, set()).add(idx)
    keep = []
    for idx, s in enumerate(sets):
        covering = set.intersection(*(membership[v] for v in s))
        dominated = False
        for other in covering:
            if other == idx:
                continue
            if len(sets[other]) > len(s) or (len(sets[other]) == len(s) and other < idx):
                dominated = True
                break
        if dominated:
            if strict:
                raise InvalidComplexError(
                    f"simplex {sorted(s)} is contained in another maximal simplex")
        else:
            keep.append(idx)
    return keep


def build_complex(n: int, raw_simplices: Iterable[Iterable[int]],
                  mode: str = "strict") -> SimplicialComplex:
    """Validate and build a complex from candidate maximal simplices.

    ``mode="strict"`` rejects antichain violations (including duplicates);
    ``mode="reduce"`` silently drops sets contained in another.  Both modes
    reject out-of-range vertices, empty simplices and coverage gaps.
    """
    if mode not in ("strict", "reduce"):
        raise ValueError(f"mode must be 'strict' or 'reduce', got {mode!r}")
    if n < 1:
        raise InvalidComplexError("complex needs at least one vertex")
    sets = [frozenset(s) for s in raw_simplices]
    if not sets:
        raise InvalidComplexError("complex needs at least one maximal simplex")
    for idx, s in enumerate(sets):
        if not s:
            raise InvalidComplexError(f"simplex {idx} is empty")
        for v in s:
            if not (0 <= v < n):
                raise InvalidComplexError(
                    f"simplex {idx} has out-of-range vertex {v} (n={n})")
    keep = _reduce_to_antichain(sets, strict=(mode == "strict"))
    kept = [sets[i] for i in keep]
    covered: set[int] = set().union(*kept)
    if len(covered) != n:
        missing = sorted(set(range(n)) - covered)
        raise InvalidComplexError(f"vertices {missing} belong to no simplex")
    maximal = tuple(tuple(sorted(s)) for s in kept)
    simpl_of_lists: list[list[int]] = [[] for _ in range(n)]
    for i, s in enumerate(maximal):
        for v in s:
            simpl_of_lists[v].append(i)
    simpl_of = tuple(tuple(lst) for lst in simpl_of_lists)
    return SimplicialComplex(n, maximal, simpl_of)


class VertexDistribution:
    """Probability vector over the vertices.

    Non-negative inputs whose sum strays from 1 by more than 1e-12 are
    normalized; an all-zero input is an error.  The stored array is
    read-only.
    """

    __slots__ = ("p",)

    def __init__(self, values):
        p = np.array(values, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("distribution must be a nonempty 1-d vector")
        if not np.all(np.isfinite(p)):
            raise ValueError("distribution entries must be finite")
        if np.any(p < 0):
            raise ValueError("distribution entries must be non-negative")
        total = float(p.sum())
        if total == 0.0:
            raise ValueError("distribution sums to zero")
        if abs(total - 1.0) > 1e-12:
            p = p / total
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("VertexDistribution is immutable")

    @property
    def n(self) -> int:
        return self.p.size

    def __len__(self) -> int:
        return self.p.size

    def __repr__(self):
        return f"VertexDistribution(n={self.n})"


def uniform_distribution(n: int) -> VertexDistribution:
    """Uniform distribution over ``n`` vertices."""
    if n < 1:
        raise ValueError("need at least one vertex")
    return VertexDistribution(np.full(n, 1.0 / n))


def vertex_entropy(dist: VertexDistribution) -> float:
    """Shannon entropy of the vertex distribution, in bits (0 log 0 = 0)."""
    p = dist.p[dist.p > 0]
    return float(-(p * np.log2(p)).sum())


# -- text formats -----------------------------------------------------------
#
# Complex file: first content line "n m", then m lines of space-separated
# 0-based vertex indices.  Distribution file: n lines, one non-negative real
# each.  '#' starts a comment.


def parse_complex(text: str, mode: str = "strict") -> SimplicialComplex:
    lines = content_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise ParseError(1, "empty complex file") from None
    counts = parse_ints(line_no, header, "two integers n m")
    if len(counts) != 2:
        raise ParseError(line_no, f"header must be 'n m', got {header!r}")
    n, m = counts
    simplices = []
    for line_no, line in lines:
        simplices.append((line_no, parse_ints(line_no, line, "vertex indices")))
    if len(simplices) != m:
        raise ParseError(line_no if simplices else 1,
                         f"expected {m} simplex lines, found {len(simplices)}")
    try:
        return build_complex(n, [s for _, s in simplices], mode=mode)
    except InvalidComplexError as exc:
        raise ParseError(simplices[0][0] if simplices else 1, str(exc)) from exc


def format_complex(complex: SimplicialComplex) -> str:
    lines = [f"{complex.n} {complex.m}"]
    lines.extend(" ".join(str(v) for v in s) for s in complex.maximal_simplices)
    return "\n".join(lines) + "\n"


def parse_distribution(text: str, n: int | None = None) -> VertexDistribution:
    values = []
    for line_no, line in content_lines(text):
        row = parse_floats(line_no, line, "one real per line")
        if len(row) != 1:
            raise ParseError(line_no, f"expected one value per line, got {line!r}")
        values.append(row[0])
    if not values:
        raise ParseError(1, "empty distribution file")
    if n is not None and len(values) != n:
        raise ParseError(1, f"distribution has {len(values)} entries, expected {n}")
    try:
        return VertexDistribution(values)
    except ValueError as exc:
        raise ParseError(1, str(exc)) from exc


def format_distribution(dist: VertexDistribution) -> str:
    return "\n".join(f"{x:.17g}" for x in dist.p) + "\n"
