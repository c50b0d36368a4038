"""Pareto dominance (maximization) and the nondominated archive."""

from __future__ import annotations

import io
from bisect import bisect_left, bisect_right
from itertools import count

import numpy as np

from .solution import Solution


def _pair(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return a, b


def dominates(a, b) -> bool:
    """a >= b componentwise with at least one strict inequality."""
    a, b = _pair(a, b)
    return bool((a >= b).all() and (a > b).any())


def weakly_dominates(a, b) -> bool:
    a, b = _pair(a, b)
    return bool((a >= b).all())


class Archive:
    """A set of mutually nondominated feasible solutions, one per objective vector.

    With two objectives members are kept sorted by the first objective
    (descending), so insertion costs a bisection plus the removals.
    Iteration yields members in insertion order.
    """

    def __init__(self, p: int, members=()):
        if p < 1:
            raise ValueError("p must be positive")
        self.p = p
        self._sols = []
        self._seq = []
        self._counter = count()
        if p == 2:
            self._neg0 = []
            self._z1 = []
        else:
            self._obj = np.zeros((16, p), dtype=np.int64)
        for sol in members:
            self.add(sol)

    def __len__(self):
        return len(self._sols)

    def __bool__(self):
        return bool(self._sols)

    def __iter__(self):
        if self.p == 2:
            order = sorted(range(len(self._sols)), key=self._seq.__getitem__)
            return iter([self._sols[i] for i in order])
        return iter(list(self._sols))

    def __repr__(self):
        return f"Archive(p={self.p}, size={len(self)})"

    def keys(self) -> set:
        return {s.key for s in self._sols}

    def objectives(self) -> np.ndarray:
        """(size, p) array of member objective vectors, insertion order."""
        sols = list(self)
        if not sols:
            return np.zeros((0, self.p), dtype=np.int64)
        return np.array([s.objectives for s in sols], dtype=np.int64)

    def copy(self) -> Archive:
        return Archive(self.p, list(self))

    def is_weakly_dominated(self, z) -> bool:
        """True if some member weakly dominates the vector z."""
        z = np.asarray(z)
        if self.p == 2:
            idx = bisect_right(self._neg0, -int(z[0]))
            return idx > 0 and self._z1[idx - 1] >= z[1]
        size = len(self._sols)
        return bool(size and (self._obj[:size] >= z).all(axis=1).any())

    def add(self, sol: Solution) -> bool:
        """Insert sol unless a member weakly dominates it; evict members it dominates."""
        if not sol.feasible:
            raise ValueError("only feasible solutions may enter an archive")
        if sol.objectives.shape != (self.p,):
            raise ValueError(f"expected {self.p} objectives, got {sol.objectives.shape}")
        if self.p == 2:
            return self._add2(sol)
        return self._add_general(sol)

    def _add2(self, sol):
        a, b = int(sol.objectives[0]), int(sol.objectives[1])
        idx = bisect_right(self._neg0, -a)
        if idx > 0 and self._z1[idx - 1] >= b:
            return False
        lo = bisect_left(self._neg0, -a)
        hi = bisect_right(self._z1, b, lo)
        seq = next(self._counter)
        self._neg0[lo:hi] = [-a]
        self._z1[lo:hi] = [b]
        self._sols[lo:hi] = [sol]
        self._seq[lo:hi] = [seq]
        return True

    def _add_general(self, sol):
        z = sol.objectives
        size = len(self._sols)
        objs = self._obj[:size]
        if size and (objs >= z).all(axis=1).any():
            return False
        keep = ~(objs <= z).all(axis=1)
        if not keep.all():
            kept = np.flatnonzero(keep)
            self._obj[: kept.size] = objs[kept]
            self._sols = [self._sols[i] for i in kept]
            self._seq = [self._seq[i] for i in kept]
            size = kept.size
        if size == self._obj.shape[0]:
            grown = np.zeros((2 * size, self.p), dtype=np.int64)
            grown[:size] = self._obj[:size]
            self._obj = grown
        self._obj[size] = z
        self._sols.append(sol)
        self._seq.append(next(self._counter))
        return True


def add_solution(arch: Archive, sol: Solution):
    """AddSolution: returns (arch, added). The archive is updated in place."""
    added = arch.add(sol)
    return arch, added


def nondominated_filter(points, p: int | None = None) -> Archive:
    """Maximal nondominated subset, keeping the first occurrence of each vector.

    Accepts solutions or bare objective vectors; vectors are wrapped in
    item-less placeholder solutions.
    """
    points = [_as_solution(pt) for pt in points]
    if p is None:
        if not points:
            raise ValueError("p is required for an empty point list")
        p = len(points[0].objectives)
    arch = Archive(p)
    for sol in points:
        arch.add(sol)
    return arch


def _as_solution(pt) -> Solution:
    if isinstance(pt, Solution):
        return pt
    z = np.asarray(pt, dtype=np.int64).ravel()
    return Solution(np.zeros(0, dtype=np.uint8), z, np.zeros(1, dtype=np.int64))


def nondominated_points(z) -> np.ndarray:
    """Distinct nondominated rows of an integer objective matrix (maximization)."""
    z = np.unique(np.asarray(z, dtype=np.int64).reshape(-1, np.shape(z)[-1]), axis=0)
    if len(z) == 0:
        return z
    keep = np.ones(len(z), dtype=bool)
    for i in range(len(z)):
        if keep[i]:
            ge = (z >= z[i]).all(axis=1) & (z > z[i]).any(axis=1)
            if ge.any():
                keep[i] = False
    return z[keep]


def sorted_front(vectors) -> np.ndarray:
    """Rows sorted lexicographically descending."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if len(vectors) == 0:
        return vectors
    order = np.lexsort(tuple(-vectors[:, k] for k in reversed(range(vectors.shape[1]))))
    return vectors[order]


def front_csv(arch: Archive, with_flags: bool = False) -> str:
    """One line per member: p comma-separated objectives, optional 0/1 flag string."""
    sols = list(arch)
    sols.sort(key=lambda s: tuple(-v for v in s.key))
    buf = io.StringIO()
    for s in sols:
        fields = [str(v) for v in s.key]
        if with_flags:
            fields.append(s.flag_string())
        buf.write(",".join(fields) + "\n")
    return buf.getvalue()


def write_front_csv(arch: Archive, path, with_flags: bool = False) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(front_csv(arch, with_flags))


def _looks_like_flags(values) -> bool:
    # objective values never carry leading zeros and 7+ digit 0/1-only profits are implausible
    if not all(v and set(v) <= {"0", "1"} for v in values):
        return False
    lengths = {len(v) for v in values}
    if len(lengths) != 1:
        return False
    width = lengths.pop()
    return width >= 2 and (width > 6 or any(v.startswith("0") for v in values))


def read_front_csv(path, p: int | None = None) -> np.ndarray:
    """Objective vectors from a front CSV.

    A trailing 0/1 flags column is dropped: always when ``p`` is given and the
    rows are wider, otherwise when the last column looks like flag strings.
    """
    rows = []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if width is None:
                width = len(fields)
            if len(fields) != width:
                raise ValueError(f"{path}:{lineno}: expected {width} fields, got {len(fields)}")
            rows.append(fields)
    if not rows:
        return np.zeros((0, p or 0), dtype=np.int64)
    if p is not None:
        if width not in (p, p + 1):
            raise ValueError(f"{path}: rows have {width} fields, expected {p} objectives")
        has_flags = width == p + 1
    else:
        has_flags = width > 2 and _looks_like_flags([r[-1] for r in rows])
    try:
        vals = [[int(x) for x in (r[:-1] if has_flags else r)] for r in rows]
    except ValueError as exc:
        raise ValueError(f"{path}: non-integer objective value ({exc})") from None
    return np.array(vals, dtype=np.int64)
