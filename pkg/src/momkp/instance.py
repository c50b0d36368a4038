"""MOMKP instance data, the canonical text format, and the ZMKP-style generator."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .rng import make_generator

SUPPORTED_GENERATOR_P = (2, 3, 4)
COEFF_LOW, COEFF_HIGH = 10, 100


class InstanceFormatError(ValueError):
    """Raised when instance text cannot be parsed; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True, eq=False)
class Instance:
    """n items with p integer profits and m integer weights, and m capacities."""

    profits: np.ndarray  # (n, p)
    weights: np.ndarray  # (n, m)
    capacities: np.ndarray  # (m,)

    def __post_init__(self):
        profits = np.ascontiguousarray(self.profits, dtype=np.int64)
        weights = np.ascontiguousarray(self.weights, dtype=np.int64)
        capacities = np.ascontiguousarray(self.capacities, dtype=np.int64)
        if profits.ndim != 2 or weights.ndim != 2 or capacities.ndim != 1:
            raise ValueError("profits and weights must be 2-D, capacities 1-D")
        if profits.shape[0] != weights.shape[0]:
            raise ValueError("profits and weights disagree on the item count")
        if weights.shape[1] != capacities.shape[0]:
            raise ValueError("weights and capacities disagree on the constraint count")
        if profits.shape[1] < 1 or capacities.shape[0] < 1:
            raise ValueError("need at least one objective and one constraint")
        if (profits < 0).any() or (weights < 0).any() or (capacities < 0).any():
            raise ValueError("all coefficients must be nonnegative")
        for name, arr in (("profits", profits), ("weights", weights), ("capacities", capacities)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.profits.shape[0]

    @property
    def m(self) -> int:
        return self.weights.shape[1]

    @property
    def p(self) -> int:
        return self.profits.shape[1]

    def oversized_items(self) -> np.ndarray:
        """Indices of items that exceed some capacity on their own."""
        return np.flatnonzero((self.weights > self.capacities).any(axis=1))

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            np.array_equal(self.profits, other.profits)
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.capacities, other.capacities)
        )

    __hash__ = None

    def __repr__(self):
        return f"Instance(n={self.n}, m={self.m}, p={self.p})"


def _ints(tokens, lineno):
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise InstanceFormatError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None
    if any(v < 0 for v in values):
        raise InstanceFormatError("negative coefficient", lineno)
    return values


def parse_instance(text: str) -> Instance:
    """Parse the canonical ``p momkp`` text format.

    Comment lines (``c ...``) and blank lines may appear anywhere. Items are
    numbered by order of appearance.
    """
    header = None
    caps = None
    items = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]
        if tag == "p":
            if header is not None:
                raise InstanceFormatError("duplicate header line", lineno)
            if len(tokens) != 5 or tokens[1] != "momkp":
                raise InstanceFormatError("malformed header, expected 'p momkp <n> <m> <p>'", lineno)
            try:
                n, m, p = (int(t) for t in tokens[2:])
            except ValueError:
                raise InstanceFormatError("malformed header, non-integer size", lineno) from None
            if n <= 0:
                raise InstanceFormatError("n must be positive", lineno)
            if m <= 0:
                raise InstanceFormatError("m must be positive", lineno)
            if p < 2:
                raise InstanceFormatError("p must be at least 2", lineno)
            header = (n, m, p)
        elif tag == "w":
            if header is None:
                raise InstanceFormatError("capacity line before header", lineno)
            if caps is not None:
                raise InstanceFormatError("duplicate capacity line", lineno)
            if len(tokens) - 1 != header[1]:
                raise InstanceFormatError(f"expected {header[1]} capacities, got {len(tokens) - 1}", lineno)
            caps = _ints(tokens[1:], lineno)
        elif tag == "i":
            if header is None or caps is None:
                raise InstanceFormatError("item line before header and capacity lines", lineno)
            n, m, p = header
            if len(items) >= n:
                raise InstanceFormatError(f"expected {n} item lines, found more", lineno)
            if len(tokens) - 1 != p + m:
                raise InstanceFormatError(f"item line needs {p + m} integers, got {len(tokens) - 1}", lineno)
            items.append(_ints(tokens[1:], lineno))
        else:
            raise InstanceFormatError(f"unknown line tag {tag!r}", lineno)
    if header is None:
        raise InstanceFormatError("missing header line 'p momkp <n> <m> <p>'")
    if caps is None:
        raise InstanceFormatError("missing capacity line 'w ...'")
    n, m, p = header
    if len(items) != n:
        raise InstanceFormatError(f"expected {n} item lines, found {len(items)}", last_line)
    data = np.array(items, dtype=np.int64).reshape(n, p + m)
    inst = Instance(data[:, :p], data[:, p:], np.array(caps, dtype=np.int64))
    big = inst.oversized_items()
    if big.size:
        warnings.warn(f"{big.size} item(s) exceed a capacity on their own (first: item {big[0] + 1})", stacklevel=2)
    return inst


def serialize_instance(inst: Instance, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {part}".rstrip() for part in comment.splitlines())
    lines.append(f"p momkp {inst.n} {inst.m} {inst.p}")
    lines.append("w " + " ".join(str(int(v)) for v in inst.capacities))
    rows = np.hstack([inst.profits, inst.weights])
    lines.extend("i " + " ".join(str(int(v)) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(inst: Instance, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_instance(inst, comment))


def generate_zmkp(n: int, p: int, seed: int) -> Instance:
    """Random instance following the Zitzler-Thiele scheme.

    m = p; profits and weights uniform integers in [10, 100]; each capacity is
    the floor of half the constraint's total weight.
    """
    if p not in SUPPORTED_GENERATOR_P:
        raise ValueError(f"unsupported arity p={p}; generator supports p in {SUPPORTED_GENERATOR_P}")
    if n < 1:
        raise ValueError("n must be positive")
    rng = make_generator(seed, "instance")
    profits = rng.integers(COEFF_LOW, COEFF_HIGH, size=(n, p), endpoint=True, dtype=np.int64)
    weights = rng.integers(COEFF_LOW, COEFF_HIGH, size=(n, p), endpoint=True, dtype=np.int64)
    capacities = weights.sum(axis=0) // 2
    return Instance(profits, weights, capacities)
