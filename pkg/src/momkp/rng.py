"""Seed derivation.

Every random stream in the package comes from one root seed. A stream is
identified by a purpose tag plus integer indices (pass number, solution
index, ...) and built as ``PCG64(SeedSequence(root, spawn_key=(tag, *indices)))``.
Both PCG64 and SeedSequence are specified bit-for-bit by numpy, so a given
(root, tag, indices) yields the same numbers on every platform.
"""

import numpy as np

_TAGS = {
    "instance": 1,
    "weights": 2,
    "adaptive": 3,
    "memots": 4,
    "residuals": 5,
}

SEED_MASK = (1 << 64) - 1


def stream_key(tag, *indices):
    return (_TAGS[tag], *(int(i) for i in indices))


def make_generator(seed, tag, *indices):
    ss = np.random.SeedSequence(int(seed) & SEED_MASK, spawn_key=stream_key(tag, *indices))
    return np.random.Generator(np.random.PCG64(ss))


def sub_seed(rng):
    """Draw a 64-bit seed from an existing generator."""
    return int(rng.integers(0, SEED_MASK, dtype=np.uint64, endpoint=True))
