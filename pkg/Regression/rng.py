"""
Seedable, splittable random streams.

Every stream is a PCG64 generator keyed by (seed, purpose tag, indices); the
tag is hashed with a stable digest so that keys do not depend on Python's
per-process string hashing. Two calls with the same key always produce the
same numbers, regardless of which thread draws them or in which order.
"""
import hashlib

import numpy as np

_SEED_MODULUS = 2 ** 64


def _tag_code(tag):
    digest = hashlib.sha256(str(tag).encode("utf8")).digest()
    return int.from_bytes(digest[:8], "little")


def seed_sequence(seed, tag, *indices):
    key = (_tag_code(tag),) + tuple(int(index) for index in indices)
    return np.random.SeedSequence(entropy=int(seed) % _SEED_MODULUS, spawn_key=key)


def substream(seed, tag, *indices):
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, tag, *indices)))


def derive_seed(seed, tag, *indices):
    """A 63-bit integer seed for a child task, e.g. one Monte-Carlo trial."""
    state = seed_sequence(seed, tag, *indices).generate_state(1, dtype=np.uint64)[0]
    return int(state) >> 1
