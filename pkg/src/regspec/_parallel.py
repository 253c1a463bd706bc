"""Seed fan-out and ordered parallel map.

Every random quantity indexed by a sample number draws from its own
generator, derived from ``(seed, stream, index)``.  Results therefore depend
only on those three values and never on the number of worker threads.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def stream_rng(seed, stream, index):
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream), int(index)))
    return np.random.Generator(np.random.PCG64(ss))


def stream_seed32(seed, stream, index):
    """A 32-bit integer seed for kernels that keep their own generator state."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream), int(index)))
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def default_threads():
    try:
        return max(1, int(os.environ.get("REGSPEC_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items, threads=None):
    """``list(map(fn, items))`` spread over ``threads`` workers, order preserved."""
    threads = default_threads() if threads is None else max(1, int(threads))
    items = list(items)
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
