"""Counter-based random number generation.

All randomness flows through Philox generators keyed by ``(seed, stream,
index)``.  Philox is counter-based, so a given key always reproduces the
same stream regardless of what other generators were used in between;
ensembles are carved into fixed-size chunks with per-chunk keys, which
makes results independent of any parallel schedule.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

# Stream tags keep generators for unrelated purposes on disjoint keys.
STREAM_INCREMENTS = 1
STREAM_LEVY_ITO = 2
STREAM_FEYNMAN_KAC = 3
STREAM_GAP_STAT = 4

CHUNK = 4096


def make_generator(seed: int, stream: int = 0, index: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed, stream, index)."""
    key = np.array(
        [np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(((stream & 0xFFFF) << 48) | (index & 0xFFFFFFFFFFFF))],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def chunked_fill(n_items: int, fill_chunk, threads: int = 1) -> None:
    """Run ``fill_chunk(chunk_index, start, stop)`` over chunks of ``n_items``.

    ``fill_chunk`` must write into preallocated output slices; chunk keys make
    the result identical for any ``threads`` value.
    """
    spans = [(j, s, min(s + CHUNK, n_items)) for j, s in enumerate(range(0, n_items, CHUNK))]
    if threads <= 1 or len(spans) <= 1:
        for j, s, e in spans:
            fill_chunk(j, s, e)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(lambda span: fill_chunk(*span), spans))
