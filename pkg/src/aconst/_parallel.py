"""Prime-sharded fan-out for the congruence verifiers.

Work is independent per prime; shards are strided so each worker gets a
similar mix of small and large primes (cost grows with p).  Workers must be
module-level functions taking one (static_args, primes_shard) tuple and
returning picklable results.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def run_prime_shards(
    fn: Callable, static_args: tuple, primes: Sequence[int], threads: int
) -> list:
    if threads > 1 and len(primes) > 1:
        shards = [primes[i::threads] for i in range(threads)]
        shards = [s for s in shards if s]
        with ProcessPoolExecutor(max_workers=len(shards)) as pool:
            return list(pool.map(fn, [(static_args, s) for s in shards]))
    return [fn((static_args, list(primes)))]
