"""Exact prime counting, bit-packed prime tables, and the Mobius function.

Everything in this module is exact integer arithmetic; these routines are the
ground truth that the estimator and correction modules are measured against.
Two independent exact counters are provided: a segmented sieve (linear work,
practical to about 10^10) and a combinatorial square-root-decomposition
counter (roughly O(x^0.75) work, practical to 10^13).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from .errors import CapacityError, DomainError

DEFAULT_SEGMENT_SIZE = 1 << 20      # odd slots per sieve segment
DEFAULT_SIEVE_CAP = 10 ** 10        # prime_pi_sieve refuses larger x
DEFAULT_COMBINATORIAL_CAP = 10 ** 13  # keeps every intermediate in int64
DEFAULT_MOBIUS_CAP = 10 ** 8

SIEVE_BUDGET_ENV = "PRIMEDENSITY_SIEVE_BUDGET"
_DEFAULT_BUDGET_BYTES = 1 << 27     # 128 MiB of packed table bits

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


class PiSource(Enum):
    """How an exact prime count was obtained."""

    SIEVED = "sieved"
    COMBINATORIAL = "combinatorial"
    EMBEDDED = "embedded"


@dataclass(frozen=True)
class PiValue:
    """An exact prime count pi(x) together with its provenance."""

    x: int
    count: int
    source: PiSource


def table_budget_bytes() -> int:
    """Memory budget (bytes) for materialized prime tables.

    Overridable through the ``PRIMEDENSITY_SIEVE_BUDGET`` environment
    variable; one byte stores membership for 16 integers.
    """
    raw = os.environ.get(SIEVE_BUDGET_ENV)
    if raw is None:
        return _DEFAULT_BUDGET_BYTES
    try:
        budget = int(raw)
    except ValueError as exc:
        raise CapacityError(f"{SIEVE_BUDGET_ENV} must be an integer byte count, got {raw!r}") from exc
    if budget <= 0:
        raise CapacityError(f"{SIEVE_BUDGET_ENV} must be positive, got {budget}")
    return budget


def _base_primes(limit: int) -> np.ndarray:
    """All primes <= limit via a plain boolean sieve (limit kept modest)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p:: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _odd_segments(lo: int, hi: int, segment_size: int,
                  odd_base: np.ndarray) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (segment_start, mask) over the odd integers of [lo, hi].

    ``segment_start`` is odd and ``mask[j]`` covers ``segment_start + 2*j``.
    ``odd_base`` are the odd primes up to sqrt(hi); both bounds inclusive.
    """
    start = lo if lo % 2 == 1 else lo + 1
    top = hi if hi % 2 == 1 else hi - 1
    base = odd_base.tolist()
    while start <= top:
        end = min(start + 2 * (segment_size - 1), top)   # inclusive, odd
        n_odd = (end - start) // 2 + 1
        mask = np.ones(n_odd, dtype=bool)
        if start == 1:
            mask[0] = False
        for p in base:
            first = p * p
            if first > end:
                break
            if first < start:
                first = ((start + p - 1) // p) * p
                if first % 2 == 0:
                    first += p
            if first > end:
                continue
            mask[(first - start) // 2:: p] = False
        yield start, mask
        start = end + 2


class PrimeTable:
    """Bit-packed prime membership over [2, limit].

    Only odd numbers are stored; bit ``j`` of the packed array answers for
    the odd number ``3 + 2*j``.
    """

    __slots__ = ("limit", "_bits", "_count")

    def __init__(self, limit: int, bits: np.ndarray):
        self.limit = limit
        self._bits = bits
        self._count: int | None = None

    def __contains__(self, n: int) -> bool:
        if n < 2 or n > self.limit:
            return False
        if n == 2:
            return True
        if n % 2 == 0:
            return False
        j = (n - 3) // 2
        return bool((self._bits[j >> 3] >> (7 - (j & 7))) & 1)

    @property
    def count(self) -> int:
        """Number of primes <= limit."""
        if self._count is None:
            odd = int(_POPCOUNT8[self._bits].sum())
            self._count = odd + (1 if self.limit >= 2 else 0)
        return self._count

    def primes(self) -> np.ndarray:
        """All primes <= limit, ascending."""
        unpacked = np.unpackbits(self._bits)
        n_odd = (self.limit - 1) // 2 if self.limit >= 3 else 0
        odd = 3 + 2 * np.flatnonzero(unpacked[:n_odd].astype(bool)).astype(np.int64)
        if self.limit >= 2:
            return np.concatenate([np.array([2], dtype=np.int64), odd])
        return odd

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"PrimeTable(limit={self.limit}, count={self.count})"


def sieve_primes(limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> PrimeTable:
    """Sieve of Eratosthenes, materialized as a bit-packed table.

    Parameters
    ----------
    limit : int
        Inclusive upper bound, at least 2.
    segment_size : int
        Odd slots sieved per pass; the default keeps segments cache-sized.

    Raises
    ------
    DomainError
        If ``limit < 2``.
    CapacityError
        If the table would exceed the configured memory budget.
    """
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    max_limit = table_budget_bytes() * 16
    if limit > max_limit:
        raise CapacityError(
            f"limit {limit} exceeds the table budget ({max_limit}); "
            f"raise {SIEVE_BUDGET_ENV} or use prime_pi_sieve for counts")
    segment_size = max(8, (segment_size + 7) & ~7)   # keep packed bytes aligned
    n_odd = (limit - 1) // 2 if limit >= 3 else 0
    if n_odd == 0:
        return PrimeTable(limit, np.zeros(0, dtype=np.uint8))
    odd_base = _base_primes(math.isqrt(limit))[1:]
    chunks = []
    for _, mask in _odd_segments(3, limit, segment_size, odd_base):
        chunks.append(np.packbits(mask))
    return PrimeTable(limit, np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.uint8))


def prime_pi_sieve(x: int, cap: int = DEFAULT_SIEVE_CAP,
                   segment_size: int | None = None) -> PiValue:
    """Exact pi(x) by streaming segmented sieve; nothing is materialized.

    Raises
    ------
    CapacityError
        If ``x > cap`` (default 10**10); use :func:`prime_pi_fast` instead.
    """
    x = _check_count_arg(x, cap, "prime_pi_sieve",
                         hint="use prime_pi_fast for larger arguments")
    if x < 2:
        return PiValue(x, 0, PiSource.SIEVED)
    if segment_size is None:
        segment_size = DEFAULT_SEGMENT_SIZE if x <= (1 << 26) else (1 << 23)
    odd_base = _base_primes(math.isqrt(x))[1:]
    count = 1  # the prime 2
    for _, mask in _odd_segments(3, x, segment_size, odd_base):
        count += int(np.count_nonzero(mask))
    return PiValue(x, count, PiSource.SIEVED)


def prime_pi_fast(x: int, cap: int = DEFAULT_COMBINATORIAL_CAP) -> PiValue:
    """Exact pi(x) by square-root decomposition over the quotients x//i.

    The running tallies live on the O(sqrt(x)) distinct values of ``x // i``;
    each base prime strikes its composites from every tally at once, which is
    what makes 10^13 reachable in well under a minute.

    Raises
    ------
    CapacityError
        If ``x > cap``; beyond 10**13 intermediates would no longer be safe
        in 64-bit arithmetic at useful speed.
    """
    x = _check_count_arg(x, cap, "prime_pi_fast",
                         hint="counts beyond 10**13 are out of scope")
    if x < 2:
        return PiValue(x, 0, PiSource.COMBINATORIAL)
    r = math.isqrt(x)
    small = np.arange(r + 1, dtype=np.int64) - 1      # tally for value v
    small[0] = 0
    inv = np.arange(1, r + 1, dtype=np.int64)
    large = x // inv - 1                               # tally for value x//i

    for p in _base_primes(r).tolist():
        sp = int(small[p - 1])
        p2 = p * p
        if p2 > x:
            break
        m = min(r, x // p2)
        if m >= 1:
            # tally at value x//(i*p): a "large" slot while i*p <= r,
            # a "small" slot once x//(i*p) drops to sqrt range
            t = min(m, r // p)
            removed = np.empty(m, dtype=np.int64)
            if t > 0:
                removed[:t] = large[inv[:t] * p - 1]
            if m > t:
                removed[t:] = small[x // (inv[t:m] * p)]
            large[:m] -= removed - sp
        if p2 <= r:
            idx = np.arange(p2, r + 1, dtype=np.int64)
            small[p2:] -= small[idx // p] - sp
    return PiValue(x, int(large[0]), PiSource.COMBINATORIAL)


def _check_count_arg(x: int, cap: int, name: str, hint: str) -> int:
    if x != int(x):
        raise DomainError(f"{name} requires an integer argument, got {x!r}")
    x = int(x)
    if x < 0:
        raise DomainError(f"{name} requires x >= 0, got {x}")
    if x > cap:
        raise CapacityError(f"{name} supports x <= {cap}, got {x}; {hint}")
    return x


def primes_in_range(lo: int, hi: int, cap: int = DEFAULT_SIEVE_CAP) -> np.ndarray:
    """All primes in [lo, hi], ascending, by segmented sieve."""
    if not 2 <= lo <= hi:
        raise DomainError(f"need 2 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi > cap:
        raise CapacityError(f"primes_in_range supports hi <= {cap}, got {hi}")
    odd_base = _base_primes(math.isqrt(hi))[1:]
    out = []
    if lo <= 2 <= hi:
        out.append(np.array([2], dtype=np.int64))
    for start, mask in _odd_segments(max(lo, 3), hi, DEFAULT_SEGMENT_SIZE, odd_base):
        hits = np.flatnonzero(mask)
        if hits.size:
            out.append(start + 2 * hits.astype(np.int64))
    if not out:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(out)


def mobius(n: int) -> int:
    """Mobius function: 0 on square-divisible n, else (-1)^(#prime factors)."""
    if n == 0:
        raise DomainError("mobius is defined for n >= 1")
    if n < 0:
        raise DomainError(f"mobius requires n >= 1, got {n}")
    if n == 1:
        return 1
    sign = 1
    if n % 2 == 0:
        n //= 2
        if n % 2 == 0:
            return 0
        sign = -sign
    p = 3
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 2
    if n > 1:
        sign = -sign
    return sign


def mobius_sieve(limit: int, cap: int = DEFAULT_MOBIUS_CAP) -> np.ndarray:
    """Mobius values for 1..limit; entry k holds mu(k+1).

    Matches :func:`mobius` pointwise but computes the whole block with two
    strided passes per prime.
    """
    if limit < 1:
        raise DomainError(f"mobius_sieve requires limit >= 1, got {limit}")
    if limit > cap:
        raise CapacityError(f"mobius_sieve supports limit <= {cap}, got {limit}")
    mu = np.ones(limit + 1, dtype=np.int8)
    for p in _base_primes(limit).tolist():
        mu[p:: p] *= -1
        p2 = p * p
        if p2 <= limit:
            mu[p2:: p2] = 0
    return mu[1:]
