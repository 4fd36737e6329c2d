"""The correction function f extracted from exact prime counts.

Writing the prime count as pi(x) = x/(ln x - f(x)) pins the correction to
f(x) = ln x - x/pi(x).  This module extracts f from exact counts, assembles
the canonical fitting dataset, walks its discontinuities (they sit exactly
on the primes), and reports residuals of a fitted model against a dataset.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator

import numpy as np

from . import reference
from .approx import FitParams, f_hat
from .counting import PiValue, prime_pi_fast, primes_in_range
from .errors import DomainError


class Provenance(Enum):
    """Where a correction sample's f value came from."""

    COMPUTED_FROM_PI = "computed"
    PUBLISHED = "published"


@dataclass(frozen=True)
class FSample:
    """One (x, y=log10 x, f) correction sample."""

    x: float
    y: float
    f: float
    provenance: Provenance


class FDataset:
    """An ordered set of correction samples, strictly increasing in y."""

    __slots__ = ("samples",)

    def __init__(self, samples: Iterable[FSample]):
        ordered = tuple(sorted(samples, key=lambda s: s.y))
        for prev, cur in zip(ordered, ordered[1:]):
            if not cur.y > prev.y:
                raise DomainError(f"duplicate sample ordinate y={cur.y}")
        self.samples = ordered

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[FSample]:
        return iter(self.samples)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FDataset) and self.samples == other.samples

    def ys(self) -> np.ndarray:
        return np.array([s.y for s in self.samples], dtype=float)

    def fs(self) -> np.ndarray:
        return np.array([s.f for s in self.samples], dtype=float)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FDataset({len(self.samples)} samples)"


def f_exact(x: float, pi_x: int) -> float:
    """ln x - x/pi(x), the exact correction at x given the exact count."""
    if pi_x < 1:
        raise DomainError(f"f_exact requires pi_x >= 1, got {pi_x}")
    if x < 2:
        raise DomainError(f"f_exact requires x >= 2, got {x}")
    return math.log(x) - x / pi_x


#: Magnitude of the printed correction value at x = 10; the definition
#: makes it negative, the printed table carries it positive.
_PRINTED_F_AT_TEN = 0.19741491


def build_dataset(max_exponent: int,
                  pi_source: Callable[[int], PiValue | None],
                  published_sign_at_ten: bool = False) -> FDataset:
    """Assemble correction samples at x = 10**n for n = 1..max_exponent.

    Exponents where ``pi_source`` yields an exact count get f computed from
    the definition; the rest fall back to the published table (absent when
    the exponent is beyond it).  The x=10 row defaults to the sign-corrected
    value; ``published_sign_at_ten`` keeps the printed positive sign instead,
    for fitting against the table exactly as printed.
    """
    if max_exponent < 1:
        raise DomainError(f"max_exponent must be >= 1, got {max_exponent}")
    published = dict(reference.CORRECTION_TABLE)
    samples = []
    for n in range(1, max_exponent + 1):
        x = 10.0 ** n
        if n == 1 and published_sign_at_ten:
            samples.append(FSample(x, float(n), _PRINTED_F_AT_TEN, Provenance.PUBLISHED))
            continue
        pv = pi_source(n)
        if pv is not None:
            samples.append(FSample(x, float(n), f_exact(x, pv.count),
                                   Provenance.COMPUTED_FROM_PI))
        elif n in published:
            f = published[n] if n != 1 else -published[n]
            samples.append(FSample(x, float(n), f, Provenance.PUBLISHED))
    return FDataset(samples)


def published_dataset(corrected: bool = True) -> FDataset:
    """The full 22-sample published dataset, sign-corrected by default."""
    return build_dataset(22, lambda n: None, published_sign_at_ten=not corrected)


def scan_discontinuities(lo: int, hi: int) -> np.ndarray:
    """Integers n in [lo, hi] where x -> ln x - x/pi(x) jumps.

    The correction inherits its jumps from the exact count, so these are
    precisely the n with pi(n) > pi(n-1): the primes of the range.
    """
    if not 2 <= lo <= hi:
        raise DomainError(f"need 2 <= lo <= hi, got lo={lo}, hi={hi}")
    return primes_in_range(lo, hi)


def correction_profile(lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """f at every integer of [lo, hi]; plot-ready discontinuity data.

    Returns (n values, f values) with f(n) = ln n - n/pi(n).
    """
    if not 2 <= lo <= hi:
        raise DomainError(f"need 2 <= lo <= hi, got lo={lo}, hi={hi}")
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    base = prime_pi_fast(lo - 1).count if lo > 2 else 0
    hits = primes_in_range(lo, hi)
    step = np.zeros(ns.size, dtype=np.int64)
    if hits.size:
        step[hits - lo] = 1
    pi_vals = base + np.cumsum(step)
    fs = np.log(ns.astype(float)) - ns / pi_vals
    return ns, fs


@dataclass(frozen=True)
class ResidualReport:
    """Per-sample residuals of a fitted model plus their sum of squares."""

    rows: tuple[tuple[float, float, float, float], ...]  # (y, f, fhat, f - fhat)
    sse: float


def residual_table(dataset: FDataset, params: FitParams) -> ResidualReport:
    """Residuals f - f_hat over a dataset and the total SSE."""
    if len(dataset) == 0:
        raise DomainError("residual_table requires a nonempty dataset")
    rows = []
    sse = 0.0
    for s in dataset:
        fh = f_hat(s.y, params)
        r = s.f - fh
        rows.append((s.y, s.f, fh, r))
        sse += r * r
    return ResidualReport(tuple(rows), sse)


_CSV_HEADER = ("exponent", "x", "y", "f", "provenance")


def dataset_to_csv(dataset: FDataset) -> str:
    """Serialize a dataset; reals carry 17 significant digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for s in dataset:
        exponent = int(round(s.y)) if abs(s.y - round(s.y)) < 1e-12 else ""
        writer.writerow([exponent, f"{s.x:.17g}", f"{s.y:.17g}", f"{s.f:.17g}",
                         s.provenance.value])
    return buf.getvalue()


def dataset_from_csv(text: str) -> FDataset:
    """Parse :func:`dataset_to_csv` output back into a dataset."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != _CSV_HEADER:
        raise DomainError(f"unrecognized dataset header: {header}")
    samples = []
    for row in reader:
        if not row:
            continue
        _, x, y, f, prov = row
        samples.append(FSample(float(x), float(y), float(f), Provenance(prov)))
    return FDataset(samples)
