"""Closed-form spectrum of the partially transposed teleported GHZ state.

The GHZ-type basis vectors (see hilbert.ghz_basis) diagonalize the partial
transpose of the teleported GHZ state across any bipartition.  Everything
here is indexed by the basis integer j, its Hamming weight, and the integer
r encoding the bipartition; exponentials are evaluated in log space so that
large qubit counts neither overflow nor underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .hilbert import ATOL_INVARIANT

_LOG2 = math.log(2.0)


def normalize_bipartition(n: int, parties: Iterable[int]) -> frozenset:
    """Canonical form of a bipartition subset: the last qubit stays outside.

    The teleported GHZ state is permutation invariant, so when the caller's
    subset contains qubit n-1 it is relabelled by swapping n-1 with the
    smallest qubit outside the subset; the spectrum is unchanged.
    """
    subset = frozenset(int(q) for q in parties)
    if any(not 0 <= q < n for q in subset):
        raise ValueError(f"bipartition {sorted(subset)} outside qubit range [0, {n})")
    if not subset or len(subset) == n:
        raise ValueError("bipartition must be a nonempty proper subset")
    if n - 1 in subset:
        swap = min(set(range(n)) - subset)
        subset = (subset - {n - 1}) | {swap}
    return subset


def bipartition_r_index(n: int, parties: frozenset) -> int:
    """Basis integer whose bits flag the qubits inside the bipartition."""
    return sum(1 << (n - 2 - q) for q in parties)


@dataclass(frozen=True)
class SpectrumIndex:
    """One eigenvector label: basis integer j, sign, and the bipartition."""

    n: int
    j: int
    sign: int
    parties: frozenset

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 qubits")
        if not 0 <= self.j < 2 ** (self.n - 1):
            raise ValueError(f"index {self.j} outside [0, {2 ** (self.n - 1)})")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "parties", normalize_bipartition(self.n, self.parties))

    @property
    def hamming_weight(self) -> int:
        return self.j.bit_count()

    @property
    def r(self) -> int:
        return bipartition_r_index(self.n, self.parties)


def noise_overlap_closed(n: int, p: float, j: int) -> float:
    """Closed form of the noise-component overlap on basis vector j.

    This is the expectation, on the j-th GHZ-type basis vector, of the sum of
    all partially depolarized components of the teleported GHZ state; it
    depends on j only through its Hamming weight.
    """
    _check_overlap_args(n, p, j)
    w = j.bit_count()
    half = 0.5
    if j == 0:
        return half * (-(p**n) + ((1 + p) / 2) ** n - ((1 - p) / 2) ** n)
    mixed = ((1 + p) ** (n - w) * (1 - p) ** w + (1 - p) ** (n - w) * (1 + p) ** w) / 2 ** (n + 1)
    return mixed - ((1 - p) / 2) ** n


def noise_overlap_direct(n: int, p: float, j: int) -> float:
    """Counting-form oracle for noise_overlap_closed.

    Sums p^(n-k) ((1-p)/2)^k over the noisy-subset sizes k, weighted by the
    number of subsets whose complement sees constant bits of j: subsets
    containing all one-bits plus subsets containing all zero-bits.
    """
    _check_overlap_args(n, p, j)
    w = j.bit_count()  # the implicit last bit of j is 0
    total = 0.0
    for k in range(1, n):
        ones = math.comb(n - w, k - w) if k >= w else 0
        zeros = math.comb(w, k - (n - w)) if k >= n - w else 0
        total += (ones + zeros) * p ** (n - k) * ((1 - p) / 2) ** k
    return 0.5 * total


def _check_overlap_args(n: int, p: float, j: int):
    if n < 2:
        raise ValueError("need at least 2 qubits")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"visibility {p} outside [0, 1]")
    if not 0 <= j < 2 ** (n - 1):
        raise ValueError(f"index {j} outside [0, {2 ** (n - 1)})")


def _mixed_term(n: int, p: float, w: int) -> float:
    """[(1+p)^(n-w)(1-p)^w + (1-p)^(n-w)(1+p)^w] / 2^(n+1), in log space."""
    if p == 1.0:
        return 0.5 if w == 0 else 0.0
    log_plus = math.log1p(p)
    log_minus = math.log1p(-p)
    first = (n - w) * log_plus + w * log_minus - (n + 1) * _LOG2
    second = (n - w) * log_minus + w * log_plus - (n + 1) * _LOG2
    return float(np.exp(np.logaddexp(first, second)))


def partial_transpose_eigenvalue(idx: SpectrumIndex, p: float) -> float:
    """Eigenvalue of the partially transposed teleported GHZ state.

    Value on the (j, sign) basis vector:
    sign * d_{jr} * p^n/2 + [(1+p)^(n-w)(1-p)^w + (1-p)^(n-w)(1+p)^w]/2^(n+1)
    with w the Hamming weight of j.  Only (j=r, sign=-1) can be negative.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"visibility {p} outside (0, 1]; use the dense path for p=0")
    value = _mixed_term(idx.n, p, idx.hamming_weight)
    if idx.j == idx.r:
        value += idx.sign * p**idx.n / 2.0
    return value


def min_eigenvalue_teleported_ghz(n: int, p: float, parties: Iterable[int]) -> float:
    """Smallest eigenvalue across the whole spectrum, by Hamming-weight class."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"visibility {p} outside (0, 1]")
    subset = normalize_bipartition(n, parties)
    w_r = len(subset)
    shift = p**n / 2.0
    smallest = math.inf
    for w in range(n):
        count = math.comb(n - 1, w)
        base = _mixed_term(n, p, w)
        if w == w_r:
            smallest = min(smallest, base - shift, base + shift)
            count -= 1  # r itself accounted for above
        if count > 0:
            smallest = min(smallest, base)
    return smallest


def is_ppt_teleported_ghz(
    n: int, p: float, parties: Iterable[int], full_scan: bool = False
) -> bool:
    """PPT test for the teleported GHZ state across the given bipartition.

    Fast path: only the (r, -) eigenvalue can be negative, and its sign is
    decided by a two-term log-space comparison.  The full scan evaluates the
    entire spectrum instead (debug cross-check).
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"visibility {p} outside (0, 1]")
    subset = normalize_bipartition(n, parties)
    if full_scan:
        return min_eigenvalue_teleported_ghz(n, p, subset) >= 0.0
    return _critical_sign_nonnegative(n, p, len(subset))


def _critical_sign_nonnegative(n: int, p: float, w: int) -> bool:
    # sign of the (r, -) eigenvalue: -1 + ((1+p)/2p)^n ((1-p)/(1+p))^w
    #                                   + ((1-p)/2p)^n ((1+p)/(1-p))^w  >= 0
    if p == 1.0:
        return False  # eigenvalue -1/2: the perfect GHZ state is NPT
    log_a = n * math.log((1 + p) / (2 * p)) + w * math.log((1 - p) / (1 + p))
    log_b = n * math.log((1 - p) / (2 * p)) + w * math.log((1 + p) / (1 - p))
    return bool(np.logaddexp(log_a, log_b) >= 0.0)


def ppt_crossover(p: float, w: int) -> int:
    """Smallest qubit count at which the teleported GHZ state turns PPT.

    For a bipartition of fixed size w and visibility p < 1, scans n upward
    from w+1 using the closed form and returns the first n whose critical
    eigenvalue is nonnegative.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"visibility {p} outside (0, 1); the crossover needs p < 1")
    if w < 1:
        raise ValueError("bipartition size must be at least 1")
    n = w + 1
    while not _critical_sign_nonnegative(n, p, w):
        n += 1
    return n


@dataclass(frozen=True)
class TeleportedGhzSpectrum:
    """Full eigenvalue table of the partially transposed teleported GHZ state."""

    n: int
    p: float
    parties: frozenset
    eigenvalues: dict

    def min_eigenvalue(self) -> float:
        return min(self.eigenvalues.values())


def teleported_ghz_spectrum(n: int, p: float, parties: Iterable[int]) -> TeleportedGhzSpectrum:
    """Tabulate every (j, sign) eigenvalue; the table must sum to one."""
    subset = normalize_bipartition(n, parties)
    values = {}
    for j in range(2 ** (n - 1)):
        for sign in (1, -1):
            idx = SpectrumIndex(n, j, sign, subset)
            values[(j, sign)] = partial_transpose_eigenvalue(idx, p)
    trace = math.fsum(values.values())
    if abs(trace - 1.0) > ATOL_INVARIANT:
        raise AssertionError(f"spectrum sums to {trace!r}, expected 1")
    return TeleportedGhzSpectrum(n, p, subset, values)


def spectrum_trace_by_weight(n: int, p: float) -> float:
    """Sum of all eigenvalues computed per Hamming-weight class.

    Grouping by weight keeps the check cheap for large n; the sign shifts at
    j = r cancel, so the bipartition does not enter.
    """
    return math.fsum(
        2 * math.comb(n - 1, w) * _mixed_term(n, p, w) for w in range(n)
    )
