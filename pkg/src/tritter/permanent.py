"""Matrix permanents and multi-photon transition amplitudes."""

from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

MAX_ENUMERATE = 8
MAX_RYSER = 30


def permanent_enumerate(A) -> complex:
    """Permanent by summing over all ``N!`` permutations.

    Slow on purpose: this is the reference the faster routine is checked against.
    """
    A = np.asarray(A, dtype=complex)
    _check_square(A)
    n = A.shape[0]
    if n > MAX_ENUMERATE:
        raise ValueError(f"enumeration is limited to N <= {MAX_ENUMERATE}, got N = {n}")
    rows = range(n)
    total = 0j
    for cols in itertools.permutations(rows):
        prod = 1 + 0j
        for r, c in zip(rows, cols):
            prod *= A[r, c]
        total += prod
    return complex(total)


def permanent_ryser(A):
    """Permanent via Ryser's inclusion-exclusion formula with Gray-code updates.

    Costs ``O(2**N * N)``.  ``A`` may carry leading batch dimensions, i.e.
    shape ``(..., N, N)``; the result then has shape ``(...)``.

    Parameters
    ----------
    A : array_like, shape (..., N, N)

    Returns
    -------
    complex or ndarray of complex
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {A.shape}")
    n = A.shape[-1]
    if n > MAX_RYSER:
        raise ValueError(f"Ryser is limited to N <= {MAX_RYSER}, got N = {n}")
    batch = A.shape[:-2]
    if n == 0:
        out = np.ones(batch, dtype=complex)
        return complex(out) if not batch else out

    row_sums = np.zeros(batch + (n,), dtype=complex)
    total = np.zeros(batch, dtype=complex)
    gray = 0
    subset_size = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        gray ^= 1 << j
        if gray >> j & 1:
            row_sums += A[..., :, j]
            subset_size += 1
        else:
            row_sums -= A[..., :, j]
            subset_size -= 1
        term = np.prod(row_sums, axis=-1)
        if subset_size & 1:
            total -= term
        else:
            total += term
    if n & 1:
        total = -total
    return complex(total) if not batch else total


def expand_matrix(V, input: Sequence[int], output: Sequence[int]) -> np.ndarray:
    """Repeat row ``i`` of ``V`` ``input[i]`` times and column ``j`` ``output[j]`` times.

    For a ``(1, 1, 1)`` input this is just ``V`` with its columns repeated
    according to the output occupation.
    """
    V = np.asarray(V)
    input, output = _check_counts(V, input, output)
    rows = np.repeat(np.arange(len(input)), input)
    cols = np.repeat(np.arange(len(output)), output)
    return V[..., rows[:, None], cols[None, :]]


def amplitude(V, input: Sequence[int], output: Sequence[int]):
    """Transition amplitude ``<output| U(V) |input>`` for bosons.

    ``perm(expand_matrix(V, input, output)) / sqrt(prod(input!) * prod(output!))``.
    ``V`` may be batched like in :func:`permanent_ryser`.
    """
    V = np.asarray(V)
    input, output = _check_counts(V, input, output)
    if sum(input) > MAX_RYSER:
        raise ValueError(f"at most {MAX_RYSER} photons supported")
    norm = math.prod(math.factorial(k) for k in input) * math.prod(math.factorial(k) for k in output)
    return permanent_ryser(expand_matrix(V, input, output)) / math.sqrt(norm)


def _check_square(A: np.ndarray) -> None:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")


def _check_counts(V: np.ndarray, input, output) -> tuple[list[int], list[int]]:
    input, output = [int(k) for k in input], [int(k) for k in output]
    m = V.shape[-1]
    if V.ndim < 2 or V.shape[-2] != m:
        raise ValueError(f"expected square transfer matrix, got shape {V.shape}")
    if len(input) != m or len(output) != m:
        raise ValueError(f"occupations must have {m} entries")
    if min(input + output) < 0:
        raise ValueError("photon counts must be non-negative")
    if sum(input) != sum(output):
        raise ValueError(f"photon number mismatch: {sum(input)} in, {sum(output)} out")
    return input, output
