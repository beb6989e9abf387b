"""Photon-number (Fock) configurations over three modes and output-state containers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

N_MODES = 3

# Amplitudes with modulus at or below this are treated as exactly zero.
EPS_ZERO = 1e-10


class Occupation(tuple):
    """Ordered triple of photon counts, one per mode.

    Behaves like a plain tuple, so ``Occupation((2, 1, 0)) == (2, 1, 0)`` and it
    hashes the same way.
    """

    __slots__ = ()

    def __new__(cls, counts: Iterable[int]) -> "Occupation":
        counts = tuple(counts)
        if len(counts) != N_MODES:
            raise ValueError(f"occupation needs {N_MODES} counts, got {len(counts)}")
        out = []
        for c in counts:
            if int(c) != c or c < 0:
                raise ValueError(f"photon counts must be non-negative integers, got {counts}")
            out.append(int(c))
        return super().__new__(cls, out)

    def total(self) -> int:
        return sum(self)

    def label(self) -> str:
        """Compact label such as ``"210"``; assumes single-digit counts."""
        return "".join(str(c) for c in self)

    def __repr__(self) -> str:
        return f"Occupation({tuple(self)})"


def enumerate_basis(n_photons: int) -> list[Occupation]:
    """All ways to distribute ``n_photons`` over three modes.

    Ordered lexicographically descending on ``(k, l, m)``, so the list starts
    at ``(n, 0, 0)`` and ends at ``(0, 0, n)``.
    """
    if n_photons < 0:
        raise ValueError("n_photons must be non-negative")
    return [
        Occupation((k, l, n_photons - k - l))
        for k in range(n_photons, -1, -1)
        for l in range(n_photons - k, -1, -1)
    ]


@dataclass(frozen=True)
class OutputState:
    """Dense amplitude vector over the canonical basis for ``input.total()`` photons.

    Parameters
    ----------
    input : Occupation
        Input photon configuration the state evolved from.
    amplitudes : ndarray of complex
        One amplitude per entry of ``enumerate_basis(input.total())``.
    """

    input: Occupation
    amplitudes: np.ndarray
    basis: tuple[Occupation, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        inp = Occupation(self.input)
        basis = tuple(enumerate_basis(inp.total()))
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (len(basis),):
            raise ValueError(f"expected {len(basis)} amplitudes, got {amps.shape[0]}")
        amps.setflags(write=False)
        object.__setattr__(self, "input", inp)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "basis", basis)

    @classmethod
    def from_mapping(cls, input: Sequence[int], amplitudes: Mapping[Sequence[int], complex]) -> "OutputState":
        """Build a state from a sparse mapping; missing occupations get amplitude 0."""
        inp = Occupation(input)
        basis = enumerate_basis(inp.total())
        index = {occ: i for i, occ in enumerate(basis)}
        vec = np.zeros(len(basis), dtype=complex)
        for occ, amp in amplitudes.items():
            occ = Occupation(occ)
            if occ not in index:
                raise ValueError(f"{occ} does not carry {inp.total()} photons")
            vec[index[occ]] = amp
        return cls(inp, vec)

    def __getitem__(self, occ: Sequence[int]) -> complex:
        occ = Occupation(occ)
        if occ.total() != self.input.total():
            return 0j
        return complex(self.amplitudes[self.basis.index(occ)])

    def __iter__(self) -> Iterator[tuple[Occupation, complex]]:
        return iter(self.items())

    def items(self) -> list[tuple[Occupation, complex]]:
        return [(occ, complex(a)) for occ, a in zip(self.basis, self.amplitudes)]

    def as_dict(self) -> dict[Occupation, complex]:
        return dict(self.items())

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def to_json(self) -> dict:
        return {
            "input": list(self.input),
            "amplitudes": [
                {"occ": list(occ), "re": float(a.real), "im": float(a.imag)} for occ, a in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "OutputState":
        amps = {tuple(e["occ"]): complex(e["re"], e["im"]) for e in data["amplitudes"]}
        return cls.from_mapping(data["input"], amps)


def support(state: OutputState, tol: float = EPS_ZERO) -> set[Occupation]:
    """Occupations whose amplitude modulus exceeds ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return {occ for occ, a in state.items() if abs(a) > tol}
