"""Three-waveguide coupler: coupling matrix, device parameters and transfer matrix.

The outer waveguides (modes 1 and 3) couple only to the centre waveguide
(mode 2).  With complex couplings ``g1`` (1-2) and ``g2`` (2-3) acting for a
time ``t``, the device is fully described by

    g1 * t = G cos(theta) exp(i psi)
    g2 * t = G sin(theta) exp(i phi)

and the creation operators transform as ``a_in = V @ a_out``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class PhysicalParams:
    """Coupling constants (1/time) and interaction time."""

    g1: complex
    g2: complex
    t: float = 1.0

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("interaction time t must be non-negative")


@dataclass(frozen=True)
class DeviceParams:
    """Canonical parameterization ``(G, theta, psi, phi)``; angles in radians.

    Any real ``G`` and ``theta`` are accepted.  :func:`canonicalize` only ever
    produces ``G >= 0`` and ``theta`` in ``[0, pi/2]``.
    """

    G: float
    theta: float
    psi: float = 0.0
    phi: float = 0.0

    def couplings(self) -> tuple[complex, complex]:
        """Return ``(g1 * t, g2 * t)``."""
        g1t = self.G * math.cos(self.theta) * complex(math.cos(self.psi), math.sin(self.psi))
        g2t = self.G * math.sin(self.theta) * complex(math.cos(self.phi), math.sin(self.phi))
        return g1t, g2t

    def with_phases(self, psi: float, phi: float) -> "DeviceParams":
        return DeviceParams(self.G, self.theta, psi, phi)


def coupling_matrix(p: PhysicalParams) -> np.ndarray:
    """Hermitian coupling matrix of the Heisenberg equations for the creation operators."""
    g1, g2 = complex(p.g1), complex(p.g2)
    return np.array(
        [
            [0, g1, 0],
            [g1.conjugate(), 0, g2],
            [0, g2.conjugate(), 0],
        ],
        dtype=complex,
    )


def canonicalize(p: PhysicalParams) -> DeviceParams:
    """Convert physical couplings to ``(G, theta, psi, phi)``.

    Phases of vanishing couplings are set to 0, as is ``theta`` when both
    couplings vanish.
    """
    g1, g2 = complex(p.g1), complex(p.g2)
    a1, a2 = abs(g1), abs(g2)
    G = p.t * math.hypot(a1, a2)
    if a1 == 0 and a2 == 0:
        return DeviceParams(G, 0.0, 0.0, 0.0)
    theta = math.atan2(a2, a1)
    psi = math.atan2(g1.imag, g1.real) if a1 > 0 else 0.0
    phi = math.atan2(g2.imag, g2.real) if a2 > 0 else 0.0
    return DeviceParams(G, theta, psi, phi)


def closed_form(G, theta, psi=0.0, phi=0.0) -> np.ndarray:
    """Closed-form transfer matrix, broadcasting over array-valued parameters.

    Returns an array of shape ``broadcast_shape + (3, 3)``.
    """
    G, theta, psi, phi = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (G, theta, psi, phi))
    )
    c, s = np.cos(theta), np.sin(theta)
    cG, sG = np.cos(G), np.sin(G)
    e_psi, e_phi = np.exp(1j * psi), np.exp(1j * phi)

    V = np.empty(G.shape + (3, 3), dtype=complex)
    V[..., 0, 0] = c * c * cG + s * s
    V[..., 0, 1] = -1j * c * sG * e_psi
    V[..., 0, 2] = c * s * e_psi * e_phi * (cG - 1)
    V[..., 1, 0] = -1j * c * sG * np.conj(e_psi)
    V[..., 1, 1] = cG
    V[..., 1, 2] = -1j * s * sG * e_phi
    V[..., 2, 0] = c * s * np.conj(e_psi * e_phi) * (cG - 1)
    V[..., 2, 1] = -1j * s * sG * np.conj(e_phi)
    V[..., 2, 2] = s * s * cG + c * c
    return V


def transfer_matrix(d: DeviceParams) -> np.ndarray:
    """3x3 unitary transfer matrix of the device."""
    return closed_form(d.G, d.theta, d.psi, d.phi)


def transfer_matrix_oracle(p: PhysicalParams) -> np.ndarray:
    """``exp(-i M t)`` via eigendecomposition of the Hermitian coupling matrix.

    Independent of :func:`closed_form`; used to cross-check it.
    """
    M = coupling_matrix(p)
    w, U = np.linalg.eigh(M)
    return (U * np.exp(-1j * w * p.t)) @ U.conj().T


def unitarity_error(V: np.ndarray) -> float:
    """Largest entry of ``|V^dagger V - I|``."""
    V = np.asarray(V)
    eye = np.eye(V.shape[-1])
    return float(np.max(np.abs(np.swapaxes(V.conj(), -1, -2) @ V - eye)))


def matrix_to_json(V: np.ndarray) -> list[list[dict]]:
    return [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in np.asarray(V)]


def matrix_from_json(data) -> np.ndarray:
    if isinstance(data, str):
        data = json.loads(data)
    return np.array([[complex(e["re"], e["im"]) for e in row] for row in data], dtype=complex)


def format_complex(z: complex, digits: int = 15) -> str:
    """``a+bi`` with ``digits`` significant digits per part."""
    re = 0.0 if z.real == 0 else z.real
    im = 0.0 if z.imag == 0 else z.imag
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{re:.{digits}g}{sign}{abs(im):.{digits}g}i"


def format_matrix(V: np.ndarray, digits: int = 15) -> str:
    cells = [[format_complex(complex(z), digits) for z in row] for row in np.asarray(V)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)
