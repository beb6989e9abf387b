"""Recognise the special output states on the HOM contour and check the coefficient tables."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coupler import DeviceParams
from .fock import EPS_ZERO, Occupation, OutputState, enumerate_basis
from .interference import evolve
from .tables import BIPARTITE, TRIPARTITE_A, TRIPARTITE_B, TableFixture, fixtures

UNCLASSIFIED = "Unclassified"
FIXTURE_TOL = 1e-10

DEFAULT_PHASES = ((0.0, 0.0), (0.7, -1.3))
DEFAULT_SAMPLES: list[tuple[int, int, float, float]] = [
    (m, n, psi, phi) for m in range(3) for n in range(3) for psi, phi in DEFAULT_PHASES
]


@dataclass(frozen=True)
class StateClass:
    kind: str
    mode_assignment: tuple[int, int, int] | None = None

    def __post_init__(self):
        if self.kind != UNCLASSIFIED and sorted(self.mode_assignment or ()) != [1, 2, 3]:
            raise ValueError(f"{self.kind} needs a permutation of (1, 2, 3) as mode assignment")

    def __str__(self):
        if self.mode_assignment is None:
            return self.kind
        j, k, l = self.mode_assignment
        return f"{self.kind} (j={j}, k={k}, l={l})"


def _place(counts: dict[int, int]) -> Occupation:
    return Occupation(counts[mode] for mode in (1, 2, 3))


def _template(kind: str, j: int, k: int, l: int) -> dict[Occupation, float]:
    """Amplitude moduli of a family member with the given roles of the modes."""
    def occ(nj, nk, nl):
        return _place({j: nj, k: nk, l: nl})

    if kind == BIPARTITE:
        r = 1 / math.sqrt(2)
        return {occ(2, 0, 1): r, occ(0, 2, 1): r}
    if kind == TRIPARTITE_A:
        a, b, c = math.sqrt(3) / 4, 0.25, 0.5
        return {
            occ(3, 0, 0): a, occ(0, 3, 0): a,
            occ(2, 1, 0): b, occ(1, 2, 0): b,
            occ(1, 0, 2): c, occ(0, 1, 2): c,
        }
    if kind == TRIPARTITE_B:
        a, b = 1 / (3 * math.sqrt(2)), 1 / math.sqrt(6)
        return {
            occ(3, 0, 0): 2 * a, occ(0, 3, 0): a, occ(0, 0, 3): a,
            occ(1, 2, 0): b, occ(0, 2, 1): b,
            occ(1, 0, 2): b, occ(0, 1, 2): b,
        }
    raise ValueError(kind)


FAMILIES = (BIPARTITE, TRIPARTITE_A, TRIPARTITE_B)


def classify(state: OutputState, tol: float = EPS_ZERO) -> StateClass:
    """Match a three-photon state against the bipartite and tripartite templates.

    Only amplitude moduli are compared, phases are ignored.  Mode
    assignments ``(j, k, l)`` are tried in lexicographic order and the first
    match wins.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if state.input.total() != 3:
        raise ValueError(f"classification needs a 3-photon state, got {state.input.total()}")
    moduli = {occ: abs(a) for occ, a in state.items()}
    observed = {occ for occ, r in moduli.items() if r > tol}
    for kind in FAMILIES:
        for perm in itertools.permutations((1, 2, 3)):
            template = _template(kind, *perm)
            if set(template) != observed:
                continue
            if all(abs(moduli[occ] - r) <= tol for occ, r in template.items()):
                return StateClass(kind, perm)
    return StateClass(UNCLASSIFIED)


@dataclass(frozen=True)
class FixtureResult:
    table: int
    column: str
    params: dict
    passed: bool
    max_dev: float

    def to_json(self) -> dict:
        return {
            "table": self.table,
            "column": self.column,
            "params": self.params,
            "pass": self.passed,
            "max_dev": self.max_dev,
        }


def check_fixture(fx: TableFixture, m: int, n: int, psi: float, phi: float, tol: float = FIXTURE_TOL) -> FixtureResult:
    G, theta = fx.coordinates(m, n)
    state = evolve(DeviceParams(G, theta, psi, phi))
    expected = fx.amplitudes(m, n, psi, phi)
    dev = max(abs(state[occ] - expected.get(occ, 0)) for occ in enumerate_basis(3))
    params = {"m": m, "n": n, "psi": psi, "phi": phi}
    return FixtureResult(fx.table_id, fx.column, params, bool(dev <= tol), float(dev))


def verify_fixtures(
    param_samples: Iterable[Sequence] | None = None,
    fixture_list: Sequence[TableFixture] | None = None,
    tol: float = FIXTURE_TOL,
) -> list[FixtureResult]:
    """Evaluate every fixture at every ``(m, n, psi, phi)`` sample.

    Listed coefficients must match within ``tol``; unlisted ones must have
    modulus at most ``tol``.  Failures are reported, never raised.
    """
    samples = DEFAULT_SAMPLES if param_samples is None else [tuple(s) for s in param_samples]
    fixture_list = fixtures() if fixture_list is None else fixture_list
    results = [
        check_fixture(fx, int(m), int(n), float(psi), float(phi), tol)
        for fx in fixture_list
        for m, n, psi, phi in samples
    ]
    return sorted(results, key=lambda r: (r.table, r.column, tuple(r.params.values())))


def all_passed(results: Iterable[FixtureResult]) -> bool:
    return all(r.passed for r in results)


def report_to_json(results: Iterable[FixtureResult]) -> str:
    return json.dumps([r.to_json() for r in results], indent=1)


def report_to_text(results: Sequence[FixtureResult]) -> str:
    header = ("table", "column", "m", "n", "psi", "phi", "result", "max_dev")
    rows = [
        (
            str(r.table), r.column, str(r.params["m"]), str(r.params["n"]),
            f"{r.params['psi']:g}", f"{r.params['phi']:g}",
            "pass" if r.passed else "FAIL", f"{r.max_dev:.3e}",
        )
        for r in results
    ]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows]
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} passed")
    return "\n".join(lines) + "\n"
