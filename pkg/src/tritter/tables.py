"""Closed-form amplitudes of the special output states on the HOM contour.

Each :class:`TableFixture` is one column of a coefficient table: device
coordinates as functions of integers ``m`` and ``n`` (``n`` plays the role of
``ñ`` for the ``n mod 4`` columns) and the exact nonzero amplitudes for input
``(1, 1, 1)`` as functions of ``m``, ``n``, ``psi`` and ``phi``.  Occupations
not listed have amplitude 0.

Entries are kept as transcribed, with two kinds of repair.  Exponents
printed as ``e^{psi+2phi}`` are read as ``e^{i(psi+2phi)}``.  Entries that
disagree with the transfer-matrix calculation are listed in :data:`ERRATA`;
the corrected value is used and the printed one is kept in
:attr:`TableFixture.errata`.  Coordinate corrections are recorded in
:attr:`TableFixture.note`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

from .fock import Occupation

SQ2, SQ3, SQ6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
PI = math.pi
I = 1j

ARCCOT_SQRT2 = math.atan(1 / SQ2)
ARCTAN_SQRT2 = math.atan(SQ2)
G_17_PLUS = 2 * math.atan(math.sqrt(5 + 2 * SQ3))
G_17_MINUS = 2 * math.atan(math.sqrt(5 - 2 * SQ3))
G_17_TILDE_PLUS = 2 * math.atan(math.sqrt(2 + SQ3))
G_17_TILDE_MINUS = 2 * math.atan(math.sqrt(2 - SQ3))

BIPARTITE = "Bipartite_Eq15"
TRIPARTITE_A = "Tripartite_Eq16"
TRIPARTITE_B = "Tripartite_Eq17"


@dataclass(frozen=True)
class Coefficient:
    """``value * (-1)**(sum of the named integers) * exp(i (a psi + b phi))``."""

    value: complex
    parity: str  # subset of "mn", e.g. "", "n", "mn"
    phase: tuple[int, int]

    def __call__(self, m: int, n: int, psi: float, phi: float) -> complex:
        exponent = (m if "m" in self.parity else 0) + (n if "n" in self.parity else 0)
        sign = -1 if exponent % 2 else 1
        a, b = self.phase
        return sign * self.value * cmath.exp(1j * (a * psi + b * phi))

    def magnitude(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class TableFixture:
    table_id: int
    column: str
    family: str
    modes: tuple[int, int, int]
    G_expr: str
    theta_expr: str
    G: Callable[[int], float] = field(repr=False)
    theta: Callable[[int], float] = field(repr=False)
    expected: dict[Occupation, Coefficient] = field(repr=False)
    errata: dict[Occupation, Coefficient] = field(default_factory=dict, repr=False)
    note: str = ""

    def coordinates(self, m: int, n: int) -> tuple[float, float]:
        return self.G(m), self.theta(n)

    def amplitudes(self, m: int, n: int, psi: float, phi: float) -> dict[Occupation, complex]:
        return {occ: c(m, n, psi, phi) for occ, c in self.expected.items()}


def _table(table_id, family, modes, block, columns, rows, note="") -> list[TableFixture]:
    """Assemble one block of a table laid out as printed.

    ``columns`` is a list of ``(G_expr, G, theta_expr, theta)``; ``rows`` maps
    an occupation label to ``(values_per_column, parity, phase)``.
    Corrections listed in :data:`ERRATA` for this block are applied.
    """
    fixes = ERRATA.get((table_id, block), {})
    out = []
    for ci, (G_expr, G, theta_expr, theta) in enumerate(columns):
        expected, printed = {}, {}
        for label, (values, parity, phase) in rows.items():
            occ = Occupation(int(ch) for ch in label)
            coef = Coefficient(values[ci], parity, phase)
            fix = fixes.get((ci, label)) or fixes.get((None, label))
            if fix is not None:
                printed[occ] = coef
                coef = fix(coef)
            expected[occ] = coef
        out.append(
            TableFixture(
                table_id, f"{block}{ci + 1}", family, modes, G_expr, theta_expr, G, theta, expected, printed,
                note,
            )
        )
    return out


def _table1() -> list[TableFixture]:
    # The three columns have disjoint supports, so each is its own block.
    col1 = _table(
        1, BIPARTITE, (1, 3, 2), "a",
        [("pi(2m+1)", lambda m: PI * (2 * m + 1), "pi/8(2n+1)", lambda n: PI / 8 * (2 * n + 1))],
        {
            "210": ([-1 / SQ2], "n", (-1, -1)),
            "012": ([1 / SQ2], "n", (1, 1)),
        },
    )
    col2 = _table(
        1, BIPARTITE, (1, 2, 3), "b",
        [("pi/4(2m+1)", lambda m: PI / 4 * (2 * m + 1), "pi n", lambda n: PI * n)],
        {
            "201": ([I / SQ2], "mn", (-1, 0)),
            "021": ([I / SQ2], "mn", (1, 0)),
        },
    )
    col3 = _table(
        1, BIPARTITE, (2, 3, 1), "c",
        [("pi/4(2m+1)", lambda m: PI / 4 * (2 * m + 1), "pi/2(2n+1)", lambda n: PI / 2 * (2 * n + 1))],
        {
            "120": ([-I / SQ2], "mn", (0, -1)),
            "102": ([-I / SQ2], "mn", (0, 1)),
        },
    )
    return col1 + col2 + col3


def _pm_columns(G_minus, G_plus, G_minus_expr, G_plus_expr, theta0, theta0_expr):
    """Four columns (G-, +theta0), (G+, +theta0), (G-, -theta0), (G+, -theta0)."""
    cols = []
    for sign, s_expr in ((1, "+"), (-1, "-")):
        for G, G_expr in ((G_minus, G_minus_expr), (G_plus, G_plus_expr)):
            cols.append(
                (G_expr, G, f"pi n {s_expr} {theta0_expr}", lambda n, s=sign: PI * n + s * theta0)
            )
    return cols


def _quarter_columns(G, G_expr):
    """Four columns with theta = pi/4 (2(4n+r)+1), r = 0..3."""
    return [
        (G_expr, G, f"pi/4(2(4n+{r})+1)", lambda n, r=r: PI / 4 * (2 * (4 * n + r) + 1))
        for r in range(4)
    ]


def _table2() -> list[TableFixture]:
    G_lo = lambda m: PI * (2 * m + 1 - 1 / 3)  # noqa: E731
    G_hi = lambda m: PI * (2 * m + 1 + 1 / 3)  # noqa: E731
    q = SQ3 / 4

    block1 = _table(
        2, TRIPARTITE_A, (2, 3, 1), "a",
        _pm_columns(G_lo, G_hi, "pi(2m+1-1/3)", "pi(2m+1+1/3)", ARCCOT_SQRT2, "arccot(sqrt2)"),
        {
            "030": ([q, q, -q, -q], "", (1, -1)),
            "003": ([I * q, -I * q, I * q, -I * q], "n", (1, 2)),
            "210": ([0.5, 0.5, -0.5, -0.5], "", (-1, -1)),
            "201": ([-I / 2, I / 2, -I / 2, I / 2], "n", (-1, 0)),
            "021": ([I / 4, -I / 4, I / 4, -I / 4], "n", (1, 0)),
            "012": ([0.25, 0.25, -0.25, -0.25], "n", (1, 1)),
        },
    )
    block2 = _table(
        2, TRIPARTITE_A, (1, 3, 2), "b",
        _quarter_columns(lambda m: PI / 2 * (2 * m + 1), "pi/2(2m+1)"),
        {
            "300": ([I * q, I * q, -I * q, -I * q], "m", (-2, -1)),
            "003": ([I * q, -I * q, -I * q, I * q], "m", (-1, -2)),
            "201": ([-I / 4, I / 4, I / 4, -I / 4], "m", (-1, 0)),
            "120": ([I / 2, I / 2, -I / 2, -I / 2], "m", (0, -1)),
            "021": ([I / 2, -I / 2, -I / 2, I / 2], "m", (1, 0)),
            "102": ([-I / 4, -I / 4, I / 4, I / 4], "m", (0, 1)),
        },
    )
    block3 = _table(
        2, TRIPARTITE_A, (1, 2, 3), "c",
        _pm_columns(G_lo, G_hi, "pi(2m+1-1/3)", "pi(2m+1+1/3)", ARCTAN_SQRT2, "arctan(sqrt2)"),
        {
            "300": ([I * q, -I * q, -I * q, I * q], "n", (-2, -1)),
            "030": ([q, q, -q, -q], "", (1, -1)),
            "210": ([0.25, 0.25, -0.25, -0.25], "", (-1, -1)),
            "120": ([I / 4, -I / 4, -I / 4, I / 4], "n", (0, -1)),
            "102": ([-I / 2, I / 2, I / 2, -I / 2], "n", (0, 1)),
            "012": ([0.5, 0.5, -0.5, 0.5], "", (1, 1)),
        },
    )
    return block1 + block2 + block3


def _two_columns(theta0, theta0_expr):
    return [
        (f"pi n + {theta0_expr}", lambda n: PI * n + theta0),
        (f"pi n - {theta0_expr}", lambda n: PI * n - theta0),
    ]


def _table3() -> list[TableFixture]:
    big, small = 1 / (3 * SQ2), SQ2 / 3
    t_minus = math.atan((1 - SQ3) / 2)
    t_plus = math.atan((1 + SQ3) / 2)
    specs = [
        ("a", G_17_PLUS, 1, "2 arctan(sqrt(5+2sqrt3))", t_minus, "arctan((1-sqrt3)/2)", {
            "300": ([I * small, -I * small], "n", (-2, -1)),
            "030": ([-big, big], "", (1, -1)),
            "003": ([I * big, I * big], "n", (1, 2)),
            "120": ([I / SQ6, -I / SQ6], "n", (0, -1)),
            "021": ([I / SQ6, I / SQ6], "n", (1, 0)),
            "102": ([-I / SQ6, I / SQ6], "n", (0, 1)),
            "012": ([-1 / SQ6, 1 / SQ6], "n", (1, 1)),
        }),
        ("b", G_17_PLUS, -1, "2 arctan(sqrt(5+2sqrt3))", t_minus, "arctan((1-sqrt3)/2)", {
            "300": ([-I * small, I * small], "n", (-2, -1)),
            "030": ([-big, big], "", (1, -1)),
            "003": ([-I * big, -I * big], "n", (1, 2)),
            "120": ([-I / SQ6, I / SQ6], "n", (0, -1)),
            "021": ([-I / SQ6, -I / SQ6], "n", (1, 0)),
            "102": ([I / SQ6, -I / SQ6], "n", (0, 1)),
            "012": ([-1 / SQ6, 1 / SQ6], "n", (1, 1)),
        }),
        ("c", G_17_MINUS, 1, "2 arctan(sqrt(5-2sqrt3))", t_plus, "arctan((1+sqrt3)/2)", {
            "300": ([I * small, -I * small], "n", (-2, -1)),
            "030": ([big, -big], "", (1, -1)),
            "003": ([I * big, I * big], "n", (1, 2)),
            "120": ([I / SQ6, -I / SQ6], "n", (0, -1)),
            "021": ([I / SQ6, I / SQ6], "n", (1, 0)),
            "102": ([-I / SQ6, I / SQ6], "n", (0, 1)),
            "012": ([1 / SQ6, -1 / SQ6], "n", (1, 1)),
        }),
        ("d", G_17_MINUS, -1, "2 arctan(sqrt(5-2sqrt3))", t_plus, "arctan((1+sqrt3)/2)", {
            "300": ([-I * small, I * small], "n", (-2, -1)),
            "030": ([big, -big], "", (1, -1)),
            "003": ([-I * big, -I * big], "n", (1, 2)),
            "120": ([-I / SQ6, I / SQ6], "n", (0, -1)),
            "021": ([-I / SQ6, -I / SQ6], "n", (1, 0)),
            "102": ([I / SQ6, I / SQ6], "n", (0, 1)),
            "012": ([1 / SQ6, -1 / SQ6], "n", (1, 1)),
        }),
    ]
    return _family17_blocks(3, (1, 2, 3), specs)


def _table5() -> list[TableFixture]:
    big, small = 1 / (3 * SQ2), SQ2 / 3
    t_plus = math.atan(1 + SQ3)
    t_minus = math.atan(1 - SQ3)
    specs = [
        ("a", G_17_PLUS, 1, "2 arctan(sqrt(5+2sqrt3))", t_plus, "arctan(1+sqrt3)", {
            "300": ([I * big, -I * big], "n", (-2, -1)),
            "030": ([big, -big], "", (1, -1)),
            "003": ([-I * small, -I * small], "n", (1, 2)),
            "210": ([1 / SQ6, -1 / SQ6], "", (-1, -1)),
            "201": ([I / SQ6, I / SQ6], "n", (-1, 0)),
            "120": ([I / SQ6, -I / SQ6], "n", (0, -1)),
            "021": ([-I / SQ6, -I / SQ6], "n", (1, 0)),
        }),
        ("b", G_17_PLUS, -1, "2 arctan(sqrt(5+2sqrt3))", t_plus, "arctan(1+sqrt3)", {
            "300": ([-I * big, I * big], "n", (-2, -1)),
            "030": ([big, -big], "", (1, -1)),
            "003": ([I * small, I * small], "n", (1, 2)),
            "210": ([1 / SQ6, -1 / SQ6], "", (-1, -1)),
            "201": ([-I / SQ6, -I / SQ6], "n", (-1, 0)),
            "120": ([-I / SQ6, I / SQ6], "n", (0, -1)),
            "021": ([I / SQ6, I / SQ6], "n", (1, 0)),
        }),
        ("c", G_17_MINUS, 1, "2 arctan(sqrt(5-2sqrt3))", t_minus, "arctan(1-sqrt3)", {
            "300": ([-I * big, I * big], "n", (-2, -1)),
            "030": ([-big, big], "", (1, -1)),
            "003": ([I * small, I * small], "n", (1, 2)),
            "210": ([-1 / SQ6, 1 / SQ6], "", (-1, -1)),
            "201": ([-I / SQ6, -I / SQ6], "n", (-1, 0)),
            "120": ([-I / SQ6, I / SQ6], "n", (0, -1)),
            "021": ([I / SQ6, I / SQ6], "n", (1, 0)),
        }),
        ("d", G_17_MINUS, -1, "2 arctan(sqrt(5-2sqrt3))", t_minus, "arctan(1-sqrt3)", {
            "300": ([I * big, -I * big], "n", (-2, -1)),
            "030": ([-big, big], "", (1, -1)),
            "003": ([-I * small, -I * small], "n", (1, 2)),
            "210": ([-1 / SQ6, 1 / SQ6], "", (-1, -1)),
            "201": ([I / SQ6, I / SQ6], "n", (-1, 0)),
            "120": ([I / SQ6, -I / SQ6], "n", (0, -1)),
            "021": ([-I / SQ6, -I / SQ6], "n", (1, 0)),
        }),
    ]
    return _family17_blocks(5, (3, 1, 2), specs)


def _family17_blocks(table_id, modes, specs) -> list[TableFixture]:
    out = []
    for block, G0, G_sign, G0_expr, theta0, theta0_expr, rows in specs:
        s = "+" if G_sign > 0 else "-"
        G = lambda m, G0=G0, G_sign=G_sign: 2 * PI * m + G_sign * G0  # noqa: E731
        cols = [(f"2 pi m {s} {G0_expr}", G, t_expr, t) for t_expr, t in _two_columns(theta0, theta0_expr)]
        out += _table(table_id, TRIPARTITE_B, modes, block, cols, rows)
    return out


def _table4() -> list[TableFixture]:
    lo, hi = 1 / (3 * SQ2), SQ2 / 3
    r6 = 1 / SQ6
    specs = [
        ("a", G_17_TILDE_PLUS, 1, "2 arctan(sqrt(2+sqrt3))", {
            "300": ([I * lo, I * lo, -I * lo, -I * lo], (-2, -1)),
            "030": ([hi, -hi, hi, -hi], (1, -1)),
            "003": ([I * lo, -I * lo, -I * lo, I * lo], (1, 2)),
            "210": ([r6, -r6, r6, -r6], (-1, -1)),
            "201": ([-I * r6, I * r6, I * r6, -I * r6], (-1, 0)),
            "102": ([-I * r6, -I * r6, I * r6, I * r6], (0, 1)),
            "012": ([r6, -r6, r6, -r6], (1, 1)),
        }),
        ("b", G_17_TILDE_PLUS, -1, "2 arctan(sqrt(2+sqrt3))", {
            "300": ([-I * lo, -I * lo, I * lo, I * lo], (-2, -1)),
            "030": ([hi, -hi, hi, -hi], (1, -1)),
            "003": ([-I * lo, I * lo, I * lo, -I * lo], (1, 2)),
            "210": ([r6, -r6, r6, -r6], (-1, -1)),
            "201": ([I * r6, -I * r6, -I * r6, I * r6], (-1, 0)),
            "102": ([I * r6, I * r6, -I * r6, -I * r6], (0, 1)),
            "012": ([r6, -r6, r6, -r6], (1, 1)),
        }),
        ("c", G_17_TILDE_MINUS, 1, "2 arctan(sqrt(2-sqrt3))", {
            "300": ([I * lo, I * lo, -I * lo, -I * lo], (-2, -1)),
            "030": ([-hi, hi, -hi, hi], (1, -1)),
            "003": ([I * lo, -I * lo, -I * lo, I * lo], (1, 2)),
            "210": ([-r6, r6, -r6, r6], (-1, -1)),
            "201": ([-I * r6, I * r6, I * r6, -I * r6], (-1, 0)),
            "102": ([-I * r6, -I * r6, I * r6, I * r6], (0, 1)),
            "012": ([-r6, r6, -r6, r6], (1, 1)),
        }),
        ("d", G_17_TILDE_MINUS, -1, "2 arctan(sqrt(2-sqrt3))", {
            "300": ([-I * lo, -I * lo, I * lo, I * lo], (-2, -1)),
            "030": ([-hi, hi, -hi, hi], (1, -1)),
            "003": ([-I * lo, I * lo, I * lo, -I * lo], (1, 2)),
            "210": ([-r6, r6, -r6, r6], (-1, -1)),
            "201": ([I * r6, -I * r6, -I * r6, I * r6], (-1, 0)),
            "102": ([I * r6, I * r6, -I * r6, -I * r6], (0, 1)),
            "012": ([-r6, r6, -r6, r6], (1, 1)),
        }),
    ]
    out = []
    for block, G0, G_sign, G0_expr, rows in specs:
        s = "+" if G_sign > 0 else "-"
        G = lambda m, G0=G0, G_sign=G_sign: 2 * PI * m + G_sign * G0  # noqa: E731
        rows = {label: (values, "", phase) for label, (values, phase) in rows.items()}
        out += _table(
            4, TRIPARTITE_B, (2, 1, 3), block, _quarter_columns(G, f"2 pi m {s} {G0_expr}"), rows,
            note="printed G omits the factor 2 in front of the arctan",
        )
    return out


def _flip(c: Coefficient) -> Coefficient:
    return Coefficient(-c.value, c.parity, c.phase)


def _drop_parity(c: Coefficient) -> Coefficient:
    return Coefficient(c.value, "", c.phase)


def _negate_phase(c: Coefficient) -> Coefficient:
    return Coefficient(c.value, c.parity, (-c.phase[0], -c.phase[1]))


# Printed entries that contradict the transfer-matrix calculation.
# (table, block) -> {(column index or None for every column, label): fix}
ERRATA: dict[tuple[int, str], dict[tuple[int | None, str], Callable[[Coefficient], Coefficient]]] = {
    (1, "b"): {(None, "201"): _flip, (None, "021"): _flip},
    (2, "a"): {(None, "012"): _drop_parity},
    (2, "b"): {(None, "003"): _negate_phase},
    (2, "c"): {(3, "012"): _flip},
    (3, "a"): {(None, "012"): _drop_parity},
    (3, "b"): {(None, "012"): _drop_parity},
    (3, "c"): {(None, "012"): _drop_parity},
    (3, "d"): {(None, "012"): _drop_parity, (1, "102"): _flip},
}


def fixtures() -> list[TableFixture]:
    """Every column of the five coefficient tables."""
    return _table1() + _table2() + _table3() + _table4() + _table5()
