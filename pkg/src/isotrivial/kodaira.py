"""Kodaira fibre types with finite monodromy, as a static lookup table."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .sl2z import ALPHA, BETA, IDENTITY, UnimodularMatrix, format_matrix, order

FINITE_KINDS = ("II", "III", "IV", "I0star", "IIstar", "IIIstar", "IVstar")
STARRED_KINDS = ("I0star", "IVstar", "IIIstar", "IIstar")

DISPLAY_NAMES = {
    "I0": "I0",
    "II": "II",
    "III": "III",
    "IV": "IV",
    "I0star": "I0*",
    "IIstar": "II*",
    "IIIstar": "III*",
    "IVstar": "IV*",
}


class UnknownFibreType(KeyError):
    pass


@dataclass(frozen=True)
class KodairaFibre:
    kind: str
    dynkin: str
    euler: int
    monodromy_class: UnimodularMatrix
    # e.g. "alpha^4"; generic Ik rows say "T^k"
    monodromy_name: str

    @property
    def monodromy_order(self) -> int | float:
        return order(self.monodromy_class)

    @property
    def display_name(self) -> str:
        return DISPLAY_NAMES.get(self.kind, self.kind)

    @property
    def starred(self) -> bool:
        return self.kind in STARRED_KINDS

    @property
    def finite_monodromy(self) -> bool:
        return self.monodromy_order != float("inf")

    def as_row(self) -> dict:
        mo = self.monodromy_order
        return {
            "Kodaira type": self.display_name,
            "Dynkin diagram": self.dynkin,
            "Euler number": self.euler,
            "monodromy": format_matrix(self.monodromy_class),
            "order": "infinite" if mo == float("inf") else mo,
        }


# Kept as a module-level dict so the verification suite can be exercised
# against a tampered table in tests.
TABLE: dict[str, KodairaFibre] = {
    "II": KodairaFibre("II", "~A0", 2, ALPHA, "alpha"),
    "III": KodairaFibre("III", "~A1", 3, BETA, "beta"),
    "IV": KodairaFibre("IV", "~A2", 4, ALPHA**2, "alpha^2"),
    "I0star": KodairaFibre("I0star", "~D4", 6, ALPHA**3, "alpha^3 = beta^2 = -I"),
    "IIstar": KodairaFibre("IIstar", "~E8", 10, ALPHA**5, "alpha^5"),
    "IIIstar": KodairaFibre("IIIstar", "~E7", 9, BETA**3, "beta^3"),
    "IVstar": KodairaFibre("IVstar", "~E6", 8, ALPHA**4, "alpha^4"),
}

SMOOTH = KodairaFibre("I0", "none", 0, IDENTITY, "I")


def semistable(k: int) -> KodairaFibre:
    """Type I_k (k >= 1): a cycle of k rational curves, monodromy T^k of infinite order."""
    if k < 1:
        raise ValueError("I_k needs k >= 1")
    return KodairaFibre(f"I{k}", f"~A{k - 1}", k, UnimodularMatrix(1, k, 0, 1), f"T^{k}")


def fibre_for(kind: str) -> KodairaFibre:
    """Look up a fibre type by name (``"IVstar"``, ``"IV*"``, ``"I0"``, ``"I5"``...)."""
    key = kind.strip()
    for name, display in DISPLAY_NAMES.items():
        if key == display:
            key = name
            break
    if key in TABLE:
        return TABLE[key]
    if key == "I0":
        return SMOOTH
    if key.startswith("I") and key[1:].isdigit() and int(key[1:]) >= 1:
        return semistable(int(key[1:]))
    raise UnknownFibreType(f"unknown Kodaira type {kind!r}")


def starred_types() -> list[KodairaFibre]:
    return sorted((TABLE[k] for k in STARRED_KINDS), key=lambda f: f.euler)


def finite_types() -> list[KodairaFibre]:
    return [TABLE[k] for k in FINITE_KINDS]


def table_json(indent: int | None = 2) -> str:
    return json.dumps([TABLE[k].as_row() for k in FINITE_KINDS], indent=indent)
