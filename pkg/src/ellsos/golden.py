"""Reference data: the two parameter sets and their Z tables.

Values are kept as the literal decimal strings of the source tables, so the
embedded data is byte-identical to the reference source.  Odd-L entries are
purely imaginary and are stored as ``("0", v)`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from ellsos.params import ModelParameters

SET_X = {
    1: ("0.4327", "1.0715", "1.7481", "2.2738", "2.1415"),
    2: ("0.8919", "0.7233", "0.1519", "0.4388", "2.6662"),
}
SET_MU = {
    1: ("0.6745", "0.4129", "3.3385", "3.1245", "1.9715"),
    2: ("2.5449", "1.8734", "1.2745", "2.0178", "3.0089"),
}
SET_SCALARS = {
    1: {"gamma": "0.6512", "tau": "0.1743", "p": "0.3116"},
    2: {"gamma": "0.1219", "tau": "0.2759", "p": "0.4421"},
}

# (L, definition column, representation column); each entry is (re, im).
_TABLES = {
    1: (
        (2, ("0.00057111882715", "0"), ("0.00057111882715", "0")),
        (3, ("0", "6.07562588434218"), ("0", "6.07562588434047")),
        (4, ("6195.98835867588", "0"), ("6195.98835851194", "0")),
        (5, ("0", "139.817171384552"), ("0", "139.817171384640")),
    ),
    2: (
        (2, ("0.230323036097808", "0"), ("0.230323036097803", "0")),
        (3, ("0", "0.202679526300975"), ("0", "0.202679526300981")),
        (4, ("2.659105034549285", "0"), ("2.659105034415262", "0")),
        (5, ("0", "1478.397210835060"), ("0", "1478.397210823134")),
    ),
}

MAX_SET_L = 5


def _to_complex(pair: tuple[str, str]) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def _digits(pair: tuple[str, str]) -> str:
    s = pair[0] if pair[0] != "0" else pair[1]
    return s.replace(".", "").lstrip("0")


def matched_digits(a: tuple[str, str], b: tuple[str, str]) -> int:
    """Leading significant digits two reference values share."""
    n = 0
    for ca, cb in zip(_digits(a), _digits(b)):
        if ca != cb:
            break
        n += 1
    return n


def parameter_set(set_id: int, L: int = MAX_SET_L) -> ModelParameters:
    """Reference parameter set ``set_id`` truncated to the first ``L`` rows."""
    if set_id not in SET_X:
        raise ValueError(f"unknown parameter set {set_id!r}")
    if not 1 <= L <= MAX_SET_L:
        raise ValueError(f"parameter sets have 1..{MAX_SET_L} rows, got L={L}")
    s = SET_SCALARS[set_id]
    return ModelParameters(
        L=L,
        p=float(s["p"]),
        gamma=float(s["gamma"]),
        tau=float(s["tau"]),
        x=[float(v) for v in SET_X[set_id][:L]],
        mu=[float(v) for v in SET_MU[set_id][:L]],
        warn=False,
    )


@dataclass(frozen=True)
class GoldenRow:
    L: int
    definition: tuple[str, str]
    representation: tuple[str, str]

    @property
    def expected_value(self) -> complex:
        """The definition-column value (direct summation)."""
        return _to_complex(self.definition)

    @property
    def representation_value(self) -> complex:
        return _to_complex(self.representation)

    @property
    def matched_digits(self) -> int:
        return matched_digits(self.definition, self.representation)


@dataclass(frozen=True)
class GoldenTable:
    set_id: int
    rows: tuple[GoldenRow, ...]

    def row(self, L: int) -> GoldenRow:
        for r in self.rows:
            if r.L == L:
                return r
        raise KeyError(L)


def golden_table(set_id: int) -> GoldenTable:
    if set_id not in _TABLES:
        raise ValueError(f"unknown parameter set {set_id!r}")
    return GoldenTable(set_id, tuple(GoldenRow(*row) for row in _TABLES[set_id]))


def reference_tolerance(L: int) -> float:
    """Relative tolerance against the reference values."""
    return 1e-8 if L <= 3 else 1e-6


def internal_tolerance(L: int) -> float:
    """Relative det-vs-enum tolerance."""
    return 1e-9 if L <= 4 else 1e-8
