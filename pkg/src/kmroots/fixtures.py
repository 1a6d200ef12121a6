"""Named Cartan matrices and the regression scenarios built on them."""
from __future__ import annotations

from dataclasses import dataclass, field

from .cartan import GeneralizedCartanMatrix, validate_gcm
from .errors import UnknownFixture

_MATRICES = {
    "A2": ([[2, -1], [-1, 2]], ["1", "2"]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], ["1", "2", "3"]),
    # node 2 long
    "B2": ([[2, -2], [-1, 2]], ["1", "2"]),
    "G2": ([[2, -3], [-1, 2]], ["1", "2"]),
    # node 1 is the short middle node
    "C2(1)": ([[2, -1, 0], [-2, 2, -2], [0, -1, 2]], ["0", "1", "2"]),
    "A1(1)": ([[2, -2], [-2, 2]], ["1", "2"]),
    "A3(1)": (
        [[2, -1, 0, -1], [-1, 2, -1, 0], [0, -1, 2, -1], [-1, 0, -1, 2]],
        ["0", "1", "2", "3"],
    ),
    "Hyp3": ([[2, -2, -1], [-2, 2, 0], [-1, 0, 2]], ["1", "2", "3"]),
}

KINDS = {
    "A2": "finite",
    "A3": "finite",
    "B2": "finite",
    "G2": "finite",
    "C2(1)": "affine",
    "A1(1)": "affine",
    "A3(1)": "affine",
    "Hyp3": "indefinite",
}


def gcm(name: str) -> GeneralizedCartanMatrix:
    try:
        entries, labels = _MATRICES[name]
    except KeyError:
        raise UnknownFixture(f"no Cartan matrix named {name!r}") from None
    return validate_gcm(entries, labels)


def gcm_names() -> list:
    return list(_MATRICES)


@dataclass(frozen=True)
class Scenario:
    name: str
    gcm_name: str
    params: dict = field(default_factory=dict)

    @property
    def gcm(self) -> GeneralizedCartanMatrix:
        return gcm(self.gcm_name)


_SCENARIOS = {
    "remark-3.3-1": Scenario(
        "remark-3.3-1",
        "A3",
        {"I": ["2"], "lhs": [(1, 1, 0), (0, 1, 1)], "rhs": [(1, 1, 1), (0, 1, 0)]},
    ),
    "remark-3.3-2": Scenario(
        "remark-3.3-2",
        "B2",
        {"I": ["2"], "target": (1, 1), "generators": [(0, 1), (2, 1)]},
    ),
    "remark-3.10-1": Scenario(
        "remark-3.10-1",
        "B2",
        {"I": ["1", "2"], "beta_top": (2, 1), "beta": (0, 1)},
    ),
    "remark-3.11": Scenario("remark-3.11", "C2(1)", {"beta": (1, 3, 1)}),
    "remark-5.11-1i": Scenario(
        "remark-5.11-1i",
        "A3",
        {"I": ["1"], "low": (0, 1, 0), "high": (1, 1, 1)},
    ),
    "remark-5.11-1ii": Scenario(
        "remark-5.11-1ii",
        "A3",
        {"I1": ["1", "2"], "I2": ["2", "3"], "low": (-1, 0, 0), "high": (0, 0, 1)},
    ),
    # r = 1, i = 1, j = 3 (non-adjacent nodes of the 4-cycle)
    "remark-5.11-3": Scenario(
        "remark-5.11-3",
        "A3(1)",
        {"I1": ["3"], "I2": ["1"], "high": (1, 2, 1, 1), "low": (1, 1, 1, 0)},
    ),
}


def scenario(name: str) -> Scenario:
    try:
        return _SCENARIOS[name]
    except KeyError:
        raise UnknownFixture(f"no fixture named {name!r}") from None


def scenario_names() -> list:
    return list(_SCENARIOS)
