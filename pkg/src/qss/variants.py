"""Threshold scheme variants.

``NN``            (n, n) scheme on the distance-0 GHZ pair.
``Restricted2N``  restricted (2, n) scheme on a distance-r GHZ pair.
``KN``            (k, n) scheme on a distance-r Dicke pair, r = n_eff - k + 1.

For odd ``n`` the KN scheme runs on ``n + 1`` qubits; the dealer keeps the
last one and acts as an extra player during the checks only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class NN:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("NN scheme needs n >= 2")

    kind = "NN"

    @property
    def num_players(self) -> int:
        return self.n

    @property
    def num_qubits(self) -> int:
        return self.n

    @property
    def dealer_qubit(self) -> int | None:
        return None

    def is_authorized(self, coalition) -> bool:
        return set(coalition) == set(range(1, self.n + 1))

    def canonical_coalition(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n}


@dataclass(frozen=True)
class Restricted2N:
    n: int
    r: int

    kind = "2N"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("(2,n) scheme needs n >= 2")
        if not 1 <= self.r <= self.n // 2:
            raise ValueError(f"r must be in 1..{self.n // 2}, got {self.r}")

    @property
    def num_players(self) -> int:
        return self.n

    @property
    def num_qubits(self) -> int:
        return self.n

    @property
    def dealer_qubit(self) -> int | None:
        return None

    def is_authorized(self, coalition) -> bool:
        members = set(coalition)
        if not members <= set(range(1, self.n + 1)):
            return False
        return any(i <= self.r for i in members) and any(i > self.r for i in members)

    def canonical_coalition(self) -> tuple[int, ...]:
        return (1, self.r + 1)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "r": self.r}


@dataclass(frozen=True)
class KN:
    n: int
    k: int
    m: int

    kind = "KN"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("(k,n) scheme needs n >= 2")
        if not math.ceil(self.n / 2) <= self.k < self.n:
            raise ValueError(f"k must satisfy ceil(n/2) <= k < n, got k={self.k}, n={self.n}")
        if not (self.m > 0 and self.m + self.r < self.n_effective):
            raise ValueError(
                f"need 0 < m and m + r < {self.n_effective}; got m={self.m}, r={self.r}"
            )

    @property
    def odd(self) -> bool:
        return self.n % 2 == 1

    @property
    def n_effective(self) -> int:
        return self.n + 1 if self.odd else self.n

    @property
    def r(self) -> int:
        return self.n_effective - self.k + 1

    @property
    def num_players(self) -> int:
        return self.n

    @property
    def num_qubits(self) -> int:
        return self.n_effective

    @property
    def dealer_qubit(self) -> int | None:
        return self.n + 1 if self.odd else None

    def is_authorized(self, coalition) -> bool:
        members = set(coalition)
        return members <= set(range(1, self.n + 1)) and len(members) >= self.k

    def canonical_coalition(self) -> tuple[int, ...]:
        return tuple(range(1, self.k + 1))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "k": self.k, "m": self.m}


SchemeVariant = Union[NN, Restricted2N, KN]


def variant_from_dict(data: dict) -> SchemeVariant:
    data = dict(data)
    kind = str(data.pop("kind", "")).upper()
    try:
        if kind == "NN":
            return NN(int(data["n"]))
        if kind in ("2N", "RESTRICTED2N"):
            return Restricted2N(int(data["n"]), int(data["r"]))
        if kind == "KN":
            return KN(int(data["n"]), int(data["k"]), int(data["m"]))
    except KeyError as exc:
        raise ValueError(f"variant {kind!r} is missing field {exc.args[0]!r}") from None
    raise ValueError(f"unknown variant kind {kind!r}; expected NN, 2N or KN")
