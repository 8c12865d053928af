"""Session configuration and its TOML file format.

Example file::

    [variant]
    kind = "KN"      # "NN", "2N" or "KN"
    n = 4
    k = 3
    m = 1

    [session]
    L = 12
    u = 4            # optional, default max(4, L // 4)
    secret = "01"
    coalitions = [[1, 3, 4]]   # optional, default one canonical coalition

    [eve]            # optional section
    kind = "intercept-resend-z"
    players = [1, 2, 3]        # optional, default all players
    tap_probability = 1.0
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

from ..variants import SchemeVariant, variant_from_dict

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    """Invalid or unparsable session configuration."""


@dataclass(frozen=True)
class InterceptResendZ:
    """Eve Z-measures in-flight qubits headed to ``players`` (``None`` = everyone)."""

    players: tuple[int, ...] | None = None
    tap_probability: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.tap_probability <= 1.0:
            raise ConfigError(f"tap_probability must be in [0, 1], got {self.tap_probability}")
        if self.players is not None:
            object.__setattr__(self, "players", tuple(int(p) for p in self.players))

    def taps(self, player: int) -> bool:
        return self.players is None or player in self.players

    def to_dict(self) -> dict:
        return {
            "kind": "intercept-resend-z",
            "players": None if self.players is None else list(self.players),
            "tap_probability": self.tap_probability,
        }


EveModel = InterceptResendZ | None


def default_check_count(L: int) -> int:
    return max(4, L // 4)


@dataclass(frozen=True)
class ProtocolConfig:
    variant: SchemeVariant
    L: int
    secret_bits: tuple[int, ...]
    seed: int | tuple[int, ...] = 0
    u: int | None = None
    eve: EveModel = None
    coalitions: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        n = self.variant.num_players
        u = default_check_count(self.L) if self.u is None else int(self.u)
        object.__setattr__(self, "u", u)
        bits = tuple(int(b) for b in self.secret_bits)
        object.__setattr__(self, "secret_bits", bits)
        if isinstance(self.seed, (list, tuple)):
            object.__setattr__(self, "seed", tuple(int(s) for s in self.seed))
        coalitions = tuple(tuple(sorted(int(i) for i in c)) for c in self.coalitions)
        if not coalitions:
            coalitions = (self.variant.canonical_coalition(),)
        object.__setattr__(self, "coalitions", coalitions)

        if self.L <= n:
            raise ConfigError(f"need L > n, got L={self.L}, n={n}")
        if not 1 <= u < self.L:
            raise ConfigError(f"need 1 <= u < L, got u={u}, L={self.L}")
        if not bits or any(b not in (0, 1) for b in bits):
            raise ConfigError("secret must be a non-empty list of bits")
        if self.L - u < len(bits):
            raise ConfigError(f"L - u = {self.L - u} unmeasured runs cannot carry {len(bits)} bits")
        for c in coalitions:
            if len(set(c)) != len(c) or not self.variant.is_authorized(c):
                raise ConfigError(f"coalition {list(c)} is not authorized for {self.variant}")
        if self.eve is not None and self.eve.players is not None:
            if not all(1 <= p <= n for p in self.eve.players):
                raise ConfigError(f"eve taps unknown players {self.eve.players}")

    def with_seed(self, seed) -> ProtocolConfig:
        return ProtocolConfig(
            self.variant, self.L, self.secret_bits, seed, self.u, self.eve, self.coalitions
        )

    def with_eve(self, eve: EveModel) -> ProtocolConfig:
        return ProtocolConfig(
            self.variant, self.L, self.secret_bits, self.seed, self.u, eve, self.coalitions
        )

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.to_dict(),
            "session": {
                "L": self.L,
                "u": self.u,
                "secret": "".join(map(str, self.secret_bits)),
                "coalitions": [list(c) for c in self.coalitions],
            },
            "eve": None if self.eve is None else self.eve.to_dict(),
        }


def _parse_secret(raw) -> tuple[int, ...]:
    if isinstance(raw, str):
        if not raw or set(raw) - {"0", "1"}:
            raise ConfigError(f"secret {raw!r} must be a string of 0/1")
        return tuple(int(c) for c in raw)
    return tuple(int(b) for b in raw)


def config_from_dict(data: dict, seed=0) -> ProtocolConfig:
    try:
        variant = variant_from_dict(data["variant"])
        session = data["session"]
        eve_data = data.get("eve")
        eve = None
        if eve_data:
            kind = eve_data.get("kind", "intercept-resend-z")
            if kind != "intercept-resend-z":
                raise ConfigError(f"unknown eve kind {kind!r}")
            players = eve_data.get("players")
            eve = InterceptResendZ(
                None if players is None else tuple(players),
                float(eve_data.get("tap_probability", 1.0)),
            )
        return ProtocolConfig(
            variant=variant,
            L=int(session["L"]),
            secret_bits=_parse_secret(session["secret"]),
            seed=seed,
            u=session.get("u"),
            eve=eve,
            coalitions=tuple(tuple(c) for c in session.get("coalitions", ())),
        )
    except KeyError as exc:
        raise ConfigError(f"missing required key {exc.args[0]!r}") from None
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path, seed=0) -> ProtocolConfig:
    """Read a TOML session file. Syntax errors report line and column."""
    text = Path(path).read_text()
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    try:
        return config_from_dict(data, seed)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
