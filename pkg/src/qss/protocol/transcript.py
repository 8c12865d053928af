"""Ordered event log of a session, with per-party views.

Every event carries an ``audience``: the parties that see it. Tokens are
``"dealer"``, ``"eve"``, ``"public"`` and ``"player:<i>"``. Exported lines are
JSON objects with the fields ``seq``, ``actor``, ``event_kind``, ``audience``
and ``payload``, keys sorted, no whitespace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

DEALER = "dealer"
EVE = "eve"
PUBLIC = "public"

# Payload keys that must never reach a player.
DEALER_SECRET_KEYS = frozenset({"run", "runs", "label", "labels", "perm", "check_perm", "secret"})

# Event kinds addressed to a single player; their "player" field must be the viewer.
PER_PLAYER_KINDS = frozenset({"deliver", "check_list", "reveal"})


def player(i: int) -> str:
    return f"player:{i}"


@dataclass(frozen=True)
class Event:
    seq: int
    actor: str
    event_kind: str
    payload: dict
    audience: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "actor": self.actor,
            "event_kind": self.event_kind,
            "audience": list(self.audience),
            "payload": self.payload,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass
class Transcript:
    events: list[Event] = field(default_factory=list)

    def emit(self, actor: str, kind: str, payload: dict, audience: Iterable[str]) -> Event:
        event = Event(len(self.events) + 1, actor, kind, payload, tuple(audience))
        self.events.append(event)
        return event

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def of_kind(self, kind: str) -> list[Event]:
        return [e for e in self.events if e.event_kind == kind]

    def view(self, party: str) -> list[Event]:
        return [e for e in self.events if party in e.audience or PUBLIC in e.audience]

    def player_view(self, i: int) -> list[Event]:
        return self.view(player(i))

    def to_jsonl(self) -> str:
        return "".join(e.to_json() + "\n" for e in self.events)

    @classmethod
    def from_jsonl(cls, text: str) -> Transcript:
        t = cls()
        for line in text.splitlines():
            if line.strip():
                d = json.loads(line)
                t.events.append(
                    Event(d["seq"], d["actor"], d["event_kind"], d["payload"], tuple(d["audience"]))
                )
        return t


def _keys(obj) -> Iterator[str]:
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield k
            yield from _keys(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            yield from _keys(v)


def view_violations(transcript: Transcript, i: int) -> list[str]:
    """Structural secrecy problems in player ``i``'s view (empty when clean)."""
    problems = []
    for e in transcript.player_view(i):
        leaked = DEALER_SECRET_KEYS.intersection(_keys(e.payload))
        if leaked:
            problems.append(f"seq {e.seq} ({e.event_kind}) exposes {sorted(leaked)}")
        if e.event_kind in PER_PLAYER_KINDS and e.payload.get("player") != i:
            problems.append(f"seq {e.seq} ({e.event_kind}) addressed to another player")
    return problems
