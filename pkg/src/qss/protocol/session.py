"""Dealer / player / eavesdropper session engine.

Runs are dealer-held joint states; "sending" qubit i of run t to player i
hands the player a :class:`QubitRef` at slot ``Pi_i(t)`` of their sequence.
Any party's measurement collapses the shared run state, so correlations are
exact. The dealer, nature (Born sampling) and Eve draw from separate child
streams of the session seed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..locc import counting_measure, global_measure, two_party_measure
from ..qcore import PauliAxis, PureState, RandomSource, measure_qubit
from ..states import (
    DickePairSpec,
    GhzPairSpec,
    Member,
    StabilizerVector,
    expected_eigenvalue,
    ghz_stabilizer_family,
    variant_pair,
)
from ..variants import NN, Restricted2N, SchemeVariant
from .config import InterceptResendZ, ProtocolConfig
from .transcript import DEALER, EVE, PUBLIC, Transcript, player

log = logging.getLogger(__name__)

MAX_ROUNDS = 64


class ProtocolError(RuntimeError):
    pass


class SlotConsumedError(ProtocolError):
    """A player was asked to measure a qubit that was already measured."""


class ResourceExhausted(ProtocolError):
    """No unmeasured run carries the label a secret bit needs."""


class UnauthorizedCoalition(PermissionError):
    pass


@dataclass
class RunRecord:
    run_id: int
    label: Member
    state: PureState
    measured_qubits: set[int] = field(default_factory=set)

    @property
    def untouched(self) -> bool:
        return not self.measured_qubits

    def measure(self, qubit: int, axis: PauliAxis, rng: RandomSource) -> int:
        outcome, self.state = measure_qubit(self.state, qubit, axis, rng)
        self.measured_qubits.add(qubit)
        return outcome


@dataclass(frozen=True)
class QubitRef:
    run: RunRecord
    qubit: int


@dataclass
class Player:
    index: int
    slots: list[QubitRef | None]
    consumed: set[int] = field(default_factory=set)

    def ref(self, slot: int) -> QubitRef:
        if not 1 <= slot <= len(self.slots) or self.slots[slot - 1] is None:
            raise ProtocolError(f"player {self.index} holds no qubit at slot {slot}")
        return self.slots[slot - 1]

    def measure(self, slot: int, axis: PauliAxis, rng: RandomSource) -> int:
        if slot in self.consumed:
            raise SlotConsumedError(f"player {self.index}: slot {slot} already measured")
        ref = self.ref(slot)
        self.consumed.add(slot)
        return ref.run.measure(ref.qubit, axis, rng)


@dataclass(frozen=True)
class ShuffleMap:
    """Dealer-private delivery order: ``perms[i][t - 1]`` is the slot of run
    ``t`` in player i's sequence. Check-phase orders live in :class:`CheckPlan`.
    """

    perms: dict[int, tuple[int, ...]]

    def slot(self, i: int, t: int) -> int:
        return self.perms[i][t - 1]


@dataclass(frozen=True)
class CheckListEntry:
    axis: PauliAxis
    slot: int


@dataclass(frozen=True)
class CheckPlan:
    runs: tuple[int, ...]
    settings: dict[int, StabilizerVector | PauliAxis]
    lists: dict[int, tuple[CheckListEntry, ...]]
    check_perms: dict[int, tuple[int, ...]]

    def axis_for(self, t: int, qubit: int) -> PauliAxis:
        setting = self.settings[t]
        if isinstance(setting, StabilizerVector):
            return setting.pauli().axes[qubit - 1]
        return setting


@dataclass(frozen=True)
class EveRecord:
    player: int
    slot: int
    outcome: int


@dataclass(frozen=True)
class CheckOutcome:
    run: int
    setting: str
    expected: int
    product: int

    @property
    def passed(self) -> bool:
        return self.product == self.expected


@dataclass(frozen=True)
class Verification:
    passed: bool
    checks: tuple[CheckOutcome, ...]
    missing: tuple[int, ...] = ()

    @property
    def mismatches(self) -> int:
        return sum(not c.passed for c in self.checks)


@dataclass
class SessionResult:
    config: ProtocolConfig
    aborted: bool
    eve_detected: bool
    reconstructed: dict[tuple[int, ...], tuple[int, ...]]
    transcript: Transcript
    checks: list[CheckOutcome]
    rounds: int
    eve_records: list[EveRecord]

    def accuracy(self, coalition) -> float:
        guess = self.reconstructed[tuple(coalition)]
        secret = self.config.secret_bits
        return sum(g == s for g, s in zip(guess, secret)) / len(secret)


@dataclass
class SessionRandom:
    dealer: RandomSource
    nature: RandomSource
    eve: RandomSource

    @classmethod
    def from_seed(cls, seed) -> SessionRandom:
        seq = np.random.SeedSequence(seed)
        return cls(*(np.random.default_rng(s) for s in seq.spawn(3)))


# preparation --------------------------------------------------------------


def dealer_prepare(config: ProtocolConfig, rng: RandomSource) -> list[RunRecord]:
    pair = variant_pair(config.variant)
    labels = rng.integers(0, 2, size=config.L)
    return [RunRecord(t, Member(int(a)), pair[int(a)]) for t, a in enumerate(labels, start=1)]


# distribution -------------------------------------------------------------


def eve_intercept_resend(
    ref: QubitRef, player_index: int, slot: int, model: InterceptResendZ, rng: RandomSource
) -> EveRecord | None:
    """Maybe Z-measure one in-flight qubit, then forward it (collapsed)."""
    if not model.taps(player_index) or rng.random() >= model.tap_probability:
        return None
    outcome, ref.run.state = measure_qubit(ref.run.state, ref.qubit, PauliAxis.Z, rng)
    return EveRecord(player_index, slot, outcome)


def shuffle_and_distribute(
    config: ProtocolConfig,
    runs: list[RunRecord],
    rng: RandomSource,
    eve_rng: RandomSource | None = None,
    transcript: Transcript | None = None,
    identity: bool = False,
) -> tuple[ShuffleMap, dict[int, Player], list[EveRecord]]:
    L = len(runs)
    perms: dict[int, tuple[int, ...]] = {}
    players: dict[int, Player] = {}
    eve_log: list[EveRecord] = []
    for i in range(1, config.variant.num_players + 1):
        perm = tuple(range(1, L + 1)) if identity else tuple(int(x) + 1 for x in rng.permutation(L))
        perms[i] = perm
        slots: list[QubitRef | None] = [None] * L
        for run, slot in zip(runs, perm):
            slots[slot - 1] = QubitRef(run, i)
        if transcript is not None:
            transcript.emit(DEALER, "shuffle", {"player": i, "perm": list(perm)}, [DEALER])
        if config.eve is not None:
            for slot, ref in enumerate(slots, start=1):
                rec = eve_intercept_resend(ref, i, slot, config.eve, eve_rng)
                if rec is not None:
                    eve_log.append(rec)
                    if transcript is not None:
                        transcript.emit(
                            EVE, "tap", {"player": i, "slot": slot, "outcome": rec.outcome}, [EVE]
                        )
        players[i] = Player(i, slots)
        if transcript is not None:
            transcript.emit(DEALER, "deliver", {"player": i, "count": L}, [DEALER, player(i)])
    return ShuffleMap(perms), players, eve_log


# check round --------------------------------------------------------------


def _draw_setting(variant: SchemeVariant, run: RunRecord, rng: RandomSource):
    if isinstance(variant, (NN, Restricted2N)):
        family = ghz_stabilizer_family(variant.n)
        return family[int(rng.integers(len(family)))][0]
    weight = variant.m if run.label is Member.FIRST else variant.m + variant.r
    if 2 * weight == variant.n_effective:
        return (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)[int(rng.integers(3))]
    return PauliAxis.Z


def build_check_lists(
    config: ProtocolConfig, runs: list[RunRecord], shuffle: ShuffleMap, rng: RandomSource
) -> CheckPlan:
    u, L = config.u, len(runs)
    if u > L:
        raise ProtocolError(f"cannot check u={u} of L={L} runs")
    check_runs = tuple(int(t) + 1 for t in rng.choice(L, size=u, replace=False))
    settings = {t: _draw_setting(config.variant, runs[t - 1], rng) for t in check_runs}
    plan = CheckPlan(check_runs, settings, {}, {})
    for i in range(1, config.variant.num_players + 1):
        p_i = tuple(int(x) + 1 for x in rng.permutation(u))
        plan.check_perms[i] = p_i
        plan.lists[i] = tuple(
            CheckListEntry(plan.axis_for(check_runs[j - 1], i), shuffle.slot(i, check_runs[j - 1]))
            for j in p_i
        )
    return plan


def player_measure_checks(
    p: Player, check_list: tuple[CheckListEntry, ...], rng: RandomSource
) -> list[tuple[int, int]]:
    """Measure every listed slot; returns ``(slot, outcome)`` reports."""
    return [(e.slot, p.measure(e.slot, e.axis, rng)) for e in check_list]


def dealer_measure_checks(
    variant: SchemeVariant, runs: list[RunRecord], plan: CheckPlan, rng: RandomSource
) -> dict[int, int]:
    """Odd-n KN: the dealer measures her retained qubit like an extra player."""
    q = variant.dealer_qubit
    if q is None:
        return {}
    return {t: runs[t - 1].measure(q, plan.axis_for(t, q), rng) for t in plan.runs}


# verification -------------------------------------------------------------


def _setting_label(setting) -> str:
    return str(setting) if isinstance(setting, StabilizerVector) else f"{setting}^n"


def dealer_verify(
    variant: SchemeVariant,
    runs: list[RunRecord],
    shuffle: ShuffleMap,
    plan: CheckPlan,
    reports: dict[int, list[tuple[int, int]]],
    dealer_outcomes: dict[int, int] | None = None,
) -> Verification:
    """Compare each check run's outcome product with the expected eigenvalue."""
    missing = tuple(
        i for i in range(1, variant.num_players + 1) if len(reports.get(i, ())) != len(plan.runs)
    )
    if missing:
        return Verification(False, (), missing)
    by_slot = {i: dict(rep) for i, rep in reports.items()}
    checks = []
    for t in plan.runs:
        product = 1
        for i in range(1, variant.num_players + 1):
            product *= by_slot[i][shuffle.slot(i, t)]
        if variant.dealer_qubit is not None:
            product *= dealer_outcomes[t]
        setting = plan.settings[t]
        expected = expected_eigenvalue(variant, setting, runs[t - 1].label)
        checks.append(CheckOutcome(t, _setting_label(setting), expected, product))
    checks = tuple(checks)
    return Verification(all(c.passed for c in checks), checks)


# reveal and reconstruction ------------------------------------------------


def reveal(
    config: ProtocolConfig,
    runs: list[RunRecord],
    shuffle: ShuffleMap,
    secret_bits,
    rng: RandomSource,
) -> tuple[list[int], dict[int, list[int]]]:
    """Pick an unmeasured run per secret bit and announce its slots.

    Returns the chosen run ids (dealer-private) and, per player, the ordered
    list of announced slots.
    """
    chosen: list[int] = []
    for bit in secret_bits:
        pool = [
            r.run_id for r in runs
            if r.untouched and r.label == bit and r.run_id not in chosen
        ]
        if not pool:
            raise ResourceExhausted(f"no unmeasured run encodes bit {bit}")
        chosen.append(pool[int(rng.integers(len(pool)))])
    announcements = {
        i: [shuffle.slot(i, t) for t in chosen] for i in range(1, config.variant.num_players + 1)
    }
    return chosen, announcements


def _run_of(players: dict[int, Player], coalition, slots: dict[int, int]) -> RunRecord:
    refs = [players[i].ref(slots[i]) for i in coalition]
    run = refs[0].run
    if any(ref.run is not run for ref in refs):
        raise ProtocolError("announced slots do not belong to a single run")
    return run


def reconstruct(
    coalition,
    announcements: dict[int, list[int]],
    variant: SchemeVariant,
    players: dict[int, Player],
    rng: RandomSource,
) -> tuple[int, ...]:
    """Decode every announced run with the protocol matching ``variant``."""
    coalition = tuple(sorted(coalition))
    if not variant.is_authorized(coalition):
        raise UnauthorizedCoalition(f"coalition {coalition} cannot recover the secret of {variant}")
    pair = variant_pair(variant)
    bits = []
    for b in range(len(announcements[coalition[0]])):
        slots = {i: announcements[i][b] for i in coalition}
        run = _run_of(players, coalition, slots)
        if isinstance(variant, NN):
            guess, run.state = global_measure(pair, run.state, rng)
            used = coalition
        elif isinstance(variant, Restricted2N):
            i = min(c for c in coalition if c <= variant.r)
            j = min(c for c in coalition if c > variant.r)
            guess, run.state = two_party_measure(
                run.state, GhzPairSpec(variant.n, variant.r), i, j, rng
            )
            used = (i, j)
        else:
            spec = DickePairSpec(variant.n_effective, variant.m, variant.r)
            used = coalition[: variant.k]
            guess, run.state = counting_measure(run.state, spec, used, rng)
        run.measured_qubits.update(used)
        for i in used:
            players[i].consumed.add(slots[i])
        bits.append(int(guess))
    return tuple(bits)


# orchestration ------------------------------------------------------------


def _run_round(config, rngs, transcript, round_no):
    variant = config.variant
    transcript.emit(DEALER, "round", {"round": round_no}, [PUBLIC])
    runs = dealer_prepare(config, rngs.dealer)
    transcript.emit(
        DEALER, "prepare", {"labels": [int(r.label) for r in runs]}, [DEALER]
    )
    shuffle, players, eve_log = shuffle_and_distribute(
        config, runs, rngs.dealer, rngs.eve, transcript
    )
    for i in players:
        transcript.emit(player(i), "ack", {"player": i, "count": config.L}, [DEALER, player(i)])

    plan = build_check_lists(config, runs, shuffle, rngs.dealer)
    transcript.emit(
        DEALER,
        "check_plan",
        {"runs": list(plan.runs), "check_perm": {str(i): list(p) for i, p in plan.check_perms.items()}},
        [DEALER],
    )
    reports = {}
    for i, p in players.items():
        entries = plan.lists[i]
        transcript.emit(
            DEALER, "check_list",
            {"player": i, "entries": [[str(e.axis), e.slot] for e in entries]},
            [DEALER, player(i)],
        )
        reports[i] = player_measure_checks(p, entries, rngs.nature)
        transcript.emit(
            player(i), "report",
            {"player": i, "outcomes": [[s, v] for s, v in reports[i]]},
            [DEALER, player(i)],
        )
    dealer_outcomes = dealer_measure_checks(variant, runs, plan, rngs.nature)
    if dealer_outcomes:
        transcript.emit(
            DEALER, "dealer_check",
            {"outcomes": [[t, v] for t, v in sorted(dealer_outcomes.items())]}, [DEALER],
        )
    verification = dealer_verify(variant, runs, shuffle, plan, reports, dealer_outcomes)
    transcript.emit(
        DEALER, "verify_detail",
        {"checks": [[c.run, c.setting, c.expected, c.product] for c in verification.checks],
         "missing": list(verification.missing)},
        [DEALER],
    )
    if verification.passed:
        outcome = {"result": "pass"}
    else:
        outcome = {"result": "abort", "reason": "timeout" if verification.missing else "mismatch"}
    transcript.emit(DEALER, "verification", outcome, [PUBLIC])
    return runs, shuffle, players, eve_log, verification


def run_session(config: ProtocolConfig) -> SessionResult:
    """Prepare, distribute, check, verify, then reveal and reconstruct or abort."""
    rngs = SessionRandom.from_seed(config.seed)
    transcript = Transcript()
    transcript.emit(DEALER, "secret", {"secret": list(config.secret_bits)}, [DEALER])
    all_checks: list[CheckOutcome] = []
    all_eve: list[EveRecord] = []
    for round_no in range(1, MAX_ROUNDS + 1):
        runs, shuffle, players, eve_log, verification = _run_round(
            config, rngs, transcript, round_no
        )
        all_checks.extend(verification.checks)
        all_eve.extend(eve_log)
        if not verification.passed:
            return SessionResult(
                config, True, verification.mismatches > 0, {}, transcript,
                all_checks, round_no, all_eve,
            )
        try:
            chosen, announcements = reveal(config, runs, shuffle, config.secret_bits, rngs.dealer)
        except ResourceExhausted as exc:
            log.debug("round %d: %s; restarting with fresh resources", round_no, exc)
            transcript.emit(DEALER, "restart", {"reason": "resources"}, [PUBLIC])
            continue
        transcript.emit(DEALER, "reveal_runs", {"runs": chosen}, [DEALER])
        for i, slots in announcements.items():
            transcript.emit(DEALER, "reveal", {"player": i, "slots": slots}, [player(i)])
        reconstructed = {}
        for coalition in config.coalitions:
            bits = reconstruct(coalition, announcements, config.variant, players, rngs.nature)
            reconstructed[coalition] = bits
            transcript.emit(
                "coalition:" + ",".join(map(str, coalition)), "reconstruct",
                {"coalition": list(coalition), "bits": list(bits)},
                [player(i) for i in coalition],
            )
        return SessionResult(
            config, False, False, reconstructed, transcript, all_checks, round_no, all_eve
        )
    raise ResourceExhausted(f"no usable round within {MAX_ROUNDS} attempts")

