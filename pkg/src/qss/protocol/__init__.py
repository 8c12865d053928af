"""Quantum secret sharing sessions: dealer, players, eavesdropper, transcript."""

from .config import (
    ConfigError,
    EveModel,
    InterceptResendZ,
    ProtocolConfig,
    config_from_dict,
    default_check_count,
    load_config,
)
from .session import (
    CheckListEntry,
    CheckOutcome,
    CheckPlan,
    EveRecord,
    Player,
    ProtocolError,
    QubitRef,
    ResourceExhausted,
    RunRecord,
    SessionRandom,
    SessionResult,
    ShuffleMap,
    SlotConsumedError,
    UnauthorizedCoalition,
    Verification,
    build_check_lists,
    dealer_measure_checks,
    dealer_prepare,
    dealer_verify,
    eve_intercept_resend,
    player_measure_checks,
    reconstruct,
    reveal,
    run_session,
    shuffle_and_distribute,
)
from .transcript import Event, Transcript, view_violations
from ..variants import KN, NN, Restricted2N, SchemeVariant
