"""Simulator and verification lab for quantum secret sharing built on the
local distinguishability of orthogonal GHZ and Dicke state pairs."""

from .qcore import PauliAxis, PauliString, PureState, DensityMatrix
from .states import Member
from .variants import KN, NN, Restricted2N

__version__ = "0.1.0"
