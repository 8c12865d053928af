"""
GHZ and Dicke pairs and their stabilizer checks
================================================

Each sharing scheme encodes a bit in which of two orthogonal states the
dealer prepares. Honest players can confirm the state was not disturbed by
measuring local Paulis and multiplying the +-1 outcomes.
"""

import numpy as np

from qss.qcore import PauliString, inner_product, partial_trace, stabilizer_eigenvalue
from qss.states import DickePairSpec, GhzPairSpec, dicke, dicke_pair, ghz_pair, ghz_stabilizer_family

# %%
# The distance-0 GHZ pair on three qubits: |000> + |111> and |000> - |111>.
first, second = ghz_pair(GhzPairSpec(3, 0))
print("first :", first.ket())
print("second:", second.ket())
print("overlap:", abs(inner_product(first, second)))

# %%
# The check family is X^n plus every Y_i Y_j X_rest. Both members are
# eigenstates of every element, with opposite signs.
for vec, pauli in ghz_stabilizer_family(3):
    print(f"{str(vec):8s} {str(pauli)}  first={stabilizer_eigenvalue(first, pauli):+d}"
          f"  second={stabilizer_eigenvalue(second, pauli):+d}")

# %%
# With a block boundary r=1 on four qubits, Y_i Y_j X_rest reports +1 on
# the second member exactly when i and j sit in the same block.
_, second = ghz_pair(GhzPairSpec(4, 1))
for vec, pauli in ghz_stabilizer_family(4)[1:]:
    print(f"{str(vec):8s} {stabilizer_eigenvalue(second, pauli):+d}")

# %%
# Dicke states: Z^n reads the weight parity; the half-filled state is also
# fixed by X^n and Y^n.
for m in range(1, 4):
    print(f"|{m},4>  Z^4 = {stabilizer_eigenvalue(dicke(4, m), PauliString.uniform('Z', 4)):+d}")
print("|2,4>  X^4 =", stabilizer_eigenvalue(dicke(4, 2), PauliString.uniform("X", 4)))

# %%
# What two of the three GHZ holders see is the same classical mixture for
# both members, so a pair of players learns nothing.
a, b = ghz_pair(GhzPairSpec(3, 0))
print(np.round(partial_trace(a, [1, 2]).matrix.real, 3))
print("identical:", np.allclose(partial_trace(a, [1, 2]).matrix, partial_trace(b, [1, 2]).matrix))

# %%
# The Dicke pair |1,4>, |3,4> differs by r=2 excitations.
a, b = dicke_pair(DickePairSpec(4, 1, 2))
print(a.ket(), "|", b.ket())
