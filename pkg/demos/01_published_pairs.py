"""
Two 3x3 pairs that break the Bourin-versus-Heinz comparison
===========================================================

For positive A, B the Heinz sum h_t = A^t B^(1-t) + A^(1-t) B^t is known
to satisfy |||h_t||| <= |||A + B||| in every unitarily invariant norm.
The Bourin expression b_t = A^t B^(1-t) + B^t A^(1-t) was conjectured to
sit below h_t. This script recomputes two small integer pairs showing
that it does not, first in the operator norm and then for individual
singular values.
"""

import numpy as np

from mmv import OPERATOR, bourin_mean, builtin_example, heinz_sum, norm, singular_values

np.set_printoptions(precision=4, suppress=True)

# %% First pair: A diagonal, B dense, both with integer entries.
pair = builtin_example("example1")
print("A =\n", pair.A.data.real)
print("B =\n", pair.B.data.real)

# The gap ||h_t|| - ||b_t|| in the operator norm is negative near t = 0.15,
# so b_t is the larger of the two there.
for t in (0.05, 0.10, 0.15, 0.20, 0.25):
    gap = norm(heinz_sum(pair, t), OPERATOR) - norm(bourin_mean(pair, t), OPERATOR)
    print(f"t={t:.2f}  ||h_t|| - ||b_t|| = {gap:+.4f}")

# %% Second pair: compare singular values of b_1/2 with those of A + B.
pair = builtin_example("example2")
sb = singular_values(bourin_mean(pair, 0.5))
ss = singular_values(pair.A.data + pair.B.data)
print("s(b_1/2) =", sb)
print("s(A + B) =", ss)

# The third singular value of b_1/2 exceeds that of A + B, so the
# entrywise bound s_j(b_t) <= s_j(A + B) fails at j = 3.
print("s3(b_1/2) > s3(A + B):", sb[2] > ss[2])
