import math

import numpy as np

from sofic_forge import GeneratingList, adjacency_matrix, entropy_bracket, flow_equivalent, left_fischer_cover, signed_bowen_franks, smith_normal_form, symbol_expand

A = adjacency_matrix(left_fischer_cover(GeneratingList.of("aa", "aaa", "b")))
print(np.array(A))
print(signed_bowen_franks(A))  # same as the full 2-shift

print(flow_equivalent(A, [[2]]))
print(flow_equivalent([[0, 1], [1, 0]], [[2]]))  # one periodic orbit: guarded

# Smith form with the transforms, D = U M V
M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
snf = smith_normal_form(M)
print(snf.diagonal)
print(np.array(snf.U) @ np.array(M) @ np.array(snf.V))

# symbol expansion is a flow equivalence, so the invariant does not move
lst = GeneratingList.of("a", "ab", "bbc")
for l in (lst, symbol_expand(lst, "b", 3)):
    print(l, signed_bowen_franks(adjacency_matrix(left_fischer_cover(l))))

# entropy, with an exact bracket around the Perron root
br = entropy_bracket(adjacency_matrix(left_fischer_cover(GeneratingList.of("a", "ab"))))
print(br.value, br.width, math.log((1 + 5 ** 0.5) / 2))
