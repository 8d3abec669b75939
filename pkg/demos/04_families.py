from sofic_forge.families import (
    R,
    Diag,
    DPlusM,
    PosDet,
    closed_form_invariant,
    expand_grid,
    forbidden_runs_matrix,
    pipeline_invariant,
    rows_to_tsv,
    search_det,
    sweep,
)
from sofic_forge.errors import NotSftError
from sofic_forge.invariants import signed_bowen_franks

# R family: fragmentation counts become matrix weights
p = R(3, alpha=2, alpha_t=1, beta=3, gammas=(2, 1))
print(pipeline_invariant(p), "closed form det", closed_form_invariant(p).det)
print(pipeline_invariant(p, "direct"))  # literal fragmented list, same answer

# every integer is a determinant
for k in (-5, 0, 7):
    q = search_det(k)
    print(k, q, pipeline_invariant(q).det)

# diagonal family: negative determinant, non-cyclic groups
for ns in ((4, 2), (9, 3, 3)):
    print(ns, pipeline_invariant(Diag(ns)), closed_form_invariant(Diag(ns)))

# With n_3 = 2 the literal list does not generate the run-limited shift.
try:
    pipeline_invariant(Diag((8, 4, 2)))
except NotSftError as exc:
    print("(8, 4, 2):", exc.certificate.describe()[:50], "...")
print("run-limited shift itself:", signed_bowen_franks(forbidden_runs_matrix((8, 4, 2))))

# Example 3: diagonal part plus the PosDet list; both signs occur
rows = sweep(expand_grid("DPlusM", "ns=4,2;gamma=3..5;a=1..3"))
print(rows_to_tsv(rows))
print(pipeline_invariant(DPlusM((4, 2), PosDet(a=3, gamma=4))))  # x = 0, Z/6
