from sofic_forge import GeneratingList, infer_forbidden_words, left_fischer_cover, sft_certificate, to_dot
from sofic_forge.errors import NotSftError
from sofic_forge.graphs import describe
from sofic_forge.words import show

# A renewal system is given by a finite list of words; X(L) is the shift
# of all free concatenations.  Start with {aa, aaa, b}.
lst = GeneratingList.of("aa", "aaa", "b")
print(lst, "alphabet", lst.alphabet)

cert = sft_certificate(lst)
print(cert.describe())  # memory 2: a 2-step shift of finite type

cover = left_fischer_cover(lst)
print(describe(cover.graph))
# vertex names are the least 2-block of each predecessor class
for v in cover.vertices:
    print(v, cover.graph.descriptor[v], sorted(show(x) for x in cover.fingerprint(v)))

# the only obstruction is bab
print("forbidden:", sorted(show(w) for w in infer_forbidden_words(lst)))

print(to_dot(cover.graph))

# {a, bb} is the even shift: strictly sofic, so no cover is built
try:
    left_fischer_cover(GeneratingList.of("a", "bb"))
except NotSftError as exc:
    c = exc.certificate
    print(c.describe())
    print("witness replays:", c.replay())
