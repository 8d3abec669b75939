from sofic_forge import GeneratingList, border_report, bordering_status, is_modular, labelled_iso, left_fischer_cover, sum_surgery_fischer
from sofic_forge.borders import diag_sum_cover
from sofic_forge.families import DPlusM, family_instance
from sofic_forge.words import show

e1 = GeneratingList.of("aa", "aaa", "b")
for w in ("b", "aab", "ab"):
    print(w, bordering_status(e1, w))

cover = left_fischer_cover(e1)
rep = border_report(e1, cover)
d = cover.graph.descriptor
print("border:", sorted(d[v] for v in rep.border_vertices), "universal:", d[rep.universal_vertex])
for v in sorted(rep.border_vertices):
    # generators are synchronizing words of L* that land on v
    print(d[v], [show(w) for w in rep.minimal_generators(v)][:5], "searched up to", rep.search_bound)

print("left modular:", bool(is_modular(e1)))
res = is_modular(GeneratingList.of("e", "ef", "ff"))
print("{e, ef, ff} modular:", bool(res), "counterexample", res.counterexample)

# Gluing two modular covers at their universal vertices gives the cover of the union.
other = GeneratingList.of("cc", "ccc", "d")
c2 = left_fischer_cover(other)
glued = sum_surgery_fischer(cover, rep, c2, border_report(other, c2, 0))
direct = left_fischer_cover(GeneratingList(e1.words + other.words))
print("surgery vertices", len(glued.vertices), "isomorphic:", labelled_iso(glued.graph, direct.graph) is not None)

# Same idea for the diagonal family plus a modular list
for ns in ((3, 3), (4, 2)):
    s = diag_sum_cover(ns, GeneratingList.of("e"))
    p = left_fischer_cover(family_instance(DPlusM(ns, GeneratingList.of("e")))[0])
    print(ns, len(s.vertices), "vs", len(p.vertices), "isomorphic:", labelled_iso(s.graph, p.graph) is not None)
# (4, 2) disagrees: with some n_i = 2 the glued graph admits extra words.
