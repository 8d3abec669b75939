"""Border points, modularity, and the two Fischer-cover surgeries."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .covers import Cover, analysis, left_fischer_cover
from .errors import AlphabetsOverlap, NotModular, UniversalPointMissing
from .graphs import LabelledGraph
from .words import GeneratingList, as_word, sum_lists


@dataclass(frozen=True)
class BorderReport:
    """Border structure of the left Fischer cover of X(L).

    ``generators`` maps a vertex to a tuple of ``(word, is_minimal)`` for the
    generators found with length at most ``search_bound``.  Negative findings
    (a border vertex without generator) are only conclusive up to that bound.
    """

    border_vertices: frozenset
    universal_vertex: int | None
    p0_fingerprint: frozenset
    generators: dict = field(default_factory=dict)
    search_bound: int = 0
    strongly_bordering_word: tuple | None = None

    def minimal_generators(self, v) -> list:
        return [w for w, minimal in self.generators.get(v, ()) if minimal]


def _strongly_left_bordering_word(lst: GeneratingList):
    """Shortest word all of whose partitionings have empty beginning, or None.

    Breadth-first search over the sets S(u) of loop-graph start vertices;
    such a word exists iff the set {central} is reachable.
    """
    an = analysis(lst)
    aut = an.aut
    parent = {aut.full: None}
    queue = deque([aut.full])
    while queue:
        t = queue.popleft()
        if t == an.central:
            word = []
            while parent[t] is not None:
                t, a = parent[t]
                word.append(a)
            return tuple(word)
        for a in aut.alphabet:
            p = aut.preimage(t, a)
            if p and p not in parent:
                # u = a.v, so S(u) = pre_a(S(v)); v was built first
                parent[p] = (t, a)
                queue.append(p)
    return None


def border_points(lst: GeneratingList, cover: Cover | None = None):
    """``(cover, border vertex set, universal vertex or None, witness word)``."""
    cover = left_fischer_cover(lst) if cover is None else cover
    an = analysis(lst)
    m = cover.memory
    vid = {s: v for v, s in cover._signatures}
    layer = an.aut.backward_layers(m)[m]
    border = frozenset(vid[an.signature(t)] for t in layer if t & an.central)
    witness = _strongly_left_bordering_word(lst)
    universal = None
    if witness is not None:
        universal = vid[an.signature(an.central)]
    return cover, border, universal, witness


def p0_fingerprint(lst: GeneratingList, m: int) -> frozenset:
    """m-blocks that are suffixes of left-infinite concatenations of generators."""
    aut = analysis(lst).aut
    central = analysis(lst).central
    out = set()
    stack = [((), central)]
    while stack:
        w, t = stack.pop()
        if len(w) == m:
            out.add(w)
            continue
        for a in aut.alphabet:
            p = aut.preimage(t, a)
            if p:
                stack.append(((a,) + w, p))
    return frozenset(out)


def star_words(lst: GeneratingList, bound: int, budget: int | None = None):
    """Non-empty words of L* by increasing length, as ``(length, words)`` layers.

    Stops after ``bound`` or before the first layer that would push the
    running total past ``budget``.
    """
    layers = {0: {()}}
    total = 0
    for n in range(1, bound + 1):
        layer = set()
        for g in lst:
            for w in layers.get(n - len(g), ()):
                layer.add(w + g)
        total += len(layer)
        if budget is not None and total > budget:
            return
        layers[n] = layer
        yield n, sorted(layer)


def border_report(
    lst: GeneratingList,
    cover: Cover | None = None,
    generator_bound: int | None = None,
    budget: int = 20_000,
) -> BorderReport:
    """Border vertices, universal vertex and generators found by search.

    ``search_bound`` in the result is the word length up to which L* was
    searched exhaustively; it is below ``generator_bound`` when the word
    budget ran out first.
    """
    cover, border, universal, witness = border_points(lst, cover)
    an = analysis(lst)
    m = cover.memory
    bound = 3 * m + lst.total_length if generator_bound is None else generator_bound
    gens = {}
    reached = 0
    for n, words in star_words(lst, bound, budget):
        for w in words:
            if not an.is_synchronizing(w):
                continue
            reps = -(-max(m, 1) // n)
            v = cover.vertex_of(w * reps)
            earlier = {g for g, _ in gens.get(v, ())}
            minimal = not any(w[:k] in earlier for k in range(1, n))
            gens.setdefault(v, []).append((w, minimal))
        reached = n
    return BorderReport(
        border,
        universal,
        p0_fingerprint(lst, m),
        {v: tuple(ws) for v, ws in sorted(gens.items())},
        reached,
        witness,
    )


@dataclass(frozen=True)
class Modularity:
    """Outcome of a modularity decision; falsy when a counterexample exists.

    ``counterexample`` is ``(start vertex, label)`` of a path ending at the
    universal vertex whose label is in L* exactly when it should not be.
    """

    modular: bool
    counterexample: tuple | None = None

    def __bool__(self):
        return self.modular


def _star_product_search(cover: Cover, lst: GeneratingList, starts, target, want_in_star: bool):
    """Find a path start->target whose label is (or is not) in L*."""
    an = analysis(lst)
    aut = an.aut
    c = an.central
    out = cover.graph.out_edges
    parent = {}
    queue = deque()
    for s in sorted(starts):
        node = (s, c)
        if node not in parent:
            parent[node] = None
            queue.append(node)
    while queue:
        v, t = queue.popleft()
        if v == target and bool(t & c) == want_in_star:
            label = []
            node = (v, t)
            while parent[node] is not None:
                node, a = parent[node]
                label.append(a)
            return node[0], tuple(reversed(label))
        for _, u, a in out.get(v, ()):
            nxt = (u, aut.image(t, a) if t else 0)
            if nxt not in parent:
                parent[nxt] = ((v, t), a)
                queue.append(nxt)
    return None


def is_modular(lst: GeneratingList, side: str = "left") -> Modularity:
    """Decide left- (or right-) modularity by product-automaton searches.

    Paths into the universal vertex must carry labels in L* when they start
    at a border vertex and labels outside L* otherwise.
    """
    if side == "right":
        return is_modular(lst.reversed(), "left")
    if side != "left":
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    cover, border, universal, _ = border_points(lst)
    if universal is None:
        raise UniversalPointMissing(f"{lst} has no strongly left-bordering right-ray")
    others = set(cover.vertices) - border
    bad = _star_product_search(cover, lst, border, universal, want_in_star=False)
    if bad is None:
        bad = _star_product_search(cover, lst, others, universal, want_in_star=True)
    if bad is None:
        return Modularity(True)
    return Modularity(False, bad)


def _require_modular(lst, name):
    try:
        res = is_modular(lst, "left")
    except UniversalPointMissing as exc:
        raise NotModular(f"{name} has no universal border point") from exc
    if not res:
        raise NotModular(f"{name} is not left-modular", res.counterexample)


def sum_surgery_fischer(cover1: Cover, report1: BorderReport, cover2: Cover, report2: BorderReport) -> Cover:
    """Left Fischer cover of X(L1 u L2) assembled from the summands' covers.

    The universal vertices are identified, and every edge into one universal
    vertex is copied onto each non-universal border vertex of the other cover.
    """
    l1, l2 = cover1.list, cover2.list
    if set(l1.alphabet) & set(l2.alphabet):
        raise AlphabetsOverlap(f"{l1} and {l2} share symbols")
    _require_modular(l1, "first list")
    _require_modular(l2, "second list")
    parts = ((1, cover1, report1), (2, cover2, report2))

    def f(i, cover, report, v):
        return "+" if v == report.universal_vertex else (i, v)

    vertices = [("+", "+")]
    edges = set()
    for i, cover, report in parts:
        d = cover.graph.descriptor
        vertices += [((i, v), f"{i}:{d[v]}") for v in cover.vertices if v != report.universal_vertex]
        for s, t, a in cover.graph.edges:
            edges.add((f(i, cover, report, s), f(i, cover, report, t), a))
    for (i, cover, report), (j, other, oreport) in ((parts[0], parts[1]), (parts[1], parts[0])):
        targets = sorted(oreport.border_vertices - {oreport.universal_vertex})
        for s, t, a in cover.graph.edges:
            if t == report.universal_vertex:
                for p in targets:
                    edges.add((f(i, cover, report, s), (j, p), a))
    graph = LabelledGraph(tuple(vertices), tuple(edges)).canonical()
    return Cover(graph, "fischer", None, (), sum_lists(l1, l2))


def diag_sum_cover(ns, modular_list: GeneratingList) -> Cover:
    """Left Fischer cover of L_d u L_m u {a_i w : w in L_m} by surgery.

    ``ns`` are the diagonal parameters (n_1, ..., n_k).
    """
    from .families import diagonal_list, diagonal_symbols

    ld = diagonal_list(ns)
    letters = diagonal_symbols(len(ns))
    if set(letters) & set(modular_list.alphabet):
        raise AlphabetsOverlap(f"{modular_list} uses diagonal symbols")
    _require_modular(modular_list, "modular list")
    fd = left_fischer_cover(ld)
    fm = left_fischer_cover(modular_list)
    _, border_m, universal_m, _ = border_points(modular_list, fm)
    md = max(fd.memory, 2)
    entry = []
    for i, ai in enumerate(letters):
        aj = letters[1] if i == 0 else letters[0]
        entry.append((ai, fd.vertex_of(((ai, aj) * md)[:md])))
    dd, dm = fd.graph.descriptor, fm.graph.descriptor
    vertices = [(("d", v), f"d:{dd[v]}") for v in fd.vertices]
    vertices += [(("m", v), f"m:{dm[v]}") for v in fm.vertices]
    edges = {(("d", s), ("d", t), a) for s, t, a in fd.graph.edges}
    edges |= {(("m", s), ("m", t), a) for s, t, a in fm.graph.edges}
    for ai, q in entry:
        for s, t, a in fm.graph.edges:
            if t == universal_m:
                edges.add((("m", s), ("d", q), a))
        for p in border_m:
            edges.add((("d", q), ("m", p), ai))
    graph = LabelledGraph(tuple(vertices), tuple(edges)).canonical()
    words = ld.words + modular_list.words + tuple((ai,) + w for ai in letters for w in modular_list)
    return Cover(graph, "fischer", None, (), GeneratingList(words))


def strongly_right_bordering_word(lst: GeneratingList):
    w = _strongly_left_bordering_word(lst.reversed())
    return None if w is None else tuple(reversed(w))


def word_class(cover: Cover, w):
    return cover.vertex_of(as_word(w))
