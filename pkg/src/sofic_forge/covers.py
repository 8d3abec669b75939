"""SFT decision, left Fischer/Krieger covers and block languages of renewal systems.

The covers are built from *predecessor classes*.  For a word ``u`` let
``S(u)`` be the set of loop-graph vertices where a path labelled ``u`` can
start.  The left-rays that may precede ``u`` are exactly the labels of
left-infinite paths ending in ``S(u)``, so two words have the same
predecessor set iff ``S(u)`` and ``S(v)`` meet the same forward subsets
``V.w``.  When the shift is an m-step SFT the predecessor set of a right-ray
only depends on its first m symbols, and the classes of m-blocks are the
vertices of the left Krieger cover (equal to the Fischer cover here).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import NotSftError, NotWellDefined
from .graphs import (
    LabelledGraph,
    _Automaton,
    _refine,
    loop_graph,
    right_resolving_presentation,
    strongly_connected_components,
)
from .words import GeneratingList, as_word, show


@dataclass(frozen=True)
class SftCertificate:
    """Either a memory bound (``memory`` set) or a strictly-sofic witness.

    The witness is ``(label, cycle_p, cycle_q)``: two distinct closed walks in
    ``presentation`` (lists of vertex ids, first vertex repeated at the end)
    that carry the same label word.
    """

    memory: int | None
    witness: tuple | None = None
    presentation: LabelledGraph | None = field(default=None, compare=False, repr=False)

    @property
    def is_sft(self) -> bool:
        return self.memory is not None

    def describe(self) -> str:
        if self.is_sft:
            return f"SFT memory={self.memory}"
        label, p, q = self.witness
        d = self.presentation.descriptor
        return (
            f"NOT_SFT witness={show(label)} "
            f"cycle1={' '.join(d[v] for v in p)} cycle2={' '.join(d[v] for v in q)}"
        )

    def replay(self) -> bool:
        """Check that the witness is two distinct equally labelled cycles."""
        if self.is_sft:
            return True
        label, p, q = self.witness
        edges = set(self.presentation.edges)
        if p == q or p[0] != p[-1] or q[0] != q[-1] or len(p) != len(label) + 1 or len(q) != len(p):
            return False
        return all(
            (p[i], p[i + 1], a) in edges and (q[i], q[i + 1], a) in edges for i, a in enumerate(label)
        )


def _pair_graph_certificate(rr: LabelledGraph) -> SftCertificate:
    """Longest off-diagonal path in the label product of a right-resolving graph."""
    step = {(s, a): t for s, t, a in rr.edges}
    alphabet = rr.alphabet
    ids = rr.ids
    if len(ids) <= 1:
        return SftCertificate(0, presentation=rr)

    def succ(pair):
        p, q = pair
        for a in alphabet:
            s, t = step.get((p, a)), step.get((q, a))
            if s is not None and t is not None and s != t:
                yield a, (s, t)

    # iterative DFS computing longest path lengths, detecting cycles
    longest = {}
    state = {}
    for root in ((p, q) for p in ids for q in ids if p != q):
        if root in longest:
            continue
        stack = [(root, iter(succ(root)))]
        state[root] = "open"
        path = [(None, root)]
        while stack:
            node, it = stack[-1]
            pushed = False
            for a, nxt in it:
                st = state.get(nxt)
                if st == "open":
                    # reconstruct the cycle from the DFS path
                    k = next(i for i, (_, n) in enumerate(path) if n == nxt)
                    cyc = path[k:] + [(a, nxt)]
                    label = tuple(x for x, _ in cyc[1:])
                    cp = [n[0] for _, n in cyc]
                    cq = [n[1] for _, n in cyc]
                    return SftCertificate(None, (label, cp, cq), presentation=rr)
                if st is None:
                    state[nxt] = "open"
                    stack.append((nxt, iter(succ(nxt))))
                    path.append((a, nxt))
                    pushed = True
                    break
            if pushed:
                continue
            stack.pop()
            path.pop()
            state[node] = "done"
            longest[node] = max((1 + longest[n] for _, n in succ(node)), default=0)
    return SftCertificate(max(longest.values()) + 1, presentation=rr)


def sft_certificate(lst) -> SftCertificate:
    """Decide the SFT property; accepts a generating list or a presenting graph."""
    g = loop_graph(lst) if isinstance(lst, GeneratingList) else lst
    return _pair_graph_certificate(right_resolving_presentation(g))


class _Analysis:
    """Cached subset automata of the loop graph of one generating list."""

    def __init__(self, lst: GeneratingList):
        self.list = lst
        self.loop = loop_graph(lst)
        self.aut = _Automaton(self.loop)
        self.central = 1 << self.aut.index[0]
        self.multichar = any(len(s) > 1 for s in lst.alphabet)

    @cached_property
    def certificate(self) -> SftCertificate:
        return sft_certificate(self.loop)

    @property
    def memory(self) -> int:
        cert = self.certificate
        if not cert.is_sft:
            raise NotSftError(cert)
        return cert.memory

    @cached_property
    def forward(self) -> list:
        return sorted(self.aut.forward_subsets())

    def signature(self, starts: int) -> int:
        """Predecessor-language fingerprint of a set of start vertices."""
        sig = 0
        for i, r in enumerate(self.forward):
            if r & starts:
                sig |= 1 << i
        return sig

    @cached_property
    def follower_blocks(self) -> dict:
        """Forward subset -> follower-class id (no trimming)."""
        trans = {}
        for m in self.forward:
            for a in self.aut.alphabet:
                t = self.aut.image(m, a)
                if t:
                    trans[(m, a)] = t
        return _refine(self.forward, trans, self.aut.alphabet, key=lambda m: m)

    def is_synchronizing(self, w) -> bool:
        """True if uw, wv allowed always implies uwv allowed."""
        w = as_word(w)
        ends = {self.aut.read(r, w) for r in self.forward}
        ends.discard(0)
        blocks = {self.follower_blocks[e] for e in ends}
        return len(blocks) == 1

    def in_language(self, w) -> bool:
        return self.aut.accepts(as_word(w))

    def show(self, w) -> str:
        if not w:
            return "ε"
        return " ".join(w) if self.multichar else "".join(w)


@lru_cache(maxsize=256)
def analysis(lst: GeneratingList) -> _Analysis:
    return _Analysis(lst)


@dataclass(frozen=True)
class Cover:
    """Left Krieger/Fischer cover of an SFT renewal system.

    Vertex ids are ``0..n-1`` in descriptor order; each vertex's descriptor is
    the lexicographically least m-block of its predecessor class.
    """

    graph: LabelledGraph
    kind: str
    memory: int | None
    representatives: tuple
    list: GeneratingList | None = None
    _signatures: tuple = field(default=(), compare=False, repr=False)

    @property
    def vertices(self) -> tuple:
        return self.graph.ids

    def representative(self, v):
        return dict(self.representatives)[v]

    def vertex_of(self, w):
        """Vertex P_inf(w...) for a word of length >= m (or any synchronizing word)."""
        an = analysis(self.list)
        sig = an.signature(an.aut.starts(as_word(w)))
        for v, s in self._signatures:
            if s == sig:
                return v
        return None

    def fingerprint(self, v) -> frozenset:
        """m-blocks x with x.u allowed, u the vertex representative."""
        an = analysis(self.list)
        u = self.representative(v)
        return frozenset(x for x in an.aut.words(self.memory) if an.in_language(x + u))

    def components(self) -> list:
        return sorted(sorted(c) for c in strongly_connected_components(self.graph))

    def to_json(self, fingerprints: bool = True) -> str:
        an = analysis(self.list) if self.list is not None else None
        fmt = an.show if an else show
        verts = []
        for v, d in self.graph.vertices:
            item = {"id": v, "descriptor": d}
            if self.representatives:
                item["representative"] = list(self.representative(v))
            if fingerprints and self.list is not None and self.memory is not None:
                item["fingerprint"] = sorted(fmt(x) for x in self.fingerprint(v))
            verts.append(item)
        doc = {
            "kind": self.kind,
            "memory": self.memory,
            "vertices": verts,
            "edges": [[s, t, a] for s, t, a in self.graph.edges],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _lex_least_blocks(aut: _Automaton, m: int) -> dict:
    """For each start set S(u) with |u| = m, the lexicographically least such u."""
    best = {aut.full: ()}
    for _ in range(m):
        nxt = {}
        for t, w in best.items():
            for a in aut.alphabet:
                p = aut.preimage(t, a)
                if p:
                    cand = (a,) + w
                    if p not in nxt or cand < nxt[p]:
                        nxt[p] = cand
        best = nxt
    return best


def left_fischer_cover(lst: GeneratingList, kind: str = "fischer") -> Cover:
    """Left Fischer cover (or, with ``kind="krieger"``, the left Krieger cover)."""
    if kind not in ("fischer", "krieger"):
        raise ValueError(f"unknown cover kind {kind!r}")
    an = analysis(lst)
    m = an.memory
    aut = an.aut
    blocks = _lex_least_blocks(aut, m)
    rep = {}
    for t, u in blocks.items():
        s = an.signature(t)
        if s not in rep or u < rep[s]:
            rep[s] = u
    order = sorted(rep, key=lambda s: (an.show(rep[s]), rep[s]))
    vid = {s: i for i, s in enumerate(order)}
    src_of = {}
    for t in blocks:
        tgt = vid[an.signature(t)]
        for a in aut.alphabet:
            p = aut.preimage(t, a)
            if not p:
                continue
            s = an.signature(p)
            if s not in vid:
                raise NotWellDefined(f"class of {an.show((a,) + blocks[t])} is not an m-block class")
            prev = src_of.setdefault((tgt, a), vid[s])
            if prev != vid[s]:
                raise NotWellDefined(f"edge {a} into {an.show(blocks[t])} depends on the representative")
    graph = LabelledGraph(
        tuple((vid[s], an.show(rep[s])) for s in order),
        tuple((src, tgt, a) for (tgt, a), src in src_of.items()),
    )
    if not graph.is_left_resolving():
        raise NotWellDefined("cover is not left-resolving")
    if kind == "fischer" and not graph.is_irreducible():
        raise NotWellDefined("m-block cover of a renewal system is not irreducible")
    return Cover(
        graph,
        kind,
        m,
        tuple((vid[s], rep[s]) for s in order),
        lst,
        tuple((vid[s], s) for s in order),
    )


def block_language(lst: GeneratingList, n: int) -> set:
    """B_n(X(L)): labels of length-n paths in the loop graph."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return analysis(lst).aut.words(n)


def infer_forbidden_words(lst: GeneratingList) -> set:
    """Minimal forbidden words (all of length <= m + 1 for an m-step SFT)."""
    an = analysis(lst)
    m = an.memory
    aut = an.aut
    found = set()
    for n in range(2, m + 2):
        inner = aut.words(n - 1)
        for left in inner:
            for b in aut.alphabet:
                if left[1:] + (b,) in inner:
                    u = left + (b,)
                    if not an.in_language(u):
                        found.add(u)
    return found
