"""Labelled directed graphs and the automata transforms built on them."""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from functools import cached_property

from .errors import EmptyGraph, UnknownVertexId
from .words import GeneratingList


@dataclass(frozen=True)
class LabelledGraph:
    """Finite directed graph with labelled edges.

    ``vertices`` is a tuple of ``(id, descriptor)`` pairs and ``edges`` a
    sorted tuple of distinct ``(source, target, label)`` triples.
    """

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("vertex ids must be unique")
        known = set(ids)
        edges = tuple(sorted(set(tuple(e) for e in self.edges), key=_edge_key))
        for s, t, _ in edges:
            if s not in known or t not in known:
                raise ValueError(f"edge endpoint not a vertex: {(s, t)}")
        object.__setattr__(self, "vertices", tuple((v, str(d)) for v, d in self.vertices))
        object.__setattr__(self, "edges", edges)

    @cached_property
    def ids(self) -> tuple:
        return tuple(v for v, _ in self.vertices)

    @cached_property
    def descriptor(self) -> dict:
        return dict(self.vertices)

    @cached_property
    def alphabet(self) -> tuple:
        return tuple(sorted({a for _, _, a in self.edges}))

    @cached_property
    def out_edges(self) -> dict:
        out = defaultdict(list)
        for e in self.edges:
            out[e[0]].append(e)
        return out

    @cached_property
    def in_edges(self) -> dict:
        inc = defaultdict(list)
        for e in self.edges:
            inc[e[1]].append(e)
        return inc

    def __len__(self):
        return len(self.vertices)

    def vertex_by_descriptor(self, desc):
        for v, d in self.vertices:
            if d == desc:
                return v
        raise UnknownVertexId(desc)

    def reversed(self) -> "LabelledGraph":
        return LabelledGraph(self.vertices, tuple((t, s, a) for s, t, a in self.edges))

    def canonical(self) -> "LabelledGraph":
        """Renumber vertices 0..n-1 in descriptor order."""
        order = sorted(self.vertices, key=lambda vd: (vd[1], repr(vd[0])))
        new = {v: i for i, (v, _) in enumerate(order)}
        return LabelledGraph(
            tuple((new[v], d) for v, d in order),
            tuple((new[s], new[t], a) for s, t, a in self.edges),
        )

    def relabel(self, mapping: dict) -> "LabelledGraph":
        """Rename edge labels (unmapped labels are kept)."""
        return LabelledGraph(self.vertices, tuple((s, t, mapping.get(a, a)) for s, t, a in self.edges))

    def is_left_resolving(self) -> bool:
        return all(len({a for _, _, a in es}) == len(es) for es in self.in_edges.values())

    def is_right_resolving(self) -> bool:
        return all(len({a for _, _, a in es}) == len(es) for es in self.out_edges.values())

    def is_essential(self) -> bool:
        return all(self.out_edges.get(v) and self.in_edges.get(v) for v in self.ids)

    def is_irreducible(self) -> bool:
        if not self.vertices:
            return False
        return len(strongly_connected_components(self)) == 1

    def adjacency(self) -> list:
        """Integer adjacency matrix in vertex order."""
        index = {v: i for i, v in enumerate(self.ids)}
        n = len(index)
        A = [[0] * n for _ in range(n)]
        for s, t, _ in self.edges:
            A[index[s]][index[t]] += 1
        return A

    def path_labels(self, n: int) -> set:
        """Labels of all paths with ``n`` edges."""
        return _Automaton(self).words(n)


def _edge_key(e):
    s, t, a = e
    return (repr(type(s)), s, repr(type(t)), t, a)


def strongly_connected_components(g: LabelledGraph) -> list:
    """Tarjan's algorithm (iterative); components in reverse topological order."""
    succ = {v: [t for _, t, _ in g.out_edges.get(v, ())] for v in g.ids}
    index, low, on_stack, stack, comps = {}, {}, set(), [], []
    counter = 0
    for root in g.ids:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def loop_graph(lst: GeneratingList) -> LabelledGraph:
    """Standard loop graph: one central vertex ``c`` and one labelled loop per generator."""
    vertices = [(0, "c")]
    edges = []
    nxt = 1
    for w in lst:
        prev = 0
        for k, a in enumerate(w):
            if k == len(w) - 1:
                tgt = 0
            else:
                tgt = nxt
                vertices.append((nxt, f"v{nxt}"))
                nxt += 1
            edges.append((prev, tgt, a))
            prev = tgt
    return LabelledGraph(tuple(vertices), tuple(edges))


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Automaton:
    """Bitmask view of a labelled graph for subset constructions.

    State sets are Python ints; bit i stands for the i-th vertex of ``g.ids``.
    """

    def __init__(self, g: LabelledGraph):
        self.graph = g
        self.ids = g.ids
        self.index = {v: i for i, v in enumerate(self.ids)}
        self.alphabet = g.alphabet
        n = len(self.ids)
        self.full = (1 << n) - 1
        self.succ = {a: [0] * n for a in self.alphabet}
        self.pred = {a: [0] * n for a in self.alphabet}
        for s, t, a in g.edges:
            i, j = self.index[s], self.index[t]
            self.succ[a][i] |= 1 << j
            self.pred[a][j] |= 1 << i
        self._img = {}
        self._pre = {}

    def mask(self, vertices) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.index[v]
        return m

    def members(self, mask) -> list:
        return [self.ids[i] for i in _bits(mask)]

    def image(self, mask, a) -> int:
        key = (mask, a)
        r = self._img.get(key)
        if r is None:
            r = 0
            row = self.succ[a]
            for i in _bits(mask):
                r |= row[i]
            self._img[key] = r
        return r

    def preimage(self, mask, a) -> int:
        key = (mask, a)
        r = self._pre.get(key)
        if r is None:
            r = 0
            row = self.pred[a]
            for i in _bits(mask):
                r |= row[i]
            self._pre[key] = r
        return r

    def read(self, mask, word) -> int:
        for a in word:
            if a not in self.succ:
                return 0
            mask = self.image(mask, a)
            if not mask:
                return 0
        return mask

    def starts(self, word, within=None) -> int:
        """Vertices where a path labelled ``word`` can start (ending inside ``within``)."""
        mask = self.full if within is None else within
        for a in reversed(word):
            if a not in self.pred:
                return 0
            mask = self.preimage(mask, a)
            if not mask:
                return 0
        return mask

    def accepts(self, word) -> bool:
        return bool(self.read(self.full, word)) or not word

    def forward_subsets(self, start=None) -> dict:
        """All non-empty sets ``start . w``, each with a BFS parent pointer."""
        start = self.full if start is None else start
        seen = {start: None}
        queue = deque([start])
        while queue:
            m = queue.popleft()
            for a in self.alphabet:
                t = self.image(m, a)
                if t and t not in seen:
                    seen[t] = (m, a)
                    queue.append(t)
        return seen

    def backward_layers(self, depth: int) -> list:
        """``layers[n]`` = distinct non-empty sets of start vertices of paths labelled by n-blocks."""
        layers = [{self.full}]
        for _ in range(depth):
            nxt = set()
            for m in layers[-1]:
                for a in self.alphabet:
                    p = self.preimage(m, a)
                    if p:
                        nxt.add(p)
            layers.append(nxt)
        return layers

    def words(self, n: int) -> set:
        out = set()
        stack = [((), self.full)]
        while stack:
            w, m = stack.pop()
            if len(w) == n:
                out.add(w)
                continue
            for a in self.alphabet:
                t = self.image(m, a)
                if t:
                    stack.append((w + (a,), t))
        return out


def _trim(states: set, trans: dict) -> set:
    """Keep states lying on a bi-infinite path."""
    alive = set(states)
    while True:
        has_out = {p for (p, _), q in trans.items() if p in alive and q in alive}
        has_in = {q for (p, _), q in trans.items() if p in alive and q in alive}
        keep = alive & has_out & has_in
        if keep == alive:
            return alive
        alive = keep


def _refine(states: list, trans: dict, alphabet, key) -> dict:
    """Moore partition refinement of a deterministic automaton; returns state -> block id.

    Blocks are numbered by the ``key`` order of their least member, so the
    result is independent of hashing order.
    """
    block = {s: 0 for s in states}
    while True:
        sig = {s: (block[s],) + tuple(block.get(trans.get((s, a)), -1) for a in alphabet) for s in states}
        reps = {}
        for s in sorted(states, key=key):
            reps.setdefault(sig[s], len(reps))
        new = {s: reps[sig[s]] for s in states}
        if len(set(new.values())) == len(set(block.values())):
            return new
        block = new


def right_resolving_presentation(g: LabelledGraph) -> LabelledGraph:
    """Deterministic, essential, follower-separated presentation of the shift of ``g``.

    Subset construction from the full vertex set, trimmed to its essential
    part, then states with equal follower languages are merged.
    """
    if not g.vertices or not g.edges:
        raise EmptyGraph("graph has no edges")
    aut = _Automaton(g)
    subsets = aut.forward_subsets()
    trans = {}
    for m in subsets:
        for a in aut.alphabet:
            t = aut.image(m, a)
            if t:
                trans[(m, a)] = t
    alive = _trim(set(subsets), trans)
    if not alive:
        raise EmptyGraph("presentation has no bi-infinite paths")
    trans = {k: q for k, q in trans.items() if k[0] in alive and q in alive}

    def desc(m):
        return "{" + ",".join(g.descriptor[v] for v in aut.members(m)) + "}"

    names = {m: desc(m) for m in alive}
    blocks = _refine(list(alive), trans, aut.alphabet, key=lambda m: names[m])
    rep = {}
    for m in sorted(alive, key=lambda m: names[m]):
        rep.setdefault(blocks[m], names[m])
    vertices = tuple((b, rep[b]) for b in sorted(rep))
    edges = {(blocks[p], blocks[q], a) for (p, a), q in trans.items()}
    return LabelledGraph(vertices, tuple(edges)).canonical()


# --- isomorphism -----------------------------------------------------------


def _colour_refinement(g: LabelledGraph) -> dict:
    colour = {v: 0 for v in g.ids}
    ncol = 1
    while True:
        sig = {}
        for v in g.ids:
            out = sorted((a, colour[t]) for _, t, a in g.out_edges.get(v, ()))
            inc = sorted((a, colour[s]) for s, _, a in g.in_edges.get(v, ()))
            sig[v] = (colour[v], tuple(out), tuple(inc))
        palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: palette[sig[v]] for v in g.ids}
        if len(palette) == ncol:
            return {v: sig[v] for v in g.ids}
        colour, ncol = new, len(palette)


def labelled_iso(g: LabelledGraph, h: LabelledGraph):
    """Return a vertex bijection ``g -> h`` preserving labelled edges, or ``None``."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    if Counter(a for *_, a in g.edges) != Counter(a for *_, a in h.edges):
        return None
    # refine the disjoint union so colours are comparable across both graphs
    union = LabelledGraph(
        tuple((("g", v), "") for v in g.ids) + tuple((("h", v), "") for v in h.ids),
        tuple((("g", s), ("g", t), a) for s, t, a in g.edges)
        + tuple((("h", s), ("h", t), a) for s, t, a in h.edges),
    )
    col = _colour_refinement(union)
    cg = {v: col[("g", v)] for v in g.ids}
    ch = {v: col[("h", v)] for v in h.ids}
    if Counter(cg.values()) != Counter(ch.values()):
        return None
    by_colour = defaultdict(list)
    for v in h.ids:
        by_colour[ch[v]].append(v)
    for vs in by_colour.values():
        vs.sort(key=repr)

    def labels(graph, s, t):
        return frozenset(a for _, tt, a in graph.out_edges.get(s, ()) if tt == t)

    # most constrained vertices first, then follow edges to keep the search connected
    order = sorted(g.ids, key=lambda v: (len(by_colour[cg[v]]), repr(v)))
    mapping, used = {}, set()

    def consistent(u, x):
        if labels(g, u, u) != labels(h, x, x):
            return False
        for v, y in mapping.items():
            if labels(g, u, v) != labels(h, x, y) or labels(g, v, u) != labels(h, y, x):
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        u = order[k]
        for x in by_colour[cg[u]]:
            if x in used or not consistent(u, x):
                continue
            mapping[u] = x
            used.add(x)
            if search(k + 1):
                return True
            del mapping[u]
            used.discard(x)
        return False

    if not search(0):
        return None
    return dict(mapping)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: LabelledGraph, highlights=()) -> str:
    """Deterministic DOT rendering; highlighted vertices are filled grey."""
    highlights = set(highlights)
    unknown = highlights - set(g.ids)
    if unknown:
        raise UnknownVertexId(sorted(map(repr, unknown)))
    desc = g.descriptor
    lines = ["digraph cover {"]
    for v, d in sorted(g.vertices, key=lambda vd: vd[1]):
        extra = " style=filled fillcolor=gray" if v in highlights else ""
        lines.append(f"  {_quote(d)} [shape=box{extra}];")
    for s, t, a in sorted(g.edges, key=lambda e: (desc[e[0]], desc[e[1]], e[2])):
        lines.append(f"  {_quote(desc[s])} -> {_quote(desc[t])} [label={_quote(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe(g: LabelledGraph) -> str:
    """One edge per line, for terminal output."""
    desc = g.descriptor
    return "".join(f"{desc[s]} -{a}-> {desc[t]}\n" for s, t, a in g.edges)

