"""Generating-list families with closed-form Bowen-Franks predictions.

Each family has an unfragmented *base list* plus a map of fragmentation
counts.  :func:`build_family` realises the counts literally with
:func:`~sofic_forge.words.fragment`; :func:`pipeline_invariant` can instead
weight the adjacency matrix of the base cover, which gives the same matrix
without blowing up the alphabet.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Union

from .covers import left_fischer_cover
from .errors import InvalidParams, NoClosedForm
from .invariants import BowenFranksClass, adjacency_matrix, signed_bowen_franks, smith_normal_form
from .words import GeneratingList, fragment


def _positive(name, *values):
    for v in values:
        if not isinstance(v, int) or v < 1:
            raise InvalidParams(f"{name} must be a positive integer, got {v!r}")


@dataclass(frozen=True)
class R:
    """{al, alt, al g2..gr be, be alt g2..gr} u {gk}, with fragmentation counts."""

    r: int = 2
    alpha: int = 1
    alpha_t: int = 1
    beta: int = 1
    gammas: tuple = ()

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise InvalidParams("R needs r >= 2")
        g = tuple(self.gammas) or (1,) * (self.r - 1)
        object.__setattr__(self, "gammas", g)
        if len(g) != self.r - 1:
            raise InvalidParams(f"R needs r-1 = {self.r - 1} gamma counts, got {len(g)}")
        _positive("R count", self.alpha, self.alpha_t, self.beta, *g)


@dataclass(frozen=True)
class B:
    """Word-level list before symbol reduction; n_k are word lengths, c_k copies."""

    r: int
    ns: tuple
    cs: tuple
    d: int = 1
    N: int = 1

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise InvalidParams("B needs r >= 2")
        if len(self.ns) != self.r or len(self.cs) != self.r:
            raise InvalidParams("B needs r lengths and r copy counts")
        _positive("B parameter", *self.ns, *self.cs, self.d, self.N)


@dataclass(frozen=True)
class HSum:
    """Disjoint sum of R blocks and one free letter fragmented ``a`` times."""

    blocks: tuple
    a: int = 1

    def __post_init__(self):
        if not self.blocks or not all(isinstance(b, R) for b in self.blocks):
            raise InvalidParams("HSum needs at least one R block")
        _positive("HSum free-letter count", self.a)


@dataclass(frozen=True)
class Diag:
    ns: tuple

    def __post_init__(self):
        ns = tuple(self.ns)
        object.__setattr__(self, "ns", ns)
        if len(ns) < 2 or any(not isinstance(n, int) or n < 2 for n in ns) or max(ns) <= 2:
            raise InvalidParams(f"Diag needs k >= 2, all n_i >= 2 and max n_i > 2, got {ns}")

    @property
    def is_chain(self) -> bool:
        ns = self.ns
        return ns[0] > 2 and all(ns[i - 1] % ns[i] == 0 for i in range(1, len(ns)))


@dataclass(frozen=True)
class PosDet:
    """{a, al, alt, ga, al ga be, be alt ga} with fragmentation counts."""

    a: int = 1
    alpha: int = 1
    alpha_t: int = 1
    beta: int = 1
    gamma: int = 1

    def __post_init__(self):
        _positive("PosDet count", self.a, self.alpha, self.alpha_t, self.beta, self.gamma)


@dataclass(frozen=True)
class DPlusM:
    """L_d u L_m u {a_i w : w in L_m}; ``modular`` is PosDet params or a list."""

    ns: tuple
    modular: Union[PosDet, GeneratingList] = field(default_factory=PosDet)

    def __post_init__(self):
        Diag(tuple(self.ns))
        object.__setattr__(self, "ns", tuple(self.ns))


FamilyParams = Union[R, B, HSum, Diag, PosDet, DPlusM]
VARIANTS = {"R": R, "B": B, "HSum": HSum, "Diag": Diag, "PosDet": PosDet, "DPlusM": DPlusM}


# -- lists -------------------------------------------------------------------

def r_base(r: int, prefix: str = "") -> GeneratingList:
    p = prefix
    gs = tuple(f"{p}ga{k}" for k in range(2, r + 1))
    al, alt, be = f"{p}al", f"{p}alt", f"{p}be"
    words = [(al,), (alt,), (al,) + gs + (be,), (be, alt) + gs] + [(g,) for g in gs]
    return GeneratingList(tuple(words))


def _r_weights(p: R, prefix: str = "") -> dict:
    w = {f"{prefix}al": p.alpha, f"{prefix}alt": p.alpha_t, f"{prefix}be": p.beta}
    w.update({f"{prefix}ga{k}": g for k, g in enumerate(p.gammas, start=2)})
    return w


def posdet_base() -> GeneratingList:
    return GeneratingList.of(("a",), ("al",), ("alt",), ("ga",), ("al", "ga", "be"), ("be", "alt", "ga"))


def _posdet_weights(p: PosDet) -> dict:
    return {"a": p.a, "al": p.alpha, "alt": p.alpha_t, "be": p.beta, "ga": p.gamma}


def diagonal_symbols(k: int) -> tuple:
    return tuple(f"a{i}" for i in range(1, k + 1))


def diagonal_list(ns) -> GeneratingList:
    ns = Diag(tuple(ns)).ns
    a = diagonal_symbols(len(ns))
    k = len(ns)
    words = set()
    for i in range(k):
        for l in range(1, ns[i] - 1):
            tail = (a[i],) * l
            for j in range(k):
                if j == i:
                    continue
                words.add((a[j],) + tail)
                for m in range(k):
                    if m != j:
                        words.add((a[m], a[j]) + tail)
    return GeneratingList(tuple(words))


def forbidden_runs_matrix(ns) -> list:
    """Adjacency matrix of the shift forbidding a_i^{n_i}, on (letter, run length) states.

    This presents the target shift directly, without a generating list.
    """
    states = [(i, l) for i, n in enumerate(ns) for l in range(1, n)]
    idx = {s: k for k, s in enumerate(states)}
    a = [[0] * len(states) for _ in states]
    for i, l in states:
        if l + 1 < ns[i]:
            a[idx[(i, l)]][idx[(i, l + 1)]] = 1
        for j in range(len(ns)):
            if j != i:
                a[idx[(i, l)]][idx[(j, 1)]] = 1
    return a


def b_list(p: B) -> GeneratingList:
    def word(name, n):
        return tuple(f"{name}.{t}" for t in range(1, n + 1))

    n1, c1 = p.ns[0], p.cs[0]
    alphas = [word(f"al{i}", n1) for i in range(1, c1 + 1)]
    alphas_t = [word(f"alt{i}", n1) for i in range(1, c1 + 1)]
    gammas = [[word(f"ga{k}.{i}", p.ns[k - 1]) for i in range(1, p.cs[k - 1] + 1)] for k in range(2, p.r + 1)]
    betas = [(f"be{l}",) * p.N for l in range(1, p.d + 1)]
    words = alphas + alphas_t + [g for gk in gammas for g in gk]
    for gs in itertools.product(*gammas):
        mid = tuple(s for g in gs for s in g)
        for bl in betas:
            words += [al + mid + bl for al in alphas]
            words += [bl + alt + mid for alt in alphas_t]
    return GeneratingList(tuple(words))


def matched_r(p: B) -> R:
    """The R parameters whose fragmentation is flow equivalent to ``p``."""
    return R(p.r, p.cs[0], p.cs[0], p.d, tuple(p.cs[1:]))


def family_instance(p: FamilyParams) -> tuple:
    """``(base list, fragmentation weights)``; absent symbols have weight 1."""
    if isinstance(p, R):
        return r_base(p.r), _r_weights(p)
    if isinstance(p, B):
        return b_list(p), {}
    if isinstance(p, HSum):
        words, weights = [("a",)], {"a": p.a}
        for j, blk in enumerate(p.blocks, start=1):
            words += r_base(blk.r, f"{j}.").words
            weights.update(_r_weights(blk, f"{j}."))
        return GeneratingList(tuple(words)), weights
    if isinstance(p, Diag):
        return diagonal_list(p.ns), {}
    if isinstance(p, PosDet):
        return posdet_base(), _posdet_weights(p)
    if isinstance(p, DPlusM):
        if isinstance(p.modular, PosDet):
            lm, weights = posdet_base(), _posdet_weights(p.modular)
        else:
            lm, weights = p.modular, {}
        letters = diagonal_symbols(len(p.ns))
        if set(letters) & set(lm.alphabet):
            raise InvalidParams("modular list uses the diagonal letters")
        ld = diagonal_list(p.ns)
        words = ld.words + lm.words + tuple((ai,) + w for ai in letters for w in lm)
        return GeneratingList(tuple(words)), weights
    raise InvalidParams(f"unknown family parameters {p!r}")


def build_family(p: FamilyParams) -> GeneratingList:
    """The literal generating list, fragmentation counts applied."""
    base, weights = family_instance(p)
    lst = base
    for s, k in sorted(weights.items()):
        if k > 1:
            lst = fragment(lst, s, k)
    return lst


# -- closed forms ------------------------------------------------------------

@dataclass(frozen=True)
class ClosedForm:
    det: int
    torsion: tuple | None = None  # invariant factors > 1, when predicted
    cyclic: bool = False
    x: int | None = None  # Example-3 reduction variable used, if any

    @property
    def sign(self) -> int:
        return (self.det > 0) - (self.det < 0)


def _prod(xs) -> int:
    return math.prod(xs)


def r_det(p: R) -> int:
    g = _prod(p.gammas)
    return (
        1 - p.alpha - p.alpha_t - sum(p.gammas)
        - (p.alpha + p.alpha_t) * p.beta * g
        + p.alpha * p.alpha_t * p.beta * g * g
    )


def hsum_det(p: HSum) -> int:
    gamma = p.a + sum(b.alpha + b.alpha_t + sum(b.gammas[:-1]) for b in p.blocks)
    total = 1 - gamma
    for blk in p.blocks:
        bj = blk.alpha * blk.beta * _prod(blk.gammas)
        tj = blk.alpha_t * _prod(blk.gammas[:-1]) * (bj - blk.beta) - 1
        total += blk.gammas[-1] * tj - bj
    return total


def posdet_det(p: PosDet) -> int:
    al, alt, be, ga = p.alpha, p.alpha_t, p.beta, p.gamma
    return be * al * alt * ga * ga - al * be * ga - alt * be * ga - al - alt - ga - p.a + 1


def diag_det(ns) -> int:
    k = len(ns)
    val = -_prod(ns) * (k - 1 - sum(Fraction(1, n) for n in ns))
    assert val.denominator == 1
    return int(val)


def invariant_factors(orders) -> tuple:
    """Invariant factors (> 1) of the direct sum of cyclic groups Z/n."""
    orders = [abs(int(n)) for n in orders]
    if not orders:
        return ()
    d = [[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)]
    return tuple(x for x in smith_normal_form(d).diagonal if x != 1)


def diag_chain_m(ns) -> int:
    k = len(ns)
    val = ns[0] * ns[1] * (k - 1 - sum(Fraction(1, n) for n in ns))
    assert val.denominator == 1
    return int(val)


def example3_det(ns, x: int) -> int:
    n1, k = ns[0], len(ns)
    s = sum(Fraction(n1, n) for n in ns)
    val = _prod(ns[1:]) * ((2 * x - 1) * s - x * (k - 1) * n1)
    assert val.denominator == 1
    return int(val)


def example3_x(ns, det: int) -> int | None:
    """Solve the Example-3 determinant formula for x; None if not integral."""
    n1, k = ns[0], len(ns)
    s = sum(Fraction(n1, n) for n in ns)
    slope = _prod(ns[1:]) * (2 * s - (k - 1) * n1)
    if slope == 0:
        return None
    x = (det + _prod(ns[1:]) * s) / slope
    return int(x) if x.denominator == 1 else None


def closed_form_invariant(p: FamilyParams) -> ClosedForm:
    if isinstance(p, R):
        return ClosedForm(r_det(p), cyclic=True)
    if isinstance(p, HSum):
        return ClosedForm(hsum_det(p), cyclic=True)
    if isinstance(p, PosDet):
        return ClosedForm(posdet_det(p), cyclic=True)
    if isinstance(p, Diag):
        d = diag_det(p.ns)
        if p.is_chain:
            return ClosedForm(d, invariant_factors((diag_chain_m(p.ns),) + p.ns[2:]))
        return ClosedForm(d)
    if isinstance(p, DPlusM):
        m = p.modular
        if not (isinstance(m, PosDet) and m.alpha == m.alpha_t == m.beta == 1 and Diag(p.ns).is_chain):
            raise NoClosedForm("Example-3 formula needs PosDet with unit alpha, alpha~, beta and a chain")
        # conjectured identification of x; checked against the pipeline, not assumed
        x = m.gamma ** 2 - 3 * m.gamma - m.a - 1
        torsion = None
        if x == 0:
            n1, n2 = p.ns[0], p.ns[1]
            torsion = invariant_factors((sum(n2 * n1 // n for n in p.ns),) + p.ns[2:])
        return ClosedForm(example3_det(p.ns, x), torsion, x=x)
    raise NoClosedForm(f"no closed form for {type(p).__name__}")


def search_det(k: int) -> PosDet:
    """PosDet parameters with unit alpha, alpha~, beta whose determinant is k."""
    gamma = 4
    while gamma * gamma - 3 * gamma - 1 - k < 1:
        gamma += 1
    return PosDet(a=gamma * gamma - 3 * gamma - 1 - k, gamma=gamma)


# -- pipeline ----------------------------------------------------------------

def family_matrix(p: FamilyParams, mode: str = "weights") -> list:
    if mode == "weights":
        base, weights = family_instance(p)
        cover = left_fischer_cover(base)
        full = {s: weights.get(s, 1) for s in cover.graph.alphabet}
        return adjacency_matrix(cover, full)
    if mode == "direct":
        return adjacency_matrix(left_fischer_cover(build_family(p)))
    raise ValueError(f"unknown mode {mode!r}")


def pipeline_invariant(p: FamilyParams, mode: str = "weights") -> BowenFranksClass:
    return signed_bowen_franks(family_matrix(p, mode))


# -- parameter text and sweeps -------------------------------------------------

def _ints(text) -> tuple:
    return tuple(int(x) for x in str(text).split(",") if x.strip())


def parse_params(variant: str, text: str) -> FamilyParams:
    """``"r=2;alpha=1;gammas=2,3"`` -> R(...).  HSum blocks are ``|``-separated R specs."""
    if variant not in VARIANTS:
        raise InvalidParams(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")
    kv = {}
    for part in filter(None, (s.strip() for s in text.split(";"))):
        if "=" not in part:
            raise InvalidParams(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        kv[k.strip()] = v.strip()
    try:
        if variant == "HSum":
            blocks = tuple(parse_params("R", b.replace("&", ";")) for b in kv.pop("blocks").split("|"))
            return HSum(blocks, **{k: int(v) for k, v in kv.items()})
        if variant == "DPlusM":
            ns = _ints(kv.pop("ns"))
            return DPlusM(ns, PosDet(**{k: int(v) for k, v in kv.items()}))
        cls = VARIANTS[variant]
        tuple_keys = {"gammas", "ns", "cs"}
        args = {k: _ints(v) if k in tuple_keys else int(v) for k, v in kv.items()}
        return cls(**args)
    except (TypeError, KeyError, ValueError) as exc:
        if isinstance(exc, InvalidParams):
            raise
        raise InvalidParams(f"bad {variant} parameters {text!r}: {exc}") from exc


def param_row(p: FamilyParams) -> dict:
    """Flat parameter columns for TSV output."""
    row = {}
    for f in fields(p):
        v = getattr(p, f.name)
        if isinstance(v, tuple) and v and isinstance(v[0], R):
            v = "|".join(",".join(map(str, (b.r, b.alpha, b.alpha_t, b.beta) + b.gammas)) for b in v)
        elif isinstance(v, tuple):
            v = ",".join(map(str, v))
        elif isinstance(v, PosDet):
            row.update(param_row(v))
            continue
        elif isinstance(v, GeneratingList):
            v = str(v)
        row[f.name] = v
    return row


def expand_grid(variant: str, grid: str) -> list:
    """``"gamma=4..6;a=1..3;ns=4,2"`` -> parameter sets in lexicographic order."""
    keys, choices = [], []
    for part in filter(None, (s.strip() for s in grid.split(";"))):
        k, v = part.split("=", 1)
        if ".." in v and "," not in v:
            lo, hi = (int(x) for x in v.split(".."))
            vals = [str(i) for i in range(lo, hi + 1)]
        else:
            vals = v.split("/")  # alternatives for tuple-valued keys
        keys.append(k.strip())
        choices.append(vals)
    out = []
    for combo in itertools.product(*choices):
        out.append(parse_params(variant, ";".join(f"{k}={v}" for k, v in zip(keys, combo))))
    return out


def sweep(params, mode: str = "weights") -> list:
    """Rows of parameters plus pipeline invariant, in input order."""
    rows = []
    for p in params:
        bf = pipeline_invariant(p, mode)
        row = param_row(p)
        row.update(sign=bf.sign, torsion=",".join(map(str, bf.torsion)), free_rank=bf.free_rank, det=bf.det)
        rows.append(row)
    return rows


def rows_to_tsv(rows) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    lines = ["\t".join(cols)] + ["\t".join(str(r[c]) for c in cols) for r in rows]
    return "\n".join(lines) + "\n"
