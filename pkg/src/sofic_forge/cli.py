"""Command-line front end: ``sofic-forge <command> ...``.

Exit status is 0 on success, 1 on domain errors (the witness is printed)
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import families
from .borders import border_report, is_modular, sum_surgery_fischer
from .covers import infer_forbidden_words, left_fischer_cover, sft_certificate
from .errors import InvalidParams, NotSftError, SoficError
from .graphs import describe, labelled_iso, to_dot
from .invariants import adjacency_matrix, entropy_bracket, flow_equivalent, signed_bowen_franks
from .reproduce import SCENARIOS, det_range
from .words import parse_list, show, sum_lists


class UsageError(Exception):
    pass


def _load(path, args) -> tuple:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read list file {path!r}: {exc.strerror}") from exc
    lst = parse_list(text, multichar=args.multichar)
    if getattr(args, "reversed", False):
        lst = lst.reversed()
    return lst, hashlib.sha256(text.encode()).hexdigest()[:16]


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _report(args, digest, results):
    if args.json:
        doc = {"command": args.argv, "input_digest": digest, "results": results}
        _write(args.json, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _parse_weights(text) -> dict:
    weights = {}
    for part in filter(None, text.split(",")):
        s, _, k = part.partition("=")
        try:
            weights[s.strip()] = int(k)
        except ValueError:
            raise UsageError(f"--weights: expected symbol=count, got {part!r}") from None
    return weights


# -- commands ------------------------------------------------------------------

def cmd_cover(args, out):
    lst, digest = _load(args.list, args)
    cover = left_fischer_cover(lst, kind=args.kind)
    out.write(f"COVER kind={cover.kind} memory={cover.memory} vertices={len(cover.vertices)} edges={len(cover.graph.edges)}\n")
    out.write(describe(cover.graph))
    if cover.kind == "krieger":
        out.write(f"components={cover.components()}\n")
    if args.dot:
        _write(args.dot, to_dot(cover.graph))
    if args.json:
        _write(args.json, cover.to_json())
    return 0


def cmd_sft(args, out):
    lst, digest = _load(args.list, args)
    cert = sft_certificate(lst)
    out.write(cert.describe() + "\n")
    _report(args, digest, {"sft": cert.is_sft, "memory": cert.memory, "certificate": cert.describe()})
    return 0 if cert.is_sft else 1


def cmd_forbidden(args, out):
    lst, digest = _load(args.list, args)
    words = sorted(infer_forbidden_words(lst), key=lambda w: (len(w), w))
    for w in words:
        out.write(show(w) + "\n")
    _report(args, digest, {"forbidden": [show(w) for w in words]})
    return 0


def cmd_borders(args, out):
    lst, digest = _load(args.list, args)
    cover = left_fischer_cover(lst)
    rep = border_report(lst, cover, generator_bound=args.bound)
    d = cover.graph.descriptor
    out.write(f"BORDER {' '.join(sorted(d[v] for v in rep.border_vertices))}\n")
    out.write(f"UNIVERSAL {d[rep.universal_vertex] if rep.universal_vertex is not None else 'none'}\n")
    gens = {}
    for v in sorted(rep.border_vertices, key=lambda v: d[v]):
        mins = [show(w) for w in rep.minimal_generators(v)]
        gens[d[v]] = mins
        out.write(f"GENERATORS {d[v]}: {' '.join(mins[:8]) if mins else '(none found)'}\n")
    out.write(f"SEARCH_BOUND {rep.search_bound}\n")
    if args.dot:
        _write(args.dot, to_dot(cover.graph, rep.border_vertices))
    _report(args, digest, {
        "border": sorted(d[v] for v in rep.border_vertices),
        "universal": d.get(rep.universal_vertex),
        "minimal_generators": gens,
        "search_bound": rep.search_bound,
    })
    return 0


def cmd_modular(args, out):
    lst, digest = _load(args.list, args)
    res = is_modular(lst, args.side)
    if res:
        out.write("MODULAR yes\n")
    else:
        start, label = res.counterexample
        cover = left_fischer_cover(lst if args.side == "left" else lst.reversed())
        out.write(f"MODULAR no counterexample start={cover.graph.descriptor[start]} label={show(label)}\n")
    _report(args, digest, {"modular": res.modular, "side": args.side})
    return 0 if res else 1


def cmd_sum(args, out):
    l1, d1 = _load(args.list1, args)
    l2, d2 = _load(args.list2, args)
    union = sum_lists(l1, l2)
    cover = left_fischer_cover(union)
    out.write(f"SUM words={len(union)} disjoint={'yes' if union.alphabet_disjoint else 'no'} vertices={len(cover.vertices)}\n")
    status = 0
    results = {"vertices": len(cover.vertices), "disjoint": union.alphabet_disjoint}
    if args.check_surgery:
        c1, c2 = left_fischer_cover(l1), left_fischer_cover(l2)
        surg = sum_surgery_fischer(c1, border_report(l1, c1, 0), c2, border_report(l2, c2, 0))
        same = labelled_iso(surg.graph, cover.graph) is not None
        out.write(f"SURGERY_ISOMORPHIC {'yes' if same else 'no'}\n")
        results["surgery_isomorphic"] = same
        status = 0 if same else 1
    if args.dot:
        _write(args.dot, to_dot(cover.graph))
    _report(args, d1 + d2, results)
    return status


def cmd_bf(args, out):
    lst, digest = _load(args.list, args)
    cover = left_fischer_cover(lst)
    weights = None
    if args.weights:
        given = _parse_weights(args.weights)
        weights = {s: given.get(s, 1) for s in cover.graph.alphabet}
    bf = signed_bowen_franks(adjacency_matrix(cover, weights))
    out.write(str(bf) + "\n")
    _report(args, digest, bf.to_dict())
    return 0


def cmd_fe(args, out):
    l1, d1 = _load(args.list1, args)
    l2, d2 = _load(args.list2, args)
    a = adjacency_matrix(left_fischer_cover(l1))
    b = adjacency_matrix(left_fischer_cover(l2))
    res = flow_equivalent(a, b)
    out.write(f"FLOW_EQUIVALENT {res}\n")
    _report(args, d1 + d2, {"flow_equivalent": str(res)})
    return 0


def cmd_entropy(args, out):
    lst, digest = _load(args.list, args)
    br = entropy_bracket(adjacency_matrix(left_fischer_cover(lst)), args.tol)
    out.write(f"entropy={br.value!r} lower={br.lower!r} upper={br.upper!r}\n")
    _report(args, digest, {"entropy": br.value, "lower": br.lower, "upper": br.upper})
    return 0


def cmd_family(args, out):
    p = families.parse_params(args.variant, args.params)
    lst = families.build_family(p)
    out.write(f"FAMILY {p}\nWORDS {len(lst)}\n")
    bf = families.pipeline_invariant(p, args.mode)
    out.write(f"PIPELINE {bf}\n")
    status = 0
    try:
        cf = families.closed_form_invariant(p)
    except SoficError:
        out.write("CLOSED_FORM none\n")
    else:
        torsion = "-" if cf.torsion is None else "[" + ",".join(map(str, cf.torsion)) + "]"
        ok = cf.det == bf.det and (cf.torsion is None or cf.torsion == bf.torsion) and (not cf.cyclic or bf.is_cyclic)
        out.write(f"CLOSED_FORM det={cf.det} torsion={torsion} cyclic={'yes' if cf.cyclic else '-'} match={'yes' if ok else 'no'}\n")
        status = 0 if ok else 1
    if args.emit_list:
        _write(args.emit_list, lst.to_text())
    return status


def cmd_sweep(args, out):
    params = families.expand_grid(args.variant, args.grid)
    text = families.rows_to_tsv(families.sweep(params, args.mode))
    if args.out:
        _write(args.out, text)
        out.write(f"SWEEP {len(params)} rows -> {args.out}\n")
    else:
        out.write(text)
    return 0


def cmd_search_det(args, out):
    p = families.search_det(args.k)
    bf = families.pipeline_invariant(p)
    out.write(f"PARAMS a={p.a} alpha={p.alpha} alpha_t={p.alpha_t} beta={p.beta} gamma={p.gamma}\n")
    out.write(f"PIPELINE {bf}\n")
    return 0 if bf.det == args.k else 1


def _range(text):
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    return lo, hi


def cmd_reproduce(args, out):
    if args.target == "det-range":
        checks = det_range(*args.k)
    else:
        checks = SCENARIOS[args.target]()
    for c in checks:
        out.write(c.line() + "\n")
    failed = [c for c in checks if not c.ok and not c.note]
    out.write(f"{'OK' if not failed else 'MISMATCH'} {args.target}\n")
    return 1 if failed else 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--multichar", action="store_true", help="unspaced lines are single symbols")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--bound", type=int, default=None, help="generator search bound")
    common.add_argument("--json", metavar="PATH", help="write a JSON report")
    common.add_argument("--dot", metavar="PATH", help="write a DOT rendering")
    common.add_argument("--reversed", action="store_true", help="reverse every word first")

    p = argparse.ArgumentParser(prog="sofic-forge", description="Renewal systems, Fischer covers and flow invariants.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("cover", cmd_cover, "left Fischer (or Krieger) cover")
    sp.add_argument("list")
    sp.add_argument("--kind", choices=("fischer", "krieger"), default="fischer")
    add("sft", cmd_sft, "decide the SFT property").add_argument("list")
    add("forbidden", cmd_forbidden, "minimal forbidden words").add_argument("list")
    add("borders", cmd_borders, "border points and generators").add_argument("list")
    sp = add("modular", cmd_modular, "decide left/right modularity")
    sp.add_argument("list")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp = add("sum", cmd_sum, "cover of a union of two lists")
    sp.add_argument("list1")
    sp.add_argument("list2")
    sp.add_argument("--check-surgery", action="store_true")
    sp = add("bf", cmd_bf, "signed Bowen-Franks invariant")
    sp.add_argument("list")
    sp.add_argument("--weights", metavar="s=k,...", help="fragmentation counts per symbol")
    sp = add("fe", cmd_fe, "flow equivalence by Franks' criterion")
    sp.add_argument("list1")
    sp.add_argument("list2")
    sp = add("entropy", cmd_entropy, "topological entropy with certificate")
    sp.add_argument("list")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp = add("family", cmd_family, "build a family instance and compare with its closed form")
    sp.add_argument("variant", choices=sorted(families.VARIANTS))
    sp.add_argument("--params", default="", help='e.g. "r=2;alpha=2;gammas=3"')
    sp.add_argument("--emit-list", metavar="PATH")
    sp.add_argument("--mode", choices=("weights", "direct"), default="weights")
    sp = add("sweep", cmd_sweep, "TSV sweep of pipeline invariants over a grid")
    sp.add_argument("variant", choices=sorted(families.VARIANTS))
    sp.add_argument("--grid", required=True, help='e.g. "ns=4,2;gamma=3..7;a=1..8"')
    sp.add_argument("--out", metavar="TSV")
    sp.add_argument("--mode", choices=("weights", "direct"), default="weights")
    sp = add("search-det", cmd_search_det, "PosDet parameters realising a determinant")
    sp.add_argument("k", type=int)
    sp = add("reproduce", cmd_reproduce, "run a stored reproduction scenario")
    sp.add_argument("target", choices=sorted(SCENARIOS))
    sp.add_argument("--k", type=_range, default=(-50, 50), metavar="LO..HI")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    try:
        return args.fn(args, out)
    except (UsageError, InvalidParams) as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except NotSftError as exc:
        out.write(exc.certificate.describe() + "\n")
        err.write(f"error: {exc}\n")
        return 1
    except SoficError as exc:
        extra = getattr(exc, "counterexample", None)
        err.write(f"error: {type(exc).__name__}: {exc}" + (f" counterexample={extra}" if extra else "") + "\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
