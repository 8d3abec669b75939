"""Renewal systems, their left Fischer covers, and flow-equivalence invariants."""

from .borders import BorderReport, border_report, diag_sum_cover, is_modular, sum_surgery_fischer
from .covers import Cover, SftCertificate, block_language, infer_forbidden_words, left_fischer_cover, sft_certificate
from .errors import SoficError
from .graphs import LabelledGraph, labelled_iso, loop_graph, right_resolving_presentation, to_dot
from .invariants import (
    BowenFranksClass,
    adjacency_matrix,
    entropy,
    entropy_bracket,
    flow_equivalent,
    signed_bowen_franks,
    smith_normal_form,
)
from .words import (
    GeneratingList,
    bordering_status,
    enumerate_partitionings,
    fragment,
    parse_list,
    read_list,
    sum_lists,
    symbol_expand,
)

__all__ = [
    "BorderReport",
    "BowenFranksClass",
    "Cover",
    "GeneratingList",
    "LabelledGraph",
    "SftCertificate",
    "SoficError",
    "adjacency_matrix",
    "block_language",
    "border_report",
    "bordering_status",
    "diag_sum_cover",
    "entropy",
    "entropy_bracket",
    "enumerate_partitionings",
    "flow_equivalent",
    "fragment",
    "infer_forbidden_words",
    "is_modular",
    "labelled_iso",
    "left_fischer_cover",
    "loop_graph",
    "parse_list",
    "read_list",
    "right_resolving_presentation",
    "sft_certificate",
    "signed_bowen_franks",
    "smith_normal_form",
    "sum_lists",
    "sum_surgery_fischer",
    "symbol_expand",
    "to_dot",
]
