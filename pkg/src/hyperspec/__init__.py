"""Adjacency spectra and energy of hypergraphs."""

from .core import (
    DivisionSpec,
    Hypergraph,
    Verdict,
    WeakCutSpec,
    is_hypertree,
    is_weak_cut,
    parse_hypergraph,
    read_hypergraph,
    to_hg,
)
from .spectra import (
    adjacency_matrix,
    char_poly_exact,
    det_exact,
    energy,
    parity_certificate,
    spectrum_numeric,
)
from .constructions import (
    complete_kgraph,
    direct_sum,
    hyperstar,
    power_graph,
    tensor_product,
)
from .surgery import (
    GapReport,
    division_check,
    edge_deletion_check,
    isolated_edge_division_check,
    vertex_deletion_check,
    weak_cut_energy_check,
)
from .bounds import compare_b_B, full_report, reproduce_det_remark
from .errors import HyperspecError

__version__ = "0.1.0"
