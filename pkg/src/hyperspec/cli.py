"""Command-line front end: ``hyperspec VERB [options]``.

Exit codes: 0 success, 1 usage error, 2 parse/validation/input error,
3 a verification check failed.  Errors go to stderr as one JSON line.
"""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from . import verify as verify_mod
from ._util import dumps
from .bounds import full_report
from .constructions import (
    complete_bipartite,
    complete_kgraph,
    cycle,
    direct_sum,
    hyperstar,
    path,
    power_graph,
    random_hypergraph,
    random_hypertree,
    star,
    tensor_product,
)
from .core import (
    DivisionSpec,
    Hypergraph,
    WeakCutSpec,
    components,
    degree_stats,
    is_connected,
    is_hypertree,
    is_linear,
    parse_hypergraph,
    rank_corank,
    to_hg,
    uniformity,
)
from .errors import BadParams, HyperspecError, TheoremViolation
from .spectra import (
    adjacency_matrix,
    char_poly_exact,
    energy,
    integer_eigenvalues_exact,
    odd_root_alarms,
    parity_certificate,
    spectrum_numeric,
)
from .surgery import (
    delete_edge,
    delete_vertex,
    divide_edges,
    division_check,
    edge_deletion_check,
    isolated_edge_division_check,
    vertex_deletion_check,
    weak_cut_energy_check,
)
from ._util import exact_cap

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the contract here is 1
    def error(self, message):
        raise UsageError(message)


class _Failed(Exception):
    """Carries already-rendered output for an exit-3 result."""

    def __init__(self, text):
        self.text = text


# --------------------------------------------------------------------------
# helpers

def _load(args, stdin: TextIO) -> Hypergraph:
    if args.file == "-":
        text = stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise FileNotFoundError(f"{args.file}: {exc.strerror}") from None
    return parse_hypergraph(text, multi=args.multi)


def _labels(raw: str) -> list[str]:
    out = [t for t in raw.split(",") if t]
    if not out:
        raise UsageError("empty label list")
    return out


def _size_range(raw: str) -> tuple[int, int]:
    try:
        lo, _, hi = raw.partition(":")
        lo = int(lo)
        hi = int(hi) if hi else lo
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX, got {raw!r}") from None
    return lo, hi


def _table(obj, prefix="") -> list[str]:
    rows = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            rows += _table(v, f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and all(isinstance(v, dict) for v in obj):
        for i, v in enumerate(obj):
            label = v.get("name", v.get("theorem", i)) if isinstance(v, dict) else i
            rows += _table(v, f"{prefix}{label}.")
    else:
        rows.append(f"{prefix.rstrip('.'):<44} {dumps(obj)}")
    return rows


def _render(obj, pretty: bool) -> str:
    if pretty:
        return "\n".join(_table(obj)) + "\n"
    return dumps(obj) + "\n"


# --------------------------------------------------------------------------
# verbs

def cmd_info(args, stdin):
    H = _load(args, stdin)
    out = {"n": H.n, "m": H.m, "multi": H.multi}
    if H.m:
        r, s = rank_corank(H)
        out.update({"rank": r, "corank": s})
    out["uniformity"] = uniformity(H)
    if H.n:
        Delta, delta, avg = degree_stats(H)
        out.update({"max_degree": Delta, "min_degree": delta, "avg_degree": float(avg)})
    out.update({
        "linear": is_linear(H),
        "connected": is_connected(H) if H.n else None,
        "components": len(components(H)),
        "hypertree": is_hypertree(H),
    })
    return out


def cmd_spectrum(args, stdin):
    H = _load(args, stdin)
    A = adjacency_matrix(H)
    sp = spectrum_numeric(A)
    use_exact = args.exact if args.exact is not None else H.n <= exact_cap()
    if args.csv:
        return "index,eigenvalue\n" + "".join(
            f"{i},{dumps(float(v))}\n" for i, v in enumerate(sp.values))
    out = {"n": sp.n, "eigenvalues": [float(v) for v in sp.values]}
    if use_exact:
        p = char_poly_exact(A)
        roots, residual = integer_eigenvalues_exact(p)
        out.update({
            "char_poly": [str(c) for c in p.coeffs],
            "exact_integers": [[v, k] for v, k in roots],
            "residual_degree": residual.degree,
        })
    return out


def cmd_energy(args, stdin):
    H = _load(args, stdin)
    return energy(H, exact=args.exact).to_json()


def cmd_bounds(args, stdin):
    rep = full_report(_load(args, stdin)).to_json()
    if not rep["all_hold"]:
        raise _Failed(rep)
    return rep


def cmd_parity(args, stdin):
    H = _load(args, stdin)
    cert = parity_certificate(H)
    E = energy(H, exact=False).energy
    return {
        "status": cert.status,
        "energy": E,
        "exact_energy": cert.energy,
        "integer_roots": [list(t) for t in cert.roots] if cert.roots is not None else None,
        "residual_degree": cert.residual.degree if cert.residual is not None else None,
        "odd_root_alarms": odd_root_alarms(E),
    }


def cmd_verify(args, stdin):
    try:
        cfg = verify_mod.VerifyConfig(
            theorems=tuple(args.theorem) if args.theorem else verify_mod.THEOREMS,
            trials=args.trials, seed=args.seed, n_max=args.n_max, m_max=args.m_max,
            size_range=args.sizes, k=args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    results = verify_mod.run(cfg)
    out = {
        "config": {"theorems": list(cfg.theorems), "trials": cfg.trials, "seed": cfg.seed,
                   "n_max": cfg.n_max, "m_max": cfg.m_max,
                   "size_range": list(cfg.size_range), "k": cfg.k},
        "suites": [r.to_json() for r in results],
        "checks": sum(r.checks for r in results),
        "failures": sum(r.failures for r in results),
        "passed": all(r.passed for r in results),
    }
    if not out["passed"]:
        raise _Failed(out)
    return out


_GEN_PARAMS = {
    "star": ("n", "k"),
    "complete": ("n", "k"),
    "power": ("base", "n", "k"),
    "bipartite": ("a", "b"),
    "random": ("n", "m", "sizes", "seed"),
    "hypertree": ("m", "sizes", "seed"),
}


def _gen(args) -> Hypergraph:
    kind = args.kind
    missing = [f"--{p}" for p in _GEN_PARAMS[kind] if getattr(args, p) is None]
    if missing:
        raise UsageError(f"gen {kind} requires {' '.join(missing)}")
    if kind == "star":
        return hyperstar(args.n, args.k)
    if kind == "complete":
        return complete_kgraph(args.n, args.k)
    if kind == "power":
        base = {"path": path, "cycle": cycle, "star": star,
                "complete": lambda n: complete_kgraph(n, 2)}[args.base]
        return power_graph(base(args.n), args.k)
    if kind == "bipartite":
        return complete_bipartite(args.a, args.b)
    if kind == "random":
        return random_hypergraph(args.n, args.m, args.sizes, args.seed)
    return random_hypertree(args.m, args.sizes, args.seed)


def _flag(name, value) -> str:
    if name == "sizes":
        value = f"{value[0]}:{value[1]}"
    return f"--{name} {value}"


def cmd_gen(args, stdin):
    H = _gen(args)
    flags = " ".join(_flag(p, getattr(args, p)) for p in _GEN_PARAMS[args.kind])
    return to_hg(H, [f"hyperspec gen {args.kind} {flags}", f"n={H.n} m={H.m}"])


def _parse_cut(raw: str, H: Hypergraph) -> DivisionSpec:
    idx, sep, left = raw.partition(":")
    if not sep:
        raise UsageError(f"cut must look like EDGE:LABEL,LABEL; got {raw!r}")
    try:
        j = int(idx)
    except ValueError:
        raise UsageError(f"bad edge index {idx!r}") from None
    return DivisionSpec.from_left(H, j, _labels(left))


def cmd_op(args, stdin):
    H = _load(args, stdin)
    if args.action == "delete-vertex":
        result, rep = delete_vertex(H, args.target), vertex_deletion_check(H, args.target)
    elif args.action == "delete-edge":
        j = _edge_index(args.target)
        result, rep = delete_edge(H, j), edge_deletion_check(H, j)
    elif args.action == "divide":
        if args.left is None:
            raise UsageError("op divide requires --left")
        spec = DivisionSpec.from_left(H, _edge_index(args.target), _labels(args.left))
        check = isolated_edge_division_check if args.isolated else division_check
        result, rep = divide_edges(H, [spec]), check(H, spec)
    else:
        cuts = list(args.cut or [])
        if args.target is not None:
            cuts.insert(0, args.target)
        if not cuts:
            raise UsageError("op weak-cut requires at least one --cut EDGE:LABELS")
        cut = WeakCutSpec(tuple(_parse_cut(c, H) for c in cuts))
        result, rep = divide_edges(H, cut.divisions), weak_cut_energy_check(H, cut)
    hg = to_hg(result, [f"hyperspec op {args.action}"])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(hg)
    out = {"op": args.action, "report": rep.to_json(), "hypergraph": hg}
    if not rep.holds:
        raise _Failed(out)
    return out


def _edge_index(raw) -> int:
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise UsageError(f"edge index must be an integer, got {raw!r}") from None


def cmd_binop(args, stdin):
    if args.left == "-" and args.right == "-":
        raise UsageError("only one operand may come from stdin")
    ns = argparse.Namespace(multi=args.multi)
    ns.file = args.left
    H = _load(ns, stdin)
    ns.file = args.right
    G = _load(ns, stdin)
    result = direct_sum(H, G) if args.action == "sum" else tensor_product(H, G)
    return to_hg(result, [f"hyperspec binop {args.action}", f"n={result.n} m={result.m}"])


# --------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperspec", description="Spectra and energy of hypergraphs.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def with_file(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", metavar="FILE", help=".hg file, or - for stdin")
        sp.add_argument("--multi", action="store_true", help="accept multi-hypergraphs")
        sp.add_argument("--pretty", action="store_true", help="human-readable table")
        sp.set_defaults(func=func)
        return sp

    with_file("info", cmd_info, "basic parameters")
    sp = with_file("spectrum", cmd_spectrum, "adjacency spectrum")
    sp.add_argument("--csv", action="store_true", help="index,eigenvalue lines")
    sp.add_argument("--exact", dest="exact", action="store_true", default=None)
    sp.add_argument("--no-exact", dest="exact", action="store_false")
    sp = with_file("energy", cmd_energy, "energy with parity certificate")
    sp.add_argument("--exact", dest="exact", action="store_true", default=None)
    sp.add_argument("--no-exact", dest="exact", action="store_false")
    with_file("bounds", cmd_bounds, "all energy bounds")
    with_file("parity", cmd_parity, "exact parity certificate")

    sp = sub.add_parser("verify", help="seeded theorem suites")
    sp.add_argument("--theorem", action="append", choices=verify_mod.THEOREMS)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n-max", type=int, default=12)
    sp.add_argument("--m-max", type=int, default=10)
    sp.add_argument("--sizes", type=_size_range, default=(2, 4), metavar="MIN:MAX")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="write a generated .hg file")
    sp.add_argument("kind", choices=["star", "complete", "power", "bipartite", "random", "hypertree"])
    for name in ("n", "k", "m", "a", "b"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--sizes", type=_size_range, metavar="MIN:MAX")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--base", choices=["path", "cycle", "star", "complete"], default="path")
    sp.set_defaults(func=cmd_gen, pretty=False)

    sp = sub.add_parser("op", help="vertex/edge deletion, division, weak cut")
    sp.add_argument("action", choices=["delete-vertex", "delete-edge", "divide", "weak-cut"])
    sp.add_argument("file", metavar="FILE", help=".hg file, or - for stdin")
    sp.add_argument("target", nargs="?", help="vertex label or edge index")
    sp.add_argument("--left", help="comma-separated labels of the first half")
    sp.add_argument("--isolated", action="store_true", help="use the isolated-edge check")
    sp.add_argument("--cut", action="append", metavar="EDGE:LABELS")
    sp.add_argument("--out", help="also write the resulting .hg here")
    sp.add_argument("--multi", action="store_true")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(func=cmd_op)

    sp = sub.add_parser("binop", help="direct sum or tensor product")
    sp.add_argument("action", choices=["sum", "product"])
    sp.add_argument("left", metavar="FILE1")
    sp.add_argument("right", metavar="FILE2")
    sp.add_argument("--multi", action="store_true")
    sp.set_defaults(func=cmd_binop, pretty=False)
    return p


def _error(stderr, exc, kind=None):
    msg = str(exc) if not isinstance(exc, KeyError) else exc.__str__()
    stderr.write(dumps({"error": msg, "type": kind or type(exc).__name__}) + "\n")


def run(argv, stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args, stdin)
    except UsageError as exc:
        _error(stderr, exc, "UsageError")
        return EXIT_USAGE
    except _Failed as exc:
        stdout.write(_render(exc.text, args.pretty))
        return EXIT_FAILED
    except TheoremViolation as exc:
        _error(stderr, exc)
        return EXIT_FAILED
    except BadParams as exc:
        _error(stderr, exc)
        return EXIT_USAGE
    except (HyperspecError, FileNotFoundError) as exc:
        _error(stderr, exc)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    if isinstance(out, str):
        stdout.write(out)
    else:
        stdout.write(_render(out, args.pretty))
    return EXIT_OK


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
