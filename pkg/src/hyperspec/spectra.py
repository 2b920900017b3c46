"""Adjacency matrices, spectra, energy and exact parity certificates.

The adjacency matrix of a (multi-)hypergraph has a_ij = number of edges
containing both i and j, and a zero diagonal.  Energy is the sum of the
absolute eigenvalues.  Numerical spectra come from LAPACK's symmetric
solver; exact information (integer characteristic polynomial, integer
eigenvalues, determinant) is computed with Python integers.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ._util import NUMERIC_CAP, exact_cap
from .core import Hypergraph
from .errors import (
    ConvergenceFailure,
    DimensionCapExceeded,
    EmptyHypergraph,
    TheoremViolation,
    ValidationError,
)

__all__ = [
    "Spectrum",
    "CharPoly",
    "EnergyReport",
    "ParityCertificate",
    "adjacency_matrix",
    "check_adjacency",
    "spectrum_numeric",
    "char_poly_exact",
    "integer_eigenvalues_exact",
    "det_exact",
    "trace_square",
    "energy",
    "energy_of_matrix",
    "parity_certificate",
    "spectral_radius",
    "edge_sum_operator",
    "odd_root_alarms",
]

DEFAULT_TOL = 1e-10


def adjacency_matrix(H: Hypergraph) -> np.ndarray:
    """Dense codegree matrix as an int64 array.

    Repeated edges add their multiplicity; edges with fewer than two
    vertices contribute nothing.
    """
    if H.n == 0:
        raise EmptyHypergraph("adjacency matrix needs at least one vertex")
    A = np.zeros((H.n, H.n), dtype=np.int64)
    for e in H.edges:
        if len(e) < 2:
            continue
        idx = np.fromiter(e, dtype=np.intp, count=len(e))
        A[np.ix_(idx, idx)] += 1
    np.fill_diagonal(A, 0)
    return A


def check_adjacency(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise ValidationError("adjacency matrix is not symmetric")
    if A.size and np.any(np.diag(A) != 0):
        raise ValidationError("adjacency matrix has a non-zero diagonal")
    return A


# --------------------------------------------------------------------------
# numeric spectrum

@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order, with optional exact annotations.

    ``exact_part`` lists ``(integer eigenvalue, multiplicity)``; the
    remaining eigenvalues are the roots of ``residual_poly``.
    """

    values: np.ndarray
    exact_part: tuple[tuple[int, int], ...] | None = None
    residual_poly: "CharPoly | None" = None

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def energy(self) -> float:
        return float(np.abs(self.values).sum())

    @property
    def is_integral(self) -> bool | None:
        if self.residual_poly is None:
            return None
        return self.residual_poly.degree == 0


def spectrum_numeric(A, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of a symmetric matrix, largest first.

    Values within ``tol * max(1, ||A||_max)`` of zero are snapped to 0.0 so
    that structurally zero eigenvalues print as zeros.
    """
    A = check_adjacency(A)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = A.shape[0]
    if n > NUMERIC_CAP:
        raise DimensionCapExceeded(f"n={n} exceeds the numeric cap {NUMERIC_CAP}")
    if n == 0:
        return Spectrum(np.zeros(0))
    try:
        w = np.linalg.eigvalsh(A.astype(np.float64))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    scale = max(1.0, float(np.abs(A).max()))
    w[np.abs(w) < tol * scale] = 0.0
    return Spectrum(w[::-1].copy())


def eigenpairs(A) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""
    A = check_adjacency(A)
    try:
        w, V = np.linalg.eigh(A.astype(np.float64))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return w[::-1].copy(), V[:, ::-1].copy()


def edge_sum_operator(H: Hypergraph, x) -> np.ndarray:
    """Apply the adjacency matrix through the edge list.

    Computes ``(A x)_u = sum over edges e containing u of x(e - {u})``
    without forming A.  ``x`` may be a vector or a matrix of column vectors.
    """
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    for e in H.edges:
        if len(e) < 2:
            continue
        idx = np.fromiter(e, dtype=np.intp, count=len(e))
        total = x[idx].sum(axis=0)
        out[idx] += total - x[idx]
    return out


# --------------------------------------------------------------------------
# exact arithmetic

@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial, coefficients from the leading term down."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        d = self.degree
        for i, c in enumerate(self.coeffs):
            p = d - i
            if c == 0:
                continue
            mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
            mag = abs(c)
            body = f"{mag}" if (mag != 1 or p == 0) else ""
            body = f"{body}{mono}" if body and mono else (body or mono)
            terms.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(terms) or "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _as_int_rows(A) -> list[list[int]]:
    A = check_adjacency(A)
    return [[int(v) for v in row] for row in A.tolist()]


def _check_cap(n, cap):
    cap = exact_cap() if cap is None else cap
    if n > cap:
        raise DimensionCapExceeded(f"n={n} exceeds the exact-arithmetic cap {cap}")


def char_poly_exact(A, cap: int | None = None) -> CharPoly:
    """Exact ``det(xI - A)`` by the Faddeev-LeVerrier recurrence.

    Every division ``trace / k`` in the recurrence is exact for an integer
    matrix; a non-zero remainder means corrupted input and raises.
    """
    rows = _as_int_rows(A)
    n = len(rows)
    _check_cap(n, cap)
    if n == 0:
        return CharPoly((1,))
    Aobj = np.array(rows, dtype=object)
    eye = np.identity(n, dtype=np.int64).astype(object)
    coeffs = [1]
    M = np.zeros((n, n), dtype=object)
    c_prev = 1
    for k in range(1, n + 1):
        M = Aobj.dot(M) + c_prev * eye
        AM = Aobj.dot(M)
        tr = sum(AM[i, i] for i in range(n))
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("inexact division in Faddeev-LeVerrier; input not integral")
        coeffs.append(int(q))
        c_prev = q
    return CharPoly(tuple(coeffs))


def det_exact(A, cap: int | None = None) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    M = _as_int_rows(A)
    n = len(M)
    _check_cap(n, cap)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            row_i, row_k = M[i], M[k]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def trace_square(A) -> int:
    """Exact ``tr(A^2) = sum_ij a_ij^2``, which equals the sum of squared eigenvalues."""
    A = check_adjacency(A)
    return int(sum(int(v) * int(v) for v in A.ravel().tolist()))


def _iroot_ceil(x: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= x."""
    if x <= 0:
        return 0
    r = 1 << ((x.bit_length() + k - 1) // k)
    # Newton iteration from above converges to floor(x ** (1/k))
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > x:
        r -= 1
    return r if r ** k == x else r + 1


def _root_bound(coeffs) -> int:
    # Fujiwara: every root has |z| <= 2 max_k |a_{n-k}|^(1/k) for monic p
    best = 0
    for k, c in enumerate(coeffs[1:], start=1):
        if c:
            best = max(best, _iroot_ceil(abs(c), k))
    return 2 * best


def _synthetic_div(coeffs, r):
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * r)
    rem = coeffs[-1] + out[-1] * r
    return out, rem


def integer_eigenvalues_exact(p: CharPoly) -> tuple[list[tuple[int, int]], CharPoly]:
    """Split off every integer root of a monic integer polynomial.

    A rational root of a monic integer polynomial is an integer dividing the
    constant term, so candidates are the divisors of the constant term up to
    a root-magnitude bound.  Returns ``(roots, residual)`` with roots sorted
    descending as ``(value, multiplicity)``.
    """
    coeffs = list(p.coeffs)
    found: Counter = Counter()
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        found[0] += 1
    if len(coeffs) > 1:
        bound = _root_bound(coeffs)
        const = abs(coeffs[-1])
        for d in range(1, bound + 1):
            if len(coeffs) == 1:
                break
            if const % d:
                continue
            for r in (d, -d):
                while len(coeffs) > 1:
                    q, rem = _synthetic_div(coeffs, r)
                    if rem:
                        break
                    coeffs = q
                    found[r] += 1
    roots = sorted(found.items(), key=lambda t: -t[0])
    return roots, CharPoly(tuple(coeffs))


# --------------------------------------------------------------------------
# energy and parity

@dataclass(frozen=True)
class ParityCertificate:
    """Outcome of the exact parity check.

    ``status`` is ``"even"`` (all eigenvalues are integers and ``energy`` is
    the exact, even, energy), ``"irrational"`` (some eigenvalue is
    irrational, so the rational-energy parity theorem does not apply) or
    ``"undetermined"`` (matrix above the exact cap).
    """

    status: str
    energy: int | None = None
    roots: tuple[tuple[int, int], ...] = ()
    residual: CharPoly | None = None


@dataclass(frozen=True)
class EnergyReport:
    energy: float
    positive_sum: float
    spectral_radius: float
    parity: str
    exact_energy: int | None = None
    spectrum: Spectrum = field(repr=False, default=None)

    def to_json(self) -> dict:
        sp = self.spectrum
        return {
            "n": sp.n,
            "eigenvalues": [float(v) for v in sp.values],
            "exact_integers": [list(t) for t in sp.exact_part] if sp.exact_part is not None else None,
            "energy": self.energy,
            "exact_energy": self.exact_energy,
            "positive_sum": self.positive_sum,
            "spectral_radius": self.spectral_radius,
            "parity": self.parity,
        }


def _certify(A, cap=None) -> ParityCertificate:
    n = np.asarray(A).shape[0]
    limit = exact_cap() if cap is None else cap
    if n > limit:
        return ParityCertificate("undetermined")
    roots, residual = integer_eigenvalues_exact(char_poly_exact(A, cap=limit))
    if residual.degree > 0:
        return ParityCertificate("irrational", roots=tuple(roots), residual=residual)
    exact = sum(abs(r) * mult for r, mult in roots)
    if exact % 2:
        raise TheoremViolation(f"integral spectrum with odd energy {exact}")
    return ParityCertificate("even", exact, tuple(roots), residual)


def parity_certificate(H: Hypergraph, cap: int | None = None) -> ParityCertificate:
    """Certify evenness of the energy when the spectrum is entirely integral.

    A rational eigenvalue of an integer symmetric matrix is an integer, and
    energy is twice the sum of the positive eigenvalues; so an all-integer
    spectrum yields an even integer energy.
    """
    return _certify(adjacency_matrix(H), cap)


def energy_of_matrix(A, exact: bool | None = None, cap: int | None = None) -> EnergyReport:
    A = check_adjacency(A)
    spec = spectrum_numeric(A)
    vals = spec.values
    total = float(np.abs(vals).sum())
    pos = float(vals[vals > 0].sum())
    if abs(total - 2 * pos) > 1e-8 * max(1.0, total):
        raise TheoremViolation(f"energy {total} differs from twice the positive sum {2 * pos}")
    radius = float(np.abs(vals).max()) if len(vals) else 0.0

    limit = exact_cap() if cap is None else cap
    if exact is None:
        exact = A.shape[0] <= limit
    cert = _certify(A, limit) if exact else ParityCertificate("undetermined")
    if cert.status == "even" and abs(cert.energy - total) > 1e-6 * max(1.0, total):
        raise TheoremViolation(f"numeric energy {total} disagrees with exact {cert.energy}")
    if cert.residual is not None:
        spec = Spectrum(vals, tuple(cert.roots), cert.residual)
    return EnergyReport(total, pos, radius, cert.status, cert.energy, spec)


def energy(H: Hypergraph, exact: bool | None = None, cap: int | None = None) -> EnergyReport:
    """Energy of ``H`` with a parity certificate when the exact path runs.

    By default the exact path runs whenever ``n`` is within the exact cap
    (64, or ``$HYPERSPEC_EXACT_CAP``).
    """
    return energy_of_matrix(adjacency_matrix(H), exact=exact, cap=cap)


def spectral_radius(H: Hypergraph) -> float:
    vals = spectrum_numeric(adjacency_matrix(H)).values
    return float(np.abs(vals).max())


def odd_root_alarms(value: float, p_max: int = 4, tol: float = 5e-4) -> list[dict]:
    """Flag when ``value**p`` sits near an integer ``2**q * t`` with t odd, q < p.

    Energies of hypergraphs never take such values; a hit is a numerical
    sanity alarm, not a proof of anything.
    """
    alarms = []
    for p in range(1, p_max + 1):
        power = value ** p
        N = round(power)
        if N <= 0 or abs(power - N) > tol:
            continue
        q = (N & -N).bit_length() - 1
        if q <= p - 1:
            alarms.append({"p": p, "q": q, "t": N >> q, "value_pow": power})
    return alarms
