"""Independent numeric and matrix ground truth for the symbolic engine."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .clifford import TRACE_ID
from .coeffs import GaussianRational

__all__ = [
    "MatrixRep",
    "PoleOnContour",
    "build_rep",
    "matrix_trace_word",
    "numeric_contour",
    "mc_sphere",
    "omega_value",
]

_G0 = GaussianRational(0)
_G1 = GaussianRational(1)
_GI = GaussianRational(0, 1)

Matrix = list  # list[list[GaussianRational]]


def _eye(k: int) -> Matrix:
    return [[_G1 if r == c else _G0 for c in range(k)] for r in range(k)]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    k = len(a)
    out = []
    for r in range(k):
        row = a[r]
        new = []
        for c in range(k):
            s = _G0
            for t in range(k):
                x = row[t]
                if x:
                    y = b[t][c]
                    if y:
                        s = s + x * y
            new.append(s)
        out.append(new)
    return out


def _kron(a: Matrix, b: Matrix) -> Matrix:
    ka, kb = len(a), len(b)
    return [[a[r // kb][c // kb] * b[r % kb][c % kb] for c in range(ka * kb)] for r in range(ka * kb)]


def _scale(a: Matrix, s: GaussianRational) -> Matrix:
    return [[x * s for x in row] for row in a]


def _add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _trace(a: Matrix) -> GaussianRational:
    s = _G0
    for r in range(len(a)):
        s = s + a[r][r]
    return s


_PX = [[_G0, _G1], [_G1, _G0]]
_PY = [[_G0, -_GI], [_GI, _G0]]
_PZ = [[_G1, _G0], [_G0, -_G1]]
_P1 = _eye(2)


@dataclass(frozen=True)
class MatrixRep:
    dim: int
    generators: tuple

    @property
    def size(self) -> int:
        return len(self.generators[0])


def _jordan_wigner(qubits: int) -> list[Matrix]:
    """2*qubits + 1 anti-Hermitian generators squaring to -1."""
    gens = []
    for q in range(qubits):
        for p in (_PX, _PY):
            m = [[_G1]]
            for s in range(qubits):
                m = _kron(m, _PZ if s < q else (p if s == q else _P1))
            gens.append(_scale(m, _GI))
    last = [[_G1]]
    for _ in range(qubits):
        last = _kron(last, _PZ)
    gens.append(_scale(last, _GI))
    return gens


def build_rep(dim: int) -> MatrixRep:
    if dim not in TRACE_ID:
        raise ValueError(f"unsupported dimension {dim}")
    qubits = TRACE_ID[dim].bit_length() - 1
    gens = _jordan_wigner(qubits)[:dim]
    rep = MatrixRep(dim, tuple(gens))
    _check_relations(rep)
    return rep


def _check_relations(rep: MatrixRep) -> None:
    k = rep.size
    eye = _eye(k)
    for a, ea in enumerate(rep.generators):
        for b, eb in enumerate(rep.generators):
            ac = _add(_matmul(ea, eb), _matmul(eb, ea))
            want = _scale(eye, GaussianRational(-2 if a == b else 0))
            if ac != want:
                raise AssertionError(f"generators {a}, {b} violate the Clifford relation")
    if _trace(eye) != TRACE_ID[rep.dim]:
        raise AssertionError("trace of identity does not match the table")


def vector_matrix(rep: MatrixRep, v: Sequence) -> Matrix:
    if len(v) != len(rep.generators):
        raise ValueError("coefficient vector length must equal the number of generators")
    out = [[_G0] * rep.size for _ in range(rep.size)]
    for coef, e in zip(v, rep.generators):
        c = GaussianRational.coerce(coef)
        if c:
            out = _add(out, _scale(e, c))
    return out


def matrix_trace_word(rep: MatrixRep, vectors: Sequence[Sequence]) -> GaussianRational:
    """Exact trace of the product of the vectors' matrices.

    In odd dimension the irreducible representation is one of two
    inequivalent ones (generators ``e`` or ``-e``); the trace returned is
    their average, which is the trace on the full Clifford algebra and the
    one the Wick recursion computes. Odd words then trace to zero.
    """
    if rep.dim % 2 and len(vectors) % 2:
        return _G0
    m = _eye(rep.size)
    for v in vectors:
        m = _matmul(m, vector_matrix(rep, v))
    return _trace(m)


def raw_matrix_trace_word(rep: MatrixRep, vectors: Sequence[Sequence]) -> GaussianRational:
    """Trace in the chosen irreducible representation, with no averaging."""
    m = _eye(rep.size)
    for v in vectors:
        m = _matmul(m, vector_matrix(rep, v))
    return _trace(m)


class PoleOnContour(ValueError):
    pass


def numeric_contour(
    f: Callable[[complex], complex],
    center: complex = 1j,
    radius: float = 1.0,
    samples: int = 4096,
    poles: Sequence[complex] = (1j, -1j),
) -> complex:
    """Trapezoidal rule for the positively oriented circle integral.

    ``poles`` lists the known singularities of ``f``; a pole within 1e-6 of
    a sample point raises :class:`PoleOnContour`.
    """
    theta = 2 * np.pi * np.arange(samples) / samples
    pts = center + radius * np.exp(1j * theta)
    for p in poles:
        if np.min(np.abs(pts - p)) < 1e-6:
            raise PoleOnContour(f"pole {p} lies on the contour")
    vals = np.array([f(complex(z)) for z in pts])
    dz = 1j * radius * np.exp(1j * theta)
    return complex(np.sum(vals * dz) * (2 * np.pi / samples))


def omega_value(m: int) -> float:
    """Volume of the unit m-sphere."""
    return 2 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


def _sphere_points(m: int, samples: int, seed: int | None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, m + 1))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def mc_sphere(alpha: Sequence[int], m: int, samples: int = 10**6, seed: int | None = 0,
              with_error: bool = False):
    """Monte-Carlo estimate of ``int_{S^m} xi^alpha``; optionally also the
    standard error of the estimate."""
    if samples < 10**5:
        raise ValueError("use at least 1e5 samples")
    alpha = tuple(alpha) + (0,) * (m + 1 - len(alpha))
    pts = _sphere_points(m, samples, seed)
    vals = np.prod(pts ** np.array(alpha), axis=1)
    om = omega_value(m)
    est = float(vals.mean() * om)
    if with_error:
        return est, float(vals.std(ddof=1) / math.sqrt(samples) * om)
    return est


def mc_sphere_all(alphas: Sequence[Sequence[int]], m: int, samples: int = 10**6, seed: int | None = 0):
    """Estimates and standard errors for many multi-indices from one sample set."""
    if samples < 10**5:
        raise ValueError("use at least 1e5 samples")
    pts = _sphere_points(m, samples, seed)
    om = omega_value(m)
    powers: dict = {}
    out = {}
    for a in alphas:
        a = tuple(a) + (0,) * (m + 1 - len(a))
        vals = np.ones(samples)
        for col, e in enumerate(a):
            if e:
                key = (col, e)
                if key not in powers:
                    powers[key] = pts[:, col] ** e
                vals = vals * powers[key]
        out[a] = (float(vals.mean() * om), float(vals.std(ddof=1) / math.sqrt(samples) * om))
    return out


def to_fraction_vector(v: Sequence[int]) -> list[Fraction]:
    return [Fraction(x) for x in v]
