"""Numeric evaluation on concrete finite-dimensional Lie algebras.

Structure constants are kept exactly (for the Jacobi check at load time) and
as a float64 tensor ``C[i, j, k] = c_ij^k`` for evaluation. Analytic matrix
functions are summed as truncated Taylor series with an explicit tail bound,
which works for non-diagonalizable ``ad X`` as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from . import series
from .bch import bch
from .free_algebra import CyclicSeries
from .free_lie import LieSeries, standard_factorization
from .kv_equations import trace_rhs
from .kv_solution import KVPair

TAIL_TOL = 1e-13
SAMPLE_RADIUS = 0.1
FD_STEP = 1e-4


class GuardError(ValueError):
    """Input outside the domain where the series evaluations are trusted."""


@dataclass
class LieAlgebraData:
    name: str
    dim: int
    constants: Dict[Tuple[int, int, int], Fraction]
    basis_names: Tuple[str, ...] = ()
    C: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not self.basis_names:
            self.basis_names = tuple(f"e{i + 1}" for i in range(self.dim))
        self.constants = {k: Fraction(v) for k, v in self.constants.items() if v != 0}
        self._check_exact()
        C = np.zeros((self.dim,) * 3)
        for (i, j, k), c in self.constants.items():
            C[i, j, k] = float(c)
        self.C = C

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.constants.get((i, j, k), Fraction(0))

    def bracket_exact(self, i: int, j: int) -> Dict[int, Fraction]:
        return {k: self.c(i, j, k) for k in range(self.dim) if self.c(i, j, k)}

    def _check_exact(self) -> None:
        d = self.dim
        for (i, j, k) in self.constants:
            if not (0 <= i < d and 0 <= j < d and 0 <= k < d):
                raise ValueError(f"{self.name}: index out of range in c_{i}{j}^{k}")
        for i, j, k in product(range(d), repeat=3):
            if self.c(i, j, k) != -self.c(j, i, k):
                raise ValueError(f"{self.name}: structure constants not antisymmetric at ({i},{j},{k})")
        # [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0
        for i, j, k in product(range(d), repeat=3):
            for m in range(d):
                s = sum(
                    self.c(j, k, l) * self.c(i, l, m) + self.c(k, i, l) * self.c(j, l, m) + self.c(i, j, l) * self.c(k, l, m)
                    for l in range(d)
                )
                if s != 0:
                    raise ValueError(f"{self.name}: Jacobi identity fails for ({i},{j},{k})")

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", u, v, self.C)

    @property
    def constant_norm(self) -> float:
        return float(np.max(np.abs(self.C))) if self.constants else 0.0


def _parse_rational(s: str) -> Fraction:
    return Fraction(s)


def parse_algebra(text: str, name: str = "custom") -> LieAlgebraData:
    """Plain-text format: first line ``d``, then ``i j k p/q`` per nonzero ``c_ij^k`` (1-based)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty algebra definition")
    d = int(lines[0])
    constants: Dict[Tuple[int, int, int], Fraction] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4:
            raise ValueError(f"bad structure-constant line: {ln!r}")
        i, j, k = (int(p) - 1 for p in parts[:3])
        constants[(i, j, k)] = _parse_rational(parts[3])
    return LieAlgebraData(name, d, constants)


def load_algebra(path: str | Path) -> LieAlgebraData:
    path = Path(path)
    return parse_algebra(path.read_text(), name=path.stem)


def _antisym(pairs: Mapping[Tuple[int, int, int], int]) -> Dict[Tuple[int, int, int], Fraction]:
    out = {}
    for (i, j, k), c in pairs.items():
        out[(i, j, k)] = Fraction(c)
        out[(j, i, k)] = -Fraction(c)
    return out


def abelian(d: int = 2) -> LieAlgebraData:
    return LieAlgebraData("abelian", d, {})


def heisenberg() -> LieAlgebraData:
    # e, f, z with [e, f] = z
    return LieAlgebraData("heisenberg", 3, _antisym({(0, 1, 2): 1}), ("e", "f", "z"))


def aff1() -> LieAlgebraData:
    # a, b with [a, b] = b; tr ad(a) = 1, not unimodular
    return LieAlgebraData("aff1", 2, _antisym({(0, 1, 1): 1}), ("a", "b"))


def sl2() -> LieAlgebraData:
    # h, e, f with [h, e] = 2e, [h, f] = -2f, [e, f] = h
    return LieAlgebraData("sl2", 3, _antisym({(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1}), ("h", "e", "f"))


def so3() -> LieAlgebraData:
    return LieAlgebraData("so3", 3, _antisym({(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}), ("l1", "l2", "l3"))


BUNDLED: Dict[str, Callable[[], LieAlgebraData]] = {
    "abelian": abelian,
    "heisenberg": heisenberg,
    "aff1": aff1,
    "sl2": sl2,
    "so3": so3,
}


def from_matrices(name: str, mats: Sequence[Sequence[Sequence[int | Fraction]]], basis_names: Sequence[str] = ()) -> LieAlgebraData:
    """Structure constants of the span of linearly independent square matrices, closed under commutators.

    Coordinates of each commutator are found by exact elimination, so the
    result is rational and passes the same Jacobi check as any other input.
    """
    flat = [[Fraction(v) for row in m for v in row] for m in mats]
    d, size = len(flat), len(flat[0])
    rows = [list(col) for col in zip(*flat)]  # size x d: basis matrices as columns

    def solve(target: List[Fraction]) -> List[Fraction]:
        aug = [rows[r][:] + [target[r]] for r in range(size)]
        r = 0
        for c in range(d):
            p = next((i for i in range(r, size) if aug[i][c] != 0), None)
            if p is None:
                raise ValueError(f"{name}: matrices are linearly dependent")
            aug[r], aug[p] = aug[p], aug[r]
            lead = aug[r][c]
            aug[r] = [v / lead for v in aug[r]]
            for i in range(size):
                if i != r and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            r += 1
        if any(aug[i][d] != 0 for i in range(r, size)):
            raise ValueError(f"{name}: span is not closed under commutators")
        return [aug[i][d] for i in range(d)]

    def matmul(a, b):
        n = int(round(size**0.5))
        return [sum(a[i * n + k] * b[k * n + j] for k in range(n)) for i in range(n) for j in range(n)]

    constants: Dict[Tuple[int, int, int], Fraction] = {}
    for i in range(d):
        for j in range(i + 1, d):
            comm = [u - v for u, v in zip(matmul(flat[i], flat[j]), matmul(flat[j], flat[i]))]
            for k, c in enumerate(solve(comm)):
                if c:
                    constants[(i, j, k)] = c
                    constants[(j, i, k)] = -c
    return LieAlgebraData(name, d, constants, tuple(basis_names))


def get_algebra(name: str) -> LieAlgebraData:
    try:
        return BUNDLED[name]()
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}; bundled: {', '.join(BUNDLED)}") from None


# --- matrices -----------------------------------------------------------------


def ad_matrix(alg: LieAlgebraData, x: np.ndarray) -> np.ndarray:
    """``(ad X)_{kj} = sum_i x_i c_ij^k``."""
    return np.einsum("i,ijk->kj", np.asarray(x, dtype=float), alg.C)


def matrix_function(coeff: Callable[[int], float], a: np.ndarray, radius: float = np.inf) -> np.ndarray:
    """``sum_k coeff(k) A^k``, stopping once the tail bound drops below ``TAIL_TOL``.

    Requires ``||A|| <= radius / 2`` (infinity norm) so the terms decay at least
    geometrically with ratio 1/2 and the tail is bounded by twice the last
    retained term.
    """
    norm = float(np.linalg.norm(a, np.inf)) if a.size else 0.0
    if norm > radius / 2:
        raise GuardError(f"||A|| = {norm:.3g} exceeds the guard {radius / 2:.3g}")
    result = np.zeros_like(a, dtype=float)
    power = np.eye(a.shape[0])
    k = 0
    while True:
        c = coeff(k)
        if c:
            result = result + c * power
        # next two coefficients bound the tail once terms decay with ratio <= 1/2
        nxt = max(abs(coeff(k + 1)), abs(coeff(k + 2)) * norm) * norm ** (k + 1)
        if k + 1 >= 2 * norm and 2 * nxt < TAIL_TOL:
            return result
        power = power @ a
        k += 1
        if k > 500:
            raise GuardError("matrix Taylor series did not converge")


def _j_coeff(k: int) -> float:
    # (1 - e^{-z}) / z
    return (-1) ** k / factorial(k + 1)


def _q_coeff(k: int) -> float:
    # sinh(z/2) / (z/2)
    return 0.0 if k % 2 else 1.0 / (4 ** (k // 2) * factorial(k + 1))


_BERN = [float(c) for c in series.bernoulli_generating(120)]


def _b_coeff(k: int) -> float:
    # z / (e^z - 1)
    return _BERN[k] if k < len(_BERN) else 0.0


def j_value(alg: LieAlgebraData, x: np.ndarray) -> float:
    return float(np.linalg.det(matrix_function(_j_coeff, ad_matrix(alg, x))))


def q_value(alg: LieAlgebraData, x: np.ndarray) -> float:
    return float(np.linalg.det(matrix_function(_q_coeff, ad_matrix(alg, x))))


def b_trace(alg: LieAlgebraData, x: np.ndarray, t: float = 1.0) -> float:
    """``tr((B(t ad X) - 1) / t)`` with ``B(z) = z/(e^z - 1)``; equals ``tr(ad X/(e^{t ad X} - 1) - 1/t)``."""
    a = t * ad_matrix(alg, x)
    m = matrix_function(lambda k: _b_coeff(k) if k else 0.0, a, radius=2 * np.pi)
    return float(np.trace(m)) / t


# --- universal series evaluated in g -----------------------------------------


def _as_vector(v) -> np.ndarray:
    v = np.asarray(v)
    return v if np.iscomplexobj(v) else v.astype(float)


def evaluate_lie_series(
    u: LieSeries,
    alg: LieAlgebraData,
    x: np.ndarray,
    y: np.ndarray,
    guard: float | None = None,
    t: float | None = None,
) -> np.ndarray:
    """Sum of the Lyndon bracketings of ``u`` evaluated at ``X = x``, ``Y = y``.

    The guard bounds ``(||x|| + ||y||) * max|c_ij^k|``, the scale governing the
    geometric decay of degree-``n`` brackets. With ``t`` given, the dilation
    ``(1/t) u(tX, tY)`` is evaluated instead (degree ``n`` weighted by ``t^(n-1)``).
    """
    # complex input is kept so complex-step derivatives pass through
    x = _as_vector(x)
    y = _as_vector(y)
    if guard is not None:
        size = (np.linalg.norm(x) + np.linalg.norm(y)) * max(alg.constant_norm, 1.0)
        if size > guard:
            raise GuardError(f"evaluation point too large: {size:.3g} > {guard}")
    values: Dict[str, np.ndarray] = {"X": x, "Y": y}

    def value(w: str) -> np.ndarray:
        if w not in values:
            a, b = standard_factorization(w)
            values[w] = alg.bracket(value(a), value(b))
        return values[w]

    out = np.zeros(alg.dim, dtype=np.result_type(x, y))
    for w, c in sorted(u.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
        weight = float(c) if t is None else float(c) * t ** (len(w) - 1)
        out = out + weight * value(w)
    return out


def tail_estimate(u: LieSeries, alg: LieAlgebraData, x: np.ndarray, y: np.ndarray) -> float:
    """Geometric extrapolation of the norm of the first omitted degree."""
    n = u.max_degree
    norms = [np.linalg.norm(evaluate_lie_series(u.degree_part(k), alg, x, y)) for k in (n - 1, n)]
    if norms[0] == 0:
        return float(norms[1])
    ratio = min(norms[1] / norms[0], 0.5)
    return float(norms[1] * ratio / (1 - ratio))


def evaluate_cyclic(c: CyclicSeries, alg: LieAlgebraData, x: np.ndarray, y: np.ndarray) -> float:
    """``sum coeff * tr(word in ad X, ad Y)``."""
    mats = {"x": ad_matrix(alg, x), "y": ad_matrix(alg, y)}
    total = 0.0
    for w, coeff in c.terms.items():
        m = np.eye(alg.dim)
        for a in w:
            m = m @ mats[a]
        total += float(coeff) * float(np.trace(m))
    return total


def density_value(alg: LieAlgebraData, x: np.ndarray, y: np.ndarray, maxdeg: int = 10) -> float:
    """``D(X, Y) = sqrt(j(X) j(Y) / j(Z(X, Y)))``."""
    z = evaluate_lie_series(bch(maxdeg), alg, x, y, guard=1.0)
    jx, jy, jz = j_value(alg, x), j_value(alg, y), j_value(alg, z)
    if min(jx, jy, jz) <= 0:
        raise GuardError("j must be positive on the sample domain")
    return float(np.sqrt(jx * jy / jz))


# --- reports ------------------------------------------------------------------


@dataclass
class NumericReport:
    check: str
    algebra: str
    seed: int | None
    tolerance: float
    samples: List[Tuple[List[float], List[float]]]
    abs_errors: List[float]
    rel_errors: List[float]

    @property
    def passed(self) -> bool:
        return all(e <= self.tolerance for e in self.rel_errors)

    @property
    def max_rel_error(self) -> float:
        return max(self.rel_errors, default=0.0)

    @property
    def max_abs_error(self) -> float:
        return max(self.abs_errors, default=0.0)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "algebra": self.algebra,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "max_rel_error": self.max_rel_error,
            "max_abs_error": self.max_abs_error,
            "samples": [{"X": list(x), "Y": list(y)} for x, y in self.samples],
            "abs_errors": list(self.abs_errors),
            "rel_errors": list(self.rel_errors),
        }


def sample_points(alg: LieAlgebraData, n: int, seed: int, radius: float = SAMPLE_RADIUS):
    """``n`` pairs ``(X, Y)``, each uniform in the Euclidean ball of the given radius."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        pair = []
        for _ in range(2):
            v = rng.standard_normal(alg.dim)
            v *= radius * rng.uniform() ** (1 / alg.dim) / np.linalg.norm(v)
            pair.append(v)
        out.append((pair[0], pair[1]))
    return out


def _errors(lhs, rhs, floor: float = 0.0) -> Tuple[float, float]:
    lhs, rhs = np.atleast_1d(lhs), np.atleast_1d(rhs)
    err = float(np.linalg.norm(lhs - rhs))
    scale = max(float(np.linalg.norm(lhs)), float(np.linalg.norm(rhs)), floor)
    if err == 0.0:
        return 0.0, 0.0
    return err, err / scale


def _dilated(u: LieSeries, alg, x, y, t: float) -> np.ndarray:
    return evaluate_lie_series(u, alg, x, y, t=t)


def _central(f: Callable[[float], np.ndarray], h: float) -> np.ndarray:
    return (np.asarray(f(h)) - np.asarray(f(-h))) / (2 * h)


def eq10_sides(alg, p: KVPair, z: LieSeries, x, y, t: float = 0.5, h: float = FD_STEP):
    """``d/dt Z_t`` and ``[X, F_t] . d_X Z_t + [Y, G_t] . d_Y Z_t``, all by central differences."""
    lhs = _central(lambda e: _dilated(z, alg, x, y, t + e), h)
    vx = alg.bracket(x, _dilated(p.F, alg, x, y, t))
    vy = alg.bracket(y, _dilated(p.G, alg, x, y, t))
    rhs = _central(lambda e: _dilated(z, alg, x + e * vx, y, t), h) + _central(
        lambda e: _dilated(z, alg, x, y + e * vy, t), h
    )
    return lhs, rhs


def _report(check, alg, seed, tol, samples, pairs, floor: float = 0.0) -> NumericReport:
    errs = [_errors(l, r, floor) for l, r in pairs]
    return NumericReport(
        check,
        alg.name,
        seed,
        tol,
        [(list(map(float, x)), list(map(float, y))) for x, y in samples],
        [e[0] for e in errs],
        [e[1] for e in errs],
    )


def check_eq10(alg, p: KVPair, samples, h: float = FD_STEP, tol: float = 1e-6, seed: int | None = None) -> NumericReport:
    z = bch(p.max_degree)
    pairs = [eq10_sides(alg, p, z, x, y, 0.5, h) for x, y in samples]
    return _report("eq10", alg, seed, tol, samples, pairs)


def log_sqrt_j(alg, x) -> float:
    return 0.5 * float(np.log(j_value(alg, x)))


def eq11_sides(alg, x, t: float = 0.5, h: float = FD_STEP):
    lhs = _central(lambda e: log_sqrt_j(alg, (t + e) * x), h)
    rhs = 0.5 * b_trace(alg, x, t)
    return float(lhs), rhs


def check_eq11(alg, samples, h: float = FD_STEP, tol: float = 1e-6, seed: int | None = None) -> NumericReport:
    pairs = [eq11_sides(alg, v, 0.5, h) for x, y in samples for v in (x, y)]
    return _report("eq11", alg, seed, tol, [s for s in samples for _ in (0, 1)], pairs)


def jacobian(f: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float = FD_STEP) -> np.ndarray:
    d = len(x)
    cols = []
    for k in range(d):
        e = np.zeros(d)
        e[k] = h
        cols.append((np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2 * h))
    return np.array(cols).T


def divergence_numeric(alg, p: KVPair, x, y, t: float = 1.0, h: float = FD_STEP) -> float:
    """``tr(ad X o d_X F_t + ad Y o d_Y G_t)`` with finite-difference Jacobians."""
    jf = jacobian(lambda v: _dilated(p.F, alg, v, y, t), x, h)
    jg = jacobian(lambda v: _dilated(p.G, alg, x, v, t), y, h)
    return float(np.trace(ad_matrix(alg, x) @ jf) + np.trace(ad_matrix(alg, y) @ jg))


def trace_rhs_numeric(alg, x, y, maxdeg: int = 10) -> float:
    """``T(X, Y)`` from matrix functions and the evaluated BCH series."""
    z = evaluate_lie_series(bch(maxdeg), alg, x, y)
    return 0.5 * (b_trace(alg, x) + b_trace(alg, y) - b_trace(alg, z))


def density_t(alg, z: LieSeries, x, y, t: float) -> float:
    """``D_t(X, Y) = D(tX, tY)``."""
    zt = evaluate_lie_series(z, alg, t * x, t * y)
    return float(np.sqrt(j_value(alg, t * x) * j_value(alg, t * y) / j_value(alg, zt)))


def eq19_sides(alg, p: KVPair, z: LieSeries, x, y, t: float = 0.5, h: float = FD_STEP):
    lhs = _central(lambda e: density_t(alg, z, x, y, t + e), h)
    vx = alg.bracket(x, _dilated(p.F, alg, x, y, t))
    vy = alg.bracket(y, _dilated(p.G, alg, x, y, t))
    field_term = _central(lambda e: density_t(alg, z, x + e * vx, y, t), h) + _central(
        lambda e: density_t(alg, z, x, y + e * vy, t), h
    )
    trace_term = divergence_numeric(alg, p, x, y, t, h) * density_t(alg, z, x, y, t)
    return float(lhs), float(field_term + trace_term)


def check_eq19(alg, p: KVPair, samples, h: float = FD_STEP, tol: float = 1e-5, seed: int | None = None) -> NumericReport:
    z = bch(p.max_degree)
    pairs = [eq19_sides(alg, p, z, x, y, 0.5, h) for x, y in samples]
    return _report("eq19", alg, seed, tol, samples, pairs)


def check_density(alg, samples, maxdeg: int = 10, tol: float = 1e-10, seed: int | None = None) -> NumericReport:
    """``D(X, Y)`` against ``D(Y, X)`` (``Z(Y, X)`` is conjugate to ``Z(X, Y)``, ``j`` is Ad-invariant)."""
    pairs = [(density_value(alg, x, y, maxdeg), density_value(alg, y, x, maxdeg)) for x, y in samples]
    return _report("density", alg, seed, tol, samples, pairs)


def check_jq(alg, samples, tol: float = 1e-10, seed: int | None = None) -> NumericReport:
    """``j(X) = exp(-tr(ad X)/2) q(X)``."""
    pairs = []
    for x, y in samples:
        for v in (x, y):
            a = ad_matrix(alg, v)
            pairs.append((j_value(alg, v), float(np.exp(-np.trace(a) / 2)) * q_value(alg, v)))
    return _report("jq", alg, seed, tol, [s for s in samples for _ in (0, 1)], pairs)


def matrix_exp(a: np.ndarray) -> np.ndarray:
    return matrix_function(lambda k: 1.0 / factorial(k), a)


# --- universal trace identity against concrete traces ---------------------------

CS_STEP = 1e-30
# below this size a trace value is compared absolutely (relative error undefined near 0)
BRIDGE_FLOOR = 1e-12


def complex_step_jacobian(f: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float = CS_STEP) -> np.ndarray:
    """``df/dx`` from ``Im f(x + i h e_k) / h``; no subtraction, so exact to roundoff for real-analytic ``f``."""
    x = np.asarray(x, dtype=float)
    cols = []
    for k in range(len(x)):
        e = np.zeros(len(x), dtype=complex)
        e[k] = 1j * h
        cols.append(np.imag(np.asarray(f(x + e))) / h)
    return np.array(cols).T


def divergence_degree_numeric(alg, p: KVPair, x, y, d: int) -> float:
    """Degree-``d`` part of ``tr(ad X o d_X F + ad Y o d_Y G)`` from concrete Jacobians."""
    f_d, g_d = p.F.degree_part(d), p.G.degree_part(d)
    jf = complex_step_jacobian(lambda v: evaluate_lie_series(f_d, alg, v, y), x)
    jg = complex_step_jacobian(lambda v: evaluate_lie_series(g_d, alg, x, v), y)
    return float(np.trace(ad_matrix(alg, x) @ jf) + np.trace(ad_matrix(alg, y) @ jg))


def check_trace_bridge(
    alg,
    p: KVPair,
    samples,
    degrees: Sequence[int],
    tol: float = 1e-6,
    seed: int | None = None,
) -> NumericReport:
    """Concrete divergence against the evaluated universal ``T_d``, one entry per (sample, degree).

    Only meaningful for degrees where the universal residual vanishes; the
    caller chooses them. Entries are ordered sample-major.
    """
    n = max(degrees, default=1)
    t_univ = trace_rhs(n)
    pairs, rows = [], []
    for x, y in samples:
        for d in degrees:
            pairs.append((divergence_degree_numeric(alg, p, x, y, d), evaluate_cyclic(t_univ.degree_part(d), alg, x, y)))
            rows.append((x, y))
    return _report("trace-bridge", alg, seed, tol, rows, pairs, floor=BRIDGE_FLOOR)
