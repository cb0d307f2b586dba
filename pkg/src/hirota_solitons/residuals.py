"""Independent verification oracles for constructed fields.

Everything here works through a black-box field evaluator (x, t) -> q values:
the PDE residual checks the coupled Hirota equations directly with high-order
central finite differences, the zero-curvature residual checks compatibility
of the two linear generators, and the mass oracle integrates the total
intensity by composite Simpson quadrature.  Derivatives are always taken
numerically so that no algebra is shared with the reconstruction engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from . import engine
from .errors import EvaluationFailure, TailNotDecayed
from .spectral import SpectralConfig

FieldFn = Callable[[float, float], np.ndarray]

ALLOWED_ORDERS = (2, 4, 6, 8)

#: Endpoint field magnitude above which the mass quadrature refuses to run.
TAIL_THRESHOLD = 1e-8


def field_evaluator(config: SpectralConfig) -> FieldFn:
    """Adapter: (x, t) -> array of N complex field values."""
    return lambda x, t: engine.evaluate_field(config, x, t).q


@lru_cache(maxsize=None)
def central_weights(deriv: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Central finite-difference offsets and weights (unit spacing).

    Returns integer offsets -m..m and weights w such that
    f^(deriv)(0) ~ sum w[i] f(offset[i]) / h^deriv with the given accuracy
    order.  Third derivatives need one extra point per side.
    """
    if order not in ALLOWED_ORDERS:
        raise ValueError(f"order must be one of {ALLOWED_ORDERS}")
    if deriv not in (1, 2, 3):
        raise ValueError("deriv must be 1, 2 or 3")
    m = order // 2 + (1 if deriv == 3 else 0)
    offsets = np.arange(-m, m + 1)
    npts = offsets.size
    A = np.vander(offsets.astype(float), npts, increasing=True).T
    b = np.zeros(npts)
    b[deriv] = math.factorial(deriv)
    w = np.linalg.solve(A, b)
    return offsets, w


@dataclass(frozen=True)
class StencilSpec:
    """Accuracy order and step sizes of the difference stencils."""

    order: int = 6
    h_x: float = 1e-2
    h_t: float = 1e-2

    def __post_init__(self):
        if self.order not in ALLOWED_ORDERS:
            raise ValueError(f"order must be one of {ALLOWED_ORDERS}")
        if self.h_x <= 0 or self.h_t <= 0:
            raise ValueError("step sizes must be positive")


@dataclass(frozen=True)
class ResidualWindow:
    """Rectangle plus node counts over which a residual is aggregated."""

    x_min: float
    x_max: float
    t_min: float
    t_max: float
    nx: int
    nt: int


@dataclass(frozen=True)
class ResidualReport:
    max_abs: float
    rms: float
    location_of_max: tuple[float, float]
    per_component: np.ndarray  # (N,) max abs residual per field


def potential_matrix(q: np.ndarray) -> np.ndarray:
    """(N+1)x(N+1) potential matrix: first row q_j, first column -q_j*."""
    q = np.asarray(q, dtype=complex)
    n = q.size
    out = np.zeros((n + 1, n + 1), dtype=complex)
    out[0, 1:] = q
    out[1:, 0] = -q.conj()
    return out


def first_flux_matrix(q: np.ndarray, qx: np.ndarray) -> np.ndarray:
    """Hermitian flux matrix entering the time generator at first order.

    Corner: total intensity; first row/column: q_jx and conjugates;
    interior (j, k): -q_k q_j*.
    """
    q = np.asarray(q, dtype=complex)
    qx = np.asarray(qx, dtype=complex)
    n = q.size
    out = np.zeros((n + 1, n + 1), dtype=complex)
    out[0, 0] = np.sum(np.abs(q) ** 2)
    out[0, 1:] = qx
    out[1:, 0] = qx.conj()
    out[1:, 1:] = -np.outer(q.conj(), q)
    return out


def second_flux_matrix(q: np.ndarray, qx: np.ndarray, qxx: np.ndarray) -> np.ndarray:
    """Anti-Hermitian flux matrix entering the time generator at second order.

    Corner: sum(q_rx q_r* - q_r q_rx*); first row: q_jxx + 2 q_j * total
    intensity; first column: the negated conjugates with the same intensity
    factor (the only reading that keeps the matrix anti-Hermitian; covered
    by test); interior (j, k): -(q_kx q_j* - q_k q_jx*).
    """
    q = np.asarray(q, dtype=complex)
    qx = np.asarray(qx, dtype=complex)
    qxx = np.asarray(qxx, dtype=complex)
    intensity = np.sum(np.abs(q) ** 2)
    n = q.size
    out = np.zeros((n + 1, n + 1), dtype=complex)
    out[0, 0] = np.sum(qx * q.conj() - q * qx.conj())
    out[0, 1:] = qxx + 2.0 * q * intensity
    out[1:, 0] = -qxx.conj() - 2.0 * intensity * q.conj()
    # row j, col k (both over field indices): -(q_kx q_j* - q_k q_jx*)
    out[1:, 1:] = -(np.outer(q.conj(), qx) - np.outer(qx.conj(), q))
    return out


def space_generator(q: np.ndarray, lam: complex) -> np.ndarray:
    """Generator of the x-linear system: i*lam*diag(-1,1,..,1) + potential."""
    n = np.asarray(q).size
    return 1j * lam * np.diag(engine.signature(n)) + potential_matrix(q)


def time_generator(q, qx, qxx, lam: complex, epsilon: float) -> np.ndarray:
    """Generator of the t-linear system (cubic in lam)."""
    n = np.asarray(q).size
    diag = (-4j * epsilon * lam**3 + 1j * lam**2) * np.diag(engine.signature(n))
    vtilde = (
        (-4.0 * epsilon * lam**2 + lam) * potential_matrix(q)
        + (-2j * epsilon * lam + 0.5j) * first_flux_matrix(q, qx)
        + epsilon * second_flux_matrix(q, qx, qxx)
    )
    return diag + vtilde


def _eval(field_fn: FieldFn, x: float, t: float) -> np.ndarray:
    try:
        return np.asarray(field_fn(x, t), dtype=complex)
    except Exception as exc:
        raise EvaluationFailure(f"field evaluation failed at ({x}, {t}): {exc}") from exc


def _x_line(field_fn, x, t, h, half_width):
    """Field samples at x + k*h for k = -half_width..half_width."""
    return [_eval(field_fn, x + k * h, t) for k in range(-half_width, half_width + 1)]


def pde_residual(field_fn: FieldFn, epsilon: float, window: ResidualWindow,
                 stencil: StencilSpec = StencilSpec()) -> ResidualReport:
    """Max/rms residual of the coupled Hirota equations over a node grid.

    Residual per component: q_t - i(q_xx/2 + I q) - eps(q_xxx + 3 I q_x + 3 J q)
    with I the total intensity and J = sum q_r* q_rx; all derivatives by
    central differences of the requested order.  Nodes are placed on the
    window shrunk by one stencil half-width so every evaluation stays inside.
    """
    o1, w1 = central_weights(1, stencil.order)
    o2, w2 = central_weights(2, stencil.order)
    o3, w3 = central_weights(3, stencil.order)
    mx = int(o3[-1])
    mt = int(o1[-1])
    xs = np.linspace(window.x_min + mx * stencil.h_x, window.x_max - mx * stencil.h_x, window.nx)
    ts = np.linspace(window.t_min + mt * stencil.h_t, window.t_max - mt * stencil.h_t, window.nt)

    max_abs = 0.0
    loc = (xs[0], ts[0])
    sq_sum = 0.0
    count = 0
    per_component = None
    for t in ts:
        for x in xs:
            line = _x_line(field_fn, x, t, stencil.h_x, mx)
            qc = line[mx]
            qx = sum(w * line[mx + k] for k, w in zip(o1, w1)) / stencil.h_x
            qxx = sum(w * line[mx + k] for k, w in zip(o2, w2)) / stencil.h_x**2
            qxxx = sum(w * line[mx + k] for k, w in zip(o3, w3)) / stencil.h_x**3
            qt = sum(
                w * (_eval(field_fn, x, t + k * stencil.h_t) if k else qc)
                for k, w in zip(o1, w1)
            ) / stencil.h_t
            intensity = np.sum(np.abs(qc) ** 2)
            flux = np.sum(qc.conj() * qx)
            resid = (
                qt
                - 1j * (0.5 * qxx + intensity * qc)
                - epsilon * (qxxx + 3.0 * intensity * qx + 3.0 * flux * qc)
            )
            mag = np.abs(resid)
            if per_component is None:
                per_component = np.zeros(mag.size)
            per_component = np.maximum(per_component, mag)
            node_max = float(mag.max())
            if node_max > max_abs:
                max_abs = node_max
                loc = (float(x), float(t))
            sq_sum += float(np.sum(mag**2))
            count += mag.size
    rms = math.sqrt(sq_sum / count)
    return ResidualReport(
        max_abs=max_abs, rms=rms, location_of_max=loc, per_component=per_component
    )


def zero_curvature_residual(config: SpectralConfig, lam: complex, x: float, t: float,
                            stencil: StencilSpec = StencilSpec()) -> float:
    """Max-norm of U_t - V_x + [U, V] for the constructed field at one point.

    U and V are the space/time generators built from the field and its
    x-derivatives; both outer derivatives and the inner q_x, q_xx needed by V
    come from central differences, so the check is fully numerical.
    """
    field_fn = field_evaluator(config)
    o1, w1 = central_weights(1, stencil.order)
    _, w2 = central_weights(2, stencil.order)
    m1 = int(o1[-1])
    # one line of samples wide enough for derivative-of-derivative in x
    wide = 2 * m1
    line = _x_line(field_fn, x, t, stencil.h_x, wide)

    def q_at(i):
        return line[wide + i]

    def qx_at(i):
        return sum(w * q_at(i + k) for k, w in zip(o1, w1)) / stencil.h_x

    def qxx_at(i):
        # the second-derivative stencil shares the first-derivative offsets
        return sum(w * q_at(i + k) for k, w in zip(o1, w2)) / stencil.h_x**2

    eps = config.epsilon
    V_center = time_generator(q_at(0), qx_at(0), qxx_at(0), lam, eps)
    U_center = space_generator(q_at(0), lam)

    V_x = sum(
        w * time_generator(q_at(k), qx_at(k), qxx_at(k), lam, eps)
        for k, w in zip(o1, w1) if w != 0
    ) / stencil.h_x
    U_t = sum(
        w * space_generator(_eval(field_fn, x, t + k * stencil.h_t), lam)
        for k, w in zip(o1, w1) if w != 0
    ) / stencil.h_t

    resid = U_t - V_x + U_center @ V_center - V_center @ U_center
    return float(np.max(np.abs(resid)))


def conserved_mass(field_fn: FieldFn, t: float, x_range: tuple[float, float],
                   n_quad: int = 4001) -> float:
    """Total intensity integral over x at fixed t (composite Simpson).

    The field must have decayed below TAIL_THRESHOLD at both endpoints,
    otherwise TailNotDecayed is raised.
    """
    if n_quad < 3 or n_quad % 2 == 0:
        raise ValueError("n_quad must be an odd integer >= 3")
    xs = np.linspace(x_range[0], x_range[1], n_quad)
    density = np.empty(n_quad)
    for i, x in enumerate(xs):
        q = _eval(field_fn, x, t)
        density[i] = float(np.sum(np.abs(q) ** 2))
    for edge in (0, -1):
        mag = math.sqrt(density[edge])
        if mag > TAIL_THRESHOLD:
            width = x_range[1] - x_range[0]
            raise TailNotDecayed(mag, 2.0 * width)
    return float(simpson(density, x=xs))
