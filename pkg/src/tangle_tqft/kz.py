"""Parallel transport of the Knizhnik-Zamolodchikov connection along braid paths.

The connection on the configuration space of n distinct points in C is

    h * sum_{i<j} Omega_ij * d(z_i - z_j) / (z_i - z_j),

with Omega_ij the two-site operator acting on tensor factors i and j. Paths
are piecewise analytic (each braid letter is one half-turn of two adjacent
points about their midpoint), so positions and velocities are exact and only
the linear ODE is integrated numerically, by fixed-step classical RK4.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = [
    "KZConfig",
    "Segment",
    "ConfigPath",
    "ClearanceError",
    "TransportResult",
    "FlatnessReport",
    "BraidRelationReport",
    "default_omega",
    "flip_matrix",
    "omega_site",
    "flatness_check",
    "braid_path",
    "transport",
    "braid_relation_check",
]


class ClearanceError(ValueError):
    pass


def flip_matrix(d: int) -> np.ndarray:
    p = np.zeros((d * d, d * d), dtype=int)
    for a in range(d):
        for b in range(d):
            p[b * d + a, a * d + b] = 1
    return p


def default_omega(rep_dim: int = 2, exact: bool = True) -> np.ndarray:
    """e(x)f + f(x)e + 1/2 h(x)h for the 2-dimensional representation (= P - I/2).

    For other ``rep_dim`` the flip-minus-half-identity form is used. With
    ``exact`` the entries are Fractions in an object array.
    """
    if rep_dim == 2:
        e = np.array([[0, 1], [0, 0]])
        f = np.array([[0, 0], [1, 0]])
        h = np.array([[1, 0], [0, -1]])
        omega = np.kron(e, f) + np.kron(f, e) + Fraction(1, 2) * np.kron(h, h).astype(object)
    else:
        omega = flip_matrix(rep_dim).astype(object) - Fraction(1, 2) * np.eye(rep_dim * rep_dim, dtype=int).astype(object)
    omega = np.array([[Fraction(x) for x in row] for row in omega], dtype=object)
    return omega if exact else omega.astype(float)


def _is_exact(m: np.ndarray) -> bool:
    return m.dtype == object


@dataclass(frozen=True)
class KZConfig:
    n_strands: int
    coupling: float = 0.1
    rep_dim: int = 2
    omega: np.ndarray | None = None
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        omega = default_omega(self.rep_dim) if self.omega is None else np.asarray(self.omega)
        object.__setattr__(self, "omega", omega)
        d2 = self.rep_dim ** 2
        if omega.shape != (d2, d2):
            raise ValueError(f"omega must be {d2}x{d2}, got {omega.shape}")
        if self.n_strands < 1:
            raise ValueError("need at least one strand")
        if self.strict:
            p = flip_matrix(self.rep_dim)
            conj = p @ omega @ p
            same = np.all(conj == omega) if _is_exact(omega) else np.allclose(conj, omega, atol=1e-12)
            if not same:
                raise ValueError("omega is not symmetric under swapping the tensor factors")

    @property
    def dim(self) -> int:
        return self.rep_dim ** self.n_strands


def omega_site(config: KZConfig, i: int, j: int) -> np.ndarray:
    """Omega acting on tensor factors i < j (1-based) of the n-fold product."""
    n, d = config.n_strands, config.rep_dim
    if not 1 <= i < j <= n:
        raise IndexError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    omega = config.omega
    exact = _is_exact(omega)
    dim = d ** n
    out = np.zeros((dim, dim), dtype=object if exact else complex)
    # act on digits i-1 and j-1 of the left-major multi-index
    for col in range(dim):
        digits = list(np.unravel_index(col, (d,) * n)) if n else []
        a, b = digits[i - 1], digits[j - 1]
        src = a * d + b
        for tgt in range(d * d):
            v = omega[tgt, src]
            if v == 0:
                continue
            new = digits[:]
            new[i - 1], new[j - 1] = divmod(tgt, d)
            row = int(np.ravel_multi_index(new, (d,) * n))
            out[row, col] += v
    return out


def _swap_factors(config: KZConfig, i: int, j: int) -> np.ndarray:
    n, d = config.n_strands, config.rep_dim
    dim = d ** n
    p = np.zeros((dim, dim), dtype=int)
    for col in range(dim):
        digits = list(np.unravel_index(col, (d,) * n))
        digits[i - 1], digits[j - 1] = digits[j - 1], digits[i - 1]
        p[int(np.ravel_multi_index(digits, (d,) * n)), col] = 1
    return p


@dataclass(frozen=True)
class FlatnessReport:
    passed: bool
    exact: bool
    failures: tuple[tuple[str, float], ...]
    checked: int


def _comm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b) - b.dot(a)


def _norm(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.astype(complex)))) if m.size else 0.0


def flatness_check(config: KZConfig, tol: float = 1e-12) -> FlatnessReport:
    """[O_ij, O_ik + O_jk] = 0 for every triple and [O_ij, O_kl] = 0 for disjoint pairs."""
    n = config.n_strands
    exact = _is_exact(config.omega)
    scale = 1
    if exact:
        # clear denominators: commutators of integer matrices are much cheaper
        # than Fraction arithmetic and vanish exactly when the originals do
        scale = math.lcm(*(Fraction(x).denominator for x in config.omega.flat))
        config = KZConfig(n, config.coupling, config.rep_dim,
                          np.array([[int(Fraction(x) * scale) for x in row] for row in config.omega], dtype=object),
                          strict=False)
    sites = {(i, j): omega_site(config, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    failures = []
    checked = 0

    def record(label: str, c: np.ndarray) -> None:
        nonlocal checked
        checked += 1
        bad = any(x != 0 for x in c.flat) if exact else _norm(c) > tol
        if bad:
            failures.append((label, _norm(c) / scale ** 2))

    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        record(f"[O{i}{j}, O{i}{k}+O{j}{k}]", _comm(sites[i, j], sites[i, k] + sites[j, k]))
        record(f"[O{i}{k}, O{i}{j}+O{j}{k}]", _comm(sites[i, k], sites[i, j] + sites[j, k]))
        record(f"[O{j}{k}, O{i}{j}+O{i}{k}]", _comm(sites[j, k], sites[i, j] + sites[i, k]))
    for (i, j), (k, l) in itertools.combinations(sites, 2):
        if len({i, j, k, l}) == 4:
            record(f"[O{i}{j}, O{k}{l}]", _comm(sites[i, j], sites[k, l]))
    return FlatnessReport(not failures, exact, tuple(failures), checked)


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class Segment:
    """Points move for t in [0, 1]; ``arcs`` rotate a pair about its midpoint.

    Each arc is ``(a, b, center, sweep)`` with 0-based coordinates a, b
    rotating by angle ``sweep * t`` about ``center``; all other coordinates
    stay at ``start``.
    """

    start: tuple[complex, ...]
    arcs: tuple[tuple[int, int, complex, float], ...] = ()
    clearance: float = 0.0

    def position(self, t: float) -> np.ndarray:
        z = np.array(self.start, dtype=complex)
        for a, b, c, sweep in self.arcs:
            rot = np.exp(1j * sweep * t)
            z[a] = c + (self.start[a] - c) * rot
            z[b] = c + (self.start[b] - c) * rot
        return z

    def velocity(self, t: float) -> np.ndarray:
        v = np.zeros(len(self.start), dtype=complex)
        for a, b, c, sweep in self.arcs:
            drot = 1j * sweep * np.exp(1j * sweep * t)
            v[a] = (self.start[a] - c) * drot
            v[b] = (self.start[b] - c) * drot
        return v

    def end(self) -> tuple[complex, ...]:
        return tuple(complex(x) for x in np.round(self.position(1.0), 12))

    def reversed(self) -> Segment:
        end = self.end()
        return Segment(end, tuple((a, b, c, -s) for a, b, c, s in self.arcs), self.clearance)


@dataclass(frozen=True)
class ConfigPath:
    n: int
    segments: tuple[Segment, ...]
    base: tuple[complex, ...]

    def end(self) -> tuple[complex, ...]:
        return self.segments[-1].end() if self.segments else self.base

    def __add__(self, other: ConfigPath) -> ConfigPath:
        return ConfigPath(self.n, self.segments + other.segments, self.base)

    def reversed(self) -> ConfigPath:
        return ConfigPath(self.n, tuple(s.reversed() for s in reversed(self.segments)), self.end())


def braid_path(word, n: int, radius_clearance: float = 0.5, base=None) -> ConfigPath:
    """Base points 1..n on the real axis; +i swaps the points now at positions
    i, i+1 by a counterclockwise half-turn about their midpoint, -i clockwise.

    ``radius_clearance`` is the minimum pairwise distance each segment must
    keep; with unit spacing the half-turns keep distance 1.
    """
    z = list(base) if base is not None else [complex(k + 1) for k in range(n)]
    segments = []
    for letter in word:
        i = abs(letter)
        if letter == 0 or i >= n:
            raise ValueError(f"letter {letter} out of range for {n} strands")
        # labels of the points currently at real positions i and i+1
        order = sorted(range(n), key=lambda k: z[k].real)
        a, b = order[i - 1], order[i]
        c = (z[a] + z[b]) / 2
        # the pair keeps its separation and sweeps a disc of half that
        # radius; real-axis neighbours sit at least one spacing outside it
        clearance = min(abs(z[p] - z[q]) for p, q in itertools.combinations(range(n), 2))
        if clearance < radius_clearance:
            raise ClearanceError(f"letter {letter}: clearance {clearance} below {radius_clearance}")
        seg = Segment(tuple(z), ((a, b, c, np.pi if letter > 0 else -np.pi),), radius_clearance)
        segments.append(seg)
        z = list(seg.end())
    return ConfigPath(n, tuple(segments), tuple(complex(k + 1) for k in range(n)) if base is None else tuple(base))


# ---------------------------------------------------------------------------
# transport


@dataclass(frozen=True)
class TransportResult:
    matrix: np.ndarray
    error_estimate: float
    steps: int

    def to_json(self) -> dict:
        m = self.matrix
        return {
            "schema": 1,
            "transport": [[[float(x.real), float(x.imag)] for x in row] for row in m],
            "error_estimate": self.error_estimate,
            "steps": self.steps,
        }


def _numeric_sites(config: KZConfig) -> list[tuple[int, int, np.ndarray]]:
    n = config.n_strands
    return [
        (i - 1, j - 1, omega_site(config, i, j).astype(complex))
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]


def _generator(config: KZConfig, sites, seg: Segment, t: float) -> np.ndarray:
    z, v = seg.position(t), seg.velocity(t)
    dim = config.dim
    out = np.zeros((dim, dim), dtype=complex)
    for a, b, om in sites:
        dz = v[a] - v[b]
        if dz == 0:
            continue
        diff = z[a] - z[b]
        if abs(diff) < seg.clearance * (1 - 1e-9):
            raise ClearanceError(f"points {a + 1} and {b + 1} within {abs(diff):.3g} at t={t}")
        out += (config.coupling * dz / diff) * om
    return out


def _integrate(path: ConfigPath, config: KZConfig, steps: int, sites) -> np.ndarray:
    x = np.eye(config.dim, dtype=complex)
    if config.coupling == 0:
        return x
    dt = 1.0 / steps
    for seg in path.segments:
        if not seg.arcs:
            continue
        for k in range(steps):
            t = k * dt
            a1 = _generator(config, sites, seg, t)
            a2 = _generator(config, sites, seg, t + dt / 2)
            a4 = _generator(config, sites, seg, t + dt)
            k1 = a1 @ x
            k2 = a2 @ (x + dt / 2 * k1)
            k3 = a2 @ (x + dt / 2 * k2)
            k4 = a4 @ (x + dt * k3)
            x = x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise FloatingPointError("transport produced non-finite values")
    return x


def transport(path: ConfigPath, config: KZConfig, steps_per_segment: int = 256) -> TransportResult:
    """Parallel transport X(1) of X' = A(t) X, X(0) = I, plus the step-halving error
    estimate ||X_steps - X_2steps|| (operator 2-norm)."""
    if steps_per_segment < 8:
        raise ValueError("steps_per_segment must be at least 8")
    if path.n != config.n_strands:
        raise ValueError(f"path has {path.n} points, config {config.n_strands}")
    for seg in path.segments:
        if seg.clearance <= 0 and seg.arcs:
            raise ClearanceError("segment declares no positive clearance")
    sites = _numeric_sites(config)
    coarse = _integrate(path, config, steps_per_segment, sites)
    fine = _integrate(path, config, 2 * steps_per_segment, sites)
    err = float(np.linalg.norm(coarse - fine, 2)) if coarse.size else 0.0
    return TransportResult(coarse, err, steps_per_segment)


@dataclass(frozen=True)
class BraidRelationReport:
    passed: bool
    difference: float
    tol: float
    error_estimates: tuple[float, float]


def braid_relation_check(config: KZConfig, tol: float = 1e-6, steps: int = 512) -> BraidRelationReport:
    """Compare transport along s1 s2 s1 and s2 s1 s2 (needs n = 3)."""
    if config.n_strands != 3:
        raise ValueError("the braid relation check runs on 3 strands")
    left = braid_path([1, 2, 1], 3)
    right = braid_path([2, 1, 2], 3)
    if not np.allclose(left.end(), right.end()):
        raise ValueError("paths do not end at the same configuration")
    tl = transport(left, config, steps)
    tr = transport(right, config, steps)
    diff = float(np.linalg.norm(tl.matrix - tr.matrix, 2))
    return BraidRelationReport(diff < tol, diff, tol, (tl.error_estimate, tr.error_estimate))
