"""Problem families: spin Hamiltonians, Grover pairs, unfolding pencils.

Every generator returns a HamiltonianPair (H0, H1) meant to be swept as
H(theta) = H0*cos(theta) + H1*sin(theta).  Spin-chain operators use the
0/1-valued single-site convention s = (I - sigma)/2, so the transverse
field and Hamming weight both have spectrum {0, ..., n}.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .linalg import kron_embed

SX = 0.5 * np.array([[1.0, -1.0], [-1.0, 1.0]], dtype=complex)
SY = 0.5 * np.array([[1.0, 1.0j], [-1.0j, 1.0]], dtype=complex)
SZ = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)

MAX_SITES = 12


@dataclass
class HamiltonianPair:
    h0: np.ndarray
    h1: np.ndarray
    family: str = "custom"
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None

    def __post_init__(self):
        self.h0 = np.asarray(self.h0, dtype=complex)
        self.h1 = np.asarray(self.h1, dtype=complex)
        if self.h0.shape != self.h1.shape or self.h0.ndim != 2:
            raise ValueError("H0 and H1 must be square matrices of equal dimension")

    @property
    def dim(self) -> int:
        return self.h0.shape[0]


@dataclass
class BarrierSpec:
    """Rectangular barrier on Hamming weights l..u (inclusive), height h."""

    n: int
    l: int
    u: int
    h: float

    def __post_init__(self):
        if not (0 <= self.l <= self.u <= self.n):
            raise ValueError(f"need 0 <= l <= u <= n, got l={self.l} u={self.u} n={self.n}")
        if self.h < 0:
            raise ValueError("barrier height must be >= 0")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.l + self.u)


def _check_sites(n):
    if not 1 <= n <= MAX_SITES:
        raise ValueError(f"site count must be in 1..{MAX_SITES}, got {n}")


def transverse_field(n: int) -> np.ndarray:
    """Sum of s^x over n sites; spectrum {0..n}, level k has multiplicity C(n,k)."""
    _check_sites(n)
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(n):
        out += kron_embed(SX, i, n)
    return out


def weight_values(n: int) -> np.ndarray:
    """Hamming weight of each computational basis index, as a float vector."""
    return np.array([int(x).bit_count() for x in range(2 ** n)], dtype=float)


def hamming_weight(n: int) -> np.ndarray:
    _check_sites(n)
    return np.diag(weight_values(n)).astype(complex)


def barrier_sign(spec: BarrierSpec) -> np.ndarray:
    """Barrier via the sign-function encoding.

    h/2 * (sign(H_w - (l-1/2)I) - sign(H_w - (u+1/2)I)): the half-integer
    shifts bracket the closed plateau, so the diagonal entry is exactly h
    for l <= w(x) <= u and 0 elsewhere.  H_w is diagonal, so the spectral
    sign function reduces to a sign on the diagonal.
    """
    w = weight_values(spec.n)
    lifted = 0.5 * (np.sign(w - (spec.l - 0.5)) - np.sign(w - (spec.u + 0.5)))
    return np.diag(spec.h * lifted).astype(complex)


def barrier_lagrange(spec: BarrierSpec, nodes=None):
    """Barrier via polynomial interpolation of the plateau profile.

    ``nodes`` selects the interpolation abscissae; the default uses every
    integer weight 0..n, which reproduces barrier_sign exactly on the
    spectrum.  Fewer nodes give a genuine polynomial approximation.

    Returns (matrix, eps_poly) where eps_poly = sup over plateau weights
    of |p(w) - h|.
    """
    if nodes is None:
        xs = np.arange(spec.n + 1, dtype=float)
    elif np.isscalar(nodes):
        if int(nodes) < 1:
            raise ValueError("need at least one interpolation node")
        # Chebyshev points mapped onto [0, n]
        k = np.arange(int(nodes))
        xs = 0.5 * spec.n * (1.0 - np.cos(np.pi * (k + 0.5) / int(nodes)))
    else:
        xs = np.asarray(nodes, dtype=float)
    if len(np.unique(np.round(xs, 12))) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    # rectangle profile with half-integer brackets; on integer abscissae this
    # is exactly the closed plateau indicator
    profile = np.where((xs >= spec.l - 0.5) & (xs <= spec.u + 0.5), spec.h, 0.0)
    poly = np.polynomial.Polynomial.fit(xs, profile, deg=len(xs) - 1)
    w = weight_values(spec.n)
    vals = poly(w)
    plateau = (w >= spec.l) & (w <= spec.u)
    eps_poly = float(np.abs(vals[plateau] - spec.h).max()) if plateau.any() else 0.0
    return np.diag(vals).astype(complex), eps_poly


def y_perturbation(n: int, eps: float, seed: int) -> np.ndarray:
    """eps * sum_i r_i S^y_i with r_i drawn uniform on [-1, 1] from ``seed``."""
    _check_sites(n)
    if eps < 0:
        raise ValueError("perturbation strength must be >= 0")
    rng = np.random.default_rng(seed)
    r = rng.uniform(-1.0, 1.0, size=n)
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(n):
        out += eps * r[i] * kron_embed(SY, i, n)
    return out


def hamming_plus_barrier(spec: BarrierSpec, eps: float = 0.0, seed: int = 0) -> HamiltonianPair:
    """The annealing family: transverse field against weight + barrier (+ y-field)."""
    h0 = transverse_field(spec.n)
    h1 = hamming_weight(spec.n) + barrier_sign(spec) + y_perturbation(spec.n, eps, seed)
    return HamiltonianPair(
        h0, h1, family="hamming-barrier",
        params={"n": spec.n, "l": spec.l, "u": spec.u, "h": spec.h, "eps": eps},
        seed=seed,
    )


def grover_pair(dim: int, a=None, b=None, seed: Optional[int] = None) -> HamiltonianPair:
    """Complement-projector pair H0 = I - |a><a|, H1 = I - |b><b|.

    When the marked states are omitted they are drawn as normalized
    complex Gaussian vectors from ``seed``.
    """
    if dim < 3:
        raise ValueError("need dim >= 3")
    if a is None or b is None:
        rng = np.random.default_rng(seed)
        if a is None:
            a = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        if b is None:
            b = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        a = np.asarray(a, dtype=complex) / np.linalg.norm(a)
        b = np.asarray(b, dtype=complex) / np.linalg.norm(b)
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if abs(np.linalg.norm(a) - 1.0) > 1e-10 or abs(np.linalg.norm(b) - 1.0) > 1e-10:
        raise ValueError("marked states must be unit vectors")
    overlap = abs(np.vdot(a, b))
    if overlap > 1.0 - 1e-12:
        raise ValueError("marked states must not be parallel")
    eye = np.eye(dim, dtype=complex)
    h0 = eye - np.outer(a, a.conj())
    h1 = eye - np.outer(b, b.conj())
    return HamiltonianPair(
        h0, h1, family="grover",
        params={"dim": dim, "overlap": float(overlap)},
        seed=seed,
    )


@dataclass
class UnfoldingSpec:
    """Perturbed-Schur-form family; eps scales the off-diagonal couplings."""

    mu1: complex = 0.0
    mu2: complex = 1.0j
    mu12: complex = 1.0
    s13: tuple = (1.0, 1.0)
    s23: tuple = (1.0, 1.0)
    s33: tuple = ((0.5 + 0.5j, 0.0), (0.0, 0.7 + 0.3j))
    eps: float = 0.0

    def __post_init__(self):
        if self.mu1 == self.mu2:
            raise ValueError("boundary eigenvalues must be distinct")
        if self.eps < 0:
            raise ValueError("unfolding parameter must be >= 0")
        s33 = np.asarray(self.s33, dtype=complex)
        if s33.ndim != 2 or s33.shape[0] != s33.shape[1]:
            raise ValueError("S33 block must be square")
        if np.abs(np.tril(s33, k=-1)).max() > 0:
            raise ValueError("S33 block must be upper triangular")
        if len(self.s13) != s33.shape[0] or len(self.s23) != s33.shape[0]:
            raise ValueError("coupling rows must match the S33 block size")


def unfolding_family(spec: UnfoldingSpec = None) -> HamiltonianPair:
    """Splits the upper-triangular S-tilde into H0 + iH1.

    At eps = 0 the two boundary eigenvalues decouple completely and the
    pencil has exact level crossings; eps > 0 couples them to the rest of
    the matrix and unfolds the crossing.
    """
    if spec is None:
        spec = UnfoldingSpec()
    s33 = np.asarray(spec.s33, dtype=complex)
    k = s33.shape[0]
    dim = 2 + k
    s = np.zeros((dim, dim), dtype=complex)
    s[0, 0] = spec.mu1
    s[1, 1] = spec.mu2
    s[0, 1] = spec.eps * spec.mu12
    s[0, 2:] = spec.eps * np.asarray(spec.s13, dtype=complex)
    s[1, 2:] = spec.eps * np.asarray(spec.s23, dtype=complex)
    s[2:, 2:] = s33
    h0 = 0.5 * (s + s.conj().T)
    h1 = (s - s.conj().T) / 2.0j
    return HamiltonianPair(
        h0, h1, family="unfolding",
        params={"eps": spec.eps,
                "mu1": [complex(spec.mu1).real, complex(spec.mu1).imag],
                "mu2": [complex(spec.mu2).real, complex(spec.mu2).imag]},
    )


def diagonal_pair(a, b) -> HamiltonianPair:
    """Commuting pair; the numerical range is the hull of the points a_k + i b_k."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("need two real vectors of equal length")
    return HamiltonianPair(
        np.diag(a).astype(complex), np.diag(b).astype(complex),
        family="diagonal", params={"points": [[x, y] for x, y in zip(a, b)]},
    )
