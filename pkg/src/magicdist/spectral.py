"""Adjacency spectra: exact characteristic polynomials, Jacobi eigendecomposition,
main angles, cone covers, the Moore-Penrose filter and the matrix forms of the
distance magic condition.

Singularity and integrality are decided on exact integer polynomials; floating point
only enters through :func:`eig_sym` and what is built on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph, complete_minus_matching, cone_cover, GraphError
from .labeling import (
    InapplicableError,
    Labeling,
    verify_distance_magic,
)
from .structural import FilterVerdict

JACOBI_TOL = 1e-12
GROUP_TOL = 1e-7
PINV_RTOL = 1e-9
STOCHASTIC_TOL = 1e-7


# ---------------------------------------------------------------- exact polynomials

class IntPoly:
    """Integer polynomial in ``y`` with coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        c = [int(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c) if c else (0,)

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> IntPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other: IntPoly) -> IntPoly:
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def __pow__(self, e: int) -> IntPoly:
        out = IntPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, y):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def divide_linear(self, a: int) -> tuple[IntPoly, int]:
        """Synthetic division by ``(y - a)``: quotient and remainder."""
        q = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * a + c
            q.append(acc)
        rem = q.pop()
        return IntPoly(list(reversed(q)) or [0]), rem

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            mag = abs(c)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        return s + "".join(f" {sg} {b}" for sg, b in terms[1:])


# ---------------------------------------------------------------- matrices

@dataclass(frozen=True)
class MatrixBundle:
    A: np.ndarray
    D: np.ndarray
    L: np.ndarray
    J: np.ndarray
    ones: np.ndarray


def matrices(g: Graph) -> MatrixBundle:
    A = g.adjacency()
    D = np.diag(A.sum(axis=1))
    L = D - A
    n = g.n
    return MatrixBundle(A, D, L, np.ones((n, n), dtype=np.int64), np.ones(n, dtype=np.int64))


def char_poly(g: Graph) -> IntPoly:
    """det(yI - A) by Faddeev-LeVerrier in exact integer arithmetic."""
    return char_poly_matrix(g.adjacency())


def char_poly_matrix(A) -> IntPoly:
    A = [[int(x) for x in row] for row in np.asarray(A)]
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A M + c_{n-k+1} I
        c_prev = coeffs[n - k + 1]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n) if A[i][t]) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += c_prev
        M = AM
        tr = sum(A[i][t] * M[t][i] for i in range(n) for t in range(n) if A[i][t])
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact for integer matrices"
        coeffs[n - k] = q
    return IntPoly(coeffs)


def is_singular(g: Graph) -> bool:
    return char_poly(g).coeffs[0] == 0


def integer_roots(poly: IntPoly, bound: int | None = None) -> list[int]:
    """Integer roots with multiplicity, found by repeated exact synthetic division."""
    roots = []
    p = poly
    while p.degree > 0 and p.coeffs[0] == 0:
        p = IntPoly(p.coeffs[1:])
        roots.append(0)
    if bound is None:
        bound = abs(p.coeffs[0])
    cand = [d for a in range(1, bound + 1) for d in (a, -a)]
    changed = True
    while changed and p.degree > 0:
        changed = False
        c0 = p.coeffs[0]
        for d in cand:
            if c0 % d:
                continue
            q, rem = p.divide_linear(d)
            if rem == 0:
                p = q
                roots.append(d)
                changed = True
                break
    return sorted(roots)


def is_integral(g: Graph) -> bool:
    """True when every adjacency eigenvalue is an integer."""
    poly = char_poly(g)
    # eigenvalues of a graph are bounded by its maximum degree
    bound = max(g.degrees())
    return len(integer_roots(poly, bound=max(bound, 1))) == poly.degree


def is_perfect_square(x: int) -> bool:
    return x >= 0 and math.isqrt(x) ** 2 == x


# ---------------------------------------------------------------- numerical spectra

@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns, same order
    distinct: tuple[tuple[float, int], ...]  # (mu_i, multiplicity), descending
    residual: float

    def eigenspace(self, i: int) -> np.ndarray:
        """Orthonormal basis (columns) of the i-th distinct eigenvalue's eigenspace."""
        start = sum(m for _, m in self.distinct[:i])
        return self.eigenvectors[:, start:start + self.distinct[i][1]]


def eig_sym(M, tol: float = JACOBI_TOL, group_tol: float = GROUP_TOL) -> SpectralDecomposition:
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix."""
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("eig_sym needs a square matrix")
    if not np.allclose(A, A.T, atol=1e-12, rtol=0):
        raise ValueError("eig_sym needs a symmetric matrix")
    n = A.shape[0]
    V = np.eye(n)
    scale = np.linalg.norm(A)
    target = tol * scale
    for _sweep in range(100):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                v_p = V[:, p].copy()
                V[:, p] = c * v_p - s * V[:, q]
                V[:, q] = s * v_p + c * V[:, q]
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    lam = np.diag(A).copy()
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    V = V[:, order]
    M0 = np.asarray(M, dtype=float)
    residual = float(np.max(np.abs(M0 @ V - V * lam))) if n else 0.0
    groups: list[list[float]] = []
    for x in lam:
        if groups and abs(groups[-1][-1] - x) <= group_tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    distinct = tuple((float(np.mean(grp)), len(grp)) for grp in groups)
    return SpectralDecomposition(lam, V, distinct, residual)


def main_angles(g: Graph) -> list[tuple[float, float]]:
    """``(mu_i, beta_i)`` with beta_i = ||P_i 1|| / sqrt(n), eigenvalues descending."""
    dec = eig_sym(g.adjacency())
    ones = np.ones(g.n)
    out = []
    for i, (mu, _) in enumerate(dec.distinct):
        B = dec.eigenspace(i)
        proj = B @ (B.T @ ones)
        out.append((mu, float(np.linalg.norm(proj) / math.sqrt(g.n))))
    return out


def cone_charpoly(g: Graph) -> np.ndarray:
    """Characteristic polynomial of the cone over ``g`` from the spectrum and main angles of ``g``.

    Returns float coefficients, lowest degree first.
    """
    base = np.array(char_poly(g).coeffs, dtype=float)
    out = np.concatenate([[0.0], base])  # y * P_G(y)
    n = g.n
    for mu, beta in main_angles(g):
        weight = n * beta * beta
        if weight == 0.0:
            continue
        quotient = _divide_linear_float(base, mu)
        out[: len(quotient)] -= weight * quotient
    return out


def _divide_linear_float(coeffs: np.ndarray, a: float) -> np.ndarray:
    q = []
    acc = 0.0
    for c in coeffs[::-1]:
        acc = acc * a + c
        q.append(acc)
    q.pop()  # remainder, zero up to rounding since a is a root
    return np.array(q[::-1])


def knm_cone_charpoly(m: int) -> IntPoly:
    """Closed form for the cone over K_m minus a perfect matching.

    K_m - M has simple main eigenvalue m - 2 with main angle 1, so the cone picks up the
    factor y^2 - (m - 2)y - m in place of y - (m - 2).
    """
    if m % 2 or m < 4:
        raise GraphError(f"m must be even and at least 4, got {m}")
    h = m // 2
    return IntPoly([0, 1]) ** h * IntPoly([2, 1]) ** (h - 1) * IntPoly([-m, 2 - m, 1])


def knm_charpoly(n: int) -> IntPoly:
    """y^{n/2} (y + 2)^{n/2 - 1} (y - n + 2) for K_n minus a perfect matching."""
    if n % 2 or n < 4:
        raise GraphError(f"n must be even and at least 4, got {n}")
    h = n // 2
    return IntPoly([0, 1]) ** h * IntPoly([2, 1]) ** (h - 1) * IntPoly([2 - n, 1])


# ---------------------------------------------------------------- pseudoinverse

def moore_penrose(M, tol: float = PINV_RTOL) -> np.ndarray:
    """Pseudoinverse of a symmetric matrix through its eigendecomposition.

    Eigenvalues with ``|lambda| <= tol * max|lambda|`` are treated as zero.
    """
    dec = eig_sym(M)
    lam = dec.eigenvalues
    if lam.size == 0:
        return np.zeros((0, 0))
    cut = tol * max(float(np.max(np.abs(lam))), 0.0)
    inv = np.array([1.0 / x if abs(x) > cut and x != 0 else 0.0 for x in lam])
    V = dec.eigenvectors
    return (V * inv) @ V.T


@dataclass(frozen=True)
class PinvReport:
    doubly_stochastic: bool
    row_sums: tuple[float, ...]
    col_sums: tuple[float, ...]

    def __bool__(self):
        return self.doubly_stochastic


def pinv_filter(g: Graph, tol: float = STOCHASTIC_TOL) -> PinvReport:
    """Whether A A^+ is doubly stochastic; necessary (not sufficient) for distance magic."""
    A = g.adjacency().astype(float)
    P = A @ moore_penrose(A)
    rows = P.sum(axis=1)
    cols = P.sum(axis=0)
    ok = bool(np.all(np.abs(rows - 1) <= tol) and np.all(np.abs(cols - 1) <= tol))
    return PinvReport(ok, tuple(map(float, rows)), tuple(map(float, cols)))


# ---------------------------------------------------------------- matrix forms of the magic condition

def prefix_matrix(n: int) -> np.ndarray:
    """T with T e_i = e_i + ... + e_n, so T @ 1 = (1, 2, ..., n)."""
    return np.tril(np.ones((n, n), dtype=np.int64))


def label_permutation_matrix(f: Sequence[int]) -> np.ndarray:
    """Permutation matrix P with P @ (1..n) = f."""
    n = len(f)
    P = np.zeros((n, n), dtype=np.int64)
    for i, v in enumerate(f):
        P[i, v - 1] = 1
    return P


def apt_check(g: Graph, f: Labeling | Sequence[int]) -> tuple[bool, int | None]:
    """Whether the all-ones vector is an eigenvector of A P T, and its eigenvalue."""
    f = f if isinstance(f, Labeling) else Labeling(f)
    n = g.n
    A = g.adjacency()
    T = prefix_matrix(n)
    P = label_permutation_matrix(f.values)
    assert np.array_equal(P @ T @ np.ones(n, dtype=np.int64), np.array(f.values))
    image = A @ P @ T @ np.ones(n, dtype=np.int64)
    if np.all(image == image[0]):
        return True, int(image[0])
    return False, None


def l2a2_check(g: Graph, f: Labeling | Sequence[int]) -> bool:
    """Exact test of (L^2 + A^2) x = r^2 x for a connected even-regular graph."""
    f = f if isinstance(f, Labeling) else Labeling(f)
    degs = set(g.degrees())
    if len(degs) != 1 or next(iter(degs)) % 2:
        raise InapplicableError("l2a2_check needs an even-regular graph")
    if not g.is_connected():
        raise InapplicableError("l2a2_check needs a connected graph")
    r = degs.pop()
    mats = matrices(g)
    x = np.array(f.values, dtype=np.int64)
    lhs = (mats.L @ mats.L + mats.A @ mats.A) @ x
    return bool(np.array_equal(lhs, r * r * x))


def even_regular_zero_witness(g: Graph, f: Labeling | Sequence[int]) -> tuple[Fraction, ...]:
    """The null vector x - (n+1)/2 * 1 of an even-regular distance magic graph."""
    f = f if isinstance(f, Labeling) else Labeling(f)
    degs = set(g.degrees())
    if len(degs) != 1 or next(iter(degs)) % 2:
        raise InapplicableError("needs an even-regular graph")
    cert = verify_distance_magic(g, f)
    if not cert:
        raise InapplicableError(f"labelling is not distance magic: {cert}")
    n = g.n
    # doubled so that everything stays integral
    w2 = 2 * np.array(f.values, dtype=np.int64) - (n + 1)
    assert not np.any(g.adjacency() @ w2)
    assert sorted(w2.tolist()) == list(range(1 - n, n, 2))
    return tuple(Fraction(int(x), 2) for x in w2)


def even_regular_zero_filter(g: Graph) -> FilterVerdict:
    """Reject an even-regular graph whose adjacency matrix is nonsingular."""
    degs = set(g.degrees())
    if len(degs) == 1 and next(iter(degs)) % 2 == 0 and not is_singular(g):
        return FilterVerdict("even_regular_zero", "reject", {"regularity": degs.pop(), "det": "nonzero"})
    return FilterVerdict("even_regular_zero", "pass")


def knm_cone(m: int) -> Graph:
    return cone_cover(complete_minus_matching(m))


@dataclass(frozen=True)
class SpectralReport:
    charpoly: list[int]
    singular: bool
    integral: bool
    eigenvalues: list[float]
    main_angles: list[list[float]]
    pinv_doubly_stochastic: bool

    def to_json(self) -> dict:
        return {
            "charpoly": self.charpoly,
            "singular": self.singular,
            "integral": self.integral,
            "eigenvalues": self.eigenvalues,
            "main_angles": self.main_angles,
            "pinv_doubly_stochastic": self.pinv_doubly_stochastic,
        }


def spectral_report(g: Graph, digits: int = 10) -> SpectralReport:
    """Everything above for one graph, with floats rounded for reproducible output."""
    dec = eig_sym(g.adjacency())
    return SpectralReport(
        charpoly=list(char_poly(g).coeffs),
        singular=is_singular(g),
        integral=is_integral(g),
        eigenvalues=[_clean(x, digits) for x in dec.eigenvalues],
        main_angles=[[_clean(mu, digits), _clean(b, digits)] for mu, b in main_angles(g)],
        pinv_doubly_stochastic=bool(pinv_filter(g)),
    )


def _clean(x: float, digits: int) -> float:
    y = round(float(x), digits)
    return 0.0 if y == 0 else y
