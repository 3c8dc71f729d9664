"""Coxeter elements, exponents and the Coxeter plane.

Two independent exponent routes are implemented: the spectrum of the Coxeter
element's orthogonal matrix (eigenvalue arguments as multiples of 2*pi/h), and
the Clifford factorization of the Coxeter versor into commuting bivector
exponentials exp(t1*B) exp(t2*I*B) built on the Perron-Frobenius / bicoloured
plane bivector B.

Angle pairs are reported canonically with t1 in (0, pi/2] and t2 in
[0, pi/2], quotienting the three orientations the construction leaves free
(versor sign, plane orientation, pseudoscalar orientation).  The signs are
kept alongside and satisfy
exp(t1*(b_sign*B)) exp(t2*(i_sign*I)(b_sign*B)) = w_sign * W.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .clifford import (Multivector, exp_bivector, grade_project, pseudoscalar,
                       versor_action)
from .induction import induced_name, spin_group
from .rootsys import SimpleRootSet, cartan_matrix, catalog, dot, parse_name
from .scalars import QuadTower

PLANE_TOL = 1e-6
RESIDUAL_TOL = 1e-8
INT_TOL = 1e-6
ORDER_CAP = 1000


class DegeneratePlaneError(ValueError):
    """Coloured vectors are colinear/vanishing (edgeless Coxeter graph)."""


class FactorizationError(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterData:
    simple: SimpleRootSet
    word: tuple[int, ...]          # 1-based order of simple reflections
    versor: Multivector            # product of the simple roots, native backend
    matrix: np.ndarray             # action x -> reverse(W) x W on the basis
    h: int                         # order of the matrix (the Coxeter number)


@dataclass(frozen=True)
class CoxeterPlane:
    bivector: Multivector          # unit bivector, float backend
    white: tuple[int, ...]
    black: tuple[int, ...]
    pf: tuple[float, ...]
    weights: tuple[Multivector, ...]


@dataclass(frozen=True)
class Factorization:
    h: int
    theta1: float
    theta2: Optional[float]        # None for rank-2 versors
    w_sign: int
    b_sign: int
    i_sign: int
    exponents: tuple[int, ...]
    residual: float


@dataclass(frozen=True)
class SpringerReport:
    name: str
    group_order: int
    induced: str
    exponents: tuple[int, ...]
    sum_ok: bool
    degrees: tuple[int, ...]
    degrees_ok: bool
    family_ok: bool
    formula: str

    @property
    def ok(self) -> bool:
        return self.sum_ok and self.degrees_ok and self.family_ok


# -- Coxeter element ------------------------------------------------------------


def bicolor(simple: SimpleRootSet) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Proper 2-colouring of the Coxeter graph (edges where roots are non-orthogonal)."""
    k = simple.rank
    adj = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            d = dot(simple.roots[i], simple.roots[j])
            nonzero = (not d.is_zero()) if isinstance(d, QuadTower) else abs(d) > 1e-9
            if nonzero:
                adj[i].append(j)
                adj[j].append(i)
    color = [None] * k
    for start in range(k):
        if color[start] is not None:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop(0)
            for v in adj[u]:
                if color[v] is None:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    raise ValueError(f"Coxeter graph of {simple.name} is not bipartite")
    white = tuple(i for i in range(k) if color[i] == 0)
    black = tuple(i for i in range(k) if color[i] == 1)
    return white, black


def default_word(simple: SimpleRootSet) -> tuple[int, ...]:
    """Catalog word where one is pinned, else bicoloured order (whites then blacks)."""
    if simple.default_word:
        return simple.default_word
    white, black = bicolor(simple)
    return tuple(i + 1 for i in white) + tuple(i + 1 for i in black)


def coxeter_versor(simple: SimpleRootSet, word: Optional[Sequence[int]] = None,
                   order_cap: int = ORDER_CAP) -> CoxeterData:
    """Product of all simple roots in the given order, with matrix and order."""
    word = tuple(word) if word is not None else default_word(simple)
    if sorted(word) != list(range(1, simple.rank + 1)):
        raise ValueError(f"word {word} is not a permutation of 1..{simple.rank}")
    W = simple.roots[word[0] - 1]
    for idx in word[1:]:
        W = W * simple.roots[idx - 1]
    Wf = W.to_float()
    k = simple.rank
    M = np.empty((k, k))
    for j in range(k):
        ej = Multivector.basis_vector(k, j, "float")
        M[:, j] = [float(c) for c in versor_action(Wf, ej).vector_coords()]
    if not np.allclose(M.T @ M, np.eye(k), atol=1e-9):
        raise ValueError("Coxeter matrix is not orthogonal")
    P = M.copy()
    h = None
    for step in range(1, order_cap + 1):
        if np.allclose(P, np.eye(k), atol=1e-9):
            h = step
            break
        P = P @ M
    if h is None:
        raise ValueError(f"matrix order exceeds {order_cap}")
    return CoxeterData(simple=simple, word=word, versor=W, matrix=M, h=h)


@lru_cache(maxsize=None)
def coxeter_data(name: str, n: Optional[int] = None,
                 word: Optional[tuple[int, ...]] = None) -> CoxeterData:
    return coxeter_versor(catalog(name, n), word)


def exponents_via_matrix(M: np.ndarray, h: int, tol: float = INT_TOL) -> tuple[int, ...]:
    """Exponents m with eigenvalues exp(2*pi*i*m/h), multiplicity included."""
    vals = np.linalg.eigvals(np.asarray(M, dtype=float))
    out = []
    for lam in vals:
        if abs(abs(lam) - 1.0) > 1e-8:
            raise FactorizationError(f"non-unimodular eigenvalue {lam}")
        m = math.atan2(lam.imag, lam.real) * h / (2.0 * math.pi)
        if m < -tol:
            m += h
        r = round(m)
        if abs(m - r) > tol:
            raise FactorizationError(f"non-integer exponent {m}")
        if r == 0 or r == h:
            raise FactorizationError("unit eigenvalue: not an essential Coxeter element")
        out.append(int(r))
    return tuple(sorted(out))


# -- Perron-Frobenius / weights / plane ------------------------------------------


def pf_eigenvector(cartan, residual: float = 1e-12, max_steps: int = 100_000) -> np.ndarray:
    """Smallest-eigenvalue eigenvector by inverse power iteration, first entry 1.

    All entries are positive for connected Coxeter graphs; for reducible ones
    the iteration converges onto the block with the smallest eigenvalue and the
    remaining entries tend to zero.
    """
    M = np.array([[float(v) for v in row] for row in cartan], dtype=float)
    k = M.shape[0]
    x = np.ones(k) / math.sqrt(k)
    lam = None
    for _ in range(max_steps):
        y = np.linalg.solve(M, x)
        x = y / np.linalg.norm(y)
        lam = float(x @ M @ x)
        if np.linalg.norm(M @ x - lam * x) <= residual:
            break
    else:
        raise RuntimeError("inverse power iteration did not converge")
    if x[int(np.argmax(np.abs(x)))] < 0:
        x = -x
    connected = _is_connected(M)
    if connected and not np.all(x > 0):
        raise RuntimeError("Perron-Frobenius eigenvector not positive")
    if abs(x[0]) < 1e-9:
        raise RuntimeError("cannot normalize: leading entry vanishes")
    return x / x[0]


def _is_connected(M: np.ndarray) -> bool:
    k = M.shape[0]
    seen = {0}
    queue = [0]
    while queue:
        u = queue.pop()
        for v in range(k):
            if v != u and abs(M[u, v]) > 1e-9 and v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == k


def weight_basis(simple: SimpleRootSet) -> tuple[Multivector, ...]:
    """Vectors w_i with (w_i | a_j) = delta_ij, exact where the roots are exact."""
    k = simple.rank
    rows = [list(r.vector_coords()) for r in simple.roots]
    if simple.backend == "exact":
        cols = _invert_exact(rows)
    else:
        inv = np.linalg.inv(np.array(rows, dtype=float))
        cols = [list(inv[:, i]) for i in range(k)]
    return tuple(Multivector.from_vector(c) for c in cols)


def _invert_exact(rows):
    """Gauss-Jordan inverse over the exact field; returns the inverse's columns."""
    k = len(rows)
    aug = [
        [rows[i][j] for j in range(k)]
        + [QuadTower(1 if j == i else 0) for j in range(k)]
        for i in range(k)
    ]
    for col in range(k):
        pivot_row = next(
            (r for r in range(col, k) if not aug[r][col].is_zero()), None
        )
        if pivot_row is None:
            raise ValueError("simple roots are linearly dependent")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv_p = aug[col][col].inverse()
        aug[col] = [v * inv_p for v in aug[col]]
        for r in range(k):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    # inverse matrix element (i, j) = aug[i][k + j]; column j is weight w_j
    return [[aug[i][k + j] for i in range(k)] for j in range(k)]


def coxeter_plane(simple: SimpleRootSet, pf=None, coloring=None, weights=None,
                  word: Optional[Sequence[int]] = None,
                  validate: bool = True) -> CoxeterPlane:
    """Unit bivector of the plane spanned by the two PF-weighted coloured vectors."""
    coloring = coloring if coloring is not None else bicolor(simple)
    white, black = coloring
    pf = pf if pf is not None else pf_eigenvector(cartan_matrix(simple))
    weights = weights if weights is not None else weight_basis(simple)
    wf = [w.to_float() for w in weights]
    k = simple.rank

    def combo(idxs):
        v = Multivector.zero(k, "float")
        for i in idxs:
            v = v + float(pf[i]) * wf[i]
        return v

    v_white, v_black = combo(white), combo(black)
    if v_white.norm() < 1e-9 or v_black.norm() < 1e-9:
        raise DegeneratePlaneError(f"{simple.name}: a coloured vector vanishes")
    B = grade_project(v_white * v_black, 2)
    nb = B.norm()
    if nb < 1e-9:
        raise DegeneratePlaneError(f"{simple.name}: coloured vectors are colinear")
    B = B / nb
    sq = B * B
    if abs(float(sq.scalar_part()) + 1.0) > 1e-9 or any(
        abs(float(c)) > 1e-9 for m, c in sq.nz if m != 0
    ):
        raise DegeneratePlaneError(f"{simple.name}: plane bivector is not simple")
    if validate:
        W = coxeter_versor(simple, word).versor.to_float()
        if not versor_action(W, B).approx_eq(B, PLANE_TOL):
            raise FactorizationError(
                f"{simple.name}: Coxeter element does not stabilize the plane"
            )
    return CoxeterPlane(
        bivector=B, white=white, black=black,
        pf=tuple(float(v) for v in pf), weights=tuple(weights),
    )


@lru_cache(maxsize=None)
def coxeter_plane_for(name: str, n: Optional[int] = None) -> CoxeterPlane:
    return coxeter_plane(catalog(name, n))


def plane_from_matrix(W: Multivector, M: np.ndarray, h: int) -> Multivector:
    """Invariant-plane bivector for the exponent-1 eigenvalue of an arbitrary word.

    Needed for factorizing Coxeter versors whose word is not bicoloured: their
    invariant plane is a conjugate of the PF-built one.
    """
    Wf = W.to_float()
    k = M.shape[0]
    vals, vecs = np.linalg.eig(M)
    target = complex(math.cos(2 * math.pi / h), math.sin(2 * math.pi / h))
    cands = [i for i in range(k) if abs(vals[i] - target) < 1e-6]
    if not cands:
        raise FactorizationError("no eigenvalue exp(2*pi*i/h) found")

    def try_plane(u, w):
        vu = Multivector.from_vector([float(t) for t in u])
        vw = Multivector.from_vector([float(t) for t in w])
        B = grade_project(vu * vw, 2)
        nb = B.norm()
        if nb < 1e-8:
            return None
        B = B / nb
        if not versor_action(Wf, B).approx_eq(B, PLANE_TOL):
            return None
        return B

    for i in cands:
        v = vecs[:, i]
        B = try_plane(v.real, v.imag)
        if B is not None:
            return B
    # real eigenvectors (eigenvalue -1, h = 2): pair two of them
    for i in cands:
        for j in cands:
            if j <= i:
                continue
            B = try_plane(vecs[:, i].real, vecs[:, j].real)
            if B is not None:
                return B
    raise FactorizationError("could not build an invariant plane from the spectrum")


# -- factorization ---------------------------------------------------------------


def _wrap(t: float) -> float:
    t = math.fmod(t, 2.0 * math.pi)
    if t > math.pi:
        t -= 2.0 * math.pi
    elif t <= -math.pi:
        t += 2.0 * math.pi
    return t


_EPS = 1e-12


def canonical_angle_pair(t1: float, t2: float) -> tuple[float, float, int, int, int]:
    """Representative with t1 in (0, pi/2] and t2 in [0, pi/2].

    The equivalences quotiented out are the three sign conventions left free
    by the construction: the overall sign of the versor (a pi-shift in either
    angle), the orientation of the plane bivector (negates both angles), and
    the orientation of the pseudoscalar (negates t2 alone).  Returns
    (t1c, t2c, b_sign, i_sign, w_sign) with
    exp(t1c*(b_sign*B)) exp(t2c*(i_sign*I)(b_sign*B)) = w_sign * W.
    """
    for sg in (1, -1):
        for a in (0, 1):
            u1 = _wrap(sg * t1 + a * math.pi)
            if not (_EPS < u1 <= math.pi / 2 + _EPS):
                continue
            for io in (1, -1):
                for b in (0, 1):
                    u2 = _wrap(io * sg * t2 + b * math.pi)
                    if -_EPS <= u2 <= math.pi / 2 + _EPS:
                        w_sign = 1 if (a + b) % 2 == 0 else -1
                        return u1, max(u2, 0.0), sg, io, w_sign
    raise FactorizationError(f"cannot canonicalize angles ({t1}, {t2})")


def canonical_angle(t: float) -> tuple[float, int, int]:
    for sg in (1, -1):
        for a in (0, 1):
            u = _wrap(sg * t + a * math.pi)
            if _EPS < u <= math.pi / 2 + _EPS:
                return u, sg, (1 if a == 0 else -1)
    raise FactorizationError(f"cannot canonicalize angle {t}")


def _component(W: Multivector, U: Multivector) -> float:
    # <W reverse(U)>_0 for unit blade-combinations: plain coefficient dot
    return sum(float(a) * float(b) for a, b in zip(W.coeffs, U.coeffs))


def factorize(W: Multivector, B_C: Multivector, h: int,
              residual_tol: float = RESIDUAL_TOL,
              int_tol: float = INT_TOL) -> Factorization:
    """Decompose a Coxeter versor into bivector exponentials on B_C and I*B_C."""
    Wf = W.to_float()
    B = B_C.to_float()
    if Wf.dim == 2:
        s = float(Wf.coeffs[0])
        b1 = _component(Wf, B)
        t1 = math.atan2(b1, s)
        rec = exp_bivector(B, t1)
        residual = (Wf - rec).norm()
        if residual > residual_tol:
            raise FactorizationError(f"residual {residual} (not a plane rotation)")
        t1c, b_sign, w_sign = canonical_angle(t1)
        m1 = _as_exponent(t1c * h / math.pi, h, int_tol)
        return Factorization(
            h=h, theta1=t1c, theta2=None, w_sign=w_sign, b_sign=b_sign,
            i_sign=1, exponents=tuple(sorted((m1, h - m1))), residual=residual,
        )
    if Wf.dim != 4:
        raise FactorizationError("factorization applies to Cl(2)/Cl(4) versors")
    I = pseudoscalar(4, "float")
    IB = I * B
    s = float(Wf.coeffs[0])
    p = _component(Wf, I)
    b1 = _component(Wf, B)
    b2 = _component(Wf, IB)
    sum_a = math.atan2(b1 + b2, s + p)
    diff_a = math.atan2(b1 - b2, s - p)
    t1 = 0.5 * (sum_a + diff_a)
    t2 = 0.5 * (sum_a - diff_a)
    rec = exp_bivector(B, t1) * exp_bivector(IB, t2)
    residual = (Wf - rec).norm()
    if residual > residual_tol:
        raise FactorizationError(
            f"residual {residual}: versor is not of two-plane form on this bivector"
        )
    t1c, t2c, b_sign, i_sign, w_sign = canonical_angle_pair(t1, t2)
    m1 = _as_exponent(t1c * h / math.pi, h, int_tol)
    m2 = _as_exponent(t2c * h / math.pi, h, int_tol)
    return Factorization(
        h=h, theta1=t1c, theta2=t2c, w_sign=w_sign, b_sign=b_sign,
        i_sign=i_sign, exponents=tuple(sorted((m1, h - m1, m2, h - m2))),
        residual=residual,
    )


def _as_exponent(t: float, h: int, tol: float) -> int:
    r = round(t)
    if abs(t - r) > tol:
        raise FactorizationError(f"angle*h/pi = {t} is not an integer")
    if not 1 <= r <= h - 1:
        raise FactorizationError(f"exponent {r} outside (0, {h})")
    return int(r)


# -- projection -------------------------------------------------------------------


def plane_basis(B_C: Multivector) -> tuple[Multivector, Multivector]:
    """Orthonormal vector pair spanning the plane of a unit simple bivector."""
    B = B_C.to_float()
    dim = B.dim
    u1 = None
    for i in range(dim):
        e = Multivector.basis_vector(dim, i, "float")
        t = grade_project(e * B, 1)
        proj = -grade_project(t * B, 1)
        if proj.norm() > 1e-6:
            u1 = proj / proj.norm()
            break
    if u1 is None:
        raise ValueError("degenerate plane bivector")
    u2 = grade_project(u1 * B, 1)
    u2 = u2 / u2.norm()
    return u1, u2


def project_to_plane(roots: Sequence[Multivector], B_C: Multivector
                     ) -> list[tuple[float, float]]:
    """Orthogonal projection of each root onto the plane of B_C, as (x, y) pairs."""
    u1, u2 = plane_basis(B_C)
    pts = []
    for r in roots:
        rf = r.to_float()
        pts.append((float(dot(rf, u1)), float(dot(rf, u2))))
    return pts


def projection_radii(points: Sequence[tuple[float, float]], decimals: int = 9) -> dict:
    """Multiset of projected radii, rounded for class counting."""
    radii: dict = {}
    for x, y in points:
        r = round(math.hypot(x, y), decimals)
        radii[r] = radii.get(r, 0) + 1
    return dict(sorted(radii.items()))


# -- arithmetic identities ---------------------------------------------------------


_DEGREES = {
    "A3": (2, 4, 4, 6),
    "B3": (2, 6, 8, 12),
    "H3": (2, 12, 20, 30),
}


def springer_identities(name: str, n: Optional[int] = None) -> SpringerReport:
    """Group order = 2 * (sum of induced 4D exponents), plus degree identities."""
    key, n = parse_name(name, n)
    spin = spin_group(key, n)
    order = spin.order
    ind = induced_name(key, n)
    k4, n4 = parse_name(ind)
    cox = coxeter_data(k4, n4)
    exps = exponents_via_matrix(cox.matrix, cox.h)
    sum_ok = order == 2 * sum(exps)
    degrees = tuple(m + 1 for m in exps)
    expected_deg = _DEGREES.get(key)
    degrees_ok = expected_deg is None or degrees == expected_deg
    if key == "I2":
        family_ok = exps == tuple(sorted((1, n - 1))) and 2 * n == 2 * (1 + (n - 1))
        formula = f"2n = 2(1+(n-1)) at n={n}"
    elif key == "A1xI2":
        family_ok = exps == tuple(sorted((1, 1, n - 1, n - 1)))
        family_ok = family_ok and 4 * n == 2 * (1 + 1 + (n - 1) + (n - 1))
        formula = f"4n = 2(1+1+(n-1)+(n-1)) at n={n}"
    elif key == "A1^3":
        family_ok = exps == (1, 1, 1, 1)
        formula = "8 = 2(1+1+1+1)"
    else:
        family_ok = True
        formula = f"{order} = 2({'+'.join(str(m) for m in exps)})"
    return SpringerReport(
        name=catalog(key, n).name, group_order=order, induced=ind,
        exponents=exps, sum_ok=sum_ok, degrees=degrees, degrees_ok=degrees_ok,
        family_ok=family_ok, formula=formula,
    )
