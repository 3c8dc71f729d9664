"""Root-system catalog, reflection closure, Cartan matrices and validation.

Catalog keys and backends:

    A1^3, A3, B3, H3          rank 3, exact
    A1^4, A4, D4, F4, H4      rank 4, exact
    B4                        rank 4, float (its Coxeter plane needs cos pi/8)
    I2(n)                     rank 2, float
    A1xI2(n)                  rank 3, float
    I2(n)xI2(n)               rank 4, float

Simple roots are stored unit-normalized.  Reflection closure deduplicates by
exact coefficients on the exact backend and by coordinates rounded to
``KEY_DECIMALS`` decimals on the float backend.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .clifford import Multivector, mv_key, reflect
from .scalars import (
    INV_SQRT2,
    QT_HALF,
    QT_ONE,
    QT_ZERO,
    QuadTower,
    Scalar,
    TAU,
)

KEY_DECIMALS = 6
CLOSURE_CAP = 10_000


class UnknownSystemError(ValueError):
    pass


class ClosureCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class SimpleRootSet:
    name: str                      # display name, e.g. "I2(5)"
    key: str                       # catalog key, e.g. "I2"
    rank: int
    roots: tuple[Multivector, ...]
    backend: str
    n: Optional[int] = None
    default_word: tuple[int, ...] = ()   # 1-based; empty means bicoloured order


@dataclass(frozen=True)
class RootSystem:
    name: str
    simple: SimpleRootSet
    roots: tuple[Multivector, ...]
    cartan: tuple[tuple[Scalar, ...], ...]

    @property
    def count(self) -> int:
        return len(self.roots)


def _exact_vec(*coords) -> Multivector:
    out = []
    for c in coords:
        if isinstance(c, QuadTower):
            out.append(c)
        else:
            out.append(QuadTower.from_rational(c))
    return Multivector.from_vector(out)


def _float_vec(*coords) -> Multivector:
    return Multivector.from_vector([float(c) for c in coords])


_H = Fraction(1, 2)
_RH = INV_SQRT2  # 1/sqrt2
_TAU_H = TAU * QT_HALF
_TM1_H = (TAU - 1) * QT_HALF  # (tau-1)/2


def _i2_pair(n: int):
    a = math.pi / n
    return [_float_vec(1.0, 0.0), _float_vec(-math.cos(a), math.sin(a))]


def _build_roots(key: str, n: Optional[int]):
    z = QT_ZERO
    if key == "A1^3":
        return [_exact_vec(1, 0, 0), _exact_vec(0, 1, 0), _exact_vec(0, 0, 1)]
    if key == "A1^4":
        return [
            _exact_vec(1, 0, 0, 0), _exact_vec(0, 1, 0, 0),
            _exact_vec(0, 0, 1, 0), _exact_vec(0, 0, 0, 1),
        ]
    if key == "I2":
        return _i2_pair(n)
    if key == "A1xI2":
        p = _i2_pair(n)
        return [
            _float_vec(*p[0].vector_coords(), 0.0),
            _float_vec(*p[1].vector_coords(), 0.0),
            _float_vec(0.0, 0.0, 1.0),
        ]
    if key == "I2xI2":
        a = math.pi / n
        return [
            _float_vec(1, 0, 0, 0),
            _float_vec(-math.cos(a), math.sin(a), 0, 0),
            _float_vec(0, 0, 1, 0),
            _float_vec(0, 0, -math.cos(a), math.sin(a)),
        ]
    if key == "A3":
        return [
            _exact_vec(-_RH, _RH, z), _exact_vec(z, -_RH, _RH),
            _exact_vec(_RH, _RH, z),
        ]
    if key == "B3":
        return [
            _exact_vec(z, z, QT_ONE), _exact_vec(z, _RH, -_RH),
            _exact_vec(_RH, -_RH, z),
        ]
    if key == "H3":
        return [
            _exact_vec(0, 1, 0),
            _exact_vec(-_TAU_H, -QT_HALF, -_TM1_H),
            _exact_vec(0, 0, 1),
        ]
    if key == "A4":
        s = _RH * QT_HALF  # 1/(2*sqrt2): unit-normalizes the tau-leg root
        return [
            _exact_vec(-_RH, _RH, z, z),
            _exact_vec(z, -_RH, _RH, z),
            _exact_vec(z, z, -_RH, _RH),
            _exact_vec(TAU * s, TAU * s, TAU * s, (TAU - 2) * s),
        ]
    if key == "B4":
        r = 1.0 / math.sqrt(2.0)
        return [
            _float_vec(0, 0, 0, 1), _float_vec(0, 0, r, -r),
            _float_vec(0, r, -r, 0), _float_vec(r, -r, 0, 0),
        ]
    if key == "D4":
        return [
            _exact_vec(1, 0, 0, 0), _exact_vec(0, 1, 0, 0), _exact_vec(0, 0, 1, 0),
            _exact_vec(-_H, -_H, -_H, _H),
        ]
    if key == "F4":
        return [
            _exact_vec(-_H, -_H, -_H, _H),
            _exact_vec(z, z, QT_ONE, z),
            _exact_vec(z, _RH, -_RH, z),
            _exact_vec(_RH, -_RH, z, z),
        ]
    if key == "H4":
        return [
            _exact_vec(_TAU_H, -QT_HALF, z, _TM1_H),
            _exact_vec(0, 1, 0, 0),
            _exact_vec(-_TM1_H, -QT_HALF, -_TAU_H, z),
            _exact_vec(0, 0, 1, 0),
        ]
    raise UnknownSystemError(key)


_CATALOG = {
    # key: (rank, backend, family, default word, known root count fn)
    "A1^3":  (3, "exact", False, (1, 2, 3), lambda n: 6),
    "I2":    (2, "float", True,  (1, 2),    lambda n: 2 * n),
    "A1xI2": (3, "float", True,  (),        lambda n: 2 * n + 2),
    "A3":    (3, "exact", False, (),        lambda n: 12),
    "B3":    (3, "exact", False, (),        lambda n: 18),
    "H3":    (3, "exact", False, (),        lambda n: 30),
    "A1^4":  (4, "exact", False, (1, 2, 3, 4), lambda n: 8),
    "I2xI2": (4, "float", True,  (),        lambda n: 4 * n),
    "A4":    (4, "exact", False, (3, 1, 2, 4), lambda n: 20),
    "B4":    (4, "float", False, (3, 1, 2, 4), lambda n: 32),
    "D4":    (4, "exact", False, (1, 2, 3, 4), lambda n: 24),
    "F4":    (4, "exact", False, (3, 1, 2, 4), lambda n: 48),
    "H4":    (4, "exact", False, (3, 1, 2, 4), lambda n: 120),
}

CATALOG_KEYS = tuple(_CATALOG)

_ALIASES = {
    "A13": "A1^3", "A1^3": "A1^3", "A14": "A1^4", "A1^4": "A1^4",
}


def parse_name(name: str, n: Optional[int] = None) -> tuple[str, Optional[int]]:
    """Normalize user-facing names like 'I2(7)', 'A1xI2(3)', 'I2(3)xI2(3)'."""
    s = name.strip()
    if s in _ALIASES:
        return _ALIASES[s], None
    if s.upper() in ("A3", "B3", "H3", "A4", "B4", "D4", "F4", "H4"):
        return s.upper(), None
    m = re.match(r"^I2\((\d+)\)xI2\((\d+)\)$", s, re.I)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if a != b:
            raise UnknownSystemError(f"mismatched family parameters in {name!r}")
        return "I2xI2", a
    m = re.match(r"^(I2xI2|A1xI2|I2)(?:\((\d+)\))?$", s, re.I)
    if m:
        key = {"i2xi2": "I2xI2", "a1xi2": "A1xI2", "i2": "I2"}[m.group(1).lower()]
        inline = int(m.group(2)) if m.group(2) else None
        if inline is not None and n is not None and inline != n:
            raise UnknownSystemError(f"conflicting n for {name!r}")
        return key, inline if inline is not None else n
    raise UnknownSystemError(f"unknown root system {name!r}")


def catalog_entries() -> list[dict]:
    """Listing metadata for every catalog key (family counts symbolic)."""
    symbolic = {"I2": "2n", "A1xI2": "2n+2", "I2xI2": "4n"}
    rows = []
    for key, (rank, backend, family, _, countf) in _CATALOG.items():
        rows.append({
            "key": key, "rank": rank, "backend": backend, "family": family,
            "count": symbolic[key] if family else str(countf(None)),
        })
    return rows


def display_name(key: str, n: Optional[int]) -> str:
    if key == "I2":
        return f"I2({n})"
    if key == "A1xI2":
        return f"A1xI2({n})"
    if key == "I2xI2":
        return f"I2({n})xI2({n})"
    return key


def expected_root_count(key: str, n: Optional[int] = None) -> int:
    return _CATALOG[key][4](n)


def catalog(name: str, n: Optional[int] = None, backend: Optional[str] = None) -> SimpleRootSet:
    """Return the catalog simple-root set, optionally forced to the float backend."""
    key, n = parse_name(name, n)
    rank, native_backend, family, word, _ = _CATALOG[key]
    if family:
        if n is None:
            raise UnknownSystemError(f"{key} needs a family parameter n >= 2")
        if n < 2:
            raise UnknownSystemError(f"family parameter n={n} must be >= 2")
    else:
        n = None
    roots = _build_roots(key, n)
    use_backend = native_backend
    if backend is not None:
        if backend == "float":
            roots = [r.to_float() for r in roots]
            use_backend = "float"
        elif backend == "exact":
            if native_backend != "exact":
                raise UnknownSystemError(
                    f"{display_name(key, n)} has no exact representation"
                )
        else:
            raise UnknownSystemError(f"unknown backend {backend!r}")
    for r in roots:
        ns = r.norm_sq()
        if use_backend == "exact":
            assert ns == QT_ONE, f"catalog root of {key} not unit"
        else:
            assert abs(float(ns) - 1.0) < 1e-12, f"catalog root of {key} not unit"
    return SimpleRootSet(
        name=display_name(key, n), key=key, rank=rank,
        roots=tuple(roots), backend=use_backend, n=n, default_word=word,
    )


def dot(u: Multivector, v: Multivector) -> Scalar:
    uc, vc = u.vector_coords(), v.vector_coords()
    total = uc[0] * vc[0]
    for a, b in zip(uc[1:], vc[1:]):
        total = total + a * b
    return total


def cartan_matrix(simple: SimpleRootSet) -> tuple[tuple[Scalar, ...], ...]:
    """Entries 2(a_i|a_j)/(a_j|a_j)."""
    rows = []
    for ai in simple.roots:
        row = []
        for aj in simple.roots:
            val = (dot(ai, aj) * 2) / dot(aj, aj)
            row.append(val)
        rows.append(tuple(row))
    return tuple(rows)


def generate_roots(simple: SimpleRootSet, cap: int = CLOSURE_CAP,
                   key_decimals: int = KEY_DECIMALS) -> RootSystem:
    """Reflection closure of the simple roots (fixed point of all s_a)."""
    roots: list[Multivector] = []
    index: dict = {}

    def add(mv: Multivector):
        k = mv_key(mv, key_decimals)
        if k not in index:
            index[k] = len(roots)
            roots.append(mv)

    for r in simple.roots:
        add(r)
    done = 0
    while done < len(roots):
        hi = len(roots)
        if hi > cap:
            raise ClosureCapError(
                f"closure of {simple.name} exceeded {cap} roots"
            )
        for j in range(done, hi):
            for i in range(j + 1):
                add(reflect(roots[i], roots[j]))
                if i != j:
                    add(reflect(roots[j], roots[i]))
        done = hi
    if len(roots) > cap:
        raise ClosureCapError(f"closure of {simple.name} exceeded {cap} roots")
    return RootSystem(
        name=simple.name, simple=simple, roots=tuple(roots),
        cartan=cartan_matrix(simple),
    )


@lru_cache(maxsize=None)
def root_system(name: str, n: Optional[int] = None) -> RootSystem:
    return generate_roots(catalog(name, n))


def rotation_orders(simple: SimpleRootSet, tol: float = 1e-6, cap: int = 1000):
    """Orders of the pairwise rotations s_i s_j.

    The rotation angle is twice the angle phi between the two roots; its order
    is the least k with k*phi a multiple of pi.  A single order is returned at
    rank 2, the sorted triple at rank 3.
    """
    if simple.rank not in (2, 3):
        raise ValueError("rotation orders are defined for rank 2 and 3")
    orders = []
    r = simple.roots
    for i in range(simple.rank):
        for j in range(i + 1, simple.rank):
            c = max(-1.0, min(1.0, float(dot(r[i], r[j]))))
            phi = math.acos(c)
            m = None
            for k in range(1, cap + 1):
                t = k * phi / math.pi
                if abs(t - round(t)) < tol and round(t) >= 1:
                    m = k
                    break
            if m is None:
                raise ValueError(
                    f"pair ({i + 1},{j + 1}) of {simple.name} generates no finite "
                    f"rotation order <= {cap}"
                )
            orders.append(m)
    if simple.rank == 2:
        return orders[0]
    return tuple(sorted(orders))


@dataclass(frozen=True)
class ValidationReport:
    missing_negatives: tuple
    parallel_violations: tuple
    reflection_violations: tuple
    checked: int

    @property
    def ok(self) -> bool:
        return not (
            self.missing_negatives
            or self.parallel_violations
            or self.reflection_violations
        )

    @property
    def violation_count(self) -> int:
        return (
            len(self.missing_negatives)
            + len(self.parallel_violations)
            + len(self.reflection_violations)
        )


def _direction_key(mv: Multivector, decimals: int):
    coords = mv.vector_coords()
    if mv.backend == "exact":
        pivot = next(c for c in coords if not c.is_zero())
        canon = tuple(c / pivot for c in coords)
        return canon
    fc = [float(c) for c in coords]
    pivot = next(c for c in fc if abs(c) > 10.0 ** -decimals)
    return tuple(round(c / pivot, decimals) + 0.0 for c in fc)


def _reflect_general(alpha: Multivector, x: Multivector) -> Multivector:
    # s_a(x) = x - 2 (x|a)/(a|a) a: exact-friendly (no square roots) and valid
    # for mirrors of any length, unlike the unit-normal Clifford form
    coef = (dot(x, alpha) * 2) / dot(alpha, alpha)
    return x - coef * alpha


def validate_root_system(roots: Sequence[Multivector],
                         key_decimals: int = KEY_DECIMALS,
                         max_samples: int = 16) -> ValidationReport:
    """Check the two root-system axioms; violations are data, not errors."""
    roots = list(roots)
    keys = {mv_key(r, key_decimals) for r in roots}
    missing = []
    parallel = []
    by_direction: dict = {}
    for i, r in enumerate(roots):
        by_direction.setdefault(_direction_key(r, key_decimals), []).append(i)
        if mv_key(-r, key_decimals) not in keys:
            missing.append(i)
    for ids in by_direction.values():
        if len(ids) > 2:
            parallel.append(tuple(ids))
        elif len(ids) == 2:
            a, b = roots[ids[0]], roots[ids[1]]
            if mv_key(-a, key_decimals) != mv_key(b, key_decimals):
                parallel.append(tuple(ids))
    refl = []
    for i, alpha in enumerate(roots):
        for j, x in enumerate(roots):
            if mv_key(_reflect_general(alpha, x), key_decimals) not in keys:
                refl.append((i, j))
                if len(refl) >= max_samples:
                    return ValidationReport(
                        tuple(missing), tuple(parallel), tuple(refl), len(roots)
                    )
    return ValidationReport(tuple(missing), tuple(parallel), tuple(refl), len(roots))


def roots_to_json(system: RootSystem) -> dict:
    from .scalars import scalar_to_json

    return {
        "name": system.name,
        "count": system.count,
        "roots": [
            [scalar_to_json(c) for c in r.vector_coords()] for r in system.roots
        ],
    }


def cartan_to_csv(simple: SimpleRootSet) -> str:
    from .scalars import scalar_str

    rows = [",".join(scalar_str(v) for v in row) for row in cartan_matrix(simple)]
    return "\n".join(rows) + "\n"
