"""Pin/spin group generation from 2D/3D simple roots and the induced root sets.

Free multiplication of the (unit) simple roots closes to a finite pin group in
Cl(2) or Cl(3); its even part is the spin group (a binary cyclic, dicyclic or
polyhedral group).  Reading each spinor a0 + a1 e2e3 + a2 e3e1 + a3 e1e2 as
the point (a0, a1, a2, a3) turns the spin group into a root system one
dimension up (rank 2 maps to rank 2 via a + b e1e2 -> (a, b)).

Element order is canonicalized by sorting coefficient keys, so indices, Cayley
tables and everything downstream are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .clifford import Multivector, mv_key, mv_sort_key
from .rootsys import (
    KEY_DECIMALS,
    ClosureCapError,
    SimpleRootSet,
    catalog,
    parse_name,
    root_system,
    validate_root_system,
)
from .scalars import QT_ONE

GROUP_CAP = 10_000


@dataclass
class VersorGroup:
    """Finite set of unit versors closed under the geometric product."""

    name: str
    dim: int
    elements: tuple[Multivector, ...]
    parities: tuple[str, ...]
    parity: str                      # "pin" | "spin"
    key_decimals: int = KEY_DECIMALS
    _index: dict = field(default_factory=dict, repr=False)
    _cayley: Optional[list] = field(default=None, repr=False)
    _inverses: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {
                mv_key(e, self.key_decimals): i for i, e in enumerate(self.elements)
            }

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def index_of(self, mv: Multivector) -> int:
        return self._index[mv_key(mv, self.key_decimals)]

    @property
    def identity_index(self) -> int:
        one = Multivector.scalar(
            self.dim, QT_ONE if self.elements[0].backend == "exact" else 1.0
        )
        return self.index_of(one)

    @property
    def cayley(self) -> list:
        """cayley[i][j] = index of elements[i] * elements[j] (built lazily)."""
        if self._cayley is None:
            idx = self._index
            kd = self.key_decimals
            table = []
            for a in self.elements:
                row = []
                for b in self.elements:
                    try:
                        row.append(idx[mv_key(a * b, kd)])
                    except KeyError as exc:
                        raise ClosureCapError(
                            f"{self.name}: product escapes the group"
                        ) from exc
                table.append(row)
            self._cayley = table
        return self._cayley

    @property
    def inverse_indices(self) -> tuple:
        if self._inverses is None:
            self._inverses = tuple(
                self.index_of(e.reverse()) for e in self.elements
            )
        return self._inverses


def _parity_of(mv: Multivector) -> str:
    gs = mv.grades()
    if all(g % 2 == 0 for g in gs):
        return "even"
    if all(g % 2 == 1 for g in gs):
        return "odd"
    raise ValueError("group element without homogeneous parity")


def generate_pin_group(simple: SimpleRootSet, cap: int = GROUP_CAP) -> VersorGroup:
    """Multiplicative closure of the simple root vectors."""
    if simple.rank not in (2, 3):
        raise ValueError("pin groups are generated from rank-2/3 root systems")
    gens = list(simple.roots)
    kd = KEY_DECIMALS
    elements: list[Multivector] = []
    index: dict = {}

    def add(mv: Multivector):
        k = mv_key(mv, kd)
        if k not in index:
            index[k] = len(elements)
            elements.append(mv)

    # seed with +-a: a and -a encode the same reflection and the double cover
    # contains both (for odd n the word closure of I2(n) alone misses -1)
    for g in gens:
        add(g)
        add(-g)
    i = 0
    while i < len(elements):
        if len(elements) > cap:
            raise ClosureCapError(f"pin closure of {simple.name} exceeded {cap}")
        e = elements[i]
        for g in gens:
            add(e * g)
        i += 1
    elements.sort(key=mv_sort_key)
    parities = tuple(_parity_of(e) for e in elements)
    # unit-versor sanity: V reverse(V) = 1
    for e in elements:
        ns = e.norm_sq()
        if e.backend == "exact":
            assert ns == QT_ONE
        else:
            assert abs(float(ns) - 1.0) < 1e-9
    return VersorGroup(
        name=f"Pin({simple.name})", dim=simple.rank, elements=tuple(elements),
        parities=parities, parity="pin", key_decimals=kd,
    )


def even_subgroup(G: VersorGroup) -> VersorGroup:
    """Even-parity elements: the spin (binary polyhedral/cyclic/dicyclic) group."""
    picked = [e for e, p in zip(G.elements, G.parities) if p == "even"]
    return VersorGroup(
        name=G.name.replace("Pin", "Spin", 1), dim=G.dim,
        elements=tuple(picked), parities=("even",) * len(picked),
        parity="spin", key_decimals=G.key_decimals,
    )


@dataclass(frozen=True)
class Induced4DSet:
    """Spinor coordinates of a spin group, read as points one dimension up."""

    vectors: tuple
    dim: int
    source_name: str

    @property
    def count(self) -> int:
        return len(self.vectors)

    def as_root_vectors(self) -> tuple[Multivector, ...]:
        return tuple(Multivector.from_vector(v) for v in self.vectors)


def spinors_to_4d(G: VersorGroup) -> Induced4DSet:
    if G.parity != "spin":
        raise ValueError("induced sets come from spin groups")
    vectors = []
    if G.dim == 3:
        for e in G.elements:
            if any(m.bit_count() % 2 for m, _ in e.nz):
                raise ValueError("odd-grade contamination in spin group")
            c = e.coeffs
            # basis (1, e2e3, e3e1, e1e2); e3e1 = -e1e3 flips the stored sign
            vectors.append((c[0b000], c[0b110], -c[0b101], c[0b011]))
        dim = 4
    elif G.dim == 2:
        for e in G.elements:
            c = e.coeffs
            vectors.append((c[0b00], c[0b11]))
        dim = 2
    else:
        raise ValueError("spinor reinterpretation needs Cl(2) or Cl(3)")
    return Induced4DSet(vectors=tuple(vectors), dim=dim, source_name=G.name)


# -- identification ------------------------------------------------------------


def fingerprint(vectors: Sequence[Multivector], decimals: int = KEY_DECIMALS):
    """Rotation-invariant signature: root count + multiset of pairwise cosines."""
    from .rootsys import dot

    n = len(vectors)
    dots = []
    for i in range(n):
        for j in range(i + 1, n):
            dots.append(round(float(dot(vectors[i], vectors[j])), decimals) + 0.0)
    dots.sort()
    return (n, tuple(dots))


@lru_cache(maxsize=None)
def _reference_fingerprints(dim: int, n_max: int):
    refs = {}
    if dim == 4:
        names = [("A1^4", None), ("A4", None), ("B4", None), ("D4", None),
                 ("F4", None), ("H4", None)]
        # I2(2)xI2(2) IS the A1^4 root system; skip the alias
        names += [("I2xI2", m) for m in range(3, n_max + 1)]
    elif dim == 2:
        names = [("I2", m) for m in range(2, n_max + 1)]
    else:
        raise ValueError("identification supports dim 2 and 4")
    for key, m in names:
        system = root_system(key, m)
        refs[system.name] = fingerprint(system.roots)
    return refs


def assert_fingerprints_distinct(n_max: int = 12):
    for dim in (2, 4):
        refs = _reference_fingerprints(dim, n_max)
        seen = {}
        for name, fp in refs.items():
            if fp in seen:
                raise AssertionError(
                    f"fingerprint collision: {name} vs {seen[fp]}"
                )
            seen[fp] = name


def identify_root_system(S: Induced4DSet, n_max: int = 12) -> str:
    refs = _reference_fingerprints(S.dim, n_max)
    fp = fingerprint(S.as_root_vectors())
    matches = [name for name, ref in refs.items() if ref == fp]
    if not matches:
        raise ValueError(f"no catalog root system matches {S.source_name}")
    if len(matches) > 1:
        raise ValueError(f"ambiguous identification: {matches}")
    return matches[0]


# -- cached pipeline entry points ----------------------------------------------


@lru_cache(maxsize=None)
def pin_group(name: str, n: Optional[int] = None) -> VersorGroup:
    return generate_pin_group(catalog(name, n))


@lru_cache(maxsize=None)
def spin_group(name: str, n: Optional[int] = None) -> VersorGroup:
    return even_subgroup(pin_group(name, n))


@lru_cache(maxsize=None)
def induced_set(name: str, n: Optional[int] = None) -> Induced4DSet:
    return spinors_to_4d(spin_group(name, n))


@lru_cache(maxsize=None)
def induced_name(name: str, n: Optional[int] = None) -> str:
    return identify_root_system(induced_set(name, n))


def binary_group_name(name: str, n: Optional[int] = None) -> str:
    key, n = parse_name(name, n)
    if key == "A3":
        return "2T"
    if key == "B3":
        return "2O"
    if key == "H3":
        return "2I"
    if key == "I2":
        return f"C{2 * n}"
    if key == "A1^3":
        return "Q8"
    if key == "A1xI2":
        return f"Dic{n}" if n != 2 else "Dic2 (= Q8)"
    raise ValueError(f"{key} is not a 2D/3D catalog system")


def validate_induced(S: Induced4DSet):
    return validate_root_system(S.as_root_vectors())
