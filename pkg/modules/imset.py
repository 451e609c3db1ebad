"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Integer-valued functions on the power set of N: identifiers,
semi-elementary and elementary imsets, and exact decomposition into
elementary imsets.

Membership in the structural cone is identified with combinatorial
membership throughout. Every criterion used by the standard module is a
statement about differences of standard imsets, for which the two coincide.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterator, Optional, Union

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from .errors import (
    GraphParseError,
    GuardExceededError,
    ImsetOverflowError,
    InternalInvariantError,
    InvalidTripletError,
    UniverseMismatchError,
    UnknownVertexError,
)
from .graph_core import Triplet, Universe, VertexSet, bits, elementary_triplets, popcount, submasks

logger = logging.getLogger(__name__)

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1
MAX_DECOMPOSE_VERTICES = 6
MILP_INFEASIBLE = 2


def _checked(value: int) -> int:
    if value < INT64_MIN or value > INT64_MAX:
        raise ImsetOverflowError(f"imset coefficient {value} leaves the signed 64-bit range")
    return value


@dataclass(frozen=True)
class Imset:
    """Sparse imset: sorted (set mask, coefficient) pairs, zeros never stored."""

    universe: Universe
    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, universe: Universe, coefficients: dict) -> "Imset":
        clean = {}
        for key, coef in coefficients.items():
            mask = key.mask if isinstance(key, VertexSet) else int(key)
            if mask & ~universe.full_mask or mask < 0:
                raise UnknownVertexError(f"set {mask:#x} is outside the universe")
            clean[mask] = clean.get(mask, 0) + int(coef)
        return cls(universe, tuple(sorted((m, _checked(c)) for m, c in clean.items() if c)))

    @classmethod
    def zero(cls, universe: Universe) -> "Imset":
        return cls(universe)

    @cached_property
    def coefficients(self) -> dict[int, int]:
        return dict(self.terms)

    def coefficient(self, key: Union[VertexSet, int, str, tuple]) -> int:
        if isinstance(key, VertexSet):
            mask = key.mask
        elif isinstance(key, int):
            mask = key
        else:
            mask = self.universe.mask_of(key)
        return self.coefficients.get(mask, 0)

    def __iter__(self) -> Iterator[tuple[VertexSet, int]]:
        for mask, coef in self.terms:
            yield VertexSet(self.universe, mask), coef

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def frame(self) -> VertexSet:
        """Union of the sets with a nonzero coefficient."""
        mask = 0
        for m, _ in self.terms:
            mask |= m
        return VertexSet(self.universe, mask)

    # arithmetic

    def _combine(self, other: "Imset", sign: int) -> "Imset":
        if not isinstance(other, Imset):
            return NotImplemented
        if other.universe != self.universe:
            raise UniverseMismatchError("imsets over different universes")
        out = dict(self.terms)
        for m, c in other.terms:
            out[m] = out.get(m, 0) + sign * c
        return Imset.from_dict(self.universe, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k: int) -> "Imset":
        return Imset.from_dict(self.universe, {m: c * k for m, c in self.terms})

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return self.scale(k)

    __rmul__ = __mul__

    # screens

    def passes_linear_screens(self) -> bool:
        """sum u(A) = 0 and sum u(A)|A| = 0, necessary for combinatorial imsets."""
        return (
            sum(c for _, c in self.terms) == 0
            and sum(c * popcount(m) for m, c in self.terms) == 0
        )

    # text

    def to_text(self, with_universe: bool = True) -> str:
        lines = [f"universe {self.universe.full()}"] if with_universe else []
        lines += [f"{c} {VertexSet(self.universe, m)}" for m, c in self.terms]
        return "\n".join(lines) + "\n"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask, coef in self.terms:
            name = "δ" + str(VertexSet(self.universe, mask))
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            parts.append(f"{sign} {'' if mag == 1 else mag}{name}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def parse_imset(text: str, universe: Optional[Universe] = None) -> Imset:
    """Read `coef {labels}` lines, optionally preceded by `universe {labels}`."""
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if not (rest.startswith("{") and rest.endswith("}")):
            raise GraphParseError("expected '<coef> {labels}' or 'universe {labels}'", number, raw)
        labels = [t.strip() for t in rest[1:-1].split(",") if t.strip()]
        if head == "universe":
            if universe is not None and entries:
                raise GraphParseError("universe line must come first", number, raw)
            declared = Universe.from_labels(labels)
            if universe is not None and declared != universe:
                raise GraphParseError(f"declared universe {declared.labels} differs from {universe.labels}", number, raw)
            universe = declared
            continue
        try:
            coef = int(head)
        except ValueError:
            raise GraphParseError(f"coefficient {head!r} is not an integer", number, raw) from None
        if len(set(labels)) != len(labels):
            raise GraphParseError("repeated label in set", number, raw)
        entries.append((number, raw, coef, labels))

    if universe is None:
        universe = Universe.from_labels(label for *_, labels in entries for label in labels)
    coefficients: dict[int, int] = {}
    for number, raw, coef, labels in entries:
        try:
            mask = universe.mask_of(labels)
        except UnknownVertexError as e:
            raise GraphParseError(str(e), number, raw) from None
        if mask in coefficients:
            raise GraphParseError("set listed twice", number, raw)
        coefficients[mask] = coef
    return Imset.from_dict(universe, coefficients)


# --- constructors ---

def delta(a: VertexSet) -> Imset:
    return Imset(a.universe, ((a.mask, 1),))


def semi_elementary(t: Triplet) -> Imset:
    """u<A,B|C> = δ_ABC + δ_C - δ_AC - δ_BC."""
    a, b, c = t.a.mask, t.b.mask, t.c.mask
    return Imset.from_dict(t.universe, {a | b | c: 1, c: 1, a | c: -1, b | c: -1})


def elementary_imsets(n: VertexSet) -> list[Imset]:
    if len(n) < 2:
        raise InvalidTripletError("elementary imsets need at least two variables")
    return [semi_elementary(t) for t in elementary_triplets(n)]


def add(u: Imset, v: Imset) -> Imset:
    return u + v


def subtract(u: Imset, v: Imset) -> Imset:
    return u - v


def scale(u: Imset, k: int) -> Imset:
    return u.scale(k)


# --- linear functionals ---

def degree_functional(u: Imset) -> Fraction:
    """½·Σ u(S)|S|²; each elementary imset contributes exactly one."""
    return Fraction(sum(c * popcount(m) ** 2 for m, c in u.terms), 2)


def level_counts(u: Imset) -> dict[int, int]:
    """Number of elementary terms with a conditioning set of each size (combinatorial u)."""
    n = len(u.universe)
    return {
        level: sum(c * max(0, popcount(m) - level - 1) for m, c in u.terms)
        for level in range(max(n - 1, 0))
    }


# --- decomposition ---

@dataclass(frozen=True)
class Decomposition:
    terms: tuple[Triplet, ...]

    @property
    def degree(self) -> int:
        return len(self.terms)

    def total(self, universe: Universe) -> Imset:
        out = Imset.zero(universe)
        for t in self.terms:
            out = out + semi_elementary(t)
        return out

    def __str__(self):
        return " + ".join(f"u<{t}>" for t in self.terms) or "0"


@lru_cache(maxsize=None)
def _tables(n: int):
    """Incidence matrices over subsets of n compressed coordinates."""
    size = 1 << n
    masks = np.arange(size)
    card = np.array([popcount(m) for m in range(size)])
    sup = np.array([[(s & t) == t for s in range(size)] for t in range(size)], dtype=np.int64)
    sub = np.array([[(s & ~t) == 0 for s in range(size)] for t in range(size)], dtype=np.int64)
    levels = np.array([[max(0, card[s] - lvl - 1) for s in range(size)] for lvl in range(max(n - 1, 0))], dtype=np.int64)
    singles = np.array([1 << i for i in range(n)], dtype=np.int64)
    return masks, card, sup, sub, levels, singles


@lru_cache(maxsize=None)
def _generators(n: int):
    """Elementary imsets over n compressed coordinates, one sparse column each."""
    full = (1 << n) - 1
    triples, rows, cols, vals = [], [], [], []
    for a, b in combinations(range(n), 2):
        ab = (1 << a) | (1 << b)
        for c in submasks(full & ~ab):
            j = len(triples)
            triples.append((a, b, c))
            for row, val in ((ab | c, 1), (c, 1), ((1 << a) | c, -1), ((1 << b) | c, -1)):
                rows.append(row)
                cols.append(j)
                vals.append(val)
    matrix = sparse.csr_matrix((np.array(vals, dtype=float), (rows, cols)), shape=(1 << n, len(triples)))
    return tuple(triples), matrix


def _screens(vec: np.ndarray, n: int) -> bool:
    """Necessary conditions for a nonnegative combination of elementary imsets."""
    if not vec.any():
        return True
    _, card, sup, sub, levels, singles = _tables(n)
    up = sup @ vec
    if up[0] != 0 or up[singles].any() or (up < 0).any():
        return False
    if ((sub @ vec) < 0).any():
        return False
    if len(levels) and ((levels @ vec) < 0).any():
        return False
    occupied = card[vec != 0]
    hi, lo = occupied.max(), occupied.min()
    return bool((vec[card == hi] >= 0).all() and (vec[card == lo] >= 0).all())


def _solve(vec: np.ndarray, n: int) -> Optional[list[tuple[int, int, int]]]:
    """Nonnegative integer counts of elementary imsets summing to vec, as an integer program."""
    triples, matrix = _generators(n)
    size = len(triples)
    target = vec.astype(float)
    result = milp(
        c=np.ones(size),
        integrality=np.ones(size),
        bounds=Bounds(0, np.inf),
        constraints=LinearConstraint(matrix, target, target),
    )
    logger.debug("integer program over %d elementary imsets: %s", size, result.message)
    if result.status == MILP_INFEASIBLE:
        return None
    if result.x is None:
        raise InternalInvariantError(f"decomposition program stopped without a solution: {result.message}")
    counts = np.rint(result.x).astype(np.int64)
    if not np.array_equal(np.rint(matrix @ counts).astype(np.int64), vec):
        raise InternalInvariantError("integer solution does not reproduce the imset")
    return [triples[j] for j in np.flatnonzero(counts) for _ in range(int(counts[j]))]


def combinatorial_decompose(u: Imset, max_vertices: int = MAX_DECOMPOSE_VERTICES) -> Optional[Decomposition]:
    """A decomposition of u into elementary imsets, or None if u is not combinatorial.

    The number of terms always equals degree_functional(u), so any
    decomposition found is of minimum size.
    """
    frame = list(bits(u.frame.mask))
    if len(frame) > max_vertices:
        raise GuardExceededError("decomposition frame vertices", max_vertices, len(frame))
    if u.is_zero():
        return Decomposition(())
    if not u.passes_linear_screens():
        return None
    n = len(frame)
    position = {v: i for i, v in enumerate(frame)}

    def compress(mask: int) -> int:
        return sum(1 << position[v] for v in bits(mask))

    def expand(mask: int) -> int:
        return sum(1 << frame[i] for i in bits(mask))

    vec = np.zeros(1 << n, dtype=np.int64)
    for m, c in u.terms:
        vec[compress(m)] = c
    if not _screens(vec, n):
        return None
    found = _solve(vec, n)
    if found is None:
        return None
    universe = u.universe
    triplets = [
        Triplet.from_masks(universe, expand(1 << a), expand(1 << b), expand(c)).canonical()
        for a, b, c in found
    ]
    triplets.sort(key=Triplet.sort_key)
    return Decomposition(tuple(triplets))


def is_combinatorial(u: Imset, max_vertices: int = MAX_DECOMPOSE_VERTICES) -> bool:
    return combinatorial_decompose(u, max_vertices) is not None


def degree(u: Imset, max_vertices: int = MAX_DECOMPOSE_VERTICES) -> Optional[int]:
    """Degree of a combinatorial imset, None otherwise."""
    found = combinatorial_decompose(u, max_vertices)
    return None if found is None else found.degree
