"""Graded bases, tensor labels, and sparse graded linear maps.

Everything downstream is built from one representation: a ``GradedMap`` is a
degree-homogeneous linear map between tensor products of labeled graded
bases, stored column-sparse over tensor-basis labels.  The Koszul sign rule
(interchanging symbols of internal degrees ``a`` and ``b`` costs
``(-1)**(a*b)``) enters in exactly two places, ``tensor_of_maps`` and the
permutation operators, and every other sign in the library is derived from
those.

Labels are tuples of basis indices; the empty tuple is the canonical basis
label of the 0-th tensor power (the ground field itself).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Label = tuple  # tuple[int, ...]: per-slot basis indices


@dataclass(frozen=True)
class GradedBasis:
    """A finite ordered basis of a connected, non-negatively graded space.

    Exactly one element has degree 0 and it must sit at index 0; it serves as
    the canonical unit label everywhere (connectedness makes the unit and
    counit canonical, so they are never stored).
    """

    labels: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise ValueError("labels and degrees differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")
        if any(d < 0 for d in self.degrees):
            raise ValueError("negative internal degree")
        zero_positions = [i for i, d in enumerate(self.degrees) if d == 0]
        if zero_positions != [0]:
            raise ValueError("need exactly one degree-0 element, at index 0")

    @cached_property
    def top_degree(self) -> int:
        return max(self.degrees)

    @cached_property
    def _index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def _by_degree(self) -> dict:
        table: dict[int, list[int]] = {}
        for i, d in enumerate(self.degrees):
            table.setdefault(d, []).append(i)
        return {d: tuple(v) for d, v in table.items()}

    def index(self, label: str) -> int:
        return self._index[label]

    def indices_of_degree(self, degree: int) -> tuple[int, ...]:
        return self._by_degree.get(degree, ())

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.labels)))


Slots = tuple  # tuple[GradedBasis, ...]


def label_degree(slots: Slots, label: Label) -> int:
    return sum(slots[k].degrees[i] for k, i in enumerate(label))


def label_names(slots: Slots, label: Label) -> tuple[str, ...]:
    return tuple(slots[k].labels[i] for k, i in enumerate(label))


def tensor_labels(
    slots: Slots,
    *,
    degree: int | None = None,
    max_degree: int | None = None,
    positive: bool = False,
) -> list[Label]:
    """Enumerate tensor-basis labels of the given slot shape, sorted.

    ``positive`` keeps only labels all of whose factors have positive internal
    degree; ``degree``/``max_degree`` filter by total internal degree.  The
    enumeration prunes by degree as it recurses, so sparse slices of large
    powers stay cheap.
    """
    out: list[Label] = []
    n = len(slots)

    def rec(k: int, prefix: tuple, deg: int):
        if k == n:
            if degree is None or deg == degree:
                out.append(prefix)
            return
        basis = slots[k]
        start = 1 if positive else 0
        for i in range(start, len(basis)):
            d = deg + basis.degrees[i]
            if degree is not None and d > degree:
                continue
            if max_degree is not None and d > max_degree:
                continue
            rec(k + 1, prefix + (i,), d)

    rec(0, (), 0)
    return out


def contains_unit(slots: Slots, label: Label) -> bool:
    return any(slots[k].degrees[i] == 0 for k, i in enumerate(label))


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def from_one_line(positions: Sequence[int]) -> tuple[int, ...]:
    """Convert 1-based one-line notation (s(1), s(2), ...) to internal form."""
    return tuple(p - 1 for p in positions)


def transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    """The permutation of n slots swapping positions i and j (1-based)."""
    sigma = list(range(n))
    sigma[i - 1], sigma[j - 1] = j - 1, i - 1
    return tuple(sigma)


def interleave_permutation(n: int) -> tuple[int, ...]:
    """The permutation (1 3 5 ... 2n-1 2 4 ... 2n) on 2n slots, one-line."""
    return from_one_line([2 * i + 1 for i in range(n)] + [2 * i + 2 for i in range(n)])


def inverse_permutation(sigma: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def compose_permutations(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """The composite s∘t as a function on positions (t applied first)."""
    return tuple(sigma[t] for t in tau)


def permute_tuple(sigma: Sequence[int], items: Sequence) -> tuple:
    """Move the item in slot i to slot sigma(i)."""
    out = [None] * len(items)
    for i, s in enumerate(sigma):
        out[s] = items[i]
    return tuple(out)


def koszul_sign(sigma: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of the permutation operator on factors of the given degrees.

    Every pair of slots whose order is inverted contributes (-1)**(d_i*d_j),
    so only pairs of odd-degree factors matter.
    """
    sign = 1
    n = len(sigma)
    for i in range(n):
        if degrees[i] % 2 == 0:
            continue
        for j in range(i + 1, n):
            if degrees[j] % 2 and sigma[i] > sigma[j]:
                sign = -sign
    return sign


def permutation_operator(sigma: Sequence[int], degrees: Sequence[int]):
    """The signed index map of the permutation operator.

    Returns ``(slot_map, sign)`` where ``slot_map[i]`` is the destination
    slot of factor i and ``sign`` is the Koszul sign for factors of the
    given internal degrees; apply with ``permute_tuple``.
    """
    return tuple(sigma), koszul_sign(sigma, degrees)


# ---------------------------------------------------------------------------
# graded maps
# ---------------------------------------------------------------------------

class GradedMap:
    """A sparse degree-homogeneous linear map between tensor products.

    ``cols[src][tgt]`` holds the scalar matrix entry; missing columns are
    zero, so a map is total on all labels of its source shape.  Entries are
    validated against the degree invariant |target| = |source| + degree at
    construction.  Values are immutable by convention: no method mutates an
    existing map.
    """

    __slots__ = ("source", "target", "degree", "field", "cols")

    def __init__(self, source: Slots, target: Slots, degree: int, field, cols=None,
                 _trusted: bool = False):
        self.source = tuple(source)
        self.target = tuple(target)
        self.degree = degree
        self.field = field
        clean: dict = {}
        if cols:
            for src, col in cols.items():
                kept = {tgt: v for tgt, v in col.items() if v}
                if kept:
                    clean[src] = kept
        self.cols = clean
        if not _trusted:
            self._validate()

    def _validate(self):
        m, n = len(self.source), len(self.target)
        for src, col in self.cols.items():
            if len(src) != m:
                raise ValueError(f"source label {src} has wrong arity")
            sdeg = label_degree(self.source, src)
            for tgt in col:
                if len(tgt) != n:
                    raise ValueError(f"target label {tgt} has wrong arity")
                if label_degree(self.target, tgt) != sdeg + self.degree:
                    raise ValueError(
                        f"entry ({tgt}, {src}) violates degree {self.degree}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, source: Slots, target: Slots, degree: int, field) -> "GradedMap":
        return cls(source, target, degree, field, {}, _trusted=True)

    @classmethod
    def identity(cls, slots: Slots, field) -> "GradedMap":
        one = field.one
        cols = {lab: {lab: one} for lab in tensor_labels(slots)}
        return cls(slots, slots, 0, field, cols, _trusted=True)

    @classmethod
    def from_entries(cls, source: Slots, target: Slots, degree: int, field,
                     entries: Iterable) -> "GradedMap":
        """Build from an iterable of (target_label, source_label, value)."""
        cols: dict = {}
        for tgt, src, val in entries:
            col = cols.setdefault(tuple(src), {})
            key = tuple(tgt)
            new = col.get(key, field.zero) + val
            if new:
                col[key] = new
            elif key in col:
                del col[key]
        return cls(source, target, degree, field, cols)

    # -- basic queries ------------------------------------------------------

    def column(self, src: Label) -> dict:
        return self.cols.get(src, {})

    def apply_label(self, src: Label) -> dict:
        return dict(self.cols.get(src, {}))

    def apply_vector(self, vec: dict) -> dict:
        out: dict = {}
        for src, c in vec.items():
            for tgt, v in self.cols.get(src, {}).items():
                new = out.get(tgt, self.field.zero) + c * v
                if new:
                    out[tgt] = new
                elif tgt in out:
                    del out[tgt]
        return out

    def is_zero(self) -> bool:
        return not self.cols

    def entries_sorted(self) -> list:
        out = []
        for src in sorted(self.cols):
            col = self.cols[src]
            for tgt in sorted(col):
                out.append((tgt, src, col[tgt]))
        return out

    def first_nonzero(self):
        for src in sorted(self.cols):
            col = self.cols[src]
            for tgt in sorted(col):
                return (tgt, src, col[tgt])
        return None

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and self.cols == other.cols
        )

    def __hash__(self):
        raise TypeError("GradedMap is not hashable")

    def __repr__(self):
        return (f"GradedMap(degree={self.degree}, "
                f"{len(self.source)}->{len(self.target)} slots, "
                f"{sum(len(c) for c in self.cols.values())} entries)")

    # -- linear structure ---------------------------------------------------

    def _assert_same_shape(self, other: "GradedMap"):
        if (self.source, self.target, self.degree) != (
                other.source, other.target, other.degree):
            raise ValueError("shape or degree mismatch")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._assert_same_shape(other)
        cols = {src: dict(col) for src, col in self.cols.items()}
        for src, col in other.cols.items():
            mine = cols.setdefault(src, {})
            for tgt, v in col.items():
                new = mine.get(tgt, self.field.zero) + v
                if new:
                    mine[tgt] = new
                elif tgt in mine:
                    del mine[tgt]
        return GradedMap(self.source, self.target, self.degree, self.field,
                         cols, _trusted=True)

    def __neg__(self) -> "GradedMap":
        return self.scale(-self.field.one)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def scale(self, c) -> "GradedMap":
        if not c:
            return GradedMap.zero(self.source, self.target, self.degree, self.field)
        cols = {src: {tgt: c * v for tgt, v in col.items()}
                for src, col in self.cols.items()}
        return GradedMap(self.source, self.target, self.degree, self.field,
                         cols, _trusted=True)

    # -- composition and tensor ---------------------------------------------

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self∘other; source of self must equal target of other."""
        if self.source != other.target:
            raise ValueError("composition shape mismatch")
        field = self.field
        cols: dict = {}
        for src, col in other.cols.items():
            out: dict = {}
            for mid, c in col.items():
                for tgt, v in self.cols.get(mid, {}).items():
                    new = out.get(tgt, field.zero) + c * v
                    if new:
                        out[tgt] = new
                    elif tgt in out:
                        del out[tgt]
            if out:
                cols[src] = out
        return GradedMap(other.source, self.target, self.degree + other.degree,
                         field, cols, _trusted=True)

    def restrict(self, col_keep=None, row_keep=None) -> "GradedMap":
        """Zero out columns / rows whose labels fail the given predicates."""
        cols: dict = {}
        for src, col in self.cols.items():
            if col_keep is not None and not col_keep(src):
                continue
            kept = {tgt: v for tgt, v in col.items()
                    if row_keep is None or row_keep(tgt)}
            if kept:
                cols[src] = kept
        return GradedMap(self.source, self.target, self.degree, self.field,
                         cols, _trusted=True)


def tensor_of_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    """The tensor product f⊗g with the Koszul sign.

    On a basis tensor x⊗y this is (-1)**(|g|*|x|) f(x)⊗g(y); the sign shows
    up whenever an odd-degree g moves past an odd-degree source factor.
    """
    if f.field != g.field:
        raise ValueError("mixed ground fields")
    field = f.field
    cols: dict = {}
    g_deg_odd = g.degree % 2
    for s1, col1 in f.cols.items():
        sign = -1 if (g_deg_odd and label_degree(f.source, s1) % 2) else 1
        for s2, col2 in g.cols.items():
            out: dict = {}
            for t1, v1 in col1.items():
                for t2, v2 in col2.items():
                    val = v1 * v2
                    if sign < 0:
                        val = -val
                    out[t1 + t2] = val
            cols[s1 + s2] = out
    return GradedMap(f.source + g.source, f.target + g.target,
                     f.degree + g.degree, field, cols, _trusted=True)


def tensor_many(maps: Sequence[GradedMap]) -> GradedMap:
    out = maps[0]
    for m in maps[1:]:
        out = tensor_of_maps(out, m)
    return out


def tensor_power_with_identity(f: GradedMap, left: int, right: int,
                               basis: GradedBasis) -> GradedMap:
    """1^{⊗left} ⊗ f ⊗ 1^{⊗right} over powers of one basis."""
    field = f.field
    parts = []
    if left:
        parts.append(GradedMap.identity((basis,) * left, field))
    parts.append(f)
    if right:
        parts.append(GradedMap.identity((basis,) * right, field))
    return tensor_many(parts)


def permutation_map(sigma: Sequence[int], slots: Slots, field) -> GradedMap:
    """The permutation operator materialized over the full label domain."""
    target = permute_tuple(sigma, slots)
    cols = {}
    one = field.one
    for lab in tensor_labels(slots):
        degs = [slots[k].degrees[i] for k, i in enumerate(lab)]
        sign = koszul_sign(sigma, degs)
        cols[lab] = {permute_tuple(sigma, lab): one if sign > 0 else -one}
    return GradedMap(slots, target, 0, field, cols, _trusted=True)


def block_transposition(sizes: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    """Permutation swapping adjacent blocks i and j (1-based) of given sizes."""
    if j != i + 1:
        raise ValueError("only adjacent blocks are supported")
    n = sum(sizes)
    starts = [sum(sizes[:k]) for k in range(len(sizes))]
    sigma = list(range(n))
    a, b = sizes[i - 1], sizes[j - 1]
    base = starts[i - 1]
    for k in range(a):
        sigma[base + k] = base + b + k
    for k in range(b):
        sigma[base + a + k] = base + k
    return tuple(sigma)
