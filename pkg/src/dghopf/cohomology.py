"""Windowed assembly of the total complexes and exact cohomology.

A ``ComplexWindow`` fixes the theory, the truncation parameter q (component
degrees p >= 3-q), restriction (drop arity-0 planes), optional external caps
for q = infinity, and an optional internal-degree cap on all tensor labels.
All of these cuts are sub- or quotient-complex directions for the total
differential, so the assembled matrices compose to exactly zero; that square
is asserted before any rank is trusted.  External caps and degree caps do
project away components, and every such projection is counted and reported,
never silent.

Basis order is deterministic: component keys ascend lexicographically, and
inside a component the elementary (target, source) label pairs ascend as
well, so repeated runs produce bit-identical matrices, dimensions and
representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .cochains import Cochain, complex_for
from .graded import tensor_labels
from .linalg import SparseMatrix, from_row_vectors


@dataclass(frozen=True)
class ComplexWindow:
    """The finite slice of a cochain complex on which matrices are assembled."""

    theory: str                 # hochschild | cartier | hopf | harrison
    q: int | None = 3           # None means untruncated (q = infinity)
    degree: int = 2             # total degree of interest
    m_max: int | None = None
    n_max: int | None = None
    restricted: bool = True
    degree_cap: int | None = None

    def __post_init__(self):
        if self.theory not in ("hochschild", "cartier", "hopf", "harrison"):
            raise ValueError(f"unknown theory {self.theory!r}")
        if self.q is not None and self.q < 3:
            raise ValueError("truncation parameter q must be >= 3")
        if self.q is None:
            if self.theory == "hopf" and (self.m_max is None or self.n_max is None):
                raise ValueError("q = infinity needs explicit external caps")
            if self.theory in ("hochschild", "harrison") and self.m_max is None:
                raise ValueError("q = infinity needs an m_max cap")
            if self.theory == "cartier" and self.n_max is None:
                raise ValueError("q = infinity needs an n_max cap")
        if self.degree_cap is not None and (self.q is None or self.q > 3):
            # caps on internal degree are only a quotient complex when the
            # truncation keeps map degrees nonnegative
            raise ValueError("degree_cap requires q = 3")
        if self.theory == "harrison" and not self.restricted:
            raise ValueError("the Harrison window is a restricted complex")

    @property
    def p_min(self) -> int | None:
        return None if self.q is None else 3 - self.q

    def component_keys(self, r: int) -> list:
        """All component degrees contributing to total degree r, sorted."""
        lo = 1 if self.restricted else 0
        keys = []
        if self.theory == "hopf":
            m_hi = self.m_max if self.m_max is not None else r + self.q - 2
            n_hi = self.n_max if self.n_max is not None else r + self.q - 2
            for m in range(lo, m_hi + 1):
                for n in range(lo, n_hi + 1):
                    p = r + 1 - m - n
                    if self.p_min is not None and p < self.p_min:
                        continue
                    keys.append((p, m, n))
        elif self.theory in ("hochschild", "harrison"):
            m_hi = self.m_max if self.m_max is not None else r + self.q - 3
            for m in range(lo, m_hi + 1):
                p = r - m
                if self.p_min is not None and p < self.p_min:
                    continue
                keys.append((p, m))
        else:  # cartier
            n_hi = self.n_max if self.n_max is not None else r + self.q - 3
            for n in range(lo, n_hi + 1):
                p = r - n
                if self.p_min is not None and p < self.p_min:
                    continue
                keys.append((p, n))
        return sorted(keys)

    def contains(self, key) -> bool:
        if self.theory == "hopf":
            p, m, n = key
            lo = 1 if self.restricted else 0
            return (m >= lo and n >= lo
                    and (self.p_min is None or p >= self.p_min)
                    and (self.m_max is None or m <= self.m_max)
                    and (self.n_max is None or n <= self.n_max))
        p, e = key
        lo = 1 if self.restricted else 0
        cap = self.m_max if self.theory in ("hochschild", "harrison") else self.n_max
        return (e >= lo and (self.p_min is None or p >= self.p_min)
                and (cap is None or e <= cap))


@dataclass
class SpaceBlock:
    """Ordered basis of one component space inside a window.

    ``pairs`` lists the admissible elementary (target, source) label pairs;
    for subspace theories (Harrison) ``vectors`` holds the reduced-echelon
    coordinate vectors over those pairs and ``pivots`` their pivot indices.
    """

    key: tuple
    source_slots: tuple
    target_slots: tuple
    pairs: list
    vectors: list | None = None
    pivots: list | None = None

    @property
    def dim(self) -> int:
        return len(self.vectors) if self.vectors is not None else len(self.pairs)


class TotalCochain:
    """A finitely supported family of cochains indexed by component degree."""

    __slots__ = ("theory", "components")

    def __init__(self, theory: str, components: dict | None = None):
        self.theory = theory
        self.components = {k: c for k, c in (components or {}).items()
                           if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "TotalCochain") -> "TotalCochain":
        out = dict(self.components)
        for k, c in other.components.items():
            out[k] = out[k] + c if k in out else c
        return TotalCochain(self.theory, out)

    def __sub__(self, other: "TotalCochain") -> "TotalCochain":
        return self + other.scale(-1)

    def scale(self, c) -> "TotalCochain":
        if isinstance(c, int):
            if not self.components:
                return TotalCochain(self.theory, {})
            field = next(iter(self.components.values())).map.field
            c = field(c) if field.char else c
        return TotalCochain(
            self.theory, {k: v.scale(c) for k, v in self.components.items()})

    def keys(self):
        return sorted(self.components)

    def __eq__(self, other):
        return (isinstance(other, TotalCochain)
                and self.theory == other.theory
                and self.components == other.components)

    def __repr__(self):
        return f"TotalCochain({self.theory}, keys={self.keys()})"


class AssembledComplex:
    """Bases and exact total-differential matrices over a window."""

    def __init__(self, presentation, window: ComplexWindow, degrees,
                 coefficients=None):
        self.window = window
        self.presentation = presentation
        self.ctx = complex_for(presentation, window.theory, coefficients)
        self.field = self.ctx.field
        self.degrees = sorted(degrees)
        if self.degrees != list(range(self.degrees[0], self.degrees[-1] + 1)):
            raise ValueError("degrees must be contiguous")
        self.spaces: dict = {}
        self.offsets: dict = {}
        self.clip_events = 0
        for r in self.degrees:
            self._build_space(r)
        self.matrices: dict = {}
        for r in self.degrees[:-1]:
            self.matrices[r] = self._build_matrix(r)
        self.assert_square_zero()

    # -- space enumeration ---------------------------------------------------

    def _block_pairs(self, key) -> tuple:
        cap = self.window.degree_cap
        theory = self.window.theory
        ctx = self.ctx
        if theory == "hopf":
            p, m, n = key
            src_slots = ctx.source_slots(m)
            tgt_slots = ctx.target_slots(n)
            sources = tensor_labels(src_slots, positive=True, max_degree=cap)
            pairs = []
            for src in sources:
                sdeg = sum(src_slots[k].degrees[i] for k, i in enumerate(src))
                tdeg = sdeg + p
                if tdeg < 0 or (cap is not None and tdeg > cap):
                    continue
                for tgt in tensor_labels(tgt_slots, degree=tdeg, positive=True):
                    pairs.append((tgt, src))
        elif theory in ("hochschild", "harrison"):
            p, m = key
            src_slots = ctx.source_slots(m)
            tgt_slots = ctx.target_slots()
            sources = tensor_labels(src_slots, positive=True, max_degree=cap)
            pairs = []
            for src in sources:
                sdeg = sum(src_slots[k].degrees[i] for k, i in enumerate(src))
                tdeg = sdeg + p
                if tdeg < 0 or (cap is not None and tdeg > cap):
                    continue
                for tgt in tensor_labels(tgt_slots, degree=tdeg):
                    pairs.append((tgt, src))
        else:  # cartier
            p, n = key
            src_slots = ctx.source_slots()
            tgt_slots = ctx.target_slots(n)
            pairs = []
            for src in tensor_labels(src_slots, max_degree=cap):
                sdeg = sum(src_slots[k].degrees[i] for k, i in enumerate(src))
                tdeg = sdeg + p
                if tdeg < 0 or (cap is not None and tdeg > cap):
                    continue
                for tgt in tensor_labels(tgt_slots, degree=tdeg, positive=True):
                    pairs.append((tgt, src))
        return src_slots, tgt_slots, sorted(pairs)

    def _build_space(self, r: int) -> None:
        blocks = []
        offset = 0
        offsets = {}
        for key in self.window.component_keys(r):
            src_slots, tgt_slots, pairs = self._block_pairs(key)
            if self.window.theory == "harrison":
                from .harrison import harrison_block
                block = harrison_block(self.ctx, key, src_slots, tgt_slots, pairs)
            else:
                block = SpaceBlock(key, src_slots, tgt_slots, pairs)
            if block.dim:
                blocks.append(block)
                offsets[key] = offset
                offset += block.dim
        self.spaces[r] = blocks
        self.offsets[r] = offsets

    def dim(self, r: int) -> int:
        return sum(b.dim for b in self.spaces.get(r, ()))

    # -- vectorization --------------------------------------------------------

    def _cap_keep(self):
        cap = self.window.degree_cap
        if cap is None:
            return None

        def keep(slots):
            def pred(lab):
                return sum(slots[k].degrees[i] for k, i in enumerate(lab)) <= cap
            return pred
        return keep

    def project_map(self, key, cochain: Cochain) -> Cochain:
        """Project a component onto the window's label constraints."""
        cap = self.window.degree_cap
        if cap is None:
            return cochain
        gm = cochain.map
        keep = self._cap_keep()
        projected = gm.restrict(col_keep=keep(gm.source), row_keep=keep(gm.target))
        if projected.cols != gm.cols:
            self.clip_events += 1
        return cochain.same_flags(projected)

    def basis_element(self, r: int, index: int) -> TotalCochain:
        for block in self.spaces[r]:
            if index < block.dim:
                return TotalCochain(self.window.theory,
                                    {block.key: self._block_cochain(block, index)})
            index -= block.dim
        raise IndexError(index)

    def _block_cochain(self, block: SpaceBlock, i: int) -> Cochain:
        from .graded import GradedMap
        if block.vectors is None:
            tgt, src = block.pairs[i]
            gm = GradedMap.from_entries(
                block.source_slots, block.target_slots,
                self._key_degree(block.key), self.field,
                [(tgt, src, self.field.one)])
        else:
            entries = [(block.pairs[j][0], block.pairs[j][1], v)
                       for j, v in sorted(block.vectors[i].items())]
            gm = GradedMap.from_entries(
                block.source_slots, block.target_slots,
                self._key_degree(block.key), self.field, entries)
        return self.ctx.make(gm)

    def _key_degree(self, key) -> int:
        return key[0]

    def vectorize(self, total: TotalCochain, r: int) -> dict:
        """Coordinates of a total cochain in the degree-r window basis.

        Raises if the cochain has support outside the window (after cap
        projection, which is applied here as the window's quotient map).
        """
        out: dict = {}
        offsets = self.offsets[r]
        blocks = {b.key: b for b in self.spaces[r]}
        for key, coch in total.components.items():
            coch = self.project_map(key, coch)
            if coch.is_zero():
                continue
            if key not in blocks:
                raise ValueError(f"component {key} outside window at degree {r}")
            block = blocks[key]
            base = offsets[key]
            values = {}
            for src, col in coch.map.cols.items():
                for tgt, v in col.items():
                    values[(tgt, src)] = v
            if block.vectors is None:
                index = {pair: i for i, pair in enumerate(block.pairs)}
                for pair, v in values.items():
                    if pair not in index:
                        raise ValueError(
                            f"entry {pair} of component {key} outside window")
                    out[base + index[pair]] = v
            else:
                coords = [values.get(block.pairs[piv], self.field.zero)
                          for piv in block.pivots]
                # verify membership: the block's vectors must reproduce it
                recon: dict = {}
                for coeff, vec in zip(coords, block.vectors):
                    if not coeff:
                        continue
                    for j, v in vec.items():
                        pair = block.pairs[j]
                        new = recon.get(pair, self.field.zero) + coeff * v
                        if new:
                            recon[pair] = new
                        elif pair in recon:
                            del recon[pair]
                if recon != values:
                    raise ValueError(
                        f"component {key} leaves the subspace basis at degree {r}")
                for i, c in enumerate(coords):
                    if c:
                        out[base + i] = c
        return out

    def devectorize(self, vec: dict, r: int) -> TotalCochain:
        comps: dict = {}
        for block in self.spaces[r]:
            base = self.offsets[r][block.key]
            part = None
            for i in range(block.dim):
                c = vec.get(base + i)
                if not c:
                    continue
                term = self._block_cochain(block, i).scale(c)
                part = term if part is None else part + term
            if part is not None and not part.is_zero():
                comps[block.key] = part
        return TotalCochain(self.window.theory, comps)

    # -- the total differential -----------------------------------------------

    def apply_total(self, total: TotalCochain) -> tuple:
        """(D(total) projected to the window, clipped?).

        Components pushed past the window's external caps are dropped and
        counted; the internal-degree cap acts as the quotient projection.
        """
        out: dict = {}
        clipped = False
        for key, coch in sorted(total.components.items()):
            for new_key, piece in self.ctx.signed_total(key, coch).items():
                if not self.window.contains(new_key):
                    clipped = True
                    self.clip_events += 1
                    continue
                piece = self.project_map(new_key, piece)
                if piece.is_zero():
                    continue
                out[new_key] = out[new_key] + piece if new_key in out else piece
        return TotalCochain(self.window.theory, out), clipped

    def _build_matrix(self, r: int) -> SparseMatrix:
        mat = SparseMatrix(self.dim(r + 1), self.dim(r), self.field)
        for j in range(self.dim(r)):
            image, _ = self.apply_total(self.basis_element(r, j))
            mat.set_column(j, self.vectorize(image, r + 1))
        return mat

    def assert_square_zero(self):
        for r in self.degrees[:-2]:
            prod = self.matrices[r + 1].multiply(self.matrices[r])
            if not prod.is_zero():
                raise AssertionError(
                    f"total differential square is nonzero at degree {r}")


def assemble(presentation, window: ComplexWindow, degrees=None,
             coefficients=None) -> AssembledComplex:
    """Assemble the windowed complex on the given contiguous total degrees.

    The default covers degree-1 .. degree+1, enough for cohomology at
    ``window.degree``.
    """
    if degrees is None:
        degrees = range(window.degree - 1, window.degree + 2)
    return AssembledComplex(presentation, window, list(degrees), coefficients)


@dataclass
class CohomologyResult:
    degree: int
    dimension: int
    representatives: list
    certificate: dict = dc_field(default_factory=dict)


def cohomology(cplx: AssembledComplex, r: int) -> CohomologyResult:
    """Exact cohomology at total degree r: dim, canonical representatives."""
    if r not in cplx.matrices:
        raise ValueError(f"no outgoing matrix at degree {r}")
    out = cplx.matrices[r]
    kernel = out.kernel_basis()
    if r - 1 in cplx.matrices:
        into = cplx.matrices[r - 1]
        image_rank = into.rank
        image_rows = from_row_vectors(
            [dict(into.cols[j]) for j in range(into.ncols)],
            cplx.dim(r), cplx.field)
    else:
        if cplx.window.component_keys(r - 1):
            raise ValueError(f"matrix into degree {r} missing from assembly")
        image_rank = 0
        image_rows = from_row_vectors([], cplx.dim(r), cplx.field)
    dim = len(kernel) - image_rank
    reps = []
    for vec in kernel:
        reduced = image_rows.reduce_mod_rowspace(vec)
        if reduced:
            reps.append(reduced)
    # reduce representatives against each other for a canonical independent set
    rep_matrix = from_row_vectors(reps, cplx.dim(r), cplx.field)
    pivots, rows = rep_matrix.rref()
    reps = [cplx.devectorize(dict(row), r) for row in rows]
    if len(reps) != dim:
        raise AssertionError("representative count disagrees with rank count")
    certificate = {
        "kernel_rank": len(kernel),
        "image_rank": image_rank,
        "space_dim": cplx.dim(r),
    }
    return CohomologyResult(r, dim, reps, certificate)


@dataclass
class CoboundaryCertificate:
    """Rank evidence that a target is not a coboundary."""
    matrix_rank: int
    augmented_rank: int


def solve_coboundary(cplx: AssembledComplex, target: TotalCochain):
    """Solve D(x) = target exactly; returns (witness, None) or (None, cert).

    The target must be supported in window degree r+1 where the matrix
    D: r -> r+1 was assembled; the witness is canonical (free coordinates
    zero) and is re-verified by applying D before it is returned.
    """
    if target.is_zero():
        return TotalCochain(cplx.window.theory, {}), None
    degree = {cplx.ctx.total_degree(k) for k in target.components}
    if len(degree) != 1:
        raise ValueError("target mixes total degrees")
    r = degree.pop() - 1
    if r not in cplx.matrices:
        raise ValueError(f"no matrix at degree {r} in this assembly")
    mat = cplx.matrices[r]
    b = cplx.vectorize(target, r + 1)
    x = mat.solve(b)
    if x is None:
        aug = SparseMatrix(mat.nrows, mat.ncols + 1, cplx.field)
        for j in range(mat.ncols):
            aug.set_column(j, mat.cols[j])
        aug.set_column(mat.ncols, b)
        return None, CoboundaryCertificate(mat.rank, aug.rank)
    witness = cplx.devectorize(x, r)
    image, _ = cplx.apply_total(witness)
    if image != target_projected(cplx, target):
        raise AssertionError("coboundary witness failed re-verification")
    return witness, None


def target_projected(cplx: AssembledComplex, target: TotalCochain) -> TotalCochain:
    comps = {}
    for key, coch in target.components.items():
        proj = cplx.project_map(key, coch)
        if not proj.is_zero():
            comps[key] = proj
    return TotalCochain(target.theory, comps)


def total_differential(presentation, total: TotalCochain, window: ComplexWindow,
                       coefficients=None):
    """The spec-level operation: D(total) inside the window, with clip flag."""
    degrees = sorted({complex_for(presentation, window.theory, coefficients)
                      .total_degree(k) for k in total.components} or {window.degree})
    cplx = AssembledComplex(presentation, window,
                            list(range(degrees[0], degrees[-1] + 2)),
                            coefficients)
    return cplx.apply_total(total)
