"""Harrison subcomplex, staircase reduction, and the derivation comparison.

Harrison cochains are the normalized Hochschild cochains that kill every
signed shuffle sum; the sign there is the plain permutation parity, while the
graded Koszul sign enters separately when a shuffle acts on homogeneous
tensors.  Both are only meaningful for a commutative algebra with symmetric
coefficients over a field of characteristic zero, and the entry points below
refuse anything else.

Windowed computations cap the internal degree of every tensor label at a
configurable bound.  With the q = 3 truncation this cap is a quotient-complex
direction, so all assembled squares still vanish identically; a total degree
r is reported as window-exact when r <= cap - (top generator degree), because
the discarded part of the complex is the same Harrison complex with
coefficients in the ideal of elements above the cap, whose relevant
cohomology vanishes for those r by column exactness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .cochains import Cochain, HochschildComplex
from .cohomology import (
    AssembledComplex,
    ComplexWindow,
    SpaceBlock,
    TotalCochain,
    assemble,
    cohomology,
)
from .graded import GradedMap, koszul_sign, permute_tuple, tensor_labels
from .linalg import SparseMatrix
from .structures import Bimodule


def shuffle_permutations(r: int, s: int):
    """All (r,s)-shuffles of r+s slots: one-line tuples, 0-based.

    A shuffle keeps slots 1..r and slots r+1..r+s in their relative order;
    there are C(r+s, r) of them.
    """
    n = r + s
    for combo in itertools.combinations(range(n), r):
        sigma = [0] * n
        rest = [j for j in range(n) if j not in combo]
        for i, dest in enumerate(combo):
            sigma[i] = dest
        for i, dest in enumerate(rest):
            sigma[r + i] = dest
        yield tuple(sigma)


def permutation_parity(sigma) -> int:
    """(-1)**inversions: the ungraded sign of the permutation."""
    sign = 1
    n = len(sigma)
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign


@dataclass
class ShuffleOperator:
    """The signed sum of (r, m-r)-shuffles acting on an m-fold tensor power."""

    m: int
    r: int
    operator: GradedMap

    @classmethod
    def build(cls, slots, r: int, field, labels=None) -> "ShuffleOperator":
        m = len(slots)
        if not 1 <= r <= m - 1:
            raise ValueError("split must satisfy 1 <= r <= m-1")
        if labels is None:
            labels = tensor_labels(slots)
        cols: dict = {}
        terms = [(permutation_parity(sig), sig)
                 for sig in shuffle_permutations(r, m - r)]
        for lab in labels:
            degs = [slots[k].degrees[i] for k, i in enumerate(lab)]
            col: dict = {}
            for parity, sig in terms:
                sign = parity * koszul_sign(sig, degs)
                tgt = permute_tuple(sig, lab)
                new = col.get(tgt, field.zero) + (
                    field.one if sign > 0 else -field.one)
                if new:
                    col[tgt] = new
                elif tgt in col:
                    del col[tgt]
            if col:
                cols[lab] = col
        return cls(m, r, GradedMap(slots, slots, 0, field, cols, _trusted=True))


def _require_harrison_setting(ctx: HochschildComplex):
    if ctx.field.char != 0:
        raise ValueError("Harrison computations require characteristic zero")
    if not ctx.A.is_commutative():
        raise ValueError("Harrison cochains need a commutative algebra")
    if not ctx.M.is_symmetric():
        raise ValueError("Harrison cochains need a symmetric bimodule")


def _source_kernel_basis(ctx: HochschildComplex, m: int, sources: list) -> list:
    """Canonical basis of the joint left kernel of all shuffle sums.

    A row of a cochain (one fixed target) lies in the Harrison subspace iff
    its coefficient vector v over source labels satisfies, for every split r
    and every source label s, sum_u v_u * Sh_r[u, s] = 0; grouping sources by
    internal degree keeps the systems small since shuffles preserve it.
    Returns (vector over global source index, free-column index) pairs; the
    vectors take value 1 at their own free column and 0 at every other one,
    so coordinates in this basis can be read off at the free columns.
    """
    field = ctx.field
    slots = ctx.source_slots(m)
    index = {lab: i for i, lab in enumerate(sources)}
    by_degree: dict = {}
    for lab in sources:
        d = sum(slots[k].degrees[i] for k, i in enumerate(lab))
        by_degree.setdefault(d, []).append(lab)
    out = []
    for d in sorted(by_degree):
        labs = by_degree[d]
        ops = [ShuffleOperator.build(slots, r, field, labs).operator
               for r in range(1, m)]
        local = {lab: i for i, lab in enumerate(labs)}
        mat = SparseMatrix(len(labs) * len(ops), len(labs), field)
        cols: list[dict] = [dict() for _ in labs]
        for block, op in enumerate(ops):
            base = block * len(labs)
            for s_lab in labs:
                s = local[s_lab]
                for u_lab, c in op.column(s_lab).items():
                    cols[local[u_lab]][base + s] = c
        for j, col in enumerate(cols):
            mat.set_column(j, col)
        pivot_set = set(mat.rref()[0])
        free_cols = [j for j in range(len(labs)) if j not in pivot_set]
        for vec, free in zip(mat.kernel_basis(), free_cols):
            global_vec = {index[labs[j]]: v for j, v in vec.items()}
            out.append((global_vec, index[labs[free]]))
    return out


def harrison_block(ctx: HochschildComplex, key, src_slots, tgt_slots,
                   pairs) -> SpaceBlock:
    """The window SpaceBlock of Harrison (p, m)-cochains over the pair list."""
    _require_harrison_setting(ctx)
    p, m = key
    pair_index = {pair: i for i, pair in enumerate(pairs)}
    sources = sorted({src for _, src in pairs})
    if not sources:
        return SpaceBlock(key, src_slots, tgt_slots, pairs, [], [])
    kernel = _source_kernel_basis(ctx, m, sources)
    vectors = []
    pivots = []
    for tgt in sorted({t for t, _ in pairs}):
        for vec, pivot_src_idx in kernel:
            entries = {}
            usable = True
            for src_i, v in vec.items():
                pair = (tgt, sources[src_i])
                if pair not in pair_index:
                    usable = False
                    break
                entries[pair_index[pair]] = v
            if not usable or not entries:
                continue
            pivot_pair = (tgt, sources[pivot_src_idx])
            if pivot_pair not in pair_index:
                continue
            vectors.append(entries)
            pivots.append(pair_index[pivot_pair])
    order = sorted(range(len(vectors)), key=lambda i: pivots[i])
    vectors = [vectors[i] for i in order]
    pivots = [pivots[i] for i in order]
    return SpaceBlock(key, src_slots, tgt_slots, pairs, vectors, pivots)


def harrison_subspace(A, p: int, m: int, M: Bimodule | None = None,
                      degree_cap: int | None = None) -> list:
    """A canonical basis of the Harrison (p, m)-cochains as Cochain values."""
    ctx = HochschildComplex(A, M)
    _require_harrison_setting(ctx)
    window = ComplexWindow("harrison", 3, p + m, degree_cap=degree_cap)
    cplx = AssembledComplex(A, window, [p + m], coefficients=M)
    out = []
    for block in cplx.spaces[p + m]:
        if block.key != (p, m):
            continue
        for i in range(block.dim):
            out.append(cplx._block_cochain(block, i))
    return out


# ---------------------------------------------------------------------------
# staircase reduction
# ---------------------------------------------------------------------------

@dataclass
class StaircaseResult:
    reduced: TotalCochain        # concentrated in bidegree (r-1, 1)
    witness: TotalCochain        # original - reduced = D(witness), exactly
    steps: list                  # bidegrees solved, lowest internal degree first


def staircase_reduce(cplx: AssembledComplex, total: TotalCochain) -> StaircaseResult:
    """Replace a total cocycle by a cohomologous one concentrated in (r-1, 1).

    Peels the lowest-internal-degree component with a horizontal solve at
    each step; both postconditions (concentration, and D(witness) equal to
    the difference) are re-verified exactly before returning.  A failed solve
    reports the bidegree whose column is not exact.
    """
    if cplx.window.theory not in ("harrison", "hochschild"):
        raise ValueError("staircase reduction runs in a double complex window")
    image, clipped = cplx.apply_total(total)
    if clipped or not image.is_zero():
        raise ValueError("staircase input is not a window cocycle")
    degrees = {cplx.ctx.total_degree(k) for k in total.components}
    if len(degrees) > 1:
        raise ValueError("staircase input mixes total degrees")
    if not degrees:
        return StaircaseResult(total, TotalCochain(total.theory, {}), [])
    r = degrees.pop()
    current = total
    witness = TotalCochain(total.theory, {})
    steps = []
    while True:
        keys = current.keys()
        low = min(keys) if keys else None
        if low is None or low == (r - 1, 1):
            break
        p, m = low
        target_block = TotalCochain(total.theory, {low: current.components[low]})
        piece = _solve_vertical_step(cplx, r, p, m, target_block)
        if piece is None:
            raise ValueError(f"column not exact at bidegree {low}")
        image, _ = cplx.apply_total(piece)
        current = current - image
        witness = witness + piece
        steps.append(low)
        if low in current.components:
            raise AssertionError("staircase step failed to clear its component")
    check, _ = cplx.apply_total(witness)
    if check != total - current:
        raise AssertionError("staircase witness failed re-verification")
    for key in current.keys():
        if key != (r - 1, 1):
            raise AssertionError("staircase result is not concentrated")
    return StaircaseResult(current, witness, steps)


def _solve_vertical_step(cplx: AssembledComplex, r: int, p: int, m: int,
                         target: TotalCochain):
    """Solve [D(g)]_{(p,m)} = target for g in bidegree (p, m-1)."""
    src_key, tgt_key = (p, m - 1), (p, m)
    if m - 1 < 1:
        return None
    r_low = r - 1
    src_offsets = cplx.offsets[r_low]
    if src_key not in src_offsets:
        return None
    src_block = next(b for b in cplx.spaces[r_low] if b.key == src_key)
    base = src_offsets[src_key]
    tgt_vec_full = cplx.vectorize(target, r)
    tgt_offsets = cplx.offsets[r]
    tgt_block = next(b for b in cplx.spaces[r] if b.key == tgt_key)
    tbase = tgt_offsets[tgt_key]
    tdim = tgt_block.dim
    mat = cplx.matrices[r_low]
    sub = SparseMatrix(tdim, src_block.dim, cplx.field)
    for j in range(src_block.dim):
        col = mat.cols[base + j]
        sub.set_column(j, {i - tbase: v for i, v in col.items()
                           if tbase <= i < tbase + tdim})
    b = {i - tbase: v for i, v in tgt_vec_full.items()
         if tbase <= i < tbase + tdim}
    if any(not (tbase <= i < tbase + tdim) for i in tgt_vec_full):
        raise AssertionError("step target not confined to its bidegree")
    x = sub.solve(b)
    if x is None:
        return None
    full = {base + j: v for j, v in x.items()}
    return cplx.devectorize(full, r_low)


# ---------------------------------------------------------------------------
# derivations and the adjoint differential
# ---------------------------------------------------------------------------

def derivation_space(A, p: int, M: Bimodule | None = None,
                     degree_cap: int | None = None) -> list:
    """Canonical basis of degree-p derivations, two ways, compared exactly.

    The kernel of the horizontal differential on normalized 1-cochains must
    coincide with the solutions of the Leibniz constraint computed directly;
    any disagreement raises.  With a ``degree_cap`` the computation runs in
    the label window (all tensor degrees <= cap), which only makes sense for
    nonnegative p; without one it runs over the full presented algebra.
    """
    ctx = HochschildComplex(A, M)
    M = ctx.M
    field = ctx.field
    if degree_cap is not None and p < 0:
        raise ValueError("degree-capped derivation windows need p >= 0")
    cap = degree_cap

    def in_cap(deg: int) -> bool:
        return cap is None or deg <= cap

    basis = A.basis
    pairs = []
    for s in range(1, len(basis)):
        sdeg = basis.degrees[s]
        if not in_cap(sdeg):
            continue
        for t in range(len(M.basis)):
            if M.basis.degrees[t] == sdeg + p and in_cap(sdeg + p):
                pairs.append(((t,), (s,)))
    pairs.sort()
    if not pairs:
        return []
    one = GradedMap.identity((basis,), field)

    def clip(gmap: GradedMap) -> GradedMap:
        if cap is None:
            return gmap

        def keep(slots):
            def pred(lab):
                return sum(slots[k].degrees[i] for k, i in enumerate(lab)) <= cap
            return pred
        return gmap.restrict(col_keep=keep(gmap.source), row_keep=keep(gmap.target))

    horiz_cols = []
    leib_cols = []
    cochains = []
    for tgt, src in pairs:
        theta = ctx.make(GradedMap((basis,), (M.basis,), p, field,
                                   {src: {tgt: field.one}}))
        cochains.append(theta)
        horiz_cols.append(clip(ctx.del_B(theta).map))
        resid = theta.map.compose(A.mu) \
            - M.rho.compose(_tensor(theta.map, one)) \
            - M.lam.compose(_tensor(one, theta.map))
        leib_cols.append(clip(resid))

    def kernel_of(col_maps):
        constraints: dict = {}
        for j, gmap in enumerate(col_maps):
            for tgt, src, v in gmap.entries_sorted():
                constraints.setdefault((src, tgt), {})[j] = v
        mat = SparseMatrix(len(constraints), len(pairs), field)
        cols: list[dict] = [dict() for _ in pairs]
        for i, key in enumerate(sorted(constraints)):
            for j, v in constraints[key].items():
                cols[j][i] = v
        for j, col in enumerate(cols):
            mat.set_column(j, col)
        return mat.kernel_basis()

    kernel = kernel_of(horiz_cols)
    kernel2 = kernel_of(leib_cols)
    if kernel != kernel2:
        raise AssertionError("derivation space: kernel and Leibniz routes differ")
    out = []
    for vec in kernel:
        total = None
        for j, v in sorted(vec.items()):
            piece = cochains[j].scale(v)
            total = piece if total is None else total + piece
        out.append(total)
    return out


def _tensor(f, g):
    from .graded import tensor_of_maps
    return tensor_of_maps(f, g)


def ad_differential(A, theta: Cochain, M: Bimodule | None = None) -> Cochain:
    """The adjoint action [d, theta] = d∘theta - (-1)^{|theta|} theta∘d.

    Equals -d_B(theta) on 1-cochains entrywise; that identity is asserted
    here since it costs one subtraction.
    """
    ctx = HochschildComplex(A, M)
    d_M = ctx.M.d
    term = theta.map.compose(A.d)
    out = d_M.compose(theta.map) - (term if theta.p % 2 == 0 else -term)
    result = ctx.make(out)
    if not (result + ctx.d_B(theta)).is_zero():
        raise AssertionError("ad(d) disagrees with -d_B on a 1-cochain")
    return result


# ---------------------------------------------------------------------------
# the generator-level comparison
# ---------------------------------------------------------------------------

def leibniz_extension(A, gen_indices, values: dict, p: int,
                      degree_cap: int | None = None) -> Cochain:
    """Extend generator values to a degree-p derivation cochain.

    ``values`` maps a generator's basis index to its image vector.  Every
    positive-degree basis element must factor as generator * smaller basis
    element through mu; free graded-commutative presentations have this
    property by construction.
    """
    basis, field = A.basis, A.field
    cap = degree_cap if degree_cap is not None else basis.top_degree
    gen_set = set(gen_indices)
    cols: dict = {}
    for i in gen_set:
        vec = {k: v for k, v in values.get(i, {}).items() if v}
        vec = {k: v for k, v in vec.items()
               if basis.degrees[k[0]] <= cap}
        if vec:
            cols[(i,)] = vec
    known = dict(cols)

    def theta(idx):
        return known.get((idx,), {})

    for deg in range(1, basis.top_degree + 1):
        for i in basis.indices_of_degree(deg):
            if (i,) in known or i in gen_set:
                known.setdefault((i,), {})
                continue
            found = None
            for g in sorted(gen_set):
                for rest in range(len(basis)):
                    col = A.mu.column((g, rest))
                    if (i,) in col and basis.degrees[rest] < deg:
                        found = (g, rest, col[(i,)])
                        break
                if found:
                    break
            if found is None:
                raise ValueError(
                    f"basis element {basis.labels[i]} does not factor "
                    f"through a generator")
            g, rest, c = found
            vec: dict = {}
            # theta(g*rest) = theta(g)*rest + (-1)^{p|g|} g*theta(rest)
            for (t,), v in theta(g).items():
                for (out,), c2 in A.mu.column((t, rest)).items():
                    _acc(vec, (out,), v * c2, field)
            sign = -1 if (p % 2 and basis.degrees[g] % 2) else 1
            for (t,), v in theta(rest).items():
                for (out,), c2 in A.mu.column((g, t)).items():
                    term = v * c2
                    _acc(vec, (out,), term if sign > 0 else -term, field)
            inv = field.one / c
            vec = {k: v * inv for k, v in vec.items()}
            vec = {k: v for k, v in vec.items() if basis.degrees[k[0]] <= cap}
            known[(i,)] = vec
    cols = {src: v for src, v in known.items() if v}
    gm = GradedMap((basis,), (basis,), p, field, cols)
    return Cochain(gm, True, False)


def _acc(vec, key, val, field):
    new = vec.get(key, field.zero) + val
    if new:
        vec[key] = new
    elif key in vec:
        del vec[key]


@dataclass
class Iso2Row:
    degree: int
    harrison_dim: int
    derivation_dim: int
    window_exact: bool

    @property
    def equal(self) -> bool:
        return self.harrison_dim == self.derivation_dim


@dataclass
class Iso2Report:
    rows: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row.equal for row in self.rows if row.window_exact)

    def lines(self):
        out = []
        for row in self.rows:
            tag = "exact" if row.window_exact else "inconclusive"
            verdict = "==" if row.equal else "!="
            out.append(f"degree {row.degree}: harrison {row.harrison_dim} "
                       f"{verdict} derivation {row.derivation_dim} [{tag}]")
        return out


def _generator_hom_dims(A, gen_indices, degree_cap):
    """H(Hom(<gens>, A), ad(d)) dimension per map degree, on the window."""
    basis, field = A.basis, A.field
    gens = sorted(gen_indices)
    gmax = max(basis.degrees[g] for g in gens)

    def hom_basis(p):
        out = []
        for g in gens:
            t = basis.degrees[g] + p
            if 0 <= t <= degree_cap:
                for i in basis.indices_of_degree(t):
                    out.append((g, i))
        return out

    def ad_matrix(p):
        src = hom_basis(p)
        tgt = hom_basis(p + 1)
        tgt_index = {pair: i for i, pair in enumerate(tgt)}
        mat = SparseMatrix(len(tgt), len(src), field)
        for j, (g, i) in enumerate(src):
            theta = leibniz_extension(A, gens, {g: {(i,): field.one}}, p,
                                      degree_cap)
            image = ad_differential(A, theta)
            col: dict = {}
            for gg in gens:
                for (t,), v in image.map.column((gg,)).items():
                    pair = (gg, t)
                    if pair in tgt_index:
                        col[tgt_index[pair]] = v
                    elif basis.degrees[t] <= degree_cap:
                        raise AssertionError("ad image misses the hom basis")
            mat.set_column(j, col)
        return mat, len(src)

    dims = {}
    cache = {}

    def mat_at(p):
        if p not in cache:
            cache[p] = ad_matrix(p)
        return cache[p]

    for p in range(-1, degree_cap - gmax + 1):
        mat_p, dim_p = mat_at(p)
        kernel = dim_p - mat_p.rank
        if p - 1 >= -2:
            mat_prev, _ = mat_at(p - 1)
            image = mat_prev.rank
        else:
            image = 0
        dims[p] = kernel - image
    return dims


def iso2_check(A, generator_labels, degree_cap: int,
               max_degree: int | None = None) -> Iso2Report:
    """Compare Harrison cohomology with the generator-level complex.

    The left side is the q = 3 restricted Harrison cohomology of A with
    coefficients in itself, windowed at ``degree_cap``; the right side is the
    homology of Hom(<generators>, A) under ad(d), which ignores the product
    entirely.  Rows compare total degree r against map degree r - 1; degrees
    above cap - (top generator degree) are flagged inconclusive.  The
    comparison starts at r = 2: at r = 1 the truncation has already removed
    the degree-0 cochains, so the left side is a plain kernel while the right
    side is a genuine quotient, and the two need not agree.
    """
    ctx = HochschildComplex(A)
    _require_harrison_setting(ctx)
    basis = A.basis
    gens = [basis.index(lbl) for lbl in generator_labels]
    gmax = max(basis.degrees[g] for g in gens)
    exact_limit = degree_cap - gmax
    r_max = max_degree if max_degree is not None else exact_limit
    right = _generator_hom_dims(A, gens, degree_cap)
    report = Iso2Report()
    for r in range(2, r_max + 1):
        window = ComplexWindow("harrison", 3, r, degree_cap=degree_cap)
        cplx = assemble(A, window)
        left = cohomology(cplx, r).dimension
        report.rows.append(Iso2Row(r, left, right.get(r - 1, 0),
                                   r <= exact_limit))
    return report
