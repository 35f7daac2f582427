"""Truncated repetitive categories and orbit selfinjective algebras.

The repetitive category doubles a finite-dimensional algebra into an
infinite stack of layers: morphisms inside a layer are the algebra's own,
morphisms one layer up are functionals on morphisms the other way, and
nothing reaches farther.  Finite truncations are honest structure-constant
categories; the shift-by-one grading packages the whole stack as a
VoltageQuiver, and quotients by k-fold shifts produce selfinjective
algebras (the trivial extension at k = 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .modules import injective, is_isomorphic_indec, projective
from .quiver import (
    BoundQuiver,
    PathBasis,
    QuiverError,
    StructureCategory,
    VoltageQuiver,
    Window,
    arrow_elements,
    extract_presentation,
    lift_window,
    path_basis,
    radical_filtration,
    structure_category,
)


class RepetitiveTruncation:
    """The layers -n..n of the repetitive category of an algebra.

    Objects are (layer, vertex).  Hom bases: within a layer the path
    classes of the algebra; one layer up the dual basis of the path
    classes the other way; the compositions (u then phi)(b) = phi(b u) and
    (phi then w)(c) = phi(w c) wire the dual layer to the algebra action.
    """

    def __init__(self, bq: BoundQuiver, n: int, basis: PathBasis | None = None):
        if n < 0:
            raise QuiverError("truncation radius must be nonnegative")
        self.base = bq
        self.n = n
        self.basis = basis or path_basis(bq)
        f = bq.field
        objs = [(m, i) for m in range(-n, n + 1) for i in bq.vertices]
        dims = {}
        for (m, i) in objs:
            for (r, j) in objs:
                if r == m:
                    dims[((m, i), (r, j))] = self.basis.dim(i, j)
                elif r == m + 1:
                    dims[((m, i), (r, j))] = self.basis.dim(j, i)
                else:
                    dims[((m, i), (r, j))] = 0
        identity_index = {}
        for (m, i) in objs:
            coords = self.basis.identity_coords(i)
            identity_index[(m, i)] = next(k for k, c in enumerate(coords) if c)
        self.category = StructureCategory(f, objs, dims, self._compose, identity_index)

    def _compose(self, x, y, z, u, v):
        (m, i), (r, j), (s, k) = x, y, z
        f = self.base.field
        b = self.basis
        if r == m and s == m:
            return b.compose(i, j, k, u, v)
        if r == m and s == m + 1:
            # u in A(i,j), v a functional on A(k,j); result functional on A(k,i)
            out = []
            for c in _unit_vectors(f, b.dim(k, i)):
                w = b.compose(k, i, j, c, u)
                out.append(_pair(f, w, v))
            return tuple(out)
        if r == m + 1 and s == m + 1:
            # u a functional on A(j,i), v in A(j,k); result functional on A(k,i)
            out = []
            for c in _unit_vectors(f, b.dim(k, i)):
                w = b.compose(j, k, i, v, c)
                out.append(_pair(f, w, u))
            return tuple(out)
        # anything spanning two or more connecting layers vanishes
        return tuple(f.zero for _ in range(self.category.dim(x, z)))

    @property
    def total_dim(self) -> int:
        return self.category.total_dim

    def export(self, layer_sep: str = "@") -> BoundQuiver:
        """A bound quiver presentation with vertices named vertex@layer."""
        return extract_presentation(self.category,
                                    vertex_name=lambda o: f"{o[1]}{layer_sep}{o[0]}")


def _unit_vectors(f, n):
    for i in range(n):
        v = [f.zero] * n
        v[i] = f.one
        yield tuple(v)


def _pair(f, coords, functional):
    acc = f.zero
    for a, b in zip(coords, functional):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


def repetitive_truncation(bq: BoundQuiver, n: int) -> RepetitiveTruncation:
    return RepetitiveTruncation(bq, n)


def repetitive_voltage(bq: BoundQuiver) -> VoltageQuiver:
    """The repetitive category as a graded presentation with shift degree 1.

    Arrows are a rad/rad^2 basis taken at layer zero (shift invariance
    makes that choice global); relations are the canonical kernel of path
    evaluation inside a truncation wide enough to hold every relation.
    """
    base_cat = structure_category(bq)
    _, _, nildeg_a = radical_filtration(base_cat)
    trunc = RepetitiveTruncation(bq, max(2 * nildeg_a + 2, 2))
    cat = trunc.category
    rad, rad2, nildeg = radical_filtration(cat)
    nilbound = nildeg + 1

    reps = arrow_elements(cat, rad, rad2)
    arrows = []
    degrees = {}
    elems = {}
    counter = 0
    for i in bq.vertices:
        for d in (0, 1):
            for j in bq.vertices:
                for elem in reps.get(((0, i), (d, j)), []):
                    name = f"a{counter}"
                    counter += 1
                    arrows.append((name, i, j))
                    degrees[name] = d
                    elems[name] = elem

    out_arrows: dict[str, list[str]] = {i: [] for i in bq.vertices}
    for name, src, _tgt in arrows:
        out_arrows[src].append(name)
    arrow_target = {name: tgt for name, _src, tgt in arrows}

    # evaluate orbit paths inside the truncation, tracking layers
    relations = []
    for i in bq.vertices:
        paths: dict[tuple[str, int], list] = {}
        frontier = [((), i, 0, cat.unit((0, i)))]
        for _ in range(nilbound):
            nxt = []
            for path, end, layer, val in frontier:
                for name in out_arrows[end]:
                    d = degrees[name]
                    tgt = arrow_target[name]
                    new_val = cat.compose((0, i), (layer, end), (layer + d, tgt),
                                          val, elems[name])
                    p = path + (name,)
                    paths.setdefault((tgt, layer + d), []).append((p, new_val))
                    nxt.append((p, tgt, layer + d, new_val))
            frontier = nxt
        from .linalg import Matrix, kernel_basis
        for (j, layer), plist in sorted(paths.items()):
            dim = cat.dim((0, i), (layer, j))
            ev = Matrix(bq.field, [list(val) for _p, val in plist]).transpose() if dim else \
                Matrix.zeros(bq.field, 0, len(plist))
            for row in kernel_basis(ev).entries:
                terms = tuple((c, p) for c, (p, _v) in zip(row, plist) if c)
                if terms:
                    relations.append(terms)

    lifted = BoundQuiver(bq.vertices, arrows, relations, bq.field, nilbound)
    return VoltageQuiver(lifted, degrees)


def selfinjective_orbit(bq: BoundQuiver, k: int = 1) -> BoundQuiver:
    """Quotient of the repetitive category by the k-fold shift subgroup."""
    if k < 1:
        raise QuiverError("orbit exponent must be at least 1")
    rv = repetitive_voltage(bq)
    base = rv.base
    if k == 1:
        return BoundQuiver(base.vertices, [tuple(a) for a in base.arrows],
                           base.relations, base.field, base.nilbound)
    vertices = [f"{v}%{c}" for c in range(k) for v in base.vertices]
    arrows = []
    for c in range(k):
        for a in base.arrows:
            arrows.append((f"{a.name}%{c}", f"{a.source}%{c}",
                           f"{a.target}%{(c + rv.degree[a.name]) % k}"))
    relations = []
    seen = set()
    for rel in base.relations:
        for c in range(k):
            terms = []
            for coeff, p in rel:
                lifted = []
                layer = c
                for arr in p:
                    lifted.append(f"{arr}%{layer % k}")
                    layer += rv.degree[arr]
                terms.append((coeff, tuple(lifted)))
            key = tuple(terms)
            if key not in seen:
                seen.add(key)
                relations.append(key)
    return BoundQuiver(vertices, arrows, relations, base.field, base.nilbound)


def is_selfinjective(bq: BoundQuiver, basis: PathBasis | None = None) -> bool:
    """Each indecomposable projective is injective (and conversely)."""
    basis = basis or path_basis(bq)
    projs = {v: projective(bq, v, basis) for v in bq.vertices}
    injs = {v: injective(bq, v) for v in bq.vertices}
    remaining = list(bq.vertices)
    for v, p in projs.items():
        match = None
        for w in remaining:
            if p.dims == injs[w].dims and is_isomorphic_indec(p, injs[w]):
                match = w
                break
        if match is None:
            return False
        remaining.remove(match)
    return not remaining


@dataclass
class ProbeReport:
    stabilized: bool
    extents: list[tuple[int, int]] = dc_field(default_factory=list)
    verdict: str = ""


def support_finiteness_probe(vq: VoltageQuiver, radius: int = 8,
                             dim_cap: int = 48, count_cap: int = 96) -> ProbeReport:
    """A heuristic certificate for local support-finiteness.

    Enumerates indecomposables over growing windows and watches the union
    of supports of those through the base vertex at layer zero; two
    consecutive stable extents give a "stabilized" verdict, caps or growth
    give "not stabilized".  Never a proof, only evidence.
    """
    from .modules import enumerate_indecomposables

    v0 = vq.base.vertices[0]
    probe_vertex = f"{v0}@0"
    extents = []
    r = max(vq.base.nilbound, 1)
    while r <= radius:
        w = Window(-r, r)
        bq = lift_window(vq, w)
        enum = enumerate_indecomposables(bq, dim_cap=dim_cap, count_cap=count_cap,
                                         verify=False, closure="light")
        if not enum.complete:
            return ProbeReport(False, extents, "not stabilized (enumeration hit a cap)")
        lo = hi = 0
        for m in enum.modules:
            if m.dims.get(probe_vertex, 0) == 0:
                continue
            for name, d in m.dims.items():
                if d:
                    layer = int(name.rpartition("@")[2])
                    lo = min(lo, layer)
                    hi = max(hi, layer)
        extents.append((lo, hi))
        if len(extents) >= 2 and extents[-1] == extents[-2] and hi - lo < 2 * r:
            return ProbeReport(True, extents, "stabilized")
        r *= 2
    return ProbeReport(False, extents, "not stabilized within the probe radius")
