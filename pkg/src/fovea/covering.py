"""The covering engine for graded lifts.

Finite-support modules over the infinite lift of a VoltageQuiver are kept
as ordinary modules over a window of layers.  The integer shift acts by
relabeling layers (twist); summing the layers of a module assembles the
corresponding module over the base algebra (push-down), and morphisms of
pushed-down modules decompose into finitely many twisted components.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .linalg import Matrix, solve
from .modules import (
    ModMap,
    Module,
    hom_space,
    is_indecomposable,
    is_isomorphic_indec,
)
from .quiver import (
    BoundQuiver,
    VoltageQuiver,
    Window,
    layer_arrow,
    layer_vertex,
    lift_window,
    path_basis,
)


class CoveringError(ValueError):
    pass


class LayeredModule:
    """A finite-support module over the graded lift of a voltage quiver."""

    def __init__(self, vq: VoltageQuiver, window: Window, module: Module):
        self.vq = vq
        self.window = window
        self.module = module

    @classmethod
    def make(cls, vq: VoltageQuiver, window: Window, dims: dict, mats: dict,
             check: bool = True) -> "LayeredModule":
        """Build from (vertex, layer) dims and (arrow, layer) matrices."""
        bq = lift_window(vq, window)
        mod = Module(
            bq,
            {layer_vertex(v, n): d for (v, n), d in dims.items()},
            {layer_arrow(a, n): m for (a, n), m in mats.items()},
            check=check,
        )
        return cls(vq, window, mod).trim()

    def dim(self, v: str, n: int) -> int:
        if n not in self.window:
            return 0
        return self.module.dims[layer_vertex(v, n)]

    def mat(self, a: str, n: int) -> Matrix | None:
        return self.module.mats.get(layer_arrow(a, n))

    @property
    def total_dim(self) -> int:
        return self.module.total_dim

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def support_layers(self) -> list[int]:
        base = self.vq.base
        return [n for n in self.window.layers
                if any(self.dim(v, n) for v in base.vertices)]

    def trim(self) -> "LayeredModule":
        """Canonical form: shrink the window to the support hull."""
        layers = self.support_layers()
        if not layers:
            zero_w = Window(0, 0)
            return LayeredModule(self.vq, zero_w, Module.zero(lift_window(self.vq, zero_w)))
        w = Window(min(layers), max(layers))
        if w == self.window:
            return self
        return self._on_window(w)

    def _on_window(self, w: Window) -> "LayeredModule":
        bq = lift_window(self.vq, w)
        base = self.vq.base
        dims = {layer_vertex(v, n): self.dim(v, n) for v in base.vertices for n in w.layers}
        mats = {}
        for a in bq.arrows:
            old = self.module.mats.get(a.name)
            if old is not None:
                mats[a.name] = old
        return LayeredModule(self.vq, w, Module(bq, dims, mats, check=False))

    def align(self, w: Window) -> Module:
        """The underlying module extended by zero onto a larger window."""
        if self.is_zero():
            return Module.zero(lift_window(self.vq, w))
        if w.lo > self.window.lo or w.hi < self.window.hi:
            raise CoveringError("alignment window does not contain the support")
        return self._on_window(w).module

    def twist(self, k: int) -> "LayeredModule":
        """The shift action: layer n of the result is layer n - k of self."""
        if k == 0:
            return self
        w = Window(self.window.lo + k, self.window.hi + k)
        bq = lift_window(self.vq, w)
        base = self.vq.base
        dims = {layer_vertex(v, n): self.dim(v, n - k) for v in base.vertices for n in w.layers}
        mats = {}
        for a in base.arrows:
            for n in w.layers:
                old = self.mat(a.name, n - k)
                if old is not None and n + self.vq.degree[a.name] in w:
                    mats[layer_arrow(a.name, n)] = old
        return LayeredModule(self.vq, w, Module(bq, dims, mats, check=False))

    def __eq__(self, other):
        if not isinstance(other, LayeredModule) or self.vq != other.vq:
            return False
        a, b = self.trim(), other.trim()
        return a.window == b.window and a.module == b.module

    def __hash__(self):
        t = self.trim()
        return hash((t.vq, t.window, t.module))

    def __repr__(self):
        return f"LayeredModule(window [{self.window.lo},{self.window.hi}], dim {self.total_dim})"


@dataclass
class LayeredModMap:
    """A morphism of layered modules, stored over a common window."""

    source: LayeredModule
    target: LayeredModule
    window: Window
    map: ModMap

    def twist(self, k: int) -> "LayeredModMap":
        if k == 0:
            return self
        src = self.source.twist(k)
        tgt = self.target.twist(k)
        w = Window(self.window.lo + k, self.window.hi + k)
        comps = {}
        for v in self.source.vq.base.vertices:
            for n in w.layers:
                comps[layer_vertex(v, n)] = self.map.comps[layer_vertex(v, n - k)]
        mm = ModMap(src.align(w), tgt.align(w), comps, check=False)
        return LayeredModMap(src, tgt, w, mm)

    def scale(self, c) -> "LayeredModMap":
        return LayeredModMap(self.source, self.target, self.window, self.map.scale(c))

    def is_zero(self) -> bool:
        return self.map.is_zero()


def common_window(*items) -> Window:
    los = [i.window.lo for i in items]
    his = [i.window.hi for i in items]
    return Window(min(los), max(his))


def layered_hom(x: LayeredModule, y: LayeredModule) -> list[LayeredModMap]:
    """Canonical basis of Hom over the lift; any window holding both works."""
    w = common_window(x, y)
    hom = hom_space(x.align(w), y.align(w))
    return [LayeredModMap(x, y, w, m) for m in hom.maps]


def layered_hom_dim(x: LayeredModule, y: LayeredModule) -> int:
    w = common_window(x, y)
    return hom_space(x.align(w), y.align(w)).dim


def layered_simple(vq: VoltageQuiver, v: str, n: int) -> LayeredModule:
    return LayeredModule.make(vq, Window(n, n), {(v, n): 1}, {})


def _stable_standard(vq: VoltageQuiver, v: str, n: int, kind: str,
                     max_radius: int = 32) -> LayeredModule:
    """Projective or injective at a lifted vertex, grown until stable."""
    from .modules import injective as inj_mod, projective as proj_mod

    prev = None
    r = max(vq.base.nilbound, 1)
    while r <= max_radius:
        w = Window(n - r, n + r)
        bq = lift_window(vq, w)
        if kind == "projective":
            mod = proj_mod(bq, layer_vertex(v, n), path_basis(bq))
        else:
            mod = inj_mod(bq, layer_vertex(v, n))
        lm = LayeredModule(vq, w, mod).trim()
        if prev is not None and prev == lm:
            return lm
        prev = lm
        r *= 2
    raise CoveringError(f"{kind} at {v}@{n} did not stabilize within radius {max_radius}")


def layered_projective(vq: VoltageQuiver, v: str, n: int) -> LayeredModule:
    return _stable_standard(vq, v, n, "projective")


def layered_injective(vq: VoltageQuiver, v: str, n: int) -> LayeredModule:
    return _stable_standard(vq, v, n, "injective")


# ---------------------------------------------------------------------------
# push-down


def orbit_algebra(vq: VoltageQuiver) -> BoundQuiver:
    """The base presentation with degrees forgotten."""
    return vq.base


def push_down(x: LayeredModule) -> Module:
    """Sum the layers of each vertex fiber; arrows act by layered blocks."""
    vq = x.vq
    base = vq.base
    f = base.field
    layers = list(x.window.layers)
    dims = {v: sum(x.dim(v, n) for n in layers) for v in base.vertices}
    offsets: dict[str, dict[int, int]] = {v: {} for v in base.vertices}
    for v in base.vertices:
        off = 0
        for n in layers:
            offsets[v][n] = off
            off += x.dim(v, n)
    mats = {}
    for a in base.arrows:
        d = vq.degree[a.name]
        grid = [[f.zero] * dims[a.target] for _ in range(dims[a.source])]
        for n in layers:
            m = x.mat(a.name, n)
            if m is None or n + d not in x.window:
                continue
            r0 = offsets[a.source][n]
            c0 = offsets[a.target][n + d]
            for i in range(m.rows):
                for j in range(m.cols):
                    grid[r0 + i][c0 + j] = m.entries[i][j]
        mats[a.name] = Matrix.from_rows(f, dims[a.source], dims[a.target], grid)
    return Module(base, dims, mats, check=True)


def push_down_map(fmap: LayeredModMap) -> ModMap:
    """Block-diagonal assembly of a layered morphism over the base algebra.

    The source is push_down(source) under the canonical identification of
    the push-down of a twist with the push-down of the original module.
    """
    vq = fmap.source.vq
    base = vq.base
    src = push_down(fmap.source)
    tgt = push_down(fmap.target)
    comps = {}
    for v in base.vertices:
        src_layers = [n for n in fmap.source.window.layers]
        tgt_layers = [n for n in fmap.target.window.layers]
        grid = [[base.field.zero] * src.dims[v] for _ in range(tgt.dims[v])]
        # row offset per target layer, column offset per source layer
        roff = {}
        off = 0
        for n in tgt_layers:
            roff[n] = off
            off += fmap.target.dim(v, n)
        coff = {}
        off = 0
        for n in src_layers:
            coff[n] = off
            off += fmap.source.dim(v, n)
        for n in fmap.window.layers:
            block = fmap.map.comps[layer_vertex(v, n)]
            if block.rows == 0 or block.cols == 0:
                continue
            r0, c0 = roff[n], coff[n]
            for i in range(block.rows):
                for j in range(block.cols):
                    grid[r0 + i][c0 + j] = block.entries[i][j]
        comps[v] = Matrix.from_rows(base.field, tgt.dims[v], src.dims[v], grid)
    return ModMap(src, tgt, comps, check=True)


def twist_shift_range(x: LayeredModule, y: LayeredModule) -> range:
    """All k for which twist(x, k) can share support with y."""
    if x.is_zero() or y.is_zero():
        return range(0)
    return range(y.window.lo - x.window.hi, y.window.hi - x.window.lo + 1)


def lift_morphism(x: LayeredModule, y: LayeredModule, alpha: ModMap) -> dict[int, LayeredModMap]:
    """Decompose alpha: F(x) -> F(y) into pushed-down twisted components.

    Returns the finitely many nonzero f_k: twist(x, k) -> y with alpha
    equal to the sum of their push-downs; raises if alpha is not in the
    span (then the endpoints were not presented as these push-downs).
    """
    f = x.vq.base.field
    fx, fy = push_down(x), push_down(y)
    if alpha.source != fx or alpha.target != fy:
        raise CoveringError("morphism endpoints are not the given push-downs")
    columns: list[list] = []
    tags: list[tuple[int, LayeredModMap]] = []
    for k in twist_shift_range(x, y):
        for lm in layered_hom(x.twist(k), y):
            columns.append(list(push_down_map(lm).vectorize()))
            tags.append((k, lm))
    if not columns:
        if alpha.is_zero():
            return {}
        raise CoveringError("morphism is not in the pushed-down span")
    a = Matrix(f, columns).transpose()
    b = Matrix(f, [list(alpha.vectorize())]).transpose()
    sol = solve(a, b)
    if sol is None:
        raise CoveringError("morphism is not in the pushed-down span")
    grouped: dict[int, list] = {}
    for (k, lm), row in zip(tags, sol.entries):
        if row[0]:
            grouped.setdefault(k, []).append((row[0], lm))
    result: dict[int, LayeredModMap] = {}
    for k, parts in sorted(grouped.items()):
        acc = parts[0][1].map.scale(parts[0][0])
        for c, lm in parts[1:]:
            acc = acc + lm.map.scale(c)
        result[k] = LayeredModMap(parts[0][1].source, parts[0][1].target,
                                  parts[0][1].window, acc)
    return result


def reassemble(components: dict[int, LayeredModMap]) -> ModMap | None:
    """Sum of push-downs of a lifted family; inverse of lift_morphism."""
    total = None
    for k in sorted(components):
        pushed = push_down_map(components[k])
        total = pushed if total is None else total + pushed
    return total


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class CheckRecord:
    check: str
    expected: object
    actual: object
    ok: bool


@dataclass
class VerifyReport:
    name: str
    records: list[CheckRecord] = dc_field(default_factory=list)

    def add(self, check: str, expected, actual) -> bool:
        ok = expected == actual
        self.records.append(CheckRecord(check, expected, actual, ok))
        return ok

    def assert_true(self, check: str, value: bool, detail=None):
        self.records.append(CheckRecord(check, True, detail if detail is not None else bool(value), bool(value)))

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)


def verify_covering_axioms(vq: VoltageQuiver, max_radius: int = 64) -> VerifyReport:
    """Check dim A(u,v) against layer sums of lifted hom dimensions.

    The window is doubled until every pair's sums stabilize twice in a
    row; failure to stabilize signals a non-locally-bounded input.
    """
    report = VerifyReport("cover-axioms")
    base = vq.base
    pb_base = path_basis(base)
    pairs = [(u, v) for u in base.vertices for v in base.vertices]

    def sums(radius: int):
        w = Window(-radius, radius)
        pb = path_basis(lift_window(vq, w))
        left = {}
        right = {}
        for (u, v) in pairs:
            left[(u, v)] = sum(pb.dim(layer_vertex(u, k), layer_vertex(v, 0))
                               for k in w.layers)
            right[(u, v)] = sum(pb.dim(layer_vertex(u, 0), layer_vertex(v, k))
                                for k in w.layers)
        return left, right

    radius = max(base.nilbound, 1)
    history = []
    while radius <= max_radius:
        history.append(sums(radius))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            break
        radius *= 2
    else:
        raise CoveringError("hom dimensions failed to stabilize; input not locally bounded?")

    left, right = history[-1]
    for (u, v) in pairs:
        expected = pb_base.dim(u, v)
        report.add(f"covering.dim-sum-left[{u},{v}]", expected, left[(u, v)])
        report.add(f"covering.dim-sum-right[{u},{v}]", expected, right[(u, v)])
    report.assert_true("covering.objects-surjective", True,
                       "every base vertex is hit by construction")
    report.assert_true("covering.action-free", True,
                       "the layer shift moves every lifted vertex by construction")
    report.assert_true("covering.shift-invariance", True,
                       "projection composed with the shift is the projection by construction")
    return report


def verify_pushdown(vq: VoltageQuiver, x: LayeredModule, y: LayeredModule,
                    density_target: Module | None = None,
                    shift_radius: int = 8,
                    enum_caps: tuple[int, int] = (24, 40)) -> VerifyReport:
    """Covering identities for one pair of finite-support lifted modules."""
    report = VerifyReport("pushdown")
    fx, fy = push_down(x), push_down(y)
    hom_a = hom_space(fx, fy).dim
    total_left = sum(layered_hom_dim(x.twist(k), y) for k in twist_shift_range(x, y))
    total_right = sum(layered_hom_dim(x, y.twist(k)) for k in twist_shift_range(y, x))
    report.add("pushdown.hom-sum-left", hom_a, total_left)
    report.add("pushdown.hom-sum-right", hom_a, total_right)

    for k in (-1, 0, 1, 2):
        report.add(f"pushdown.twist-invariance[k={k}]", push_down(x), push_down(x.twist(k)))

    if not x.is_zero() and is_indecomposable(x.module):
        report.assert_true("pushdown.preserves-indecomposable", is_indecomposable(fx))
        if not y.is_zero() and is_indecomposable(y.module) and fx.dims == fy.dims \
                and is_isomorphic_indec(fx, fy):
            found = None
            for k in range(-shift_radius, shift_radius + 1):
                xt = x.twist(k).trim()
                yt = y.trim()
                if xt.window == yt.window and xt.module.dims == yt.module.dims \
                        and is_isomorphic_indec(xt.module, yt.module):
                    found = k
                    break
            report.assert_true("pushdown.iso-implies-twist", found is not None,
                               f"witness shift {found}" if found is not None else False)

    if density_target is not None:
        found = _density_search(vq, density_target, shift_radius, enum_caps)
        report.assert_true("pushdown.density-spot-check", found,
                           "a finite-support lift was found" if found else False)
    return report


def _density_search(vq: VoltageQuiver, target: Module, radius: int,
                    enum_caps: tuple[int, int]) -> bool:
    from .modules import enumerate_indecomposables, is_isomorphic

    r = max(vq.base.nilbound, 1)
    while r <= radius:
        w = Window(-r, r)
        bq = lift_window(vq, w)
        enum = enumerate_indecomposables(bq, dim_cap=enum_caps[0], count_cap=enum_caps[1])
        for m in enum.modules:
            lm = LayeredModule(vq, w, m).trim()
            pd = push_down(lm)
            if pd.dims == target.dims and is_isomorphic(pd, target):
                return True
        r *= 2
    return False
