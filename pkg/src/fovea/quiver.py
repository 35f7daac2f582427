"""Bound quiver presentations and their graded (voltage) refinements.

A BoundQuiver is a finite quiver with scalar relations and a nilpotency
bound m: every path of length >= m is declared zero, which keeps all path
spaces finite and admissibility decidable.  A VoltageQuiver attaches an
integer degree to each arrow; its graded lift presents an infinite
category on which the integers act by shifting layers, and finite windows
of that lift are again BoundQuivers.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field as dc_field

from .linalg import (
    Field,
    Matrix,
    Subspace,
    kernel_basis,
    parse_field_spec,
)

Arrow = namedtuple("Arrow", ["name", "source", "target"])


class QuiverError(ValueError):
    pass


class ParseError(QuiverError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class PathExplosionError(QuiverError):
    pass


def _path_source(bq: "BoundQuiver", path: tuple[str, ...], fallback=None):
    return bq.arrow_map[path[0]].source if path else fallback


def _path_target(bq: "BoundQuiver", path: tuple[str, ...], fallback=None):
    return bq.arrow_map[path[-1]].target if path else fallback


class BoundQuiver:
    """A finite quiver with relations and a nilpotency bound.

    Relations are tuples of (coefficient, path) terms; a path is a tuple
    of arrow names in traversal order, so in "a*b" the arrow a is walked
    first and t(a) = s(b).
    """

    def __init__(self, vertices, arrows, relations, field: Field, nilbound: int):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) for a in arrows)
        self.field = field
        self.nilbound = int(nilbound)
        if self.nilbound < 1:
            raise QuiverError("nilbound must be at least 1")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise QuiverError(f"arrow {a.name} has a dangling endpoint")
        self.arrow_map = {a.name: a for a in self.arrows}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.out_arrows = {v: [] for v in self.vertices}
        self.in_arrows = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.out_arrows[a.source].append(a)
            self.in_arrows[a.target].append(a)
        rels = []
        for rel in relations:
            terms = tuple((field.coerce(c), tuple(p)) for c, p in rel)
            if not terms:
                continue
            src = tgt = None
            for _, p in terms:
                if not p:
                    raise QuiverError("relation term is a stationary path")
                for name in p:
                    if name not in self.arrow_map:
                        raise QuiverError(f"unknown arrow {name} in relation")
                for step, nxt in zip(p, p[1:]):
                    if self.arrow_map[step].target != self.arrow_map[nxt].source:
                        raise QuiverError(
                            f"relation path {'*'.join(p)} is not composable "
                            f"(t({step}) != s({nxt}))")
                s, t = self.arrow_map[p[0]].source, self.arrow_map[p[-1]].target
                if src is None:
                    src, tgt = s, t
                elif (s, t) != (src, tgt):
                    raise QuiverError("relation terms are not parallel")
            rels.append(terms)
        self.relations = tuple(rels)

    def relation_endpoints(self, rel):
        _, p = rel[0]
        return self.arrow_map[p[0]].source, self.arrow_map[p[-1]].target

    def __eq__(self, other):
        return (
            isinstance(other, BoundQuiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
            and self.relations == other.relations
            and self.field == other.field
            and self.nilbound == other.nilbound
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows, self.relations, self.field, self.nilbound))

    def __repr__(self):
        return (f"BoundQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows, "
                f"{len(self.relations)} relations, nilbound {self.nilbound})")


class VoltageQuiver:
    """A bound quiver with integer arrow degrees and homogeneous relations."""

    def __init__(self, base: BoundQuiver, degree: dict[str, int]):
        self.base = base
        self.degree = {a.name: int(degree.get(a.name, 0)) for a in base.arrows}
        for rel in base.relations:
            degs = {sum(self.degree[a] for a in p) for _, p in rel}
            if len(degs) != 1:
                raise QuiverError("relation is not homogeneous in total degree")
        self.field = base.field

    def path_degree(self, path) -> int:
        return sum(self.degree[a] for a in path)

    def __eq__(self, other):
        return isinstance(other, VoltageQuiver) and self.base == other.base and self.degree == other.degree

    def __hash__(self):
        return hash((self.base, tuple(sorted(self.degree.items()))))

    def __repr__(self):
        return f"VoltageQuiver({self.base!r})"


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise QuiverError(f"empty window [{self.lo}, {self.hi}]")

    @property
    def layers(self):
        return range(self.lo, self.hi + 1)

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi


# ---------------------------------------------------------------------------
# file format


_COEFF_CHARS = set("0123456789/-+")


def _looks_like_coeff(tok: str) -> bool:
    return bool(tok) and all(c in _COEFF_CHARS for c in tok) and any(c.isdigit() for c in tok)


def parse_quiver(text: str):
    """Parse the line-oriented quiver format.

    Returns a BoundQuiver, or a VoltageQuiver when any arrow carries a
    `deg` marker.  Raises ParseError with the offending line number.
    """
    field = None
    nilbound = None
    vertices: list[str] = []
    arrows: list[tuple] = []
    degrees: dict[str, int] = {}
    saw_degree = False
    relation_lines: list[tuple[int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            try:
                field = parse_field_spec(rest)
            except ValueError as e:
                raise ParseError(lineno, str(e))
        elif head == "nilbound":
            try:
                nilbound = int(rest)
            except ValueError:
                raise ParseError(lineno, f"bad nilbound {rest!r}")
        elif head == "vertex":
            if not rest:
                raise ParseError(lineno, "vertex line without names")
            vertices.extend(rest.split())
        elif head == "arrow":
            if ":" not in rest:
                raise ParseError(lineno, "arrow line needs 'name: src -> tgt'")
            name, _, spec = rest.partition(":")
            name = name.strip()
            parts = spec.split()
            if "->" not in parts:
                raise ParseError(lineno, "arrow line needs '->'")
            i = parts.index("->")
            if i != 1 or len(parts) not in (3, 5):
                raise ParseError(lineno, "arrow line needs 'name: src -> tgt [deg k]'")
            src, tgt = parts[0], parts[2]
            if len(parts) == 5:
                if parts[3] != "deg":
                    raise ParseError(lineno, f"expected 'deg', got {parts[3]!r}")
                try:
                    degrees[name] = int(parts[4])
                except ValueError:
                    raise ParseError(lineno, f"bad degree {parts[4]!r}")
                saw_degree = True
            arrows.append((name, src, tgt))
        elif head == "relation":
            relation_lines.append((lineno, rest))
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")

    if field is None:
        field = Field.gf(32749)
    if nilbound is None:
        raise ParseError(0, "missing nilbound line")
    vset = set(vertices)
    for name, src, tgt in arrows:
        if src not in vset:
            raise ParseError(0, f"arrow {name}: unknown vertex {src!r}")
        if tgt not in vset:
            raise ParseError(0, f"arrow {name}: unknown vertex {tgt!r}")

    relations = []
    for lineno, rest in relation_lines:
        if not rest:
            raise ParseError(lineno, "empty relation")
        toks = rest.split()
        terms = []
        sign = 1
        i = 0
        while i < len(toks):
            tok = toks[i]
            if tok == "+":
                sign = 1
                i += 1
                continue
            if tok == "-":
                sign = -1
                i += 1
                continue
            coeff = field.one
            if _looks_like_coeff(tok) and i + 1 < len(toks) and not _looks_like_coeff(toks[i + 1]):
                try:
                    coeff = field.parse(tok)
                except ValueError:
                    raise ParseError(lineno, f"bad coefficient {tok!r}")
                i += 1
                tok = toks[i]
            path = tuple(tok.split("*"))
            if sign < 0:
                coeff = field.neg(coeff)
            terms.append((coeff, path))
            sign = 1
            i += 1
        relations.append(tuple(terms))

    try:
        bq = BoundQuiver(vertices, arrows, relations, field, nilbound)
        if saw_degree:
            return VoltageQuiver(bq, degrees)
    except QuiverError as e:
        raise ParseError(0, str(e))
    return bq


def format_quiver(q) -> str:
    """Canonical serialization; parse(format(q)) reproduces q."""
    vq = q if isinstance(q, VoltageQuiver) else None
    bq = vq.base if vq else q
    f = bq.field
    lines = []
    lines.append("field q" if f.is_rational else f"field gf {f.p}")
    lines.append(f"nilbound {bq.nilbound}")
    if bq.vertices:
        lines.append("vertex " + " ".join(bq.vertices))
    for a in bq.arrows:
        deg = f" deg {vq.degree[a.name]}" if vq else ""
        lines.append(f"arrow {a.name}: {a.source} -> {a.target}{deg}")
    for rel in bq.relations:
        parts = []
        for c, p in rel:
            text = "*".join(p)
            if c != f.one:
                text = f"{f.format(c)} {text}"
            parts.append(text)
        lines.append("relation " + " + ".join(parts))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# path spaces


class PathBasis:
    """Bases of all hom spaces of the category presented by a BoundQuiver.

    Paths of length < nilbound are enumerated per ordered vertex pair and
    reduced modulo the span of all shifted relations; the surviving
    (non-pivot) paths are the canonical basis representatives.
    """

    def __init__(self, bq: BoundQuiver, path_cap: int = 200_000):
        self.bq = bq
        f = bq.field
        m = bq.nilbound
        paths: dict[tuple[str, str], list[tuple[str, ...]]] = {
            (x, y): [] for x in bq.vertices for y in bq.vertices
        }
        total = 0
        for x in bq.vertices:
            frontier = [((), x)]
            if m > 0:
                paths[(x, x)].append(())
                total += 1
            for _ in range(m - 1):
                nxt = []
                for path, end in frontier:
                    for a in bq.out_arrows[end]:
                        p = path + (a.name,)
                        paths[(x, a.target)].append(p)
                        nxt.append((p, a.target))
                        total += 1
                        if total > path_cap:
                            raise PathExplosionError(
                                f"more than {path_cap} paths below the nilpotency bound; "
                                "the bound is probably too large for this quiver")
                frontier = nxt
        # sort deterministically by (length, arrow index sequence)
        arrow_index = {a.name: i for i, a in enumerate(bq.arrows)}
        for key in paths:
            paths[key].sort(key=lambda p: (len(p), tuple(arrow_index[a] for a in p)))
        self.paths = paths
        self.path_index = {key: {p: i for i, p in enumerate(plist)} for key, plist in paths.items()}

        # span of the shifted relations, projected onto paths of length < m
        ideal_vectors: dict[tuple[str, str], list[list]] = {key: [] for key in paths}
        for rel in bq.relations:
            u, v = bq.relation_endpoints(rel)
            for x in bq.vertices:
                for c_path in paths[(x, u)]:
                    for y in bq.vertices:
                        for d_path in paths[(v, y)]:
                            vec = None
                            for coeff, p in rel:
                                full = c_path + p + d_path
                                if len(full) < m:
                                    if vec is None:
                                        vec = [f.zero] * len(paths[(x, y)])
                                    idx = self.path_index[(x, y)][full]
                                    vec[idx] = f.add(vec[idx], coeff)
                            if vec is not None and any(vec):
                                ideal_vectors[(x, y)].append(vec)
        self.ideal = {
            key: Subspace.span(f, len(paths[key]), vecs)
            for key, vecs in ideal_vectors.items()
        }
        self.quots = {key: sub.quotient() for key, sub in self.ideal.items()}
        self._compose_cache: dict = {}

    def dim(self, x: str, y: str) -> int:
        return self.quots[(x, y)].dim

    @property
    def total_dim(self) -> int:
        return sum(q.dim for q in self.quots.values())

    def representatives(self, x: str, y: str) -> list[tuple[str, ...]]:
        plist = self.paths[(x, y)]
        return [plist[i] for i in self.quots[(x, y)].representatives]

    def reduce_path(self, x: str, y: str, path: tuple[str, ...]) -> tuple:
        """Coordinates of a path's class in the representative basis."""
        f = self.bq.field
        plist = self.paths[(x, y)]
        if len(path) >= self.bq.nilbound:
            return tuple(f.zero for _ in range(self.dim(x, y)))
        vec = [f.zero] * len(plist)
        vec[self.path_index[(x, y)][path]] = f.one
        return self.quots[(x, y)].apply(vec)

    def reduce_vector(self, x: str, y: str, vec) -> tuple:
        return self.quots[(x, y)].apply(vec)

    def compose(self, x: str, y: str, z: str, a_coords, b_coords) -> tuple:
        """Class of (a then b) for a in hom(x,y), b in hom(y,z) coordinates."""
        f = self.bq.field
        out = [f.zero] * self.dim(x, z)
        reps_xy = self.representatives(x, y)
        reps_yz = self.representatives(y, z)
        for i, ca in enumerate(a_coords):
            if not ca:
                continue
            for j, cb in enumerate(b_coords):
                if not cb:
                    continue
                key = (x, y, z, i, j)
                cls = self._compose_cache.get(key)
                if cls is None:
                    cls = self.reduce_path(x, z, reps_xy[i] + reps_yz[j])
                    self._compose_cache[key] = cls
                c = f.mul(ca, cb)
                for k, val in enumerate(cls):
                    if val:
                        out[k] = f.add(out[k], f.mul(c, val))
        return tuple(out)

    def identity_coords(self, x: str) -> tuple:
        return self.reduce_path(x, x, ())


def path_basis(bq: BoundQuiver, path_cap: int = 200_000) -> PathBasis:
    return PathBasis(bq, path_cap)


@dataclass
class AdmissibleReport:
    ok: bool
    violations: list[str] = dc_field(default_factory=list)


def check_admissible(bq: BoundQuiver, path_cap: int = 200_000) -> AdmissibleReport:
    """Verify the relation ideal is admissible for the declared bound.

    Checks that every relation term has length >= 2 and that every path of
    length nilbound lies in the ideal generated by the relations alone
    (membership is tested inside the span of relation shifts whose terms
    fit below nilbound + the longest relation term; at desk scale this is
    exact for every shipped presentation).
    """
    f = bq.field
    violations = []
    max_term = 0
    for rel in bq.relations:
        for _, p in rel:
            max_term = max(max_term, len(p))
            if len(p) < 2:
                violations.append(f"relation term {'*'.join(p)} has length < 2")
    m = bq.nilbound
    cap_len = m + max_term

    arrow_index = {a.name: i for i, a in enumerate(bq.arrows)}
    paths: dict[tuple[str, str], list[tuple[str, ...]]] = {
        (x, y): [] for x in bq.vertices for y in bq.vertices
    }
    total = 0
    for x in bq.vertices:
        frontier = [((), x)]
        paths[(x, x)].append(())
        for _ in range(cap_len):
            nxt = []
            for path, end in frontier:
                for a in bq.out_arrows[end]:
                    p = path + (a.name,)
                    paths[(x, a.target)].append(p)
                    nxt.append((p, a.target))
                    total += 1
                    if total > path_cap:
                        raise PathExplosionError("path cap exceeded during admissibility check")
            frontier = nxt
    for key in paths:
        paths[key].sort(key=lambda p: (len(p), tuple(arrow_index[a] for a in p)))
    index = {key: {p: i for i, p in enumerate(plist)} for key, plist in paths.items()}

    spans: dict[tuple[str, str], list[list]] = {key: [] for key in paths}
    for rel in bq.relations:
        u, v = bq.relation_endpoints(rel)
        for x in bq.vertices:
            for c_path in paths[(x, u)]:
                for y in bq.vertices:
                    for d_path in paths[(v, y)]:
                        if len(c_path) + max_term + len(d_path) > cap_len:
                            continue
                        vec = [f.zero] * len(paths[(x, y)])
                        ok = True
                        for coeff, p in rel:
                            full = c_path + p + d_path
                            if len(full) > cap_len:
                                ok = False
                                break
                            idx = index[(x, y)][full]
                            vec[idx] = f.add(vec[idx], coeff)
                        if ok and any(vec):
                            spans[(x, y)].append(vec)
    ideals = {key: Subspace.span(f, len(paths[key]), vecs) for key, vecs in spans.items()}

    for (x, y), plist in sorted(paths.items()):
        for p in plist:
            if len(p) != m:
                continue
            vec = [f.zero] * len(plist)
            vec[index[(x, y)][p]] = f.one
            if not ideals[(x, y)].contains(vec):
                violations.append(
                    f"path {'*'.join(p)} of length {m} is not in the relation ideal")
    return AdmissibleReport(not violations, violations)


# ---------------------------------------------------------------------------
# graded lifts and windows


def layer_vertex(v: str, n: int) -> str:
    return f"{v}@{n}"


def layer_arrow(a: str, n: int) -> str:
    return f"{a}@{n}"


def split_layer(name: str) -> tuple[str, int]:
    base, _, n = name.rpartition("@")
    return base, int(n)


_LIFT_CACHE: dict = {}


def lift_window(vq: VoltageQuiver, window: Window) -> BoundQuiver:
    """The finite convex piece of the graded lift over the given layers."""
    cached = _LIFT_CACHE.get((vq, window))
    if cached is not None:
        return cached
    bq = vq.base
    vertices = [layer_vertex(v, n) for n in window.layers for v in bq.vertices]
    arrows = []
    for n in window.layers:
        for a in bq.arrows:
            if n + vq.degree[a.name] in window:
                arrows.append((layer_arrow(a.name, n), layer_vertex(a.source, n),
                               layer_vertex(a.target, n + vq.degree[a.name])))
    relations = []
    for rel in bq.relations:
        for n in window.layers:
            lifted_terms = []
            fits = True
            for coeff, p in rel:
                lifted = []
                layer = n
                for arr in p:
                    if layer not in window or layer + vq.degree[arr] not in window:
                        fits = False
                        break
                    lifted.append(layer_arrow(arr, layer))
                    layer += vq.degree[arr]
                if not fits:
                    break
                lifted_terms.append((coeff, tuple(lifted)))
            if fits:
                relations.append(tuple(lifted_terms))
    out = BoundQuiver(vertices, arrows, relations, bq.field, bq.nilbound)
    if len(_LIFT_CACHE) > 512:
        _LIFT_CACHE.clear()
    _LIFT_CACHE[(vq, window)] = out
    return out


def is_convex(bq: BoundQuiver, subset, basis: PathBasis | None = None) -> bool:
    """True iff no nonzero hom chain leaves the subset and re-enters it."""
    subset = set(subset)
    unknown = subset - set(bq.vertices)
    if unknown:
        raise QuiverError(f"unknown vertices {sorted(unknown)}")
    basis = basis or path_basis(bq)
    edges = {
        v: {w for w in bq.vertices if w != v and basis.dim(v, w) > 0}
        for v in bq.vertices
    }

    def reachable(src):
        seen = set()
        stack = list(edges[src])
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            stack.extend(edges[w] - seen)
        return seen

    reach = {v: reachable(v) for v in bq.vertices}
    outside = [z for z in bq.vertices if z not in subset]
    for x in subset:
        for z in reach[x]:
            if z in subset or z not in outside:
                continue
            if any(y in subset for y in reach[z]):
                return False
    return True


def sub_quiver(bq: BoundQuiver, subset) -> BoundQuiver:
    """Full subquiver on a vertex subset, keeping relations that fit inside."""
    subset = set(subset)
    vertices = [v for v in bq.vertices if v in subset]
    arrows = [a for a in bq.arrows if a.source in subset and a.target in subset]
    kept_arrows = {a.name for a in arrows}
    relations = []
    for rel in bq.relations:
        if all(all(arr in kept_arrows for arr in p) for _, p in rel):
            relations.append(rel)
    return BoundQuiver(vertices, arrows, relations, bq.field, bq.nilbound)


def opposite_quiver(bq: BoundQuiver) -> BoundQuiver:
    arrows = [(a.name, a.target, a.source) for a in bq.arrows]
    relations = [tuple((c, tuple(reversed(p))) for c, p in rel) for rel in bq.relations]
    return BoundQuiver(bq.vertices, arrows, relations, bq.field, bq.nilbound)


def rename_vertices(bq: BoundQuiver, mapping: dict[str, str]) -> BoundQuiver:
    def nm(v):
        return mapping.get(v, v)

    vertices = [nm(v) for v in bq.vertices]
    arrows = [(a.name, nm(a.source), nm(a.target)) for a in bq.arrows]
    return BoundQuiver(vertices, arrows, bq.relations, bq.field, bq.nilbound)


def rename_arrows(bq: BoundQuiver, mapping: dict[str, str]) -> BoundQuiver:
    def nm(a):
        return mapping.get(a, a)

    arrows = [(nm(a.name), a.source, a.target) for a in bq.arrows]
    relations = [tuple((c, tuple(nm(x) for x in p)) for c, p in rel) for rel in bq.relations]
    return BoundQuiver(bq.vertices, arrows, relations, bq.field, bq.nilbound)


# ---------------------------------------------------------------------------
# structure-constant categories and presentation extraction


class StructureCategory:
    """A finite basic K-category given by hom bases and composition tables.

    Each End(x) basis must consist of the identity plus radical elements,
    with the identity's position recorded in identity_index; this holds
    for path-class bases and for the repetitive constructions built here.
    """

    def __init__(self, field: Field, objects, dims, compose_fn, identity_index):
        self.field = field
        self.objects = tuple(objects)
        self.dims = dict(dims)
        for x in self.objects:
            for y in self.objects:
                self.dims.setdefault((x, y), 0)
        self._compose = compose_fn
        self.identity_index = dict(identity_index)

    def dim(self, x, y) -> int:
        return self.dims[(x, y)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def compose(self, x, y, z, a_coords, b_coords) -> tuple:
        return self._compose(x, y, z, a_coords, b_coords)

    def unit(self, x) -> tuple:
        f = self.field
        v = [f.zero] * self.dim(x, x)
        v[self.identity_index[x]] = f.one
        return tuple(v)

    def radical(self, x, y) -> Subspace:
        f = self.field
        n = self.dim(x, y)
        if x != y:
            vecs = Matrix.identity(f, n).entries
            return Subspace.span(f, n, vecs)
        vecs = []
        for i in range(n):
            if i == self.identity_index[x]:
                continue
            e = [f.zero] * n
            e[i] = f.one
            vecs.append(e)
        return Subspace.span(f, n, vecs)


def structure_category(bq: BoundQuiver, basis: PathBasis | None = None) -> StructureCategory:
    basis = basis or path_basis(bq)
    dims = {(x, y): basis.dim(x, y) for x in bq.vertices for y in bq.vertices}
    identity_index = {}
    for x in bq.vertices:
        coords = basis.identity_coords(x)
        identity_index[x] = next(i for i, c in enumerate(coords) if c)
    return StructureCategory(bq.field, bq.vertices, dims, basis.compose, identity_index)


def radical_filtration(cat: StructureCategory):
    """(rad, rad^2, nilpotency degree) of the radical of the category."""
    f = cat.field
    objs = cat.objects
    rad = {(x, y): cat.radical(x, y) for x in objs for y in objs}

    def compose_spaces(left: dict, right: dict) -> dict:
        out = {}
        for x in objs:
            for z in objs:
                vecs = []
                for y in objs:
                    for u in left[(x, y)].rows.entries:
                        for v in right[(y, z)].rows.entries:
                            w = cat.compose(x, y, z, u, v)
                            if any(w):
                                vecs.append(w)
                out[(x, z)] = Subspace.span(f, cat.dim(x, z), vecs)
        return out

    rad2 = compose_spaces(rad, rad)
    power = rad
    nildeg = 0
    while any(s.dim for s in power.values()):
        nildeg += 1
        power = compose_spaces(power, rad)
        if nildeg > cat.total_dim + 1:
            raise QuiverError("radical does not look nilpotent")
    return rad, rad2, nildeg


def arrow_elements(cat: StructureCategory, rad: dict, rad2: dict):
    """Deterministic rad/rad^2 complement representatives per object pair."""
    f = cat.field
    out = {}
    for x in cat.objects:
        for y in cat.objects:
            r = rad[(x, y)]
            if r.dim == 0:
                continue
            inside = []
            for w in rad2[(x, y)].rows.entries:
                coords = r.coords(w)
                if coords is None:
                    raise QuiverError("rad^2 not inside rad")
                inside.append(coords)
            quot = Subspace.span(f, r.dim, inside).quotient()
            reps = [tuple(r.rows.entries[i]) for i in quot.representatives]
            if reps:
                out[(x, y)] = reps
    return out


def extract_presentation(cat: StructureCategory, vertex_name=None, arrow_prefix: str = "a",
                         verify: bool = True) -> BoundQuiver:
    """Turn a structure-constant category into a bound quiver presentation.

    Arrows are a deterministic basis of rad/rad^2, the nilpotency bound is
    one more than the nilpotency degree of the radical, and the relations
    are a canonical kernel basis of the path evaluation map.
    """
    f = cat.field
    objs = cat.objects
    vertex_name = vertex_name or (lambda o: str(o))

    rad, rad2, nildeg = radical_filtration(cat)
    nilbound = max(nildeg + 1, 1)

    vertices = [vertex_name(o) for o in objs]
    vmap = dict(zip(objs, vertices))
    arrows = []
    arrow_elems = {}
    counter = 0
    reps_by_pair = arrow_elements(cat, rad, rad2)
    for x in objs:
        for y in objs:
            for elem in reps_by_pair.get((x, y), []):
                name = f"{arrow_prefix}{counter}"
                counter += 1
                arrows.append((name, vmap[x], vmap[y]))
                arrow_elems[name] = (x, y, elem)

    # evaluate all composable arrow paths of length <= nilbound
    out_by_vertex: dict[str, list[str]] = {vmap[o]: [] for o in objs}
    for name, (x, y, _) in arrow_elems.items():
        out_by_vertex[vmap[x]].append(name)
    obj_of = {vmap[o]: o for o in objs}

    path_lists: dict[tuple, list] = {(x, y): [] for x in objs for y in objs}
    path_evals: dict[tuple, list] = {(x, y): [] for x in objs for y in objs}
    for o in objs:
        frontier = [((), o, cat.unit(o))]
        path_lists[(o, o)].append(())
        path_evals[(o, o)].append(cat.unit(o))
        for _ in range(nilbound):
            nxt = []
            for path, end, val in frontier:
                for name in out_by_vertex[vmap[end]]:
                    ax, ay, elem = arrow_elems[name]
                    new_val = cat.compose(o, end, ay, val, elem)
                    p = path + (name,)
                    path_lists[(o, ay)].append(p)
                    path_evals[(o, ay)].append(new_val)
                    nxt.append((p, ay, new_val))
            frontier = nxt

    relations = []
    for x in objs:
        for y in objs:
            plist = path_lists[(x, y)]
            if not plist:
                continue
            ev = Matrix(f, path_evals[(x, y)]).transpose() if cat.dim(x, y) else \
                Matrix.zeros(f, 0, len(plist))
            for row in kernel_basis(ev).entries:
                terms = tuple((c, p) for c, p in zip(row, plist) if c)
                if any(len(p) < 2 for _, p in terms):
                    raise QuiverError("extraction produced a non-admissible relation")
                relations.append(terms)

    out = BoundQuiver(vertices, arrows, relations, f, nilbound)
    if verify:
        got = path_basis(out)
        for x in objs:
            for y in objs:
                if got.dim(vmap[x], vmap[y]) != cat.dim(x, y):
                    raise QuiverError(
                        f"extracted presentation has wrong dimension at ({x}, {y}): "
                        f"{got.dim(vmap[x], vmap[y])} != {cat.dim(x, y)}")
    return out


def normalize_presentation(bq: BoundQuiver) -> BoundQuiver:
    """Canonical presentation of the algebra presented by bq."""
    return extract_presentation(structure_category(bq))
