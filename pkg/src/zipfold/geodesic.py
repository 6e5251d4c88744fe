"""Geodesics between cone points of a zipped polygon, by planar development.

The glued surface is flat away from its cone points, so a geodesic that
leaves the polygon through an identified boundary edge continues straight in
a fresh isometric copy of the polygon laid across that edge.  Unrolling the
whole crossing sequence turns every geodesic into a straight segment from
the source vertex to some developed image of the target vertex.  The search
therefore works on "developments": placements of polygon copies reached by
a sequence of edge crossings.

Two facts keep the search small and exact:

* A valid candidate is a straight segment from the source, so only
  directions that thread every crossed edge in order can matter.  Each node
  carries the interval of admissible directions (always narrower than pi),
  and edges are clipped against it; an empty clip kills the branch.
* The distance from the source to the clipped part of the last crossed edge
  is a lower bound for every path through that node, which makes best-first
  expansion admissible: once the bound exceeds the budget the search is
  complete.

Candidates are never trusted from search state alone.  Each one is
re-traced from scratch: the segment is pushed through the copies, the
induced crossing sequence must reproduce the node's sequence, the composed
transform must match, and the open segment must clear every developed
cone-point image by the clearance tolerance (a geodesic cannot pass through
a positively curved cone point).

Perimeter-halving transitions come out orientation preserving: the zipped
arcs are parameterized from the same fold vertex, so the copy across an
edge is a rotated (never mirrored) polygon.  The mirrored flag travels with
every transform anyway and is asserted False throughout this pipeline.
"""

import heapq
import math
from dataclasses import dataclass

from .embed import TetraMetric
from .errors import GeodesicError, GeodesicNotFoundError
from .geometry import (
    IDENTITY,
    bearing,
    point_segment_distance,
    rigid_from_segment,
    segment_crossing_param,
)
from .polygon import validate

TWO_PI = 2.0 * math.pi
OVERHANG_BOUND = 1.0 - math.sqrt(3.0) / 2.0
ENTRY_ANGLE = 2.0 * math.asin(OVERHANG_BOUND / 2.0)

FOUND = "found"
NOT_FOUND = "not_found"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class GeodesicPath:
    source: tuple  # cone-point vertex indices
    target: tuple
    source_vertex: int  # representative the development started from
    target_vertex: int  # representative whose image the segment ends at
    length: float
    edge_path: tuple  # polygon edge indices crossed, in order
    identifications: tuple  # ((a0, a1), (b0, b1)) per crossing
    local_segments: tuple  # per-copy ((x, y), (x, y)) pieces in polygon coords
    transforms: tuple  # (rot_re, rot_im, tr_re, tr_im, mirrored) per copy

    @property
    def crossings(self):
        return len(self.edge_path)

    def to_dict(self):
        """Structured dump: crossing sequence plus per-copy transforms."""
        return {
            "source": list(self.source),
            "target": list(self.target),
            "source_vertex": self.source_vertex,
            "target_vertex": self.target_vertex,
            "length": self.length,
            "crossings": [
                {"edge_a": list(a), "edge_b": list(b)} for a, b in self.identifications
            ],
            "segments": [[list(p), list(q)] for p, q in self.local_segments],
            "transforms": [
                {
                    "rot": [t[0], t[1]],
                    "translation": [t[2], t[3]],
                    "mirrored": t[4],
                }
                for t in self.transforms
            ],
        }


@dataclass(frozen=True)
class ShortestResult:
    status: str
    path: GeodesicPath | None
    developments: int

    @property
    def found(self):
        return self.status == FOUND

    @property
    def length(self):
        if self.path is None:
            raise GeodesicNotFoundError("no geodesic found")
        return self.path.length


@dataclass(frozen=True)
class EnumerationResult:
    paths: tuple
    complete: bool
    developments: int


@dataclass(frozen=True)
class DiskReport:
    status: str  # "empty" | "nonempty" | "inconclusive"
    center: tuple
    radius: float
    witness: tuple | None  # (cone_vertices, distance) for the closest intruder

    @property
    def empty(self):
        if self.status == INCONCLUSIVE:
            raise GeodesicError("disk check inconclusive: search budget exhausted")
        return self.status == "empty"


@dataclass(frozen=True)
class OverhangReport:
    center: tuple
    radius: float
    max_width: float
    per_edge: tuple  # (vertex, edge_index, width)
    bound: float
    beta_rad: float

    @property
    def beta_deg(self):
        return math.degrees(self.beta_rad)

    @property
    def within_bound(self):
        return self.max_width <= self.bound + 1e-9


class _Node:
    __slots__ = ("transform", "entry_edge", "cone", "edge_path")

    def __init__(self, transform, entry_edge, cone, edge_path):
        self.transform = transform
        self.entry_edge = entry_edge
        self.cone = cone  # None = all directions, else (lo, width)
        self.edge_path = edge_path


class DevelopmentEngine:
    """Per-gluing machinery for developing copies and searching geodesics."""

    def __init__(self, gluing, dev_cap=100000, clearance=1e-9):
        self.gluing = gluing
        self.dev_cap = int(dev_cap)
        self.clearance = float(clearance)
        self.points = gluing.polygon.as_complex()
        self.n = len(self.points)
        # edge j joins vertex j and j+1 (mod n)
        self.partner = [None] * self.n
        self.transition = [None] * self.n
        self.ident_of_edge = [None] * self.n
        for ident in gluing.identifications:
            ea = self._edge_index(ident.a0, ident.a1)
            eb = self._edge_index(ident.b0, ident.b1)
            pa0, pa1 = self.points[ident.a0], self.points[ident.a1]
            pb0, pb1 = self.points[ident.b0], self.points[ident.b1]
            self.partner[ea] = eb
            self.partner[eb] = ea
            # crossing out through edge a: lay a copy with its edge b on a
            self.transition[ea] = rigid_from_segment(pb0, pb1, pa0, pa1)
            self.transition[eb] = rigid_from_segment(pa0, pa1, pb0, pb1)
            self.ident_of_edge[ea] = ident
            self.ident_of_edge[eb] = ident
        if any(p is None for p in self.partner):
            raise GeodesicError("gluing does not cover every boundary edge")

    def _edge_index(self, u, v):
        if (u + 1) % self.n == v:
            return u
        if (v + 1) % self.n == u:
            return v
        raise GeodesicError(f"({u}, {v}) is not a boundary edge")

    def _edge_points(self, j, transform):
        a = transform.apply(self.points[j])
        b = transform.apply(self.points[(j + 1) % self.n])
        return a, b

    # -- direction-cone bookkeeping -----------------------------------------

    @staticmethod
    def _interval_of_segment(s, a, b):
        """Bearing interval subtended at s by segment [a, b], width < pi.

        Returns (lo, width, p_lo, p_hi) with p_lo/p_hi the segment endpoints
        at the interval boundaries, or None for radially aligned segments.
        """
        wa = a - s
        wb = b - s
        ta = math.atan2(wa.imag, wa.real)
        tb = math.atan2(wb.imag, wb.real)
        width = math.fmod(tb - ta, TWO_PI)
        if width <= -math.pi:
            width += TWO_PI
        elif width > math.pi:
            width -= TWO_PI
        if width < 0:
            ta, tb = tb, ta
            a, b = b, a
            width = -width
        if width < 1e-14:
            return None
        return ta, width, a, b

    @staticmethod
    def _ray_on_line(s, theta, a, b):
        d = complex(math.cos(theta), math.sin(theta))
        ab = b - a
        denom = d.real * ab.imag - d.imag * ab.real
        if abs(denom) < 1e-15:
            return a
        w = a - s
        u = (w.real * d.imag - w.imag * d.real) / denom
        # the clip stays inside the segment by construction; clamp for safety
        return a + min(1.0, max(0.0, u)) * ab

    def _clip_edge(self, s, a, b, cone):
        """Clip developed edge [a, b] against the direction cone from s.

        Returns (new_cone, min_distance) or None when no admissible
        direction meets the edge.
        """
        sub = self._interval_of_segment(s, a, b)
        if sub is None:
            return None
        ta, width, pa, pb = sub
        if cone is None:
            lo, w = ta, width
            qa, qb = pa, pb
        else:
            clo, cw = cone
            off = math.fmod(ta - clo, TWO_PI)
            if off < 0:
                off += TWO_PI
            # edge interval occupies [off, off + width] relative to the cone start
            if off <= cw:
                o1, o2 = off, min(off + width, cw)
            elif off + width >= TWO_PI:
                o1, o2 = 0.0, min(cw, off + width - TWO_PI)
            else:
                return None
            if o2 - o1 < 1e-14:
                return None
            lo, w = clo + o1, o2 - o1
            qa = pa if abs(o1 - off) < 1e-15 else self._ray_on_line(s, clo + o1, pa, pb)
            if abs((off + width) - o2) < 1e-15 or abs((off + width - TWO_PI) - o2) < 1e-15:
                qb = pb
            else:
                qb = self._ray_on_line(s, clo + o2, pa, pb)
        return (lo, w), point_segment_distance(s, qa, qb)

    @staticmethod
    def _cone_contains(cone, theta, slack=1e-9):
        if cone is None:
            return True
        lo, w = cone
        off = math.fmod(theta - lo, TWO_PI)
        if off < 0:
            off += TWO_PI
        return off <= w + slack or off >= TWO_PI - slack

    # -- candidate validation ------------------------------------------------

    def _trace(self, s, end):
        """Push the straight segment s->end through the copies.

        Returns (edge_path, transform_list) with the transform of every copy
        the segment visits, or None when the trace degenerates (grazing
        crossings are settled later by the clearance check).
        """
        transform = IDENTITY
        entry = None
        u = 0.0
        edge_path = []
        transforms = [IDENTITY]
        for _ in range(4 * self.dev_cap + 64):
            best_t = None
            best_j = None
            for j in range(self.n):
                if j == entry:
                    continue
                a, b = self._edge_points(j, transform)
                hit = segment_crossing_param(s, end, a, b)
                if hit is None:
                    continue
                t, _ = hit
                if t <= u + 1e-12 or t >= 1.0 - 1e-12:
                    continue
                if best_t is None or t < best_t:
                    best_t = t
                    best_j = j
            if best_t is None:
                return edge_path, transforms
            u = best_t
            edge_path.append(best_j)
            transform = transform.compose(self.transition[best_j])
            entry = self.partner[best_j]
            transforms.append(transform)
        raise GeodesicError("trace did not terminate; development cap exceeded")

    def _clear_of_cone_images(self, s, end, transforms):
        for tr in transforms:
            for p in self.points:
                w = tr.apply(p)
                if abs(w - s) <= self.clearance or abs(w - end) <= self.clearance:
                    continue
                if point_segment_distance(w, s, end) < self.clearance:
                    return False
        return True

    def _finalize(self, source_cone, target_cone, sv, tv, node, end):
        s = self.points[sv]
        traced = self._trace(s, end)
        if traced is None:
            return None
        edge_path, transforms = traced
        if tuple(edge_path) != tuple(node.edge_path):
            return None
        final = transforms[-1]
        if abs(final.apply(self.points[tv]) - end) > 1e-9:
            return None
        if not node.transform.almost_equal(final, 1e-10):
            return None
        if not self._clear_of_cone_images(s, end, transforms):
            return None
        # split the segment at the crossing points, map pieces to local coords
        params = [0.0]
        transform = IDENTITY
        for j in edge_path:
            a, b = self._edge_points(j, transform)
            hit = segment_crossing_param(s, end, a, b)
            params.append(hit[0])
            transform = transform.compose(self.transition[j])
        params.append(1.0)
        seg = end - s
        locals_ = []
        for k, tr in enumerate(transforms):
            p0 = s + params[k] * seg
            p1 = s + params[k + 1] * seg
            inv_rot = tr.rot.conjugate()
            q0 = inv_rot * (p0 - tr.trans)
            q1 = inv_rot * (p1 - tr.trans)
            locals_.append(((q0.real, q0.imag), (q1.real, q1.imag)))
        idents = tuple(self.ident_of_edge[j].as_pairs() for j in edge_path)
        return GeodesicPath(
            source=tuple(source_cone.vertices),
            target=tuple(target_cone.vertices),
            source_vertex=sv,
            target_vertex=tv,
            length=abs(seg),
            edge_path=tuple(edge_path),
            identifications=idents,
            local_segments=tuple(locals_),
            transforms=tuple(
                (t.rot.real, t.rot.imag, t.trans.real, t.trans.imag, t.mirrored)
                for t in transforms
            ),
        )

    # -- search ---------------------------------------------------------------

    def _search_root(self, source_cone, target_cone, sv, budget, dev_cap, collect, stop_at_first):
        s = self.points[sv]
        targets = target_cone.vertices
        heap = [(0.0, 0, _Node(IDENTITY, None, None, ()))]
        tie = 1
        seen = set()
        pops = 0
        exhausted = False
        best = math.inf
        while heap:
            lb, _, node = heapq.heappop(heap)
            if lb > budget + 1e-12:
                break
            if stop_at_first and lb > best:
                break
            if pops >= dev_cap:
                exhausted = True
                break
            pops += 1
            transform = node.transform
            for tv in targets:
                end = transform.apply(self.points[tv])
                d = abs(end - s)
                if d > budget + 1e-12 or d + 1e-12 < lb:
                    continue
                if d > 1e-12 and not self._cone_contains(node.cone, bearing(end - s)):
                    continue
                path = self._finalize(source_cone, target_cone, sv, tv, node, end)
                if path is not None:
                    key = (sv, tv, path.edge_path)
                    if key not in collect:
                        collect[key] = path
                        best = min(best, path.length)
            for j in range(self.n):
                if j == node.entry_edge:
                    continue
                a, b = self._edge_points(j, transform)
                if abs(a - s) < 1e-12 or abs(b - s) < 1e-12:
                    continue
                clip = self._clip_edge(s, a, b, node.cone)
                if clip is None:
                    continue
                cone2, dist = clip
                lb2 = max(lb, dist)
                if lb2 > budget + 1e-12:
                    continue
                t2 = transform.compose(self.transition[j])
                key = t2.key() + (
                    self.partner[j],
                    round(cone2[0] / 1e-8),
                    round(cone2[1] / 1e-8),
                )
                if key in seen:
                    continue
                seen.add(key)
                heapq.heappush(
                    heap,
                    (lb2, tie, _Node(t2, self.partner[j], cone2, node.edge_path + (j,))),
                )
                tie += 1
        return pops, exhausted

    def _run(self, src_idx, dst_idx, budget, dev_cap, stop_at_first):
        cps = self.gluing.cone_points
        source_cone = cps[src_idx]
        target_cone = cps[dst_idx]
        if source_cone is target_cone:
            raise GeodesicError("source and target cone points coincide")
        if budget <= 0:
            raise GeodesicError("budget must be positive")
        cap = dev_cap if dev_cap is not None else self.dev_cap
        collect = {}
        pops = 0
        exhausted = False
        for sv in source_cone.vertices:
            p, ex = self._search_root(
                source_cone, target_cone, sv, budget, cap, collect, stop_at_first
            )
            pops += p
            exhausted = exhausted or ex
        paths = sorted(collect.values(), key=lambda g: (g.length, g.source_vertex, g.edge_path))
        return paths, pops, exhausted

    def shortest_geodesic(self, src_idx, dst_idx, budget, dev_cap=None):
        paths, pops, exhausted = self._run(src_idx, dst_idx, budget, dev_cap, stop_at_first=True)
        if paths:
            # an exhausted search may still certify its best find if nothing
            # cheaper was left open; be conservative and flag it instead
            status = INCONCLUSIVE if exhausted else FOUND
            return ShortestResult(status, paths[0], pops)
        return ShortestResult(INCONCLUSIVE if exhausted else NOT_FOUND, None, pops)

    def enumerate_geodesics(self, src_idx, dst_idx, budget, dev_cap=None):
        paths, pops, exhausted = self._run(src_idx, dst_idx, budget, dev_cap, stop_at_first=False)
        return EnumerationResult(tuple(paths), not exhausted, pops)


# ---------------------------------------------------------------------------
# high-level queries
# ---------------------------------------------------------------------------

def shortest_geodesic(gluing, src_idx, dst_idx, budget, dev_cap=100000, clearance=1e-9):
    engine = DevelopmentEngine(gluing, dev_cap, clearance)
    return engine.shortest_geodesic(src_idx, dst_idx, budget)


def enumerate_geodesics(gluing, src_idx, dst_idx, budget, dev_cap=100000, clearance=1e-9):
    engine = DevelopmentEngine(gluing, dev_cap, clearance)
    return engine.enumerate_geodesics(src_idx, dst_idx, budget)


def disk_empty(gluing, center_idx, radius=1.0, tol=1e-9, dev_cap=100000, engine=None):
    """Is the open geodesic disk around a cone point free of other cone points?

    A cone point at distance below radius - tol is a witness against
    emptiness.  Budget exhaustion on any query without such a witness makes
    the whole check inconclusive rather than a verdict.
    """
    if radius <= 0:
        raise GeodesicError("disk radius must be positive")
    eng = engine or DevelopmentEngine(gluing, dev_cap)
    center = gluing.cone_points[center_idx]
    witness = None
    saw_inconclusive = False
    for k, other in enumerate(gluing.cone_points):
        if k == center_idx:
            continue
        res = eng.shortest_geodesic(center_idx, k, radius)
        if res.status == FOUND and res.path.length < radius - tol:
            if witness is None or res.path.length < witness[1]:
                witness = (tuple(other.vertices), res.path.length)
        elif res.status == INCONCLUSIVE:
            if res.path is not None and res.path.length < radius - tol:
                witness = (tuple(other.vertices), res.path.length)
            else:
                saw_inconclusive = True
    if witness is not None:
        return DiskReport("nonempty", tuple(center.vertices), radius, witness)
    if saw_inconclusive:
        return DiskReport(INCONCLUSIVE, tuple(center.vertices), radius, None)
    return DiskReport("empty", tuple(center.vertices), radius, None)


def overhang_audit(gluing, center_idx, radius=1.0, cfg=None):
    """Measure how far the radius-r disk at a cone point pokes past the copy.

    For every boundary edge not incident to a representative of the cone
    point, the excursion width is the largest perpendicular distance beyond
    the edge line reached by disk points whose ray from the center actually
    passes through the open edge segment.  Fat hexagons must stay within
    1 - sqrt(3)/2; the implied entry angle 2*asin(bound/2) stays below 8
    degrees.
    """
    points = gluing.polygon.as_complex()
    n = len(points)
    center = gluing.cone_points[center_idx]
    per_edge = []
    max_width = 0.0
    for v in center.vertices:
        s = points[v]
        for j in range(n):
            if j == v or (j + 1) % n == v:
                continue
            a = points[j]
            b = points[(j + 1) % n]
            width = _excursion_width(s, a, b, radius)
            if width > 0.0:
                per_edge.append((v, j, width))
                max_width = max(max_width, width)
    if radius == 1.0:
        rep = validate(gluing.polygon) if cfg is None else validate(gluing.polygon, cfg)
        if rep.fat_ok and max_width > OVERHANG_BOUND + 1e-9:
            raise GeodesicError(
                f"overhang width {max_width:.9f} exceeds {OVERHANG_BOUND:.9f} on a fat source"
            )
    return OverhangReport(
        center=tuple(center.vertices),
        radius=radius,
        max_width=max_width,
        per_edge=tuple(per_edge),
        bound=OVERHANG_BOUND,
        beta_rad=ENTRY_ANGLE,
    )


def _excursion_width(s, a, b, radius):
    """Deepest reach of the radius disk at s beyond directed edge a -> b,
    restricted to rays that actually pass through the open segment.

    The polygon is counterclockwise, so "beyond" is the right side of the
    edge.  A disk point s + r*u sits at signed depth r*(u . n) + f(s) with
    n the outward normal and f(s) <= 0 the signed depth of the center.
    """
    if radius <= 0.0:
        return 0.0
    ab = b - a
    lab = abs(ab)
    if lab < 1e-15:
        return 0.0
    n = complex(ab.imag, -ab.real) / lab  # outward normal
    fs = (s - a).real * n.real + (s - a).imag * n.imag
    if fs >= 0.0:
        return 0.0  # center not strictly inside relative to this edge
    ta = math.atan2((a - s).imag, (a - s).real)
    tb = math.atan2((b - s).imag, (b - s).real)
    span = math.fmod(tb - ta, TWO_PI)
    if span <= -math.pi:
        span += TWO_PI
    elif span > math.pi:
        span -= TWO_PI
    if span < 0:
        ta, tb = tb, ta
        span = -span
    if span < 1e-14:
        return 0.0
    tn = math.atan2(n.imag, n.real)
    off = math.fmod(tn - ta, TWO_PI)
    if off < 0:
        off += TWO_PI
    if off <= span:
        best = radius + fs  # the perpendicular ray exits through the segment
    else:
        gap = min(off - span, TWO_PI - off)
        best = radius * math.cos(gap) + fs
    return max(0.0, best)


def tetra_metric(gluing, cfg=None, dev_cap=100000, clearance=1e-9):
    """Six pairwise geodesic distances between the four cone points.

    The three distances along the zipped boundary get budget 1 + 1e-6 and,
    for a fat validated source, must come out exactly 1 (the glued edges
    are unit and nothing shorter exists).  The remaining three use the
    shortest interior chord between representatives as budget, which always
    suffices because that chord is itself a path on the surface.
    """
    if len(gluing.cone_points) != 4:
        raise GeodesicError("tetrahedron metric needs a hexagon gluing (4 cone points)")
    engine = DevelopmentEngine(gluing, dev_cap, clearance)
    points = gluing.polygon.as_complex()
    rep = validate(gluing.polygon) if cfg is None else validate(gluing.polygon, cfg)

    zipper = set(gluing.zipper_pairs())
    labels = ("a", "b", "c", "d")
    dists = {}
    for i in range(4):
        for j in range(i + 1, 4):
            if (i, j) in zipper or (j, i) in zipper:
                budget = 1.0 + 1e-6
            else:
                chord = min(
                    abs(points[u] - points[w])
                    for u in gluing.cone_points[i].vertices
                    for w in gluing.cone_points[j].vertices
                )
                budget = chord + 1e-6
            res = engine.shortest_geodesic(i, j, budget)
            if not res.found:
                raise GeodesicNotFoundError(
                    f"distance {labels[i]}{labels[j]} not resolved (status {res.status})",
                    status=res.status,
                )
            d = res.path.length
            if rep.fat_ok and ((i, j) in zipper or (j, i) in zipper):
                if abs(d - 1.0) > 1e-9:
                    raise GeodesicError(
                        f"zipper distance {labels[i]}{labels[j]} = {d!r} deviates from 1"
                    )
            dists[labels[i] + labels[j]] = d

    metric = TetraMetric(
        d_ab=dists["ab"],
        d_ac=dists["ac"],
        d_ad=dists["ad"],
        d_bc=dists["bc"],
        d_bd=dists["bd"],
        d_cd=dists["cd"],
    )
    metric.check_triangle_inequalities(1e-9)
    return metric
