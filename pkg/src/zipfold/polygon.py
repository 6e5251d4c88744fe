"""Equilateral convex polygons: validation, construction, sampling, file io.

The polygons handled here have all edges of length 1 and even vertex count
n >= 6.  A polygon is "fat" when every interior angle lies strictly inside
(pi/3, pi); fat polygons are the admissible sources for the folding
pipeline, while weakly convex ones (some angle equal to pi) are kept around
as flagged degenerate inputs for control experiments.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import MalformedPolygonError, SamplingBudgetError, ZipfoldError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances for the whole pipeline.

    Predicate-level checks run at 1e-9; end-to-end congruence checks at
    1e-6 (a double-precision budget for roughly ten compounding steps).
    """

    tol_len: float = 1e-9
    tol_ang: float = 1e-9
    tol_convex: float = 1e-9
    tol_curvature: float = 1e-8
    tol_clearance: float = 1e-9
    tol_geodesic: float = 1e-9
    tol_embed: float = 1e-8
    tol_angle_sum: float = 1e-7
    tol_vol: float = 1e-12
    tol_congruence: float = 1e-6

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            if getattr(self, name) <= 0:
                raise ValueError(f"tolerance {name} must be positive")


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class EquilateralPolygon:
    """Planar polygon given as an ordered (x, y) vertex tuple.

    The constructor only checks basic shape; `validate` is the gate that
    enforces the unit-edge / convexity / fatness hypotheses.
    """

    vertices: tuple

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(verts) < 3:
            raise MalformedPolygonError("polygon needs at least 3 vertices")
        for x, y in verts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise MalformedPolygonError("non-finite vertex coordinate")
        object.__setattr__(self, "vertices", verts)

    @property
    def n(self):
        return len(self.vertices)

    def as_array(self):
        return np.asarray(self.vertices, dtype=float)

    def as_complex(self):
        return [complex(x, y) for x, y in self.vertices]

    def edge_lengths(self):
        pts = self.vertices
        n = len(pts)
        return tuple(
            math.hypot(pts[(i + 1) % n][0] - pts[i][0], pts[(i + 1) % n][1] - pts[i][1])
            for i in range(n)
        )


@dataclass(frozen=True)
class AngleProfile:
    """Interior angles in radians, plus the closure residual of their sum."""

    angles: tuple
    sum_residual: float

    @property
    def n(self):
        return len(self.angles)


@dataclass(frozen=True)
class DiagonalReport:
    lengths: tuple
    min_length: float
    violations: tuple  # indices i with |v_i v_{i+n/2}| < 1 - tol


@dataclass(frozen=True)
class ValidationReport:
    n: int
    equilateral_ok: bool
    edge_max_error: float
    convexity_ok: bool
    strictly_convex: bool
    weak_vertices: tuple
    fat_ok: bool
    fat_violations: tuple
    angle_sum_residual: float
    angle_sum_ok: bool
    diagonal_ok: bool
    min_diagonal: float
    angles: tuple

    @property
    def geometric_ok(self):
        """Unit edges, convex (weakly allowed), consistent angle sum."""
        return self.equilateral_ok and self.convexity_ok and self.angle_sum_ok

    @property
    def theorem_ok(self):
        """Full geometric hypotheses: strictly convex and fat on top."""
        return self.geometric_ok and self.strictly_convex and self.fat_ok and self.diagonal_ok

    def to_dict(self):
        return {
            "n": self.n,
            "equilateral_ok": self.equilateral_ok,
            "edge_max_error": self.edge_max_error,
            "convexity_ok": self.convexity_ok,
            "strictly_convex": self.strictly_convex,
            "weak_vertices": list(self.weak_vertices),
            "fat_ok": self.fat_ok,
            "fat_violations": list(self.fat_violations),
            "angle_sum_residual": self.angle_sum_residual,
            "angle_sum_ok": self.angle_sum_ok,
            "diagonal_ok": self.diagonal_ok,
            "min_diagonal": self.min_diagonal,
            "angles": list(self.angles),
            "geometric_ok": self.geometric_ok,
            "theorem_ok": self.theorem_ok,
        }


def _check_malformed(poly):
    n = poly.n
    if n < 6:
        raise MalformedPolygonError(f"n={n} is below the minimum of 6")
    if n % 2 != 0:
        raise MalformedPolygonError(f"n={n} is odd; perimeter halving needs even n")
    pts = poly.vertices
    for i in range(n):
        for j in range(i + 1, n):
            if math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]) < 1e-12:
                raise MalformedPolygonError(f"repeated vertex: indices {i} and {j}")


def interior_angles(poly):
    """Interior angles from adjacent edge vectors.

    Accepts an EquilateralPolygon or a bare vertex sequence (handy for
    unit-test shapes like the square that the main gate rejects).
    """
    pts = poly.vertices if isinstance(poly, EquilateralPolygon) else tuple(
        (float(x), float(y)) for x, y in poly
    )
    n = len(pts)
    angles = []
    for i in range(n):
        px, py = pts[(i - 1) % n]
        cx, cy = pts[i]
        nx, ny = pts[(i + 1) % n]
        u = (px - cx, py - cy)
        v = (nx - cx, ny - cy)
        cr = u[0] * v[1] - u[1] * v[0]
        dt = u[0] * v[0] + u[1] * v[1]
        ang = math.atan2(abs(cr), dt)
        angles.append(ang)
    residual = sum(angles) - (n - 2) * math.pi
    return AngleProfile(tuple(angles), residual)


def diagonal_lengths(poly, tol_len=1e-9):
    """Lengths of the n/2 opposite-vertex diagonals |v_i v_{i+n/2}|.

    Any diagonal below 1 - tol_len is flagged: for an equilateral convex
    polygon those diagonals can never be shorter than an edge.
    """
    pts = poly.vertices
    n = len(pts)
    half = n // 2
    lengths = []
    violations = []
    for i in range(half):
        j = i + half
        d = math.hypot(pts[j][0] - pts[i][0], pts[j][1] - pts[i][1])
        lengths.append(d)
        if d < 1.0 - tol_len:
            violations.append(i)
    return DiagonalReport(tuple(lengths), min(lengths), tuple(violations))


def validate(poly, cfg=DEFAULT_TOLERANCES):
    """Check every folding hypothesis on an input polygon.

    Returns a ValidationReport; raises MalformedPolygonError for inputs
    that are not even worth a report (odd n, n < 6, repeated vertices).
    Weak convexity (cross product ~ 0 at some vertex) passes the convexity
    check but is flagged and fails fatness.
    """
    _check_malformed(poly)
    pts = poly.vertices
    n = poly.n

    edge_err = max(abs(l - 1.0) for l in poly.edge_lengths())
    equilateral_ok = edge_err <= cfg.tol_len

    crosses = []
    for i in range(n):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        cx, cy = pts[(i + 2) % n]
        crosses.append((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    convexity_ok = all(c >= -cfg.tol_convex for c in crosses)
    weak = tuple((i + 1) % n for i, c in enumerate(crosses) if abs(c) <= cfg.tol_convex)
    strictly_convex = convexity_ok and not weak

    prof = interior_angles(poly)
    lo = math.pi / 3.0 + cfg.tol_ang
    hi = math.pi - cfg.tol_ang
    fat_violations = tuple(i for i, a in enumerate(prof.angles) if not (lo < a < hi))
    fat_ok = convexity_ok and not fat_violations
    angle_sum_ok = abs(prof.sum_residual) <= n * cfg.tol_ang

    diag = diagonal_lengths(poly, cfg.tol_len)

    return ValidationReport(
        n=n,
        equilateral_ok=equilateral_ok,
        edge_max_error=edge_err,
        convexity_ok=convexity_ok,
        strictly_convex=strictly_convex,
        weak_vertices=weak,
        fat_ok=fat_ok,
        fat_violations=fat_violations,
        angle_sum_residual=prof.sum_residual,
        angle_sum_ok=angle_sum_ok,
        diagonal_ok=not diag.violations,
        min_diagonal=diag.min_length,
        angles=prof.angles,
    )


# ---------------------------------------------------------------------------
# rational-dependence screening
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairDependence:
    i: int
    j: int
    status: str  # "dependent" | "independent" | "inconclusive"
    witness: tuple | None  # (a, b) as Fractions: angle_y = a*pi + b*angle_x
    direction: tuple | None  # (x_index, y_index) the witness refers to
    residual: float


@dataclass(frozen=True)
class IndependenceReport:
    bound: int
    tol: float
    pairs: dict = field(repr=False, default_factory=dict)

    @property
    def dependent_pairs(self):
        return tuple(sorted(k for k, v in self.pairs.items() if v.status == "dependent"))

    @property
    def inconclusive_pairs(self):
        return tuple(sorted(k for k, v in self.pairs.items() if v.status == "inconclusive"))

    @property
    def all_independent(self):
        return all(v.status == "independent" for v in self.pairs.values())


def _rational_grids(bound):
    rr, ss = np.meshgrid(np.arange(-bound, bound + 1), np.arange(1, bound + 1), indexing="ij")
    rr = rr.ravel()
    ss = ss.ravel()
    return rr, ss, rr / ss, np.abs(rr) + ss


_GRID_CACHE = {}


def _grids(bound):
    if bound not in _GRID_CACHE:
        _GRID_CACHE[bound] = _rational_grids(bound)
    return _GRID_CACHE[bound]


def _best_witness(x, y, bound, tol):
    """Best (a, b) with y ~ a*pi + b*x over rationals of bounded height.

    Returns (residual, witness) where the witness minimizes first the
    residual-below-tolerance criterion and then |p|+|q|+|r|+|s|.
    """
    rr, ss, bvals, bsize = _grids(bound)
    target = y - bvals * x  # residual to be matched by a*pi
    qs = np.arange(1, bound + 1)
    ps = np.rint(target[:, None] * qs[None, :] / math.pi)
    ok = np.abs(ps) <= bound
    resid = np.abs(target[:, None] - ps * (math.pi / qs[None, :]))
    resid[~ok] = np.inf
    hits = np.argwhere(resid < tol)
    if hits.size:
        best = None
        for bi, qi in hits:
            p = int(ps[bi, qi])
            q = int(qs[qi])
            size = abs(p) + q + int(bsize[bi])
            key = (size, abs(p), q, abs(int(rr[bi])), int(ss[bi]))
            if best is None or key < best[0]:
                best = (key, (Fraction(p, q), Fraction(int(rr[bi]), int(ss[bi]))), resid[bi, qi])
        return float(best[2]), best[1]
    idx = np.unravel_index(np.argmin(resid), resid.shape)
    return float(resid[idx]), None


def check_independence(angles, bound=16, tol=1e-9):
    """Screen all angle pairs for rational dependence y = a*pi + b*x.

    This is a bounded search, not a proof: a hit certifies dependence with
    an explicit rational witness, while "independent" only means no witness
    exists up to the given height bound.  A best residual inside [tol,
    10*tol) is reported as inconclusive since it flips with the tolerance.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    vals = tuple(angles.angles) if isinstance(angles, AngleProfile) else tuple(float(a) for a in angles)
    pairs = {}
    m = len(vals)
    for i in range(m):
        for j in range(i + 1, m):
            res_ij, wit_ij = _best_witness(vals[i], vals[j], bound, tol)
            res_ji, wit_ji = _best_witness(vals[j], vals[i], bound, tol)
            if wit_ij is not None or wit_ji is not None:
                if wit_ij is not None:
                    witness, direction, residual = wit_ij, (i, j), res_ij
                else:
                    witness, direction, residual = wit_ji, (j, i), res_ji
                pairs[(i, j)] = PairDependence(i, j, "dependent", witness, direction, residual)
            else:
                best = min(res_ij, res_ji)
                status = "inconclusive" if best < 10.0 * tol else "independent"
                pairs[(i, j)] = PairDependence(i, j, status, None, None, best)
    return IndependenceReport(bound=bound, tol=tol, pairs=pairs)


# ---------------------------------------------------------------------------
# construction by edge directions + two-link closure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureResult:
    polygons: tuple
    rejected: tuple  # (branch_sign, reason)
    gap_length: float

    @property
    def ok(self):
        return bool(self.polygons)


def solve_closure(directions):
    """Build a unit-edge polygon from the directions of its first n-2 edges.

    Edges e_0 .. e_{n-3} are placed with the given absolute directions; the
    final two unit edges are solved as a two-link chain closing the gap
    back to the start (possible iff the gap chord is at most 2).  Both
    elbow branches are candidate outputs; branches that close into a
    non-convex or non-counterclockwise loop are rejected with a reason.
    """
    dirs = [float(t) for t in directions]
    if len(dirs) < 4:
        raise ValueError("need at least 4 edge directions (hexagon case)")
    n = len(dirs) + 2

    pts = [complex(0.0, 0.0)]
    z = complex(0.0, 0.0)
    for th in dirs:
        z += complex(math.cos(th), math.sin(th))
        pts.append(z)
    gap = -z  # from the last placed vertex back to the origin
    glen = abs(gap)
    if glen > 2.0:
        return ClosureResult((), (("*", f"gap chord length {glen:.6f} exceeds 2"),), glen)
    if glen < 1e-12:
        return ClosureResult((), (("*", "chain already closed; no room for two unit edges"),), glen)

    base = math.atan2(gap.imag, gap.real)
    delta = math.acos(min(1.0, glen / 2.0))
    polygons = []
    rejected = []
    for sign in (1.0, -1.0):
        th4 = base + sign * delta
        elbow = pts[-1] + complex(math.cos(th4), math.sin(th4))
        verts = [(p.real, p.imag) for p in pts] + [(elbow.real, elbow.imag)]
        reason = _closure_reject_reason(verts)
        if reason is None:
            polygons.append(EquilateralPolygon(tuple(verts)))
        else:
            rejected.append(("+" if sign > 0 else "-", reason))
    return ClosureResult(tuple(polygons), tuple(rejected), glen)


def _closure_reject_reason(verts):
    m = len(verts)
    for i in range(m):
        for j in range(i + 1, m):
            if math.hypot(verts[i][0] - verts[j][0], verts[i][1] - verts[j][1]) < 1e-9:
                return "degenerate: coincident vertices"
    area = 0.0
    for i in range(m):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % m]
        area += x0 * y1 - x1 * y0
    if area <= 0:
        return "not counterclockwise"
    for i in range(m):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % m]
        cx, cy = verts[(i + 2) % m]
        if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) < -1e-12:
            return "polygon not convex"
    return None


def regular_ngon(n):
    """Unit-edge regular n-gon with first edge along +x, first vertex at 0."""
    step = TWO_PI / n
    dirs = [k * step for k in range(n - 2)]
    res = solve_closure(dirs)
    if not res.ok:
        raise ZipfoldError(f"regular {n}-gon closure failed unexpectedly")
    return res.polygons[0]


def sample_fat_ngon(
    n,
    seed,
    max_attempts=10000,
    require_independent=True,
    independence_bound=16,
    independence_tol=1e-9,
    turn_margin=1e-3,
    fat=True,
    cfg=DEFAULT_TOLERANCES,
):
    """Rejection-sample a valid unit-edge convex n-gon, deterministic per seed.

    Draws the free turn angles uniformly, closes the chain with two unit
    edges, and keeps the first closure branch that passes validation.  With
    fat=True only fat polygons (all angles strictly inside (pi/3, pi)) are
    accepted; with fat=False any strictly convex equilateral polygon
    qualifies, which is how thin control samples are produced.
    """
    if n < 6 or n % 2:
        raise MalformedPolygonError(f"sampler needs even n >= 6, got {n}")
    rng = np.random.default_rng(seed)
    if fat:
        lo, hi = turn_margin, TWO_PI / 3.0 - turn_margin
    else:
        lo, hi = turn_margin, math.pi - turn_margin
    for attempt in range(1, max_attempts + 1):
        turns = rng.uniform(lo, hi, size=n - 3)
        dirs = [0.0]
        acc = 0.0
        for t in turns:
            acc += t
            dirs.append(acc)
        if acc >= TWO_PI:
            continue
        res = solve_closure(dirs)
        for poly in res.polygons:
            rep = validate(poly, cfg)
            if not (rep.equilateral_ok and rep.strictly_convex and rep.angle_sum_ok):
                continue
            if fat and not rep.fat_ok:
                continue
            if require_independent:
                ind = check_independence(rep.angles, independence_bound, independence_tol)
                if not ind.all_independent:
                    continue
            return poly
    raise SamplingBudgetError(max_attempts)


def sample_fat_hexagon(seed, **kwargs):
    """Hexagon specialization of sample_fat_ngon (the theorem's case)."""
    return sample_fat_ngon(6, seed, **kwargs)


# ---------------------------------------------------------------------------
# file io
# ---------------------------------------------------------------------------

def polygon_from_dict(data):
    """Decode the polygon file schema: either "vertices" or "turns".

    "vertices" is an [[x, y], ...] loop; "turns" is the list of edge
    directions handed to solve_closure.  Mixed files are rejected.
    """
    if not isinstance(data, dict):
        raise MalformedPolygonError("polygon file must contain a JSON object")
    has_v = "vertices" in data
    has_t = "turns" in data
    if has_v and has_t:
        raise MalformedPolygonError('polygon file mixes "vertices" and "turns"')
    if has_v:
        verts = data["vertices"]
        if not isinstance(verts, list) or any(len(p) != 2 for p in verts):
            raise MalformedPolygonError('"vertices" must be a list of [x, y] pairs')
        return EquilateralPolygon(tuple((float(x), float(y)) for x, y in verts))
    if has_t:
        turns = data["turns"]
        if not isinstance(turns, list) or len(turns) < 4:
            raise MalformedPolygonError('"turns" must list at least 4 edge directions')
        res = solve_closure([float(t) for t in turns])
        if not res.ok:
            reasons = "; ".join(r for _, r in res.rejected)
            raise MalformedPolygonError(f"turns do not close into a convex polygon: {reasons}")
        return res.polygons[0]
    raise MalformedPolygonError('polygon file needs "vertices" or "turns"')


def load_polygon(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedPolygonError(f"invalid JSON: {exc}") from exc
    return polygon_from_dict(data)


def save_polygon(poly, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"vertices": [[x, y] for x, y in poly.vertices]}, fh, indent=2)
        fh.write("\n")
