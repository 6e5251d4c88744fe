"""Orchestration of the fold / verify / sweep pipelines.

Everything here is pure computation over one polygon (or one seed range);
the CLI layer only parses arguments, calls in, and formats.  Verdict fields
are tri-state ("pass" / "fail" / "inconclusive"): an exhausted geodesic
search never silently counts as either success or failure.
"""

import math
import time
from dataclasses import dataclass, field

from . import gluing as gl
from . import net as netmod
from .embed import congruent_tetrahedra, embed, vertex_angle_sums
from .errors import GeodesicError, MetricError
from .geodesic import (
    FOUND,
    INCONCLUSIVE,
    DevelopmentEngine,
    disk_empty,
    overhang_audit,
    tetra_metric,
)
from .polygon import (
    DEFAULT_TOLERANCES,
    Tolerances,
    check_independence,
    sample_fat_ngon,
    validate,
)

FOUR_PI = 4.0 * math.pi

PASS = "pass"
FAIL = "fail"
INCONC = "inconclusive"


@dataclass(frozen=True)
class PipelineConfig:
    tolerances: Tolerances = DEFAULT_TOLERANCES
    independence_bound: int = 16
    independence_tol: float = 1e-9
    zipper_budget_slack: float = 1e-6
    chord_budget_slack: float = 1e-6
    dev_cap: int = 100000
    sampler_max_attempts: int = 10000
    out_dir: str = "."

    def __post_init__(self):
        if self.independence_bound < 1:
            raise ValueError("independence bound must be >= 1")
        if self.dev_cap < 1 or self.sampler_max_attempts < 1:
            raise ValueError("caps must be >= 1")


DEFAULT_CONFIG = PipelineConfig()


def _tri(ok):
    return PASS if ok else FAIL


def _combine(statuses):
    statuses = list(statuses)
    if any(s == FAIL for s in statuses):
        return FAIL
    if any(s == INCONC for s in statuses):
        return INCONC
    return PASS


@dataclass
class HalvingAudit:
    fold_index: int
    curvatures: tuple = ()
    gauss_bonnet_residual: float = float("nan")
    zipper_lengths: tuple = ()
    zipper_status: str = INCONC
    lemma3_empty_status: str = INCONC
    disk_status: str = INCONC
    disk_witness: tuple | None = None
    overhang_width: float = float("nan")
    metric: object = None
    tetra: object = None
    angle_sum_status: str = INCONC
    net: object = None
    net_simple_status: str = INCONC
    roundtrip_status: str = INCONC
    error: str | None = None

    def intrinsic_statuses(self):
        return (self.zipper_status, self.lemma3_empty_status, self.disk_status)

    def embedded_statuses(self):
        return (self.angle_sum_status, self.net_simple_status, self.roundtrip_status)


def audit_halving(poly, fold_index, cfg=DEFAULT_CONFIG, want_embedding=None):
    """Full per-halving pipeline: gluing, curvatures, geodesics, 3D, net.

    For n > 6 there is no general embedding step, so the audit stops after
    the intrinsic checks (curvatures, zipper distances, disk emptiness).
    Returns (audit, gluing).
    """
    tol = cfg.tolerances
    audit = HalvingAudit(fold_index=fold_index)
    g = gl.glue_halving(poly, fold_index)
    curv = gl.cone_angles(g, tol.tol_curvature)
    audit.curvatures = curv.curvatures
    audit.gauss_bonnet_residual = curv.total - FOUR_PI

    engine = DevelopmentEngine(g, cfg.dev_cap, tol.tol_clearance)

    lengths = []
    statuses = []
    empties = []
    for i, j in g.zipper_pairs():
        res = engine.shortest_geodesic(i, j, 1.0 + cfg.zipper_budget_slack)
        if res.status != FOUND:
            statuses.append(INCONC if res.status == INCONCLUSIVE else FAIL)
            lengths.append(float("nan"))
            continue
        lengths.append(res.path.length)
        statuses.append(_tri(abs(res.path.length - 1.0) <= tol.tol_geodesic))
        enum = engine.enumerate_geodesics(i, j, 1.0 - tol.tol_geodesic)
        if not enum.complete:
            empties.append(INCONC)
        else:
            empties.append(_tri(len(enum.paths) == 0))
    audit.zipper_lengths = tuple(lengths)
    audit.zipper_status = _combine(statuses)
    audit.lemma3_empty_status = _combine(empties)

    disk_statuses = []
    for k in range(len(g.cone_points)):
        rep = disk_empty(g, k, radius=1.0, tol=tol.tol_geodesic, engine=engine)
        if rep.status == "nonempty":
            disk_statuses.append(FAIL)
            audit.disk_witness = rep.witness
        elif rep.status == INCONCLUSIVE:
            disk_statuses.append(INCONC)
        else:
            disk_statuses.append(PASS)
    audit.disk_status = _combine(disk_statuses)

    try:
        audit.overhang_width = overhang_audit(g, 0, radius=1.0, cfg=tol).max_width
    except GeodesicError as exc:
        audit.error = str(exc)

    if want_embedding is None:
        want_embedding = poly.n == 6
    if not want_embedding or poly.n != 6:
        return audit, g

    try:
        metric = tetra_metric(g, cfg=tol, dev_cap=cfg.dev_cap, clearance=tol.tol_clearance)
        audit.metric = metric
        tetra = embed(metric, tol.tol_vol)
        audit.tetra = tetra
    except (GeodesicError, MetricError) as exc:
        audit.error = str(exc)
        mark = (
            INCONC
            if getattr(exc, "status", None) == INCONCLUSIVE
            else FAIL
        )
        audit.angle_sum_status = mark
        audit.net_simple_status = mark
        audit.roundtrip_status = mark
        return audit, g

    sums = vertex_angle_sums(tetra)
    worst = max(
        abs((2.0 * math.pi - sums[label]) - curv.curvatures[k])
        for k, label in enumerate("abcd")
    )
    audit.angle_sum_status = _tri(worst <= tol.tol_angle_sum)

    net = netmod.cut_and_unfold(tetra)
    audit.net = net
    audit.net_simple_status = _tri(netmod.is_simple(net))
    ok, _ = netmod.congruent_to_polygon(net, poly, tol.tol_congruence)
    audit.roundtrip_status = _tri(ok)
    return audit, g


@dataclass
class VerifyOutcome:
    report: object  # ValidationReport
    independence: object
    hypotheses_ok: bool
    forced: bool
    intrinsic_only: bool = False
    audits: list = field(default_factory=list)
    distinct_by_curvature: object = None
    tetra_pairwise_incongruent: str = INCONC
    status: str = INCONC

    def hypothesis_lines(self):
        rep = self.report
        return [
            ("hypothesis.equilateral", _tri(rep.equilateral_ok)),
            ("hypothesis.convex", _tri(rep.strictly_convex)),
            ("hypothesis.fat", _tri(rep.fat_ok)),
            ("hypothesis.independent", _tri(self.independence.all_independent)),
            ("diagonals.at_least_1", _tri(rep.diagonal_ok)),
        ]

    def lemma_lines(self):
        """The lemma chain on the folded surfaces (skipped without audits)."""
        if not self.audits:
            return []
        lines = []
        gb = max(abs(a.gauss_bonnet_residual) for a in self.audits)
        lines.append(("curvature.total_4pi", _tri(gb <= 1e-8)))
        lines.append(("disks.unit_radius_empty", _combine(a.disk_status for a in self.audits)))
        lines.append(("zipper.edges_length_1", _combine(a.zipper_status for a in self.audits)))
        lines.append(
            ("zipper.nothing_shorter", _combine(a.lemma3_empty_status for a in self.audits))
        )
        lines.append(("distinctness.tetrahedra", self.distinct_status()))
        if not self.intrinsic_only:
            lines.append(
                ("embedding.angle_sums_match", _combine(a.angle_sum_status for a in self.audits))
            )
            lines.append(("net.simple", _combine(a.net_simple_status for a in self.audits)))
            lines.append(("net.matches_source", _combine(a.roundtrip_status for a in self.audits)))
        return lines

    def scorecard(self):
        return self.hypothesis_lines() + self.lemma_lines()

    @property
    def lemma_status(self):
        lines = self.lemma_lines()
        return _combine(s for _, s in lines) if lines else INCONC

    def distinct_status(self):
        """Combined distinctness verdict.

        Curvature multiset mismatch alone certifies incongruence; matching
        multisets stay undecided until the embedded congruence test runs.
        """
        curv_ok = (
            self.distinct_by_curvature is not None
            and self.distinct_by_curvature.all_incongruent
        )
        if self.intrinsic_only:
            return PASS if curv_ok else INCONC
        if self.tetra_pairwise_incongruent == PASS or curv_ok:
            return PASS
        return self.tetra_pairwise_incongruent


def verify_polygon(poly, cfg=DEFAULT_CONFIG, force=False):
    """The full audit: hypotheses, then the lemma chain per halving.

    Without force, hypothesis failure short-circuits (status "fail"); with
    force the lemma checks still run (exploration mode) but the overall
    status remains "fail" because the hypotheses do not hold.
    """
    tol = cfg.tolerances
    report = validate(poly, tol)
    independence = check_independence(
        report.angles, cfg.independence_bound, cfg.independence_tol
    )
    hypotheses_ok = report.theorem_ok and independence.all_independent
    outcome = VerifyOutcome(
        report=report,
        independence=independence,
        hypotheses_ok=hypotheses_ok,
        forced=force and not hypotheses_ok,
        intrinsic_only=poly.n != 6,
    )
    if not hypotheses_ok and not force:
        outcome.status = FAIL
        return outcome

    vectors = []
    for i in range(poly.n // 2):
        audit, g = audit_halving(poly, i, cfg)
        outcome.audits.append(audit)
        vectors.append(gl.cone_angles(g, tol.tol_curvature))
    outcome.distinct_by_curvature = gl.distinct_check(vectors, tol.tol_curvature)

    tets = [a.tetra for a in outcome.audits]
    if not outcome.intrinsic_only and all(t is not None for t in tets) and len(tets) >= 2:
        incong = all(
            not congruent_tetrahedra(tets[i], tets[j], tol.tol_congruence)
            for i in range(len(tets))
            for j in range(i + 1, len(tets))
        )
        outcome.tetra_pairwise_incongruent = _tri(incong)

    if hypotheses_ok:
        outcome.status = _combine(s for _, s in outcome.lemma_lines())
    else:
        outcome.status = FAIL
    return outcome


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

SWEEP_COLUMNS = (
    "seed",
    "n",
    "fat",
    "status",
    "angles",
    "gauss_bonnet_max_abs_residual",
    "zipper_max_abs_error",
    "zipper_status",
    "nothing_shorter_status",
    "disk_status",
    "curvature_multisets_distinct",
    "tetra_incongruent",
    "net_simple_status",
    "roundtrip_status",
)


@dataclass
class SweepRecord:
    seed: int
    n: int
    fat: bool
    status: str
    angles: tuple
    gauss_bonnet_max_abs_residual: float
    zipper_max_abs_error: float
    zipper_status: str
    nothing_shorter_status: str
    disk_status: str
    curvature_multisets_distinct: str
    tetra_incongruent: str
    net_simple_status: str
    roundtrip_status: str
    wall_seconds: float  # kept out of the CSV so reports stay byte-stable

    def to_row(self):
        return [
            str(self.seed),
            str(self.n),
            "1" if self.fat else "0",
            self.status,
            ";".join(f"{a:.17g}" for a in self.angles),
            f"{self.gauss_bonnet_max_abs_residual:.3e}",
            f"{self.zipper_max_abs_error:.3e}",
            self.zipper_status,
            self.nothing_shorter_status,
            self.disk_status,
            self.curvature_multisets_distinct,
            self.tetra_incongruent,
            self.net_simple_status,
            self.roundtrip_status,
        ]


def sweep_one(seed, n, cfg=DEFAULT_CONFIG, thin=False):
    """Sample one polygon for the seed and run the full pipeline on it.

    Thin mode samples outside the fat range (control experiments); its per
    record status is the lemma status, since the hypotheses fail there by
    construction.
    """
    t0 = time.perf_counter()
    poly = sample_fat_ngon(
        n,
        seed,
        max_attempts=cfg.sampler_max_attempts,
        independence_bound=cfg.independence_bound,
        independence_tol=cfg.independence_tol,
        fat=not thin,
        require_independent=not thin,
        cfg=cfg.tolerances,
    )
    rep = validate(poly, cfg.tolerances)
    outcome = verify_polygon(poly, cfg, force=thin)

    gb = float("nan")
    zerr = float("nan")
    if outcome.audits:
        gb = max(abs(a.gauss_bonnet_residual) for a in outcome.audits)
        errs = [
            abs(length - 1.0)
            for a in outcome.audits
            for length in a.zipper_lengths
            if not math.isnan(length)
        ]
        saw_nan = any(
            math.isnan(length) for a in outcome.audits for length in a.zipper_lengths
        )
        zerr = float("nan") if saw_nan or not errs else max(errs)

    status = outcome.lemma_status if thin else outcome.status
    record = SweepRecord(
        seed=seed,
        n=n,
        fat=rep.fat_ok,
        status=status,
        angles=rep.angles,
        gauss_bonnet_max_abs_residual=gb,
        zipper_max_abs_error=zerr,
        zipper_status=_combine(a.zipper_status for a in outcome.audits) if outcome.audits else INCONC,
        nothing_shorter_status=_combine(a.lemma3_empty_status for a in outcome.audits)
        if outcome.audits
        else INCONC,
        disk_status=_combine(a.disk_status for a in outcome.audits) if outcome.audits else INCONC,
        curvature_multisets_distinct=_tri(outcome.distinct_by_curvature.all_incongruent)
        if outcome.distinct_by_curvature is not None
        else INCONC,
        tetra_incongruent=outcome.tetra_pairwise_incongruent,
        net_simple_status=_combine(a.net_simple_status for a in outcome.audits)
        if outcome.audits
        else INCONC,
        roundtrip_status=_combine(a.roundtrip_status for a in outcome.audits)
        if outcome.audits
        else INCONC,
        wall_seconds=time.perf_counter() - t0,
    )
    return record, poly


def summarize_records(records):
    total = len(records)
    buckets = {"fat": [r for r in records if r.fat], "thin": [r for r in records if not r.fat]}
    summary = {"total": total}
    for name, rows in buckets.items():
        if not rows:
            continue
        summary[name] = {
            "count": len(rows),
            "pass": sum(1 for r in rows if r.status == PASS),
            "fail": sum(1 for r in rows if r.status == FAIL),
            "inconclusive": sum(1 for r in rows if r.status == INCONC),
        }
    return summary
