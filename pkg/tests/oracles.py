"""Independent brute-force oracles for the geodesic engine tests.

This module deliberately re-implements development from scratch with a
different representation (2x2 rotation matrices instead of complex
arithmetic) and a different search strategy (exhaustive depth-limited DFS
over crossing sequences, no pruning other than an admissible distance cut).
Results are compared against the production engine; the two sides share no
code beyond the gluing data structure.
"""

import itertools
import math

import numpy as np


def _mat_from_pairs(src0, src1, dst0, dst1):
    """Rotation + translation taking src0->dst0 and src1->dst1 (2x3 matrix)."""
    vs = src1 - src0
    vd = dst1 - dst0
    ang = math.atan2(vd[1], vd[0]) - math.atan2(vs[1], vs[0])
    c, s = math.cos(ang), math.sin(ang)
    rot = np.array([[c, -s], [s, c]])
    trans = dst0 - rot @ src0
    return rot, trans


class BruteForceDeveloper:
    def __init__(self, gluing):
        self.pts = np.asarray(gluing.polygon.vertices, dtype=float)
        self.n = len(self.pts)
        self.partner = {}
        self.step = {}
        for ident in gluing.identifications:
            ea = self._edge_index(ident.a0, ident.a1)
            eb = self._edge_index(ident.b0, ident.b1)
            self.partner[ea] = eb
            self.partner[eb] = ea
            self.step[ea] = _mat_from_pairs(
                self.pts[ident.b0], self.pts[ident.b1], self.pts[ident.a0], self.pts[ident.a1]
            )
            self.step[eb] = _mat_from_pairs(
                self.pts[ident.a0], self.pts[ident.a1], self.pts[ident.b0], self.pts[ident.b1]
            )
        self.cone_points = gluing.cone_points

    def _edge_index(self, u, v):
        if (u + 1) % self.n == v:
            return u
        assert (v + 1) % self.n == u
        return v

    def _apply(self, rot, trans, p):
        return rot @ p + trans

    def _edge_seg(self, rot, trans, j):
        return (
            self._apply(rot, trans, self.pts[j]),
            self._apply(rot, trans, self.pts[(j + 1) % self.n]),
        )

    @staticmethod
    def _seg_dist(p, a, b):
        ab = b - a
        denom = float(ab @ ab)
        if denom < 1e-30:
            return float(np.hypot(*(p - a)))
        t = min(1.0, max(0.0, float((p - a) @ ab) / denom))
        return float(np.hypot(*(p - a - t * ab)))

    @staticmethod
    def _crossing(p0, p1, a, b):
        d1 = p1 - p0
        d2 = b - a
        denom = d1[0] * d2[1] - d1[1] * d2[0]
        if abs(denom) < 1e-15:
            return None
        w = a - p0
        t = (w[0] * d2[1] - w[1] * d2[0]) / denom
        u = (w[0] * d1[1] - w[1] * d1[0]) / denom
        if u <= 0.0 or u >= 1.0:
            return None
        return t

    def _segment_valid(self, s, end, seq, transforms):
        """Check that s->end crosses exactly the developed edges in seq."""
        # the segment must cross each recorded edge at increasing parameters
        params = []
        u_prev = 0.0
        for (rot, trans), j in zip(transforms[:-1], seq):
            a, b = self._edge_seg(rot, trans, j)
            t = self._crossing(s, end, a, b)
            if t is None or t <= u_prev + 1e-12 or t >= 1.0 - 1e-12:
                return False
            u_prev = t
            params.append(t)
        # no other edge of any visited copy may be crossed in between
        bounds = [0.0] + params + [1.0]
        for k, (rot, trans) in enumerate(transforms):
            for j in range(self.n):
                a, b = self._edge_seg(rot, trans, j)
                t = self._crossing(s, end, a, b)
                if t is None:
                    continue
                if bounds[k] + 1e-12 < t < bounds[k + 1] - 1e-12:
                    expected = k < len(seq) and j == seq[k]
                    if not expected:
                        return False
        # clearance: no developed vertex image inside the open segment
        for rot, trans in transforms:
            for p in self.pts:
                w = self._apply(rot, trans, p)
                if np.hypot(*(w - s)) < 1e-9 or np.hypot(*(w - end)) < 1e-9:
                    continue
                if self._seg_dist(w, s, end) < 1e-9:
                    return False
        return True

    def distances_to(self, src_cone_idx, dst_cone_idx, budget, max_depth=6):
        """All realized geodesic lengths <= budget up to the crossing depth.

        Exhaustive: every crossing sequence of length <= max_depth is
        developed (minus immediate re-crossings), and every target image is
        tested with the straight-segment validity check.
        """
        src = self.cone_points[src_cone_idx].vertices
        dst = self.cone_points[dst_cone_idx].vertices
        found = []

        def recurse(s, seq, transforms, entry):
            rot, trans = transforms[-1]
            for tv in dst:
                end = self._apply(rot, trans, self.pts[tv])
                d = float(np.hypot(*(end - s)))
                if d <= budget + 1e-12 and self._segment_valid(s, end, seq, transforms):
                    found.append((d, tuple(seq)))
            if len(seq) >= max_depth:
                return
            for j in range(self.n):
                if j == entry:
                    continue
                a, b = self._edge_seg(rot, trans, j)
                if self._seg_dist(s, a, b) > budget:
                    continue
                srot, strans = self.step[j]
                nrot = rot @ srot
                ntrans = rot @ strans + trans
                recurse(s, seq + [j], transforms + [(nrot, ntrans)], self.partner[j])

        eye = (np.eye(2), np.zeros(2))
        for sv in src:
            s = self.pts[sv].copy()
            recurse(s, [], [eye], None)
        return sorted(found)

    def shortest(self, src_cone_idx, dst_cone_idx, budget, max_depth=6):
        found = self.distances_to(src_cone_idx, dst_cone_idx, budget, max_depth)
        return found[0][0] if found else None


def metric_by_brute_force(gluing, budgets=None, max_depth=6):
    """All six cone-point distances from the exhaustive oracle (hexagons)."""
    dev = BruteForceDeveloper(gluing)
    pts = np.asarray(gluing.polygon.vertices, dtype=float)
    out = {}
    labels = "abcd"
    for i, j in itertools.combinations(range(4), 2):
        chord = min(
            float(np.hypot(*(pts[u] - pts[w])))
            for u in gluing.cone_points[i].vertices
            for w in gluing.cone_points[j].vertices
        )
        budget = chord + 1e-6 if budgets is None else budgets[(i, j)]
        out[labels[i] + labels[j]] = dev.shortest(i, j, budget, max_depth)
    return out
