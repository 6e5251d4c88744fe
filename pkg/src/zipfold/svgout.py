"""Deterministic SVG emitters for polygons, nets, and development overlays.

Coordinates are written with 9 decimal digits and no timestamps, so equal
inputs produce byte-identical documents.  The y axis is flipped into screen
convention via a group transform rather than by touching coordinates.
"""

from .errors import ZipfoldError
from .geometry import Rigid

_PRECISION = 9


def _fmt(v):
    return f"{v:.{_PRECISION}f}"


def _bounds(points, margin=0.35):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (
        min(xs) - margin,
        min(ys) - margin,
        (max(xs) - min(xs)) + 2 * margin,
        (max(ys) - min(ys)) + 2 * margin,
    )


def _document(points, body):
    x, y, w, h = _bounds(points)
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(x)} {_fmt(-y - h)} {_fmt(w)} {_fmt(h)}">\n'
        '<g transform="scale(1,-1)" stroke-linecap="round">\n'
    )
    return head + body + "</g>\n</svg>\n"


def _poly_element(points, stroke, fill="none", width=0.02, dashed=False, cls=None):
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    dash = ' stroke-dasharray="0.08,0.05"' if dashed else ""
    klass = f' class="{cls}"' if cls else ""
    return (
        f'<polygon{klass} points="{coords}" fill="{fill}" stroke="{stroke}" '
        f'stroke-width="{_fmt(width)}"{dash} />\n'
    )


def _line_element(p, q, stroke, width=0.015, dashed=True):
    dash = ' stroke-dasharray="0.06,0.05"' if dashed else ""
    return (
        f'<line x1="{_fmt(p[0])}" y1="{_fmt(p[1])}" x2="{_fmt(q[0])}" y2="{_fmt(q[1])}" '
        f'stroke="{stroke}" stroke-width="{_fmt(width)}"{dash} />\n'
    )


def _label_element(p, text):
    return (
        f'<text x="{_fmt(p[0])}" y="{_fmt(-p[1])}" font-size="0.12" '
        f'transform="scale(1,-1)" fill="#444444">{text}</text>\n'
    )


def svg_polygon(poly):
    pts = poly.vertices
    body = _poly_element(pts, "#1a1a1a", cls="boundary")
    for i, p in enumerate(pts):
        body += _label_element(p, f"v{i}")
    return _document(pts, body)


def svg_net(net):
    body = _poly_element(net.boundary, "#b03030", width=0.025, cls="zipper-boundary")
    for p, q, name in net.creases:
        body += _line_element(p, q, "#305090", dashed=True)
    for p, label in zip(net.boundary, net.boundary_labels):
        body += _label_element(p, label)
    return _document(net.boundary, body)


def svg_overlay(gluing, path):
    """Developed copies of the polygon with the straightened geodesic on top."""
    base = gluing.polygon.vertices
    pts_all = []
    body = ""
    for rot_re, rot_im, tr_re, tr_im, mirrored in path.transforms:
        tr = Rigid(complex(rot_re, rot_im), complex(tr_re, tr_im), mirrored)
        copy = [
            (tr.apply(complex(x, y)).real, tr.apply(complex(x, y)).imag) for x, y in base
        ]
        pts_all.extend(copy)
        body += _poly_element(copy, "#999999", width=0.012, cls="copy")
    start = path.transforms[0]
    tr0 = Rigid(complex(start[0], start[1]), complex(start[2], start[3]), start[4])
    p0 = tr0.apply(complex(*base[path.source_vertex]))
    last = path.transforms[-1]
    trn = Rigid(complex(last[0], last[1]), complex(last[2], last[3]), last[4])
    p1 = trn.apply(complex(*base[path.target_vertex]))
    body += _line_element((p0.real, p0.imag), (p1.real, p1.imag), "#b03030", width=0.03, dashed=False)
    pts_all.extend([(p0.real, p0.imag), (p1.real, p1.imag)])
    return _document(pts_all, body)


def emit_svg(obj, gluing=None):
    """Dispatch on the object kind; raises on empty/unsupported input."""
    if obj is None:
        raise ZipfoldError("nothing to render")
    if hasattr(obj, "creases"):
        return svg_net(obj)
    if hasattr(obj, "vertices"):
        if not obj.vertices:
            raise ZipfoldError("nothing to render")
        return svg_polygon(obj)
    if hasattr(obj, "transforms"):
        if gluing is None:
            raise ZipfoldError("geodesic overlays need the gluing for context")
        return svg_overlay(gluing, obj)
    raise ZipfoldError(f"cannot render object of type {type(obj).__name__}")
