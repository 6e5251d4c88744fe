import pytest

from zipfold import (
    ZipfoldError,
    cut_and_unfold,
    embed,
    emit_svg,
    enumerate_geodesics,
    glue_halving,
    svg_net,
    svg_overlay,
    svg_polygon,
    tetra_metric,
)


def test_polygon_svg_structure(regular_hexagon):
    doc = svg_polygon(regular_hexagon)
    assert doc.startswith("<svg")
    assert doc.count("<polygon") == 1
    assert doc.count("<text") == 6
    assert "v0" in doc and "v5" in doc


def test_net_svg_has_three_dashed_creases(regular_hexagon):
    tet = embed(tetra_metric(glue_halving(regular_hexagon, 0)))
    doc = svg_net(cut_and_unfold(tet))
    assert doc.count("<line") == 3
    assert doc.count("stroke-dasharray") == 3
    assert doc.count("<polygon") == 1


def test_svg_byte_stable(regular_hexagon):
    assert svg_polygon(regular_hexagon) == svg_polygon(regular_hexagon)
    tet = embed(tetra_metric(glue_halving(regular_hexagon, 1)))
    net = cut_and_unfold(tet)
    assert svg_net(net) == svg_net(net)


def test_coordinates_have_nine_decimals(regular_hexagon):
    doc = svg_polygon(regular_hexagon)
    first = doc.split('points="')[1].split('"')[0].split()[0]
    x, y = first.split(",")
    assert len(x.split(".")[1]) == 9
    assert len(y.split(".")[1]) == 9


def test_overlay_draws_copies_and_path(regular_hexagon):
    import math

    g = glue_halving(regular_hexagon, 0)
    enum = enumerate_geodesics(g, 0, 1, budget=math.sqrt(7) + 1e-6)
    spiral = next(p for p in enum.paths if p.crossings > 0)
    doc = svg_overlay(g, spiral)
    assert doc.count("<polygon") == len(spiral.transforms)
    assert doc.count("<line") == 1


def test_emit_svg_dispatch(regular_hexagon):
    tet = embed(tetra_metric(glue_halving(regular_hexagon, 0)))
    net = cut_and_unfold(tet)
    assert emit_svg(net) == svg_net(net)
    assert emit_svg(regular_hexagon) == svg_polygon(regular_hexagon)


def test_emit_svg_rejects_empty():
    with pytest.raises(ZipfoldError):
        emit_svg(None)
