import pytest

import strongmark as sm


def test_version():
    assert sm.__version__ == "0.1.0"


def test_schedules():
    s = sm.minimal_shift_schedule(2, 1)
    assert (s.D1, s.D) == (3212, 6424)
    assert sm.minimal_shift_schedule(2, 10).D1 == 279152


def test_rect_markers_hit_every_line():
    sched = sm.minimal_rect_schedule(2, 1)
    side = sched.D0 + 20
    r = sm.Rect([0, 0], [side, side])
    M = sm.strong_rect_markers(r, sched)
    assert len(M) > 0
    assert sm.check_spacing_flat(M, 1).passed
    for axis in (0, 1):
        assert sm.check_axis_hitting_rect(M, r, axis).passed


def test_marker_text_round_trip():
    M = sm.MarkerSet(2, 3, [(5, 1), (0, 0)])
    assert M.points() == [[0, 0], [5, 1]]
    back = sm.MarkerSet.from_text(M.to_text())
    assert back == M
    assert (5, 1) in back


def test_spacing_failure_has_witness():
    M = sm.MarkerSet(2, 3, [(0, 0), (1, 2)])
    r = sm.check_spacing_flat(M, 3)
    assert not r
    assert r.worst == 2
    assert len(r.witness) == 2


def test_shift_markers_on_a_torus():
    s = sm.minimal_shift_schedule(1, 100)
    w = sm.World.torus([3 * (s.D1 + 1) + 1])
    t = sm.build_tiling(w, s.D1, sm.TilingStyle.Brick, 1)
    assert t.violations() == []
    M = sm.strong_shift_markers(t, s)
    assert sm.check_spacing(M, 100, w).passed
    assert sm.check_axis_hitting(M, w, 0, s.D).passed

    c = sm.edge_coloring(w, M)
    assert sm.check_coloring(c, 3).passed
    assert set(c.colors_used()) <= {1, 2, 3}


def test_offset_color_cases():
    assert sm.offset_color(4, 6, 1, 2) == 1
    assert sm.offset_color(10, 7, 1, 2) == 5
    assert sm.offset_color(3, 4, 1, 2) == 3


def test_tree_section():
    M = sm.MarkerSet(2, 10, [(10, 10), (10, 22)])
    t = sm.tree_section(sm.World.window([40, 60]), M)
    assert t.k == [11, -1]
    assert t.parent == [1, -1]
    rep = sm.verify_tree(t, True)
    assert rep.report.passed
    assert rep.max_degree <= 3


def test_slanted_constants_are_python_ints():
    c = sm.slanted_constants(2, 2, [1, 1], 0)
    assert isinstance(c["H"], int)
    assert c["H"] > 0


def test_brute_force_oracle():
    size, witness = sm.brute_min_marker(sm.Rect([0, 0], [3, 3]), 2, [[1, 0], [0, 1]], 100000)
    assert size is not None
    assert len(witness) == size


def test_errors_are_raised():
    with pytest.raises(sm.Error, match="SpacingTooSmall|spacing"):
        sm.edge_coloring(sm.World.torus([500]), sm.MarkerSet(1, 99, [(0,)]))
    with pytest.raises(sm.Error):
        sm.MarkerSet.from_text("garbage")
