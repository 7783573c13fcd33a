import numpy as np
import pytest

from templeca.formats import (
    CUBE_CORNERS,
    CUBE_FACES,
    FormatError,
    export_obj,
    export_pbm,
    export_slices,
    parse_pbm,
    parse_plan_text,
    parse_slices,
    render_plan_text,
)
from templeca.growth import EmptyPlanError, Termination, Tower, grow_tower
from templeca.lattice import Layer
from templeca.plans import SHIPPED, load_plan, solid_square, stepped_cross, stepped_squares
from templeca.rule_codec import decode_rule


def random_tower(rng):
    h, w = (int(v) for v in rng.integers(1, 9, size=2))
    layers = []
    for _ in range(int(rng.integers(1, 6))):
        a = rng.random((h, w)) < rng.uniform(0.1, 0.9)
        a[rng.integers(h), rng.integers(w)] = True
        layers.append(Layer(a))
    term = Termination(rng.choice([t.value for t in Termination]))
    code = None if rng.random() < 0.2 else int(rng.integers(0, 1024))
    return Tower(tuple(layers), term, code)


# -- plan text ---------------------------------------------------------------

def test_parse_plan_text_examples():
    assert parse_plan_text("##\n##").layer == Layer.full(2, 2)
    assert parse_plan_text("#.\n.#\n").layer == Layer([[1, 0], [0, 1]])


def test_parse_plan_text_ragged():
    with pytest.raises(FormatError, match="row 2"):
        parse_plan_text("##\n#")


@pytest.mark.parametrize(
    "text, match",
    [
        ("", "empty"),
        ("\n", "empty"),
        ("#x\n", "column 2"),
        ("##\r\n##\r\n", "'\\\\r'"),
        ("##\n\n##\n", "row 2"),
    ],
)
def test_parse_plan_text_errors(text, match):
    with pytest.raises(FormatError, match=match):
        parse_plan_text(text)


def test_parse_plan_text_rejects_empty_plan():
    with pytest.raises(EmptyPlanError):
        parse_plan_text("...\n...\n")


def test_plan_text_roundtrip():
    rng = np.random.default_rng(5)
    for _ in range(50):
        a = rng.random(tuple(rng.integers(1, 10, size=2))) < 0.5
        a[0, 0] = True
        layer = Layer(a)
        assert parse_plan_text(render_plan_text(layer)).layer == layer


# -- pbm ---------------------------------------------------------------------

def test_parse_pbm_examples():
    assert parse_pbm(b"P1\n2 2\n1 1 1 1").layer == Layer.full(2, 2)
    doc = parse_pbm(b"P1\n# traced plan\n3 2\n1 0 1\n0 1 0\n", source_name="x.pbm")
    assert doc.layer == Layer([[1, 0, 1], [0, 1, 0]])
    assert doc.source_name == "x.pbm"
    # netpbm allows plain pixels without separators
    assert parse_pbm(b"P1 2 1 10").layer == Layer([[1, 0]])


def test_parse_pbm_empty_plan():
    with pytest.raises(EmptyPlanError):
        parse_pbm(b"P1\n# a comment\n1 1\n0")


@pytest.mark.parametrize(
    "data, match",
    [
        (b"P2\n2 2\n1 1 1 1", "magic"),
        (b"P1\n2 2\n1 1 1", "truncated"),
        (b"P1\n2 2\n1 1 2 1", "0 or 1"),
        (b"P1\n0 2\n", "zero"),
        (b"P1\n2\n", "height"),
        (b"P1\n2 2\n1 1 1 1 1", "extra"),
        (b"P1x\n1 1\n1", "whitespace"),
        (b"P1\n2 2\n\xff", "non-ASCII"),
    ],
)
def test_parse_pbm_errors(data, match):
    with pytest.raises(FormatError, match=match):
        parse_pbm(data)


def test_pbm_roundtrip():
    rng = np.random.default_rng(6)
    for _ in range(50):
        a = rng.random(tuple(rng.integers(1, 12, size=2))) < 0.4
        a[-1, -1] = True
        layer = Layer(a)
        assert parse_pbm(export_pbm(layer)).layer == layer
        assert parse_plan_text(render_plan_text(parse_pbm(export_pbm(layer)).layer)).layer == layer


# -- slices ------------------------------------------------------------------

def test_export_slices_single_voxel():
    tower = Tower((Layer([[1]]),), Termination.EMPTY, 0)
    assert export_slices(tower) == "CA-SLICES 1 1 1 1 EMPTY 0\n#\n"


def test_export_slices_small_pyramid():
    tower = grow_tower(Layer.full(3, 3), decode_rule(512))
    assert export_slices(tower) == (
        "CA-SLICES 1 3 3 2 EMPTY 512\n"
        "###\n###\n###\n"
        "\n"
        "...\n.#.\n...\n"
    )


def test_export_slices_header_uses_width_then_height():
    tower = Tower((Layer([[1, 1, 1]]),), Termination.HEIGHT_LIMIT)
    assert export_slices(tower).splitlines()[0] == "CA-SLICES 1 3 1 1 HEIGHT_LIMIT -"


def test_slices_roundtrip_random():
    rng = np.random.default_rng(1234)
    for _ in range(100):
        tower = random_tower(rng)
        text = export_slices(tower)
        back = parse_slices(text)
        assert back == tower
        assert export_slices(back) == text


GOOD = "CA-SLICES 1 2 2 2 EMPTY 5\n##\n##\n\n#.\n..\n"


@pytest.mark.parametrize(
    "text, match",
    [
        ("", "empty"),
        (GOOD.rstrip("\n"), "newline"),
        (GOOD.replace("CA-SLICES 1 2 2 2", "CA-SLICES 1 2 2 3"), "claims 3 layers"),
        (GOOD.replace("#.\n..", "#.\n...\n"), "line 6"),
        (GOOD.replace("EMPTY", "DONE"), "termination"),
        (GOOD.replace("CA-SLICES 1", "CA-SLICES 2"), "version"),
        (GOOD.replace(" 5\n", " 2000\n"), "rule code"),
        (GOOD + "##\n", "trailing"),
        (GOOD.replace("\n\n", "\n"), "blank separator"),
        (GOOD.replace("#.\n", "#?\n"), "line 5"),
        ("CA-SLICES 1 2 2 1 EMPTY\n##\n##\n", "header"),
        ("CA-SLICES 1 2 2 2 EMPTY 5\n##\n##\n\n..\n..\n", "empty"),
        ("CA-SLICES 1 2 3 1 EMPTY 5\n##\n##\n", "fewer than 3 rows"),
    ],
)
def test_parse_slices_errors(text, match):
    with pytest.raises(FormatError, match=match):
        parse_slices(text)


# -- obj ---------------------------------------------------------------------

def count_lines(text, prefix):
    return sum(1 for line in text.splitlines() if line.startswith(prefix + " "))


def test_obj_single_voxel():
    text = export_obj(Tower((Layer([[1]]),), Termination.EMPTY))
    assert count_lines(text, "v") == 8 and count_lines(text, "f") == 6
    assert text.splitlines()[0] == "v 0 0 0"


def test_obj_two_voxels_no_sharing():
    text = export_obj(Tower((Layer([[1, 1]]),), Termination.EMPTY))
    assert count_lines(text, "v") == 16 and count_lines(text, "f") == 12
    faces = [line for line in text.splitlines() if line.startswith("f ")]
    assert faces[6] == "f 9 10 11 12"


def test_obj_pyramid_counts():
    tower = grow_tower(Layer.full(9, 9), decode_rule(512))
    assert tower.population == 165
    text = export_obj(tower)
    assert count_lines(text, "v") == 1320 and count_lines(text, "f") == 990


def test_obj_empty_tower_rejected():
    with pytest.raises(ValueError):
        export_obj(Tower((Layer.empty(2, 2),), Termination.EMPTY))


def test_obj_voxel_placement():
    a = np.zeros((3, 4), dtype=bool)
    a[2, 3] = True
    tower = Tower((Layer.full(3, 4), Layer(a)), Termination.EMPTY)
    lines = export_obj(tower).splitlines()
    block = lines[-14:-6]  # vertices of the last cube: layer 1, row 2, col 3
    coords = [tuple(int(t) for t in l.split()[1:]) for l in block]
    assert min(coords) == (3, 1, 2) and max(coords) == (4, 2, 3)


def test_cube_faces_point_outward():
    corners = np.array(CUBE_CORNERS, dtype=float)
    center = corners.mean(axis=0)
    used = set()
    for face in CUBE_FACES:
        pts = corners[[i - 1 for i in face]]
        normal = np.cross(pts[1] - pts[0], pts[2] - pts[0])
        face_center = pts.mean(axis=0)
        assert np.dot(normal, face_center - center) > 0
        # planar quad: all four corners share the face's constant axis
        assert (np.ptp(pts, axis=0) == 0).sum() == 1
        used.update(face)
    assert used == set(range(1, 9))


def test_obj_line_counts_random():
    rng = np.random.default_rng(99)
    for _ in range(20):
        tower = random_tower(rng)
        text = export_obj(tower)
        assert count_lines(text, "v") == 8 * tower.population
        assert count_lines(text, "f") == 6 * tower.population


# -- shipped plans -----------------------------------------------------------

def test_shipped_plans_match_builders():
    assert load_plan("solid9").layer == solid_square(9)
    assert load_plan("stepped31").layer == stepped_squares((31, 23, 15))
    assert load_plan("cross31").layer == stepped_cross(31)
    for name in SHIPPED:
        assert load_plan(name).source_name == f"{name}.txt"
    with pytest.raises(KeyError):
        load_plan("borobudur")


def test_stepped_plan_layout():
    layer = load_plan("stepped31").layer
    assert layer.shape == (31, 31)
    rows = layer.to_rows()
    assert rows[0] == "#" * 31
    assert rows[15] == "####" + "." * 4 + "#" * 15 + "." * 4 + "####"
