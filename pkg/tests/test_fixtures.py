import pytest

from descent.coxeter import CoxeterType
from descent.fixtures import match_quiver, parse_fixture, shipped_fixtures
from descent.quivers import Quiver

from conftest import analysis

FIXTURES = [fx for fx in shipped_fixtures() if fx.family != "E" or fx.rank != 7]
CAPTION_TOTALS = {
    "D5_p3": (11, 13), "D6_p5": (25, 31), "E6_p2": (3, 13), "F4_p2": (1, 4), "E7_p3": (17, 65),
}


def test_shipped_set():
    names = {fx.name for fx in shipped_fixtures()}
    assert len(names) == 28
    assert {"D4_p3", "H4_p7plus", "E7_p11plus"} <= names


@pytest.mark.parametrize("fx", shipped_fixtures(), ids=lambda fx: fx.name)
def test_fixture_totals(fx):
    assert fx.triple_total == fx.arrows
    assert fx.quiver.vertex_count == fx.vertices
    if fx.name in CAPTION_TOTALS:
        assert (fx.vertices, fx.arrows) == CAPTION_TOTALS[fx.name]


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda fx: fx.name)
def test_fixture_reproduced(fx):
    CoxeterType.parse(fx.family, fx.rank)
    for p in fx.check:
        q = analysis(fx.family, fx.rank, p).quiver
        assert (q.vertex_count, q.arrow_count) == (fx.vertices, fx.arrows)
        assert match_quiver(q, fx) == "as-is"


def test_parse_and_reject():
    fx = parse_fixture("# x\nfamily B\nrank 2\np 2\ncheck 2\nvertices 1\narrows 2\n<1, 1, 2>\n")
    assert fx.triples == [(1, 1, 2)]
    with pytest.raises(ValueError):
        parse_fixture("family B\nrank 2\np 2\ncheck 2\nvertices 1\narrows 1\n<1, 2, 1>\n")


def test_orientation_report():
    fx = parse_fixture("family B\nrank 2\np 0\ncheck 0\nvertices 3\narrows 2\n<1, 2, 1>\n<3, 2, 1>\n")
    assert match_quiver(Quiver.from_triples(3, [(1, 2, 1), (3, 2, 1)]), fx) == "as-is"
    assert match_quiver(Quiver.from_triples(3, [(2, 1, 1), (2, 3, 1)]), fx) == "reversed"
    assert match_quiver(Quiver.from_triples(3, [(1, 2, 1), (2, 3, 1)]), fx) is None
