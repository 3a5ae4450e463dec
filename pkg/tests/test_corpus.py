import json

import pytest

from wsmgroups.corpus import (
    CorpusError,
    GroupSpec,
    agl1,
    build_source,
    default_corpus,
    dicyclic,
    dihedral,
    parse_corpus,
    quaternion,
    write_corpus,
)
from wsmgroups.groups import MAX_DEGREE

import oracles


@pytest.mark.parametrize(
    "source,order",
    [
        ("sym(4)", 24),
        ("alt(5)", 60),
        ("cyclic(12)", 12),
        ("dihedral(6)", 12),
        ("elem_abelian(3, 2)", 9),
        ("quaternion(16)", 16),
        ("dicyclic(3)", 12),
        ("agl1(9)", 72),
        ("direct(sym(3), cyclic(2))", 12),
    ],
)
def test_constructor_orders(source, order):
    G = build_source(source)
    assert G.order == order == len(oracles.elements(G))


def test_agl19_is_degree_nine():
    G = agl1(9)
    assert G.degree == 9 and G.order == 72
    assert len(G.base) == 2  # sharply 2-transitive: a point stabilizer of order 8 is regular on the rest
    assert not G.is_abelian() and G.is_solvable()


def test_quaternion_and_dicyclic_are_not_dihedral():
    # one involution in Q8 and Dic12, many in the dihedral group of the same order
    def involutions(G):
        return sum(1 for x in oracles.elements(G) if oracles.order(x) == 2)

    assert involutions(quaternion(8)) == 1
    assert involutions(dicyclic(3)) == 1
    assert involutions(dihedral(4)) == 5


@pytest.mark.parametrize("bad", ["spam(3)", "sym(3) + 1", "sym(x)", "sym(", "sym(0)", "cyclic(2, 3)", "elem_abelian(4, 2)"])
def test_bad_sources(bad):
    with pytest.raises(CorpusError):
        build_source(bad)


def test_parse_round_trip(tmp_path):
    specs = [
        GroupSpec("S3", "sym(3)", 6),
        GroupSpec("K4", ["(1,2)(3,4)", "(1,3)(2,4)"], 4),
        GroupSpec("C2 on 5", ["(4,5)"], 2, degree=5),
    ]
    path = tmp_path / "c.jsonl"
    write_corpus(specs, path)
    with open(path, "a") as fh:
        fh.write("\n# a comment\n")
    back = parse_corpus(path)
    assert [s.to_json() for s in back] == [s.to_json() for s in specs]
    assert back[2].build().degree == 5


def test_parse_reports_line_numbers(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"name": "S3", "source": "sym(3)"}\n\n{"name": "X", "source": "nope(2)"}\n')
    with pytest.raises(CorpusError, match="line 3"):
        parse_corpus(path)
    path.write_text('{"name": "S3", "source": "sym(3)", "expected_order": 7}\n')
    with pytest.raises(CorpusError, match="order 6"):
        parse_corpus(path)
    path.write_text("not json\n")
    with pytest.raises(CorpusError, match="line 1"):
        parse_corpus(path)
    path.write_text('{"name": "S3"}\n')
    with pytest.raises(CorpusError):
        parse_corpus(path)
    # without validation the bad order is only caught on build
    path.write_text('{"name": "S3", "source": "sym(3)", "expected_order": 7}\n')
    (spec,) = parse_corpus(path, validate=False)
    with pytest.raises(CorpusError):
        spec.build()


def test_default_corpus():
    specs = default_corpus()
    names = [s.name for s in specs]
    assert len(names) == len(set(names))
    groups = [s.build() for s in specs]
    assert all(G.degree <= MAX_DEGREE and G.order <= 200 for G in groups)
    for wanted in ["S3", "S4", "A5", "AGL(1,9)", "Q8"]:
        assert wanted in names
    ids = [G.id for G in groups]
    assert len(set(ids)) == len(ids)
    json.dumps([s.to_json() for s in specs])


def test_default_corpus_respects_max_order():
    assert all(s.build().order <= 24 for s in default_corpus(24))
