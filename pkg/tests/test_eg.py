import pytest

from schubsep.eg import (
    NotReduced,
    ck_classes,
    ck_insert,
    ck_neighbors,
    descent_set,
    eg_insert,
    format_tableau,
    is_increasing,
    is_standard,
    parse_tableau,
    reading_word,
    shape_of,
    standard_tableaux,
    word_descents,
)
from schubsep.perm import Permutation, all_perms, identity, reduced_words, word_product

from conftest import P


def test_ck_insert_cases():
    assert ck_insert((), 4) == (((4,),), 0)
    # plain bump
    assert ck_insert(((2,),), 1)[0] == ((1,), (2,))
    # z = x+1 with x already present: row left alone, x+1 moves on
    assert ck_insert(((1, 2),), 1)[0] == ((1, 2), (2,))


def test_eg_examples():
    assert eg_insert((1, 2, 1)) == (((1, 2), (2,)), ((1, 2), (3,)))
    assert eg_insert((2, 1, 2)) == (((1, 2), (2,)), ((1, 3), (2,)))
    assert eg_insert(()) == ((), ())
    with pytest.raises(NotReduced):
        eg_insert((1, 1))


def test_reading_word():
    assert reading_word(((1, 2), (2,))) == (2, 1, 2)
    assert reading_word(((0, 3),)) == (3, 0)
    assert reading_word(((5,),)) == (5,)


def test_ck_classes():
    assert ck_classes(P("321")) == {((1, 2), (2,)): {(1, 2, 1), (2, 1, 2)}}
    assert ck_classes(identity(1, 3)) == {(): {()}}
    u = Permutation(0, (1, 0, 2, 4, 3, 5))
    assert ck_classes(u) == {((0, 3),): {(3, 0)}, ((0,), (3,)): {(0, 3)}}


def test_descents():
    assert descent_set(((1, 2), (3,))) == {2}
    assert descent_set(((1, 2, 3),)) == set()
    assert word_descents(tuple(reversed((1, 2, 1)))) == {2}


def test_eg_properties_s4():
    for p in all_perms(4):
        seen = {}
        for w in reduced_words(p):
            pt, qt = eg_insert(w)
            assert is_increasing(pt) and is_standard(qt)
            assert shape_of(pt) == shape_of(qt)
            assert word_product(reading_word(pt), 1, 4) == p
            assert descent_set(qt) == word_descents(w[::-1])
            assert (pt, qt) not in seen
            seen[pt, qt] = w
        for pt in {k[0] for k in seen}:
            qs = {q for (pp, q) in seen if pp == pt}
            assert qs == set(standard_tableaux(shape_of(pt)))


def test_classes_are_ck_closed():
    for p in [P("4231"), P("2413"), P("35142")]:
        for pt, words in ck_classes(p).items():
            for w in words:
                assert set(ck_neighbors(w)) <= words


def test_standard_tableaux_counts():
    # hook length formula values
    assert len(standard_tableaux((3, 2))) == 5
    assert len(standard_tableaux((2, 2, 1))) == 5
    assert len(standard_tableaux((3, 2, 1))) == 16


def test_tableau_text():
    t = ((1, 2), (3,))
    assert parse_tableau(format_tableau(t)) == t
    assert parse_tableau("") == ()
