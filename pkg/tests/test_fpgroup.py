import random

import pytest
from hypothesis import given, settings, strategies as st

from sextic.fpgroup import (KERNEL, FpPresentation, LimitExceeded, PresentationSyntaxError,
                            abelianization, class2_quotient, coset_enumerate,
                            derived_subgroup_presentation, element_order, index, is_closed,
                            is_perfect, order, simplify, smith_normal_form)
from sextic.fpgroup import _coset_py
from sextic.fpgroup.group import free_group
from sextic.fpgroup.snf import determinant, diagonal, is_divisibility_chain, matmul
from sextic.pipeline import PLUS_LOOP, paper_relations
from sextic.words import inv, mul, parse_word, power

S3 = FpPresentation(2, ((1, 1), (2, 2), (1, 2) * 3))
Q8 = FpPresentation(2, ((1,) * 4, mul((1, 1), inv((2, 2))), mul((2, 1, 2), (-1,))))
A4 = FpPresentation(2, ((1,) * 3, (2,) * 3, (1, 2) * 2))


@pytest.fixture(scope="module")
def eq_g():
    return paper_relations(1)


def test_small_orders():
    assert order(S3) == 6
    assert order(Q8) == 8
    assert order(A4) == 12


def test_row1_order(eq_g):
    assert order(eq_g) == 41040


def test_row1_indices(eq_g):
    assert index(eq_g, [(1,), (2,)]) == 1
    assert index(eq_g, [(1,), (3,)]) == 1
    assert index(eq_g, [(1,)]) == 360
    assert element_order(eq_g, (1,)) == 114
    assert 360 * 114 == 41040


def test_row1_derived_subgroup(eq_g):
    d = derived_subgroup_presentation(eq_g)
    assert order(d) == 6840
    assert is_perfect(d)
    assert 19 * (19 ** 2 - 1) == 6840


def test_row1_abelianization(eq_g):
    ab = abelianization(eq_g)
    assert ab.torsion == (6,) and ab.free_rank == 0
    assert ab.primary() == [2, 3]


def test_element_orders_small():
    assert element_order(S3, (1,)) == 2
    assert element_order(S3, ()) == 1


def test_closure_after_enumeration(eq_g):
    for p, sub in ((S3, ()), (A4, [(1,)]), (eq_g, [(1,)])):
        table = coset_enumerate(p, sub)
        assert is_closed(table, p, sub)


def test_limit_is_reported():
    with pytest.raises(LimitExceeded):
        order(free_group(2).with_relators([(1, 1, 2, 2, 2)]), max_cosets=50)


def test_kernels_agree(eq_g):
    for p in (S3, Q8, A4, eq_g):
        a = coset_enumerate(p)
        b = coset_enumerate(p, kernel=_coset_py)
        assert a.coset_count == b.coset_count
        assert a.table == b.table
    assert KERNEL in ("compiled", "python")


def test_row_filling_strategy_agrees(eq_g):
    assert coset_enumerate(eq_g, [(1,)], strategy="row_filling").coset_count == 360


def test_index_one_subgroup_presentation():
    from sextic.fpgroup import subgroup_presentation

    assert order(subgroup_presentation(A4, [(1,), (2,)])) == 12


def test_abelianization_of_loop_group():
    ab = abelianization(paper_relations(2))
    assert ab.torsion == (3,) and ab.free_rank == 1


def test_free_abelianization():
    assert abelianization(free_group(3)).free_rank == 3


def test_class2_free_group():
    q = class2_quotient(free_group(2))
    assert q.commutant.free_rank == 1 and not q.commutant.torsion
    assert q.commutator_class(mul((1, 2), inv((2, 1)))) in ((1,), (-1,))


def test_class2_loop_group():
    q = class2_quotient(paper_relations(2))
    assert q.commutant.torsion == (3,) and q.commutant.free_rank == 0
    cls = q.commutator_class(mul((2,), (-3,)))
    assert cls is not None and q.class_order(cls) == 3


def test_class2_loop_group_with_square_relation():
    # (a1 a2)^n = (a2 a1)^n with n = 2 is not divisible by 3: the quotient becomes abelian
    p = paper_relations(2).with_relators([mul(power((1, 2), 2), inv(power((2, 1), 2)))])
    assert class2_quotient(p).is_abelian
    p3 = paper_relations(2).with_relators([mul(power((1, 2), 3), inv(power((2, 1), 3)))])
    assert not class2_quotient(p3).is_abelian


@pytest.mark.parametrize("n", [5, 7, 8])
def test_loop_commutator_is_central_in_finite_quotients(n):
    p = paper_relations(2).with_relators([power((2,), n)])
    table = coset_enumerate(p)
    z = mul((2,), (-3,))
    for g in (1, 2, 3):
        c = mul(z, (g,), inv(z), (-g,))
        assert all(table.act(k, c) == k for k in range(table.coset_count))


def test_class2_abelianization_consistency(eq_g):
    for p in (S3, A4, eq_g, paper_relations(5)):
        assert class2_quotient(p).abelianization == abelianization(p)


def test_simplify_preserves_order(eq_g):
    assert order(simplify(eq_g)) == 41040


def test_presentation_text_round_trip(eq_g):
    assert FpPresentation.from_text(eq_g.to_text()) == eq_g
    with pytest.raises(PresentationSyntaxError):
        FpPresentation.from_text("rel a1\n")


relators = st.lists(st.lists(st.sampled_from((1, -1, 2, -2, 3, -3)), min_size=1, max_size=8),
                    min_size=1, max_size=5)


@settings(max_examples=200, deadline=None)
@given(relators, st.randoms(use_true_random=False))
def test_abelianization_invariances(rels, rnd):
    p = FpPresentation(3, tuple(map(tuple, rels)))
    base = abelianization(p)
    shuffled = list(p.relators)
    rnd.shuffle(shuffled)
    changed = []
    for r in shuffled:
        k = rnd.randrange(len(r))
        r = r[k:] + r[:k]
        if rnd.random() < 0.5:
            r = inv(r)
        g = (rnd.choice((1, 2, 3)),)
        changed.append(mul(g, r, inv(g)))
    assert abelianization(FpPresentation(3, tuple(changed))) == base


def _unimodular(m):
    return abs(determinant(m)) == 1


def test_smith_normal_form_random_matrices():
    rng = random.Random(5)
    for _ in range(1000):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
        a = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
        u, d, v = smith_normal_form(a)
        assert matmul(matmul(u, a), v) == d
        assert _unimodular(u) and _unimodular(v)
        assert all(d[i][j] == 0 for i in range(rows) for j in range(cols) if i != j)
        assert is_divisibility_chain(diagonal(d))


def test_parse_word_in_presentation():
    assert parse_word("a1^3") == (1, 1, 1)
