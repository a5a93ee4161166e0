import itertools

import pytest

from blockcomplete.dimcards import (
    ALEPH0, CASE_LABELS, ExtDim, achievable_codims, cancel, case_label, decide_quotient_iso, grid,
    satisfies_hypotheses,
)
from blockcomplete.errors import HypothesisViolated, NotEmbeddable

F = ExtDim
VALUES = [F(i) for i in range(6)] + [ALEPH0]


class TestExtDim:
    def test_parse(self):
        assert ExtDim.parse("inf") == ALEPH0
        assert ExtDim.parse("3") == F(3)
        with pytest.raises(ValueError):
            ExtDim.parse("-1")
        with pytest.raises(ValueError):
            ExtDim.parse("x")

    def test_order(self):
        assert F(2) < F(3) < ALEPH0
        assert ALEPH0 <= ALEPH0 and not ALEPH0 < ALEPH0

    def test_absorption(self):
        for x in VALUES:
            assert x + ALEPH0 == ALEPH0 == ALEPH0 + x

    def test_monoid_laws(self):
        for a, b, c in itertools.product(VALUES, repeat=3):
            assert a + b == b + a
            assert (a + b) + c == a + (b + c)

    def test_finite_cancellation(self):
        # x + y = x + z forces y = z when x is finite
        for x in VALUES[:-1]:
            for y, z in itertools.product(VALUES, repeat=2):
                if x + y == x + z:
                    assert y == z
            for y in VALUES:
                assert cancel(x, x + y) == y

    def test_infinite_does_not_cancel(self):
        assert ALEPH0 + F(1) == ALEPH0 + F(2)


class TestAchievable:
    def test_finite_forced(self):
        s = achievable_codims(F(1), F(3))
        assert F(2) in s and F(1) not in s and not s.everything

    def test_finite_into_infinite(self):
        s = achievable_codims(F(2), ALEPH0)
        assert ALEPH0 in s and F(5) not in s

    def test_infinite_into_infinite(self):
        s = achievable_codims(ALEPH0, ALEPH0)
        assert s.everything
        assert all(v in s for v in VALUES)

    def test_not_embeddable(self):
        with pytest.raises(NotEmbeddable):
            achievable_codims(F(3), F(2))
        with pytest.raises(NotEmbeddable):
            achievable_codims(ALEPH0, F(2))


class TestDecide:
    def test_finite(self):
        # 3 - 1 = 4 - 2; k < m < l puts it in the second case
        w = decide_quotient_iso(1, 3, 2, 4)
        assert w.witness_codim == F(2)
        assert w.case_label == "II.2"

    def test_finite_first_case(self):
        w = decide_quotient_iso(1, 4, 1, 4)
        assert w.witness_codim == F(3) and w.case_label == "I.2"

    def test_finite_into_infinite(self):
        w = decide_quotient_iso(2, "inf", 3, "inf")
        assert w.witness_codim == ALEPH0 and w.case_label == "I.1"

    def test_equal_infinite_kernel(self):
        # J1 may leave any codimension, but J2 (finite into aleph-0) forces aleph-0
        w = decide_quotient_iso("inf", "inf", 0, "inf")
        assert w.witness_codim == ALEPH0 and w.case_label == "III.1"

    def test_everything_meets_everything(self):
        w = decide_quotient_iso("inf", "inf", "inf", "inf")
        assert w.witness_codim == F(0) and w.case_label == "III.1"

    @pytest.mark.parametrize("args,which", [
        ((3, 2, 0, 1), "k > m"),
        ((0, 2, 3, 1), "n > l"),
        ((0, 2, 0, 1), "k + l != m + n"),
    ])
    def test_hypotheses(self, args, which):
        with pytest.raises(HypothesisViolated) as exc:
            decide_quotient_iso(*args)
        assert exc.value.which == which


def test_case_labels_partition():
    for k, m, n, l in grid():
        if not (k <= m and n <= l):
            continue
        label = case_label(k, m, l)
        conds = {
            "I": k < m and l <= m,
            "II": k < m < l,
            "III": k == m and l <= m,
            "IV": k == m and m < l,
        }
        assert sum(conds.values()) == 1
        assert conds[label.split(".")[0]]


def test_converse_over_grid():
    # any common quotient dimension forces k + l = m + n (m = k + q, l = n + q)
    for k, m, n, l in grid():
        if not (k <= m and n <= l):
            continue
        common = achievable_codims(k, m).intersect(achievable_codims(n, l))
        if common is not None:
            assert k + l == m + n


def test_every_label_reachable():
    seen = {decide_quotient_iso(*q).case_label for q in grid() if satisfies_hypotheses(*q)}
    assert seen == set(CASE_LABELS)
