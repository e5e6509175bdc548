"""Places where a formula as literally displayed disagrees with what the
monad computes.  Each test pins the disagreement so that a change in
behaviour is noticed; the corrected statement is tested elsewhere."""
import pytest

from frobenius_bundles.bundles import Frobenius, LineBundle, PullbackQL, Tensor, eval_expr
from frobenius_bundles.chow import (chern_E0_by_frobenius_step, chern_E0_symbolic,
                                    chern_q_case_as_printed, twist_chern)
from frobenius_bundles.cohomology import monad_cohom_table
from frobenius_bundles.model import build_monad, dual_monad
from frobenius_bundles.suites import dual_twist, literal_vanishing_failures


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("a", [0, 1])
def test_displayed_frobenius_recursion_disagrees(n, p, a):
    direct = chern_E0_symbolic(n, p ** (a + 1), 1).total
    printed = chern_q_case_as_printed(n, p, a)
    # neither E0(-L) nor E0 nor E0((p-1)L) matches the displayed product
    for shift in (0, 1, p):
        assert printed != twist_chern(n, direct, (shift, 0))
    assert chern_E0_by_frobenius_step(n, p, a) == direct


def _dual_column(s, t):
    d = dual_monad(build_monad(2, 2, 1))
    tw = dual_twist(s, t)
    return [iv.value for iv in monad_cohom_table(d, [tw]).column(tw)]


def test_dual_has_h1_at_origin():
    # Ě0 itself (s = t = 0 >= q - n) has H^1 of dimension 1 for n = q = 2
    assert _dual_column(0, 0) == [0, 1, 0, 0, 0]


def test_dual_has_h3_with_only_t_large():
    assert _dual_column(-3, 0) == [0, 0, 0, 1, 0]


def test_literal_vanishing_failures_listed():
    bad = literal_vanishing_failures(2, 2)
    assert (0, 0) in bad and (-3, 0) in bad
    assert len(bad) == 20


@pytest.mark.parametrize("q,p,a", [(2, 2, 1), (3, 3, 1)])
def test_twisted_frobenius_form_only_for_rank_two(q, p, a):
    form = Tensor(Frobenius(a, PullbackQL(), p), LineBundle(-q, 0))
    assert eval_expr(form, 2).total == chern_E0_symbolic(2, q, q).total
    assert eval_expr(form, 3).total != chern_E0_symbolic(3, q, q).total


def test_mixed_coefficient_of_twisted_rank_two_kernel():
    # displayed hL coefficient 2ab + a + b is off by one from the expansion
    e0 = twist_chern(2, chern_E0_symbolic(2, 2, 1).total, (1, 0))
    for a, b in [(0, 0), (1, 2), (-1, 3)]:
        c = twist_chern(2, e0, (b, a))
        assert c[1, 1] == 2 * a * b + a + b + 1
