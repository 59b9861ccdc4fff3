"""Presented semirings: word problem, idempotence, cancellativity,
preorder, L-sets, difference rings."""

import random
from fractions import Fraction

import pytest

from semiring_lab.polynomials import Domain, DomainError, Polynomial, format_poly, parse_poly, t_names
from semiring_lab.semiring import (
    Budget,
    BudgetError,
    CancellativityReport,
    CongruenceClosure,
    DifferencePair,
    DifferenceRing,
    EvalHom,
    NotCancellativeError,
    Presentation,
    SaturationStatus,
    Separator,
    Step,
    TraceError,
    Tri,
    congruence_close,
    difference_embed,
    find_L,
    is_add_cancellative,
    is_add_idempotent,
    preorder_leq,
    replay_trace,
    words_equivalent,
)
from tests.oracles import random_poly

SEED = 91731


def P1(text: str) -> Polynomial:
    return parse_poly(text, t_names(1), Domain.NAT)


@pytest.fixture(scope="module")
def absorbing_one():
    return Presentation.from_text(1, "1 + 1 = 1")


@pytest.fixture(scope="module")
def successor_absorbed():
    # T + 1 ~ T: adding a unit near the variable disappears
    return Presentation.from_text(1, "T1 + 1 = T1")


@pytest.fixture(scope="module")
def free1():
    return Presentation.free(1)


# -- presentations ---------------------------------------------------------


def test_text_format_roundtrip(successor_absorbed):
    text = successor_absorbed.to_text()
    assert text == "T1 + 1 = T1"
    assert Presentation.from_text(1, text) == successor_absorbed


def test_text_format_skips_blank_lines():
    pres = Presentation.from_text(2, "\nT1*T2 = 1\n\n  T1 + T2 = T2  \n")
    assert len(pres.relations) == 2


def test_text_format_rejects_malformed_lines():
    with pytest.raises(ValueError):
        Presentation.from_text(1, "T1 + 1")
    with pytest.raises(ValueError):
        Presentation.from_text(1, "T1 = 1 = T1")


def test_relations_must_be_natural_domain():
    neg = parse_poly("T1 - 1", t_names(1), Domain.INT)
    with pytest.raises(DomainError):
        Presentation(1, ((neg.as_domain(Domain.NAT), P1("1")),))
    with pytest.raises(DomainError):
        Presentation(1, ((neg, P1("1")),))


def test_relation_arity_checked():
    with pytest.raises(ValueError):
        Presentation(2, ((P1("T1"), P1("1")),))


# -- congruence closure ----------------------------------------------------


def test_closure_of_absorbing_one_derives_doubling(absorbing_one):
    cc = congruence_close(absorbing_one)
    rng = random.Random(SEED)
    for _ in range(20):
        p = random_poly(rng, 1, Domain.NAT, max_terms=3, max_exp=2, max_coeff=5)
        if p.is_zero or not cc.budget.admits(p + p):
            continue
        assert words_equivalent(p + p, p, cc).verdict is Tri.YES


def test_closure_of_free_presentation_has_no_components(free1):
    cc = congruence_close(free1)
    assert cc.components == ()
    assert cc.status is SaturationStatus.COMPLETE
    # only reflexive pairs hold
    assert words_equivalent(P1("T1"), P1("T1"), cc).verdict is Tri.YES
    assert words_equivalent(P1("T1"), P1("T1 + 1"), cc).verdict is Tri.NO


def test_closure_iterates_unit_absorption(successor_absorbed):
    cc = congruence_close(successor_absorbed)
    for k in range(1, 6):
        answer = words_equivalent(P1(f"T1 + {k}"), P1("T1"), cc)
        assert answer.verdict is Tri.YES
        assert len(answer.trace) == k


def test_closure_status_reports_clipping(absorbing_one, successor_absorbed):
    # the unit component under 1+1 ~ 1 climbs to the coefficient cap: clipped
    assert congruence_close(absorbing_one).status is SaturationStatus.EXHAUSTED
    assert congruence_close(successor_absorbed).status is SaturationStatus.EXHAUSTED
    tiny = congruence_close(absorbing_one, Budget(max_degree=2, max_coeff=3))
    members = {m for c in tiny.components for m in c.members}
    assert P1("1") in members and P1("2") in members


def test_closure_is_deterministic(successor_absorbed):
    assert congruence_close(successor_absorbed) == congruence_close(successor_absorbed)


# -- the word problem ------------------------------------------------------


def test_reflexivity_is_yes_with_empty_trace(free1):
    cc = congruence_close(free1)
    answer = words_equivalent(P1("2*T1 + 3"), P1("2*T1 + 3"), cc)
    assert answer.verdict is Tri.YES and answer.trace == ()


def test_two_step_derivation_and_replay(successor_absorbed):
    cc = congruence_close(successor_absorbed)
    start, end = P1("T1 + 2"), P1("T1")
    answer = words_equivalent(start, end, cc)
    assert answer.verdict is Tri.YES and len(answer.trace) == 2
    assert replay_trace(start, answer.trace, successor_absorbed) == end


def test_no_carries_a_separating_certificate(free1):
    cc = congruence_close(free1)
    answer = words_equivalent(P1("1 + 1"), P1("1"), cc)
    assert answer.verdict is Tri.NO
    assert answer.separator is not None
    assert answer.separator.kind in ("exhausted-component", "evaluation")


def test_unknown_when_nothing_certifies(successor_absorbed):
    # 2*T1 and T1: both components are infinite (clipped), and no positive
    # evaluation satisfies T1 + 1 = T1, so the engine must stay agnostic
    cc = congruence_close(successor_absorbed)
    answer = words_equivalent(P1("2*T1"), P1("T1"), cc)
    assert answer.verdict is Tri.UNKNOWN


def test_out_of_budget_words_rejected(free1):
    cc = congruence_close(free1, Budget(max_degree=2, max_coeff=4))
    with pytest.raises(BudgetError):
        words_equivalent(P1("T1^3"), P1("T1"), cc)
    with pytest.raises(BudgetError):
        words_equivalent(P1("T1"), P1("5"), cc)


def test_non_natural_words_rejected(free1):
    cc = congruence_close(free1)
    p_int = parse_poly("T1", t_names(1), Domain.INT)
    with pytest.raises(DomainError):
        words_equivalent(p_int, p_int, cc)


def test_yes_traces_always_replay(successor_absorbed, absorbing_one):
    rng = random.Random(SEED + 1)
    budget = Budget(max_degree=4, max_coeff=16, max_steps=4000)
    yes_seen = 0
    for pres in (successor_absorbed, absorbing_one):
        cc = congruence_close(pres, budget)
        for _ in range(15):
            p = random_poly(rng, 1, Domain.NAT, max_terms=3, max_exp=2, max_coeff=4)
            q = random_poly(rng, 1, Domain.NAT, max_terms=3, max_exp=2, max_coeff=4)
            answer = words_equivalent(p, q, cc)
            if answer.verdict is Tri.YES:
                assert replay_trace(p, answer.trace, pres) == q
                yes_seen += 1
    assert yes_seen >= 3


def test_broken_trace_raises(successor_absorbed):
    bogus = (Step(rel_index=0, forward=True, shift=(0,), mult=3),)
    with pytest.raises(TraceError):
        replay_trace(P1("T1"), bogus, successor_absorbed)


def test_closure_monotonicity(successor_absorbed):
    small = congruence_close(successor_absorbed, Budget(max_degree=3, max_coeff=8, max_steps=2000))
    large = congruence_close(successor_absorbed, Budget(max_degree=6, max_coeff=64, max_steps=100_000))
    rng = random.Random(SEED + 2)
    checked = 0
    for _ in range(30):
        p = random_poly(rng, 1, Domain.NAT, max_terms=2, max_exp=1, max_coeff=3)
        q = random_poly(rng, 1, Domain.NAT, max_terms=2, max_exp=1, max_coeff=3)
        if words_equivalent(p, q, small).verdict is Tri.YES:
            assert words_equivalent(p, q, large).verdict is Tri.YES
            checked += 1
    assert checked >= 3


# -- additive idempotence --------------------------------------------------


def test_idempotent_when_relation_given(absorbing_one):
    assert is_add_idempotent(absorbing_one).verdict is Tri.YES


def test_free_semiring_not_idempotent(free1):
    answer = is_add_idempotent(free1)
    assert answer.verdict is Tri.NO and answer.separator is not None


def test_variable_idempotence_does_not_reach_the_unit():
    # T*T ~ T and T+T ~ T say nothing about 1+1: the unit's component is the
    # isolated {2}, which certifies that 1+1 ~ 1 is underivable
    pres = Presentation.from_text(1, "T1*T1 = T1\nT1 + T1 = T1")
    answer = is_add_idempotent(pres)
    assert answer.verdict is not Tri.YES
    if answer.verdict is Tri.NO:
        assert answer.separator.kind == "exhausted-component"


def test_doubling_collapses_for_all_words_once_units_collapse(absorbing_one):
    cc = congruence_close(absorbing_one)
    for text in ("T1", "T1 + 1", "T1^2 + 2*T1", "3"):
        p = P1(text)
        assert words_equivalent(p + p, p, cc).verdict is Tri.YES


# -- additive cancellativity -----------------------------------------------


def test_rational_target_is_cancellative():
    hom = EvalHom((Fraction(3, 2),))
    report = is_add_cancellative(hom)
    assert report.verdict is Tri.YES


def test_free_semiring_is_cancellative(free1):
    assert is_add_cancellative(free1).verdict is Tri.YES


def test_unit_absorption_breaks_cancellativity(successor_absorbed):
    report = is_add_cancellative(successor_absorbed)
    assert report.verdict is Tri.NO
    a, b, c = report.witness
    assert (a, b, c) == (P1("1"), P1("0"), P1("T1"))
    # witness validity: a + c ~ b + c derivable, a ~ b refuted
    cc = congruence_close(successor_absorbed)
    assert words_equivalent(a + c, b + c, cc).verdict is Tri.YES
    assert words_equivalent(a, b, cc).verdict is Tri.NO


# -- the natural preorder --------------------------------------------------


def test_rational_preorder_examples():
    hom = EvalHom((Fraction(1),))
    yes = preorder_leq(Fraction(2, 3), Fraction(5, 3), hom)
    assert yes.verdict is Tri.YES and yes.witness == Fraction(1)
    assert preorder_leq(Fraction(5), Fraction(5), hom).verdict is Tri.NO
    assert preorder_leq(Fraction(5), Fraction(2), hom).verdict is Tri.NO


def test_rational_preorder_is_strict_order_randomized():
    hom = EvalHom((Fraction(1),))
    rng = random.Random(SEED + 3)
    for _ in range(200):
        a = Fraction(rng.randint(1, 60), rng.randint(1, 30))
        b = Fraction(rng.randint(1, 60), rng.randint(1, 30))
        answer = preorder_leq(a, b, hom)
        assert (answer.verdict is Tri.YES) == (a < b)
        if answer.verdict is Tri.YES:
            assert answer.witness == b - a > 0


def test_rational_preorder_transitivity_randomized():
    hom = EvalHom((Fraction(1),))
    rng = random.Random(SEED + 4)
    for _ in range(200):
        a, b, c = (Fraction(rng.randint(1, 40), rng.randint(1, 20)) for _ in range(3))
        if (
            preorder_leq(a, b, hom).verdict is Tri.YES
            and preorder_leq(b, c, hom).verdict is Tri.YES
        ):
            assert preorder_leq(a, c, hom).verdict is Tri.YES


def test_presentation_preorder_with_witness(successor_absorbed, free1):
    answer = preorder_leq(P1("T1"), P1("T1 + 3"), successor_absorbed)
    assert answer.verdict is Tri.YES and answer.witness == P1("3")
    # in a presentation 0 is an element, so the preorder is reflexive
    assert preorder_leq(P1("T1"), P1("T1"), free1).verdict is Tri.YES
    assert preorder_leq(P1("T1"), P1("1"), free1).verdict is Tri.NO
    # and unit absorption makes T+3 <= T hold as well (the preorder is not an order)
    back = preorder_leq(P1("T1 + 3"), P1("T1"), successor_absorbed)
    assert back.verdict is Tri.YES


# -- the set L -------------------------------------------------------------


def test_absorbed_unit_generates_L(successor_absorbed):
    L = find_L(successor_absorbed)
    for text in ("T1", "T1 + 1", "2*T1", "T1^2"):
        assert P1(text) in L
    assert P1("1") not in L and P1("2") not in L


def test_L_is_stable_under_adding_elements(successor_absorbed):
    cc = congruence_close(successor_absorbed)
    L = find_L(successor_absorbed)
    one = P1("1")
    for ell in L[:6]:
        for probe in (P1("1"), P1("T1"), P1("T1^2 + 2")):
            bumped = ell + probe
            if cc.budget.admits(bumped + one):
                assert words_equivalent(bumped + one, bumped, cc).verdict is Tri.YES


def test_free_and_rational_L_are_empty(free1):
    assert find_L(free1) == ()
    assert find_L(EvalHom((Fraction(7, 3),))) == ()


def test_find_L_deterministic(successor_absorbed):
    assert find_L(successor_absorbed) == find_L(successor_absorbed)


# -- difference rings ------------------------------------------------------


def c0(k: int) -> Polynomial:
    return Polynomial.constant(0, k, Domain.NAT)


def test_difference_pairs_over_naturals():
    ring = DifferenceRing(Presentation.free(0))
    assert ring.equal(ring.pair(c0(3), c0(1)), ring.pair(c0(5), c0(3)))
    sq = ring.mul(ring.pair(c0(2), c0(1)), ring.pair(c0(2), c0(1)))
    assert (sq.minuend, sq.subtrahend) == (c0(5), c0(4))
    assert ring.equal(sq, ring.one())


def test_difference_ring_is_isomorphic_to_integers():
    ring = DifferenceRing(Presentation.free(0))
    rng = random.Random(SEED + 5)

    def lift(z: int) -> DifferencePair:
        return ring.pair(c0(max(z, 0)), c0(max(-z, 0)))

    def drop(pair: DifferencePair) -> int:
        return int(pair.minuend.evaluate([])) - int(pair.subtrahend.evaluate([]))

    for _ in range(300):
        x = rng.randint(-100, 100)
        y = rng.randint(-100, 100)
        assert drop(ring.add(lift(x), lift(y))) == x + y
        assert drop(ring.mul(lift(x), lift(y))) == x * y
        assert ring.equal(lift(x), lift(y)) == (x == y)
        assert drop(ring.neg(lift(x))) == -x


def test_embedding_respects_equality():
    ring = DifferenceRing(Presentation.free(1))
    s = P1("2*T1 + 1")
    t = P1("2*T1 + 1")
    assert ring.equal(ring.embed(s), ring.embed(t))
    assert not ring.equal(ring.embed(s), ring.embed(P1("2*T1")))


def test_construction_refused_for_non_cancellative_input(successor_absorbed):
    with pytest.raises(NotCancellativeError) as exc_info:
        DifferenceRing(successor_absorbed)
    assert exc_info.value.witness == (P1("1"), P1("0"), P1("T1"))
    with pytest.raises(NotCancellativeError):
        difference_embed(P1("T1"), P1("1"), successor_absorbed)


def test_difference_embed_over_free_structure(free1):
    pair = difference_embed(P1("T1 + 2"), P1("T1"), free1)
    assert pair == DifferencePair(P1("T1 + 2"), P1("T1"))
