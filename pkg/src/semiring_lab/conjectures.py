"""Bounded-subset predicates, exponent cones, and the aggregate
four-condition verifier.

Over a concrete commutative semiring target -- either a strictly positive
rational evaluation or a finitely presented quotient of N[T1..Tn] -- three
subsets are distinguished by the natural preorder (a <= b iff b = a + c):

  * bounded-above: elements under some positive rational constant;
  * bounded-two-sided: elements squeezed between two positive rational
    constants (these form the cancellative core of the target);
  * one-absorbing: elements l with l + 1 = l.

The cone of a target collects the exponent vectors u (inside a coordinate
box) whose monomial T^u is bounded above.  Cones carry finite member sets,
so dimension (rank of the members), purity of a generated subsemigroup,
interior points (u with every u + e_i still in the cone), and the fraction
witnesses T_i = T^(u+e_i) / T^u are all checked by direct enumeration.

``verify_conditions`` aggregates four certified checks on a subring/ideal
candidate: (a) every ambient variable is a ratio of subring elements,
(b) the ideal generates the unit ideal of the ambient ring, (c) some
supplied base element admits only annihilators with all coefficients in
the ideal -- reported Fails when a non-ideal annihilator is exhibited --
and (d) the quotient contains the rationals, certified by finite preimage
evidence.  Every Holds carries a certificate, every Fails a replayable
witness, and budget exhaustion yields Unknown, never a guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Callable

from .abhyankar import (
    AbhyankarContext,
    UnverifiedContextError,
    fraction_field_witnesses,
    generator,
    non_kernel_annihilator,
    unit_ideal_witness,
)
from .groebner import GroebnerBudget, MembershipStatus, ideal_membership
from .polynomials import (
    Domain,
    DomainError,
    Exponent,
    Polynomial,
    format_poly,
    mono_deg,
)
from .semiring import (
    Budget,
    CongruenceClosure,
    EvalHom,
    Presentation,
    Tri,
    congruence_close,
    preorder_leq,
    words_equivalent,
)

def structure_nvars(structure) -> int:
    if isinstance(structure, EvalHom):
        return len(structure.assignment)
    if isinstance(structure, Presentation):
        return structure.nvars
    raise TypeError(f"expected EvalHom or Presentation, got {type(structure).__name__}")


# -- bounded-subset predicates ----------------------------------------------


class BoundClass(Enum):
    """The three distinguished subsets of a semiring target."""

    TWO_SIDED = "bounded-two-sided"
    ABOVE = "bounded-above"
    ABSORBING = "one-absorbing"


@dataclass(frozen=True)
class BoundVerdict:
    """Three-valued membership with the bounds that certify it."""

    answer: Tri
    lower: Fraction | None = None
    upper: Fraction | None = None
    detail: str = ""


@dataclass(frozen=True)
class BoundedSubsetPredicate:
    """Membership test for one bound class over one target.

    Exact on evaluation targets (the positive rationals are totally
    ordered, so every value bounds itself up to a nudge); bounded search on
    presentation targets, where upper bounds are scanned over the integer
    constants 1..max_bound and absence within the scan yields Unknown --
    an upper bound might always exist further out.  The congruence closure
    of a presentation target is built once and reused across queries.
    """

    kind: BoundClass
    structure: "EvalHom | Presentation"
    budget: Budget = Budget()
    max_bound: int = 16
    closure: CongruenceClosure | None = None

    def __post_init__(self):
        if isinstance(self.structure, Presentation) and self.closure is None:
            object.__setattr__(
                self, "closure", congruence_close(self.structure, self.budget)
            )

    @property
    def nvars(self) -> int:
        return structure_nvars(self.structure)

    def classify(self, s: Polynomial) -> BoundVerdict:
        if s.domain is not Domain.NAT:
            raise DomainError("bound predicates apply to natural-domain words")
        if s.nvars != self.nvars:
            raise ValueError(
                f"word has {s.nvars} variables, target has {self.nvars}"
            )
        if isinstance(self.structure, EvalHom):
            return self._classify_evaluation(s)
        return self._classify_presentation(s)

    def _classify_evaluation(self, s: Polynomial) -> BoundVerdict:
        v = self.structure.apply(s)
        if self.kind is BoundClass.ABSORBING:
            return BoundVerdict(Tri.NO, detail=f"value {v}: v + 1 > v in the rationals")
        if self.kind is BoundClass.ABOVE:
            return BoundVerdict(Tri.YES, upper=v + 1, detail=f"value {v} < {v + 1}")
        if v == 0:
            return BoundVerdict(
                Tri.NO, detail="value 0 admits no positive rational lower bound"
            )
        return BoundVerdict(
            Tri.YES,
            lower=v / 2,
            upper=v + 1,
            detail=f"{v / 2} < value {v} < {v + 1}",
        )

    def _classify_presentation(self, s: Polynomial) -> BoundVerdict:
        if self.kind is BoundClass.ABSORBING:
            answer = words_equivalent(s + self.structure.one, s, self.closure)
            return BoundVerdict(
                answer.verdict,
                detail="word + 1 ~ word "
                + {"yes": "derived", "no": "refuted", "unknown": "undecided"}[
                    answer.verdict.value
                ],
            )
        if self.kind is BoundClass.ABOVE:
            upper, detail = self._upper_bound(s)
            answer = Tri.YES if upper is not None else Tri.UNKNOWN
            return BoundVerdict(answer, upper=upper, detail=detail)
        lower_answer = preorder_leq(self.structure.one, s, self.structure, self.budget)
        if lower_answer.verdict is Tri.NO:
            return BoundVerdict(
                Tri.NO,
                detail="no positive lower bound: the word's component is fully "
                "explored and no member has a constant term",
            )
        upper, upper_detail = self._upper_bound(s)
        if lower_answer.verdict is Tri.YES and upper is not None:
            return BoundVerdict(
                Tri.YES, lower=Fraction(1), upper=upper, detail=upper_detail
            )
        return BoundVerdict(Tri.UNKNOWN, upper=upper, detail=upper_detail)

    def _upper_bound(self, s: Polynomial) -> tuple[Fraction | None, str]:
        cap = min(self.max_bound, self.budget.max_coeff)
        for q in range(1, cap + 1):
            bound = Polynomial.constant(self.nvars, q, Domain.NAT)
            if preorder_leq(s, bound, self.structure, self.budget).verdict is Tri.YES:
                return Fraction(q), f"word <= {q} derived"
            # No and Unknown both leave larger constants untested
        return None, f"no constant bound found up to {cap}"


# -- cones ------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """Box-bounded set of exponent vectors whose monomials are bounded
    above in the target.  ``unknown`` lists box vectors whose membership
    stayed undecided within budget (excluded from the member set)."""

    nvars: int
    box: int
    members: frozenset
    unknown: tuple
    provenance: str

    def contains(self, u: Exponent) -> bool:
        return tuple(u) in self.members

    def sorted_members(self) -> list:
        return sorted(self.members, key=lambda u: (mono_deg(u), u))

    def closure_defects(self) -> tuple:
        """Member pairs whose sum stays in the box but is not a member.

        Empty for evaluation targets (membership is closed under products
        of monomials); a presentation cone may show defects when the bound
        for a sum lies beyond the scanned constants.
        """
        defects = []
        members = self.sorted_members()
        for i, u in enumerate(members):
            for v in members[i:]:
                w = tuple(a + b for a, b in zip(u, v))
                if max(w, default=0) <= self.box and w not in self.members:
                    defects.append((u, v, w))
        return tuple(defects)


def cone_enumerate(
    structure,
    box: int,
    budget: Budget = Budget(),
    max_bound: int = 16,
) -> Cone:
    """All exponent vectors in [0, box]^n whose monomial is bounded above.

    Vectors with undecided membership are excluded and reported in
    ``unknown``.  Deterministic for fixed inputs.
    """
    if box < 0:
        raise ValueError(f"box bound must be nonnegative, got {box}")
    n = structure_nvars(structure)
    predicate = BoundedSubsetPredicate(BoundClass.ABOVE, structure, budget, max_bound)
    members = []
    unknown = []
    for u in product(range(box + 1), repeat=n):
        word = Polynomial.monomial(u, 1, Domain.NAT)
        verdict = predicate.classify(word)
        if verdict.answer is Tri.YES:
            members.append(u)
        elif verdict.answer is Tri.UNKNOWN:
            unknown.append(u)
    if isinstance(structure, EvalHom):
        provenance = f"evaluation at {tuple(str(v) for v in structure.assignment)}"
    else:
        provenance = (
            f"presentation with {len(structure.relations)} relations, "
            f"bounds scanned to {min(max_bound, budget.max_coeff)}, "
            f"budget ({budget.max_degree}, {budget.max_coeff}, {budget.max_steps})"
        )
    return Cone(n, box, frozenset(members), tuple(unknown), provenance)


def cone_dim(c: Cone) -> int:
    """Rank over Q of the member vectors (dimension of the smallest linear
    subspace containing the cone)."""
    rows = [[Fraction(x) for x in u] for u in c.sorted_members()]
    rank = 0
    col = 0
    while rows and col < c.nvars:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col] / lead
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class PurityResult:
    """Purity of the box-bounded subsemigroup generated by the given
    vectors: pure means every member a with a/k integral has a/k a member
    too.  Impure carries the first witness (a, k, a/k) in graded order."""

    pure: bool
    witness: tuple | None
    members: frozenset


def purity_check(generators, box: int, nvars: int | None = None) -> PurityResult:
    """Brute-force purity of the subsemigroup generated within [0, box]^n."""
    gens = [tuple(g) for g in generators]
    if nvars is None:
        nvars = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != nvars:
            raise ValueError(f"generator {g} does not have {nvars} coordinates")
        if any(x < 0 for x in g):
            raise ValueError(f"generator {g} has a negative coordinate")
    zero = (0,) * nvars
    members = {zero}
    frontier = [zero]
    while frontier:
        base = frontier.pop()
        for g in gens:
            nxt = tuple(a + b for a, b in zip(base, g))
            if max(nxt, default=0) <= box and nxt not in members:
                members.add(nxt)
                frontier.append(nxt)
    for a in sorted(members, key=lambda u: (mono_deg(u), u)):
        top = max(a, default=0)
        for k in range(2, top + 1):
            if all(x % k == 0 for x in a):
                quotient = tuple(x // k for x in a)
                if quotient not in members:
                    return PurityResult(False, (a, k, quotient), frozenset(members))
    return PurityResult(True, None, frozenset(members))


def find_interior_u(c: Cone) -> Exponent | None:
    """Smallest (graded, then lexicographic) member u with every u + e_i
    also a member; None when no such u lies within the box."""
    for u in c.sorted_members():
        if all(
            tuple(x + (1 if i == j else 0) for j, x in enumerate(u)) in c.members
            for i in range(c.nvars)
        ):
            return u
    return None


def one_plus_Tu_in_P(
    u: Exponent,
    structure,
    budget: Budget = Budget(),
    max_bound: int = 16,
) -> BoundVerdict:
    """Two-sided boundedness of 1 + T^u in the target.

    Always Yes on evaluation targets.  On presentations the constant term
    supplies the lower bound; the upper bound is searched, and an
    undecided upper bound leaves the verdict Unknown.
    """
    n = structure_nvars(structure)
    if len(tuple(u)) != n:
        raise ValueError(f"exponent vector {u} does not have {n} coordinates")
    predicate = BoundedSubsetPredicate(BoundClass.TWO_SIDED, structure, budget, max_bound)
    word = Polynomial.one(n, Domain.NAT) + Polynomial.monomial(tuple(u), 1, Domain.NAT)
    return predicate.classify(word)


@dataclass(frozen=True)
class QfWitness:
    """T_i = T^(u+e_i) / T^u, with both exponents checked against the
    subring oracle (by default: cone membership, i.e. 1 + T^v is a
    subring generator) and the identity checked by cross-multiplication."""

    variable_index: int
    numerator_exp: Exponent
    denominator_exp: Exponent
    numerator_in_subring: bool
    denominator_in_subring: bool
    cross_multiplication_ok: bool

    @property
    def valid(self) -> bool:
        return (
            self.numerator_in_subring
            and self.denominator_in_subring
            and self.cross_multiplication_ok
        )


def qf_from_cone(
    c: Cone, member_oracle: Callable[[Exponent], bool] | None = None
) -> tuple[QfWitness, ...] | None:
    """Fraction witnesses for every ambient variable from an interior cone
    point: T_i = T^(u+e_i) / T^u.  None when the cone has no interior
    point within its box.

    Each witness is checked by cross-multiplication (T_i * T^u equals
    T^(u+e_i) exactly) and both exponents are run through the membership
    oracle, which defaults to cone membership.
    """
    u = find_interior_u(c)
    if u is None:
        return None
    oracle = member_oracle if member_oracle is not None else c.contains
    witnesses = []
    for i in range(c.nvars):
        shifted = tuple(x + (1 if i == j else 0) for j, x in enumerate(u))
        t_i = Polynomial.variable(c.nvars, i, Domain.NAT)
        cross = t_i * Polynomial.monomial(u, 1, Domain.NAT) == Polynomial.monomial(
            shifted, 1, Domain.NAT
        )
        witnesses.append(
            QfWitness(
                variable_index=i,
                numerator_exp=shifted,
                denominator_exp=u,
                numerator_in_subring=bool(oracle(shifted)),
                denominator_in_subring=bool(oracle(u)),
                cross_multiplication_ok=cross,
            )
        )
    return tuple(witnesses)


# -- the aggregate condition verifier ---------------------------------------


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConditionVerdict:
    """One condition's outcome: a Holds with its certificate lines, a Fails
    with a replayable witness, or an Unknown with the reason."""

    status: Verdict
    statement: str
    certificate: tuple
    witness: object | None = None


@dataclass(frozen=True)
class ConditionReport:
    """Deterministic aggregate of the four condition verdicts."""

    candidate: str
    truncation: int | None
    a: ConditionVerdict
    b: ConditionVerdict
    c: ConditionVerdict
    d: ConditionVerdict
    evidence_level: int | None
    budget_note: str

    def as_mapping(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate,
            "truncation": self.truncation,
            "conditions": {
                letter: {
                    "verdict": v.status.value,
                    "statement": v.statement,
                    "certificate": list(v.certificate),
                }
                for letter, v in self.as_mapping().items()
            },
            "evidence_level": self.evidence_level,
            "budget": self.budget_note,
        }

    def summary_lines(self) -> tuple:
        lines = [f"candidate: {self.candidate}"]
        if self.truncation is not None:
            lines.append(f"truncation: {self.truncation}")
        for letter, v in self.as_mapping().items():
            lines.append(f"{letter}) {v.status.value.upper():<8} {v.statement}")
            for cert_line in v.certificate:
                lines.append(f"     {cert_line}")
        if self.evidence_level is not None:
            lines.append(f"evidence level: denominators up to {self.evidence_level}")
        return tuple(lines)


@dataclass(frozen=True)
class RecurrenceCandidate:
    """The recurrence subring with the kernel of its surjection onto Q,
    plus the base elements to probe for condition c."""

    context: AbhyankarContext
    annihilator_bases: tuple = ()


@dataclass(frozen=True)
class UnitIdealCandidate:
    """Degenerate candidate: the subring is the whole ambient ring and the
    ideal is the unit ideal."""

    nvars: int = 2


STATEMENTS = {
    "a": "every ambient variable is a ratio of subring elements",
    "b": "the ideal generates the unit ideal of the ambient ring",
    "c": "some supplied base element admits only annihilators with all "
    "coefficients in the ideal",
    "d": "the quotient by the ideal contains the rationals",
}


def _condition_a_recurrence(ctx: AbhyankarContext) -> ConditionVerdict:
    try:
        t2w, t1w = fraction_field_witnesses(ctx)
    except ValueError as exc:
        return ConditionVerdict(Verdict.UNKNOWN, STATEMENTS["a"], (str(exc),))
    ok = t2w.exact and t1w.exact and t2w.denominator_nonzero and t1w.denominator_nonzero
    cert = tuple(
        f"{format_poly(w.target)} = ({format_poly(w.numerator.ambient)}) / "
        f"({format_poly(w.denominator.ambient)}); cross-multiplied residual "
        f"{format_poly(w.residual)}"
        for w in (t1w, t2w)
    )
    status = Verdict.HOLDS if ok else Verdict.UNKNOWN
    return ConditionVerdict(status, STATEMENTS["a"], cert, witness=(t1w, t2w))


def _condition_b_recurrence(
    ctx: AbhyankarContext, budget: GroebnerBudget
) -> ConditionVerdict:
    try:
        identity = unit_ideal_witness(ctx, 2)
    except (ValueError, UnverifiedContextError) as exc:
        return ConditionVerdict(Verdict.UNKNOWN, STATEMENTS["b"], (str(exc),))
    one = Polynomial.one(2, Domain.INT)
    membership = ideal_membership(
        one,
        [identity.kernel_factor_low.ambient, identity.kernel_factor_high.ambient],
        budget=budget,
    )
    if membership.status is MembershipStatus.NON_MEMBER:
        raise RuntimeError(
            "certificate inconsistency: the unit identity holds but ideal "
            "membership of 1 was refuted"
        )
    cert = [
        f"1 = ({format_poly(identity.multiplier)}) * "
        f"({format_poly(identity.kernel_factor_low.ambient)}) - "
        f"({format_poly(identity.kernel_factor_high.ambient)})",
        f"both factors have image 0: {identity.factors_in_kernel}",
        f"independent route: ideal membership of 1 in the two factors is "
        f"{membership.status.value}",
    ]
    if membership.status is MembershipStatus.MEMBER and membership.cofactors:
        combo = " + ".join(
            f"({format_poly(cf)})*({format_poly(g)})"
            for cf, g in zip(
                membership.cofactors,
                (
                    identity.kernel_factor_low.ambient,
                    identity.kernel_factor_high.ambient,
                ),
            )
        )
        cert.append(f"cofactor expansion: 1 = {combo}")
    ok = identity.identity_holds and all(identity.factors_in_kernel)
    status = Verdict.HOLDS if ok else Verdict.UNKNOWN
    return ConditionVerdict(status, STATEMENTS["b"], tuple(cert), witness=identity)


def _condition_c_recurrence(
    ctx: AbhyankarContext,
    bases,
    shift_degree: int,
    shift_coeff: int,
    budget: GroebnerBudget,
) -> ConditionVerdict:
    if not bases:
        return ConditionVerdict(
            Verdict.UNKNOWN,
            STATEMENTS["c"],
            ("no base elements supplied; nothing was searched",),
        )
    cert = []
    witnesses = []
    unresolved = 0
    for base in bases:
        try:
            result = non_kernel_annihilator(ctx, base, shift_degree, shift_coeff, budget)
        except UnverifiedContextError as exc:
            return ConditionVerdict(Verdict.UNKNOWN, STATEMENTS["c"], (str(exc),))
        if result.found:
            w = result.witness
            witnesses.append(w)
            cert.append(
                f"base {format_poly(base)}: shift {format_poly(w.shift)}, "
                f"annihilator h = {w.h.describe()} with a coefficient outside "
                f"the kernel; h(base + shift) expands to 0"
            )
        else:
            unresolved += 1
            cert.append(
                f"base {format_poly(base)}: no witness within the search bounds "
                f"({result.attempts} attempts)"
            )
    if unresolved == 0:
        return ConditionVerdict(
            Verdict.FAILS, STATEMENTS["c"], tuple(cert), witness=tuple(witnesses)
        )
    return ConditionVerdict(
        Verdict.UNKNOWN, STATEMENTS["c"], tuple(cert), witness=tuple(witnesses)
    )


def _condition_d_recurrence(
    ctx: AbhyankarContext, evidence_bound: int
) -> ConditionVerdict:
    bound = max(evidence_bound, ctx.truncation)
    try:
        cert = []
        for m in range(2, ctx.truncation + 1):
            image = ctx.generator_element(m).rational_image
            if image != Fraction(1, m):
                raise RuntimeError(
                    f"certificate inconsistency: generator {m} has image {image}"
                )
            cert.append(
                f"generator {m} is a preimage of 1/{m} (relation-checked at "
                f"this truncation)"
            )
    except UnverifiedContextError as exc:
        return ConditionVerdict(Verdict.UNKNOWN, STATEMENTS["d"], (str(exc),))
    for m in range(ctx.truncation + 1, bound + 1):
        generator(m)  # raises if the recurrence could not produce it
        cert.append(
            f"generator {m} is the designated preimage of 1/{m} at "
            f"truncation {m} (beyond the relation-checked level)"
        )
    denominator = math.lcm(*range(2, ctx.truncation + 1))
    cert.append(
        f"the image is a ring, so the relation-checked part alone contains "
        f"every rational whose denominator divides a power of {denominator}"
    )
    return ConditionVerdict(Verdict.HOLDS, STATEMENTS["d"], tuple(cert))


def _verify_recurrence(
    candidate: RecurrenceCandidate,
    budget: GroebnerBudget,
    shift_degree: int,
    shift_coeff: int,
    evidence_bound: int,
) -> ConditionReport:
    ctx = candidate.context
    return ConditionReport(
        candidate=f"recurrence subring at truncation {ctx.truncation}",
        truncation=ctx.truncation,
        a=_condition_a_recurrence(ctx),
        b=_condition_b_recurrence(ctx, budget),
        c=_condition_c_recurrence(
            ctx, candidate.annihilator_bases, shift_degree, shift_coeff, budget
        ),
        d=_condition_d_recurrence(ctx, evidence_bound),
        evidence_level=max(evidence_bound, ctx.truncation),
        budget_note=f"groebner budget ({budget.max_degree}, {budget.max_steps})",
    )


def _verify_unit_ideal(candidate: UnitIdealCandidate) -> ConditionReport:
    n = candidate.nvars
    variables = [Polynomial.variable(n, i, Domain.INT) for i in range(n)]
    one = Polynomial.one(n, Domain.INT)
    a_cert = tuple(
        f"{format_poly(v)} = {format_poly(v)} / 1; residual "
        f"{format_poly(v * one - v)}"
        for v in variables
    )
    a = ConditionVerdict(Verdict.HOLDS, STATEMENTS["a"], a_cert)
    b = ConditionVerdict(
        Verdict.HOLDS,
        STATEMENTS["b"],
        ("the ideal is the whole ring, so it contains 1; 1 = 1 * 1",),
    )
    c = ConditionVerdict(
        Verdict.HOLDS,
        STATEMENTS["c"],
        (
            "every coefficient of every polynomial lies in the unit ideal, "
            "so any base element works vacuously (e.g. h = X - base)",
        ),
    )
    d = ConditionVerdict(
        Verdict.FAILS,
        STATEMENTS["d"],
        (
            "1 lies in the ideal, so the quotient is the zero ring",
            "in the zero ring 1 = 0, and no map from the rationals sends 1 to 0",
        ),
        witness=one,
    )
    return ConditionReport(
        candidate=f"full ring on {n} variables with the unit ideal",
        truncation=None,
        a=a,
        b=b,
        c=c,
        d=d,
        evidence_level=None,
        budget_note="none needed (all checks are closed-form)",
    )


def verify_conditions(
    candidate,
    budget: GroebnerBudget = GroebnerBudget(),
    shift_degree: int = 2,
    shift_coeff: int = 2,
    evidence_bound: int = 20,
) -> ConditionReport:
    """Aggregate verifier over a subring/ideal candidate.

    Runs the four condition checks, each certified or witnessed, and
    merges them into a deterministic report.  Budget exhaustion in any
    check surfaces as Unknown for that condition only.  ``evidence_bound``
    sets how far the finite preimage evidence for condition d reaches;
    preimages beyond the context's relation-checked truncation are
    designated by the recurrence and marked as such.
    """
    if isinstance(candidate, RecurrenceCandidate):
        return _verify_recurrence(
            candidate, budget, shift_degree, shift_coeff, evidence_bound
        )
    if isinstance(candidate, UnitIdealCandidate):
        return _verify_unit_ideal(candidate)
    raise TypeError(
        f"expected RecurrenceCandidate or UnitIdealCandidate, got {type(candidate).__name__}"
    )
