"""Command-line entry point.

Subcommands expose every layer: polynomial arithmetic (``poly``), ideal and
subalgebra queries (``groebner``), presented-semiring word problems
(``presentation``), the recurrence-subring verification pipeline
(``abhyankar``), exponent-cone checks (``cone``), and the published JSON
schema (``report-schema``).

Every run produces one report: text mode prints the human-readable lines,
``--json`` prints a schema-valid envelope (version ``semiring-lab/report-v1``)
carrying the same verdicts.  Timing goes to stderr in text mode so stdout
stays deterministic.

Exit codes are a function of the verdicts alone: 0 when every verdict matches
the subcommand's expectation (query subcommands expect nothing and always
exit 0), 1 when a verification subcommand's verdict deviates or, under
``--strict``, when any verdict is unknown, and 2 for usage errors, including
malformed polynomial input (reported with its position).

Budgets come from flags (``--deg``, ``--coeff``, ``--steps``, ``--box``,
``--k``), with defaults deg 8, coeff 64, steps 50000, box 6, k 6.  The
environment variable ``SEMIRING_LAB_BUDGET`` overrides the defaults with a
comma-separated list such as ``deg=10,steps=80000``; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .abhyankar import (
    AbhyankarContext,
    NotInSubringError,
    UnverifiedContextError,
    generator,
    non_extendability_certificate,
)
from .conjectures import (
    RecurrenceCandidate,
    cone_enumerate,
    find_interior_u,
    purity_check,
    qf_from_cone,
    verify_conditions,
)
from .groebner import (
    BudgetExceededError,
    GroebnerBudget,
    MembershipStatus,
    MonomialOrder,
    buchberger,
    ideal_membership,
    relation_ideal,
    subalgebra_membership,
)
from .polynomials import (
    Domain,
    DomainError,
    ParseError,
    Polynomial,
    format_poly,
    parse_poly,
    t_names,
    x_names,
)
from .semiring import (
    Budget,
    BudgetError,
    EvalHom,
    Presentation,
    Tri,
    congruence_close,
    find_L,
    is_add_cancellative,
    is_add_idempotent,
    preorder_leq,
    replay_trace,
    words_equivalent,
)

SCHEMA_ID = "semiring-lab/report-v1"
ENV_VAR = "SEMIRING_LAB_BUDGET"

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "$id": SCHEMA_ID,
    "title": "semiring-lab run report",
    "type": "object",
    "required": [
        "schema",
        "command",
        "verdicts",
        "certificates",
        "timing_seconds",
        "budget_exhausted",
        "result",
    ],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "command": {"type": "array", "items": {"type": "string"}},
        "verdicts": {
            "type": "object",
            "additionalProperties": {"type": "string", "pattern": "^[a-z][a-z-]*$"},
        },
        "certificates": {"type": "array", "items": {"type": "string"}},
        "timing_seconds": {"type": "number", "minimum": 0},
        "budget_exhausted": {"type": "boolean"},
        "result": {"type": "object"},
    },
    "additionalProperties": False,
}

_DEFAULTS = {"deg": 8, "coeff": 64, "steps": 50_000, "box": 6, "k": 6}


class UsageError(Exception):
    """Bad flags, malformed input, unreadable files: exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Validated budgets and modes for one run."""

    subcommand: str
    degree: int
    coeff: int
    steps: int
    box: int
    truncation: int
    json_mode: bool
    strict: bool

    def __post_init__(self):
        for name, value in (
            ("deg", self.degree),
            ("coeff", self.coeff),
            ("steps", self.steps),
            ("k", self.truncation),
        ):
            if value <= 0:
                raise UsageError(f"budget --{name} must be positive, got {value}")
        if self.box < 0:
            raise UsageError(f"--box must be nonnegative, got {self.box}")
        if self.truncation < 2:
            raise UsageError(f"--k must be at least 2, got {self.truncation}")

    @property
    def groebner_budget(self) -> GroebnerBudget:
        return GroebnerBudget(max_degree=self.degree, max_steps=self.steps)

    @property
    def semiring_budget(self) -> Budget:
        return Budget(
            max_degree=self.degree, max_coeff=self.coeff, max_steps=self.steps
        )


@dataclass
class HandlerResult:
    """What one subcommand produced, before the envelope is attached."""

    verdicts: dict
    certificates: list
    result: dict
    display: list
    budget_exhausted: bool = False
    expected: dict | None = None


@dataclass
class Report:
    """The run report: identical content in text and JSON modes."""

    command: list
    verdicts: dict
    certificates: list
    result: dict
    budget_exhausted: bool
    timing_seconds: float

    def __post_init__(self):
        for name, verdict in self.verdicts.items():
            if verdict == "unknown":
                if not self.certificates and not self.budget_exhausted:
                    raise RuntimeError(
                        f"verdict {name} is unknown without a reason or budget flag"
                    )
            elif not self.certificates:
                raise RuntimeError(f"verdict {name} lacks a certificate")

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_ID,
            "command": list(self.command),
            "verdicts": dict(self.verdicts),
            "certificates": list(self.certificates),
            "timing_seconds": self.timing_seconds,
            "budget_exhausted": self.budget_exhausted,
            "result": self.result,
        }


# -- input parsing helpers --------------------------------------------------


def _parse_word(text: str, nvars: int, domain: Domain) -> Polynomial:
    try:
        return parse_poly(text, t_names(nvars), domain)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc
    except (DomainError, ValueError) as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc


def _read_poly_file(path: str, nvars: int, domain: Domain) -> list:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    polys = []
    for number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            polys.append(parse_poly(stripped, t_names(nvars), domain))
        except (ParseError, DomainError, ValueError) as exc:
            raise UsageError(f"{path}:{number}: {exc}") from exc
    if not polys:
        raise UsageError(f"{path} contains no polynomials")
    return polys


def _read_presentation(path: str | None, nvars: int) -> Presentation:
    if path is None:
        return Presentation.free(nvars)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return Presentation.from_text(nvars, text)
    except (ParseError, DomainError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _parse_vector(text: str) -> tuple:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        return tuple(int(part.strip()) for part in body.split(",") if part.strip())
    except ValueError as exc:
        raise UsageError(f"cannot parse exponent vector {text!r}") from exc


def _parse_vectors(text: str) -> list:
    chunks = [c for c in text.split(";") if c.strip()]
    return [_parse_vector(c) for c in chunks]


def _parse_assignment(text: str) -> EvalHom:
    try:
        values = tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())
        return EvalHom(values)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse assignment {text!r}: {exc}") from exc


def _structure_from_args(args, config: RunConfig):
    if getattr(args, "assign", None):
        return _parse_assignment(args.assign)
    if getattr(args, "relations", None):
        return _read_presentation(args.relations, args.nvars)
    raise UsageError("supply --assign for an evaluation target or --relations for a presentation")


_DOMAINS = {"nat": Domain.NAT, "int": Domain.INT, "rat": Domain.RAT}


# -- subcommand handlers ----------------------------------------------------


def _handle_poly(args, config: RunConfig) -> HandlerResult:
    domain = _DOMAINS[args.domain]
    nvars = args.nvars
    a = _parse_word(args.a, nvars, domain)
    if args.op == "eval":
        try:
            point = [Fraction(part.strip()) for part in args.b.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse point {args.b!r}: {exc}") from exc
        if len(point) != nvars:
            raise UsageError(f"point has {len(point)} coordinates, need {nvars}")
        value = a.evaluate(point)
        text = str(value)
        cert = [f"({format_poly(a)}) at ({args.b}) = {text}"]
        return HandlerResult(
            {"computation": "ok"}, cert, {"value": text}, [text]
        )
    if args.op == "pow":
        try:
            exponent = int(args.b)
        except ValueError as exc:
            raise UsageError(f"exponent must be an integer, got {args.b!r}") from exc
        if exponent < 0:
            raise UsageError("exponent must be nonnegative")
        try:
            out = a**exponent
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        text = format_poly(out)
        return HandlerResult(
            {"computation": "ok"},
            [f"({format_poly(a)})^{exponent} = {text}"],
            {"value": text},
            [text],
        )
    b = _parse_word(args.b, nvars, domain)
    try:
        if args.op == "add":
            out = a + b
        elif args.op == "sub":
            out = a - b
        else:
            out = a * b
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    text = format_poly(out)
    symbol = {"add": "+", "sub": "-", "mul": "*"}[args.op]
    cert = [f"({format_poly(a)}) {symbol} ({format_poly(b)}) = {text}"]
    return HandlerResult({"computation": "ok"}, cert, {"value": text}, [text])


def _order_from_args(args) -> MonomialOrder:
    return MonomialOrder("lex" if args.order == "lex" else "grlex")


def _handle_groebner_basis(args, config: RunConfig) -> HandlerResult:
    gens = _read_poly_file(args.ideal, args.nvars, Domain.RAT)
    order = _order_from_args(args)
    try:
        gb = buchberger(gens, order, config.groebner_budget)
        complete = True
    except BudgetExceededError as exc:
        gb = exc.partial
        complete = False
    basis_text = [format_poly(g) for g in gb.generators]
    verdict = "complete" if complete else "partial"
    cert = (
        [f"reduced basis with {len(basis_text)} elements; every S-polynomial reduces to 0"]
        if complete
        else [f"budget exhausted after {gb.steps_used} reductions; partial basis returned"]
    )
    return HandlerResult(
        {"basis": verdict},
        cert,
        {"basis": basis_text, "steps_used": gb.steps_used},
        basis_text,
        budget_exhausted=not complete,
    )


def _handle_groebner_member(args, config: RunConfig) -> HandlerResult:
    gens = _read_poly_file(args.ideal, args.nvars, Domain.RAT)
    target = _parse_word(args.poly, args.nvars, Domain.RAT)
    cert = ideal_membership(target, gens, budget=config.groebner_budget)
    if cert.status is MembershipStatus.MEMBER:
        combo = " + ".join(
            f"({format_poly(c)})*({format_poly(g)})"
            for c, g in zip(cert.cofactors, gens)
        )
        lines = [f"{format_poly(target)} = {combo}"]
        return HandlerResult(
            {"membership": "member"},
            lines,
            {"cofactors": [format_poly(c) for c in cert.cofactors]},
            [f"member: {lines[0]}"],
        )
    if cert.status is MembershipStatus.NON_MEMBER:
        lines = ["normal form against the complete reduced basis is nonzero"]
        return HandlerResult(
            {"membership": "non-member"}, lines, {}, ["non-member"]
        )
    return HandlerResult(
        {"membership": "unknown"},
        ["budget exhausted before the basis was complete"],
        {},
        ["unknown (budget exhausted)"],
        budget_exhausted=True,
    )


def _handle_groebner_relations(args, config: RunConfig) -> HandlerResult:
    gens = _read_poly_file(args.gens, args.nvars, Domain.INT)
    result = relation_ideal(gens, config.groebner_budget)
    names = x_names(len(gens) + 1)
    lines = [format_poly(r, names) for r in result.relations]
    verdict = "complete" if result.complete else "partial"
    cert = [
        f"{len(lines)} relation generators among the {len(gens)} inputs "
        f"({verdict} within budget)"
    ]
    return HandlerResult(
        {"relations": verdict},
        cert,
        {"relations": lines},
        lines if lines else ["(no relations)"],
        budget_exhausted=not result.complete,
    )


def _handle_groebner_submember(args, config: RunConfig) -> HandlerResult:
    gens = _read_poly_file(args.gens, args.nvars, Domain.INT)
    target = _parse_word(args.poly, args.nvars, Domain.RAT)
    cert = subalgebra_membership(target, gens, config.groebner_budget)
    names = x_names(len(gens) + 1)
    if cert.status is MembershipStatus.MEMBER:
        rep = format_poly(cert.representation, names)
        lines = [
            f"{format_poly(target)} = {rep} in the generators",
            f"integer coefficients: {'yes' if cert.integral else 'no'}",
        ]
        return HandlerResult(
            {"membership": "member"},
            lines,
            {"representation": rep, "integral": cert.integral},
            [f"member: {rep}"],
        )
    if cert.status is MembershipStatus.NON_MEMBER:
        lines = ["tag-elimination normal form keeps ambient variables"]
        return HandlerResult({"membership": "non-member"}, lines, {}, ["non-member"])
    return HandlerResult(
        {"membership": "unknown"},
        ["budget exhausted before the elimination basis was complete"],
        {},
        ["unknown (budget exhausted)"],
        budget_exhausted=True,
    )


def _render_trace(trace, pres: Presentation) -> list:
    lines = []
    for step in trace:
        direction = "forward" if step.forward else "backward"
        shift = "*".join(
            f"T{i + 1}^{e}" for i, e in enumerate(step.shift) if e
        ) or "1"
        lines.append(
            f"apply relation {step.rel_index + 1} {direction}, multiplier "
            f"{step.mult}*{shift}"
        )
    return lines


def _tri_handler(answer, pres, lhs=None) -> HandlerResult:
    verdict = answer.verdict.value
    if answer.verdict is Tri.YES and answer.trace is not None:
        cert = _render_trace(answer.trace, pres)
        if lhs is not None:
            replay_trace(lhs, answer.trace, pres)
        if not cert:
            cert = ["words are identical; empty derivation"]
        return HandlerResult(
            {"equivalent": verdict}, cert, {"trace_length": len(answer.trace)}, [f"yes ({len(answer.trace)} steps)"]
        )
    if answer.verdict is Tri.NO and answer.separator is not None:
        sep = answer.separator
        if sep.kind == "exhausted-component":
            cert = [
                f"separating invariant: a fully explored congruence component "
                f"of size {sep.component_size} contains one word but not the other"
            ]
        else:
            cert = [
                f"separating evaluation at {tuple(str(v) for v in sep.assignment)} "
                f"gives values {tuple(str(v) for v in sep.values)}"
            ]
        return HandlerResult({"equivalent": verdict}, cert, {"separator": sep.kind}, ["no"])
    return HandlerResult(
        {"equivalent": verdict},
        ["budget exhausted before a derivation or separator appeared"],
        {},
        ["unknown"],
        budget_exhausted=True,
    )


def _handle_presentation_equal(args, config: RunConfig) -> HandlerResult:
    pres = _read_presentation(args.relations, args.nvars)
    lhs = _parse_word(args.a, args.nvars, Domain.NAT)
    rhs = _parse_word(args.b, args.nvars, Domain.NAT)
    cc = congruence_close(pres, config.semiring_budget)
    return _tri_handler(words_equivalent(lhs, rhs, cc), pres, lhs)


def _handle_presentation_idempotent(args, config: RunConfig) -> HandlerResult:
    pres = _read_presentation(args.relations, args.nvars)
    answer = is_add_idempotent(pres, config.semiring_budget)
    out = _tri_handler(answer, pres, pres.one + pres.one)
    out.verdicts = {"idempotent": answer.verdict.value}
    return out


def _handle_presentation_cancellative(args, config: RunConfig) -> HandlerResult:
    pres = _read_presentation(args.relations, args.nvars)
    report = is_add_cancellative(pres, config.semiring_budget)
    verdict = report.verdict.value
    if report.verdict is Tri.NO and report.witness is not None:
        a, b, c = report.witness
        cert = [
            f"witness: a = {format_poly(a)}, b = {format_poly(b)}, "
            f"c = {format_poly(c)}; a + c ~ b + c holds but a ~ b is refuted"
        ]
        return HandlerResult(
            {"cancellative": verdict},
            cert,
            {"witness": [format_poly(p) for p in (a, b, c)]},
            [f"no ({cert[0]})"],
        )
    cert = [report.reason] if report.reason else []
    return HandlerResult(
        {"cancellative": verdict},
        cert,
        {},
        [verdict],
        budget_exhausted=(report.verdict is Tri.UNKNOWN),
    )


def _handle_presentation_find_l(args, config: RunConfig) -> HandlerResult:
    pres = _read_presentation(args.relations, args.nvars)
    members = find_L(pres, config.semiring_budget)
    lines = [format_poly(m, t_names(args.nvars)) for m in members]
    cert = [
        f"{len(lines)} one-absorbing words found in the search box "
        f"(each l satisfies l + 1 ~ l within budget)"
    ]
    return HandlerResult(
        {"search": "ok"},
        cert,
        {"members": lines},
        lines if lines else ["(none found)"],
    )


def _handle_presentation_preorder(args, config: RunConfig) -> HandlerResult:
    pres = _read_presentation(args.relations, args.nvars)
    a = _parse_word(args.a, args.nvars, Domain.NAT)
    b = _parse_word(args.b, args.nvars, Domain.NAT)
    answer = preorder_leq(a, b, pres, config.semiring_budget)
    verdict = answer.verdict.value
    if answer.verdict is Tri.YES:
        cert = [f"difference witness c = {format_poly(answer.witness)}"]
        return HandlerResult(
            {"leq": verdict}, cert, {"witness": format_poly(answer.witness)}, ["yes"]
        )
    if answer.verdict is Tri.NO:
        cert = ["the bound's component is fully explored and never dominates"]
        return HandlerResult({"leq": verdict}, cert, {}, ["no"])
    return HandlerResult(
        {"leq": verdict}, ["budget exhausted"], {}, ["unknown"], budget_exhausted=True
    )


def _handle_abhyankar_verify(args, config: RunConfig) -> HandlerResult:
    ctx = AbhyankarContext.build(config.truncation, config.groebner_budget)
    bases = tuple(
        _parse_word(text, 2, Domain.NAT)
        for text in (args.bases.split(";") if args.bases else ["T1*T2"])
        if text.strip()
    )
    report = verify_conditions(
        RecurrenceCandidate(ctx, bases),
        config.groebner_budget,
        evidence_bound=args.evidence,
    )
    verdicts = {
        letter: verdict.status.value for letter, verdict in report.as_mapping().items()
    }
    certificates = []
    for letter, verdict in report.as_mapping().items():
        certificates.extend(f"{letter}: {line}" for line in verdict.certificate)
    display = list(report.summary_lines())
    return HandlerResult(
        verdicts,
        certificates,
        report.to_dict(),
        display,
        budget_exhausted=any(v == "unknown" for v in verdicts.values()),
        expected={"a": "holds", "b": "holds", "c": "fails", "d": "holds"},
    )


def _handle_abhyankar_nonext(args, config: RunConfig) -> HandlerResult:
    if args.nmax < 2:
        raise UsageError(f"--nmax must be at least 2, got {args.nmax}")
    cert = non_extendability_certificate(args.nmax)
    verdict = "holds" if cert.holds else "fails"
    lines = list(cert.derivation)
    for row in cert.rows:
        lines.append(
            f"level {row.n}: coefficient {row.coefficient}, required value "
            f"{row.required_value} -- contradiction"
        )
    return HandlerResult(
        {"non-extendability": verdict},
        lines,
        {
            "first_level": cert.first_n,
            "levels": [row.n for row in cert.rows],
        },
        lines,
        expected={"non-extendability": "holds"},
    )


def _handle_abhyankar_generator(args, config: RunConfig) -> HandlerResult:
    if args.n < 2:
        raise UsageError(f"--n must be at least 2, got {args.n}")
    text = format_poly(generator(args.n))
    return HandlerResult(
        {"computation": "ok"},
        [f"generator {args.n} = {text}"],
        {"value": text},
        [text],
    )


def _handle_abhyankar_image(args, config: RunConfig) -> HandlerResult:
    ctx = AbhyankarContext.build(config.truncation, config.groebner_budget)
    names = x_names(config.truncation)
    try:
        rep = parse_poly(args.rep, names, Domain.INT)
    except (ParseError, DomainError, ValueError) as exc:
        raise UsageError(f"cannot parse {args.rep!r}: {exc}") from exc
    try:
        element = ctx.element(rep)
        value = element.rational_image
    except UnverifiedContextError as exc:
        return HandlerResult(
            {"image": "unknown"}, [str(exc)], {}, [f"unknown: {exc}"], budget_exhausted=True
        )
    text = str(value)
    cert = [
        f"representation {format_poly(rep, names)} expands to "
        f"{format_poly(element.ambient)}",
        f"image at (1/2..1/{config.truncation}) = {text}",
    ]
    return HandlerResult(
        {"image": "ok"}, cert, {"value": text, "kernel": value == 0}, [text]
    )


def _handle_cone_enumerate(args, config: RunConfig) -> HandlerResult:
    structure = _structure_from_args(args, config)
    cone = cone_enumerate(structure, config.box, config.semiring_budget)
    members = [list(u) for u in cone.sorted_members()]
    verdict = "complete" if not cone.unknown else "partial"
    cert = [
        f"{len(members)} members in the box [0, {config.box}]^{cone.nvars}; "
        f"{len(cone.unknown)} undecided"
    ]
    display = [str(tuple(u)) for u in cone.sorted_members()]
    return HandlerResult(
        {"cone": verdict},
        cert,
        {"members": members, "unknown": [list(u) for u in cone.unknown]},
        display if display else ["(empty)"],
        budget_exhausted=bool(cone.unknown),
    )


def _handle_cone_purity(args, config: RunConfig) -> HandlerResult:
    gens = _parse_vectors(args.gens)
    result = purity_check(gens, config.box)
    if result.pure:
        cert = [
            f"all {len(result.members)} members divide down inside the "
            f"generated set"
        ]
        return HandlerResult({"purity": "pure"}, cert, {}, ["pure"])
    a, k, quotient = result.witness
    cert = [
        f"witness: {tuple(a)} is generated, {tuple(a)}/{k} = {tuple(quotient)} "
        f"is integral but not generated"
    ]
    return HandlerResult(
        {"purity": "impure"},
        cert,
        {"witness": {"member": list(a), "divisor": k, "quotient": list(quotient)}},
        [f"impure ({cert[0]})"],
    )


def _handle_cone_interior(args, config: RunConfig) -> HandlerResult:
    structure = _structure_from_args(args, config)
    cone = cone_enumerate(structure, config.box, config.semiring_budget)
    u = find_interior_u(cone)
    if u is None:
        return HandlerResult(
            {"interior": "not-found"},
            [f"no member has all unit shifts inside the cone (box {config.box})"],
            {},
            ["not-found"],
            budget_exhausted=bool(cone.unknown),
        )
    cert = [f"u = {tuple(u)}; every u + e_i is a cone member"]
    return HandlerResult({"interior": "found"}, cert, {"u": list(u)}, [str(tuple(u))])


def _handle_cone_qf(args, config: RunConfig) -> HandlerResult:
    structure = _structure_from_args(args, config)
    cone = cone_enumerate(structure, config.box, config.semiring_budget)
    witnesses = qf_from_cone(cone)
    if witnesses is None:
        return HandlerResult(
            {"fractions": "not-found"},
            ["no interior point within the box"],
            {},
            ["not-found"],
            budget_exhausted=bool(cone.unknown),
        )
    cert = []
    rows = []
    for w in witnesses:
        cert.append(
            f"T{w.variable_index + 1} = T^{tuple(w.numerator_exp)} / "
            f"T^{tuple(w.denominator_exp)}; cross-multiplication "
            f"{'ok' if w.cross_multiplication_ok else 'FAILED'}"
        )
        rows.append(
            {
                "variable": w.variable_index + 1,
                "numerator": list(w.numerator_exp),
                "denominator": list(w.denominator_exp),
                "valid": w.valid,
            }
        )
    verdict = "found" if all(w.valid for w in witnesses) else "partial"
    return HandlerResult({"fractions": verdict}, cert, {"witnesses": rows}, cert)


def _handle_report_schema(args, config: RunConfig) -> HandlerResult:
    text = json.dumps(REPORT_SCHEMA, indent=2, sort_keys=True)
    return HandlerResult(
        {"schema": "ok"}, [f"schema id {SCHEMA_ID}"], {"value": REPORT_SCHEMA}, [text]
    )


# -- argument parser --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse errors through our exit path
        raise UsageError(message)


def _env_overrides(env) -> dict:
    raw = env.get(ENV_VAR, "") if env is not None else ""
    overrides = {}
    if not raw:
        return overrides
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise UsageError(f"{ENV_VAR}: expected key=value, got {chunk!r}")
        key, _, value = chunk.partition("=")
        key = key.strip()
        if key not in _DEFAULTS:
            raise UsageError(
                f"{ENV_VAR}: unknown budget {key!r} (known: {', '.join(sorted(_DEFAULTS))})"
            )
        try:
            overrides[key] = int(value)
        except ValueError as exc:
            raise UsageError(f"{ENV_VAR}: {key} must be an integer") from exc
    return overrides


def _build_parser() -> _Parser:
    parser = _Parser(prog="semiring-lab", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--deg", type=int, default=None, help="degree budget")
    common.add_argument("--coeff", type=int, default=None, help="coefficient budget")
    common.add_argument("--steps", type=int, default=None, help="step budget")
    common.add_argument("--box", type=int, default=None, help="cone box bound")
    common.add_argument("--k", type=int, default=None, help="truncation level")
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument(
        "--strict", action="store_true", help="treat unknown verdicts as failures"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    poly = sub.add_parser("poly", parents=[common], help="polynomial arithmetic")
    poly.add_argument("op", choices=["add", "sub", "mul", "pow", "eval"])
    poly.add_argument("a")
    poly.add_argument("b")
    poly.add_argument("--nvars", type=int, default=2)
    poly.add_argument("--domain", choices=sorted(_DOMAINS), default="int")
    poly.set_defaults(handler=_handle_poly)

    groebner = sub.add_parser("groebner", help="ideal and subalgebra queries")
    gsub = groebner.add_subparsers(dest="gop", required=True)
    basis = gsub.add_parser("basis", parents=[common])
    basis.add_argument("--ideal", required=True, help="file with one polynomial per line")
    basis.add_argument("--nvars", type=int, default=2)
    basis.add_argument("--order", choices=["grlex", "lex"], default="grlex")
    basis.set_defaults(handler=_handle_groebner_basis)
    member = gsub.add_parser("member", parents=[common])
    member.add_argument("--ideal", required=True)
    member.add_argument("--poly", required=True)
    member.add_argument("--nvars", type=int, default=2)
    member.set_defaults(handler=_handle_groebner_member)
    relations = gsub.add_parser("relations", parents=[common])
    relations.add_argument("--gens", required=True)
    relations.add_argument("--nvars", type=int, default=2)
    relations.set_defaults(handler=_handle_groebner_relations)
    submember = gsub.add_parser("submember", parents=[common])
    submember.add_argument("--gens", required=True)
    submember.add_argument("--poly", required=True)
    submember.add_argument("--nvars", type=int, default=2)
    submember.set_defaults(handler=_handle_groebner_submember)

    presentation = sub.add_parser("presentation", help="presented-semiring queries")
    psub = presentation.add_subparsers(dest="pop", required=True)
    for name, handler, extra in (
        ("equal", _handle_presentation_equal, ("a", "b")),
        ("idempotent", _handle_presentation_idempotent, ()),
        ("cancellative", _handle_presentation_cancellative, ()),
        ("find-l", _handle_presentation_find_l, ()),
    ):
        p = psub.add_parser(name, parents=[common])
        p.add_argument("--relations", default=None, help="file of lhs = rhs lines (omit for the free semiring)")
        p.add_argument("--nvars", type=int, default=1)
        for positional in extra:
            p.add_argument(positional)
        p.set_defaults(handler=handler)
    preorder = psub.add_parser("preorder", parents=[common])
    preorder.add_argument("--relations", default=None)
    preorder.add_argument("--nvars", type=int, default=1)
    preorder.add_argument("--a", required=True)
    preorder.add_argument("--b", required=True)
    preorder.set_defaults(handler=_handle_presentation_preorder)

    abhyankar = sub.add_parser("abhyankar", help="recurrence-subring pipeline")
    asub = abhyankar.add_subparsers(dest="aop", required=True)
    verify = asub.add_parser("verify", parents=[common])
    verify.add_argument("--bases", default=None, help="semicolon-separated base elements for condition c")
    verify.add_argument("--evidence", type=int, default=20, help="preimage evidence bound for condition d")
    verify.set_defaults(handler=_handle_abhyankar_verify)
    nonext = asub.add_parser("nonext", parents=[common])
    nonext.add_argument("--nmax", type=int, default=2)
    nonext.set_defaults(handler=_handle_abhyankar_nonext)
    gen = asub.add_parser("generator", parents=[common])
    gen.add_argument("--n", type=int, required=True)
    gen.set_defaults(handler=_handle_abhyankar_generator)
    image = asub.add_parser("image", parents=[common])
    image.add_argument("--rep", required=True, help="integer polynomial in X2..Xk")
    image.set_defaults(handler=_handle_abhyankar_image)

    cone = sub.add_parser("cone", help="exponent-cone checks")
    csub = cone.add_subparsers(dest="cop", required=True)
    for name, handler in (
        ("enumerate", _handle_cone_enumerate),
        ("interior", _handle_cone_interior),
        ("qf", _handle_cone_qf),
    ):
        p = csub.add_parser(name, parents=[common])
        p.add_argument("--assign", default=None, help="comma-separated positive rationals")
        p.add_argument("--relations", default=None)
        p.add_argument("--nvars", type=int, default=1)
        p.set_defaults(handler=handler)
    purity = csub.add_parser("purity", parents=[common])
    purity.add_argument("--gens", required=True, help='vectors like "(2,0);(0,1)"')
    purity.set_defaults(handler=_handle_cone_purity)

    schema = sub.add_parser("report-schema", parents=[common], help="print the JSON report schema")
    schema.set_defaults(handler=_handle_report_schema)
    return parser


def _config_from_args(args, env) -> RunConfig:
    overrides = _env_overrides(env)
    resolved = dict(_DEFAULTS)
    resolved.update(overrides)
    for key, attr in (
        ("deg", "deg"),
        ("coeff", "coeff"),
        ("steps", "steps"),
        ("box", "box"),
        ("k", "k"),
    ):
        flag = getattr(args, attr, None)
        if flag is not None:
            resolved[key] = flag
    return RunConfig(
        subcommand=args.subcommand,
        degree=resolved["deg"],
        coeff=resolved["coeff"],
        steps=resolved["steps"],
        box=resolved["box"],
        truncation=resolved["k"],
        json_mode=bool(getattr(args, "json", False)),
        strict=bool(getattr(args, "strict", False)),
    )


def _exit_code(verdicts: dict, expected: dict | None, strict: bool) -> int:
    for name, verdict in sorted(verdicts.items()):
        if verdict == "unknown":
            if strict:
                return 1
        elif expected is not None and name in expected and expected[name] != verdict:
            return 1
    return 0


def main(argv=None, env=None) -> int:
    import os

    if env is None:
        env = os.environ
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args, env)
        start = time.perf_counter()
        outcome: HandlerResult = args.handler(args, config)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"error: {exc} (raise --deg/--coeff/--steps)", file=sys.stderr)
        return 2
    except NotInSubringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = Report(
        command=argv,
        verdicts=outcome.verdicts,
        certificates=outcome.certificates,
        result=outcome.result,
        budget_exhausted=outcome.budget_exhausted,
        timing_seconds=round(elapsed, 6),
    )
    if config.json_mode:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        for line in outcome.display:
            print(line)
        print(f"timing: {report.timing_seconds}s", file=sys.stderr)
    return _exit_code(outcome.verdicts, outcome.expected, config.strict)


if __name__ == "__main__":
    sys.exit(main())
