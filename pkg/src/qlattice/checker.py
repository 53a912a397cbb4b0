"""Equation checking over subspace assignments.

An equation either has a falsifying assignment or it does not, and only
the first half of that alternative is observable by evaluation: a
counterexample is a certificate, while surviving every sample proves
nothing.  ``check`` therefore runs assignment-generating strategies in a
fixed order (stored witnesses, then a structured coordinate family, then
random sampling) and stops at the first disagreement; a clean run is
reported as ``holds-on-samples``, never as validity.

Counterexamples are self-certifying: before one is returned it is
re-evaluated with the alternative complement-based meet, so a bug in
either meet route surfaces as a loud :class:`CheckError` instead of a
bogus verdict.

The ``run_*_suite`` functions package the recurring experiments (the
dimension bound on alpha, the line classification, the hierarchy
separation, the always-true laws, route agreement, counterexample
transport, and the distinct-line family) into pass/fail records with
inline certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from random import Random
from typing import Iterable, Iterator, Sequence

from .fixtures import format_assignment_fixture
from .formulas import (
    alpha,
    counterexample_catalog,
    gamma_distinct_lines,
    named_equations,
    separation_equation,
    separation_witness,
    transport,
)
from .linalg import GaussianRational, Matrix
from .subspaces import (
    Subspace,
    _random_from,
    complement,
    join,
    meet,
    meet_via_demorgan,
)
from .terms import (
    Assignment,
    Equation,
    Evaluator,
    UnboundVariableError,
    evaluate,
    holds,
)


class CheckError(RuntimeError):
    """A strategy or certification step went wrong (not a mere refutation)."""


_MAX_EXHAUSTIVE_AMBIENT = 4

# Coefficients for non-coordinate lines e_i + c*e_j, nicest first.  The
# order is the public contract: ambient 2 with two extras must yield
# e1+e2 then e1+i*e2.
_EXTRA_COEFFS = (
    GaussianRational(1),
    GaussianRational(0, 1),
    GaussianRational(-1),
    GaussianRational(2),
    GaussianRational(0, -1),
    GaussianRational(3),
    GaussianRational(1, 1),
    GaussianRational(1, -1),
    GaussianRational(-2),
    GaussianRational(2, 1),
    GaussianRational(0, 2),
    GaussianRational(-1, 1),
    GaussianRational(-3),
    GaussianRational(3, 1),
    GaussianRational(0, 3),
    GaussianRational(-1, -1),
)


def coordinate_family(ambient: int, extra_lines: int = 0) -> list[Subspace]:
    """Deterministic exhaustive family: every coordinate subspace (one per
    subset of basis vectors, so 0 and 1 included) plus ``extra_lines``
    non-coordinate lines e_i + c*e_j.

    Extras are ordered coefficient-major: all pairs i < j with c = 1,
    then with c = i, and so on through :data:`_EXTRA_COEFFS`.
    """
    if ambient < 1:
        raise ValueError("ambient dimension must be at least 1")
    if ambient > _MAX_EXHAUSTIVE_AMBIENT:
        raise ValueError(
            f"ambient {ambient} too large for exhaustive enumeration "
            f"(2^{ambient} coordinate subspaces)"
        )
    if extra_lines < 0:
        raise ValueError("extra_lines must be nonnegative")
    family = []
    for mask in range(2 ** ambient):
        rows = [
            [1 if c == i else 0 for c in range(ambient)]
            for i in range(ambient)
            if mask >> i & 1
        ]
        if rows:
            family.append(Subspace.from_spanning(Matrix.from_rows(rows), ambient))
        else:
            family.append(Subspace.zero(ambient))
    pairs = list(itertools.combinations(range(ambient), 2))
    produced = 0
    for coeff in _EXTRA_COEFFS:
        for i, j in pairs:
            if produced == extra_lines:
                return family
            row = [GaussianRational(0)] * ambient
            row[i] = GaussianRational(1)
            row[j] = coeff
            family.append(Subspace.line(ambient, row))
            produced += 1
    if produced < extra_lines:
        raise ValueError(
            f"cannot construct {extra_lines} distinct extra lines "
            f"in ambient {ambient}"
        )
    return family


class StoredWitnesses:
    """Stored counterexample assignments whose equation matches exactly."""

    name = "stored-witnesses"

    def assignments(self, eq: Equation, ambient: int) -> Iterator[Assignment]:
        for record in counterexample_catalog():
            if record.equation == eq and record.assignment.ambient == ambient:
                yield record.assignment


class CoordinateFamilyStrategy:
    """All tuples over :func:`coordinate_family`, sampled above a cap.

    Exhaustive when family_size ** nvars <= cap; otherwise ``cap`` seeded
    uniform tuples, so the strategy stays deterministic and bounded even
    for equations with many variables.
    """

    name = "coordinate-family"

    def __init__(self, extra_lines: int = 4, cap: int = 4096, seed: int = 0) -> None:
        self.extra_lines = extra_lines
        self.cap = cap
        self.seed = seed

    def assignments(self, eq: Equation, ambient: int) -> Iterator[Assignment]:
        if ambient > _MAX_EXHAUSTIVE_AMBIENT:
            return
        # Ambient 1 has no pairs i < j, hence no non-coordinate lines.
        extras = self.extra_lines if ambient >= 2 else 0
        family = coordinate_family(ambient, extras)
        names = eq.free_vars
        if not names:
            yield Assignment(ambient, {})
            return
        total = len(family) ** len(names)
        if total <= self.cap:
            for combo in itertools.product(family, repeat=len(names)):
                yield Assignment(ambient, dict(zip(names, combo)))
        else:
            rng = Random(f"coordinate-family:{self.seed}:{ambient}")
            for _ in range(self.cap):
                bindings = {name: rng.choice(family) for name in names}
                yield Assignment(ambient, bindings)


class RandomSampling:
    """Seeded random assignments; dimensions drawn uniformly in 0..ambient."""

    name = "random"

    def __init__(self, count: int = 10_000, seed: int = 0, coeff_bound: int = 3) -> None:
        self.count = count
        self.seed = seed
        self.coeff_bound = coeff_bound

    def assignments(self, eq: Equation, ambient: int) -> Iterator[Assignment]:
        rng = Random(f"random:{self.seed}:{ambient}")
        names = eq.free_vars
        for _ in range(self.count):
            bindings = {
                name: _random_from(
                    rng, ambient, rng.randint(0, ambient), self.coeff_bound
                )
                for name in names
            }
            yield Assignment(ambient, bindings)


def default_strategies(
    samples: int = 10_000,
    seed: int = 0,
    coeff_bound: int = 3,
    extra_lines: int = 4,
) -> list:
    """Cheapest certain refutations first, randomness last."""
    return [
        StoredWitnesses(),
        CoordinateFamilyStrategy(extra_lines=extra_lines, seed=seed),
        RandomSampling(count=samples, seed=seed, coeff_bound=coeff_bound),
    ]


@dataclass(frozen=True)
class CounterexampleRecord:
    """A falsifying assignment together with both evaluated sides."""

    assignment: Assignment
    lhs_value: Subspace
    rhs_value: Subspace

    def fixture(self) -> str:
        return format_assignment_fixture(self.assignment)


@dataclass(frozen=True)
class Verdict:
    status: str  # "counterexample" | "holds-on-samples"
    samples_tried: int
    strategy_log: tuple[str, ...]
    counterexample: CounterexampleRecord | None

    def summary(self) -> str:
        if self.status == "counterexample":
            cx = self.counterexample
            return (
                f"counterexample after {self.samples_tried} assignments "
                f"(lhs dim {cx.lhs_value.dim}, rhs dim {cx.rhs_value.dim})"
            )
        return (
            f"holds on {self.samples_tried} sampled assignments "
            "(sampling cannot certify validity)"
        )


def _certify(eq: Equation, a: Assignment) -> None:
    """Re-evaluate a refutation through the complement-based meet."""
    if holds(eq, a, meet_op=meet_via_demorgan):
        raise CheckError(
            "counterexample failed certification: the two meet routes disagree"
        )


def check(eq: Equation, ambient: int, strategies: Sequence | None = None) -> Verdict:
    """Search the strategies in order for a falsifying assignment.

    Stops at the first counterexample (certified before it is returned);
    otherwise reports how many assignments were survived.
    """
    if ambient < 1:
        raise ValueError("ambient dimension must be at least 1")
    if strategies is None:
        strategies = default_strategies()
    samples_tried = 0
    log: list[str] = []
    for strategy in strategies:
        in_strategy = 0
        for a in strategy.assignments(eq, ambient):
            in_strategy += 1
            samples_tried += 1
            try:
                ev = Evaluator(a)
                lhs_value = ev.eval(eq.lhs)
                rhs_value = ev.eval(eq.rhs)
            except UnboundVariableError as exc:
                raise CheckError(
                    f"strategy {strategy.name!r} produced an assignment "
                    f"missing variable {exc.name!r}"
                ) from None
            if lhs_value != rhs_value:
                _certify(eq, a)
                log.append(f"{strategy.name}: counterexample at assignment {in_strategy}")
                return Verdict(
                    "counterexample",
                    samples_tried,
                    tuple(log),
                    CounterexampleRecord(a, lhs_value, rhs_value),
                )
        log.append(f"{strategy.name}: {in_strategy} assignments, no counterexample")
    return Verdict("holds-on-samples", samples_tried, tuple(log), None)


# ---------------------------------------------------------------------------
# Suites


@dataclass(frozen=True)
class SuiteRecord:
    suite: str
    ambient: int | None
    samples: int
    status: str  # "pass" | "fail"
    detail: str
    certificate: str | None = None

    def line(self) -> str:
        tag = "PASS" if self.status == "pass" else "FAIL"
        where = f" ambient={self.ambient}" if self.ambient is not None else ""
        return f"[{tag}] {self.suite}{where} samples={self.samples}: {self.detail}"

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ambient": self.ambient,
            "samples": self.samples,
            "status": self.status,
            "detail": self.detail,
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class SuiteReport:
    records: tuple[SuiteRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def lines(self) -> list[str]:
        out = [r.line() for r in self.records]
        verdict = "all suites passed" if self.passed else "SUITE FAILURES"
        out.append(f"{verdict} ({len(self.records)} records)")
        return out

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "records": [r.as_dict() for r in self.records],
        }

    def __add__(self, other: "SuiteReport") -> "SuiteReport":
        return SuiteReport(self.records + other.records)


def _fail(suite: str, ambient: int | None, samples: int, detail: str,
          a: Assignment | None = None) -> SuiteRecord:
    cert = format_assignment_fixture(a) if a is not None else None
    return SuiteRecord(suite, ambient, samples, "fail", detail, cert)


def run_lemma2_suite(
    ambients: Iterable[int] = (2, 3, 4, 5),
    samples: int = 10_000,
    seed: int = 0,
    coeff_bound: int = 3,
) -> SuiteReport:
    """Dimension bound 2*dim(alpha) <= ambient on random triples, plus the
    even-ambient triple that meets the bound exactly."""
    term = alpha()
    records = []
    for ambient in ambients:
        rng = Random(f"lemma2:{seed}:{ambient}")
        max_dim = 0
        for _ in range(samples):
            a = Assignment(
                ambient,
                {
                    name: _random_from(
                        rng, ambient, rng.randint(0, ambient), coeff_bound
                    )
                    for name in ("p", "q", "r")
                },
            )
            d = evaluate(term, a).dim
            if 2 * d > ambient:
                records.append(_fail(
                    "lemma2", ambient, samples,
                    f"bound violated: dim {d} with ambient {ambient}", a,
                ))
                break
            max_dim = max(max_dim, d)
        else:
            records.append(SuiteRecord(
                "lemma2", ambient, samples, "pass",
                f"2*dim(alpha) <= {ambient} held; max dim seen {max_dim}",
            ))
    # Tightness: the full-space half split in ambient 4 reaches dim 2.
    w = separation_witness(1)
    tight = Assignment(4, {"p": w["p1"], "q": w["q1"], "r": w["r1"]})
    d = evaluate(term, tight).dim
    if d == 2:
        records.append(SuiteRecord(
            "lemma2-tight", 4, 1, "pass",
            "half-split triple reaches dim 2 = ambient/2",
        ))
    else:
        records.append(_fail(
            "lemma2-tight", 4, 1, f"expected dim 2, got {d}", tight,
        ))
    return SuiteReport(tuple(records))


def run_lemma3_suite(extra_lines: int = 5) -> SuiteReport:
    """Classification in the plane: alpha is nonzero exactly on triples of
    three distinct lines, where it equals the complement of p."""
    term = alpha()
    family = coordinate_family(2, extra_lines)
    nonzero = 0
    total = 0
    for p, q, r in itertools.product(family, repeat=3):
        total += 1
        a = Assignment(2, {"p": p, "q": q, "r": r})
        value = evaluate(term, a)
        distinct_lines = (
            p.dim == 1 and q.dim == 1 and r.dim == 1
            and p != q and q != r and p != r
        )
        if value.is_zero() == distinct_lines:
            return SuiteReport((_fail(
                "lemma3", 2, total,
                f"misclassified triple: value dim {value.dim}, "
                f"distinct-lines={distinct_lines}", a,
            ),))
        if distinct_lines:
            nonzero += 1
            if value != complement(p):
                return SuiteReport((_fail(
                    "lemma3", 2, total,
                    "nonzero value differs from complement of p", a,
                ),))
    return SuiteReport((SuiteRecord(
        "lemma3", 2, total, "pass",
        f"{nonzero} of {total} triples nonzero, all equal to ~p; "
        "the rest vanish",
    ),))


def run_separation_suite(
    max_i: int = 2,
    samples: int = 1000,
    seed: int = 0,
    coeff_bound: int = 3,
    extra_lines: int = 4,
) -> SuiteReport:
    """Level i equation holds in every ambient 2^k with k <= i (sampled)
    and is falsified by the constructed witness in ambient 2^(i+1)."""
    records = []
    for i in range(max_i + 1):
        eq = separation_equation(i)
        for k in range(i + 1):
            ambient = 2 ** k
            strategies = [
                CoordinateFamilyStrategy(extra_lines=extra_lines, seed=seed),
                RandomSampling(count=samples, seed=seed, coeff_bound=coeff_bound),
            ]
            verdict = check(eq, ambient, strategies)
            if verdict.status == "holds-on-samples":
                records.append(SuiteRecord(
                    f"separation-{i}-holds", ambient, verdict.samples_tried,
                    "pass", verdict.summary(),
                ))
            else:
                records.append(SuiteRecord(
                    f"separation-{i}-holds", ambient, verdict.samples_tried,
                    "fail", "unexpected " + verdict.summary(),
                    verdict.counterexample.fixture(),
                ))
        witness = separation_witness(i)
        value = evaluate(eq.lhs, witness)
        if value.dim == 1:
            records.append(SuiteRecord(
                f"separation-{i}-witness", 2 ** (i + 1), 1, "pass",
                "witness falsifies with value dimension exactly 1",
                format_assignment_fixture(witness),
            ))
        else:
            records.append(_fail(
                f"separation-{i}-witness", 2 ** (i + 1), 1,
                f"witness value has dimension {value.dim}, expected 1", witness,
            ))
    return SuiteReport(tuple(records))


_LAW_NAMES = (
    "oml",
    "modular",
    "demorgan-meet",
    "demorgan-join",
    "involution",
    "complement-meet",
)


def run_laws_suite(
    ambients: Iterable[int] = (2, 3, 4, 5),
    samples: int = 10_000,
    seed: int = 0,
    coeff_bound: int = 3,
) -> SuiteReport:
    """Always-true laws on shared random samples, the equality
    characterizations in both directions, and the dimension formula."""
    catalogue = named_equations()
    laws = [(name, catalogue[name]) for name in _LAW_NAMES]
    eq_char = catalogue["eq-char"]
    eq_char_dual = catalogue["eq-char-dual"]
    records = []
    for ambient in ambients:
        rng = Random(f"laws:{seed}:{ambient}")
        failure = None
        distinct_pairs = 0
        for _ in range(samples):
            a = Assignment(
                ambient,
                {
                    name: _random_from(
                        rng, ambient, rng.randint(0, ambient), coeff_bound
                    )
                    for name in ("p", "q", "r")
                },
            )
            ev = Evaluator(a)
            for name, eq in laws:
                if ev.eval(eq.lhs) != ev.eval(eq.rhs):
                    failure = (name, a)
                    break
            if failure:
                break
            p, q = a["p"], a["q"]
            # Equality characterizations: both formulas detect p = q.
            same = Assignment(ambient, {"p": p, "q": p})
            if not holds(eq_char, same) or not holds(eq_char_dual, same):
                failure = ("eq-char-equal", same)
                break
            if p != q:
                distinct_pairs += 1
                if holds(eq_char, a) or holds(eq_char_dual, a):
                    failure = ("eq-char-distinct", a)
                    break
            if join(p, q).dim + meet(p, q).dim != p.dim + q.dim:
                failure = ("dimension-formula", a)
                break
        if failure:
            name, a = failure
            records.append(_fail(
                "laws", ambient, samples, f"{name} violated", a,
            ))
        else:
            records.append(SuiteRecord(
                "laws", ambient, samples, "pass",
                f"{len(laws)} laws, both equality characterizations "
                f"({distinct_pairs} distinct pairs), and the dimension "
                "formula held",
            ))
    return SuiteReport(tuple(records))


def run_meet_agreement_suite(
    ambient: int = 3,
    extra_lines: int = 4,
    cap: int = 256,
    seed: int = 0,
) -> SuiteReport:
    """The kernel-based meet and the complement-based meet agree, both on
    raw pairs and through whole-equation evaluation."""
    family = coordinate_family(ambient, extra_lines)
    pairs = 0
    for p, q in itertools.product(family, repeat=2):
        pairs += 1
        if meet(p, q) != meet_via_demorgan(p, q):
            return SuiteReport((SuiteRecord(
                "meet-agreement", ambient, pairs, "fail",
                f"routes disagree on pair of dims {p.dim}, {q.dim}",
            ),))
    strategy = CoordinateFamilyStrategy(extra_lines=extra_lines, cap=cap, seed=seed)
    evaluated = 0
    for name, eq in named_equations().items():
        for a in strategy.assignments(eq, ambient):
            evaluated += 1
            if holds(eq, a) != holds(eq, a, meet_op=meet_via_demorgan):
                return SuiteReport((_fail(
                    "meet-agreement", ambient, pairs + evaluated,
                    f"routes disagree evaluating {name}", a,
                ),))
    return SuiteReport((SuiteRecord(
        "meet-agreement", ambient, pairs + evaluated, "pass",
        f"{pairs} pairs and {evaluated} equation evaluations agree "
        "across both meet routes",
    ),))


def run_transport_suite(extras: Iterable[int] = (1, 2)) -> SuiteReport:
    """Stored counterexamples still falsify after moving to a larger space."""
    records = []
    for record in counterexample_catalog():
        for extra in extras:
            moved = transport(record.assignment, extra)
            suite = f"transport-{record.label}"
            if holds(record.equation, moved):
                records.append(_fail(
                    suite, moved.ambient, 1,
                    f"falsification lost after adding {extra} dimensions",
                    moved,
                ))
                continue
            _certify(record.equation, moved)
            records.append(SuiteRecord(
                suite, moved.ambient, 1, "pass",
                f"still falsifies with {extra} extra dimensions",
            ))
    return SuiteReport(tuple(records))


def run_gamma_suite() -> SuiteReport:
    """The four-variable distinct-line detector over a six-line family.

    Any coincidence among the four arguments forces the value to zero
    (distinctness is necessary for a nonzero value).  It is not
    sufficient: the nesting folds r and s against the running value,
    which is the complement of p, so r = ~p or s = ~p also collapses
    everything.  Away from those degeneracies the value is p itself.
    """
    term = gamma_distinct_lines(4)
    lines = [
        Subspace.line(2, [1, 0]),
        Subspace.line(2, [0, 1]),
        Subspace.line(2, [1, 1]),
        Subspace.line(2, [1, -1]),
        Subspace.line(2, [1, GaussianRational(0, 1)]),
        Subspace.line(2, [1, 2]),
    ]
    total = 0
    nonzero = 0
    coincident = 0
    for combo in itertools.product(lines, repeat=4):
        total += 1
        p, q, r, s = combo
        a = Assignment(2, dict(zip(("p", "q", "r", "s"), combo)))
        value = evaluate(term, a)
        distinct = len(set(combo)) == 4
        if not distinct:
            coincident += 1
            if not value.is_zero():
                return SuiteReport((_fail(
                    "gamma", 2, total,
                    f"nonzero value (dim {value.dim}) despite a coincidence",
                    a,
                ),))
            continue
        pbar = complement(p)
        expect_nonzero = r != pbar and s != pbar
        if value.is_zero() == expect_nonzero:
            return SuiteReport((_fail(
                "gamma", 2, total,
                f"value dim {value.dim}, expected "
                + ("nonzero" if expect_nonzero else "zero"), a,
            ),))
        if expect_nonzero:
            nonzero += 1
            if value != p:
                return SuiteReport((_fail(
                    "gamma", 2, total, "nonzero value differs from p", a,
                ),))
    return SuiteReport((SuiteRecord(
        "gamma", 2, total, "pass",
        f"zero on all {coincident} coincident tuples; nonzero exactly on "
        f"the {nonzero} distinct tuples avoiding r = ~p and s = ~p, "
        "always equal to p",
    ),))


def run_all(
    samples: int = 10_000,
    separation_samples: int = 1000,
    seed: int = 0,
    max_i: int = 2,
) -> SuiteReport:
    """Every suite, in a fixed order, as one combined report."""
    return (
        run_lemma2_suite(samples=samples, seed=seed)
        + run_lemma3_suite()
        + run_separation_suite(max_i=max_i, samples=separation_samples, seed=seed)
        + run_laws_suite(samples=samples, seed=seed)
        + run_meet_agreement_suite(seed=seed)
        + run_transport_suite()
        + run_gamma_suite()
    )
