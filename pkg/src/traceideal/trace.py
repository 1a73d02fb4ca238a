"""Trace ideals, trace-ideal tests and Gorenstein decisions.

The trace of a presented module ``coker P`` is generated by the entries
of any matrix whose columns generate the kernel of ``P`` transposed.
Over an Artinian local ring the Gorenstein property is equivalent to every
principal ideal being its own trace, and a principal ideal's trace equals
its double annihilator, which is what the sampling decision checks.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .core import Polynomial
from .errors import TraceIdealError, UnsupportedFamily
from .oracle import (
    ann_linear,
    build_finite_algebra,
    module_annihilator_linear,
)
from .quotient import QuotientRing, RIdeal, annihilator, double_annihilator, ideal_equal, socle
from .syzygy import PresentedModule, kernel_over_quotient, presentation_of_ideal

GORENSTEIN = "Gorenstein"
NOT_GORENSTEIN = "NotGorenstein"
CONSISTENT = "ConsistentWithGorenstein"

SOCLE_DIM = "SocleDim"
TRACE_WITNESS = "TraceWitness"
EQUIVALENCE_SWEEP = "EquivalenceSweep"

MAX_ENUMERATION_DIM = 12


def trace_ideal(M: PresentedModule) -> RIdeal:
    R = M.ring
    P = M.presentation
    if P.rows == 0:
        return R.zero_ideal()
    if P.cols == 0:
        return R.unit_ideal()
    A = kernel_over_quotient(P.transpose(), R.defining)
    return RIdeal(R, A.entries)


def trace_of_ideal(R: QuotientRing, I: RIdeal) -> RIdeal:
    gens = I.canonical_generators()
    if not gens:
        return R.zero_ideal()
    return trace_ideal(presentation_of_ideal(R, gens))


def is_trace_ideal(R: QuotientRing, I: RIdeal) -> bool:
    return ideal_equal(I, trace_of_ideal(R, I))


@dataclass
class GorensteinVerdict:
    ring: str
    decision: str
    method: str
    socle_dim: Optional[int] = None
    witness: Optional[RIdeal] = None
    witness_trace: Optional[RIdeal] = None
    witness_double_annihilator: Optional[RIdeal] = None
    seed: Optional[int] = None
    checked_count: int = 0
    socle_decision: Optional[str] = None

    def as_dict(self) -> dict:
        out = {
            "ring": self.ring,
            "method": self.method,
            "decision": self.decision,
            "checked_count": self.checked_count,
        }
        if self.socle_dim is not None:
            out["socle_dim"] = self.socle_dim
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witness_trace"] = str(self.witness_trace)
            out["witness_annann"] = str(self.witness_double_annihilator)
        if self.seed is not None:
            out["seed"] = self.seed
        if self.socle_decision is not None:
            out["socle_decision"] = self.socle_decision
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def __str__(self):
        parts = [self.decision]
        if self.witness is not None:
            parts.append(f"witness={self.witness}")
        if self.socle_dim is not None:
            parts.append(f"socle_dim={self.socle_dim}")
        return " ".join(parts)


def _certify(R: QuotientRing, W: RIdeal, verdict: GorensteinVerdict) -> GorensteinVerdict:
    tr = trace_of_ideal(R, W)
    if ideal_equal(tr, W):
        raise TraceIdealError(f"witness {W} is its own trace; refusing an uncertified verdict")
    verdict.witness = W
    verdict.witness_trace = tr
    verdict.witness_double_annihilator = double_annihilator(R, W)
    return verdict


def gorenstein_by_socle(R: QuotientRing) -> GorensteinVerdict:
    """Decide via the socle dimension; negative verdicts carry a minimal-ideal witness."""
    R.require_artinian_local()
    soc, dim = socle(R)
    if dim == 1:
        return GorensteinVerdict(str(R), GORENSTEIN, SOCLE_DIM, socle_dim=1, checked_count=1)
    verdict = GorensteinVerdict(str(R), NOT_GORENSTEIN, SOCLE_DIM, socle_dim=dim, checked_count=1)
    # a single socle element spans a minimal ideal whose trace is the whole socle
    return _certify(R, RIdeal(R, soc.canonical_generators()[:1]), verdict)


def _probe_order(R: QuotientRing) -> list:
    key = R.ambient.order.key
    monos = [m for m in R.standard_monomials() if any(m)]
    return sorted(monos, key=lambda m: (sum(m), _neg_key(key(m))))


def _neg_key(k):
    if isinstance(k, tuple):
        return tuple(_neg_key(x) for x in k)
    return -k


def random_element(R: QuotientRing, rng: random.Random, max_terms: int = 3) -> Polynomial:
    """Random combination of non-constant standard monomials, favouring low degree."""
    R.require_artinian_local()
    monos = [m for m in R.standard_monomials() if any(m)]
    if not monos:
        return R.ambient.zero()
    weights = [1.0 / sum(m) for m in monos]
    k = rng.randint(1, min(max_terms, len(monos)))
    chosen = set()
    while len(chosen) < k:
        chosen.add(rng.choices(range(len(monos)), weights)[0])
    p = R.field.p
    terms = {}
    for idx in sorted(chosen):
        if p:
            terms[monos[idx]] = rng.randrange(1, p)
        else:
            terms[monos[idx]] = rng.choice((-3, -2, -1, 1, 2, 3))
    return Polynomial(R.ambient, terms)


def gorenstein_by_trace(R: QuotientRing, samples: int = 20, seed: int = 0) -> GorensteinVerdict:
    """Search principal ideals ``(r)`` with ``(r) != AnnAnn(r)``.

    Standard monomials are probed first (by degree, then in declaration
    order), followed by ``samples`` pseudorandom elements.  A failure is a
    certified negative answer; otherwise the verdict is only consistency,
    and the socle decision is reported alongside.
    """
    R.require_artinian_local()
    rng = random.Random(seed)
    candidates = [R.ambient.monomial(m) for m in _probe_order(R)]
    candidates += [random_element(R, rng) for _ in range(samples)]
    soc_verdict = gorenstein_by_socle(R)
    checked = 0
    for r in candidates:
        if r.is_zero():
            continue
        checked += 1
        I = RIdeal(R, [r])
        if not ideal_equal(I, double_annihilator(R, I)):
            verdict = GorensteinVerdict(
                str(R), NOT_GORENSTEIN, TRACE_WITNESS, socle_dim=soc_verdict.socle_dim,
                seed=seed, checked_count=checked, socle_decision=soc_verdict.decision,
            )
            return _certify(R, I, verdict)
    return GorensteinVerdict(
        str(R), CONSISTENT, TRACE_WITNESS, socle_dim=soc_verdict.socle_dim,
        seed=seed, checked_count=checked, socle_decision=soc_verdict.decision,
    )


def monomial_ideals(R: QuotientRing) -> list:
    """Every monomial ideal of R, via upward-closed sets of standard monomials."""
    R.require_artinian_local()
    if not all(len(g) == 1 for g in R.defining.gb):
        raise UnsupportedFamily("monomial-ideal enumeration needs a monomial defining ideal")
    std = list(R.standard_monomials())
    if len(std) > MAX_ENUMERATION_DIM:
        raise UnsupportedFamily(f"{len(std)} standard monomials exceed the enumeration cap {MAX_ENUMERATION_DIM}")
    n = R.ambient.nvars
    stdset = set(std)
    ups = {
        m: [u for u in (tuple(e + (k == v) for k, e in enumerate(m)) for v in range(n)) if u in stdset]
        for m in std
    }
    order = sorted(std, key=lambda m: (-sum(m), m))
    found = []

    def walk(i: int, chosen: frozenset):
        if i == len(order):
            found.append(chosen)
            return
        m = order[i]
        walk(i + 1, chosen)
        if all(u in chosen for u in ups[m]):
            walk(i + 1, chosen | {m})

    walk(0, frozenset())
    ideals = []
    for up in found:
        minimal = [m for m in up if not any(d != m and all(a <= b for a, b in zip(d, m)) for d in up)]
        ideals.append(RIdeal(R, [R.ambient.monomial(m) for m in sorted(minimal, key=R.ambient.order.key)]))
    ideals.sort(key=lambda I: (len(I.canonical_generators()), str(I)))
    return ideals


@dataclass
class EquivalenceReport:
    ring: str
    socle_dim: int
    ideal_count: int
    failing: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return not self.failing

    @property
    def consistent(self) -> bool:
        return not self.discrepancies

    def as_dict(self) -> dict:
        return {
            "ring": self.ring,
            "method": EQUIVALENCE_SWEEP,
            "socle_dim": self.socle_dim,
            "checked_count": self.ideal_count,
            "all_pass": self.all_pass,
            "failing": list(self.failing),
            "consistent": self.consistent,
            "discrepancies": list(self.discrepancies),
        }

    def __str__(self):
        status = "consistent" if self.consistent else "INCONSISTENT"
        text = (f"{status} socle_dim={self.socle_dim} ideals={self.ideal_count} "
                f"passing={self.ideal_count - len(self.failing)}")
        if self.failing:
            text += " failing=" + ",".join(self.failing)
        return text


def verify_equivalences(R: QuotientRing) -> EquivalenceReport:
    """Check every monomial ideal for ``I = AnnAnn(I) = trace(I)`` against the socle count."""
    ideals = monomial_ideals(R)
    _, dim = socle(R)
    report = EquivalenceReport(str(R), dim, len(ideals))
    for I in ideals:
        tr = trace_of_ideal(R, I)
        aa = double_annihilator(R, I)
        if not (I.issubset(tr) and tr.issubset(aa)):
            report.discrepancies.append(f"containment I ⊆ τ(I) ⊆ AnnAnn(I) fails for {I}")
        if ideal_equal(I, aa) and not ideal_equal(I, tr):
            report.discrepancies.append(f"{I} equals its double annihilator but is not a trace ideal")
        if not (ideal_equal(I, tr) and ideal_equal(I, aa)):
            report.failing.append(str(I))
    if (dim == 1) != report.all_pass:
        report.discrepancies.append(
            f"socle dimension {dim} but {'all' if report.all_pass else 'not all'} ideals pass"
        )
    return report


@dataclass
class TraceComparison:
    relation: str  # "Equal" or "StrictlyContained"
    trace: RIdeal
    double_annihilator: RIdeal
    witness: Optional[Polynomial] = None

    def as_dict(self) -> dict:
        out = {"relation": self.relation, "trace": str(self.trace), "annann": str(self.double_annihilator)}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out

    def __str__(self):
        if self.relation == "Equal":
            return f"Equal {self.trace}"
        return f"StrictlyContained trace={self.trace} annann={self.double_annihilator} witness={self.witness}"


def module_annihilator(M: PresentedModule) -> RIdeal:
    A = build_finite_algebra(M.ring)
    return A.to_ideal(module_annihilator_linear(A, M.presentation))


def compare_trace_double_ann(M: PresentedModule) -> TraceComparison:
    R = M.ring
    R.require_artinian_local()
    tr = trace_ideal(M)
    aa = annihilator(R, module_annihilator(M))
    if ideal_equal(tr, aa):
        return TraceComparison("Equal", tr, aa)
    if not tr.issubset(aa):
        raise TraceIdealError(f"trace {tr} is not inside the double annihilator {aa}")
    witness = next(g for g in aa.canonical_generators() if not tr.contains(g))
    return TraceComparison("StrictlyContained", tr, aa, witness)


def socle_dimension(R: QuotientRing) -> int:
    return ann_linear(build_finite_algebra(R), R.ambient.gens()).dim
