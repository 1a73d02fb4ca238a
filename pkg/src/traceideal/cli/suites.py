"""Built-in verification suites behind ``traceideal check``.

Each check returns a :class:`CheckResult`; sample counts are parameters so
the acceptance tests can run the same checks at their full sizes.
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import dataclass

from ..core import QQ
from ..families import artinian_family, quotient, random_ideal, random_module
from ..oracle import build_finite_algebra, trace_linear
from ..quotient import RIdeal, annihilator, double_annihilator, ideal_equal, socle
from ..syzygy import PolyMatrix, PresentedModule
from ..trace import (
    GORENSTEIN,
    NOT_GORENSTEIN,
    compare_trace_double_ann,
    gorenstein_by_socle,
    gorenstein_by_trace,
    is_trace_ideal,
    random_element,
    trace_ideal,
    trace_of_ideal,
    verify_equivalences,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    count: int = 0
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.name} [{self.count} cases]"
        return f"{text} {self.detail}" if self.detail else text

    def as_dict(self) -> dict:
        return {"check": self.name, "ok": self.ok, "count": self.count, "detail": self.detail}


def _result(name: str, failures: list, count: int) -> CheckResult:
    if failures:
        return CheckResult(name, False, count, "; ".join(failures[:3]))
    return CheckResult(name, True, count)


# -- golden values ---------------------------------------------------------

def check_xy_xz() -> CheckResult:
    R = quotient(QQ, "x,y,z", [])
    I = R.ideal("x*y", "x*z")
    tr = trace_of_ideal(R, I)
    fails = []
    if not ideal_equal(tr, R.ideal("y", "z")):
        fails.append(f"trace (xy, xz) = {tr}")
    if is_trace_ideal(R, I):
        fails.append("(xy, xz) reported as a trace ideal")
    return _result("trace-of-xy-xz", fails, 2)


def check_x2_xy() -> CheckResult:
    R = quotient(QQ, "x,y", ["x^2", "x*y"])
    x, y = R.ideal("x"), R.ideal("y")
    fails = []
    if not ideal_equal(double_annihilator(R, x), x):
        fails.append("AnnAnn(x) != (x)")
    if not ideal_equal(double_annihilator(R, y), R.ideal("x", "y")):
        fails.append("AnnAnn(y) != (x, y)")
    if not is_trace_ideal(R, x):
        fails.append("(x) not a trace ideal")
    if is_trace_ideal(R, y):
        fails.append("(y) reported as a trace ideal")
    if R.is_artinian_local():
        fails.append("ring reported Artinian")
    return _result("depth-zero-dimension-one-ring", fails, 5)


def check_semigroup_ring() -> CheckResult:
    R = quotient(QQ, "b,c", ["b^3", "c^3", "b*c"])
    fails = []
    verdict = gorenstein_by_trace(R, samples=20, seed=0)
    if verdict.decision != NOT_GORENSTEIN or verdict.socle_dim != 2:
        fails.append(f"verdict {verdict}")
    elif ideal_equal(trace_of_ideal(R, verdict.witness), verdict.witness):
        fails.append("witness is its own trace")
    b = R.ideal("b")
    expected = R.ideal("b", "c^2")
    if not ideal_equal(trace_of_ideal(R, b), expected):
        fails.append("groebner trace of (b)")
    A = build_finite_algebra(R)
    if not ideal_equal(A.to_ideal(trace_linear(A, [R.parse("b")])), expected):
        fails.append("linear trace of (b)")
    return _result("non-gorenstein-semigroup-ring", fails, 4)


def check_direct_sum_module() -> CheckResult:
    R = quotient(QQ, "b,c", ["b^3", "c^3", "b*c"])
    S = R.ambient
    M = PresentedModule(R, PolyMatrix.from_rows(S, [[S.parse("b"), S.zero()], [S.zero(), S.parse("c")]]))
    cmp = compare_trace_double_ann(M)
    fails = []
    if cmp.relation != "StrictlyContained":
        fails.append(f"relation {cmp.relation}")
    if not ideal_equal(cmp.trace, R.ideal("b", "c")):
        fails.append(f"trace {cmp.trace}")
    if not cmp.double_annihilator.is_unit():
        fails.append(f"AnnAnn {cmp.double_annihilator}")
    return _result("direct-sum-strict-containment", fails, 3)


def check_grade_two() -> CheckResult:
    fails = []
    for variables in ("x,y", "x,y,z"):
        R = quotient(QQ, variables, [])
        if not is_trace_ideal(R, R.ideal("x", "y")):
            fails.append(f"(x, y) in {R}")
    return _result("grade-two-trace-ideals", fails, 2)


def check_socles() -> CheckResult:
    cases = [
        ("x,y", ["x^2", "y^2"], ["x*y"], 1),
        ("b,c", ["b^3", "c^3", "b*c"], ["b^2", "c^2"], 2),
        ("x", ["x^3"], ["x^2"], 1),
    ]
    fails = []
    for v, rels, soc_gens, dim in cases:
        R = quotient(QQ, v, rels)
        soc, d = socle(R)
        if d != dim or not ideal_equal(soc, R.ideal(*soc_gens)):
            fails.append(f"socle of {R}: {soc} dim {d}")
        expected = GORENSTEIN if dim == 1 else NOT_GORENSTEIN
        if gorenstein_by_socle(R).decision != expected:
            fails.append(f"socle verdict for {R}")
    return _result("socle-values", fails, len(cases))


GOLDEN_CHECKS = [check_xy_xz, check_x2_xy, check_semigroup_ring, check_direct_sum_module, check_grade_two, check_socles]


# -- randomized properties -------------------------------------------------

def check_principal_trace(samples: int = 20, seed: int = 0, rings=None) -> CheckResult:
    """trace((r)) = AnnAnn((r)) for every standard monomial and sampled r."""
    rings = rings if rings is not None else artinian_family()
    fails, count = [], 0
    for R in rings:
        rng = random.Random(seed)
        elems = [R.ambient.monomial(m) for m in R.standard_monomials()]
        elems += [random_element(R, rng) for _ in range(samples)]
        for r in elems:
            I = RIdeal(R, [r])
            count += 1
            if not ideal_equal(trace_of_ideal(R, I), double_annihilator(R, I)):
                fails.append(f"({r}) in {R}")
    return _result("principal-trace-equals-double-annihilator", fails, count)


def _linear_trace_ideal(R, I):
    A = build_finite_algebra(R)
    return A.to_ideal(trace_linear(A, list(I.canonical_generators())))


def check_oracle_agreement(random_ideals: int = 100, samples: int = 20, seed: int = 0, rings=None) -> CheckResult:
    """Syzygy-path trace equals the linear-algebra trace.

    Covers the principal ideals of :func:`check_principal_trace`, the
    semigroup-ring witness and ``(b)``, and ``random_ideals`` further ideals.
    """
    rings = rings if rings is not None else artinian_family()
    fails, count = [], 0
    sem = quotient(QQ, "b,c", ["b^3", "c^3", "b*c"])
    cases = [(sem, sem.ideal("b"))]
    witness = gorenstein_by_trace(sem, samples=samples, seed=seed).witness
    if witness is not None:
        cases.append((sem, witness))
    for R in rings:
        rng = random.Random(seed)
        elems = [R.ambient.monomial(m) for m in R.standard_monomials()]
        elems += [random_element(R, rng) for _ in range(samples)]
        cases += [(R, RIdeal(R, [r])) for r in elems]
    rng = random.Random(seed + 1)
    for k in range(random_ideals):
        R = rings[k % len(rings)]
        cases.append((R, random_ideal(R, rng, max_gens=3)))
    for R, I in cases:
        count += 1
        if not ideal_equal(trace_of_ideal(R, I), _linear_trace_ideal(R, I)):
            fails.append(f"{I} in {R}")
    return _result("oracle-agreement", fails, count)


def check_equivalence_sweep(rings=None) -> CheckResult:
    rings = rings if rings is not None else artinian_family()
    fails, count = [], 0
    for R in rings:
        report = verify_equivalences(R)
        count += report.ideal_count
        if not report.consistent:
            fails.append(f"{R}: {report.discrepancies}")
    return _result("gorenstein-equivalence-sweep", fails, count)


def check_module_containment(modules: int = 50, seed: int = 0, rings=None) -> CheckResult:
    rings = rings if rings is not None else artinian_family()
    fails, count = [], 0
    for R in rings:
        rng = random.Random(seed)
        for _ in range(modules):
            M = random_module(R, rng)
            count += 1
            try:
                compare_trace_double_ann(M)
            except Exception as exc:  # containment violations surface as errors
                fails.append(f"{M} over {R}: {exc}")
    return _result("trace-inside-double-annihilator", fails, count)


def check_annihilators_are_traces(ideals: int = 100, seed: int = 0, rings=None) -> CheckResult:
    rings = rings if rings is not None else artinian_family()
    rng = random.Random(seed)
    fails = []
    for k in range(ideals):
        R = rings[k % len(rings)]
        K = random_ideal(R, rng)
        ann = annihilator(R, K)
        if not is_trace_ideal(R, ann):
            fails.append(f"Ann({K}) = {ann} in {R}")
    return _result("annihilators-are-trace-ideals", fails, ideals)


def check_trace_idempotent(ideals: int = 100, seed: int = 0, rings=None) -> CheckResult:
    rings = rings if rings is not None else artinian_family()
    rng = random.Random(seed)
    fails = []
    for k in range(ideals):
        R = rings[k % len(rings)]
        I = random_ideal(R, rng)
        tr = trace_of_ideal(R, I)
        if not ideal_equal(trace_of_ideal(R, tr), tr):
            fails.append(f"{I} in {R}")
        if not (I.issubset(tr) and tr.issubset(double_annihilator(R, I))):
            fails.append(f"sandwich fails for {I} in {R}")
    return _result("trace-idempotent", fails, ideals)


def check_gorenstein_modules(modules: int = 50, seed: int = 0, rings=None) -> CheckResult:
    rings = rings if rings is not None else artinian_family()
    fails, count = [], 0
    for R in rings:
        if socle(R)[1] != 1:
            continue
        rng = random.Random(seed)
        for _ in range(modules):
            M = random_module(R, rng)
            count += 1
            cmp = compare_trace_double_ann(M)
            if cmp.relation != "Equal":
                fails.append(f"{M} over {R}: {cmp}")
    return _result("gorenstein-trace-equals-double-annihilator", fails, count)


def property_checks(seed: int = 0, scale: float = 0.25) -> list:
    """Property checks at reduced sizes for the CLI."""
    n = lambda full: max(1, int(full * scale))  # noqa: E731
    return [
        lambda: check_principal_trace(samples=n(20), seed=seed),
        lambda: check_oracle_agreement(random_ideals=n(100), samples=n(20), seed=seed),
        lambda: check_equivalence_sweep(),
        lambda: check_module_containment(modules=n(50), seed=seed),
        lambda: check_annihilators_are_traces(ideals=n(100), seed=seed),
        lambda: check_trace_idempotent(ideals=n(100), seed=seed),
        lambda: check_gorenstein_modules(modules=n(50), seed=seed),
    ]


def run_suite(suite: str, options, out=sys.stdout) -> bool:
    checks = []
    if suite in ("paper", "all"):
        checks += GOLDEN_CHECKS
    if suite in ("property", "all"):
        checks += property_checks(seed=options.seed)
    ok = True
    for check in checks:
        result = check()
        ok &= result.ok
        if options.json:
            print(json.dumps(result.as_dict(), sort_keys=True), file=out)
        else:
            print(result.line(), file=out)
    return ok
