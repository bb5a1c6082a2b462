"""End-to-end construction of verified local-global counterexamples.

generate() runs the whole recipe for an odd prime p and an odd degree n
divisible by p^iota: fundamental unit, iota, coefficient-pair primes with
the inverse-sum congruence filters, a descent prime with its even
exponent, curve assembly, and a full re-verification.  Every search order
is fixed, so identical inputs produce identical records.

verify() re-derives everything from the raw integers of a record: none of
the cached search results are trusted.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .cubicring import FieldParams, RingElement, make_field_params, norm, PREFER_P
from .descent import DescentCertificate, certify_descent
from .errors import DegreeIncompatible, SearchExhausted, VerificationFailed
from .forms import TernaryForm, build_curve, check_nonsingular, from_json_dict, to_json_dict, to_latex
from .primesearch import DescentCandidate, FormPrime, search_coefficient_pairs, search_descent_primes
from .primesearch import TEMPLATE_PAPER, TEMPLATE_SECTION5
from .solubility import (
    CertificateUnavailable,
    GlobalReport,
    local_certificate,
    point_search,
    real_witness,
    structural_coverage,
    check_global_conditions,
    check_local_conditions,
    validate_certificate,
)
from .units import FundamentalUnit, classify_iota, fundamental_unit, normalize_unit
from .primesearch import sieve_primes

# descent-prime slots used by the worked examples of degrees 7, 9, 11;
# reproduction mode pins these (recomputing their prime values) so the
# degree-9 record surfaces the corrected l = 593
_SECTION5_DESCENT_PIN = {(7, 7): (64, 1), (3, 9): (8, 1), (11, 11): (100, 1)}

# the degree-9 example's descent prime is printed as 431 at its source,
# but the template value at (a, c) = (8, 1) is 8^3 + 81 = 593 and 431 is
# not representable; the recomputed value is used and reported
_DIVERGENCE_NOTES = {
    (3, 9): [
        "descent prime recomputed: the published list prints l = 431 for "
        "(a, c) = (8, 1), but (3*3-1)^3 + 81*(3*0+1)^3 = 593; 431 is not a "
        "value of the template"
    ],
    (11, 11): [
        "published degree-11 pair tuple is inconsistent and is not reproduced: "
        "(-1, 1) gives 11*(-1)^3 + 1 = -10 (not a positive prime) and "
        "(67, -63) gives 11*67^3 + (-63)^3 = 3058346 = 2 * 1529173 (even); "
        "a recomputed verified tuple is emitted instead"
    ],
}


@dataclass(frozen=True)
class VerificationReport:
    local_conditions_passed: bool
    global_conditions_passed: bool
    nonsingular: bool
    descent_ok: bool
    local_certificates_ok: bool
    coverage_ok: bool
    point_search_clear: bool
    local_bound: int
    height: int
    failures: tuple[str, ...]

    @property
    def overall(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Counterexample:
    params: FieldParams
    n: int
    unit: FundamentalUnit
    pairs: tuple[FormPrime, ...]
    descent: DescentCertificate
    form: TernaryForm
    verification: VerificationReport | None
    divergences: tuple[str, ...] = ()

    @property
    def L(self) -> int:
        return self.descent.L

    def pair_tuples(self) -> list[tuple[int, int]]:
        return [(f.b, f.c) for f in self.pairs]


def _select_pairs(
    params: FieldParams,
    k: int,
    candidates: list[FormPrime],
    exclude: set[tuple[int, int]] = frozenset(),
) -> tuple[FormPrime, ...]:
    """First combination (by candidate order) passing the inverse-sum filters.

    Filters: pairwise projectively distinct primes, sum of b^-1 c nonzero
    mod 3 and, when p = 2 (mod 3), nonzero mod p.
    """
    moduli = [3] + ([params.p] if params.p % 3 == 2 else [])
    usable = [f for f in candidates if (f.b, f.c) not in exclude]
    for combo in itertools.combinations(usable, k):
        qs = {f.q for f in combo}
        if len(qs) != len(combo):
            continue
        if any(
            f1.b * f2.c == f2.b * f1.c
            for f1, f2 in itertools.combinations(combo, 2)
        ):
            continue
        ok = True
        for modulus in moduli:
            total = 0
            for f in combo:
                if f.b % modulus == 0:
                    ok = False
                    break
                total += f.c * pow(f.b, -1, modulus)
            if not ok or total % modulus == 0:
                ok = False
                break
        if ok:
            return combo
    raise SearchExhausted(f"no {k}-tuple of coefficient pairs passes the congruence filters")


def generate(
    p: int,
    n: int,
    *,
    preference: str = PREFER_P,
    reproduce_section5: bool = False,
    min_l: int | None = None,
    local_bound: int = 1000,
    height: int = 100,
    pair_radius: int = 64,
    descent_radius: int = 64,
    _exclude_pairs: set[tuple[int, int]] = frozenset(),
) -> Counterexample:
    """Construct and fully verify one counterexample of degree n for the prime p."""
    if n < 5 or n % 2 == 0:
        raise DegreeIncompatible(f"degree n = {n} must be odd and >= 5")
    params = make_field_params(p, preference)
    unit = fundamental_unit(params)
    iota = classify_iota(unit, p)
    params = params.with_iota(iota)
    if n % p**iota != 0:
        raise DegreeIncompatible(f"n = {n} is not divisible by p^iota = {p}^{iota}")

    k = (n - 3) // 2
    template = TEMPLATE_SECTION5 if reproduce_section5 else TEMPLATE_PAPER
    candidates = search_coefficient_pairs(params, max(3 * k, 12), radius=pair_radius, template_mode=template)
    pairs = _select_pairs(params, k, candidates, exclude=_exclude_pairs)

    floor_l = max([p] + [abs(f.b) for f in pairs] + [abs(f.c) for f in pairs]) + 1
    min_l = max(floor_l, min_l or 0)
    pin = _SECTION5_DESCENT_PIN.get((p, n)) if reproduce_section5 else None
    if pin is not None:
        from .primesearch import descent_value

        a, c = pin
        candidate = DescentCandidate(a=a, c=c, l=descent_value(params, a, c))
    else:
        candidate = search_descent_primes(params, 1, min_l, radius=descent_radius)[0]
    cert = certify_descent(params, unit, candidate)

    form = build_curve(params, [(f.b, f.c) for f in pairs], candidate.l, cert.m, n)
    divergences = tuple(_DIVERGENCE_NOTES.get((p, n), [])) if reproduce_section5 else ()
    record = Counterexample(
        params=params,
        n=n,
        unit=unit,
        pairs=tuple(pairs),
        descent=cert,
        form=form,
        verification=None,
        divergences=divergences,
    )
    report = verify(record, local_bound=local_bound, height=height)
    if not report.overall:
        raise VerificationFailed(f"generated record failed verification: {report.failures}")
    return Counterexample(**{**record.__dict__, "verification": report})


def generate_many(p: int, n: int, count: int, **kwargs) -> list[Counterexample]:
    """Several counterexamples with pairwise disjoint coefficient-pair tuples."""
    used: set[tuple[int, int]] = set()
    out = []
    for _ in range(count):
        rec = generate(p, n, _exclude_pairs=frozenset(used), **kwargs)
        out.append(rec)
        used.update(rec.pair_tuples())
    return out


def verify(record: Counterexample, *, local_bound: int = 1000, height: int = 100) -> VerificationReport:
    """Recompute every checkable condition of a record from raw integers."""
    failures: list[str] = []
    params, n = record.params, record.n
    p = params.p
    L = record.L

    if n < 5 or n % 2 == 0 or n % p**params.iota != 0:
        failures.append("degree")
    if len(record.pairs) != (n - 3) // 2:
        failures.append("pair count")

    unit_el = record.unit.element
    if norm(unit_el, params.P) != 1:
        failures.append("unit norm")
    recomputed = fundamental_unit(params)
    if recomputed.element != normalize_unit(unit_el, params.P):
        failures.append("unit not fundamental")
    if classify_iota(record.unit, p) != params.iota:
        failures.append("iota")

    from .primesearch import form_value

    if any(f.q != form_value(params, f.b, f.c) for f in record.pairs):
        failures.append("stored pair prime mismatch")
    try:
        rebuilt = build_curve(
            params, record.pair_tuples(), record.descent.candidate.l, record.descent.m, n
        )
        if rebuilt.terms != record.form.terms:
            failures.append("stored form does not match its parameters")
    except Exception as exc:
        failures.append(f"form rebuild: {exc}")

    pair_tuples = record.pair_tuples()
    local = check_local_conditions(params, pair_tuples, L)
    if not local.passed:
        failures.append("local conditions")

    try:
        glob: GlobalReport | None = check_global_conditions(
            params, pair_tuples, L, n, record.unit, record.descent
        )
        if not glob.passed:
            failures.append("global conditions")
    except Exception as exc:  # descent re-certification can raise
        glob = None
        failures.append(f"global conditions: {exc}")

    ok, witness = check_nonsingular(params, pair_tuples, L)
    if not ok:
        failures.append(f"nonsingular: {witness}")

    certs_ok = True
    try:
        rw = real_witness(record.form)
        if not validate_certificate(record.form, rw)[0]:
            certs_ok = False
        for l in sieve_primes(local_bound):
            cert = local_certificate(record.form, l)
            if not validate_certificate(record.form, cert)[0]:
                certs_ok = False
                break
    except CertificateUnavailable:
        certs_ok = False
    if not certs_ok:
        failures.append("local certificates")

    coverage = structural_coverage(record.form)
    if not coverage.covered:
        failures.append("structural coverage")

    found = point_search(record.form, height)
    if found is not None:
        failures.append(f"rational point found: {found}")

    if pow(record.descent.candidate.l, record.descent.m, 3) != 1 or pow(
        record.descent.candidate.l, record.descent.m, p
    ) != 1:
        failures.append("l^m congruences")

    return VerificationReport(
        local_conditions_passed=local.passed,
        global_conditions_passed=bool(glob and glob.passed),
        nonsingular=ok,
        descent_ok=bool(glob and glob.conditions.item("fermat_descent").passed),
        local_certificates_ok=certs_ok,
        coverage_ok=coverage.covered,
        point_search_clear=found is None,
        local_bound=local_bound,
        height=height,
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# serialization


def to_dict(record: Counterexample) -> dict:
    v = record.verification
    return {
        "p": record.params.p,
        "P": record.params.P,
        "iota": record.params.iota,
        "n": record.n,
        "unit": list(record.unit.element.coeffs()),
        "unit_backend": record.unit.backend,
        "pairs": [[f.b, f.c, f.q] for f in record.pairs],
        "descent": {
            "a": record.descent.candidate.a,
            "c": record.descent.candidate.c,
            "l": record.descent.candidate.l,
            "m": record.descent.m,
            "delta": record.descent.delta_value,
        },
        "L": record.L,
        "form": to_json_dict(record.form),
        "divergences": list(record.divergences),
        "verification": None
        if v is None
        else {
            "overall": v.overall,
            "failures": list(v.failures),
            "local_conditions": v.local_conditions_passed,
            "global_conditions": v.global_conditions_passed,
            "nonsingular": v.nonsingular,
            "descent": v.descent_ok,
            "local_certificates": v.local_certificates_ok,
            "coverage": v.coverage_ok,
            "point_search_clear": v.point_search_clear,
            "local_bound": v.local_bound,
            "height": v.height,
        },
    }


def from_dict(d: dict) -> Counterexample:
    params = FieldParams(p=d["p"], P=d["P"], iota=d["iota"])
    unit = FundamentalUnit(
        element=RingElement(*d["unit"]), P=d["P"], backend=d.get("unit_backend", "reduction")
    )
    pairs = tuple(FormPrime(b=b, c=c, q=q) for b, c, q in d["pairs"])
    dd = d["descent"]
    cert = DescentCertificate(
        candidate=DescentCandidate(a=dd["a"], c=dd["c"], l=dd["l"]),
        m=dd["m"],
        delta_value=dd.get("delta"),
        ck_checked=True,
    )
    v = d.get("verification")
    report = None
    if v is not None:
        report = VerificationReport(
            local_conditions_passed=v["local_conditions"],
            global_conditions_passed=v["global_conditions"],
            nonsingular=v["nonsingular"],
            descent_ok=v["descent"],
            local_certificates_ok=v["local_certificates"],
            coverage_ok=v["coverage"],
            point_search_clear=v["point_search_clear"],
            local_bound=v["local_bound"],
            height=v["height"],
            failures=tuple(v["failures"]),
        )
    return Counterexample(
        params=params,
        n=d["n"],
        unit=unit,
        pairs=pairs,
        descent=cert,
        form=from_json_dict(d["form"]),
        verification=report,
        divergences=tuple(d.get("divergences", [])),
    )


def emit(record: Counterexample, fmt: str = "summary") -> str:
    """Render a record as canonical json, a factored latex display, or one line."""
    if fmt == "json":
        return json.dumps(to_dict(record), sort_keys=True)
    if fmt == "latex":
        return to_latex(record.form)
    if fmt == "summary":
        d = record.descent
        pairs = " ".join(f"({f.b},{f.c})" for f in record.pairs)
        return (
            f"p={record.params.p} P={record.params.P} iota={record.params.iota} "
            f"n={record.n} pairs={pairs} l={d.candidate.l} m={d.m} verified={bool(record.verification and record.verification.overall)}"
        )
    raise ValueError(f"unknown format {fmt!r}")


def load(text: str) -> Counterexample:
    return from_dict(json.loads(text))
