"""End-to-end identity checks on one surface graph."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import gf2
from .errors import OddVertexCount
from .grassmann import partition_as_grassmann
from .kasteleyn import construct, equivalence, is_kasteleyn
from .matchings import composition_cycles, delta, matching_list, partition_bruteforce
from .pfaffian import Setup, class_terms, matching_sign, pfaffian_identity, z_alpha_pfaffian
from .spinform import arf, arf_census, build_form, delta_of_pair, ell_left
from .surface_map import SurfaceMap, cohomology_coordinates, intersection_parity


def fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return f"{x}/1"
    return str(x)


@dataclass
class Check:
    name: str
    passed: bool
    left: object = ""
    right: object = ""
    runtime: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}\t{status}\t{fmt(self.left)}\t{fmt(self.right)}"


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def tsv(self) -> str:
        head = "check\tstatus\tleft\tright"
        return "\n".join([head] + [c.line() for c in self.checks]) + "\n"

    def timings(self) -> str:
        return "\n".join(f"{c.name}\t{c.runtime:.4f}s" for c in self.checks) + "\n"


class _Recorder:
    def __init__(self, report: VerifyReport) -> None:
        self.report = report

    def __call__(self, name: str, fn: Callable[[], tuple[bool, object, object]]) -> bool:
        t0 = time.perf_counter()
        passed, left, right = fn()
        self.report.checks.append(Check(name, bool(passed), left, right, time.perf_counter() - t0))
        return passed


def verify_suite(m: SurfaceMap, w: Sequence, workers: int = 1, grassmann_cap: int = 12) -> VerifyReport:
    report = VerifyReport()
    rec = _Recorder(report)

    if m.n_vertices % 2:
        def odd():
            try:
                construct(m)
            except OddVertexCount:
                return True, "OddVertexCount", "expected"
            return False, "constructed", "OddVertexCount"

        rec("existence(expected-failure)", odd)
        return report

    rec("existence", lambda: (bool(is_kasteleyn(m, construct(m))), "kasteleyn", "kasteleyn"))

    setup = Setup.of(m)
    basis, classes = setup.basis, setup.classes
    g = m.genus

    def class_count():
        n = len(classes)
        distinct = all(
            not equivalence(m, a.orientation, b.orientation).equivalent
            for a, b in itertools.combinations(classes, 2)
        )
        return n == 1 << (2 * g) and distinct, n, 1 << (2 * g)

    rec("class_count", class_count)
    rec(
        "classes_kasteleyn",
        lambda: (all(is_kasteleyn(m, c.orientation) for c in classes), len(classes), len(classes)),
    )

    def theta_additive():
        for a, b, c in itertools.product(classes, repeat=3):
            ab = a.orientation.bits ^ b.orientation.bits
            bc = b.orientation.bits ^ c.orientation.bits
            if ab ^ bc != a.orientation.bits ^ c.orientation.bits:
                return False, "violated", "additive"
        return True, "additive", "additive"

    rec("cocycle_additivity", theta_additive)

    def gram_nondegenerate():
        r = gf2.rank(basis.gram)
        return r == 2 * g, r, 2 * g

    rec("intersection_nondegenerate", gram_nondegenerate)

    matchings = matching_list(m, workers)
    if not matchings:
        terms = class_terms(m, w, workers=workers, setup=setup)
        rec("partition_no_matching", lambda: (all(t.pf == 0 for t in terms), Fraction(0), Fraction(0)))
        return report

    D0 = setup.D0
    table = partition_bruteforce(m, basis, w, D0, workers)
    terms = class_terms(m, w, workers=workers, setup=setup)

    for t in terms:
        rep = pfaffian_identity(m, basis, t.orientation, w, D0, table, t.mask, strict=False)
        rec(f"pfaffian_identity[{gf2.to_string(t.mask, 2 * g) or '-'}]", lambda r=rep: (r.holds, r.lhs, r.rhs))

    z_pf = sum((t.summand for t in terms), Fraction(0)) / (1 << g)
    rec("partition", lambda: (z_pf == table.total, z_pf, table.total))
    if m.n_vertices <= grassmann_cap:
        z_gr = partition_as_grassmann(m, w, basis)
        rec("partition_grassmann", lambda: (z_gr == table.total, z_gr, table.total))

    for alpha in range(1 << (2 * g)):
        za = z_alpha_pfaffian(m, basis, w, D0, alpha, terms)
        rec(
            f"z_alpha[{gf2.to_string(alpha, 2 * g) or '-'}]",
            lambda za=za, a=alpha: (za == table.get(a), za, table.get(a)),
        )

    forms = [t.form for t in terms]

    def bijection():
        distinct = len({q.values for q in forms})
        return distinct == 1 << (2 * g), distinct, 1 << (2 * g)

    rec("spin_bijection", bijection)

    def prop_orientation():
        for a, b in itertools.product(terms, repeat=2):
            theta = a.orientation.bits ^ b.orientation.bits
            if a.form.values ^ b.form.values != cohomology_coordinates(basis, theta):
                return False, "mismatch", a.mask
        return True, "q^K+q^K'=theta", "q^K+q^K'=theta"

    rec("form_vs_orientation", prop_orientation)

    K = terms[0].orientation
    mforms = {D: build_form(m, basis, K, D) for D in matchings}

    rel = {D: delta(m, basis, D0, D) for D in matchings}

    def prop_matching():
        for D, D2 in itertools.product(matchings, repeat=2):
            if delta_of_pair(mforms[D], mforms[D2]) != rel[D] ^ rel[D2]:
                return False, "mismatch", f"{D}|{D2}"
        return True, "q_D+q_D'=.Delta", "q_D+q_D'=.Delta"

    rec("form_vs_matching", prop_matching)

    def ell_identity():
        ells = {D: [ell_left(m, D, C) & 1 for C in basis.cycles] for D in matchings}
        for D, D2 in itertools.product(matchings, repeat=2):
            z = 0
            for e in set(D) ^ set(D2):
                z |= 1 << e
            for i, C in enumerate(basis.cycles):
                lhs = ells[D][i] ^ ells[D2][i]
                if lhs != intersection_parity(m, C, z):
                    return False, lhs, "C.Delta"
        return True, "ell+ell'=C.Delta", "ell+ell'=C.Delta"

    rec("ell_vs_intersection", ell_identity)

    def lemma():
        for q, q2 in itertools.product(forms, repeat=2):
            d = delta_of_pair(q, q2)
            lhs = arf(q) * arf(q2)
            rhs = -1 if q(d) else 1
            if lhs != rhs or q(d) != q2(d):
                return False, lhs, rhs
        return True, "Arf.Arf'=(-1)^q(Delta)", "Arf.Arf'=(-1)^q(Delta)"

    rec("arf_product", lemma)

    def sign_independent():
        for t in terms:
            ref = t.arf * t.eps
            for D in matchings:
                q = build_form(m, basis, t.orientation, D)
                if arf(q) * matching_sign(m, t.orientation, D) != ref:
                    return False, t.mask, f"{D}"
        return True, "Arf.eps constant in D0", "Arf.eps constant in D0"

    rec("sign_independent_of_base", sign_independent)

    def composition():
        for D in matchings:
            for C in composition_cycles(m, D0, D):
                vs = [m.vertex_of[d] for d in C]
                if len(set(vs)) != len(vs) or len(C) % 2:
                    return False, f"{C}", "simple even"
        return True, "simple even", "simple even"

    rec("composition_cycles", composition)

    def census():
        plus, minus = arf_census(g)
        want = (1 << (2 * g - 1)) + (1 << (g - 1)) if g else 1
        return plus == want, plus, want

    rec("arf_census", census)
    return report
