"""Checks of the identity

    (p-1)p(p+1) = 2(p+1) c(<V>) - 4 c(W<V>) + 4(p-1) c(Delta<T>)

in Z[SL2(Z/p)], plus checkers for the supporting lemmas.

``verify_direct`` enumerates the group and evaluates every c(.) as an
explicit orbit sum.  ``verify_symbolic`` substitutes the class decompositions
and checks the coefficients collapse; it only needs u to exist, so it runs
for any prime p = 17 (mod 60).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CoefficientMismatch, IdentityFailure
from .groupring import (RingElement, centralize, class_sum, distinct_conjugates, maschke,
                        set_sum, stabilizer_order)
from .groups import (FiniteGroup, centralizer, class_of, conjugacy_classes, left_cosets,
                     prime_order_subgroups, set_stabilizer)
from .modp import as_prime, solve_u, verify_reciprocity_chain
from .sl2 import (DEFAULT_MAX_ORDER, ClassLabel, Mat2, build_specials, class_size, classify,
                  enumerate_sl2, v_inverse_conjugator)

TERMS = ("c(<V>)", "c(W<V>)", "c(Delta<T>)")
IDENTITY_TEXT = "(p-1)p(p+1) = 2(p+1) c(<V>) - 4 c(W<V>) + 4(p-1) c(Delta<T>)"
CENTRAL = ClassLabel("I")


@lru_cache(maxsize=8)
def sl2_group(p: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    return enumerate_sl2(p, max_order=max_order)


def _require_17_mod_60(p):
    P = as_prime(p)
    if not P.is_17_mod_60:
        raise ValueError(f"p = {P.value} is not 17 mod 60")
    return P


def decompose(G: FiniteGroup, x: RingElement) -> dict[ClassLabel, int]:
    """Write a class function as {label: coefficient}; fails if x is not constant on classes."""
    out: dict[ClassLabel, int] = {}
    seen: dict[ClassLabel, int] = {}
    for g, c in x.coeffs.items():
        lab = classify(G.elements[g])
        if out.setdefault(lab, c) != c:
            raise IdentityFailure(f"not a class function: {lab} carries {out[lab]} and {c}")
        seen[lab] = seen.get(lab, 0) + 1
    p = G.elements[0].p
    for lab, k in seen.items():
        if k != class_size(lab, p):
            raise IdentityFailure(f"{lab} only partially present")
    return dict(sorted(out.items()))


def _fmt_decomp(d: dict) -> str:
    return " + ".join(f"{c}*{lab}" for lab, c in sorted(d.items())) or "0"


@dataclass
class IdentityReport:
    p: int
    mode: str
    lhs: int
    rhs_class_decomposition: dict
    passed: bool
    quarter_passed: bool
    term_decomposition: dict = field(default_factory=dict)
    quarter_decomposition: dict = field(default_factory=dict)
    u: int | None = None
    u_inv: int | None = None
    notes: list = field(default_factory=list)

    def same_result(self, other: "IdentityReport") -> bool:
        return all(getattr(self, f) == getattr(other, f) for f in (
            "p", "lhs", "rhs_class_decomposition", "passed", "quarter_passed",
            "term_decomposition", "quarter_decomposition", "u", "u_inv"))

    def render(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"p = {self.p}",
            f"u = {self.u}, u^-1 = {self.u_inv}",
            f"identity: {IDENTITY_TEXT}",
            f"LHS = {self.lhs}",
        ]
        for name in TERMS:
            lines.append(f"  {name} = {_fmt_decomp(self.term_decomposition[name])}")
        lines.append(f"RHS = {_fmt_decomp(self.rhs_class_decomposition)}")
        lines.append(f"identity: {'PASS' if self.passed else 'FAIL'}")
        lines.append(f"quarter identity (RHS/4 = {self.lhs // 4} e): "
                     f"{'PASS' if self.quarter_passed else 'FAIL'}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


# ------------------------------------------------------------------ certificates

@dataclass(frozen=True)
class CertificateTerm:
    coefficient: int
    generator: int
    representative: int


@dataclass
class Certificate:
    """Integer combination of left-coset sums rep * <gen> adding up to |G| e."""

    p: int
    order: int
    terms: list

    def render(self, G: FiniteGroup) -> str:
        lines = [
            "scharlau-certificate v1",
            f"p = {self.p}",
            f"|G| = {self.order}",
            f"identity: {IDENTITY_TEXT}",
            f"terms: {len(self.terms)}",
            "coeff  subgroup-generator  coset-representative",
        ]
        for t in self.terms:
            lines.append(f"{t.coefficient}  {G.label(t.generator)}  {G.label(t.representative)}")
        lines.append(f"SUM = (p-1)p(p+1) * e = {self.order} * e  VERIFIED")
        return "\n".join(lines) + "\n"


def coset_sum(G: FiniteGroup, generator: int, representative: int) -> RingElement:
    H = G.cyclic_subgroup(generator).elements
    return set_sum(G, G.table[representative, list(H)])


def evaluate_certificate(G: FiniteGroup, cert: Certificate) -> RingElement:
    acc: dict[int, int] = {}
    for t in cert.terms:
        if t.generator == 0:
            raise IdentityFailure("certificate uses the trivial subgroup")
        for g in coset_sum(G, t.generator, t.representative).coeffs:
            acc[g] = acc.get(g, 0) + t.coefficient
    return RingElement(G, acc)


def check_certificate(G: FiniteGroup, cert: Certificate) -> bool:
    total = evaluate_certificate(G, cert)
    return total == cert.order


def parse_certificate(text: str, G: FiniteGroup) -> Certificate:
    lines = text.splitlines()
    if not lines or lines[0] != "scharlau-certificate v1":
        raise ValueError("not a certificate")
    p = int(lines[1].split("=")[1])
    order = int(lines[2].split("=")[1])
    n = int(lines[4].split(":")[1])
    terms = []
    for ln in lines[6:6 + n]:
        c, gen, rep = ln.split()
        terms.append(CertificateTerm(int(c), G.id_of(_parse_mat(gen, p)), G.id_of(_parse_mat(rep, p))))
    if not lines[6 + n].startswith("SUM ="):
        raise ValueError("missing certificate footer")
    return Certificate(p, order, terms)


def _parse_mat(s: str, p: int) -> Mat2:
    a, b, c, d = (int(x) for x in s.replace("[", "").replace("]", "").split(","))
    return Mat2(a, b, c, d, p)


def _certificate_terms(G: FiniteGroup, weighted: list[tuple[int, RingElement]]) -> list:
    acc: dict[tuple[int, int], int] = {}
    for coef, x in weighted:
        ids, _, _, _ = distinct_conjugates(G, x)
        for row in ids:
            s0 = int(row[0])
            H = np.sort(G.table[G.inverse[s0], row])
            gen = int(H[1])
            rep = s0
            if not np.array_equal(np.sort(G.table[rep, G.cyclic_subgroup(gen).elements]), row):
                raise IdentityFailure("conjugate support is not a left coset of a cyclic subgroup")
            key = (gen, rep)
            acc[key] = acc.get(key, 0) + coef
    return [CertificateTerm(c, g, r) for (g, r), c in sorted(acc.items()) if c]


# ------------------------------------------------------------------ the identity

def special_sets(G: FiniteGroup, sp) -> dict[str, tuple]:
    """Id sets for <V>, W<V> and Delta<T>."""
    iV, iT = G.id_of(sp.V), G.id_of(sp.T)
    HV = G.cyclic_subgroup(iV).elements
    HT = G.cyclic_subgroup(iT).elements
    iW, iD = G.id_of(sp.W), G.id_of(sp.Delta)
    return {
        "<V>": HV,
        "W<V>": tuple(sorted(int(G.table[iW, h]) for h in HV)),
        "Delta<T>": tuple(sorted(int(G.table[iD, h]) for h in HT)),
        "<T>": HT,
    }


def verify_direct(p, max_order: int = DEFAULT_MAX_ORDER) -> tuple[IdentityReport, Certificate]:
    P = _require_17_mod_60(p)
    n = P.value
    G = sl2_group(n, max_order)
    sp = build_specials(n)
    sets = special_sets(G, sp)
    xs = {name: set_sum(G, sets[name[2:-1]]) for name in TERMS}
    cs = {name: centralize(G, x) for name, x in xs.items()}
    cV, cW, cD = (cs[name] for name in TERMS)

    lhs = (n - 1) * n * (n + 1)
    rhs = cV * (2 * (n + 1)) - cW * 4 + cD * (4 * (n - 1))
    quarter = cV * ((n + 1) // 2) - cW + cD * (n - 1)
    if rhs != lhs:
        diff = rhs - lhs
        g = min(diff.coeffs)
        raise IdentityFailure(f"coefficient of {G.label(g)} is {rhs[g]}, expected {lhs if g == 0 else 0}")

    notes = []
    for name, c in cs.items():
        if not c.is_central(range(0, G.order, 97)):
            raise IdentityFailure(f"{name} is not central")
    if xs["c(W<V>)"].is_central(range(G.order)):
        raise IdentityFailure("raw W<V> coset sum unexpectedly central")
    notes.append("each c(.) is central; the raw coset sum W<V> is not")

    report = IdentityReport(
        p=n, mode="direct", lhs=lhs,
        rhs_class_decomposition=decompose(G, rhs),
        passed=True,
        quarter_passed=quarter == lhs // 4,
        term_decomposition={name: decompose(G, c) for name, c in cs.items()},
        quarter_decomposition=decompose(G, quarter),
        u=sp.u, u_inv=sp.u_inv, notes=notes,
    )
    cert = Certificate(n, G.order, _certificate_terms(
        G, [(2 * (n + 1), xs["c(<V>)"]), (-4, xs["c(W<V>)"]), (4 * (n - 1), xs["c(Delta<T>)"])]))
    if not check_certificate(G, cert):
        raise IdentityFailure("certificate does not re-evaluate to |G| e")
    return report, cert


def verify_symbolic(p) -> IdentityReport:
    """Coefficient collapse from the class decompositions, without enumerating the group."""
    P = _require_17_mod_60(p)
    n = P.value
    sol = solve_u(P)
    verify_reciprocity_chain(P)
    sp = build_specials(P)
    half = sol.half.residue
    if sp.Delta.trace in (2, n - 2):
        raise CoefficientMismatch("trace of Delta is +-2")
    WV, WVi = sp.W * sp.V, sp.W * sp.V.inverse()
    if not WV.trace == WVi.trace == sp.Delta.trace == half:
        raise CoefficientMismatch("W V, W V^-1 and Delta do not share a trace")
    clV, clD = classify(sp.V), classify(sp.Delta)
    if classify(sp.W) != clV or classify(WV) != clD or classify(WVi) != clD:
        raise CoefficientMismatch("class labels of W, WV, WV^-1 disagree with V, Delta")

    terms = {
        "c(<V>)": {CENTRAL: (n - 1) * n // 2, clV: 1},
        "c(W<V>)": {clV: (n + 1) // 2, clD: n - 1},
        "c(Delta<T>)": {clD: 1},
    }

    def combine(weights):
        out: dict[ClassLabel, int] = {}
        for name, w in zip(TERMS, weights):
            for lab, c in terms[name].items():
                out[lab] = out.get(lab, 0) + w * c
        return {lab: c for lab, c in sorted(out.items()) if c}

    lhs = (n - 1) * n * (n + 1)
    rhs = combine((2 * (n + 1), -4, 4 * (n - 1)))
    quarter = combine(((n + 1) // 2, -1, n - 1))
    passed = rhs == {CENTRAL: lhs}
    if not passed:
        raise CoefficientMismatch(f"p={n}: RHS collapses to {_fmt_decomp(rhs)}")
    return IdentityReport(
        p=n, mode="symbolic", lhs=lhs, rhs_class_decomposition=rhs, passed=passed,
        quarter_passed=quarter == {CENTRAL: lhs // 4},
        term_decomposition={k: dict(sorted(v.items())) for k, v in terms.items()},
        quarter_decomposition=quarter, u=sp.u, u_inv=sp.u_inv,
    )


# ------------------------------------------------------------------ lemma checkers

@dataclass
class LemmaCheck:
    lemma: int
    p: int | None
    passed: bool
    details: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        head = f"lemma {self.lemma}" + (f" (p={self.p})" if self.p is not None else "")
        return f"{head}: {status}" + ("".join(f"\n    {d}" for d in self.details))


def _expect(details: list, what: str, got, want) -> bool:
    ok = got == want
    details.append(f"{what}: {got}" + ("" if ok else f" (expected {want})"))
    return ok


def check_lemma1(p, max_order: int = DEFAULT_MAX_ORDER) -> LemmaCheck:
    """p + 4 classes, and trace classification matches the orbit partition."""
    n = int(p)
    G = sl2_group(n, max_order)
    classes = conjugacy_classes(G)
    det = []
    ok = _expect(det, "conjugacy classes", len(classes), n + 4)
    labels = set()
    bad = 0
    for _, members in classes:
        labs = {classify(G.elements[g]) for g in members}
        bad += len(labs) != 1
        labels |= labs
    ok &= _expect(det, "orbits carrying more than one label", bad, 0)
    ok &= _expect(det, "distinct labels", len(labels), n + 4)
    return LemmaCheck(1, n, ok, det)


def check_lemma2(p, max_order: int = DEFAULT_MAX_ORDER) -> LemmaCheck:
    """Class sizes agree with the closed forms (p(p+1), p(p-1), (p^2-1)/2, 1)."""
    n = int(p)
    G = sl2_group(n, max_order)
    det = []
    wrong = [(str(classify(G.elements[r])), len(m)) for r, m in conjugacy_classes(G)
             if len(m) != class_size(classify(G.elements[r]), n)]
    ok = _expect(det, "classes with wrong size", wrong, [])
    D = Mat2.diag(2, n)
    if D.trace not in (2, n - 2):
        ok &= _expect(det, "|cl(diag(2, 1/2))|", len(class_of(G, G.id_of(D))), n * (n + 1))
    orders = G.element_orders()
    has = bool((orders == n + 1).any())
    ok &= _expect(det, f"element of order p+1 = {n + 1} exists", has, True)
    return LemmaCheck(2, n, ok, det)


def check_lemma3(G: FiniteGroup, max_order: int = 500) -> LemmaCheck:
    """Whenever a class contains a coset gH (H of prime order), the conjugates of gH cover the class."""
    if G.order > max_order:
        raise ValueError(f"lemma 3 scan limited to order <= {max_order}")
    class_id = np.empty(G.order, dtype=np.int64)
    classes = conjugacy_classes(G)
    for k, (_, members) in enumerate(classes):
        class_id[list(members)] = k
    det = []
    contained = 0
    failures = []
    for H in prime_order_subgroups(G):
        for coset in left_cosets(G, H):
            ks = class_id[list(coset)]
            if (ks != ks[0]).any():
                continue
            contained += 1
            union = np.unique(G.conjugates_of(coset))
            if not np.array_equal(union, classes[ks[0]][1]):
                failures.append(coset)
    det.append(f"cosets contained in a single class: {contained}")
    ok = _expect(det, "counterexamples", len(failures), 0)
    return LemmaCheck(3, None, ok, det)


def check_lemma4(p, D: Mat2, max_order: int = DEFAULT_MAX_ORDER) -> LemmaCheck:
    """c(D<T>) = cl(D) for diagonal D != +-I, with exactly p + 1 conjugates of D<T>."""
    n = int(p)
    if D.b or D.c or D.a in (1, n - 1):
        raise ValueError("D must be diagonal and not +-I")
    G = sl2_group(n, max_order)
    iD, iT = G.id_of(D), G.id_of(Mat2.elementary(1, n))
    x = set_sum(G, G.table[iD, list(G.cyclic_subgroup(iT).elements)])
    det = []
    ok = _expect(det, "c(D<T>) == cl(D)", centralize(G, x) == class_sum(G, iD), True)
    ok &= _expect(det, "distinct conjugates of D<T>", G.order // stabilizer_order(G, x), n + 1)
    ok &= _expect(det, "|N(D)|", len(centralizer(G, iD)), n - 1)
    return LemmaCheck(4, n, ok, det)


def check_lemma5(p, max_order: int = DEFAULT_MAX_ORDER) -> LemmaCheck:
    """c(<V>) = (p-1)p/2 e + cl(V), |N(<V>)| = 2(p+1), V ~ V^-1 by antidiag(a, a).

    The stated coefficients assume V lies in a torus of order p + 1 (p = 2 mod 3).
    For p = 1 mod 3 the same argument runs in the split torus and the expected
    values become p(p+1)/2 and 2(p-1).
    """
    n = int(p)
    if n % 4 != 1:
        raise ValueError("lemma 5 needs p = 1 mod 4")
    G = sl2_group(n, max_order)
    sp = build_specials(n, with_w=False)
    iV = G.id_of(sp.V)
    x = set_sum(G, G.cyclic_subgroup(iV).elements)
    c = centralize(G, x)
    torus = n + 1 if n % 3 == 2 else n - 1
    det = [f"V lies in a torus of order {torus}"]
    ok = _expect(det, "coefficient of e", c[0], n * (2 * n - torus) // 2)
    rest = c - c[0]
    ok &= _expect(det, "remainder equals cl(V)", rest == class_sum(G, iV), True)
    ok &= _expect(det, "|N(<V>)|", stabilizer_order(G, x), 2 * torus)
    ok &= _expect(det, "|N(<V>)| via set stabilizer", len(set_stabilizer(G, x.support)), 2 * torus)
    J = v_inverse_conjugator(n)
    ok &= _expect(det, "antidiag conjugates V to V^-1", sp.V.conj(J) == sp.V.inverse(), True)
    return LemmaCheck(5, n, ok, det)


def check_lemma6(p) -> LemmaCheck:
    """u + 1/u = 1/2 exists, (-15/p) = 1, and W V, W V^-1, Delta share a trace != +-2."""
    P = _require_17_mod_60(p)
    n = P.value
    sol = solve_u(P)
    chain = verify_reciprocity_chain(P)
    sp = build_specials(P)
    det = [f"u = {sol.u.residue}, u^-1 = {sol.u_inv.residue}, 1/2 = {sol.half.residue}",
           f"(-1/p), (3/p), (5/p) = {chain.factors}"]
    ok = _expect(det, "W^3 == I", sp.W ** 3 == sp.identity, True)
    ok &= _expect(det, "tr(W V) == tr(W V^-1) == tr(Delta)",
                  (sp.W * sp.V).trace == (sp.W * sp.V.inverse()).trace == sp.Delta.trace, True)
    ok &= _expect(det, "tr(Delta) not +-2", sp.Delta.trace not in (2, n - 2), True)
    return LemmaCheck(6, n, ok, det)


def check_lemma7(p, max_order: int = DEFAULT_MAX_ORDER) -> LemmaCheck:
    """c(W<V>) = (p+1)/2 cl(V) + (p-1) cl(WV) and the stabilizer orders around it.

    N(W<V>) must be {+-I}.  The stabilizer of {WV, W V^-1} only has to divide
    2(p-1) (it is {+-I} as well); the set whose stabilizer has exactly
    2(p-1) elements is {WV, (WV)^-1}.
    """
    n = _require_17_mod_60(p).value
    G = sl2_group(n, max_order)
    sp = build_specials(n)
    sets = special_sets(G, sp)
    x = set_sum(G, sets["W<V>"])
    c = centralize(G, x)
    iV, iWV = G.id_of(sp.V), G.id_of(sp.W * sp.V)
    iWVi = G.id_of(sp.W * sp.V.inverse())
    det = []
    ok = _expect(det, "coefficient of cl(V)", c[iV], (n + 1) // 2)
    ok &= _expect(det, "coefficient of cl(WV)", c[iWV], n - 1)
    expected = class_sum(G, iV).scale((n + 1) // 2) + class_sum(G, iWV).scale(n - 1)
    ok &= _expect(det, "no other terms", c == expected, True)
    stab = set_stabilizer(G, sets["W<V>"])
    ok &= _expect(det, "N(W<V>)", sorted(G.label(g) for g in stab),
                  sorted([str(sp.identity), str(sp.neg_identity)]))
    pair = len(set_stabilizer(G, {iWV, iWVi}))
    ok &= _expect(det, "|N({WV, W V^-1})| divides 2(p-1)", (2 * (n - 1)) % pair == 0, True)
    det.append(f"|N({{WV, W V^-1}})| = {pair}")
    # the torus normalizer through WV: the pair {WV, (WV)^-1}
    ok &= _expect(det, "|N({WV, (WV)^-1})|",
                  len(set_stabilizer(G, {iWV, G.inv(iWV)})), 2 * (n - 1))
    ok &= _expect(det, "total terms", sum(c.coeffs.values()), 3 * (n - 1) * n * (n + 1) // 2)
    return LemmaCheck(7, n, ok, det)


def maschke_relation(G: FiniteGroup, x: RingElement) -> bool:
    """m(x) == |N(x)| c(x), with N(x) taken from the set stabilizer when x is a 0/1 set sum."""
    N = stabilizer_order(G, x)
    if set(x.coeffs.values()) == {1}:
        if len(set_stabilizer(G, x.support)) != N:
            return False
    return maschke(G, x) == centralize(G, x).scale(N)
