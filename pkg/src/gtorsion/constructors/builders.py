"""Certificate builders, one per construction.

Each builder works in the filled presentation (or the knot group for the torus
commutator) and assembles a :class:`~gtorsion.certificate.Member` block by
block; every block is a displayed equality rewritten through at most one
relator, tagged with a note that travels into the derivation log.
"""

from __future__ import annotations

from typing import Sequence

from ..certificate import Evidence, Member, TorsionCertificate, lift_certificate, power_pair, product_of
from ..derivation import Equation
from ..presentation import (Diagram, Presentation, Slope, dehn_fill, lin_presentation,
                            torus_presentation, wirtinger)
from ..word import Word, commutator


class PreconditionError(ValueError):
    """The requested construction does not apply to these parameters."""


def _slope(s: Slope | str) -> Slope:
    return s if isinstance(s, Slope) else Slope.parse(s)


def meridian_evidence(m: int) -> Evidence:
    """Abelian order ``|m|`` when it says something; for ``|m| = 1`` homology
    is blind and non-triviality of the meridian is recorded as assumed."""
    if abs(m) > 1:
        return Evidence("abelian_order", abs(m))
    return Evidence("assumed", note="H_1 is trivial; the meridian normally generates the "
                                    "filled group, which is non-trivial for a non-trivial knot")


# --------------------------------------------------------------------------
# torus knots


def torus_commutator_cert(p: int, q: int, slope: Slope | str | None = None) -> TorsionCertificate:
    """``[x, y^q]`` written as ``q`` conjugates of ``[x, y]`` and killed by ``y^q = x^p``.

    With ``slope`` the certificate is moved into the filled group; the proof
    only uses the knot-group relator, so it carries over verbatim.
    """
    try:
        P = torus_presentation(p, q)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    x, y = P.alphabet.gens()
    base = commutator(x, y)
    conjugators = [y ** (-i) for i in range(q)]
    r = product_of([Member.generator(P, base).conj(c) for c in conjugators])
    lift = Equation.by_relator(P, y ** q, x ** p, 0, "y^q = x^p")
    xi = x.inverse()
    kill = Equation(P, xi, xi) * lift.inv() * Equation(P, x, x) * lift
    member = r.rewrite(kill.noted("[x, y^q] = [x, x^p] = 1"))
    ev = Evidence("assumed", note="[x,y] is non-trivial in every non-cyclic quotient of the knot group")
    cert = member.torsion(ev, {"construction": "torus_commutator", "p": p, "q": q})
    if slope is not None:
        s = _slope(slope)
        cert = lift_certificate(cert, dehn_fill(P, s))
        cert.meta.update({"m": s.m, "n": s.n})
    return cert


# --------------------------------------------------------------------------
# singular spanning disks


def disk_presentation(P: Presentation, p_count: int = 0, q_count: int = 0,
                      conjugators: Sequence[Word | str] | None = None) -> Presentation:
    """Adjoin the disk relator ``lambda mu^p = prod alpha_i mu alpha_i^-1``
    (or ``lambda mu^-q = prod beta_j mu^-1 beta_j^-1``).

    Without explicit conjugators, fresh generators ``alpha1..`` / ``beta1..``
    stand for the unknown group elements.
    """
    if not P.has_peripheral:
        raise PreconditionError("singular disk relator needs a meridian and longitude")
    if (p_count > 0) == (q_count > 0) or p_count < 0 or q_count < 0:
        raise PreconditionError("exactly one of p_count, q_count must be positive")
    count = p_count or q_count
    stem = "alpha" if p_count else "beta"
    if conjugators is None:
        names, i = [], 1
        while len(names) < count:
            name = f"{stem}{i}"
            if name not in P.alphabet:
                names.append(name)
            i += 1
        Q = P.extended(names)
        conj = [Q.gen(s) for s in names]
    else:
        if len(conjugators) != count:
            raise PreconditionError(f"expected {count} conjugators, got {len(conjugators)}")
        Q = P
        conj = [Word.parse(Q.alphabet, c) if isinstance(c, str) else c.lift(Q.alphabet)
                for c in conjugators]
    mu, lam = Q.meridian, Q.longitude
    e = 1 if p_count else -1
    prod = Q.alphabet.identity()
    for c in conj:
        prod = prod * c * mu ** e * c.inverse()
    axiom = lam * mu ** (e * count) * prod.inverse()
    if axiom.is_identity():
        raise PreconditionError("disk relator is trivial for these conjugators")
    prov = {"kind": "disk", "parent": P.provenance, "p_count": p_count, "q_count": q_count,
            "axiom": len(Q.relators), "conjugators": [c.to_pairs() for c in conj]}
    return Q.extended(new_relators=[axiom], provenance=prov)


def _disk_conjugators(D: Presentation) -> list[Word]:
    return [Word.from_pairs(D.alphabet, c) for c in D.provenance["conjugators"]]


def singular_disk_cert(P: Presentation, p_count: int = 0, q_count: int = 0,
                       slope: Slope | str = "1", conjugators=None) -> TorsionCertificate:
    """Meridian torsion from a disk relator: ``mu^m lambda^n`` is rewritten as
    ``mu^(m - pn)`` times ``n`` shifted copies ``mu^(pj) (lambda mu^p) mu^(-pj)``.

    The shifted form needs no commutation between meridian and longitude, so
    the certificate is valid for any presentation carrying the disk relator.
    """
    s = _slope(slope)
    m, n = s.m, s.n
    prov = P.provenance
    if prov.get("kind") == "disk" and prov.get("p_count") == p_count and prov.get("q_count") == q_count:
        D = P
    else:
        D = disk_presentation(P, p_count, q_count, conjugators)
    if p_count and m < p_count * n:
        raise PreconditionError(f"slope condition violated: need m/n >= {p_count}, got {s}")
    if q_count and m > -q_count * n:
        raise PreconditionError(f"slope condition violated: need m/n <= {-q_count}, got {s}")
    F = dehn_fill(D, s)
    ax, fill = D.provenance["axiom"], len(F.relators) - 1
    mu, lam = F.meridian, F.longitude
    conj = [c.lift(F.alphabet) for c in _disk_conjugators(D)]
    count, e = (p_count, 1) if p_count else (q_count, -1)
    base = mu ** e
    disk = product_of([Member.generator(F, base).conj(c) for c in conj])
    disk = disk.to(lam * mu ** (e * count), ax, "disk factorization of lambda mu^(+-p)")
    shifted = [disk.conj(mu ** (e * count * j)) for j in range(n, 0, -1)]
    slack = Member.base_power(F, base, e * m - count * n)
    member = (slack * product_of(shifted)).to(F.alphabet.identity(), fill, "filling relation")
    if e < 0:
        member = member.inverted()
    meta = {"construction": "singular_disk", "p_count": p_count, "q_count": q_count,
            "m": m, "n": n}
    return member.torsion(meridian_evidence(m), meta)


# --------------------------------------------------------------------------
# genus-one two-bridge knots


def genus1_case(p: int, q: int, slope: Slope, case: int | str = "auto") -> int:
    m, n = slope.m, slope.n
    if p <= 0 or q == 0:
        raise PreconditionError(f"genus-one family needs p > 0 and q != 0, got ({p}, {q})")
    if m == 0:
        raise PreconditionError("slope 0 is never covered: m must be non-zero")
    holds = {1: m >= (2 * n - 1) * p,
             2: q > 0 and m <= -(2 * n - 1) * q,
             3: q < 0 and m >= -(2 * n - 1) * q}
    if case == "auto":
        for c in (1, 2, 3):
            if holds[c]:
                return c
        raise PreconditionError(f"slope condition violated: no case applies to ({p}, {q}) at {slope}")
    c = int(case)
    if c not in holds:
        raise PreconditionError(f"unknown case {case!r}")
    if c == 2 and q < 0 or c == 3 and q > 0:
        raise PreconditionError(f"case {c} does not match the sign of q = {q}")
    if not holds[c]:
        raise PreconditionError(f"slope condition violated for case {c}: ({p}, {q}) at {slope}")
    return c


def genus1_cert(p: int, q: int, slope: Slope | str, case: int | str = "auto") -> TorsionCertificate:
    """Meridian torsion in the ``m/n`` filling of the double twist knot C[2p, 2q]."""
    s = _slope(slope)
    c = genus1_case(p, q, s, case)
    F = dehn_fill(lin_presentation(p, q), s)
    builder = {1: _genus1_case1, 2: _genus1_case2, 3: _genus1_case3}[c]
    member = builder(F, p, q, s.m, s.n)
    assert member.k == 2 * abs(s.m)
    meta = {"construction": "genus1", "p": p, "q": q, "m": s.m, "n": s.n, "case": c}
    return member.torsion(meridian_evidence(s.m), meta)


R1, R2, FILL = 0, 1, 2


def _genus1_case1(F: Presentation, p: int, q: int, m: int, n: int) -> Member:
    a, b, t = F.alphabet.gens()
    T = Member.generator(F, t)
    L = commutator(b ** q, a ** p)
    ta = T.conj(b ** q).to(t * a, R2, "ta = b^q t b^-q")
    tb = T.to(b ** q * t * b ** (-q) * a.inverse(), R2, "t = b^q t b^-q a^-1")
    Y = power_pair(ta, t, a, p)  # t^p a^p
    X = power_pair(tb, b ** q * t * b ** (-q), a.inverse(), p)  # b^q t^p b^-q a^-p
    L1 = X.conj(t ** p * b ** (-q)) * Y  # t^2p [b^q, a^p]
    Ln = power_pair(L1, t ** (2 * p), L, n - 1) if n > 1 else Member.empty(F, t)
    slack = Member.base_power(F, t, m - (2 * n - 1) * p)
    ap = (Y.conj(t ** (-p)) * slack * Ln).conj(b ** q).to(a ** p, FILL, "a^p from the filling")
    am = (Ln.conj(t ** (m - 2 * (n - 1) * p)) * slack * X.conj(b ** (-q)))
    am = am.to(a ** (-p), FILL, "a^-p from the filling")
    return ap * am


def _genus1_bt(F: Presentation, p: int):
    a, b, t = F.alphabet.gens()
    T = Member.generator(F, t)
    bt = T.conj(a ** p).to(b * t, R1, "bt = a^p t a^-p")
    tb = T.to(b.inverse() * a ** p * t * a ** (-p), R1, "t = b^-1 a^p t a^-p")
    return bt, tb


def _genus1_case2(F: Presentation, p: int, q: int, m: int, n: int) -> Member:
    a, b, t = F.alphabet.gens()
    bt, tb = _genus1_bt(F, p)
    Y = power_pair(bt, b, t, q)  # b^q t^q
    X = power_pair(tb, b.inverse(), a ** p * t * a ** (-p), q)  # b^-q a^p t^q a^-p
    Lp = commutator(a ** p, b ** q)
    L1 = X.conj(t ** (2 * q) * a ** (-p)) * Y.conj(t ** q)  # t^2q [a^p, b^q]
    Ln = power_pair(L1, t ** (2 * q), Lp, n - 1) if n > 1 else Member.empty(F, t)
    slack = Member.base_power(F, t, -m - (2 * n - 1) * q)
    bq = (Y * slack * Ln).conj(a ** p).to(b ** q, FILL, "b^q from the filling")
    bmq = (slack * Ln.conj(t ** q) * X.conj(t ** q * a ** (-p)))
    bmq = bmq.to(b ** (-q), FILL, "b^-q from the filling")
    return bq * bmq


def _genus1_case3(F: Presentation, p: int, q: int, m: int, n: int) -> Member:
    a, b, t = F.alphabet.gens()
    bt, tb = _genus1_bt(F, p)
    Q = -q
    Y = power_pair(bt, b, t, Q)  # b^-q t^-q
    X = power_pair(tb, b.inverse(), a ** p * t * a ** (-p), Q)  # b^q a^p t^-q a^-p
    L = commutator(b ** q, a ** p)
    L1 = Y * X.conj(t ** q * a ** (-p))  # [b^q, a^p] t^-2q
    Ln = power_pair(L1, L, t ** (-2 * q), n - 1) if n > 1 else Member.empty(F, t)
    slack = Member.base_power(F, t, m + (2 * n - 1) * q)
    bq = (X.conj(a ** (-p)) * Ln.conj(t ** q) * slack).to(b ** q, FILL, "b^q from the filling")
    bmq = (Ln * slack * Y.conj(t ** (-q))).conj(a ** p)
    bmq = bmq.to(b ** (-q), FILL, "b^-q from the filling")
    return bq * bmq


# --------------------------------------------------------------------------
# diagrams whose negative crossings all pass under one overarc


def positive_diagram_cert(d: Diagram, slope: Slope | str) -> TorsionCertificate:
    """Meridian ``t1`` torsion from a diagram with ``p`` crossings, ``k`` of them
    negative and all passing under the base overarc, when ``m >= n(p - k)``."""
    s = _slope(slope)
    m, n = s.m, s.n
    P, data = wirtinger(d)
    p, k = data.crossings, data.negatives
    if p < 3:
        raise PreconditionError(f"degenerate diagram with {p} crossings")
    if not data.single_run:
        raise PreconditionError(
            "negative crossings must all pass under the base overarc")
    if m < 1 or m - n * (p - k) < 0:
        raise PreconditionError(f"slope condition violated: need m - n(p - k) >= 0 and m >= 1, "
                                f"got m={m}, n={n}, p={p}, k={k}")
    F = dehn_fill(P, s)
    gens = F.alphabet.gens()
    gen_of = data.generator_of_arc
    arc_word = lambda arc: gens[gen_of[arc]]
    t1 = gens[0]
    T = Member.generator(F, t1)

    # every arc generator as a conjugate of t1, walking the knot from the base arc
    members = {d.base_overarc: T}
    cur = T
    for over, _, out, sign in data.steps[:-1]:
        cur = cur.conj(arc_word(over) ** (-sign)).to(arc_word(out), None, "crossing relation")
        members[out] = cur

    letters = data.longitude_factors
    negatives_after = []
    remaining = sum(1 for _, sgn in letters if sgn < 0)
    for _, sgn in letters:
        if sgn < 0:
            remaining -= 1
        negatives_after.append(remaining)
    W = product_of([members[over].conj(t1 ** shift)
                    for (over, sgn), shift in zip(letters, negatives_after) if sgn > 0]
                   or [Member.empty(F, t1)])
    W = W.noted("longitude = t1^-(p-k) W")
    step = p - k
    blocks = [W.conj(t1 ** (j * step)) for j in range(n - 1, -1, -1)]
    total = Member.base_power(F, t1, m - n * step) * product_of(blocks)
    member = total.to(F.alphabet.identity(), len(F.relators) - 1, "filling relation")
    meta = {"construction": "positive_diagram", "crossings": p, "negatives": k,
            "writhe": data.writhe, "m": m, "n": n}
    return member.torsion(meridian_evidence(m), meta)
