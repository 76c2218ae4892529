"""Polynomial ideals attached to the level-k fusion rings.

Two families of ideals appear.  In the character variables the level-k
ideal cuts out the fusion variety, and the ring of functions on it is the
complexified fusion ring (the finite-group analogue of evaluating at
roots of unity).  In the substituted variables (s, t) the corresponding
ideal presents the K-theory quotient.

The Groebner engine is deliberately plain Buchberger over Fraction
coefficients with the normal selection strategy and full interreduction:
the ideals here live in at most two variables with a handful of
generators, where simplicity beats asymptotics.  The reduced basis is
canonical for a fixed monomial order, which the tests rely on.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .cartan import root_system
from .charpoly import p_poly, p_poly_sector, q_poly, sector, weights_of_level
from .exactmat import exact_rank
from .fusion import character_point, enumerate_simples, fuse_kw
from .poly import MONOMIAL_ORDERS, Poly, grevlex_key


def _monomial_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _monomial_quot(b, a):
    return tuple(y - x for x, y in zip(a, b))


def _term_times(poly: Poly, exp, coeff) -> Poly:
    return Poly({tuple(e + x for e, x in zip(k, exp)): c * coeff
                 for k, c in poly.terms.items()}, poly.nvars)


def divmod_poly(f: Poly, gs: list[Poly], key=grevlex_key):
    """Multivariate division: f = sum(q_i g_i) + r with no term of r
    divisible by any leading monomial of gs.  Returns (quotients, r)."""
    if any(g.is_laurent_only() for g in gs + [f]):
        raise ValueError("division expects ordinary polynomials")
    quots = [Poly.zero(f.nvars) for _ in gs]
    rem_terms: dict = {}
    work = f
    while not work.is_zero():
        e, c = work.leading(key)
        for i, g in enumerate(gs):
            ge, gc = g.leading(key)
            if _monomial_divides(ge, e):
                q_exp = _monomial_quot(e, ge)
                q_coeff = Fraction(c) / Fraction(gc)
                quots[i] = quots[i] + Poly({q_exp: q_coeff}, f.nvars)
                work = work - _term_times(g, q_exp, q_coeff)
                break
        else:
            rem_terms[e] = rem_terms.get(e, 0) + c
            work = work - Poly({e: c}, f.nvars)
    return quots, Poly(rem_terms, f.nvars)


def normal_form(f: Poly, basis: list[Poly], key=grevlex_key) -> Poly:
    return divmod_poly(f, basis, key)[1]


def _s_poly(f: Poly, g: Poly, key) -> Poly:
    fe, fc = f.leading(key)
    ge, gc = g.leading(key)
    lcm = tuple(max(a, b) for a, b in zip(fe, ge))
    return _term_times(f, _monomial_quot(lcm, fe), Fraction(1, 1) / fc) - _term_times(
        g, _monomial_quot(lcm, ge), Fraction(1, 1) / gc
    )


def buchberger(gens: list[Poly], order: str = "grevlex") -> list[Poly]:
    """Reduced Groebner basis, deterministic for a fixed order."""
    key = MONOMIAL_ORDERS[order]
    basis = [g.monic(key) for g in gens if not g.is_zero()]
    basis.sort(key=lambda g: key(g.leading(key)[0]))
    if not basis:
        return []
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def lcm_of(i, j):
        a = basis[i].leading(key)[0]
        b = basis[j].leading(key)[0]
        return tuple(max(x, y) for x, y in zip(a, b))

    while pairs:
        i, j = min(pairs, key=lambda p: (key(lcm_of(*p)), p))
        pairs.remove((i, j))
        a = basis[i].leading(key)[0]
        b = basis[j].leading(key)[0]
        lcm = lcm_of(i, j)
        if lcm == tuple(x + y for x, y in zip(a, b)):
            continue  # coprime leading monomials reduce to zero
        r = normal_form(_s_poly(basis[i], basis[j], key), basis, key)
        if r.is_zero():
            continue
        r = r.monic(key)
        basis.append(r)
        n = len(basis) - 1
        pairs.update((m, n) for m in range(n))
    # interreduce to the canonical reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = [g for m, g in enumerate(basis) if m != i and not g.is_zero()]
            r = normal_form(basis[i], others, key)
            if r != basis[i]:
                basis[i] = r.monic(key) if not r.is_zero() else Poly.zero(r.nvars)
                changed = True
        basis = [g for g in basis if not g.is_zero()]
    basis.sort(key=lambda g: key(g.leading(key)[0]))
    return basis


def is_member(f: Poly, groebner: list[Poly], order: str = "grevlex") -> bool:
    return normal_form(f, groebner, MONOMIAL_ORDERS[order]).is_zero()


def standard_monomials(groebner: list[Poly], order: str = "grevlex"):
    """Monomial basis of the quotient, or None when it is not finite."""
    key = MONOMIAL_ORDERS[order]
    if not groebner:
        return None
    nvars = groebner[0].nvars
    leads = [g.leading(key)[0] for g in groebner]
    caps = []
    for v in range(nvars):
        pures = [e[v] for e in leads if all(x == 0 for i, x in enumerate(e) if i != v)]
        if not pures:
            return None
        caps.append(min(pures))
    out = []

    def walk(prefix):
        if len(prefix) == nvars:
            e = tuple(prefix)
            if not any(_monomial_divides(l, e) for l in leads):
                out.append(e)
            return
        for d in range(caps[len(prefix)] + 1):
            walk(prefix + [d])

    walk([])
    return sorted(out, key=key)


# ---------------------------------------------------------------------------
# the level-k ideals

def _boundary_weights(group, k: int):
    """Generator weights: the full level-(k+1) shell, plus one weight of
    level k+2 on the axis that the shell misses (rank-2 non-simply-laced),
    or the second one-higher axis weight (a2)."""
    rs = root_system(group)
    if rs.name == "a1":
        return [(k + 1,)]
    if rs.name == "a2":
        return [(k + 1, 0), (k + 2, 0)]
    if rs.name == "c2":
        return weights_of_level("c2", k + 1) + [(0, k + 2)]
    return weights_of_level("g2", k + 1) + [(k + 2, 0)]


def fusion_ideal(group, k: int) -> list[Poly]:
    """Generators, in the character variables, of the ideal cutting out
    the level-k fusion variety."""
    return [q_poly(group, lam) for lam in _boundary_weights(group, k)]


def ik_ideal(group, k: int) -> list[Poly]:
    """The boundary generators pushed through the (s, t) substitution.

    For c2 the odd-class boundary characters have no image in the
    substituted ring (odd powers of x are not expressible in s and t), so
    only the semi-even ones appear.  The resulting quotient dimension
    matches the stabilized rank of the corresponding endomorphism tower
    for every level at which the tower generates its graded block.
    """
    name = root_system(group).name
    weights = _boundary_weights(name, k)
    if name == "c2":
        weights = [w for w in weights if sector(name, w) == 0]
    return [p_poly(name, w) for w in weights]


# ---------------------------------------------------------------------------
# verification routines

def _fraction_rank(rows: list[dict]) -> int:
    """Exact rank of rows of Fractions keyed by column index."""
    cleared = []
    for row in rows:
        denom = 1
        for v in row.values():
            d = Fraction(v).denominator
            denom = denom * d // gcd(denom, d)
        cleared.append({j: int(Fraction(v) * denom) for j, v in row.items()})
    ncols = 1 + max((j for row in cleared for j in row), default=-1)
    return exact_rank(cleared, n_cols=ncols).rank


def verify_gepner_fuchs(group, k: int, order: str = "grevlex") -> dict:
    """Check that the quotient by the character ideal is the fusion ring.

    Three facts are verified exactly: the quotient dimension equals the
    number of level-k simples, the residues of the simple characters are
    linearly independent over Q, and multiplication of residues reproduces
    every fusion structure constant.
    """
    key = MONOMIAL_ORDERS[order]
    simples = enumerate_simples(group, k)
    gb = buchberger(fusion_ideal(group, k), order)
    std = standard_monomials(gb, order)
    report = {
        "group": root_system(group).name,
        "level": k,
        "simples": len(simples),
        "quotient_dimension": None if std is None else len(std),
        "dimension_matches": std is not None and len(std) == len(simples),
        "residues_independent": False,
        "structure_constants_match": False,
        "pairs_checked": 0,
    }
    if std is None:
        return report
    pos = {m: i for i, m in enumerate(std)}
    residues = {lam: normal_form(q_poly(group, lam), gb, key) for lam in simples}
    rows = []
    for lam in simples:
        rows.append({pos[e]: c for e, c in residues[lam].terms.items()})
    report["residues_independent"] = _fraction_rank(rows) == len(simples)
    checked = 0
    ok = True
    for lam in simples:
        for mu in simples:
            lhs = normal_form(residues[lam] * residues[mu], gb, key)
            rhs = Poly.zero(lhs.nvars)
            for nu, m in fuse_kw(group, k, lam, mu).items():
                rhs = rhs + m * residues[nu]
            checked += 1
            if lhs != rhs:
                ok = False
    report["structure_constants_match"] = ok
    report["pairs_checked"] = checked
    return report


def generation_identities(k: int) -> list[tuple[str, bool]]:
    """The explicit identities behind the two-generator presentation of
    the A2 ideal: the whole level-(k+1) shell lies in the ideal spanned by
    the two axis generators, via telescoping with s and t multiples."""
    s = Poly.variable(0, 2)
    t = Poly.variable(1, 2)

    def P(a, b):
        if a < 0 or b < 0:
            return Poly.zero(2)
        return p_poly_sector("a2", (a, b))

    out = []
    out.append((
        "axis-step-t",
        P(k + 2, 0) == P(k + 1, 0) - t * P(k, 1),
    ))
    out.append((
        "axis-step-s",
        P(0, k + 1) == P(1, k) - s * P(2, k - 1),
    ))
    for j in range(k):
        lhs = t * P(j, k + 1 - j)
        rhs = P(j + 1, k - j) - P(j + 2, k - j - 1) + s * P(j + 3, k - j - 2)
        out.append((f"shell-descent-{j}", lhs == rhs))
    return out


def verify_lemma_generation(k: int, order: str = "grevlex") -> dict:
    """Mutual inclusion of the two-generator ideal and the full
    level-(k+1) shell ideal for A2, plus the telescoping identities."""
    key = MONOMIAL_ORDERS[order]
    two = [p_poly_sector("a2", (k + 1, 0)), p_poly_sector("a2", (k + 2, 0))]
    shell = [p_poly_sector("a2", (j, k + 1 - j)) for j in range(k + 2)]
    gb_two = buchberger(two, order)
    gb_shell = buchberger(shell, order)
    ids = generation_identities(k)
    return {
        "level": k,
        "shell_in_two": all(is_member(p, gb_two, order) for p in shell),
        "two_in_shell": all(is_member(p, gb_shell, order) for p in two),
        "bases_equal": gb_two == gb_shell,
        "identities": ids,
        "identities_hold": all(ok for _, ok in ids),
    }


def fusion_variety_check(group, k: int, tol: float = 1e-7) -> bool:
    """Numeric dual of the ideal computation: the character points carved
    out by the Verlinde eigenvalues annihilate every ideal generator."""
    gens = fusion_ideal(group, k)
    for sigma in enumerate_simples(group, k):
        point = list(character_point(group, k, sigma))
        for g in gens:
            if abs(g.evaluate(point)) > tol:
                return False
    return True
