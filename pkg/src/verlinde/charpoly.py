"""Character polynomials of the small-rank groups and their substituted forms.

Every irreducible character of Rep(G) is a polynomial Q_lam in the
fundamental characters x (and y for rank 2); Q_lam is built here by a
classical-fusion recursion.  Dividing Q_lam by its leading monomial and
substituting the group's distinguished degree-2 variable change turns it
into a polynomial P_lam in two new variables (s, t), the form in which the
level-k quotient presentations are stated.

The substitutions, one per group:

    A1:  t = 1/x^2               divisor x^lam
    A2:  s = x/y^2, t = y/x^2    divisor x^l1 y^l2
    C2:  s = 1/y,   t = x^2/y^2  divisor y^(l1+l2)
    G2:  s = 1/x,   t = y/x^2    divisor x^(l1+2*l2)

Expressibility of a Laurent monomial in (s, t) is decided mechanically
from the substitution matrix (integer solvability plus sign constraints).
For C2 the image lattice has index 2, so weights with odd first label are
not expressible as stated; dividing out one extra power of x fixes this
(see `p_poly_sector`), mirroring the two-class bookkeeping that the A2
K-theory machinery uses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import mpmath as mp

from .cartan import GROUPS, Weight, classical_tensor, level, root_system
from .poly import Poly


class InexpressibleMonomial(ValueError):
    """A Laurent monomial has no preimage under the (s, t) substitution."""

    def __init__(self, group: str, exponent: tuple):
        self.group = group
        self.exponent = tuple(exponent)
        super().__init__(
            f"monomial with exponent {self.exponent} is not a polynomial "
            f"in (s, t) for group {group}"
        )


@dataclass(frozen=True)
class Substitution:
    """Variable-change data: columns of `matrix` are the xy-exponent
    vectors of s and t; `divisor(lam)` is the leading-monomial exponent
    divided out of Q_lam before substituting."""

    group: str
    xy_names: tuple[str, ...]
    st_names: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def solve(self, exponent: tuple[int, ...]) -> tuple[int, ...]:
        """Exponents (k, l) with s^k t^l = the xy-monomial, or raise."""
        m = self.matrix
        if len(self.st_names) == 1:
            (a,) = exponent
            q, r = divmod(a, m[0][0])
            if r != 0 or q < 0:
                raise InexpressibleMonomial(self.group, exponent)
            return (q,)
        a, b = exponent
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        k_num = m[1][1] * a - m[0][1] * b
        l_num = -m[1][0] * a + m[0][0] * b
        k, kr = divmod(k_num, det)
        l, lr = divmod(l_num, det)
        if kr or lr or k < 0 or l < 0:
            raise InexpressibleMonomial(self.group, exponent)
        return (k, l)

    def unsolve(self, st_exponent: tuple[int, ...]) -> tuple[int, ...]:
        """xy-exponent of the st-monomial (the easy direction)."""
        m = self.matrix
        return tuple(
            sum(m[i][j] * st_exponent[j] for j in range(len(st_exponent)))
            for i in range(len(m))
        )


SUBSTITUTIONS: dict[str, Substitution] = {
    "a1": Substitution("a1", ("x",), ("t",), ((-2,),)),
    "a2": Substitution("a2", ("x", "y"), ("s", "t"), ((1, -2), (-2, 1))),
    "c2": Substitution("c2", ("x", "y"), ("s", "t"), ((0, 2), (-1, -2))),
    "g2": Substitution("g2", ("x", "y"), ("s", "t"), ((-1, -2), (0, 1))),
}


def substitution(group) -> Substitution:
    return SUBSTITUTIONS[root_system(group).name]


def divisor_exponent(group, lam) -> tuple[int, ...]:
    """Leading-monomial exponent divided out of Q_lam to form P_lam."""
    rs = root_system(group)
    lam = tuple(lam)
    if rs.name == "a1":
        return (lam[0],)
    if rs.name == "a2":
        return lam
    if rs.name == "c2":
        return (0, lam[0] + lam[1])
    return (lam[0] + 2 * lam[1], 0)


def sector(group, lam) -> int:
    """Weight-lattice class of lam modulo the root lattice.

    0 means the weight lies in the sublattice on which the (s, t)
    substitution is onto; the class group orders are 2 (A1), 3 (A2),
    2 (C2), 1 (G2).
    """
    rs = root_system(group)
    lam = tuple(lam)
    if rs.name == "a1":
        return lam[0] % 2
    if rs.name == "a2":
        return (lam[0] - lam[1]) % 3
    if rs.name == "c2":
        return lam[0] % 2
    return 0


# ---------------------------------------------------------------------------
# Q polynomials

_Q_CACHE: dict[str, dict[Weight, Poly]] = {g: {} for g in GROUPS}
_Q_DONE_LEVEL: dict[str, int] = {g: -1 for g in GROUPS}

# Within a level, dependencies of the defining recursion must be computed
# first.  For C2 the second-variable recursion at (0, m) consumes (2, m-2),
# so larger first labels go first; for G2 the first-variable recursion at
# lam consumes (lam1 - 2, lam2 + 1), so smaller first labels go first.
# A2 and A1 have no same-level dependencies at all.  The builder asserts
# precedence at runtime, so a wrong key fails loudly, not wrongly.
_WITHIN_LEVEL_KEY = {
    "a1": lambda lam: 0,
    "a2": lambda lam: -lam[0],
    "c2": lambda lam: -lam[0],
    "g2": lambda lam: lam[0],
}


def weights_of_level(group, lvl: int) -> list[Weight]:
    rs = root_system(group)
    if rs.rank == 1:
        return [(lvl,)]
    a2 = rs.colabels[1]
    out = []
    for l2 in range(lvl // a2 + 1):
        rem = lvl - a2 * l2
        out.append((rem, l2))
    return sorted(out)


def _extend_q_table(name: str, target_level: int) -> None:
    rs = GROUPS[name]
    cache = _Q_CACHE[name]
    for lvl in range(_Q_DONE_LEVEL[name] + 1, target_level + 1):
        targets = sorted(weights_of_level(name, lvl), key=_WITHIN_LEVEL_KEY[name])
        for lam in targets:
            if lvl == 0:
                cache[lam] = Poly.constant(1, rs.rank)
                continue
            j = 0 if lam[0] >= 1 else 1
            e_j = tuple(1 if i == j else 0 for i in range(rs.rank))
            mu = tuple(a - b for a, b in zip(lam, e_j))
            tensor = classical_tensor(rs, mu, e_j)
            if tensor.get(lam) != 1:
                raise AssertionError(f"recursion top multiplicity at {lam} is not 1")
            acc = Poly.variable(j, rs.rank) * cache[mu]
            for nu, m in tensor.items():
                if nu == lam:
                    continue
                if nu not in cache:
                    raise AssertionError(
                        f"within-level order broken for {name}: {lam} needs {nu}"
                    )
                acc = acc - m * cache[nu]
            cache[lam] = acc
    _Q_DONE_LEVEL[name] = max(_Q_DONE_LEVEL[name], target_level)


def q_poly(group, lam) -> Poly:
    """Character of the irrep lam as a polynomial in the fundamental
    characters (variable j is the character of the j-th fundamental)."""
    rs = root_system(group)
    lam = tuple(int(v) for v in lam)
    if len(lam) != rs.rank or any(v < 0 for v in lam):
        raise ValueError(f"{lam} is not a dominant weight of {rs.name}")
    lvl = level(rs, lam)
    if _Q_DONE_LEVEL[rs.name] < lvl:
        _extend_q_table(rs.name, lvl)
    return _Q_CACHE[rs.name][lam]


# ---------------------------------------------------------------------------
# the substitution and the P polynomials

def laurent_to_st(group, laurent: Poly) -> Poly:
    """Rewrite a Laurent polynomial in the fundamental characters as an
    ordinary polynomial in (s, t); raises InexpressibleMonomial if some
    monomial has no preimage (integer solvability + sign constraints)."""
    sub = substitution(group)
    out: dict[tuple, object] = {}
    for e, c in laurent.terms.items():
        st = sub.solve(e)
        out[st] = out.get(st, 0) + c
    return Poly(out, len(sub.st_names))


def st_to_laurent(group, p: Poly) -> Poly:
    """Inverse direction: substitute s and t by their xy-monomials."""
    sub = substitution(group)
    out: dict[tuple, object] = {}
    for e, c in p.terms.items():
        xy = sub.unsolve(e)
        out[xy] = out.get(xy, 0) + c
    return Poly(out, len(sub.xy_names))


def p_poly(group, lam) -> Poly:
    """The substituted character: Q_lam over its leading monomial, in (s, t).

    For C2 weights with odd first label the image is not a polynomial in
    (s, t) and InexpressibleMonomial propagates; such weights live in the
    odd lattice class, see `p_poly_sector`.
    """
    q = q_poly(group, lam)
    div = divisor_exponent(group, lam)
    shifted = q.shift(tuple(-d for d in div))
    return laurent_to_st(group, shifted)


def p_poly_sector(group, lam) -> Poly:
    """Sector-normalized substituted character.

    Equal to p_poly for weights in the principal lattice class.  For C2
    weights of odd class, one power of x is moved from the divisor's y-part
    so the quotient lands in Z[s, t]; formally P_lam = sqrt(t) times the
    returned polynomial.  Used by the level-k quotient ideals, whose odd
    generators enter in this normalized form.
    """
    rs = root_system(group)
    if rs.name != "c2" or sector(group, lam) == 0:
        return p_poly(group, lam)
    q = q_poly(group, lam)
    lvl = level(group, lam)
    shifted = q.shift((-1, -(lvl - 1)))
    return laurent_to_st(group, shifted)


# ---------------------------------------------------------------------------
# identities from the quotient-presentation machinery

def p_recursion_check(group, lam) -> bool:
    """Defining recursions of the substituted polynomials hold exactly.

    A1: P_(l+1) = P_l - t P_(l-1).  A2 (first label >= 1):
    P_lam = P_(lam-e1) - st P_(lam-e1-e2) - t P_(lam-2e1+e2), plus the
    symmetric second-label variant.
    """
    rs = root_system(group)
    lam = tuple(lam)

    def P(v) -> Poly:
        if any(x < 0 for x in v):
            return Poly.zero(len(substitution(group).st_names))
        return p_poly(group, v)

    if rs.name == "a1":
        (l,) = lam
        if l < 1:
            return True
        t = Poly.variable(0, 1)
        return P((l + 1,)) == P((l,)) - t * P((l - 1,))
    if rs.name != "a2":
        raise ValueError("recursion check is defined for a1 and a2")
    s = Poly.variable(0, 2)
    t = Poly.variable(1, 2)
    if lam[0] >= 1:
        lhs = P((lam[0] - 1, lam[1])) - s * t * P((lam[0] - 1, lam[1] - 1)) - t * P((lam[0] - 2, lam[1] + 1))
        if P(lam) != lhs:
            return False
    if lam[1] >= 1:
        lhs = P((lam[0], lam[1] - 1)) - s * t * P((lam[0] - 1, lam[1] - 1)) - s * P((lam[0] + 1, lam[1] - 2))
        if P(lam) != lhs:
            return False
    return True


def lemma6_support_check(lam) -> bool:
    """A2 support bounds: Q_lam = x^l1 y^l2 + lower terms, where every
    lower exponent pair (n1, n2) satisfies n1+2n2 <= l1+2l2,
    2n1+n2 <= 2l1+l2, n1+n2 < l1+l2 and n1-n2 = l1-l2 (mod 3)."""
    lam = tuple(lam)
    q = q_poly("a2", lam)
    if q.coeff(lam) != 1:
        return False
    for (n1, n2), c in q.terms.items():
        if (n1, n2) == lam:
            continue
        if n1 + 2 * n2 > lam[0] + 2 * lam[1]:
            return False
        if 2 * n1 + n2 > 2 * lam[0] + lam[1]:
            return False
        if n1 + n2 >= lam[0] + lam[1]:
            return False
        if (n1 - n2) % 3 != (lam[0] - lam[1]) % 3:
            return False
    return True


def lemma_n_check(lam) -> bool:
    """Specializing the A2 substituted polynomial to one axis recovers the
    A1 one: P_lam(0, t) = P_l1(t) and P_lam(s, 0) = P_l2(s)."""
    lam = tuple(lam)
    p = p_poly("a2", lam)
    at_s0 = Poly({(e[1],): c for e, c in p.terms.items() if e[0] == 0}, 1)
    at_t0 = Poly({(e[0],): c for e, c in p.terms.items() if e[1] == 0}, 1)
    return at_s0 == p_poly("a1", (lam[0],)) and at_t0 == p_poly("a1", (lam[1],))


# -- the split decomposition -------------------------------------------------

def _one_var(d: dict[int, object]) -> Poly:
    return Poly({(k,): v for k, v in d.items()}, 1)


_L9_CACHE: dict[tuple[Weight, str | None], dict[int, tuple[dict, dict]]] = {}


def _l9(lam: Weight, variant: str | None) -> dict[int, tuple[dict, dict]]:
    """Decomposition table j -> (A_j, B_j) as {degree: coeff} dicts, with
    P_lam(s,t) = sum_j (st)^j (A_j(s) + B_j(t)); see lemma9_decompose."""
    key = (lam, variant)
    if key in _L9_CACHE:
        return _L9_CACHE[key]
    l1, l2 = lam
    if variant == "i" and l2 % 2:
        raise ValueError("variant (i) needs an even second label")
    if variant == "ii" and l1 % 2:
        raise ValueError("variant (ii) needs an even first label")

    def sub(v, var) -> dict[int, tuple[dict, dict]]:
        if v[0] < 0 or v[1] < 0:
            return {}
        return _l9(v, var)

    if lam == (0, 0):
        out = {0: ({}, {0: 1})} if variant == "ii" else {0: ({0: 1}, {})}
    elif l2 == 0:
        swapped_variant = {None: None, "i": "ii", "ii": "i"}[variant]
        inner = _l9((l2, l1), swapped_variant)
        out = {j: (dict(B), dict(A)) for j, (A, B) in inner.items()}
    else:
        cd = sub((l1, l2 - 1), "ii" if variant == "ii" else None)
        ef = sub((l1 - 1, l2 - 1), None)
        gh = sub((l1 + 1, l2 - 2), "i" if variant == "i" else None)
        jmax = max([0, *cd, *(j + 1 for j in ef), *gh, *(j + 1 for j in gh)])
        out = {}
        for j in range(jmax + 1):
            C, D = cd.get(j, ({}, {}))
            E, F = ef.get(j - 1, ({}, {}))
            G, H = gh.get(j, ({}, {}))
            _, Hprev = gh.get(j - 1, ({}, {}))
            A: dict[int, object] = {}
            B: dict[int, object] = {}
            for d, c in C.items():
                A[d] = A.get(d, 0) + c
            for d, c in E.items():
                A[d] = A.get(d, 0) - c
            for d, c in G.items():
                A[d + 1] = A.get(d + 1, 0) - c
            if H.get(0):
                A[1] = A.get(1, 0) - H[0]
            for d, c in D.items():
                B[d] = B.get(d, 0) + c
            for d, c in F.items():
                B[d] = B.get(d, 0) - c
            for d, c in Hprev.items():
                if d > 0:
                    B[d - 1] = B.get(d - 1, 0) - c
            out[j] = (A, B)
        if variant == "i":
            # move the constants of B into A so B_j(0) = 0
            for j, (A, B) in out.items():
                c = B.pop(0, 0)
                if c:
                    A[0] = A.get(0, 0) + c
        elif variant == "ii" and l1 >= 2:
            for j, (A, B) in out.items():
                c = A.pop(0, 0)
                if c:
                    B[0] = B.get(0, 0) + c
    cleaned = {}
    for j, (A, B) in out.items():
        A = {d: c for d, c in A.items() if c}
        B = {d: c for d, c in B.items() if c}
        if A or B:
            cleaned[j] = (A, B)
    _L9_CACHE[key] = cleaned
    return cleaned


def lemma9_decompose(lam, variant: str | None = None) -> dict[int, tuple[Poly, Poly]]:
    """Split the A2 substituted polynomial into single-variable slices:

        P_lam(s, t) = sum_j (st)^j (A_j(s) + B_j(t)),

    with deg A_j <= floor(l2/2) and deg B_j <= floor(l1/2).  variant "i"
    (even second label) additionally forces B_j(0) = 0 and drops the A-degree
    bound by one for j > 0; variant "ii" (even first label) is the mirror
    image.  The construction follows the inductive proof of the bound, so
    the result is a certificate, not a search.
    """
    lam = tuple(lam)
    table = _l9(lam, variant)
    return {j: (_one_var(A), _one_var(B)) for j, (A, B) in table.items()}


def lemma9_verify(lam, variant: str | None = None) -> bool:
    """Check the decomposition reassembles P_lam and meets every degree
    and vanishing condition it advertises."""
    lam = tuple(lam)
    dec = lemma9_decompose(lam, variant)
    acc = Poly.zero(2)
    for j, (A, B) in dec.items():
        slice2 = Poly({(d + j, j): c for (d,), c in A.terms.items()}, 2)
        slice2 = slice2 + Poly({(j, d + j): c for (d,), c in B.terms.items()}, 2)
        acc = acc + slice2
    if acc != p_poly("a2", lam):
        return False
    half1, half2 = lam[0] // 2, lam[1] // 2
    for j, (A, B) in dec.items():
        dega = max((d for (d,) in A.terms), default=-1)
        degb = max((d for (d,) in B.terms), default=-1)
        if dega > half2 or degb > half1:
            return False
        if variant == "i":
            if B.coeff((0,)) != 0 or (j > 0 and dega > half2 - 1):
                return False
        if variant == "ii":
            if A.coeff((0,)) != 0 or (j > 0 and degb > half1 - 1):
                return False
    return True


# ---------------------------------------------------------------------------
# numeric identities

def weyl_character_identity_check(
    lam, samples: int = 20, seed: int = 0, tol: float = 1e-9, guard: float = 1e-6
) -> bool:
    """Sample the closed-form A2 character quotient on the torus.

    With x = z1 + 1/z2 + z2/z1 and y the conjugate expression, Q_lam(x, y)
    must equal an explicit ratio of six-term alternating sums.  Points where
    the denominator is below the guard are resampled (the identity is only
    stated off the vanishing locus).  The samples are evaluated in extended
    precision so that rounding near the guard stays far below tol even for
    the largest tabulated weights.
    """
    n, m = lam[0] + 1, lam[1] + 1
    q = q_poly("a2", tuple(lam))
    rng = random.Random(seed)
    done = 0
    attempts = 0
    with mp.workprec(100):
        while done < samples:
            attempts += 1
            if attempts > 50 * samples:
                raise RuntimeError("resampling guard tripped too often")
            z1 = mp.expjpi(2 * mp.mpf(rng.random()))
            z2 = mp.expjpi(2 * mp.mpf(rng.random()))
            denom = (
                z1 * z2 - 1 / (z1 * z2) + z1 / z2**2 - z1**2 / z2
                + z2 / z1**2 - z2**2 / z1
            )
            if abs(denom) < guard:
                continue
            numer = (
                z1**n * z2**m - z1**-m * z2**-n + z1**m * z2 ** -(n + m)
                - z1 ** (n + m) * z2**-m + z1 ** -(n + m) * z2**n - z1**-n * z2 ** (n + m)
            )
            x = z1 + 1 / z2 + z2 / z1
            y = 1 / z1 + z2 + z1 / z2
            if abs(q.evaluate([x, y]) - numer / denom) > tol:
                return False
            done += 1
    return True


def character_region_point(a: float, b: float) -> tuple[float, float]:
    """Point of the region where all A2 characters are positive."""
    return (a + 1 / b + b / a, 1 / a + b + a / b)


def region_positivity_check(nsamples: int = 200, max_level: int = 10, seed: int = 0) -> bool:
    """All Q_lam with level <= max_level are strictly positive on sampled
    points of the positivity region."""
    rng = random.Random(seed)
    lams = [
        (i, j)
        for i in range(max_level + 1)
        for j in range(max_level + 1)
        if i + j <= max_level
    ]
    for _ in range(nsamples):
        a = rng.uniform(0.2, 5.0)
        b = rng.uniform(0.2, 5.0)
        x, y = character_region_point(a, b)
        for lam in lams:
            if q_poly("a2", lam).evaluate([x, y]) <= 0:
                return False
    return True
