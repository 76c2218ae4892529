"""Ordered K-theory of the AF towers attached to a fusion object.

For a based ring with a distinguished object pi, two towers are studied.
The endomorphism tower of alternating tensor powers (1, pi, sigma,
sigma (x) pi, sigma^2, ...) with sigma = dual(pi) (x) pi has K_0 a
polynomial quotient in the substituted character variables; the
stationary tower that multiplies by sigma at every step has K_0 the
fusion ring with sigma inverted.  Everything here is exact except the
final positivity evaluations, which carry an explicit numeric margin.
"""

from __future__ import annotations

import csv
import io
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .cartan import level, root_system
from .charpoly import p_poly, q_poly, sector, st_to_laurent, substitution
from .exactmat import DEFAULT_SEED, certificate_primes, exact_det, exact_rank
from .fusion import (
    ExplicitFusion,
    WZWFusion,
    character_point,
    enumerate_simples,
    pointed_cyclic,
    rep_s3,
)
from .ideals import buchberger, ik_ideal, normal_form, standard_monomials
from .poly import MONOMIAL_ORDERS, Poly

# The AF construction is driven by one fundamental object per group; its
# square against the dual is the step element sigma.
DISTINGUISHED = {"a1": (1,), "a2": (1, 0), "c2": (0, 1), "g2": (1, 0)}


def fusion_category(group, k: int | None = None):
    """Accept a WZWFusion/ExplicitFusion instance or a (group, k) pair."""
    if isinstance(group, (WZWFusion, ExplicitFusion)):
        return group
    if k is None:
        raise ValueError("a level is required with a group name")
    return WZWFusion(group, k)


def as_element(x) -> dict:
    """Normalize a label or a coefficient dict to a clean coefficient dict."""
    if isinstance(x, dict):
        return {a: int(c) for a, c in x.items() if c}
    return {x: 1}


# ---------------------------------------------------------------------------
# supports of tensor powers

def supports(cat, sigma, n: int) -> tuple:
    """Labels with positive coefficient in sigma^n, sorted.

    Coefficients of non-negative elements never cancel, so only the label
    sets are propagated.  A fixed point of the one-step map persists, which
    caps the loop for stabilized inputs.
    """
    elem = as_element(sigma)
    if any(c < 0 for c in elem.values()):
        raise ValueError("supports are defined for non-negative elements")
    cur = {cat.unit}
    step: dict = {}
    for _ in range(n):
        nxt: set = set()
        for lam in cur:
            if lam not in step:
                acc: set = set()
                for a in elem:
                    acc.update(cat.fuse(a, lam))
                step[lam] = acc
            nxt |= step[lam]
        if nxt == cur:
            break
        cur = nxt
    return tuple(sorted(cur))


def support_stabilization(cat, sigma) -> tuple[int, tuple]:
    """Smallest n with supports(sigma, n) = supports(sigma, n+1), and that
    stable support.  When the unit divides sigma the supports grow
    monotonically, so the fixed point is reached within |labels| steps."""
    n = 0
    cur = supports(cat, sigma, 0)
    while True:
        nxt = supports(cat, sigma, n + 1)
        if set(nxt) == set(cur):
            return n, cur
        cur = nxt
        n += 1
        if n > len(cat.labels) + 1:
            raise AssertionError("supports did not stabilize within |labels| steps")


def is_complete(cat, sigma) -> bool:
    """Whether the powers of sigma eventually support every simple."""
    return set(support_stabilization(cat, sigma)[1]) == set(cat.labels)


# ---------------------------------------------------------------------------
# the (s, t) monomials attached to weights at a fixed denominator

def monomial_box(n: int, twist: int = 0) -> list[tuple[int, int]]:
    """Weights lam for which x^(lam1 - twist - n) y^(lam2 - n) is expressible
    in the two-variable substitution (twist in {0, 1}).  The congruence and
    the two inequalities are exactly the solvability conditions."""
    if twist not in (0, 1):
        raise ValueError("twist must be 0 or 1")
    out = []
    for a in range(3 * n // 2 + 1 + twist):
        for b in range(3 * n // 2 + 2):
            sa = a - twist
            if (sa - b) % 3 == 0 and sa + 2 * b <= 3 * n and 2 * sa + b <= 3 * n:
                out.append((a, b))
    return sorted(out)


def scaling_monomial(lam, n: int, twist: int = 0) -> Poly:
    """The (s, t) monomial carrying pi_lam into the quotient presentation at
    denominator sigma^n; raises InexpressibleMonomial outside monomial_box."""
    sub = substitution("a2")
    exps = sub.solve((lam[0] - twist - n, lam[1] - n))
    return Poly({exps: 1}, 2)


_DENOMINATOR_STEP = {"a1": (2,), "a2": (1, 1)}


def _psi_monomial(name: str, lam, n: int, twist: int = 0) -> Poly:
    """Group-generic form of scaling_monomial for the two groups whose
    quotient map is realized explicitly."""
    step = _DENOMINATOR_STEP[name]
    exps = list(lam)
    exps[0] -= twist
    exps = tuple(e - n * s for e, s in zip(exps, step))
    sub = substitution(name)
    return Poly({sub.solve(exps): 1}, len(step))


# ---------------------------------------------------------------------------
# exact linear algebra helpers (plain Python integers)

def _mat_mul_mod(a, b, p):
    n, m, w = len(a), len(b[0]), len(b)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(w):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(m):
                    oi[j] = (oi[j] + v * bt[j]) % p
    return out


def _mat_pow_mod(mat, power: int, p):
    n = len(mat)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [[x % p for x in row] for row in mat]
    e = power
    while e:
        if e & 1:
            result = _mat_mul_mod(result, base, p)
        base = _mat_mul_mod(base, base, p)
        e >>= 1
    return result


def _stable_rank(mat, seed: int = DEFAULT_SEED) -> int:
    """Rank of mat^n for n = dim, i.e. the rank of the eventual image of the
    iterated map; certified over three large primes (a modular rank can only
    undercount, so the max is the certificate)."""
    n = len(mat)
    if n == 0:
        return 0
    best = 0
    for p in certificate_primes(seed):
        powered = _mat_pow_mod(mat, n, p)
        best = max(best, exact_rank(powered, n_cols=n, primes=(p,)).rank)
    return best


def _nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of {x : rows @ x = 0} by fraction-exact Gauss elimination."""
    if not rows:
        return []
    m, n = len(rows), len(rows[0])
    a = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -a[ri][fc]
        basis.append(vec)
    return basis


def _rational_rank(rows: list[list[Fraction]]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rows[0]) - len(_nullspace(rows))


def _transpose(rows):
    return [list(col) for col in zip(*rows)]


# ---------------------------------------------------------------------------
# the localization of the fusion ring at sigma

class LocalizedRing:
    """Fusion ring with a distinguished non-negative element inverted.

    Elements are fractions x/sigma^n compared by saturation: the kernel
    chain of the sigma multiplication matrix stabilizes within |labels|
    steps, so x/sigma^n = y/sigma^m exactly when sigma^N(sigma^m x -
    sigma^n y) = 0 at N = |labels|.
    """

    def __init__(self, cat, sigma):
        self.cat = cat
        self.sigma = as_element(sigma)
        if not self.sigma or any(c < 0 for c in self.sigma.values()):
            raise ValueError("sigma must be non-negative and nonzero")
        self.labels = list(cat.labels)
        self.saturation = len(self.labels)
        self._dims = {a: cat.quantum_dim(a) for a in self.labels}
        if sum(c * self._dims[a] for a, c in self.sigma.items()) <= 0:
            raise ValueError("sigma must have positive dimension")

    def element(self, coeffs, power: int = 0) -> "LocalizedElement":
        if power < 0:
            raise ValueError("denominator exponent must be non-negative")
        return LocalizedElement(self, as_element(coeffs), power)

    def zero(self) -> "LocalizedElement":
        return self.element({})

    def one(self) -> "LocalizedElement":
        return self.element({self.cat.unit: 1})

    def sigma_times(self, coeffs: dict, times: int = 1) -> dict:
        out = dict(coeffs)
        for _ in range(times):
            out = self.cat.product(self.sigma, out)
        return out

    def dim(self, coeffs: dict) -> float:
        return float(sum(c * self._dims[a] for a, c in coeffs.items()))


class LocalizedElement:
    """A fraction numerator/sigma^power in a LocalizedRing."""

    def __init__(self, ring: LocalizedRing, coeffs: dict, power: int):
        self.ring = ring
        self.coeffs = {a: c for a, c in coeffs.items() if c}
        self.power = power

    def _check(self, other):
        if self.ring is not other.ring:
            raise ValueError("elements live in different localizations")

    def __add__(self, other):
        self._check(other)
        m = max(self.power, other.power)
        a = self.ring.sigma_times(self.coeffs, m - self.power)
        b = self.ring.sigma_times(other.coeffs, m - other.power)
        for lam, c in b.items():
            a[lam] = a.get(lam, 0) + c
        return LocalizedElement(self.ring, a, m)

    def __neg__(self):
        return LocalizedElement(
            self.ring, {a: -c for a, c in self.coeffs.items()}, self.power
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        return LocalizedElement(
            self.ring,
            self.ring.cat.product(self.coeffs, other.coeffs),
            self.power + other.power,
        )

    def is_zero(self) -> bool:
        cur = self.coeffs
        if not cur:
            return True
        for _ in range(self.ring.saturation):
            cur = self.ring.cat.product(self.ring.sigma, cur)
            if not cur:
                return True
        return not cur

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def norm1(self) -> int:
        return sum(abs(c) for c in self.coeffs.values())

    def dim(self) -> float:
        denom = self.ring.dim(self.ring.sigma) ** self.power
        return self.ring.dim(self.coeffs) / denom

    def is_positive(self, margin: float = 1e-8):
        """True/False, or None when the dimension evaluation lands inside
        the numeric margin (never a silent guess)."""
        if self.is_zero():
            return True
        val = self.ring.dim(self.coeffs)
        cut = margin * (1 + self.norm1())
        if val > cut:
            return True
        if val < -cut:
            return False
        return None

    def __repr__(self):
        return f"LocalizedElement({self.coeffs!r}, power={self.power})"


def eventual_sign(ring: LocalizedRing, elem: LocalizedElement, max_steps: int = 60):
    """Sign of a class by iterating the sigma step on the numerator:
    +1 once all coefficients are non-negative (or the class dies), -1 in
    the mirrored case, None if undecided within max_steps.  Sound because
    coefficientwise positivity at any stage certifies positivity of the
    limit class."""
    cur = dict(elem.coeffs)
    for _ in range(max_steps + 1):
        if not cur:
            return 1
        vals = cur.values()
        if all(v >= 0 for v in vals):
            return 1
        if all(v <= 0 for v in vals):
            return -1
        cur = ring.cat.product(ring.sigma, cur)
    return None


# ---------------------------------------------------------------------------
# Bratteli diagrams

@dataclass
class BratteliDiagram:
    rule: str
    levels: list[tuple]
    matrices: list[list[list[int]]] = field(default_factory=list)

    def __post_init__(self):
        for m, mat in enumerate(self.matrices):
            if len(mat) != len(self.levels[m]):
                raise ValueError(f"matrix {m} rows do not match level {m}")
            if any(len(row) != len(self.levels[m + 1]) for row in mat):
                raise ValueError(f"matrix {m} columns do not match level {m + 1}")
            if any(x < 0 for row in mat for x in row):
                raise ValueError("inclusion multiplicities must be non-negative")

    def to_dot(self) -> str:
        out = [f'digraph bratteli {{\n  rankdir=TB;\n  label="{self.rule}";']
        for m, verts in enumerate(self.levels):
            names = " ".join(f'"L{m}_{_vertex_name(v)}"' for v in verts)
            out.append(f"  {{ rank=same {names} }}")
            for v in verts:
                out.append(f'  "L{m}_{_vertex_name(v)}" [label="{_vertex_name(v)}"];')
        for m, mat in enumerate(self.matrices):
            for i, src in enumerate(self.levels[m]):
                for j, tgt in enumerate(self.levels[m + 1]):
                    mult = mat[i][j]
                    if not mult:
                        continue
                    tag = f' [label="{mult}"]' if mult > 1 else ""
                    out.append(
                        f'  "L{m}_{_vertex_name(src)}" -> "L{m + 1}_{_vertex_name(tgt)}"{tag};'
                    )
        out.append("}")
        return "\n".join(out)


def _vertex_name(v) -> str:
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


def _step_matrix(cat, elem: dict, src_level, tgt_level) -> list[list[int]]:
    tgt_index = {v: j for j, v in enumerate(tgt_level)}
    rows = []
    for v in src_level:
        prod = cat.product(elem, {v: 1})
        if any(u not in tgt_index for u in prod):
            raise AssertionError("step leaves the declared vertex set")
        row = [0] * len(tgt_level)
        for u, m in prod.items():
            row[tgt_index[u]] = m
        rows.append(row)
    return rows


def bratteli(cat, pi, depth: int, rule: str = "alternating") -> BratteliDiagram:
    """Bratteli diagram of the requested tower, depth = number of steps.

    alternating: vertex sets are the supports of 1, pi, sigma, sigma*pi,
    sigma^2, ... with the pi- and dual(pi)-multiplication matrices taking
    turns.  uniform: supports of sigma^n with the sigma matrix at every
    step.  constant: the unit vertex followed by the full label set, the
    sigma matrix everywhere (only K_0-level data is contractual here, so
    multiplicities at level 0 are the sigma coefficients themselves).
    """
    pi_elem = as_element(pi)
    pibar_elem = {cat.dual_of(a): c for a, c in pi_elem.items()}
    sigma = cat.product(pibar_elem, pi_elem)
    rule = rule.lower()
    levels: list[tuple] = []
    steps: list[dict] = []
    if rule == "alternating":
        for m in range(depth + 1):
            n, odd = divmod(m, 2)
            supp = supports(cat, sigma, n)
            if odd:
                acc: set = set()
                for lam in supp:
                    acc.update(cat.product(pi_elem, {lam: 1}))
                supp = tuple(sorted(acc))
            levels.append(supp)
        steps = [pi_elem if m % 2 == 0 else pibar_elem for m in range(depth)]
    elif rule == "uniform":
        levels = [supports(cat, sigma, m) for m in range(depth + 1)]
        steps = [sigma] * depth
    elif rule == "constant":
        levels = [(cat.unit,)] + [tuple(cat.labels)] * depth
        steps = [sigma] * depth
    else:
        raise ValueError(f"unknown rule {rule!r}")
    matrices = [
        _step_matrix(cat, steps[m], levels[m], levels[m + 1]) for m in range(depth)
    ]
    return BratteliDiagram(rule=rule, levels=levels, matrices=matrices)


# ---------------------------------------------------------------------------
# rank of the limit K_0 groups

def localized_rank(cat, sigma, seed: int = DEFAULT_SEED) -> int:
    """Rank of the inductive-limit K_0 of the sigma tower: the stabilized
    rank of the step matrix restricted to the stabilized support."""
    _, stable = support_stabilization(cat, sigma)
    elem = as_element(sigma)
    mat = []
    for a in stable:
        prod = cat.product(elem, {a: 1})
        mat.append([prod.get(b, 0) for b in stable])
    return _stable_rank(mat, seed)


# ---------------------------------------------------------------------------
# the quotient map for A1/A2 and its verification

def verify_psi(k: int, n_max: int = 6, order: str = "grevlex") -> dict:
    """End-to-end check of the quotient map for the two-variable case.

    Verifies, for all n <= n_max: the support sets match the solvability
    boxes; the monomial identity m*P = Q/(x^n y^n) (and its twisted form)
    holds as an exact Laurent identity; the two commuting squares hold as
    normal-form identities mod the ideal; the axis monomials s^r, t^r are
    hit at denominator 2r; the denominator-shift rule is exact; the image
    span reaches the full quotient dimension; and domain kernel vectors
    are killed by a saturation power of sigma.
    """
    key = MONOMIAL_ORDERS[order]
    cat = WZWFusion("a2", k)
    pi, pibar = (1, 0), (0, 1)
    sigma = cat.fuse(pibar, pi)
    gb = buchberger(ik_ideal("a2", k), order)
    std = standard_monomials(gb, order)
    pos = {m: i for i, m in enumerate(std)}
    report: dict = {
        "group": "a2",
        "level": k,
        "n_max": n_max,
        "quotient_dimension": len(std),
    }

    def domain(n: int, twist: int) -> list:
        return [w for w in monomial_box(n, twist) if sum(w) <= k]

    def image_nf(lam, n: int, twist: int) -> Poly:
        m = scaling_monomial(lam, n, twist)
        return normal_form(m * p_poly("a2", lam), gb, key)

    # support sets against the closed-form boxes
    supports_ok = True
    for n in range(n_max + 1):
        if list(supports(cat, sigma, n)) != domain(n, 0):
            supports_ok = False
        twisted: set = set()
        for lam in supports(cat, sigma, n):
            twisted.update(cat.fuse(pi, lam))
        if sorted(twisted) != domain(n, 1):
            supports_ok = False
    report["supports_match_boxes"] = supports_ok

    # exact Laurent identity defining the monomials
    monomial_ok = True
    for n in range(n_max + 1):
        for twist in (0, 1):
            for lam in monomial_box(n, twist):
                lhs = st_to_laurent("a2", scaling_monomial(lam, n, twist) * p_poly("a2", lam))
                rhs = q_poly("a2", lam).shift((-n - twist, -n))
                if lhs != rhs:
                    monomial_ok = False
    report["monomial_identity"] = monomial_ok

    # the two commuting squares, as normal forms
    squares_ok = True
    for n in range(n_max + 1):
        for lam in domain(n, 0):
            rhs = Poly.zero(2)
            for nu, mult in cat.fuse(pi, lam).items():
                rhs = rhs + mult * image_nf(nu, n, 1)
            if image_nf(lam, n, 0) != normal_form(rhs, gb, key):
                squares_ok = False
        for lam in domain(n, 1):
            rhs = Poly.zero(2)
            for nu, mult in cat.fuse(pibar, lam).items():
                rhs = rhs + mult * image_nf(nu, n + 1, 0)
            if image_nf(lam, n, 1) != normal_form(rhs, gb, key):
                squares_ok = False
    report["squares_commute"] = squares_ok

    # axis monomials and the denominator-shift rule
    axis_ok = True
    for r in range(k // 3 + 1):
        if scaling_monomial((3 * r, 0), 2 * r) != Poly({(r, 0): 1}, 2):
            axis_ok = False
        if scaling_monomial((0, 3 * r), 2 * r) != Poly({(0, r): 1}, 2):
            axis_ok = False
    report["axis_monomials"] = axis_ok

    st = Poly({(1, 1): 1}, 2)
    shift_ok = scaling_monomial((0, 0), 1) == st
    for n1 in range(n_max):
        for n2 in range(n_max - n1 + 1):
            for lam in monomial_box(n1, 0):
                lhs = scaling_monomial(lam, n1 + n2)
                if lhs != st**n2 * scaling_monomial(lam, n1):
                    shift_ok = False
    report["denominator_shift"] = shift_ok

    # image dimension per n; surjectivity once stabilized
    ranks = []
    kernel_ok = True
    surjective_at = None
    for n in range(n_max + 1):
        dom = domain(n, 0)
        rows = []
        for lam in dom:
            nf = image_nf(lam, n, 0)
            rows.append([Fraction(nf.terms.get(m, 0)) for m in std])
        rank = _rational_rank(rows)
        ranks.append(rank)
        if surjective_at is None and rank == len(std):
            surjective_at = n
        for vec in _nullspace(_transpose(rows)):
            denom = 1
            for v in vec:
                denom = denom * v.denominator // gcd(denom, v.denominator)
            coeffs = {
                lam: int(v * denom) for lam, v in zip(dom, vec) if v
            }
            killed = dict(coeffs)
            for _ in range(len(cat.labels)):
                killed = cat.product(sigma, killed)
            if killed:
                kernel_ok = False
    report["image_ranks"] = ranks
    report["surjective_at"] = surjective_at
    report["kernel_saturated"] = kernel_ok
    report["passed"] = all(
        report[key]
        for key in (
            "supports_match_boxes",
            "monomial_identity",
            "squares_commute",
            "axis_monomials",
            "denominator_shift",
            "kernel_saturated",
        )
    ) and surjective_at is not None
    return report


def worked_identity_polys() -> dict[tuple, Poly]:
    """The two explicit degree-6 shell characters whose vanishing mod the
    level-5 ideal generates all pure powers of s and t."""
    s = Poly.variable(0, 2)
    t = Poly.variable(1, 2)
    one = Poly.constant(1, 2)
    st = s * t
    p24 = s * s - 3 * s + one - t + st * (2 * one + 3 * s) + st * st * (-2 * one - s)
    p42 = t * t - 3 * t + one - s + st * (2 * one + 3 * t) + st * st * (-2 * one - t)
    return {(2, 4): p24, (4, 2): p42}


# ---------------------------------------------------------------------------
# quotient theorems per group

def evaluation_point(group, k: int) -> tuple[float, ...]:
    """The substituted image of the positive character point, i.e. the
    coordinates at which every level-k ideal generator vanishes and whose
    sign functional cuts out the positive cone."""
    rs = root_system(group)
    pf = [z.real for z in character_point(rs.name, k, (0,) * rs.rank)]
    sub = substitution(rs.name)
    point = []
    for j in range(len(sub.st_names)):
        val = 1.0
        for i, d in enumerate(pf):
            val *= d ** sub.matrix[i][j]
        point.append(val)
    return tuple(point)


def verify_quotient_theorem(
    group,
    k: int,
    order: str = "grevlex",
    cone_samples: int = 100,
    seed: int = 3,
    tol: float = 1e-7,
) -> dict:
    """Rank and cone agreement between the polynomial quotient presentation
    and the K_0 of the corresponding tower.

    Exact part: standard-monomial count of the substituted ideal equals the
    stabilized rank of the sigma step matrix on the stabilized support.
    Numeric part: the distinguished evaluation point annihilates every
    generator within tol, and (for the two groups whose quotient map is
    realized explicitly) the Perron-Frobenius sign of sampled lifts agrees
    with the sign of their image polynomials at that point.
    """
    rs = root_system(group)
    name = rs.name
    key = MONOMIAL_ORDERS[order]
    cat = WZWFusion(name, k)
    pi = DISTINGUISHED[name]
    sigma = cat.fuse(cat.dual_of(pi), pi)
    gb = buchberger(ik_ideal(name, k), order)
    std = standard_monomials(gb, order)
    k0_rank = localized_rank(cat, sigma)
    point = evaluation_point(name, k)
    residual = max(abs(g.evaluate(list(point))) for g in ik_ideal(name, k))
    n0, stable = support_stabilization(cat, sigma)
    block = {lam for lam in cat.labels if sector(name, lam) == 0}
    report = {
        "group": name,
        "level": k,
        "quotient_dimension": len(std),
        "k0_rank": k0_rank,
        "rank_matches": len(std) == k0_rank,
        # when sigma fails to reach its whole graded block (c2 at k=1,
        # where sigma is the unit) the tower sees a proper subcategory and
        # the rank comparison is vacuous rather than a defect
        "sigma_spans_block": set(stable) == block,
        "evaluation_point": point,
        "evaluation_residual": residual,
        "evaluation_ok": residual < tol,
        "cone_checked": 0,
        "cone_ok": None,
    }
    if name not in _DENOMINATOR_STEP or not cone_samples:
        report["passed"] = report["rank_matches"] and report["evaluation_ok"]
        return report

    n = max(n0, k + 1)
    images = {}
    for lam in stable:
        poly = _psi_monomial(name, lam, n) * p_poly(name, lam)
        images[lam] = normal_form(poly, gb, key)
    dims = {lam: cat.quantum_dim(lam) for lam in stable}
    rng = random.Random(seed)
    checked = 0
    agree = True
    for _ in range(cone_samples):
        vec = {lam: rng.randint(-3, 3) for lam in stable}
        dval = sum(c * dims[lam] for lam, c in vec.items())
        pval = sum(
            c * images[lam].evaluate(list(point)) for lam, c in vec.items()
        ).real
        if abs(dval) <= 1e-6 or abs(pval) <= 1e-9:
            continue
        checked += 1
        if (dval > 0) != (pval > 0):
            agree = False
    report["cone_checked"] = checked
    report["cone_ok"] = agree
    report["passed"] = report["rank_matches"] and report["evaluation_ok"] and agree
    return report


# ---------------------------------------------------------------------------
# the warm-up example: the 3-object representation ring

def s3_example_check(samples: int = 100, seed: int = 11, margin: float = 1e-8) -> dict:
    """The AF tower over the symmetric-group ring: its K_0 is the quadratic
    quotient Z[t]/(1 - t - 2t^2) with the two-dimensional object going to
    2t + 1, positivity by sign at t = 1/2."""
    cat = rep_s3()
    ring = LocalizedRing(cat, cat.fuse("p", "p"))
    modulus = Poly({(0,): 1, (1,): -1, (2,): -2}, 1)
    images = {
        "1": Poly.constant(1, 1),
        "s": Poly.constant(1, 1),
        "p": Poly({(0,): 1, (1,): 2}, 1),
    }

    def reduce(poly: Poly) -> Poly:
        return normal_form(poly, [modulus])

    hom_ok = True
    for a in cat.labels:
        for b in cat.labels:
            lhs = reduce(images[a] * images[b])
            rhs = Poly.zero(1)
            for c, mult in cat.fuse(a, b).items():
                rhs = rhs + mult * images[c]
            if lhs != reduce(rhs):
                hom_ok = False

    t = Poly.variable(0, 1)
    inverse_ok = reduce(images["p"] * t) == Poly.constant(1, 1)

    # the kernel of the presentation is exactly the saturated zero classes
    kernel_ok = ring.element({"1": 1, "s": -1}).is_zero() and reduce(
        images["1"] - images["s"]
    ).is_zero()

    rng = random.Random(seed)
    cone_ok = True
    checked = 0
    for _ in range(samples):
        coeffs = {a: rng.randint(-6, 6) for a in cat.labels}
        elem = ring.element(coeffs)
        poly = Poly.zero(1)
        for a, c in coeffs.items():
            poly = poly + c * images[a]
        val = reduce(poly).evaluate([Fraction(1, 2)])
        cut = margin * (1 + elem.norm1())
        sign = eventual_sign(ring, elem)
        checked += 1
        if val > cut:
            ok = sign == 1
        elif val < -cut:
            ok = sign == -1
        else:
            # val is exact, so the margin case is dimension exactly zero:
            # positive only as the zero class, undecidable by iteration
            # otherwise (the subdominant eigendirection has mixed signs)
            ok = (sign == 1) if elem.is_zero() else (sign is None)
        if not ok:
            cone_ok = False
    return {
        "hom_ok": hom_ok,
        "inverse_ok": inverse_ok,
        "kernel_ok": kernel_ok,
        "cone_checked": checked,
        "cone_ok": cone_ok,
        "passed": hom_ok and inverse_ok and kernel_ok and cone_ok,
    }


# ---------------------------------------------------------------------------
# alternating-sum identities in the even-level rings

def verlinde_identities_check(n_max: int = 20) -> dict:
    """Two exact identities in the level-2n rank-one fusion rings: the
    alternating sum of squared simples telescopes to the alternating sum of
    even simples, and the all-ones element with doubled non-unit entries
    has the sign-alternated element as inverse."""
    even_ok = True
    inverse_ok = True
    for n in range(1, n_max + 1):
        k = 2 * n
        cat = WZWFusion("a1", k)
        acc: dict = {}
        for j in range(k + 1):
            sq = cat.fuse((j,), (j,))
            s = -1 if j % 2 else 1
            for lam, c in sq.items():
                v = acc.get(lam, 0) + s * c
                if v:
                    acc[lam] = v
                else:
                    acc.pop(lam, None)
        rhs = {(2 * j,): (-1) ** j for j in range(n + 1)}
        if acc != rhs:
            even_ok = False
        u = {(j,): (1 if j == 0 else 2) for j in range(k + 1)}
        w = {(j,): (1 if j == 0 else 2 * (-1) ** j) for j in range(k + 1)}
        if cat.product(u, w) != {(0,): 1}:
            inverse_ok = False
    return {
        "n_max": n_max,
        "even_identity": even_ok,
        "inverse_identity": inverse_ok,
        "passed": even_ok and inverse_ok,
    }


def invertibility_checks(k_max: int = 50, seed: int = DEFAULT_SEED) -> dict:
    """Determinant bookkeeping for the rank-one towers: det(I + N_pi)
    follows the three-periodic-sign recursion and is a unit exactly when
    k is not 1 mod 3; det(N_pi) is 0 for even k and a unit for odd k; the
    augmented object 1 + pi always reaches every simple."""
    dets = []
    pi_dets = []
    complete_flags = []
    for k in range(1, k_max + 1):
        cat = WZWFusion("a1", k)
        n_pi = cat.fusion_matrix((1,))
        aug = [
            [n_pi[i][j] + (1 if i == j else 0) for j in range(len(n_pi))]
            for i in range(len(n_pi))
        ]
        dets.append(exact_det(aug, seed=seed))
        pi_dets.append(exact_det(n_pi, seed=seed))
        complete_flags.append(is_complete(cat, {(0,): 1, (1,): 1}))
    recursion = [0, -1]
    while len(recursion) < k_max:
        recursion.append(recursion[-1] - recursion[-2])
    recursion = recursion[:k_max]
    recursion_ok = dets == recursion
    pattern_ok = all(
        (abs(d) == 1) == ((k % 3) != 1) for k, d in enumerate(dets, start=1)
    )
    pi_ok = all(
        (d == 0 if k % 2 == 0 else abs(d) == 1)
        for k, d in enumerate(pi_dets, start=1)
    )
    return {
        "k_max": k_max,
        "dets": dets,
        "recursion_ok": recursion_ok,
        "unit_iff_pattern": pattern_ok,
        "pi_det_ok": pi_ok,
        "complete_ok": all(complete_flags),
        "passed": recursion_ok and pattern_ok and pi_ok and all(complete_flags),
    }


# ---------------------------------------------------------------------------
# interpolation failure in the pointed rings

def riesz_counterexample_search(n: int, coeff_bound: int = 3) -> dict:
    """Exhaustive refutation of Riesz interpolation in the pointed cyclic
    ring ordered by the dimension cone {d > 0} or zero: the standard pair
    (0, g1 - g2) below (g1, 2g1 - g2) admits no interpolant with
    coefficients bounded by coeff_bound."""
    if n < 2:
        raise ValueError("need at least two simples")
    cat = pointed_cyclic(n)
    labels = cat.labels

    def vec(**pairs):
        out = [0] * n
        for idx, c in pairs.items():
            out[int(idx[1:]) % n] += c
        return tuple(out)

    h = [vec(), vec(i1=1, i2=-1)]
    g = [vec(i1=1), vec(i1=2, i2=-1)]

    def in_cone(x) -> bool:
        if all(v == 0 for v in x):
            return True
        return sum(x) > 0

    def leq(a, b) -> bool:
        return in_cone(tuple(x - y for x, y in zip(b, a)))

    interval_ok = all(leq(hi, gj) for hi in h for gj in g)
    interpolants = []
    d_values = set()
    span = range(-coeff_bound, coeff_bound + 1)

    def walk(prefix):
        if len(prefix) == n:
            x = tuple(prefix)
            if leq(h[0], x) and leq(x, g[0]):
                d_values.add(sum(x))
                if leq(h[1], x) and leq(x, g[1]):
                    interpolants.append(x)
            return
        for c in span:
            walk(prefix + [c])

    walk([])
    return {
        "n": n,
        "bound": coeff_bound,
        "labels": labels,
        "interval_ok": interval_ok,
        "interpolants": interpolants,
        "d_values_in_interval": sorted(d_values),
        "dichotomy_ok": d_values <= {0, 1},
        "passed": interval_ok and not interpolants and d_values <= {0, 1},
    }


# ---------------------------------------------------------------------------
# rank experiments over the fundamentals

EXPERIMENT_PATTERNS = {
    ("c2", (1, 0)): ("nullity", lambda k: (k + 2) // 2),
    ("c2", (0, 1)): ("invertible", lambda k: (k + 3) % 3 != 0 and (k + 3) % 5 != 0),
    ("g2", (1, 0)): ("invertible", lambda k: all((k + 4) % d for d in (4, 7, 30))),
    ("g2", (0, 1)): ("invertible", lambda k: all((k + 4) % d for d in (5, 7, 8))),
}


def level_major_simples(group, k: int) -> list:
    """Simples sorted by (level, lex): fusion by a fundamental then only
    connects nearby rows, which keeps the rank elimination banded."""
    name = root_system(group).name
    return sorted(enumerate_simples(name, k), key=lambda w: (level(name, w), w))


def experiment_row(group, pi, k: int, seed: int = DEFAULT_SEED) -> dict:
    name = root_system(group).name
    simples = level_major_simples(name, k)
    index = {w: j for j, w in enumerate(simples)}
    cat = WZWFusion(name, k)
    rows = []
    for mu in simples:
        # fuse with the fundamental as the second factor: the classical
        # decomposition runs over the second weight system, which stays a
        # handful of weights instead of growing with the level
        prod = cat.fuse(mu, pi)
        rows.append({index[nu]: c for nu, c in prod.items()})
    cert = exact_rank(rows, n_cols=len(simples), seed=seed)
    nullity = len(simples) - cert.rank
    kind, rule = EXPERIMENT_PATTERNS[(name, tuple(pi))]
    if kind == "nullity":
        expected = rule(k)
        match = nullity == expected
    else:
        expected = bool(rule(k))
        match = (nullity == 0) == expected
    return {
        "group": name,
        "pi": tuple(pi),
        "k": k,
        "size": len(simples),
        "rank": cert.rank,
        "nullity": nullity,
        "kind": kind,
        "expected": expected,
        "match": match,
        "primes_agree": cert.agree,
    }


def _experiment_task(args):
    return experiment_row(*args)


def nullity_experiments(
    group,
    k_max: int = 100,
    k_min: int = 1,
    seed: int = DEFAULT_SEED,
    jobs: int | None = None,
) -> list[dict]:
    """Rank/nullity sweep of both fundamental fusion matrices for k up to
    k_max, each rank certified over three primes.  Partitioned by k when
    jobs > 1; assembly order is fixed by construction either way."""
    name = root_system(group).name
    tasks = [
        (name, pi, k, seed)
        for k in range(k_min, k_max + 1)
        for pi in ((1, 0), (0, 1))
    ]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_experiment_task, tasks, chunksize=4))
    return [experiment_row(*t) for t in tasks]


def experiments_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["group", "pi", "k", "size", "rank", "nullity", "kind", "expected", "match", "primes_agree"]
    )
    for r in rows:
        writer.writerow(
            [
                r["group"],
                "(" + ",".join(str(x) for x in r["pi"]) + ")",
                r["k"],
                r["size"],
                r["rank"],
                r["nullity"],
                r["kind"],
                r["expected"],
                r["match"],
                r["primes_agree"],
            ]
        )
    return buf.getvalue()


def ses_rank_checks(group, k_max: int, seed: int = DEFAULT_SEED) -> dict:
    """Nullity of the fundamental fusion matrix against the parity (rank
    one) and divisibility-by-three (rank two) laws, with exact unit
    determinants in the invertible rank-one cases."""
    name = root_system(group).name
    if name not in ("a1", "a2"):
        raise ValueError("rank law only stated for a1 and a2")
    pi = DISTINGUISHED[name]
    rows = []
    all_match = True
    for k in range(1, k_max + 1):
        simples = level_major_simples(name, k)
        index = {w: j for j, w in enumerate(simples)}
        cat = WZWFusion(name, k)
        sparse = []
        for mu in simples:
            prod = cat.fuse(mu, pi)  # keep the small factor second
            sparse.append({index[nu]: c for nu, c in prod.items()})
        cert = exact_rank(sparse, n_cols=len(simples), seed=seed)
        nullity = len(simples) - cert.rank
        expected = (
            (1 if k % 2 == 0 else 0) if name == "a1" else (1 if k % 3 == 0 else 0)
        )
        det = None
        if name == "a1" and k % 2 == 1:
            det = exact_det(cat.fusion_matrix(pi), seed=seed)
        match = nullity == expected and (det is None or abs(det) == 1)
        all_match = all_match and match
        rows.append(
            {
                "k": k,
                "size": len(simples),
                "rank": cert.rank,
                "nullity": nullity,
                "expected": expected,
                "det": det,
                "match": match,
            }
        )
    return {"group": name, "k_max": k_max, "rows": rows, "all_match": all_match}


# ---------------------------------------------------------------------------
# positivity in the localized presentation, graded by the center

_SIGMA_CHAR_EXPS = {"a1": (2,), "a2": (1, 1), "c2": (0, 2), "g2": (2, 0)}
_GRADE_MOD = {"a1": 2, "a2": 3, "c2": 2, "g2": 1}


def _grade_of(name: str, exps) -> int:
    if name == "a1":
        return exps[0] % 2
    if name == "a2":
        return (exps[0] - exps[1]) % 3
    if name == "c2":
        return exps[0] % 2
    return 0


def _char_element(cat, cache: dict, exps) -> dict:
    """Coefficient vector of the character monomial prod_i x_i^{e_i}."""
    if exps in cache:
        return cache[exps]
    nonzero = next((i for i, e in enumerate(exps) if e), None)
    if nonzero is None:
        out = {cat.unit: 1}
    else:
        lower = tuple(e - (1 if i == nonzero else 0) for i, e in enumerate(exps))
        gen = tuple(1 if i == nonzero else 0 for i in range(len(exps)))
        out = cat.product({gen: 1}, _char_element(cat, cache, lower))
    cache[exps] = out
    return out


def laurent_class(group, k: int, poly: Poly, ring: LocalizedRing | None = None):
    """The localized class of a Laurent polynomial in the character
    variables.  Negative exponents are cleared by the character monomial of
    sigma; directions sigma cannot clear (the non-inverted variable of the
    semi-graded presentations) raise ValueError."""
    name = root_system(group).name
    cat = ring.cat if ring is not None else WZWFusion(name, k)
    if ring is None:
        pi = DISTINGUISHED[name]
        ring = LocalizedRing(cat, cat.fuse(cat.dual_of(pi), pi))
    step = _SIGMA_CHAR_EXPS[name]
    power = 0
    for exps in poly.terms:
        for e, s in zip(exps, step):
            if e < 0:
                if s == 0:
                    raise ValueError(f"variable with exponent {exps} is not inverted")
                power = max(power, (-e + s - 1) // s)
    cache: dict = {}
    coeffs: dict = {}
    for exps, c in poly.terms.items():
        shifted = tuple(e + power * s for e, s in zip(exps, step))
        for lam, mult in _char_element(cat, cache, shifted).items():
            v = coeffs.get(lam, 0) + c * mult
            if v:
                coeffs[lam] = v
            else:
                coeffs.pop(lam, None)
    return ring.element(coeffs, power)


def center_graded_positivity(group, k: int, poly: Poly, margin: float = 1e-8):
    """Tri-state positivity of a Laurent character class, graded by the
    center: each graded part must be zero or have positive dimension
    evaluation.  Returns None when any nonzero part falls inside the
    margin and no part is decidedly negative."""
    name = root_system(group).name
    cat = WZWFusion(name, k)
    pi = DISTINGUISHED[name]
    ring = LocalizedRing(cat, cat.fuse(cat.dual_of(pi), pi))
    parts: dict[int, Poly] = {}
    for exps, c in poly.terms.items():
        g = _grade_of(name, exps)
        parts[g] = parts.get(g, Poly.zero(poly.nvars)) + Poly({exps: c}, poly.nvars)
    undecided = False
    for part in parts.values():
        verdict = laurent_class(name, k, part, ring).is_positive(margin)
        if verdict is False:
            return False
        if verdict is None:
            undecided = True
    return None if undecided else True
