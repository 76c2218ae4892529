"""Root-system and weight combinatorics for the rank 1 and 2 simple groups.

Everything here is exact: weights are tuples of ints in the basis of
fundamental weights (Dynkin labels), inner products are Fractions taken
against the quadratic form on the weight lattice, normalized so long roots
have squared length 2.  The four groups supported are A1 = SU(2),
A2 = SU(3), C2 = Sp(4) and G2.

Conventions that matter downstream:

* C2: the first node is the short root, so pi_(1,0) is the 4-dimensional
  defining representation and pi_(0,1) the 5-dimensional one.  Both
  colabels are 1, so the level of a weight is l1 + l2.
* G2: the first node is the short root, so pi_(1,0) is the 7-dimensional
  fundamental and pi_(0,1) the 14-dimensional adjoint.  Colabels (1, 2),
  level = l1 + 2*l2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RootSystem:
    """Immutable bundle of structural data for one group.

    cartan[i][j] is <alpha_i, alpha_j-coroot>; the Dynkin labels of the
    simple root alpha_i are row i of the Cartan matrix.  form[i][j] is the
    inner product (omega_i, omega_j) of fundamental weights.  Weyl matrices
    act on row vectors: w(v) = v @ M.
    """

    name: str
    rank: int
    dual_coxeter: int
    colabels: Weight
    cartan: Matrix
    form: tuple[tuple[Fraction, ...], ...]
    highest_root: Weight
    weyl: tuple[Matrix, ...]
    weyl_signs: tuple[int, ...]
    positive_roots: tuple[Weight, ...]

    def __repr__(self) -> str:  # keep pytest output short
        return f"RootSystem({self.name})"


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][m] * b[m][j] for m in range(n)) for j in range(n))
        for i in range(n)
    )


def _det(m: Matrix) -> int:
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _apply(v: tuple, m: Matrix) -> tuple:
    n = len(v)
    return tuple(sum(v[i] * m[i][j] for i in range(n)) for j in range(n))


def _simple_reflection(cartan: Matrix, i: int) -> Matrix:
    """Matrix of s_i on Dynkin labels: s_i(v)_j = v_j - v_i * A[i][j]."""
    n = len(cartan)
    return tuple(
        tuple((1 if m == j else 0) - (cartan[i][j] if m == i else 0) for j in range(n))
        for m in range(n)
    )


def _weyl_closure(cartan: Matrix, expected_order: int) -> tuple[tuple[Matrix, ...], tuple[int, ...]]:
    n = len(cartan)
    gens = [_simple_reflection(cartan, i) for i in range(n)]
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                wg = _mat_mul(w, g)
                if wg not in seen:
                    seen.add(wg)
                    nxt.append(wg)
        frontier = nxt
    if len(seen) != expected_order:
        raise AssertionError(f"Weyl closure has {len(seen)} elements, expected {expected_order}")
    elems = tuple(sorted(seen))
    return elems, tuple(_det(w) for w in elems)


def _inverse_2x2(m) -> tuple:
    """Fraction inverse of a 1x1 or 2x2 integer matrix."""
    if len(m) == 1:
        return ((Fraction(1, m[0][0]),),)
    a, b = m[0]
    c, d = m[1]
    det = a * d - b * c
    return (
        (Fraction(d, det), Fraction(-b, det)),
        (Fraction(-c, det), Fraction(a, det)),
    )


def _positive_roots(cartan: Matrix, weyl: tuple[Matrix, ...]) -> tuple[Weight, ...]:
    n = len(cartan)
    simple = [cartan[i] for i in range(n)]
    roots = set()
    for a in simple:
        for w in weyl:
            roots.add(_apply(a, w))
    inv = _inverse_2x2(cartan)
    positive = []
    for r in roots:
        coeffs = _apply(r, inv)
        if sum(coeffs) > 0:
            positive.append(r)
    positive.sort(key=lambda r: (sum(_apply(r, inv)), r))
    return tuple(positive)


def _build(name, dual_coxeter, colabels, cartan, norms, highest_root, order) -> RootSystem:
    """Assemble a RootSystem; norms[i] = (alpha_i, alpha_i)/2 with long = 1."""
    n = len(cartan)
    # F = D (A^T)^{-1} with D = diag(norms): (omega_i, omega_j) pairing.
    at = tuple(tuple(cartan[j][i] for j in range(n)) for i in range(n))
    at_inv = _inverse_2x2(at)
    form = tuple(
        tuple(norms[i] * at_inv[i][j] for j in range(n)) for i in range(n)
    )
    weyl, signs = _weyl_closure(cartan, order)
    pos = _positive_roots(cartan, weyl)
    return RootSystem(
        name=name,
        rank=n,
        dual_coxeter=dual_coxeter,
        colabels=tuple(colabels),
        cartan=cartan,
        form=form,
        highest_root=tuple(highest_root),
        weyl=weyl,
        weyl_signs=signs,
        positive_roots=pos,
    )


GROUPS: dict[str, RootSystem] = {
    "a1": _build("a1", 2, (1,), ((2,),), (Fraction(1),), (2,), 2),
    "a2": _build("a2", 3, (1, 1), ((2, -1), (-1, 2)), (Fraction(1), Fraction(1)), (1, 1), 6),
    "c2": _build("c2", 3, (1, 1), ((2, -1), (-2, 2)), (Fraction(1, 2), Fraction(1)), (2, 0), 8),
    "g2": _build("g2", 4, (1, 2), ((2, -1), (-3, 2)), (Fraction(1, 3), Fraction(1)), (0, 1), 12),
}

_ALIASES = {
    "a1": "a1", "su2": "a1", "su(2)": "a1",
    "a2": "a2", "su3": "a2", "su(3)": "a2",
    "c2": "c2", "sp4": "c2", "sp(4)": "c2",
    "g2": "g2",
}


def root_system(group) -> RootSystem:
    """Look up a RootSystem by tag (a1/a2/c2/g2, su2/su3/sp4 aliases ok)."""
    if isinstance(group, RootSystem):
        return group
    key = _ALIASES.get(str(group).lower())
    if key is None:
        raise ValueError(f"unknown group {group!r}; expected one of a1, a2, c2, g2")
    return GROUPS[key]


def _check_weight(rs: RootSystem, lam) -> Weight:
    lam = tuple(int(x) for x in lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight {lam} has length {len(lam)}, rank of {rs.name} is {rs.rank}")
    return lam


def level(group, lam) -> int:
    """Level of a weight: the colabel-weighted sum of its Dynkin labels."""
    rs = root_system(group)
    lam = _check_weight(rs, lam)
    return sum(a * l for a, l in zip(rs.colabels, lam))


def rho(rs: RootSystem) -> Weight:
    return (1,) * rs.rank


def inner(rs: RootSystem, v, w) -> Fraction:
    """Inner product of two weight-lattice vectors (long roots have norm 2)."""
    acc = Fraction(0)
    for i in range(rs.rank):
        if v[i]:
            row = rs.form[i]
            for j in range(rs.rank):
                if w[j]:
                    acc += v[i] * w[j] * row[j]
    return acc


def dimension(group, lam) -> int:
    """Dimension of the irreducible with highest weight lam (Weyl formula)."""
    rs = root_system(group)
    lam = _check_weight(rs, lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"{lam} is not dominant")
    r = rho(rs)
    shifted = tuple(x + 1 for x in lam)
    num = Fraction(1)
    for gamma in rs.positive_roots:
        num *= inner(rs, shifted, gamma) / inner(rs, r, gamma)
    if num.denominator != 1:
        raise AssertionError(f"Weyl dimension of {lam} is not an integer: {num}")
    return int(num)


def make_dominant(rs: RootSystem, v) -> Weight:
    """Dominant Weyl-conjugate of v (plain action, no shift, no sign)."""
    v = tuple(v)
    guard = 0
    while True:
        for i in range(rs.rank):
            if v[i] < 0:
                v = tuple(v[j] - v[i] * rs.cartan[i][j] for j in range(rs.rank))
                break
        else:
            return v
        guard += 1
        if guard > 10000:
            raise RuntimeError(f"make_dominant did not terminate on {v}")


def reflect_to_dominant(rs: RootSystem, v) -> tuple[Weight | None, int]:
    """Shifted-style reflection: dominant conjugate of v and det sign.

    Returns (None, 0) if v is fixed by some reflection (lies on a wall,
    i.e. some intermediate coordinate is zero).  v here is already the
    rho-shifted vector, so walls are exact zeros.
    """
    v = tuple(v)
    sign = 1
    guard = 0
    while True:
        if any(x == 0 for x in v):
            return None, 0
        for i in range(rs.rank):
            if v[i] < 0:
                v = tuple(v[j] - v[i] * rs.cartan[i][j] for j in range(rs.rank))
                sign = -sign
                break
        else:
            return v, sign
        guard += 1
        if guard > 10000:
            raise RuntimeError(f"reflect_to_dominant did not terminate on {v}")


@lru_cache(maxsize=None)
def _dominant_weights(name: str, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    """Dominant weights of the irrep lam with Freudenthal multiplicities."""
    rs = GROUPS[name]
    n = rs.rank
    box = 3 * (level(rs, lam) + 1) + 1
    cands = []
    for coeffs in itertools.product(range(box), repeat=n):
        mu = tuple(
            lam[j] - sum(coeffs[i] * rs.cartan[i][j] for i in range(n))
            for j in range(n)
        )
        if all(x >= 0 for x in mu):
            cands.append((sum(coeffs), mu))
    cands.sort()
    r = rho(rs)
    lam_sq = inner(rs, tuple(x + 1 for x in lam), tuple(x + 1 for x in lam))
    mult: dict[Weight, int] = {}
    for depth, mu in cands:
        if depth == 0:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for gamma in rs.positive_roots:
            j = 1
            while True:
                w = tuple(mu[i] + j * gamma[i] for i in range(n))
                m = mult.get(make_dominant(rs, w), 0)
                if m == 0:
                    break
                total += m * inner(rs, w, gamma)
                j += 1
        mu_shift = tuple(x + 1 for x in mu)
        denom = lam_sq - inner(rs, mu_shift, mu_shift)
        val = 2 * total / denom
        if val.denominator != 1:
            raise AssertionError(f"Freudenthal gave non-integer multiplicity at {mu}")
        if val > 0:
            mult[mu] = int(val)
    return tuple(sorted(mult.items()))


@lru_cache(maxsize=None)
def _weight_system(name: str, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    rs = GROUPS[name]
    out: dict[Weight, int] = {}
    for mu, m in _dominant_weights(name, lam):
        for w in rs.weyl:
            out[_apply(mu, w)] = m
    return tuple(sorted(out.items()))


def weight_system(group, lam) -> dict[Weight, int]:
    """Full weight multiset of the classical irrep with highest weight lam."""
    rs = root_system(group)
    lam = _check_weight(rs, lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"{lam} is not dominant")
    return dict(_weight_system(rs.name, lam))


def classical_tensor(group, lam, mu) -> dict[Weight, int]:
    """Decompose the classical tensor product lam (x) mu.

    Racah-Speiser: run over the weight system of mu, shift by lam + rho,
    reflect to the dominant chamber and accumulate signed multiplicities.
    Weights landing on a chamber wall contribute nothing.
    """
    rs = root_system(group)
    lam = _check_weight(rs, lam)
    mu = _check_weight(rs, mu)
    if any(x < 0 for x in lam) or any(x < 0 for x in mu):
        raise ValueError("classical_tensor needs dominant weights")
    out: dict[Weight, int] = {}
    for beta, m in _weight_system(rs.name, mu):
        v = tuple(lam[i] + beta[i] + 1 for i in range(rs.rank))
        dom, sign = reflect_to_dominant(rs, v)
        if sign == 0:
            continue
        nu = tuple(x - 1 for x in dom)
        out[nu] = out.get(nu, 0) + m * sign
    return {nu: m for nu, m in sorted(out.items()) if m != 0}


def affine_fold(group, k: int, mu) -> tuple[Weight | None, int]:
    """Fold mu into the level-k alcove with the shifted affine Weyl action.

    Applies finite reflections and the affine reflection at the wall
    <v, theta-coroot> = k + h-dual until v = mu + rho is strictly inside
    the alcove (returns the unshifted dominant weight and the accumulated
    sign) or on a wall (returns (None, 0)).
    """
    rs = root_system(group)
    if k < 1:
        raise ValueError("level k must be >= 1")
    mu = tuple(int(x) for x in mu)
    if len(mu) != rs.rank:
        raise ValueError(f"weight {mu} has wrong rank for {rs.name}")
    n = k + rs.dual_coxeter
    v = tuple(x + 1 for x in mu)
    sign = 1
    bound = 10 * n
    for _ in range(bound):
        v2, s = reflect_to_dominant(rs, v)
        if s == 0:
            return None, 0
        v, sign = v2, sign * s
        lev = sum(a * x for a, x in zip(rs.colabels, v))
        if lev < n:
            return tuple(x - 1 for x in v), sign
        if lev == n:
            return None, 0
        # affine reflection: v -> v - (lev - n) * theta
        v = tuple(v[i] - (lev - n) * rs.highest_root[i] for i in range(rs.rank))
        sign = -sign
    raise RuntimeError(f"affine_fold exceeded {bound} reflections on {mu} at k={k}")
