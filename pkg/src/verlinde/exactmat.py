"""Exact rank and determinant of large integer matrices.

Rank is computed by row elimination modulo three independently seeded
primes just below 2^31 (products stay inside int64).  A modular rank can
only undercount the rational rank, never overcount, so the certificate
reports the maximum across primes along with each prime's answer; the
chance that all three primes divide the same nonzero minor is negligible
at this scale and the agreement flag makes a disagreement visible.

Fusion operators written in level-major order are banded: the bandwidth
grows like the level while the matrix size grows like its square.  The
eliminator exploits this with a skewed banded layout.  Rows sharing the
current leading column always fit a window of width (2b + 1); eliminating
one by another keeps them inside it (ends never pass the pivot's end), so
no fill-in beyond the window ever appears.

The elimination kernels are compiled with numba when importable; setting
VERLINDE_NO_NUMBA=1 forces the pure-numpy fallback (same algorithm,
vectorized slices instead of a jit loop).  benchmarks/bench_rank.py
compares the two paths.

Determinants: fraction-free Bareiss up to 512 rows (entries stay integral
by the Sylvester identity), and above that a CRT of modular determinants
behind a Hadamard bound.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass

import numpy as np
from sympy import prevprime

BAREISS_LIMIT = 512
PRIME_CEILING = 2**31
DEFAULT_SEED = 20240915


def certificate_primes(seed: int = DEFAULT_SEED, count: int = 3) -> tuple[int, ...]:
    """Distinct primes a little below 2^31, deterministic in the seed."""
    rng = random.Random(seed)
    primes: list[int] = []
    while len(primes) < count:
        p = int(prevprime(PRIME_CEILING - rng.randrange(1, 1 << 24)))
        if p not in primes:
            primes.append(p)
    return tuple(primes)


def _use_numba() -> bool:
    if os.environ.get("VERLINDE_NO_NUMBA"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _normalize_rows(rows, n_cols=None) -> tuple[list[dict[int, int]], int]:
    """Accept an ndarray, a list of lists, or a list of {col: value} dicts."""
    if isinstance(rows, np.ndarray):
        rows = rows.tolist()
    out: list[dict[int, int]] = []
    width = n_cols or 0
    for row in rows:
        if isinstance(row, dict):
            d = {int(j): int(v) for j, v in row.items() if v}
        else:
            d = {j: int(v) for j, v in enumerate(row) if v}
            width = max(width, len(row))
        if d:
            width = max(width, max(d) + 1)
        out.append(d)
    if n_cols is not None and width > n_cols:
        raise ValueError("row entries exceed the stated column count")
    return out, (n_cols if n_cols is not None else width)


def _banded_layout(rows: list[dict[int, int]]):
    """Skewed storage: row i holds columns [base[i], base[i] + W)."""
    half = 1
    for i, row in enumerate(rows):
        for j in row:
            half = max(half, abs(j - i))
    width = 2 * half + 1
    n = len(rows)
    band = np.zeros((n, width), dtype=np.int64)
    base = np.zeros(n, dtype=np.int64)
    for i, row in enumerate(rows):
        if not row:
            base[i] = i
            continue
        lo = min(row)
        base[i] = lo
        for j, v in row.items():
            band[i, j - lo] = v
    return band, base, width


# -- kernels -----------------------------------------------------------------
#
# both implement the same sweep: process columns left to right; all live
# rows whose leading column equals the current one are chained in a bucket
# list; the first becomes the pivot, the rest are eliminated against it and
# re-filed under their new leading column.

def _rank_banded_python(band: np.ndarray, base: np.ndarray, p: int) -> int:
    n, width = band.shape
    band = band % p
    lead = np.full(n, -1, dtype=np.int64)
    m = 0
    for i in range(n):
        nz = np.nonzero(band[i])[0]
        if len(nz):
            off = nz[0]
            if off:
                band[i, : width - off] = band[i, off:]
                band[i, width - off :] = 0
                base[i] += off
            lead[i] = base[i]
            m = max(m, int(base[i]) + width)
    head = {}
    for i in range(n):
        if lead[i] >= 0:
            head.setdefault(int(lead[i]), []).append(i)
    rank = 0
    for c in range(m):
        bucket = head.pop(c, None)
        if not bucket:
            continue
        r = bucket[0]
        rank += 1
        inv = pow(int(band[r, 0]), -1, p)
        for s in bucket[1:]:
            f = (int(band[s, 0]) * inv) % p
            combined = (band[s] - f * band[r]) % p
            nz = np.nonzero(combined)[0]
            if not len(nz):
                continue
            off = nz[0]
            band[s, : width - off] = combined[off:]
            band[s, width - off :] = 0
            base[s] = c + off
            head.setdefault(c + off, []).append(s)
    return rank


_NUMBA_KERNELS = {}


def _numba_kernels():
    if _NUMBA_KERNELS:
        return _NUMBA_KERNELS
    from numba import njit

    @njit(cache=True)
    def modpow(a, e, p):
        r = 1
        a %= p
        while e > 0:
            if e & 1:
                r = (r * a) % p
            a = (a * a) % p
            e >>= 1
        return r

    @njit(cache=True)
    def rank_banded(band, base, p):
        n, width = band.shape
        for i in range(n):
            for t in range(width):
                band[i, t] %= p
        m = 0
        lead_off = np.full(n, -1, dtype=np.int64)
        for i in range(n):
            for t in range(width):
                if band[i, t] != 0:
                    lead_off[i] = t
                    break
            if base[i] + width > m:
                m = base[i] + width
        # realign so the leading entry sits at offset 0
        for i in range(n):
            off = lead_off[i]
            if off > 0:
                for t in range(width - off):
                    band[i, t] = band[i, t + off]
                for t in range(width - off, width):
                    band[i, t] = 0
                base[i] += off
        head = np.full(m + 1, -1, dtype=np.int64)
        nxt = np.full(n, -1, dtype=np.int64)
        for i in range(n - 1, -1, -1):
            if lead_off[i] >= 0:
                c = base[i]
                nxt[i] = head[c]
                head[c] = i
        rank = 0
        for c in range(m):
            r = head[c]
            if r == -1:
                continue
            rank += 1
            inv = modpow(band[r, 0], p - 2, p)
            s = nxt[r]
            while s != -1:
                follow = nxt[s]
                f = (band[s, 0] * inv) % p
                first = -1
                for t in range(width):
                    v = (band[s, t] - f * band[r, t]) % p
                    band[s, t] = v
                    if v != 0 and first == -1:
                        first = t
                if first != -1:
                    if first > 0:
                        for t in range(width - first):
                            band[s, t] = band[s, t + first]
                        for t in range(width - first, width):
                            band[s, t] = 0
                    base[s] = c + first
                    nxt[s] = head[c + first]
                    head[c + first] = s
                s = follow
        return rank

    @njit(cache=True)
    def det_mod(a, p):
        n = a.shape[0]
        for i in range(n):
            for j in range(n):
                a[i, j] %= p
        det = 1
        for c in range(n):
            piv = -1
            for r in range(c, n):
                if a[r, c] != 0:
                    piv = r
                    break
            if piv == -1:
                return 0
            if piv != c:
                for t in range(n):
                    tmp = a[c, t]
                    a[c, t] = a[piv, t]
                    a[piv, t] = tmp
                det = (p - det) % p
            det = (det * a[c, c]) % p
            inv = modpow(a[c, c], p - 2, p)
            for r in range(c + 1, n):
                if a[r, c] == 0:
                    continue
                f = (a[r, c] * inv) % p
                for t in range(c, n):
                    a[r, t] = (a[r, t] - f * a[c, t]) % p
        return det

    _NUMBA_KERNELS["rank_banded"] = rank_banded
    _NUMBA_KERNELS["det_mod"] = det_mod
    return _NUMBA_KERNELS


def _det_mod_python(a: np.ndarray, p: int) -> int:
    a = a % p
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if not len(nz):
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = p - det
        det = (det * int(a[c, c])) % p
        inv = pow(int(a[c, c]), -1, p)
        col = (a[c + 1 :, c] * inv) % p
        a[c + 1 :] = (a[c + 1 :] - np.outer(col, a[c])) % p
    return det % p


@dataclass(frozen=True)
class RankCertificate:
    n_rows: int
    n_cols: int
    bandwidth: int
    primes: tuple[int, ...]
    ranks: tuple[int, ...]
    rank: int
    agree: bool
    backend: str

    def as_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "n_cols": self.n_cols,
            "bandwidth": self.bandwidth,
            "primes": list(self.primes),
            "ranks": list(self.ranks),
            "rank": self.rank,
            "agree": self.agree,
            "backend": self.backend,
        }


def exact_rank(rows, n_cols: int | None = None, *, seed: int = DEFAULT_SEED,
               primes: tuple[int, ...] | None = None) -> RankCertificate:
    """Rank of an integer matrix with a three-prime certificate."""
    sparse, m = _normalize_rows(rows, n_cols)
    if primes is None:
        primes = certificate_primes(seed)
    band0, base0, width = _banded_layout(sparse)
    use_numba = _use_numba()
    kernel = _numba_kernels()["rank_banded"] if use_numba else _rank_banded_python
    ranks = []
    for p in primes:
        ranks.append(int(kernel(band0.copy(), base0.copy(), p)))
    rank = max(ranks)
    return RankCertificate(
        n_rows=len(sparse),
        n_cols=m,
        bandwidth=(width - 1) // 2,
        primes=tuple(primes),
        ranks=tuple(ranks),
        rank=rank,
        agree=len(set(ranks)) == 1,
        backend="numba" if use_numba else "numpy",
    )


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in mat]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(c + 1, n):
            for t in range(c + 1, n):
                a[r][t] = (a[r][t] * a[c][c] - a[r][c] * a[c][t]) // prev
            a[r][c] = 0
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def exact_det(matrix, *, seed: int = DEFAULT_SEED) -> int:
    """Exact integer determinant (Bareiss small, CRT of modular dets large)."""
    if hasattr(matrix, "__len__") and len(matrix) == 0:
        return 1
    a = np.array(matrix, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("determinant needs a square matrix")
    n = a.shape[0]
    if n <= BAREISS_LIMIT:
        return _bareiss_det(a.tolist())
    # the modular path assumes the entries themselves fit in int64
    dense = np.array(matrix, dtype=np.int64)
    # product of row norms bounds |det|; collect primes past 2*bound
    log_bound = 0.0
    for row in dense:
        norm2 = float(np.dot(row.astype(float), row.astype(float)))
        if norm2 == 0.0:
            return 0
        log_bound += 0.5 * math.log(norm2)
    rng = random.Random(seed)
    use_numba = _use_numba()
    det_kernel = _numba_kernels()["det_mod"] if use_numba else _det_mod_python
    primes: list[int] = []
    log_prod = 0.0
    while log_prod < log_bound + math.log(2) + 1:
        p = int(prevprime(PRIME_CEILING - rng.randrange(1, 1 << 24)))
        if p in primes:
            continue
        primes.append(p)
        log_prod += math.log(p)
    residue, modulus = 0, 1
    for p in primes:
        r = int(det_kernel(dense.copy(), p))
        # incremental CRT
        inv = pow(modulus % p, -1, p)
        residue = residue + modulus * ((r - residue) * inv % p)
        modulus *= p
    if residue > modulus // 2:
        residue -= modulus
    return residue
