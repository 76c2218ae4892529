import numpy as np
import pytest

from verlinde.exactmat import (
    DEFAULT_SEED,
    certificate_primes,
    exact_det,
    exact_rank,
)
from verlinde.fusion import fusion_matrix_kw


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


class TestPrimes:
    def test_deterministic_and_sane(self):
        ps = certificate_primes()
        assert ps == certificate_primes(DEFAULT_SEED)
        assert len(set(ps)) == 3
        assert all(2**30 < p < 2**31 for p in ps)

    def test_seed_changes_primes(self):
        assert certificate_primes(1) != certificate_primes(2)


class TestRank:
    def test_identity(self):
        c = exact_rank(np.eye(7, dtype=int))
        assert c.rank == 7 and c.agree
        assert c.ranks == (7, 7, 7)

    def test_zero_and_empty(self):
        assert exact_rank(np.zeros((4, 4), dtype=int)).rank == 0
        assert exact_rank([], n_cols=3).rank == 0

    def test_low_rank_product(self):
        rng = np.random.default_rng(3)
        a = rng.integers(-9, 10, (25, 6))
        b = rng.integers(-9, 10, (6, 25))
        c = exact_rank(a @ b)
        assert c.rank == 6

    def test_matches_float_rank_small(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            m = rng.integers(-4, 5, (20, 30))
            assert exact_rank(m).rank == np.linalg.matrix_rank(m.astype(float))

    def test_sparse_dict_rows(self):
        rows = [{0: 1, 2: 3}, {1: 2}, {0: 2, 2: 6}, {}]
        c = exact_rank(rows, n_cols=3)
        assert c.rank == 2 and c.n_rows == 4 and c.n_cols == 3

    def test_rejects_wide_entries(self):
        with pytest.raises(ValueError):
            exact_rank([{5: 1}], n_cols=3)

    def test_certificate_dict(self):
        d = exact_rank(np.eye(2, dtype=int)).as_dict()
        assert set(d) == {
            "n_rows", "n_cols", "bandwidth", "primes", "ranks",
            "rank", "agree", "backend",
        }

    def test_fusion_operator_singular_case(self):
        # level 2 C2: k + 3 = 5, one of the singular levels for the
        # five-dimensional generator
        mat = fusion_matrix_kw("c2", 2, (0, 1))
        c = exact_rank(mat)
        assert c.rank < len(mat)
        # while the four-dimensional generator at level 2 has nullity 2
        mat = fusion_matrix_kw("c2", 2, (1, 0))
        assert exact_rank(mat).rank == len(mat) - 2


class TestBackends:
    def test_fallback_flag(self, monkeypatch):
        rng = np.random.default_rng(11)
        m = rng.integers(-6, 7, (40, 40))
        monkeypatch.setenv("VERLINDE_NO_NUMBA", "1")
        c1 = exact_rank(m)
        assert c1.backend == "numpy"
        monkeypatch.delenv("VERLINDE_NO_NUMBA")
        c2 = exact_rank(m)
        assert c1.rank == c2.rank and c1.primes == c2.primes

    def test_banded_input_round_trip(self, monkeypatch):
        rng = np.random.default_rng(13)
        n, half = 300, 9
        rows = []
        for i in range(n):
            lo, hi = max(0, i - half), min(n, i + half + 1)
            cols = rng.choice(np.arange(lo, hi), size=4, replace=False)
            rows.append({int(j): int(rng.integers(-5, 6)) for j in cols})
        want = np.linalg.matrix_rank(
            np.array([[r.get(j, 0) for j in range(n)] for r in rows], dtype=float)
        )
        c = exact_rank(rows, n_cols=n)
        assert c.rank == want
        monkeypatch.setenv("VERLINDE_NO_NUMBA", "1")
        assert exact_rank(rows, n_cols=n).rank == want


class TestDet:
    def test_small_exact(self):
        assert exact_det([[2, 1], [1, 1]]) == 1
        assert exact_det([[0, 1], [1, 0]]) == -1
        assert exact_det([]) == 1  # 0x0 convention

    def test_su2_unit_plus_generator_sequence(self):
        # det(N_1 + N_pi) over levels follows d(k+1) = d(k) - d(k-1)
        vals = []
        for k in range(1, 13):
            n = np.array(fusion_matrix_kw("a1", k, (1,)), dtype=int)
            vals.append(exact_det(np.eye(k + 1, dtype=int) + n))
        assert vals[0] == 0 and vals[1] == -1
        for k in range(2, 12):
            assert vals[k] == vals[k - 1] - vals[k - 2]

    def test_against_sympy_random(self):
        import sympy

        rng = np.random.default_rng(17)
        m = rng.integers(-5, 6, (25, 25))
        assert exact_det(m) == sympy.Matrix(m.tolist()).det()

    def test_large_crt_path_tridiagonal_fibonacci(self):
        n = 600
        t = np.zeros((n, n), dtype=int)
        for i in range(n):
            t[i, i] = 1
            if i:
                t[i, i - 1] = -1
                t[i - 1, i] = 1
        assert exact_det(t) == fib(n + 1)

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            exact_det(np.ones((2, 3), dtype=int))
