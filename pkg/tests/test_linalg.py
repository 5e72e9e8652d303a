import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symcoh.errors import ValidationError
from symcoh.invariants import AbGroupInvariants
from symcoh.linalg import homology_invariants, kernel, smith_normal_form, solve_mod


def _mul(A, B):
    return (np.array(A, dtype=object) @ np.array(B, dtype=object)).tolist()


def _det(A):
    A = [list(map(int, r)) for r in A]
    n = len(A)
    # fraction-free elimination
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1] if n else 1


def _diag(S):
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


@pytest.mark.parametrize("A, diag", [([[2, 0], [0, 3]], [1, 6]), ([[0]], [0]), ([[2, 4], [6, 8]], [2, 4])])
def test_snf_examples(A, diag):
    res = smith_normal_form(A)
    assert _diag(res.S) == diag
    assert _mul(_mul(res.U, A), res.V) == res.S


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_snf_reconstructs(rows, cols, data):
    A = [[data.draw(st.integers(-9, 9)) for _ in range(cols)] for _ in range(rows)]
    res = smith_normal_form(A)
    assert _mul(_mul(res.U, A), res.V) == res.S
    assert abs(_det(res.U)) == 1 and abs(_det(res.V)) == 1
    d = _diag(res.S)
    assert all(x >= 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]) if a) and all(b == 0 for a, b in zip(d, d[1:]) if a == 0)
    off = [res.S[i][j] for i in range(rows) for j in range(cols) if i != j]
    assert not any(off)


def test_solve_mod_examples():
    assert solve_mod([[3]], [1], [4]) == [3]
    assert solve_mod([[2]], [1], [4]) is None
    assert solve_mod([[5, 7], [1, 2]], [0, 0], [6, 9]) == [0, 0]


def test_solve_mod_dimension_mismatch():
    with pytest.raises(ValidationError, match="dimension"):
        solve_mod([[1, 2]], [1, 2], [3])


def test_modulus_one_row_is_vacuous():
    assert solve_mod([[1], [2]], [5, 1], [1, 3]) is not None


@given(st.data())
def test_solve_mod_matches_exhaustion(data):
    p = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, 3))
    mods = [data.draw(st.integers(1, 9)) for _ in range(p)]
    A = [[data.draw(st.integers(-9, 9)) for _ in range(n)] for _ in range(p)]
    b = [data.draw(st.integers(0, 8)) for _ in range(p)]
    x = solve_mod(A, b, mods)
    N = int(np.lcm.reduce(mods))
    found = any(all((np.dot(A[i], c) - b[i]) % mods[i] == 0 for i in range(p))
                for c in itertools.product(range(N), repeat=n))
    assert (x is not None) == found
    if x is not None:
        assert all((np.dot(A[i], x) - b[i]) % mods[i] == 0 for i in range(p))


def test_homology_examples():
    assert homology_invariants([[0]], np.zeros((1, 0)), [2]).factors == (2,)
    assert homology_invariants([[2]], np.zeros((1, 0)), [4], target_moduli=[4]).factors == (2,)


def test_homology_degree_one_z2():
    # d1 for (Z/2, trivial Z/2): (dphi)(a,b) = phi(b) - phi(ab) + phi(a); d0 = 0
    rows = []
    for a in range(2):
        for b in range(2):
            r = [0, 0]
            r[b] += 1
            r[(a + b) % 2] -= 1
            r[a] += 1
            rows.append(r)
    assert homology_invariants(rows, np.zeros((2, 1)), [2, 2]).factors == (2,)


def test_homology_rejects_non_complex():
    with pytest.raises(ValidationError) as e:
        homology_invariants([[1]], [[1]], [5])
    assert e.value.witness == (0,)


def test_kernel_members():
    K = kernel([[2, 4]], [6, 6], [6])
    assert K.order == 12
    for c in itertools.product(range(6), repeat=2):
        assert K.contains(c) == ((2 * c[0] + 4 * c[1]) % 6 == 0)


def test_invariants_normalize():
    assert AbGroupInvariants.from_orders([2, 3, 1]).factors == (6,)
    assert AbGroupInvariants.from_orders([4, 2, 6]).factors == (2, 2, 12)
    assert AbGroupInvariants().order == 1
    with pytest.raises(ValueError):
        AbGroupInvariants((2, 3))
