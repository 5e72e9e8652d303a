"""Brute-force ground truth for small instances.

Everything here is deliberately naive and self-contained: cochains are
tuples of module elements listed in ``itertools.product`` order, the
coboundary and the transposition operators are re-implemented pointwise,
and the quotient group is identified by counting element orders. Only the
group/module tables are shared with the linear-algebra engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import FiniteGroup, GModule, act
from .errors import BudgetExceeded, ValidationError
from .invariants import AbGroupInvariants

__all__ = ["OracleBudget", "enumerate_cohomology", "exhaustive_coboundary", "enumerate_cochains",
           "oracle_coboundary", "oracle_is_member"]

FLAVORS = ("classical", "normalized", "symmetric", "exterior")


@dataclass(frozen=True)
class OracleBudget:
    max_enumeration: int = 10_000_000

    def __post_init__(self):
        if self.max_enumeration < 1:
            raise ValueError("budget must be positive")


def _tuples(G: FiniteGroup, n: int):
    return list(itertools.product(range(G.order), repeat=n))


def _index(G: FiniteGroup, tup) -> int:
    i = 0
    for g in tup:
        i = i * G.order + g
    return i


def oracle_coboundary(G: FiniteGroup, M: GModule, phi: tuple, n: int) -> tuple:
    out = []
    for t in _tuples(G, n + 1):
        v = act(M, t[0], phi[_index(G, t[1:])])
        for i in range(1, n + 1):
            face = t[:i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1:]
            w = phi[_index(G, face)]
            v = M.add(v, w) if i % 2 == 0 else M.add(v, M.neg(w))
        w = phi[_index(G, t[:n])]
        v = M.add(v, w) if (n + 1) % 2 == 0 else M.add(v, M.neg(w))
        out.append(v)
    return tuple(out)


def _tau_value(G, M, phi, n, i, t):
    inv = lambda g: int(G.inv[g])  # noqa: E731
    if i == 1:
        g1 = t[0]
        src = (inv(g1),) + ((G.mul(g1, t[1]),) + t[2:] if n > 1 else ())
        return M.neg(act(M, g1, phi[_index(G, src)]))
    if i < n:
        a, b, c = t[i - 2], t[i - 1], t[i]
        src = t[:i - 2] + (G.mul(a, b), inv(b), G.mul(b, c)) + t[i + 1:]
    else:
        src = t[:n - 2] + (G.mul(t[n - 2], t[n - 1]), inv(t[n - 1]))
    return M.neg(phi[_index(G, src)])


def oracle_is_member(G: FiniteGroup, M: GModule, phi: tuple, n: int, flavor: str) -> bool:
    tuples = _tuples(G, n)
    if flavor in ("normalized", "exterior") and n > 0:
        if any(phi[j] != M.zero() for j, t in enumerate(tuples) if 0 in t):
            return False
    if flavor in ("symmetric", "exterior"):
        for i in range(1, n + 1):
            if any(_tau_value(G, M, phi, n, i, t) != phi[j] for j, t in enumerate(tuples)):
                return False
    return True


def enumerate_cochains(G: FiniteGroup, M: GModule, n: int, flavor: str, budget: OracleBudget):
    """All flavor cochains of degree ``n`` as tuples of module elements."""
    if flavor not in FLAVORS:
        raise ValidationError(f"unknown flavor {flavor!r}")
    tuples = _tuples(G, n)
    free = [j for j, t in enumerate(tuples) if not (flavor in ("normalized", "exterior") and n > 0 and 0 in t)]
    states = M.size ** len(free)
    if states > budget.max_enumeration:
        raise BudgetExceeded(f"{states} cochains exceed the oracle budget {budget.max_enumeration}")
    elems = list(M.elements())
    zero = M.zero()
    for choice in itertools.product(elems, repeat=len(free)):
        phi = [zero] * len(tuples)
        for j, v in zip(free, choice):
            phi[j] = v
        phi = tuple(phi)
        if flavor in ("symmetric", "exterior") and not oracle_is_member(G, M, phi, n, flavor):
            continue
        yield phi


def _invariants_from_orders(order_counts: dict[int, int], size: int) -> AbGroupInvariants:
    """Rebuild invariant factors from the multiset of element orders."""
    primes, m, p = [], size, 2
    while m > 1:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    exps_by_prime = {}
    for p in primes:
        # |{x : p^j x = 0}| = p^(sum_i min(j, e_i))
        logs, j = [0], 1
        while True:
            cnt = sum(c for o, c in order_counts.items() if (p ** j) % o == 0)
            e = 0
            while cnt % p == 0 and cnt > 1:
                cnt //= p
                e += 1
            logs.append(e)
            if logs[-1] == logs[-2]:
                break
            j += 1
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]  # number of e_i >= j
        exps = []
        for j, c in enumerate(at_least, start=1):
            nxt = at_least[j] if j < len(at_least) else 0
            exps += [j] * (c - nxt)
        exps_by_prime[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in exps_by_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in exps_by_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return AbGroupInvariants(tuple(sorted(factors)))


def enumerate_cohomology(G: FiniteGroup, M: GModule, n: int, flavor: str = "classical",
                         budget: OracleBudget = OracleBudget()) -> AbGroupInvariants:
    if n < 0:
        raise ValidationError("degree must be >= 0")
    zero_next = tuple([M.zero()] * G.order ** (n + 1))
    Z = [phi for phi in enumerate_cochains(G, M, n, flavor, budget)
         if oracle_coboundary(G, M, phi, n) == zero_next]
    if n == 0:
        B = {tuple([M.zero()])}
    else:
        B = {oracle_coboundary(G, M, g, n - 1) for g in enumerate_cochains(G, M, n - 1, flavor, budget)}
    # canonical coset representative: lexicographically least element of z + B
    reps = {min(tuple(M.add(x, y) for x, y in zip(z, b)) for b in B) for z in Z}
    size = len(reps)
    if size * len(B) != len(Z):
        raise AssertionError("coset count inconsistent")
    counts: dict[int, int] = {}
    for z in reps:
        k, w = 1, z
        while w not in B:
            w = tuple(M.add(x, y) for x, y in zip(w, z))
            k += 1
        counts[k] = counts.get(k, 0) + 1
    return _invariants_from_orders(counts, size)


def exhaustive_coboundary(G: FiniteGroup, M: GModule, phi: tuple, n: int, flavor: str = "classical",
                          budget: OracleBudget = OracleBudget()):
    """Some flavor ``(n-1)``-cochain ``g`` with ``dg = phi`` or None."""
    if n < 1:
        raise ValidationError("degree must be >= 1")
    phi = tuple(tuple(v) for v in phi)
    for g in enumerate_cochains(G, M, n - 1, flavor, budget):
        if oracle_coboundary(G, M, g, n - 1) == phi:
            return g
    return None
