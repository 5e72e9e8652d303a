"""Finite groups and finite G-modules as explicit, validated tables.

Groups are multiplication tables on the indices ``0..order-1`` with the
identity pinned to index 0. A G-module is a finite abelian group
``Z/d_1 + ... + Z/d_k`` together with one integer matrix per group element;
matrix ``action[g]`` acts on residue column vectors, with row ``i`` read
modulo ``d_i``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "FiniteGroup",
    "GModule",
    "Census",
    "build_cyclic",
    "direct_product",
    "symmetric_group",
    "validate_group",
    "validate_module",
    "trivial_module",
    "sign_module",
    "act",
    "order_two_census",
    "element_order",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    Instances compare by identity; two separately built copies of the same
    table are different objects (this keeps per-group caches cheap).
    """

    table: np.ndarray
    inv: np.ndarray
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, g: int, e: int) -> int:
        r = 0
        for _ in range(e % element_order(self, g)):
            r = int(self.table[r, g])
        return r

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


@dataclass(frozen=True, eq=False)
class GModule:
    """A finite abelian group with a left action of ``group``.

    ``action`` has shape ``(|G|, k, k)``; entries of row ``i`` are reduced
    modulo ``exponents[i]``.
    """

    group: FiniteGroup
    exponents: tuple[int, ...]
    action: np.ndarray
    name: str = ""
    _moduli: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_moduli", _frozen(self.exponents))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def moduli(self) -> np.ndarray:
        return self._moduli

    @property
    def size(self) -> int:
        return math.prod(self.exponents)

    @property
    def exponent(self) -> int:
        """Least common multiple of the cyclic orders (1 for the zero module)."""
        return math.lcm(*self.exponents) if self.exponents else 1

    def is_trivial_action(self) -> bool:
        eye = np.eye(self.rank, dtype=np.int64) % self.moduli[:, None] if self.rank else None
        return all(np.array_equal(a, eye) for a in self.action) if self.rank else True

    def reduce(self, m) -> tuple[int, ...]:
        return tuple(int(x) % d for x, d in zip(m, self.exponents))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.exponents))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(a, self.exponents))

    def elements(self):
        """All elements, mixed radix with the first coordinate most significant."""
        return itertools.product(*(range(d) for d in self.exponents))

    def index_of(self, m) -> int:
        i = 0
        for x, d in zip(m, self.exponents):
            i = i * d + int(x) % d
        return i

    def element(self, index: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.exponents):
            index, r = divmod(index, d)
            out.append(r)
        return tuple(reversed(out))

    def __repr__(self) -> str:
        return f"GModule({self.name or '?'}, exponents={list(self.exponents)}, over {self.group!r})"


class Census(NamedTuple):
    has_order_two: bool
    pairing: list[tuple[int, int]]
    involutions: list[int]


# ---------------------------------------------------------------------------
# groups


def _inverse_table(table: np.ndarray) -> np.ndarray:
    # row g contains 0 exactly once (Latin square)
    return np.argmin(table, axis=1)


def build_cyclic(n: int) -> FiniteGroup:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"cyclic group order must be a positive integer, got {n!r}")
    n = int(n)
    a = np.arange(n)
    table = (a[:, None] + a[None, :]) % n
    return FiniteGroup(_frozen(table), _frozen((-a) % n), name=f"Z{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Product on pair indices ``i*|H| + j``."""
    m = H.order
    g = np.repeat(np.arange(G.order), m)
    h = np.tile(np.arange(m), G.order)
    table = G.table[g[:, None], g[None, :]] * m + H.table[h[:, None], h[None, :]]
    inv = G.inv[g] * m + H.inv[h]
    return FiniteGroup(_frozen(table), _frozen(inv), name=f"{G.name}x{H.name}")


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on permutations in lexicographic order (identity first).

    Product is composition ``(p*q)(i) = p(q(i))``.
    """
    if n < 1 or n > 5:
        raise ValidationError(f"symmetric_group supports 1 <= n <= 5, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return validate_group(table, name=f"S{n}")


def validate_group(table, name: str = "") -> FiniteGroup:
    """Validate a raw multiplication table; identity must sit at index 0."""
    try:
        rows = [list(r) for r in table]
    except TypeError:
        raise ValidationError("group table must be a list of rows") from None
    n = len(rows)
    if n == 0:
        raise ValidationError("group table is empty")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValidationError(f"table is not square: row {i} has length {len(r)}, expected {n}",
                                  witness=(i,))
        for j, x in enumerate(r):
            if not isinstance(x, (int, np.integer)) or isinstance(x, bool) or not 0 <= x < n:
                raise ValidationError(f"entry ({i},{j}) = {x!r} out of range 0..{n - 1}",
                                      witness=(i, j))
    t = np.array(rows, dtype=np.int64)
    ar = np.arange(n)
    for g in range(n):
        if t[0, g] != g or t[g, 0] != g:
            raise ValidationError(f"identity-row violation: index 0 is not the identity (element {g})",
                                  witness=(g,))
    for i in range(n):
        if len(set(t[i].tolist())) != n:
            raise ValidationError(f"Latin-square violation at row {i}", witness=(i,))
        if len(set(t[:, i].tolist())) != n:
            raise ValidationError(f"Latin-square violation at column {i}", witness=(i,))
    left = t[t[:, :, None], ar[None, None, :]]  # (ab)c
    right = t[ar[:, None, None], t[None, :, :]]  # a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(x) for x in bad[0])
        raise ValidationError(f"associativity violation at ({a},{b},{c})", witness=(a, b, c))
    return FiniteGroup(_frozen(t), _frozen(_inverse_table(t)), name=name)


def element_order(G: FiniteGroup, g: int) -> int:
    k, x = 1, g
    while x != 0:
        x = int(G.table[x, g])
        k += 1
    return k


def order_two_census(G: FiniteGroup) -> Census:
    """Split ``G \\ {1}`` into involutions and pairs ``(x, x^-1)``, ``x < x^-1``."""
    inv = G.inv
    involutions = [g for g in range(1, G.order) if inv[g] == g]
    pairing = [(g, int(inv[g])) for g in range(1, G.order) if g < inv[g]]
    return Census(bool(involutions), pairing, involutions)


# ---------------------------------------------------------------------------
# modules


def _reduce_rows(mat: np.ndarray, moduli: np.ndarray) -> np.ndarray:
    # row i of each matrix modulo moduli[i]
    return mat % moduli[:, None]


def _matmul_mod(a: np.ndarray, b: np.ndarray, moduli: np.ndarray) -> np.ndarray:
    return _reduce_rows(a @ b, moduli)


def _is_automorphism(mat: np.ndarray, exponents: Sequence[int]) -> bool:
    moduli = np.array(exponents, dtype=np.int64)
    elems = np.array(list(itertools.product(*(range(d) for d in exponents))), dtype=np.int64)
    images = (elems @ mat.T) % moduli
    return len({tuple(r) for r in images.tolist()}) == len(elems)


def _check_well_defined(mat, exponents, moduli, g):
    # e_j has order d_j, so its image must be killed by d_j
    for j, d in enumerate(exponents):
        if np.any((d * mat[:, j]) % moduli):
            raise ValidationError(
                f"action matrix of element {g} is not well defined on Z/{d} (column {j})",
                witness=(g, j))


def _expand_generators(G: FiniteGroup, gens: dict[int, np.ndarray], moduli) -> np.ndarray:
    k = len(moduli)
    eye = np.eye(k, dtype=np.int64) % moduli[:, None]
    known = {0: eye}
    queue = [0]
    while queue:
        g = queue.pop(0)
        for h, mh in gens.items():
            gh = G.mul(g, h)
            m = _matmul_mod(known[g], mh, moduli)
            if gh not in known:
                known[gh] = m
                queue.append(gh)
            elif not np.array_equal(known[gh], m):
                raise ValidationError(f"homomorphism-property violation: generator words disagree at "
                                      f"element {gh} (from {g}*{h})", witness=(g, h))
    if len(known) != G.order:
        missing = sorted(set(range(G.order)) - set(known))
        raise ValidationError(f"generator matrices do not generate the group (missing {missing[:5]})",
                              witness=tuple(missing[:1]))
    return np.stack([known[g] for g in range(G.order)])


def _sign_character(G: FiniteGroup) -> np.ndarray:
    squares = {G.mul(g, g) for g in range(G.order)}
    sub = {0}
    frontier = set(squares)
    while frontier:
        sub |= frontier
        frontier = {G.mul(a, b) for a in sub for b in sub} - sub
    if 2 * len(sub) != G.order:
        raise ValidationError(f"sign action not applicable: {G.name or 'group'} has no unique "
                              f"index-2 subgroup generated by squares")
    return np.array([1 if g in sub else -1 for g in range(G.order)], dtype=np.int64)


def validate_module(G: FiniteGroup, exponents: Sequence[int], action="trivial", name: str = "") -> GModule:
    """Build and validate a G-module.

    ``action`` is one of ``"trivial"``, ``"sign"`` (multiplication by the
    sign character of ``G``), ``{"generator_matrices": {g: matrix}}``,
    ``{"element_matrices": [matrix per element]}`` or a sequence of
    per-element matrices.
    """
    exponents = tuple(int(d) for d in exponents)
    for i, d in enumerate(exponents):
        if d < 2:
            raise ValidationError(f"malformed exponents: d_{i} = {d} < 2", witness=(i,))
    k = len(exponents)
    moduli = np.array(exponents, dtype=np.int64)
    eye = np.eye(k, dtype=np.int64)
    n = G.order

    if action is None or action == "trivial":
        mats = np.broadcast_to(eye, (n, k, k)).copy()
    elif action == "sign":
        chi = _sign_character(G)
        mats = chi[:, None, None] * eye[None]
    elif isinstance(action, dict) and "generator_matrices" in action:
        gens = {}
        for key, m in action["generator_matrices"].items():
            g = int(key)
            if not 0 <= g < n:
                raise ValidationError(f"generator index {g} out of range", witness=(g,))
            m = np.array(m, dtype=np.int64).reshape(k, k)
            _check_well_defined(m, exponents, moduli, g)
            m = _reduce_rows(m, moduli)
            if not _is_automorphism(m, exponents):
                raise ValidationError(f"non-invertible action matrix for element {g}", witness=(g,))
            gens[g] = m
        mats = _expand_generators(G, gens, moduli)
    else:
        if isinstance(action, dict):
            if "element_matrices" not in action:
                raise ValidationError(f"unknown action specification keys {sorted(action)}")
            action = action["element_matrices"]
        mats = np.array(action, dtype=np.int64)
        if mats.shape != (n, k, k):
            raise ValidationError(f"element_matrices must have shape {(n, k, k)}, got {mats.shape}")

    mats = _reduce_rows(mats, moduli) if k else mats
    for g in range(n):
        _check_well_defined(mats[g], exponents, moduli, g)
    ident = eye % moduli[:, None] if k else eye
    if not np.array_equal(mats[0], ident):
        raise ValidationError("action of the identity is not the identity matrix", witness=(0,))
    for g in range(n):
        if not np.array_equal(_matmul_mod(mats[g], mats[G.inv[g]], moduli), ident):
            raise ValidationError(f"non-invertible action matrix for element {g}", witness=(g,))
    for g in range(n):
        for h in range(n):
            if not np.array_equal(mats[G.table[g, h]], _matmul_mod(mats[g], mats[h], moduli)):
                raise ValidationError(f"homomorphism-property violation at ({g},{h})", witness=(g, h))
    return GModule(G, exponents, _frozen(mats), name=name or _default_name(action, exponents))


def _default_name(action, exponents) -> str:
    kind = action if isinstance(action, str) else "twisted"
    return f"{kind}:" + "x".join(str(d) for d in exponents)


def trivial_module(G: FiniteGroup, *exponents: int) -> GModule:
    return validate_module(G, exponents, "trivial")


def sign_module(G: FiniteGroup, d: int) -> GModule:
    return validate_module(G, (d,), "sign")


def act(M: GModule, g: int, m) -> tuple[int, ...]:
    """``g . m`` for a module element given as a residue tuple."""
    v = M.action[g] @ np.asarray(m, dtype=np.int64)
    return tuple(int(x) % d for x, d in zip(v, M.exponents))
