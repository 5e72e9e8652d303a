"""Group extensions, crossed modules, crossed extensions and their s-sections.

Conventions: every group element is an index into its group's table with
the identity at 0. ``raction[r, t]`` is the left action ``r`` applied to
``t``. An s-section is the pair ``(s, sigma)`` with ``p(s(x)) = x`` and
``s(x) s(y) = boundary(sigma(x, y)) s(xy)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteGroup, GModule, build_cyclic, direct_product, order_two_census, validate_group
from .cochains import Cochain, is_normalized
from .cohomology import is_coboundary, is_cocycle
from .errors import BudgetExceeded, InternalInconsistency, TwoTorsionError, ValidationError
from .linalg import solve_mod

__all__ = [
    "CrossedModule",
    "CrossedExtension",
    "SSection",
    "GroupExtension",
    "SymmetricSearch",
    "validate_crossed_module",
    "validate_crossed_extension",
    "make_section",
    "normalised_section",
    "weakly_symmetric_section",
    "three_cocycle",
    "inverse_identities_check",
    "symmetric_identities_check",
    "find_symmetric_section",
    "random_normalised_section",
    "random_weakly_symmetric_section",
    "extension_from_2cocycle",
    "validate_group_extension",
    "symmetric_section_search_2d",
    "cocycle_from_section",
    "module_as_group",
    "trivial_crossed_extension",
    "cyclic_crossed_extension",
    "product_crossed_extension",
    "relabel_extension",
    "realize_3cocycle",
]


def _arr(x) -> np.ndarray:
    a = np.array(x, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CrossedModule:
    T: FiniteGroup
    R: FiniteGroup
    boundary: np.ndarray  # T -> R
    raction: np.ndarray  # (|R|, |T|)

    def act(self, r: int, t: int) -> int:
        return int(self.raction[r, t])


@dataclass(frozen=True, eq=False)
class CrossedExtension:
    """``0 -> M -> T -> R -> G -> 0`` with ``iota`` listing T-indices of M-elements."""

    xm: CrossedModule
    G: FiniteGroup
    M: GModule
    iota: np.ndarray  # M-element index -> T index
    pi: np.ndarray  # R -> G
    m_of_t: np.ndarray = field(repr=False)  # T index -> M-element index, -1 off the kernel
    name: str = ""

    @property
    def T(self) -> FiniteGroup:
        return self.xm.T

    @property
    def R(self) -> FiniteGroup:
        return self.xm.R

    def pull_back(self, t: int) -> tuple[int, ...]:
        i = int(self.m_of_t[t])
        if i < 0:
            raise InternalInconsistency(f"T-element {t} is not in the kernel of the boundary")
        return self.M.element(i)


@dataclass(frozen=True, eq=False)
class SSection:
    s: np.ndarray  # G -> R
    sigma: np.ndarray  # (|G|, |G|) -> T
    normalized: bool
    weakly_symmetric: bool
    symmetric: bool


@dataclass(frozen=True, eq=False)
class GroupExtension:
    K: FiniteGroup
    G: FiniteGroup
    M: GModule
    i: np.ndarray  # M-element index -> K
    p: np.ndarray  # K -> G


@dataclass(frozen=True)
class SymmetricSearch:
    """Outcome of :func:`find_symmetric_section`."""

    section: SSection | None
    in_theorem_scope: bool
    s_choices: int  # number of object maps examined

    @property
    def found(self) -> bool:
        return self.section is not None


# ---------------------------------------------------------------------------
# validation


def _is_hom(A: FiniteGroup, B: FiniteGroup, f: np.ndarray):
    lhs = f[A.table]
    rhs = B.table[f[:, None], f[None, :]]
    bad = np.argwhere(lhs != rhs)
    return None if not len(bad) else tuple(int(x) for x in bad[0])


def validate_crossed_module(T: FiniteGroup, R: FiniteGroup, boundary, raction) -> CrossedModule:
    bd = np.asarray(boundary, dtype=np.int64)
    ra = np.asarray(raction, dtype=np.int64)
    if bd.shape != (T.order,) or np.any((bd < 0) | (bd >= R.order)):
        raise ValidationError(f"boundary must list {T.order} R-indices", path="$.boundary")
    if ra.shape != (R.order, T.order) or np.any((ra < 0) | (ra >= T.order)):
        raise ValidationError(f"raction must be a {R.order}x{T.order} table of T-indices", path="$.raction")
    w = _is_hom(T, R, bd)
    if w:
        raise ValidationError(f"boundary is not a homomorphism at {w}", path="$.boundary", witness=w)
    if not np.array_equal(ra[0], np.arange(T.order)):
        t = int(np.flatnonzero(ra[0] != np.arange(T.order))[0])
        raise ValidationError("identity of R does not act trivially", path=f"$.raction[0][{t}]", witness=(0, t))
    for r in range(R.order):
        if len(set(ra[r].tolist())) != T.order:
            raise ValidationError(f"action of {r} is not a bijection", path=f"$.raction[{r}]", witness=(r,))
        w = _is_hom(T, T, ra[r])
        if w:
            raise ValidationError(f"action of {r} is not a homomorphism at {w}", path=f"$.raction[{r}]",
                                  witness=(r,) + w)
    # raction[r r'] = raction[r] o raction[r']
    comp = ra[np.arange(R.order)[:, None, None], ra[None, :, :]]
    bad = np.argwhere(ra[R.table] != comp)
    if len(bad):
        r, r2, t = (int(x) for x in bad[0])
        raise ValidationError(f"raction is not an action: ({r}*{r2}) . {t}", path=f"$.raction[{R.mul(r, r2)}][{t}]",
                              witness=(r, r2, t))
    # equivariance: d(r.t) = r d(t) r^-1
    lhs = bd[ra]
    rr = np.arange(R.order)[:, None]
    rhs = R.table[R.table[rr, bd[None, :]], R.inv[rr]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        r, t = (int(x) for x in bad[0])
        raise ValidationError(f"equivariance violated at (r={r}, t={t})", path=f"$.raction[{r}][{t}]",
                              witness=(r, t))
    # Peiffer: d(t) . s = t s t^-1
    lhs = ra[bd]  # [t, s]
    tt = np.arange(T.order)[:, None]
    rhs = T.table[T.table[tt, np.arange(T.order)[None, :]], T.inv[tt]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        t, s = (int(x) for x in bad[0])
        raise ValidationError(f"Peiffer identity violated at (t={t}, s={s})",
                              path=f"$.raction[{int(bd[t])}][{s}]", witness=(t, s))
    return CrossedModule(T, R, _arr(bd), _arr(ra))


def _iota_table(M: GModule, T: FiniteGroup, iota_gens) -> np.ndarray:
    gens = [int(x) for x in iota_gens]
    if len(gens) != M.rank:
        raise ValidationError(f"iota must list {M.rank} generator images", path="$.iota")
    out = np.zeros(M.size, dtype=np.int64)
    for idx, m in enumerate(M.elements()):
        t = 0
        for g, e in zip(gens, m):
            for _ in range(e):
                t = T.mul(t, g)
        out[idx] = t
    return out


def validate_crossed_extension(xm: CrossedModule, G: FiniteGroup, M: GModule, iota, pi,
                               name: str = "", iota_is_table: bool = False) -> CrossedExtension:
    """Check exactness of ``0 -> M -> T -> R -> G -> 0`` and the induced action.

    ``iota`` lists T-images of the canonical generators of M (or, with
    ``iota_is_table``, of every M-element in index order).
    """
    if M.group is not G:
        raise ValidationError("the module must be a module over the extension's G", path="$.M")
    T, R = xm.T, xm.R
    if iota_is_table:
        io = np.asarray(iota, dtype=np.int64)
        if io.shape != (M.size,):
            raise ValidationError(f"iota table must have {M.size} entries", path="$.iota")
    else:
        io = _iota_table(M, T, iota)
    pi = np.asarray(pi, dtype=np.int64)
    if pi.shape != (R.order,) or np.any((pi < 0) | (pi >= G.order)):
        raise ValidationError(f"pi must list {R.order} G-indices", path="$.pi")
    # iota: injective homomorphism onto ker(boundary)
    elems = list(M.elements())
    for a_i, a in enumerate(elems):
        for b_i, b in enumerate(elems):
            if io[M.index_of(M.add(a, b))] != T.mul(int(io[a_i]), int(io[b_i])):
                raise ValidationError(f"iota is not a homomorphism at ({a}, {b})", path="$.iota", witness=(a, b))
    if len(set(io.tolist())) != M.size:
        raise ValidationError("iota is not injective", path="$.iota")
    ker = set(np.flatnonzero(xm.boundary == 0).tolist())
    if set(io.tolist()) != ker:
        extra = sorted(ker.symmetric_difference(io.tolist()))
        raise ValidationError(f"exactness at T fails: image of iota != ker(boundary) (e.g. {extra[0]})",
                              path="$.iota", witness=(extra[0],))
    w = _is_hom(R, G, pi)
    if w:
        raise ValidationError(f"pi is not a homomorphism at {w}", path="$.pi", witness=w)
    if set(pi.tolist()) != set(range(G.order)):
        raise ValidationError("pi is not surjective", path="$.pi")
    im_bd = set(xm.boundary.tolist())
    ker_pi = set(np.flatnonzero(pi == 0).tolist())
    if im_bd != ker_pi:
        r = sorted(im_bd.symmetric_difference(ker_pi))[0]
        raise ValidationError(f"exactness at R fails: ker(pi) != im(boundary) (e.g. {r})", path="$.pi",
                              witness=(r,))
    m_of_t = np.full(T.order, -1, dtype=np.int64)
    m_of_t[io] = np.arange(M.size)
    # induced action of G on M equals the prescribed one
    for r in range(R.order):
        g = int(pi[r])
        for mi, m in enumerate(elems):
            got = int(m_of_t[xm.raction[r, io[mi]]])
            want = M.index_of(tuple(int(x) for x in (M.action[g] @ np.array(m, dtype=np.int64))))
            if got != want:
                raise ValidationError(f"action mismatch: R-element {r} acts on iota({m}) unlike G-element {g}",
                                      path=f"$.raction[{r}][{int(io[mi])}]", witness=(r, m))
    return CrossedExtension(xm, G, M, _arr(io), _arr(pi), _arr(m_of_t), name=name)


# ---------------------------------------------------------------------------
# sections


def _preimages(f: np.ndarray, size: int) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(size)]
    for i, v in enumerate(f.tolist()):
        out[v].append(i)
    return out


def _least_sigma(xe: CrossedExtension, s: np.ndarray) -> np.ndarray:
    """sigma(x, y) = least preimage of s(x) s(y) s(xy)^-1 (-1 if none)."""
    G, R = xe.G, xe.R
    pre = _preimages(xe.xm.boundary, R.order)
    least = np.array([p[0] if p else -1 for p in pre], dtype=np.int64)
    xs = np.arange(G.order)
    prod = R.table[R.table[s[xs[:, None]], s[xs[None, :]]], R.inv[s[G.table]]]
    return least[prod]


def _flags(xe: CrossedExtension, s, sigma):
    G, R = xe.G, xe.R
    x = np.arange(G.order)
    normalized = bool(s[0] == 0 and not sigma[0].any() and not sigma[:, 0].any())
    weak = normalized and bool(np.array_equal(s[G.inv], R.inv[s])) and not sigma[x, G.inv[x]].any()
    return normalized, weak


def make_section(xe: CrossedExtension, s, sigma) -> SSection:
    """Validate ``(s, sigma)`` and compute its flags."""
    G, R, T = xe.G, xe.R, xe.T
    s = np.asarray(s, dtype=np.int64)
    sigma = np.asarray(sigma, dtype=np.int64)
    if s.shape != (G.order,) or sigma.shape != (G.order, G.order):
        raise ValidationError("section has the wrong shape")
    if np.any((s < 0) | (s >= R.order)) or np.any((sigma < 0) | (sigma >= T.order)):
        raise ValidationError("section entries out of range")
    if not np.array_equal(xe.pi[s], np.arange(G.order)):
        x = int(np.flatnonzero(xe.pi[s] != np.arange(G.order))[0])
        raise ValidationError(f"p(s(x)) != x at x={x}", witness=(x,))
    xs = np.arange(G.order)
    lhs = R.table[s[xs[:, None]], s[xs[None, :]]]
    rhs = R.table[xe.xm.boundary[sigma], s[G.table]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise ValidationError(f"s(x)s(y) != d(sigma(x,y)) s(xy) at ({x},{y})", witness=(x, y))
    normalized, weak = _flags(xe, s, sigma)
    sym = weak and _symmetric_section_identities(xe, s, sigma)
    return SSection(_arr(s), _arr(sigma), normalized, weak, sym)


def normalised_section(xe: CrossedExtension) -> SSection:
    """s(x) = least preimage (s(1) = 1), sigma = least boundary preimage."""
    pre = _preimages(xe.pi, xe.G.order)
    s = np.array([0] + [pre[x][0] for x in range(1, xe.G.order)], dtype=np.int64)
    return make_section(xe, s, _least_sigma(xe, s))


def weakly_symmetric_section(xe: CrossedExtension) -> SSection:
    """Inverse-preserving normalized section for groups without involutions."""
    census = order_two_census(xe.G)
    if census.has_order_two:
        g = census.involutions[0]
        raise TwoTorsionError(f"two-torsion present: element {g} of {xe.G.name or 'G'} has order 2",
                              witness=(g,))
    pre = _preimages(xe.pi, xe.G.order)
    s = np.zeros(xe.G.order, dtype=np.int64)
    for x, xinv in census.pairing:
        s[x] = pre[x][0]
        s[xinv] = xe.R.inv[s[x]]
    sec = make_section(xe, s, _least_sigma(xe, s))
    if not sec.weakly_symmetric:
        raise InternalInconsistency("constructed section is not weakly symmetric")
    return sec


def random_normalised_section(xe: CrossedExtension, rng: np.random.Generator) -> SSection:
    """A normalized section with random preimage choices and sigma twist."""
    G, M, T = xe.G, xe.M, xe.T
    pre = _preimages(xe.pi, G.order)
    s = np.array([0] + [pre[x][rng.integers(len(pre[x]))] for x in range(1, G.order)], dtype=np.int64)
    sigma0 = _least_sigma(xe, s)
    c = rng.integers(0, M.size, size=(G.order, G.order))
    c[0, :] = 0
    c[:, 0] = 0
    sigma = T.table[sigma0, xe.iota[c]]
    return make_section(xe, s, sigma)


def random_weakly_symmetric_section(xe: CrossedExtension, rng: np.random.Generator) -> SSection:
    """Random inverse-preserving object map with sigma twisted by a normalized
    ``c`` vanishing on every ``(x, x^-1)``."""
    G, M, T = xe.G, xe.M, xe.T
    census, slots = _object_map_choices(xe)
    s = np.zeros(G.order, dtype=np.int64)
    for slot in slots:
        if not slot:
            raise ValidationError("no inverse-preserving object map exists")
        x, r, rinv = slot[rng.integers(len(slot))]
        s[x] = r
        s[G.inv[x]] = rinv
    sigma0 = _least_sigma(xe, s)
    c = rng.integers(0, M.size, size=(G.order, G.order))
    c[0, :] = 0
    c[:, 0] = 0
    c[np.arange(G.order), G.inv] = 0
    sec = make_section(xe, s, T.table[sigma0, xe.iota[c]])
    if not sec.weakly_symmetric:
        raise InternalInconsistency("random section is not weakly symmetric")
    return sec


# ---------------------------------------------------------------------------
# the 3-cocycle and the symmetry conditions


def three_cocycle(xe: CrossedExtension, sec: SSection) -> Cochain:
    """f(x,y,z) = s(x).sigma(y,z) sigma(x,yz) sigma(xy,z)^-1 sigma(x,y)^-1, pulled back to M."""
    G, T, M = xe.G, xe.T, xe.M
    q = G.order
    x, y, z = (a.ravel() for a in np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij"))
    mul, inv, sg = T.table, T.inv, sec.sigma
    xy, yz = G.table[x, y], G.table[y, z]
    t = mul[xe.xm.raction[sec.s[x], sg[y, z]], sg[x, yz]]
    t = mul[mul[t, inv[sg[xy, z]]], inv[sg[x, y]]]
    mi = xe.m_of_t[t]
    if np.any(mi < 0):
        j = int(np.flatnonzero(mi < 0)[0])
        raise InternalInconsistency(f"3-cocycle value at {(int(x[j]), int(y[j]), int(z[j]))} "
                                    f"is outside ker(boundary): invalid section")
    vals = np.array([M.element(int(i)) for i in mi], dtype=np.int64).reshape(q ** 3, M.rank)
    f = Cochain(3, vals)
    if sec.normalized and not is_normalized(G, f):
        raise InternalInconsistency("normalized section produced a non-normalized 3-cocycle")
    if not is_cocycle(G, M, f):
        raise InternalInconsistency("3-cocycle fails the cocycle identity")
    return f


def inverse_identities_check(xe: CrossedExtension, sec: SSection) -> bool:
    """Both identities
    s(x).sigma(x^-1, y) sigma(x, x^-1 y) = sigma(x, x^-1) and
    sigma(x, y) sigma(xy, y^-1) = s(x).sigma(y, y^-1), for all x, y."""
    G, T = xe.G, xe.T
    q = G.order
    x, y = np.divmod(np.arange(q * q), q)
    xi, yi = G.inv[x], G.inv[y]
    sg, mul, ra = sec.sigma, T.table, xe.xm.raction
    lhs1 = mul[ra[sec.s[x], sg[xi, y]], sg[x, G.table[xi, y]]]
    rhs1 = sg[x, xi]
    lhs2 = mul[sg[x, y], sg[G.table[x, y], yi]]
    rhs2 = ra[sec.s[x], sg[y, yi]]
    return bool(np.array_equal(lhs1, rhs1) and np.array_equal(lhs2, rhs2))


def _symmetric_section_identities(xe, s, sigma) -> bool:
    G, T = xe.G, xe.T
    q = G.order
    x, y = np.divmod(np.arange(q * q), q)
    xi, yi = G.inv[x], G.inv[y]
    mul, ra = T.table, xe.xm.raction
    xy = G.table[x, y]
    one = mul[sigma[x, y], ra[s[x], sigma[xi, xy]]]
    two = mul[sigma[x, y], sigma[xy, yi]]
    return not one.any() and not two.any()


def symmetric_identities_check(xe: CrossedExtension, sec: SSection) -> bool:
    """Weakly symmetric and both ``sigma(x,y) . s(x).sigma(x^-1, xy) = 1`` and
    ``sigma(x,y) sigma(xy, y^-1) = 1``."""
    normalized, weak = _flags(xe, sec.s, sec.sigma)
    return weak and _symmetric_section_identities(xe, sec.s, sec.sigma)


def _object_map_choices(xe: CrossedExtension):
    """Candidate object maps s: normalized and inverse preserving."""
    G, R = xe.G, xe.R
    census = order_two_census(G)
    pre = _preimages(xe.pi, G.order)
    slots = []
    for x, xinv in census.pairing:
        slots.append([(x, r, int(R.inv[r])) for r in pre[x]])
    for x in census.involutions:
        slots.append([(x, r, r) for r in pre[x] if R.mul(r, r) == 0])
    return census, slots


def _solve_sigma(xe: CrossedExtension, s: np.ndarray):
    """Find sigma making (s, sigma) a symmetric section, or None.

    sigma = sigma0 * iota(c) with c: G x G -> M; every condition is linear
    in c because iota(M) is central and s(x) acts on it through x.
    """
    G, M, T = xe.G, xe.M, xe.T
    q, k = G.order, M.rank
    sigma0 = _least_sigma(xe, s)
    if np.any(sigma0 < 0):
        return None
    x, y = np.divmod(np.arange(q * q), q)
    xi, yi = G.inv[x], G.inv[y]
    xy = G.table[x, y]
    mul, ra = T.table, xe.xm.raction
    eqs = []  # (list of (coef matrix, pair index)), rhs T-element

    def pair(a, b):
        return int(a) * q + int(b)

    eye = np.eye(k, dtype=np.int64)
    for a in range(q):
        eqs.append(([(eye, pair(0, a))], int(sigma0[0, a])))
        eqs.append(([(eye, pair(a, 0))], int(sigma0[a, 0])))
        eqs.append(([(eye, pair(a, G.inv[a]))], int(sigma0[a, G.inv[a]])))
    one = mul[sigma0[x, y], ra[s[x], sigma0[xi, xy]]]
    two = mul[sigma0[x, y], sigma0[xy, yi]]
    for j in range(q * q):
        eqs.append(([(eye, pair(x[j], y[j])), (M.action[x[j]], pair(xi[j], xy[j]))], int(one[j])))
        eqs.append(([(eye, pair(x[j], y[j])), (eye, pair(xy[j], yi[j]))], int(two[j])))
    A = np.zeros((len(eqs) * k, q * q * k), dtype=np.int64)
    b = np.zeros(len(eqs) * k, dtype=np.int64)
    for e, (terms, t) in enumerate(eqs):
        mi = int(xe.m_of_t[t])
        if mi < 0:
            return None  # the product is not even in ker(boundary)
        for coef, col in terms:
            A[e * k:(e + 1) * k, col * k:(col + 1) * k] += coef
        b[e * k:(e + 1) * k] = -np.array(M.element(mi), dtype=np.int64)
    sol = solve_mod(A, b, np.tile(M.moduli, len(eqs)))
    if sol is None:
        return None
    c = np.array(sol, dtype=np.int64).reshape(q * q, k) % M.moduli
    cidx = np.array([M.index_of(v) for v in c.tolist()], dtype=np.int64).reshape(q, q)
    return mul[sigma0, xe.iota[cidx]]


def find_symmetric_section(xe: CrossedExtension, budget: int = 100_000) -> SymmetricSearch:
    """Search for a symmetric s-section.

    Object maps range over normalized inverse-preserving choices (the only
    ones admitting weakly symmetric sections); for each, the admissible
    sigma form a coset of M-valued 2-cochains and the symmetry identities
    are linear, so one congruence solve settles it. A None section is a
    definitive non-existence verdict. Raises BudgetExceeded if more than
    ``budget`` object maps would be needed.
    """
    census, slots = _object_map_choices(xe)
    in_scope = not census.has_order_two
    count = 0
    for choice in itertools.product(*slots):
        count += 1
        if count > budget:
            raise BudgetExceeded(f"more than {budget} object maps; search incomplete")
        s = np.zeros(xe.G.order, dtype=np.int64)
        for x, r, rinv in choice:
            s[x] = r
            s[xe.G.inv[x]] = rinv
        sigma = _solve_sigma(xe, s)
        if sigma is not None:
            sec = make_section(xe, s, sigma)
            if not (sec.symmetric and symmetric_identities_check(xe, sec)):
                raise InternalInconsistency("solved section fails the symmetry identities")
            return SymmetricSearch(sec, in_scope, count)
    return SymmetricSearch(None, in_scope, count)


# ---------------------------------------------------------------------------
# ordinary extensions


def extension_from_2cocycle(G: FiniteGroup, M: GModule, f: Cochain) -> GroupExtension:
    """Twisted product ``M x G`` with ``(m,x)(m',y) = (m + x.m' + f(x,y), xy)``.

    Element ``(m, x)`` has index ``index(m) * |G| + x``.
    """
    if f.degree != 2:
        raise ValidationError("expects a 2-cochain")
    if not is_normalized(G, f):
        raise ValidationError("f is not normalized")
    q = G.order
    elems = np.array(list(M.elements()), dtype=np.int64).reshape(M.size, M.rank)
    mi, xi = np.divmod(np.arange(M.size * q), q)
    m1, x1 = mi[:, None], xi[:, None]
    m2, x2 = mi[None, :], xi[None, :]
    acted = np.einsum("abij,abj->abi", M.action[np.broadcast_to(x1, (len(mi), len(mi)))],
                      elems[np.broadcast_to(m2, (len(mi), len(mi)))])
    fv = f.values[x1 * q + x2]
    tot = (elems[m1] + acted + fv) % M.moduli
    weights = np.array([int(np.prod(M.exponents[j + 1:])) for j in range(M.rank)], dtype=np.int64)
    midx = tot @ weights
    table = midx * q + G.table[x1, x2]
    try:
        K = validate_group(table.tolist(), name=f"{M.name}x_f{G.name}")
    except ValidationError as e:
        raise ValidationError(f"f is not a cocycle: twisted product fails ({e})", witness=e.witness) from None
    ext = GroupExtension(K, G, M, _arr(np.arange(M.size) * q), _arr(np.arange(M.size * q) % q))
    validate_group_extension(ext)
    return ext


def validate_group_extension(ext: GroupExtension) -> GroupExtension:
    K, G, M = ext.K, ext.G, ext.M
    if _is_hom(K, G, np.asarray(ext.p)):
        raise ValidationError("p is not a homomorphism")
    if set(ext.p.tolist()) != set(range(G.order)):
        raise ValidationError("p is not surjective")
    if set(ext.i.tolist()) != set(np.flatnonzero(ext.p == 0).tolist()) or len(set(ext.i.tolist())) != M.size:
        raise ValidationError("i is not an isomorphism onto ker(p)")
    for k in range(K.order):
        for mi, m in enumerate(M.elements()):
            conj = K.mul(K.mul(k, int(ext.i[mi])), int(K.inv[k]))
            want = int(ext.i[M.index_of(tuple(int(v) for v in M.action[ext.p[k]] @ np.array(m)))])
            if conj != want:
                raise ValidationError(f"conjugation condition fails at k={k}, m={m}", witness=(k, m))
    return ext


def cocycle_from_section(ext: GroupExtension, s) -> Cochain:
    """f with s(x)s(y) = i(f(x,y)) s(xy)."""
    K, G, M = ext.K, ext.G, ext.M
    m_of_k = {int(k): j for j, k in enumerate(ext.i.tolist())}
    vals = []
    for x in range(G.order):
        for y in range(G.order):
            t = K.mul(K.mul(int(s[x]), int(s[y])), int(K.inv[s[G.mul(x, y)]]))
            vals.append(M.element(m_of_k[t]))
    return Cochain(2, np.array(vals, dtype=np.int64).reshape(G.order ** 2, M.rank))


def symmetric_section_search_2d(ext: GroupExtension, max_states: int = 10_000_000):
    """A set-section ``s`` with ``s(x^-1) = s(x)^-1`` for all x, or None.

    The constraint only couples ``x`` with ``x^-1``, so the exhaustive search
    over all sections factors into independent searches per pair.
    """
    K, G = ext.K, ext.G
    if ext.M.size ** G.order > max_states and ext.M.size * G.order > max_states:
        raise BudgetExceeded("section space too large")
    pre = _preimages(np.asarray(ext.p), G.order)
    s = [-1] * G.order
    for x in range(G.order):
        xinv = int(G.inv[x])
        if s[x] >= 0:
            continue
        if xinv == x:
            ok = [k for k in pre[x] if K.mul(k, k) == 0]
            if not ok:
                return None
            s[x] = ok[0]
        else:
            s[x] = pre[x][0]
            s[xinv] = int(K.inv[s[x]])
    return s


# ---------------------------------------------------------------------------
# builders


def module_as_group(M: GModule) -> FiniteGroup:
    """The abelian group underlying M, indexed like ``M.index_of``."""
    if M.rank == 0:
        return build_cyclic(1)
    out = build_cyclic(M.exponents[0])
    for d in M.exponents[1:]:
        out = direct_product(out, build_cyclic(d))
    return out


def trivial_crossed_extension(M: GModule, name: str = "") -> CrossedExtension:
    """``0 -> M = M -> G = G -> 0`` with trivial boundary."""
    G = M.group
    T = module_as_group(M)
    elems = np.array(list(M.elements()), dtype=np.int64).reshape(M.size, M.rank)
    weights = np.array([int(np.prod(M.exponents[j + 1:])) for j in range(M.rank)], dtype=np.int64)
    raction = np.stack([((elems @ M.action[g].T) % M.moduli) @ weights for g in range(G.order)]) \
        if M.rank else np.zeros((G.order, 1), dtype=np.int64)
    xm = validate_crossed_module(T, G, np.zeros(T.order, dtype=np.int64), raction)
    return validate_crossed_extension(xm, G, M, np.arange(M.size), np.arange(G.order),
                                      name=name or f"trivial({G.name},{M.name})", iota_is_table=True)


def cyclic_crossed_extension(p: int) -> CrossedExtension:
    """``0 -> Z/p -> Z/p^2 --(*p)--> Z/p^2 -> Z/p -> 0`` with trivial actions."""
    from .algebra import trivial_module

    G = build_cyclic(p)
    M = trivial_module(G, p)
    T = build_cyclic(p * p)
    R = build_cyclic(p * p)
    bd = (p * np.arange(p * p)) % (p * p)
    xm = validate_crossed_module(T, R, bd, np.tile(np.arange(p * p), (p * p, 1)))
    return validate_crossed_extension(xm, G, M, [p], np.arange(p * p) % p, name=f"X{p * p}")


def product_crossed_extension(a: CrossedExtension, b: CrossedExtension) -> CrossedExtension:
    """Componentwise product of two crossed extensions."""
    from .algebra import validate_module

    G = direct_product(a.G, b.G)
    T = direct_product(a.T, b.T)
    R = direct_product(a.R, b.R)
    nTb, nRb, nGb = b.T.order, b.R.order, b.G.order
    t1, t2 = np.divmod(np.arange(T.order), nTb)
    r1, r2 = np.divmod(np.arange(R.order), nRb)
    bd = a.xm.boundary[t1] * nRb + b.xm.boundary[t2]
    ra = a.xm.raction[r1[:, None], t1[None, :]] * nTb + b.xm.raction[r2[:, None], t2[None, :]]
    xm = validate_crossed_module(T, R, bd, ra)
    ka, kb = a.M.rank, b.M.rank
    g1, g2 = np.divmod(np.arange(G.order), nGb)
    mats = np.zeros((G.order, ka + kb, ka + kb), dtype=np.int64)
    mats[:, :ka, :ka] = a.M.action[g1]
    mats[:, ka:, ka:] = b.M.action[g2]
    M = validate_module(G, a.M.exponents + b.M.exponents, {"element_matrices": mats.tolist()},
                        name=f"{a.M.name}+{b.M.name}")
    gens = [int(a.iota[a.M.index_of(tuple(int(i == j) for j in range(ka)))]) * nTb for i in range(ka)]
    gens += [int(b.iota[b.M.index_of(tuple(int(i == j) for j in range(kb)))]) for i in range(kb)]
    pi = a.pi[r1] * nGb + b.pi[r2]
    return validate_crossed_extension(xm, G, M, gens, pi, name=f"{a.name}*{b.name}")


def relabel_extension(xe: CrossedExtension, perm_T=None, perm_R=None) -> CrossedExtension:
    """Transport the structure along bijections fixing 0 (old index -> new index)."""

    def relabel_group(H: FiniteGroup, perm):
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(perm)
        table = perm[H.table[inv[:, None], inv[None, :]]]
        return validate_group(table.tolist(), name=H.name + "'"), perm, inv

    T, R = xe.T, xe.R
    pT = np.arange(T.order) if perm_T is None else np.asarray(perm_T)
    pR = np.arange(R.order) if perm_R is None else np.asarray(perm_R)
    if pT[0] != 0 or pR[0] != 0:
        raise ValidationError("relabelings must fix the identity")
    T2, pT, iT = relabel_group(T, pT)
    R2, pR, iR = relabel_group(R, pR)
    bd = pR[xe.xm.boundary[iT]]
    ra = pT[xe.xm.raction[iR[:, None], iT[None, :]]]
    xm = validate_crossed_module(T2, R2, bd, ra)
    return validate_crossed_extension(xm, xe.G, xe.M, pT[xe.iota], xe.pi[iR], name=xe.name + "'",
                                      iota_is_table=True)


def realize_3cocycle(G: FiniteGroup, M: GModule, f: Cochain, name: str = "") -> CrossedExtension:
    """A crossed extension whose 3-cocycle is cohomologous to ``f`` up to sign.

    Embeds M into the coinduced module ``I = Map(G, M)`` (cohomologically
    trivial), writes ``f = dh`` there, and twists ``I/M x G`` by ``h``. The
    crossed module is ``I -> (I/M) x_h G``. Sizes grow like ``|M|^|G|``.
    """
    from .algebra import validate_module
    from .cochains import coboundary

    if f.degree != 3 or not is_normalized(G, f) or not is_cocycle(G, M, f):
        raise ValidationError("expects a normalized 3-cocycle")
    q, k = G.order, M.rank
    # (x.phi)(g) = phi(g x); the block for g is read from block g x
    mats = np.zeros((q, q * k, q * k), dtype=np.int64)
    for x in range(q):
        for g in range(q):
            mats[x, g * k:(g + 1) * k, G.mul(g, x) * k:(G.mul(g, x) + 1) * k] = np.eye(k, dtype=np.int64)
    I = validate_module(G, tuple(M.exponents) * q, {"element_matrices": mats.tolist()}, name=f"Map({G.name},{M.name})")
    # m -> (g -> g.m)
    embed = np.concatenate([M.action[g] for g in range(q)], axis=0)  # (q k, k)
    emb_vals = (f.values @ embed.T) % I.moduli
    h = is_coboundary(G, I, Cochain(3, emb_vals), "normalized")
    if h is None:
        raise InternalInconsistency("coinduced module has nonzero cohomology")
    if coboundary(G, I, h) != Cochain(3, emb_vals):
        raise InternalInconsistency("bad primitive")
    Ielems = np.array(list(I.elements()), dtype=np.int64)
    weights = np.array([int(np.prod(I.exponents[j + 1:])) for j in range(I.rank)], dtype=np.int64)
    Melems = np.array(list(M.elements()), dtype=np.int64).reshape(M.size, k)
    iota = ((Melems @ embed.T) % I.moduli) @ weights
    coset = np.full(I.size, -1, dtype=np.int64)
    reps = []
    for t in range(I.size):
        if coset[t] < 0:
            members = ((Ielems[t] + Ielems[iota]) % I.moduli) @ weights
            coset[members] = len(reps)
            reps.append(t)
    reps = np.array(reps, dtype=np.int64)
    nc = len(reps)
    # E = (I/M) x_h G, element (c, x) at index c q + x
    c, x = np.divmod(np.arange(nc * q), q)
    rows = []
    for a in range(nc * q):
        ca, xa = divmod(a, q)
        moved = (Ielems[reps[c]] @ I.action[xa].T) % I.moduli
        tot = (Ielems[reps[ca]][None, :] + moved + h.values[xa * q + x]) % I.moduli
        rows.append(coset[tot @ weights] * q + G.table[xa, x])
    R = validate_group(np.array(rows).tolist(), name=f"E({G.name})")
    T = module_as_group(I)
    bd = coset * q
    raction = np.stack([((Ielems @ I.action[r % q].T) % I.moduli) @ weights for r in range(R.order)])
    xm = validate_crossed_module(T, R, bd, raction)
    return validate_crossed_extension(xm, G, M, iota, np.arange(R.order) % q,
                                      name=name or f"realize({G.name},{M.name})", iota_is_table=True)
