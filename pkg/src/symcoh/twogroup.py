"""The strict 2-group of a crossed module and the s-functors of sections.

A morphism of ``Ca_{T->R}`` is a pair ``(t, source)``; it goes from
``source`` to ``boundary(t) * source``. Composition multiplies the
T-labels, ``(t2 . r2) o (t1 . r1) = (t2 t1 . r1)``, and the tensor product is
``(t: r -> z) (x) (u: x -> y) = (t * z.u : r x -> z y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .crossed import CrossedExtension, CrossedModule, SSection, make_section, normalised_section, three_cocycle
from .cochains import Cochain
from .cohomology import is_coboundary
from .errors import InternalInconsistency, SizeGuardError, ValidationError

__all__ = [
    "Morphism",
    "CatGroup",
    "SFunctor",
    "section_functor",
    "is_monoidal",
    "is_symmetric_sfunctor",
    "split_check",
    "SplitVerdict",
]


class Morphism(NamedTuple):
    t: int
    source: int


@dataclass(frozen=True, eq=False)
class CatGroup:
    xm: CrossedModule

    def target(self, f: Morphism) -> int:
        return self.xm.R.mul(int(self.xm.boundary[f.t]), f.source)

    def identity(self, r: int) -> Morphism:
        return Morphism(0, int(r))

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """``g o f``; requires ``g.source == target(f)``."""
        if g.source != self.target(f):
            raise ValidationError(f"cannot compose: {g} after {f}")
        return Morphism(self.xm.T.mul(g.t, f.t), f.source)

    def inverse(self, f: Morphism) -> Morphism:
        return Morphism(int(self.xm.T.inv[f.t]), self.target(f))

    def tensor(self, f: Morphism, g: Morphism) -> Morphism:
        T, R = self.xm.T, self.xm.R
        z = self.target(f)
        return Morphism(T.mul(f.t, self.xm.act(z, g.t)), R.mul(f.source, g.source))

    # exhaustive law checks, vectorized over all morphisms

    def _arrays(self):
        T, R = self.xm.T, self.xm.R
        t, r = np.divmod(np.arange(T.order * R.order), R.order)
        return t, r, R.table[self.xm.boundary[t], r]

    def _tensor_arr(self, t1, r1, z1, t2, r2):
        return self.xm.T.table[t1, self.xm.raction[z1, t2]], self.xm.R.table[r1, r2]

    def check_laws(self, max_cases: int = 50_000_000, seed: int = 0) -> dict[str, bool]:
        """Category, bifunctor and strict-monoidal laws.

        The laws are checked in reduced form: in associativity the leading
        T-label cancels and only the target of the first factor matters, and
        in the interchange law only the labels and the middle object enter.
        Over all reduced tuples this is equivalent to checking every tuple of
        morphisms. When a reduced domain exceeds ``max_cases`` it is sampled
        instead and ``exhaustive`` is False.
        """
        T, R = self.xm.T, self.xm.R
        bd, tmul, rmul, ra = self.xm.boundary, T.table, R.table, self.xm.raction
        nt, nr = T.order, R.order
        rng = np.random.default_rng(seed)
        exhaustive = nt ** 4 * nr <= max_cases and (nt * nr) ** 2 <= max_cases

        def grid(*sizes):
            if exhaustive:
                return [x.ravel() for x in np.meshgrid(*[np.arange(k) for k in sizes], indexing="ij")]
            return [rng.integers(0, k, size=200_000) for k in sizes]

        t, r, z = self._arrays()
        out = {"exhaustive": exhaustive}
        out["inverse"] = bool(np.all(tmul[T.inv[t], t] == 0) and np.all(rmul[bd[T.inv[t]], z] == r))
        r1, r2 = grid(nr, nr)
        ti, ri = self._tensor_arr(np.zeros_like(r1), r1, r1, np.zeros_like(r2), r2)
        out["identity"] = bool(np.all(ti == 0) and np.all(ri == rmul[r1, r2]))
        t1, r1, t2, r2 = grid(nt, nr, nt, nr)
        z1, z2 = rmul[bd[t1], r1], rmul[bd[t2], r2]
        ff_t, ff_r = self._tensor_arr(t1, r1, z1, t2, r2)
        out["tensor_target"] = bool(np.array_equal(rmul[bd[ff_t], ff_r], rmul[z1, z2]))
        # interchange: f = (ta: . -> z), g = (ga: z -> z'), f' = (tb), g' = (gb);
        # (g o f) (x) (g' o f') = (ga ta) * z'.(gb tb) and
        # (g (x) g') o (f (x) f') = (ga * z'.gb) (ta * z.tb)
        ga, ta, z, gb, tb = grid(nt, nt, nr, nt, nt)
        zp = rmul[bd[ga], z]
        lhs = tmul[tmul[ga, ta], ra[zp, tmul[gb, tb]]]
        rhs = tmul[tmul[ga, ra[zp, gb]], tmul[ta, ra[z, tb]]]
        out["interchange"] = bool(np.array_equal(lhs, rhs))
        # associativity of labels: z1.(t2 * z2.t3) = z1.t2 * (z1 z2).t3, and of objects
        z1, t2, z2, t3 = grid(nr, nt, nr, nt)
        lhs = ra[z1, tmul[t2, ra[z2, t3]]]
        rhs = tmul[ra[z1, t2], ra[rmul[z1, z2], t3]]
        a, b, c = grid(nr, nr, nr)
        out["associativity"] = bool(np.array_equal(lhs, rhs)) and \
            bool(np.array_equal(rmul[rmul[a, b], c], rmul[a, rmul[b, c]]))
        return out


@dataclass(frozen=True, eq=False)
class SFunctor:
    """Object map ``F = s`` and structure isomorphisms ``xi(x,y): F(xy) -> F(x)F(y)``."""

    F: np.ndarray
    xi: np.ndarray  # T-labels, (|G|, |G|)
    normalized: bool

    def morphism(self, G, x: int, y: int) -> Morphism:
        return Morphism(int(self.xi[x, y]), int(self.F[G.mul(x, y)]))


def section_functor(xe: CrossedExtension, sec: SSection) -> SFunctor:
    """The s-functor ``Ca_G -> Ca_{T->R}`` of an s-section.

    Checks that every ``xi(x,y)`` ends at ``F(x)F(y)`` and that ``p o F`` is
    the identity of ``G``.
    """
    cg = CatGroup(xe.xm)
    G, R = xe.G, xe.R
    for x in range(G.order):
        if int(xe.pi[sec.s[x]]) != x:
            raise InternalInconsistency(f"p(F({x})) != {x}")
        for y in range(G.order):
            m = Morphism(int(sec.sigma[x, y]), int(sec.s[G.mul(x, y)]))
            if cg.target(m) != R.mul(int(sec.s[x]), int(sec.s[y])):
                raise InternalInconsistency(f"xi({x},{y}) has the wrong target")
    return SFunctor(sec.s, sec.sigma, sec.normalized)


def is_monoidal(xe: CrossedExtension, sf: SFunctor) -> bool:
    """``(xi(x,y) (x) Id) o xi(xy,z) == (Id (x) xi(y,z)) o xi(x,yz)`` for all x, y, z."""
    cg = CatGroup(xe.xm)
    G = xe.G
    for x in range(G.order):
        for y in range(G.order):
            xy = G.mul(x, y)
            for z in range(G.order):
                left = cg.compose(cg.tensor(sf.morphism(G, x, y), cg.identity(int(sf.F[z]))),
                                  sf.morphism(G, xy, z))
                right = cg.compose(cg.tensor(cg.identity(int(sf.F[x])), sf.morphism(G, y, z)),
                                   sf.morphism(G, x, G.mul(y, z)))
                if left != right:
                    return False
    return True


def is_symmetric_sfunctor(xe: CrossedExtension, sf: SFunctor) -> bool:
    """The two triangle identities relating ``xi`` at inverse pairs.

    ``(Id_{F(x)} (x) xi(x^-1, y)) o xi(x, x^-1 y) = (xi(x, x^-1) (x) Id_{F(y)})``
    after identifying ``F(1) = 1``, and
    ``(xi(x, y) (x) Id_{F(y^-1)}) o xi(xy, y^-1) = Id_{F(x)} (x) xi(y, y^-1)``,
    both compared on T-labels (the sources agree by construction).
    """
    cg = CatGroup(xe.xm)
    G = xe.G
    for x in range(G.order):
        xi_ = int(G.inv[x])
        for y in range(G.order):
            yi = int(G.inv[y])
            a = cg.compose(cg.tensor(cg.identity(int(sf.F[x])), sf.morphism(G, xi_, y)),
                           sf.morphism(G, x, G.mul(xi_, y)))
            b = cg.tensor(sf.morphism(G, x, xi_), cg.identity(int(sf.F[y])))
            if a.t != b.t:
                return False
            c = cg.compose(cg.tensor(sf.morphism(G, x, y), cg.identity(int(sf.F[yi]))),
                           sf.morphism(G, G.mul(x, y), yi))
            d = cg.tensor(cg.identity(int(sf.F[x])), sf.morphism(G, y, yi))
            if c.t != d.t:
                return False
    return True


@dataclass(frozen=True, eq=False)
class SplitVerdict:
    splits: bool
    monoidal_section: SSection | None
    primitive: Cochain | None  # k with dk = f for the canonical section


def split_check(xe: CrossedExtension, sec: SSection | None = None) -> SplitVerdict:
    """Decide whether the projection admits a monoidal section.

    Uses the 3-cocycle of ``sec`` (canonical normalized section by
    default); when it is ``dk``, corrects sigma to ``sigma * iota(-k)`` and
    verifies the corrected s-functor is monoidal.
    """
    sec = sec or normalised_section(xe)
    f = three_cocycle(xe, sec)
    k = is_coboundary(xe.G, xe.M, f, "classical")
    if k is None:
        return SplitVerdict(False, None, None)
    M, T = xe.M, xe.T
    neg = (-k.values) % M.moduli
    idx = np.array([M.index_of(v) for v in neg.tolist()], dtype=np.int64).reshape(xe.G.order, xe.G.order)
    sigma = T.table[sec.sigma, xe.iota[idx]]
    fixed = make_section(xe, sec.s, sigma)
    if not is_monoidal(xe, section_functor(xe, fixed)):
        raise InternalInconsistency("corrected section is not monoidal")
    return SplitVerdict(True, fixed, k)
