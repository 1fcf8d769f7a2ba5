"""
The Iwahori-Hecke algebra $H$ of a Coxeter system with a weight function.

$H$ is the free $Z[v,v^{-1}]$-module on $\\{T_w\\}$ with
$(T_{s} + v^{-L(s)})(T_{s} - v^{L(s)}) = 0$ and $T_w T_{w'} = T_{ww'}$
whenever lengths add. Products are computed by peeling generators off
the canonical word of the left factor, so no group-sized multiplication
table is ever needed and everything works over infinite systems too
(supports stay finite).

Weight functions assign a positive integer to each generator, equal
across odd bonds (additivity along the braid word forces this). The
equal-parameter case is ``WeightFunction.equal_parameters(system)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .coxeter import CoxeterSystem, Element, GatingError, InfiniteGroupError
from .laurent import LaurentPoly, ONE, ZERO

__all__ = [
    "WeightFunction",
    "UnequalParametersError",
    "WEIGHT_CATALOG",
    "weight_catalog",
    "HeckeElement",
    "HeckeAlgebra",
    "FBoundProbe",
]


class UnequalParametersError(GatingError):
    """Raised where the underlying statement assumes L = |.|."""


class WeightFunction:
    """A weight function L, determined by its values on the generators."""

    __slots__ = ("system", "values")

    def __init__(self, system: CoxeterSystem, values: Iterable[int]):
        vals = tuple(int(x) for x in values)
        if len(vals) != system.rank:
            raise ValueError(
                f"need {system.rank} weight values, got {len(vals)}")
        for i, x in enumerate(vals):
            if x < 1:
                raise ValueError(f"weight L(s{i}) = {x} must be positive")
        for i in range(system.rank):
            for j in range(i + 1, system.rank):
                m = system.matrix[i][j]
                if m is not None and m % 2 == 1 and vals[i] != vals[j]:
                    raise ValueError(
                        f"odd bond m({i},{j}) = {m} forces L(s{i}) = L(s{j}); "
                        f"got {vals[i]} != {vals[j]}")
        self.system = system
        self.values = vals

    @classmethod
    def equal_parameters(cls, system: CoxeterSystem) -> "WeightFunction":
        return cls(system, (1,) * system.rank)

    @property
    def is_equal_parameters(self) -> bool:
        return all(x == 1 for x in self.values)

    def __call__(self, w: Element) -> int:
        """L(w), the sum of the generator weights along a reduced word."""
        return sum(self.values[i] for i in w.word)

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeightFunction)
                and self.system is other.system and self.values == other.values)

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"WeightFunction{self.values}"


# Admissible weight tuples, carried only for the affine types whose full
# tables are known; other types have no catalog here.
WEIGHT_CATALOG: dict[str, tuple[tuple[int, ...], ...]] = {
    "~F4": ((1, 1, 1, 1, 1), (1, 1, 1, 2, 2), (2, 2, 2, 1, 1), (1, 1, 1, 4, 4)),
    "~G2": ((1, 1, 1), (1, 1, 3), (3, 3, 1), (1, 1, 9)),
}


def weight_catalog(label: str) -> tuple[tuple[int, ...], ...]:
    try:
        return WEIGHT_CATALOG[label.strip()]
    except KeyError:
        raise ValueError(
            f"no weight catalog for type {label!r} (available: "
            f"{', '.join(sorted(WEIGHT_CATALOG))})") from None


Terms = dict[Element, LaurentPoly]


class HeckeElement:
    """A finite A-linear combination of T-basis elements."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Terms):
        self.algebra = algebra
        self.terms = terms  # no zero values; treated as immutable

    def coeff(self, w: Element) -> LaurentPoly:
        return self.terms.get(w, ZERO)

    def support(self) -> list[Element]:
        return sorted(self.terms, key=lambda el: el.sort_key)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.terms)
        for w, p in other.terms.items():
            q = out.get(w)
            q = p if q is None else q + p
            if q:
                out[w] = q
            else:
                out.pop(w, None)
        return HeckeElement(self.algebra, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.algebra, {w: -p for w, p in self.terms.items()})

    def scale(self, c: Union[int, LaurentPoly]) -> "HeckeElement":
        if isinstance(c, int):
            c = LaurentPoly(0, (c,))
        if not c:
            return HeckeElement(self.algebra, {})
        return HeckeElement(self.algebra, {w: p * c for w, p in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return self.algebra.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        raise TypeError("HeckeElement is not hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = [f"({p})*T[{','.join(map(str, w.word)) or 'e'}]"
                for w, p in sorted(self.terms.items(), key=lambda kv: kv[0].sort_key)]
        return " + ".join(bits)


@dataclass(frozen=True)
class FBoundProbe:
    """Empirical bound for the degrees of the T-basis structure constants."""

    radius: Optional[int]          # None means the whole (finite) group
    n_emp: int
    witness: Optional[tuple[Element, Element, Element]]
    pairs_scanned: int


class HeckeAlgebra:
    """$H$ for a fixed system and weight function.

    The bar cache is a write-once idempotent memo: concurrent fills of the
    same key compute identical values, and readers never see partial
    entries (entries are inserted fully built).
    """

    def __init__(self, system: CoxeterSystem,
                 weight: Optional[WeightFunction] = None):
        self.system = system
        self.weight = weight or WeightFunction.equal_parameters(system)
        if self.weight.system is not system:
            raise ValueError("weight function belongs to a different system")
        # xi_i = v^{L(s_i)} - v^{-L(s_i)}, the coefficient in the down-step
        self._xi = tuple(
            LaurentPoly.monomial(L) - LaurentPoly.monomial(-L)
            for L in self.weight.values)
        self._bar_t: dict[Element, Terms] = {system.identity: {system.identity: ONE}}

    # -- building blocks -----------------------------------------------------

    @property
    def one(self) -> HeckeElement:
        return HeckeElement(self, {self.system.identity: ONE})

    def t(self, w: Union[Element, Iterable[int]]) -> HeckeElement:
        """The T-basis element T_w."""
        if not isinstance(w, Element):
            w = self.system.normal_form(w)
        return HeckeElement(self, {w: ONE})

    def element(self, terms: Terms) -> HeckeElement:
        return HeckeElement(self, {w: p for w, p in terms.items() if p})

    # -- multiplication --------------------------------------------------------

    def _lmul_gen(self, i: int, terms: Terms) -> Terms:
        """T_{s_i} * (sum of terms), one generator step."""
        lmul = self.system.left_mul_gen
        xi = self._xi[i]
        out: Terms = {}
        for w, p in terms.items():
            sw, sign = lmul(i, w)
            q = out.get(sw)
            q = p if q is None else q + p
            if q:
                out[sw] = q
            else:
                out.pop(sw, None)
            if sign < 0:
                extra = xi * p
                q = out.get(w)
                q = extra if q is None else q + extra
                if q:
                    out[w] = q
                else:
                    out.pop(w, None)
        return out

    def _rmul_gen(self, terms: Terms, i: int) -> Terms:
        """(sum of terms) * T_{s_i}, one generator step."""
        rmul = self.system.right_mul_gen
        xi = self._xi[i]
        out: Terms = {}
        for w, p in terms.items():
            ws, sign = rmul(w, i)
            q = out.get(ws)
            q = p if q is None else q + p
            if q:
                out[ws] = q
            else:
                out.pop(ws, None)
            if sign < 0:
                extra = xi * p
                q = out.get(w)
                q = extra if q is None else q + extra
                if q:
                    out[w] = q
                else:
                    out.pop(w, None)
        return out

    def _t_word_mul(self, word: tuple[int, ...], terms: Terms) -> Terms:
        """T_w * (sum of terms) along the reduced word of w."""
        for i in reversed(word):
            terms = self._lmul_gen(i, terms)
        return terms

    def mul(self, h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
        if h1.algebra is not self or h2.algebra is not self:
            raise ValueError("operands live in different Hecke algebras")
        acc: Terms = {}
        for w, p in h1.terms.items():
            part = self._t_word_mul(w.word, h2.terms)
            for u, q in part.items():
                r = acc.get(u)
                r = q * p if r is None else r + q * p
                if r:
                    acc[u] = r
                else:
                    acc.pop(u, None)
        return HeckeElement(self, acc)

    # -- the bar involution -------------------------------------------------------

    def _bar_basis(self, w: Element) -> Terms:
        """bar(T_w) in T-coordinates, memoized per element.

        bar(T_s) = T_s - (v^{L(s)} - v^{-L(s)}) T_e is T_s^{-1}; for longer
        words bar is multiplicative along the canonical word."""
        hit = self._bar_t.get(w)
        if hit is not None:
            return hit
        i = w.word[0]
        rest = self._bar_basis(self.system._elem(w.word[1:]))
        out = self._lmul_gen(i, rest)
        xi = self._xi[i]
        for u, q in rest.items():
            extra = -(xi * q)
            r = out.get(u)
            r = extra if r is None else r + extra
            if r:
                out[u] = r
            else:
                out.pop(u, None)
        self._bar_t[w] = out
        return out

    def bar(self, h: HeckeElement) -> HeckeElement:
        """The bar involution: v -> v^{-1}, T_w -> (T_{w^{-1}})^{-1}."""
        acc: Terms = {}
        for w, p in h.terms.items():
            pbar = p.bar()
            for u, q in self._bar_basis(w).items():
                r = acc.get(u)
                r = q * pbar if r is None else r + q * pbar
                if r:
                    acc[u] = r
                else:
                    acc.pop(u, None)
        return HeckeElement(self, acc)

    # -- structure constants and probes ----------------------------------------------

    def f_constants(self, x: Element, y: Element) -> Terms:
        """The map z -> f_{x,y,z} where T_x T_y = sum_z f_{x,y,z} T_z."""
        return self._t_word_mul(x.word, {y: ONE})

    def f_bound_probe(self, radius: Optional[int] = None) -> FBoundProbe:
        """Scan f_{x,y,z} degrees over all x, y of length <= radius.

        Reports the largest degree seen and an attaining triple; by
        construction v^{-n_emp} f_{x,y,z} has no positive powers of v for
        every scanned triple. radius=None scans a whole finite group."""
        if radius is None and not self.system.is_finite:
            raise InfiniteGroupError(
                "a radius is required to probe an infinite system")
        ball = self.system.enumerate_elements(max_length=radius)
        best = 0
        witness = None
        pairs = 0
        for x in ball:
            for y in ball:
                pairs += 1
                for z, p in sorted(self.f_constants(x, y).items(),
                                   key=lambda kv: kv[0].sort_key):
                    d = p.degree
                    if d > best:
                        best = int(d)
                        witness = (x, y, z)
        return FBoundProbe(radius=radius, n_emp=best,
                           witness=witness, pairs_scanned=pairs)

    # -- specialization -----------------------------------------------------------------

    def specialize(self, h: HeckeElement, c) -> dict[Element, Fraction]:
        """Coefficientwise evaluation at v = c (exact; c nonzero)."""
        if c == 0:
            raise ZeroDivisionError("cannot specialize at v = 0")
        out = {}
        for w, p in h.terms.items():
            val = p.evaluate(c)
            if val:
                out[w] = val
        return out
