"""
Kazhdan-Lusztig basis, c-basis structure constants, the a-function, and
the asymptotic ring J, for general weight functions.

The basis element $c_w$ is the unique bar-invariant element of
$H_{\\le 0}$ with $c_w - T_w \\in v^{-1} H_{\\le 0}$. It is computed by a
triangular solve over the Bruhat interval $[e, w]$: writing
$bar(T_y) = \\sum_x R_{x,y} T_x$, bar-invariance of
$c_w = \\sum_y p_{y,w} T_y$ reads

    p_{x,w} - bar(p_{x,w}) = sum_{y > x} bar(p_{y,w}) R_{x,y},

and since $p_{x,w}$ has only negative powers of v for $x \\ne w$, it is
exactly the negative-exponent part of the right-hand side. This works
verbatim for unequal parameters.

From $c_x c_y = \\sum_z h_{x,y,z} c_z$ one gets $a(z)$ as the largest
degree of $h_{x,y,z}$ over all pairs, and the leading coefficients
$\\gamma$ at $v^{a(z)}$ become the structure constants of the ring J on
the basis $\\{t_w\\}$ (finite systems only: for infinite W the needed
uniform degree bound is an open problem).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .coxeter import (CoxeterSystem, Element, InfiniteGroupError,
                      InternalCheckError)
from .hecke import HeckeAlgebra, HeckeElement, Terms, WeightFunction
from .laurent import ONE, ZERO

__all__ = [
    "KLBasis",
    "AFunction",
    "a_function",
    "JRing",
    "j_table",
    "JAssociativityReport",
    "j_associativity_check",
    "j_find_unit",
]


class KLBasis:
    """The c-basis of a Hecke algebra, with the {T} <-> {c} conversions.

    All computed coordinates are cached per element (write-once memo,
    idempotent under concurrent fills).
    """

    def __init__(self, algebra: HeckeAlgebra):
        self.algebra = algebra
        self.system = algebra.system
        self._coords: dict[Element, Terms] = {}

    def coords(self, w: Element) -> Terms:
        """The map y -> p_{y,w} with c_w = sum_y p_{y,w} T_y."""
        hit = self._coords.get(w)
        if hit is not None:
            return hit
        interval = self.system.bruhat_interval_below(w)
        bar_basis = self.algebra._bar_basis
        p: Terms = {w: ONE}
        for x in reversed(interval[:-1]):  # interval[-1] is w, the unique top
            q = ZERO
            xlen = x.length
            for y, py in p.items():
                if y.length <= xlen:
                    continue
                r = bar_basis(y).get(x)
                if r is not None:
                    q = q + py.bar() * r
            if q:
                if q.coeff(0) != 0 or q.bar() != -q:
                    raise InternalCheckError(
                        f"KL solve lost bar-antisymmetry at x={x!r}, w={w!r}")
                px = q.negative_part()
                if px:
                    p[x] = px
        self._coords[w] = p
        return p

    def element(self, w: Element) -> HeckeElement:
        """The basis element c_w in T-coordinates."""
        return HeckeElement(self.algebra, dict(self.coords(w)))

    def from_c_basis(self, coords: Terms) -> HeckeElement:
        """Expand a c-coordinate vector into T-coordinates."""
        acc: Terms = {}
        for w, q in coords.items():
            for y, p in self.coords(w).items():
                r = acc.get(y)
                r = p * q if r is None else r + p * q
                if r:
                    acc[y] = r
                else:
                    acc.pop(y, None)
        return HeckeElement(self.algebra, acc)

    def to_c_basis(self, h: HeckeElement) -> Terms:
        """Coordinates of h in the c-basis (unitriangular change of basis)."""
        rem = dict(h.terms)
        out: Terms = {}
        while rem:
            w = max(rem, key=lambda el: el.sort_key)
            q = rem[w]
            out[w] = q
            for y, p in self.coords(w).items():
                r = rem.get(y)
                r = -(p * q) if r is None else r - p * q
                if r:
                    rem[y] = r
                else:
                    rem.pop(y, None)
        return out

    def h_constants(self, x: Element, y: Element) -> Terms:
        """The map z -> h_{x,y,z} where c_x c_y = sum_z h_{x,y,z} c_z."""
        return self.to_c_basis(self.algebra.mul(self.element(x), self.element(y)))


@dataclass(frozen=True)
class AFunction:
    """a(z) = max degree of h_{x,y,z} over all pairs, plus attaining pairs."""

    values: dict[Element, int]
    witnesses: dict[Element, tuple[Element, Element]]

    def __getitem__(self, z: Element) -> int:
        return self.values[z]


def a_function(kl: KLBasis,
               progress: Optional[Callable[[int, int], None]] = None) -> AFunction:
    """Full |W|^2 scan of the h-table, streamed pair by pair.

    Only the per-z running maxima are kept in memory. h_{e,z,z} = 1 puts
    every z in the table with a(z) >= 0."""
    system = kl.system
    if not system.is_finite:
        raise InfiniteGroupError("the a-function scan needs a finite system")
    elements = system.enumerate_elements()
    total = len(elements) ** 2
    done = 0
    values: dict[Element, int] = {}
    witnesses: dict[Element, tuple[Element, Element]] = {}
    for x in elements:
        for y in elements:
            for z, h in kl.h_constants(x, y).items():
                d = int(h.degree)
                if z not in values or d > values[z]:
                    values[z] = d
                    witnesses[z] = (x, y)
            done += 1
        if progress is not None:
            progress(done, total)
    return AFunction(values=values, witnesses=witnesses)


@dataclass(frozen=True)
class JRing:
    """The asymptotic ring J on the basis {t_w} of a finite system.

    ``table[(x, y)]`` maps z to the t_z-coefficient of t_x * t_y, which by
    definition is coeff(h_{x,y,z}, a(z)) = gamma_{x,y,z^{-1}}."""

    system: CoxeterSystem
    weight: WeightFunction
    elements: tuple[Element, ...]
    a: AFunction
    table: dict[tuple[Element, Element], dict[Element, int]]

    def structure_coeff(self, x: Element, y: Element, z: Element) -> int:
        """Coefficient of t_z in t_x * t_y."""
        return self.table.get((x, y), {}).get(z, 0)

    def gamma(self, x: Element, y: Element, z: Element) -> int:
        """gamma_{x,y,z} in the standard indexing: the t_{z^{-1}}-coefficient
        of t_x * t_y."""
        return self.structure_coeff(x, y, self.system.inverse(z))

    def t(self, w: Element) -> dict[Element, int]:
        return {w: 1}

    def product(self, a: dict[Element, int], b: dict[Element, int]) -> dict[Element, int]:
        out: dict[Element, int] = {}
        for x, cx in a.items():
            for y, cy in b.items():
                row = self.table.get((x, y))
                if not row:
                    continue
                c = cx * cy
                for z, g in row.items():
                    r = out.get(z, 0) + c * g
                    if r:
                        out[z] = r
                    else:
                        out.pop(z, None)
        return out


def j_table(kl: KLBasis, afn: Optional[AFunction] = None,
            progress: Optional[Callable[[int, int], None]] = None) -> JRing:
    """Tabulate the J multiplication from the h-table leading coefficients."""
    system = kl.system
    if not system.is_finite:
        raise InfiniteGroupError("the J ring is only built for finite systems")
    if afn is None:
        afn = a_function(kl)
    elements = tuple(system.enumerate_elements())
    total = len(elements) ** 2
    done = 0
    table: dict[tuple[Element, Element], dict[Element, int]] = {}
    for x in elements:
        for y in elements:
            row: dict[Element, int] = {}
            for z, h in kl.h_constants(x, y).items():
                g = h.coeff(afn.values[z])
                if g:
                    row[z] = g
            if row:
                table[(x, y)] = row
            done += 1
        if progress is not None:
            progress(done, total)
    return JRing(system=system, weight=kl.algebra.weight,
                 elements=elements, a=afn, table=table)


@dataclass(frozen=True)
class JAssociativityReport:
    """Outcome of checking (t_x t_y) t_z = t_x (t_y t_z)."""

    passed: bool
    triples_checked: int
    triples_total: int
    exhaustive: bool
    seed: Optional[int]
    counterexample: Optional[tuple[Element, Element, Element]]


def j_associativity_check(ring: JRing, *, exhaustive_limit: int = 400,
                          sample_size: int = 4096, seed: int = 0,
                          force_exhaustive: bool = False) -> JAssociativityReport:
    """Associativity check on basis triples.

    Exhaustive for |W| <= exhaustive_limit (or when forced); otherwise a
    deterministic seeded sample of sample_size triples."""
    elements = ring.elements
    n = len(elements)
    total = n ** 3
    exhaustive = force_exhaustive or n <= exhaustive_limit

    def triples():
        if exhaustive:
            for x in elements:
                for y in elements:
                    for z in elements:
                        yield x, y, z
        else:
            rng = random.Random(seed)
            for _ in range(sample_size):
                yield (elements[rng.randrange(n)], elements[rng.randrange(n)],
                       elements[rng.randrange(n)])

    checked = 0
    for x, y, z in triples():
        checked += 1
        left = ring.product(ring.table.get((x, y), {}), {z: 1})
        right = ring.product({x: 1}, ring.table.get((y, z), {}))
        if left != right:
            return JAssociativityReport(
                passed=False, triples_checked=checked, triples_total=total,
                exhaustive=exhaustive, seed=None if exhaustive else seed,
                counterexample=(x, y, z))
    return JAssociativityReport(
        passed=True, triples_checked=checked, triples_total=total,
        exhaustive=exhaustive, seed=None if exhaustive else seed,
        counterexample=None)


def j_find_unit(ring: JRing) -> Optional[dict[Element, int]]:
    """Solve u * t_w = t_w * u = t_w for all w, over the integers.

    Returns the unit as a coefficient map, or None if the system has no
    integral solution. A solvable system is automatically unique (two
    two-sided units of a ring coincide), so a unique rational solution
    that is not integral rules out a unit in J."""
    elements = ring.elements
    n = len(elements)
    index = {w: k for k, w in enumerate(elements)}

    # rows of the linear system: sum_x u_x * coeff = rhs
    def equations():
        for w in elements:
            left_rows: dict[Element, dict[int, int]] = {}
            right_rows: dict[Element, dict[int, int]] = {}
            for x in elements:
                for z, g in ring.table.get((x, w), {}).items():
                    left_rows.setdefault(z, {})[index[x]] = g
                for z, g in ring.table.get((w, x), {}).items():
                    right_rows.setdefault(z, {})[index[x]] = g
            support = set(left_rows) | set(right_rows) | {w}
            for z in support:
                rhs = 1 if z == w else 0
                yield left_rows.get(z, {}), rhs
                yield right_rows.get(z, {}), rhs

    # online reduced row echelon form over Q
    pivots: dict[int, tuple[list[Fraction], Fraction]] = {}
    for row_sparse, rhs in equations():
        row = [Fraction(0)] * n
        for k, g in row_sparse.items():
            row[k] = Fraction(g)
        b = Fraction(rhs)
        for col, (prow, pb) in pivots.items():
            if row[col]:
                f = row[col]
                row = [a - f * c for a, c in zip(row, prow)]
                b -= f * pb
        lead = next((k for k in range(n) if row[k]), None)
        if lead is None:
            if b:
                return None  # inconsistent: no unit
            continue
        inv = row[lead]
        row = [a / inv for a in row]
        b /= inv
        for col, (prow, pb) in list(pivots.items()):
            if prow[lead]:
                f = prow[lead]
                pivots[col] = ([a - f * c for a, c in zip(prow, row)], pb - f * b)
        pivots[lead] = (row, b)

    # a solvable system is unique; zero-fill any (degenerate) free columns
    solution = [Fraction(0)] * n
    for col, (_row, b) in pivots.items():
        solution[col] = b
    unit = {}
    for w, val in zip(elements, solution):
        if val:
            if val.denominator != 1:
                return None  # unique rational solution is not integral
            unit[w] = int(val)

    # verify (guards the degenerate free-column path)
    for w in elements:
        if (ring.product(unit, {w: 1}) != {w: 1}
                or ring.product({w: 1}, unit) != {w: 1}):
            return None
    return unit
