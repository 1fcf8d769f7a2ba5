"""
Coxeter systems $(W, S)$ with exact element arithmetic.

A system is built from a type label (``"B3"``, ``"~A2"``, ...) or an
explicit Coxeter matrix with entries in {2, 3, 4, 6, inf} off the
diagonal (the crystallographic bond orders; m = 5 and finite m >= 7 are
rejected because they force irrational root coordinates).

Elements are identified with their ShortLex-least reduced word, so
equality of elements is equality of words. Reduction uses the "numbers
game" on integral root coordinates coming from a Cartan realization of
the Coxeter matrix: for a reduced word w and a generator s_i,
``|s_i w| < |w|`` iff ``w^{-1}(alpha_i)`` is a negative root, which is an
exact integer computation. This works uniformly for finite and affine
systems; no group table is required.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "INFINITE",
    "GatingError",
    "InfiniteGroupError",
    "InternalCheckError",
    "Element",
    "ConjugacyClass",
    "CoxeterSystem",
    "build_system",
]

# bond order m_ij = infinity
INFINITE = None

# crystallographic Cartan entry pairs (C_ij, C_ji) per bond order, i < j
_BOND_CARTAN = {3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INFINITE: (-2, -2)}


class GatingError(RuntimeError):
    """A computation was requested outside its domain of definition."""


class InfiniteGroupError(GatingError):
    """Raised when an operation needs a finite group."""


class InternalCheckError(Exception):
    """A theorem-backed self-check failed: an implementation bug, not bad input."""


class Element:
    """A group element, canonically the ShortLex-least reduced word."""

    __slots__ = ("system", "word", "_hash")

    def __init__(self, system: "CoxeterSystem", word: tuple[int, ...]):
        self.system = system
        self.word = word
        self._hash = hash(word)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.word), self.word)

    def is_identity(self) -> bool:
        return not self.word

    def inverse(self) -> "Element":
        return self.system.inverse(self)

    def __mul__(self, other: "Element") -> "Element":
        return self.system.multiply(self, other)

    def __invert__(self) -> "Element":
        return self.system.inverse(self)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Element):
            return NotImplemented
        return self.system is other.system and self.word == other.word

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return "e" if not self.word else "*".join(f"s{i}" for i in self.word)

    def __repr__(self) -> str:
        return f"Element{list(self.word)}"


@dataclass(frozen=True)
class ConjugacyClass:
    """A conjugacy class of a finite system, with its C_min data."""

    representative: Element          # (length, ShortLex)-least member
    members: tuple[Element, ...]     # sorted by (length, ShortLex)
    min_length_set: tuple[Element, ...]
    centralizer_order: int

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def min_length(self) -> int:
        return self.representative.length

    def __repr__(self) -> str:
        return (f"ConjugacyClass(rep={self.representative!r}, size={self.size}, "
                f"min_length={self.min_length})")


_LABEL_RE = re.compile(r"^(~?)([A-G])(\d+)$")


def _label_edges(label: str) -> tuple[int, list[tuple[int, int, Optional[int]]]]:
    """Return (rank, [(i, j, bond), ...]) for a normalized type label."""
    m = _LABEL_RE.match(label)
    if not m:
        raise ValueError(f"unknown type label {label!r}")
    affine, family, n = bool(m.group(1)), m.group(2), int(m.group(3))
    path = lambda k: [(i, i + 1, 3) for i in range(k)]

    if not affine:
        if family == "A" and n >= 1:
            return n, path(n - 1)
        if family in ("B", "C") and n >= 2:
            return n, path(n - 2) + [(n - 2, n - 1, 4)]
        if family == "D" and n >= 3:
            return n, path(n - 3) + [(n - 3, n - 2, 3), (n - 3, n - 1, 3)]
        if family == "E" and n in (6, 7, 8):
            edges = [(0, 2, 3), (1, 3, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3)]
            if n >= 7:
                edges.append((5, 6, 3))
            if n == 8:
                edges.append((6, 7, 3))
            return n, edges
        if family == "F" and n == 4:
            return 4, [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
        if family == "G" and n == 2:
            return 2, [(0, 1, 6)]
        raise ValueError(f"unknown type label {label!r}")

    if family == "A" and n == 1:
        return 2, [(0, 1, INFINITE)]
    if family == "A" and n >= 2:
        return n + 1, path(n) + [(0, n, 3)]
    if family == "B" and n >= 3:
        return n + 1, ([(0, 2, 3), (1, 2, 3)]
                       + [(i, i + 1, 3) for i in range(2, n - 1)]
                       + [(n - 1, n, 4)])
    if family == "C" and n >= 2:
        return n + 1, [(0, 1, 4)] + [(i, i + 1, 3) for i in range(1, n - 1)] + [(n - 1, n, 4)]
    if family == "D" and n >= 4:
        return n + 1, ([(0, 2, 3), (1, 2, 3)]
                       + [(i, i + 1, 3) for i in range(2, n - 2)]
                       + [(n - 2, n - 1, 3), (n - 2, n, 3)])
    if family == "E" and n in (6, 7, 8):
        _, edges = _label_edges(f"E{n}")
        attach = {6: 1, 7: 0, 8: 7}[n]
        return n + 1, edges + [(attach, n, 3)]
    if family == "F" and n == 4:
        # path order: affine node first, so the two odd-bond classes are
        # the first three and the last two nodes (matches the weight tables)
        return 5, [(0, 1, 3), (1, 2, 3), (2, 3, 4), (3, 4, 3)]
    if family == "G" and n == 2:
        return 3, [(0, 1, 3), (1, 2, 6)]
    raise ValueError(f"unknown type label {label!r}")


def _matrix_from_edges(rank: int, edges) -> tuple[tuple[Optional[int], ...], ...]:
    mat = [[2] * rank for _ in range(rank)]
    for i in range(rank):
        mat[i][i] = 1
    for i, j, bond in edges:
        mat[i][j] = mat[j][i] = bond
    return tuple(tuple(row) for row in mat)


def _parse_matrix(rows) -> tuple[tuple[Optional[int], ...], ...]:
    """Validate an explicit Coxeter matrix; "inf"/None encode infinity."""
    rank = len(rows)
    mat: list[list[Optional[int]]] = []
    for row in rows:
        if len(row) != rank:
            raise ValueError("Coxeter matrix must be square")
        out_row: list[Optional[int]] = []
        for entry in row:
            if entry in (INFINITE, "inf"):
                out_row.append(INFINITE)
            elif isinstance(entry, int) and not isinstance(entry, bool):
                out_row.append(entry)
            else:
                raise ValueError(f"bad Coxeter matrix entry {entry!r}")
        mat.append(out_row)
    for i in range(rank):
        if mat[i][i] != 1:
            raise ValueError("Coxeter matrix diagonal entries must be 1")
        for j in range(i + 1, rank):
            if mat[i][j] != mat[j][i]:
                raise ValueError("Coxeter matrix must be symmetric")
            m = mat[i][j]
            if m is INFINITE:
                continue
            if m < 2:
                raise ValueError(f"off-diagonal bond order {m} < 2 at ({i},{j})")
            if m not in (2, 3, 4, 6):
                raise ValueError(
                    f"bond order {m} at ({i},{j}) is not crystallographic "
                    f"(supported: 2, 3, 4, 6, inf)")
    return tuple(tuple(row) for row in mat)


def _cartan_from_matrix(matrix) -> tuple[tuple[int, ...], ...]:
    rank = len(matrix)
    cartan = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        cartan[i][i] = 2
        for j in range(i + 1, rank):
            m = matrix[i][j]
            if m == 2:
                continue
            cij, cji = _BOND_CARTAN[m]
            cartan[i][j] = cij
            cartan[j][i] = cji
    return tuple(tuple(row) for row in cartan)


def _diagram_components(matrix) -> list[list[int]]:
    rank = len(matrix)
    seen = [False] * rank
    comps = []
    for start in range(rank):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(rank):
                if not seen[j] and (matrix[i][j] is INFINITE or matrix[i][j] >= 3):
                    seen[j] = True
                    comp.append(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    mat = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col]:
                factor = mat[r][col] / inv
                for c in range(col, n):
                    mat[r][c] -= factor * mat[col][c]
    return det


def _component_is_finite(matrix, cartan, nodes: list[int]) -> bool:
    """Finite iff the symmetrized Cartan form on the component is positive
    definite (Sylvester with exact fractions)."""
    if any(matrix[i][j] is INFINITE for i in nodes for j in nodes):
        return False
    pos = {node: k for k, node in enumerate(nodes)}
    d: dict[int, Fraction] = {nodes[0]: Fraction(1)}
    queue = [nodes[0]]
    while queue:
        i = queue.pop()
        for j in nodes:
            if j == i or cartan[i][j] == 0:
                continue
            if j in d:
                if d[i] * cartan[i][j] != d[j] * cartan[j][i]:
                    return False  # not symmetrizable: never finite type
            else:
                d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                queue.append(j)
    k = len(nodes)
    sym = [[d[a] * cartan[a][b] for b in nodes] for a in nodes]
    for m in range(1, k + 1):
        if _fraction_det([row[:m] for row in sym[:m]]) <= 0:
            return False
    return True


class CoxeterSystem:
    """An immutable Coxeter system; all caches are write-once memos.

    Safe for unrestricted concurrent reads: cache fills are idempotent
    (every entry is a pure function of its key).
    """

    def __init__(self, matrix, *, label: Optional[str] = None):
        self.matrix = _parse_matrix(matrix)
        self.rank = len(self.matrix)
        self.type_label = label
        self.cartan = _cartan_from_matrix(self.matrix)
        comps = _diagram_components(self.matrix)
        self.is_finite = all(
            _component_is_finite(self.matrix, self.cartan, c) for c in comps)
        self.is_irreducible = len(comps) == 1

        self._interned: dict[tuple[int, ...], Element] = {}
        self.identity = self._elem(())
        self._units = tuple(
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank))
        self._lmul: dict[tuple[int, Element], tuple[Element, int]] = {}
        self._rmul: dict[tuple[Element, int], tuple[Element, int]] = {}
        self._inv: dict[Element, Element] = {}
        self._rdesc: dict[Element, frozenset[int]] = {}
        self._ldesc: dict[Element, frozenset[int]] = {}
        self._bruhat: dict[tuple[Element, Element], bool] = {}
        self._levels: list[list[Element]] = [[self.identity]]
        self._levels_complete = False
        self._classes: Optional[list[ConjugacyClass]] = None
        self._class_index: dict[Element, int] = {}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_label(cls, label: str) -> "CoxeterSystem":
        label = label.strip()
        rank, edges = _label_edges(label)
        return cls(_matrix_from_edges(rank, edges), label=label)

    @classmethod
    def from_matrix(cls, rows, *, label: Optional[str] = None) -> "CoxeterSystem":
        return cls(rows, label=label)

    def matrix_json(self) -> list[list]:
        """Coxeter matrix in the external format ("inf" for infinity)."""
        return [["inf" if m is INFINITE else m for m in row] for row in self.matrix]

    def __repr__(self) -> str:
        tag = self.type_label or f"rank {self.rank} matrix"
        return f"CoxeterSystem({tag})"

    # -- root coordinate machinery -------------------------------------------

    def _reflect(self, i: int, vec: list[int]) -> None:
        row = self.cartan[i]
        vec[i] -= sum(row[j] * vec[j] for j in range(self.rank) if vec[j])

    def _is_left_descent_word(self, word: Sequence[int], i: int) -> bool:
        vec = list(self._units[i])
        for a in word:
            self._reflect(a, vec)
        return min(vec) < 0

    def _is_right_descent_word(self, word: Sequence[int], i: int) -> bool:
        vec = list(self._units[i])
        for a in reversed(word):
            self._reflect(a, vec)
        return min(vec) < 0

    def _left_exchange(self, word: Sequence[int], i: int) -> tuple[int, ...]:
        """Reduced word for s_i * w given that i is a left descent of w."""
        vec = list(self._units[i])
        for t, a in enumerate(word):
            if vec == list(self._units[a]):
                return tuple(word[:t]) + tuple(word[t + 1:])
            self._reflect(a, vec)
        raise AssertionError("exchange failed on a reduced word")

    def _right_exchange(self, word: Sequence[int], i: int) -> tuple[int, ...]:
        """Reduced word for w * s_i given that i is a right descent of w."""
        vec = list(self._units[i])
        for t in range(len(word) - 1, -1, -1):
            if vec == list(self._units[word[t]]):
                return tuple(word[:t]) + tuple(word[t + 1:])
            self._reflect(word[t], vec)
        raise AssertionError("exchange failed on a reduced word")

    def _canonical_of_reduced(self, word: Sequence[int]) -> tuple[int, ...]:
        """ShortLex-least reduced word of the element of a reduced word.

        Greedy: the canonical word starts with the least left descent."""
        out = []
        cur = tuple(word)
        while cur:
            first = cur[0]
            smaller = None
            for j in range(first):
                if self._is_left_descent_word(cur, j):
                    smaller = j
                    break
            if smaller is None:
                out.append(first)
                cur = cur[1:]
            else:
                out.append(smaller)
                cur = self._left_exchange(cur, smaller)
        return tuple(out)

    def _elem(self, word: tuple[int, ...]) -> Element:
        el = self._interned.get(word)
        if el is None:
            el = Element(self, word)
            self._interned[word] = el
        return el

    # -- element arithmetic ---------------------------------------------------

    def generator(self, i: int) -> Element:
        if not 0 <= i < self.rank:
            raise ValueError(f"generator index {i} out of range for rank {self.rank}")
        return self._elem((i,))

    def left_mul_gen(self, i: int, w: Element) -> tuple[Element, int]:
        """(s_i * w, +1) on a length increase, (s_i * w, -1) on a decrease."""
        key = (i, w)
        hit = self._lmul.get(key)
        if hit is not None:
            return hit
        if not 0 <= i < self.rank:
            raise ValueError(f"generator index {i} out of range for rank {self.rank}")
        if self._is_left_descent_word(w.word, i):
            res = (self._elem(self._canonical_of_reduced(self._left_exchange(w.word, i))), -1)
        else:
            res = (self._elem(self._canonical_of_reduced((i,) + w.word)), +1)
        self._lmul[key] = res
        return res

    def right_mul_gen(self, w: Element, i: int) -> tuple[Element, int]:
        key = (w, i)
        hit = self._rmul.get(key)
        if hit is not None:
            return hit
        if not 0 <= i < self.rank:
            raise ValueError(f"generator index {i} out of range for rank {self.rank}")
        if self._is_right_descent_word(w.word, i):
            res = (self._elem(self._canonical_of_reduced(self._right_exchange(w.word, i))), -1)
        else:
            res = (self._elem(self._canonical_of_reduced(w.word + (i,))), +1)
        self._rmul[key] = res
        return res

    def normal_form(self, word: Iterable[int]) -> Element:
        """Canonical Element for the product of the listed generators."""
        w = self.identity
        for i in word:
            w = self.right_mul_gen(w, int(i))[0]
        return w

    def _check_same_system(self, *elements: Element) -> None:
        for el in elements:
            if el.system is not self:
                raise ValueError("elements belong to a different Coxeter system")

    def multiply(self, a: Element, b: Element) -> Element:
        self._check_same_system(a, b)
        if a.length <= b.length:
            w = b
            for i in reversed(a.word):
                w = self.left_mul_gen(i, w)[0]
            return w
        w = a
        for i in b.word:
            w = self.right_mul_gen(w, i)[0]
        return w

    def inverse(self, a: Element) -> Element:
        self._check_same_system(a)
        hit = self._inv.get(a)
        if hit is None:
            hit = self._elem(self._canonical_of_reduced(tuple(reversed(a.word))))
            self._inv[a] = hit
            self._inv[hit] = a
        return hit

    def left_descents(self, a: Element) -> frozenset[int]:
        self._check_same_system(a)
        hit = self._ldesc.get(a)
        if hit is None:
            hit = frozenset(i for i in range(self.rank)
                            if self._is_left_descent_word(a.word, i))
            self._ldesc[a] = hit
        return hit

    def right_descents(self, a: Element) -> frozenset[int]:
        self._check_same_system(a)
        hit = self._rdesc.get(a)
        if hit is None:
            hit = frozenset(i for i in range(self.rank)
                            if self._is_right_descent_word(a.word, i))
            self._rdesc[a] = hit
        return hit

    def descents(self, a: Element) -> tuple[frozenset[int], frozenset[int]]:
        return self.left_descents(a), self.right_descents(a)

    # -- enumeration ----------------------------------------------------------

    def _extend_levels(self, upto: Optional[int]) -> None:
        while not self._levels_complete and (upto is None or len(self._levels) <= upto):
            nxt = set()
            for w in self._levels[-1]:
                for i in range(self.rank):
                    up, sign = self.left_mul_gen(i, w)
                    if sign > 0:
                        nxt.add(up)
            if not nxt:
                self._levels_complete = True
                return
            self._levels.append(sorted(nxt, key=lambda el: el.word))

    def enumerate_elements(self, max_length: Optional[int] = None) -> list[Element]:
        """All elements of length <= max_length, sorted by (length, ShortLex).

        Without a bound, the whole group (finite systems only)."""
        if max_length is None and not self.is_finite:
            raise InfiniteGroupError(
                "unbounded enumeration requested on an infinite system")
        if max_length is not None and max_length < 0:
            raise ValueError("max_length must be nonnegative")
        self._extend_levels(max_length)
        levels = self._levels if max_length is None else self._levels[:max_length + 1]
        return [w for level in levels for w in level]

    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteGroupError("infinite group has no order")
        return len(self.enumerate_elements())

    # -- Bruhat order -----------------------------------------------------------

    def bruhat_leq(self, x: Element, y: Element) -> bool:
        """Subword criterion, via the lifting property on right descents."""
        self._check_same_system(x, y)
        if x.length > y.length:
            return False
        if not x.word or x is y:
            return True
        key = (x, y)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        s = min(self.right_descents(y))
        ys = self.right_mul_gen(y, s)[0]
        if s in self.right_descents(x):
            res = self.bruhat_leq(self.right_mul_gen(x, s)[0], ys)
        else:
            res = self.bruhat_leq(x, ys)
        self._bruhat[key] = res
        return res

    def bruhat_interval_below(self, w: Element) -> list[Element]:
        """All y <= w, sorted by (length, ShortLex)."""
        self._check_same_system(w)
        ball = self.enumerate_elements(max_length=w.length)
        return [y for y in ball if self.bruhat_leq(y, w)]

    # -- conjugacy classes -------------------------------------------------------

    def conjugacy_classes(self) -> list[ConjugacyClass]:
        """Orbit closure under conjugation by generators; finite systems only.

        Classes are sorted by (min length, ShortLex of the representative)."""
        if not self.is_finite:
            raise InfiniteGroupError("conjugacy classes need a finite system")
        if self._classes is not None:
            return self._classes
        elements = self.enumerate_elements()
        total = len(elements)
        assigned: set[Element] = set()
        classes: list[ConjugacyClass] = []
        for seed in elements:
            if seed in assigned:
                continue
            orbit = {seed}
            queue = [seed]
            while queue:
                g = queue.pop()
                for i in range(self.rank):
                    sg = self.left_mul_gen(i, g)[0]
                    sgs = self.right_mul_gen(sg, i)[0]
                    if sgs not in orbit:
                        orbit.add(sgs)
                        queue.append(sgs)
            members = tuple(sorted(orbit, key=lambda el: el.sort_key))
            assigned.update(members)
            min_len = members[0].length
            cmin = tuple(w for w in members if w.length == min_len)
            classes.append(ConjugacyClass(
                representative=members[0],
                members=members,
                min_length_set=cmin,
                centralizer_order=total // len(members)))
        classes.sort(key=lambda c: c.representative.sort_key)
        self._classes = classes
        for idx, cls in enumerate(classes):
            for w in cls.members:
                self._class_index[w] = idx
        return classes

    def class_of(self, w: Element) -> int:
        """Index of w's class in conjugacy_classes()."""
        self.conjugacy_classes()
        return self._class_index[w]

    # -- distinguished elements ----------------------------------------------------

    def coxeter_element(self) -> Element:
        return self.normal_form(range(self.rank))

    def longest_element(self) -> Element:
        if not self.is_finite:
            raise InfiniteGroupError("infinite system has no longest element")
        self._extend_levels(None)
        top = self._levels[-1]
        if len(top) != 1:
            raise AssertionError("longest element is not unique")
        return top[0]

    def special_elements(self) -> tuple[ConjugacyClass, Element]:
        """(class of the Coxeter element, longest element w_0)."""
        if not self.is_finite:
            raise InfiniteGroupError("special elements need a finite system")
        if not self.is_irreducible:
            raise GatingError("special elements need an irreducible system")
        classes = self.conjugacy_classes()
        cox = classes[self.class_of(self.coxeter_element())]
        return cox, self.longest_element()


def build_system(source: Union[str, Sequence[Sequence]]) -> CoxeterSystem:
    """Build a system from a type label or an explicit Coxeter matrix."""
    if isinstance(source, str):
        return CoxeterSystem.from_label(source)
    return CoxeterSystem.from_matrix(source)
