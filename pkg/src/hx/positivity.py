"""
Trace positivity of conjugacy classes (finite W, equal parameters).

For $w$ in a conjugacy class $C$, $N^w$ is the trace of the A-linear map
$h \\mapsto v^{2|w|} T_w h T_{w^{-1}}$ on $H$. For $w \\in C_{min}$ the
value depends only on $C$; it lies in $Z[v^2]$ and evaluates at v = 1 to
the centralizer order |W|/|C|. All three facts are theorems, so the code
treats any violation as an internal bug (`InternalCheckError`), never as
data. $C$ is called positive when $N^w \\in N[v^2]$.

The trace is accumulated per basis element x: the coefficient of T_x in
T_w T_x T_{w^{-1}}, built by generator-by-generator multiplication. The
partial products are shared along the length-BFS tree (x = s_i x' with
x' the canonical-word tail), so only two length levels of them are alive
at a time and no |W| x |W| operator matrix is formed. `n_trace` also
offers an equivalent cyclically-rotated route that is much faster on
long w; the two are cross-checked in the tests.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .coxeter import (ConjugacyClass, CoxeterSystem, Element,
                      InfiniteGroupError, InternalCheckError)
from .hecke import HeckeAlgebra, UnequalParametersError
from .laurent import LaurentPoly, ONE, ZERO, in_cone

__all__ = ["TraceChecks", "TraceReport", "n_trace", "class_report",
           "classify_positive"]


@dataclass(frozen=True)
class TraceChecks:
    """Self-check flags recorded on every report (all True on emission)."""

    constant_over_min: bool
    in_z_v2: bool
    centralizer_at_v1: bool


@dataclass(frozen=True)
class TraceReport:
    """Per-class positivity data."""

    class_id: int
    representative: Element
    size: int
    min_length: int
    centralizer_order: int
    n_poly: LaurentPoly
    positive: bool
    checks: TraceChecks
    cmin_size: int
    cmin_evaluated: int
    is_identity_class: bool
    is_coxeter_class: bool

    def to_jsonable(self) -> dict:
        return {
            "class_id": self.class_id,
            "representative": list(self.representative.word),
            "size": self.size,
            "min_length": self.min_length,
            "centralizer_order": self.centralizer_order,
            "n_poly": self.n_poly.to_pairs(),
            "positive": self.positive,
            "checks": {
                "constant_over_min": self.checks.constant_over_min,
                "in_z_v2": self.checks.in_z_v2,
                "centralizer_at_v1": self.checks.centralizer_at_v1,
            },
            "cmin_size": self.cmin_size,
            "cmin_evaluated": self.cmin_evaluated,
            "is_identity_class": self.is_identity_class,
            "is_coxeter_class": self.is_coxeter_class,
        }


def _gate(algebra: HeckeAlgebra) -> None:
    if not algebra.system.is_finite:
        raise InfiniteGroupError("N^w traces need a finite system")
    if not algebra.weight.is_equal_parameters:
        raise UnequalParametersError(
            "N^w traces are defined for equal parameters (L = |.|) only")


def n_trace(algebra: HeckeAlgebra, w: Element, *,
            route: str = "direct") -> LaurentPoly:
    """The trace of h -> v^{2|w|} T_w h T_{w^{-1}} over the T-basis.

    route "direct" accumulates [T_x](T_w T_x T_{w^{-1}}) per basis element
    x, straight from the definition. route "cyclic" accumulates
    [T_{w^{-1}}](T_x T_{w^{-1}} T_{x^{-1}}) instead, which is the same
    trace because the coefficient-of-T_e functional is a symmetrizing
    trace form; its partial products extend by a single generator on each
    side per element, making long w much cheaper. The two routes are
    checked against each other exhaustively in the test suite; "direct"
    is the reference."""
    _gate(algebra)
    if route not in ("direct", "cyclic"):
        raise ValueError(f"unknown trace route {route!r}")
    system = algebra.system
    system._check_same_system(w)
    winv = system.inverse(w)
    wword = w.word
    total = ZERO
    elements = system.enumerate_elements()
    levels: dict[int, list[Element]] = {}
    for x in elements:
        levels.setdefault(x.length, []).append(x)
    # direct: partial[x] = T_x * T_{w^{-1}}; cyclic: T_x * T_{w^{-1}} * T_{x^{-1}}
    partial = {system.identity: {winv: ONE}}
    for length in range(max(levels) + 1):
        for x in levels.get(length, ()):
            if route == "direct":
                coeff = algebra._t_word_mul(wword, partial[x]).get(x)
            else:
                coeff = partial[x].get(winv)
            if coeff:
                total = total + coeff
        nxt = {}
        for y in levels.get(length + 1, ()):
            # canonical-word tail is the canonical word of s_{y0} y
            s = y.word[0]
            parent = system._elem(y.word[1:])
            q = algebra._lmul_gen(s, partial[parent])
            if route == "cyclic":
                q = algebra._rmul_gen(q, s)
            nxt[y] = q
        partial = nxt
    return total.shift(2 * w.length)


def class_report(algebra: HeckeAlgebra, cls: ConjugacyClass, class_id: int,
                 *, max_cmin: Optional[int] = None,
                 route: str = "direct") -> TraceReport:
    """Evaluate N^w over C_min and certify the theorem-backed invariants.

    max_cmin caps how many minimal-length members are evaluated (rank-5
    time budgets); the default evaluates all of C_min."""
    _gate(algebra)
    system = algebra.system
    members = cls.min_length_set
    if max_cmin is not None:
        members = members[:max(1, max_cmin)]
    traces = [n_trace(algebra, w, route=route) for w in members]
    n_poly = traces[0]

    constant = all(t == n_poly for t in traces[1:])
    in_zv2 = in_cone(n_poly, "Zv2")
    cent_ok = n_poly.evaluate(1) == cls.centralizer_order
    if not (constant and in_zv2 and cent_ok):
        raise InternalCheckError(
            f"trace invariants failed on class {class_id} "
            f"(rep {cls.representative!r}): constant_over_min={constant}, "
            f"in_z_v2={in_zv2}, centralizer_at_v1={cent_ok}")

    is_cox = False
    if system.is_irreducible:
        is_cox = system.class_of(system.coxeter_element()) == class_id
    return TraceReport(
        class_id=class_id,
        representative=cls.representative,
        size=cls.size,
        min_length=cls.min_length,
        centralizer_order=cls.centralizer_order,
        n_poly=n_poly,
        positive=in_cone(n_poly, "Nv2"),
        checks=TraceChecks(constant_over_min=constant, in_z_v2=in_zv2,
                           centralizer_at_v1=cent_ok),
        cmin_size=len(cls.min_length_set),
        cmin_evaluated=len(members),
        is_identity_class=cls.representative.is_identity(),
        is_coxeter_class=is_cox,
    )


# fork-pool state: set in the parent before the pool is created, inherited
# by the workers via fork
_POOL_ALGEBRA: Optional[HeckeAlgebra] = None
_POOL_MAX_CMIN: Optional[int] = None
_POOL_ROUTE: str = "direct"


def _pool_job(class_id: int) -> dict:
    algebra = _POOL_ALGEBRA
    cls = algebra.system.conjugacy_classes()[class_id]
    return class_report(algebra, cls, class_id, max_cmin=_POOL_MAX_CMIN,
                        route=_POOL_ROUTE).to_jsonable()


def _report_from_jsonable(system: CoxeterSystem, payload: dict) -> TraceReport:
    return TraceReport(
        class_id=payload["class_id"],
        representative=system._elem(tuple(payload["representative"])),
        size=payload["size"],
        min_length=payload["min_length"],
        centralizer_order=payload["centralizer_order"],
        n_poly=LaurentPoly.from_pairs(payload["n_poly"]),
        positive=payload["positive"],
        checks=TraceChecks(**payload["checks"]),
        cmin_size=payload["cmin_size"],
        cmin_evaluated=payload["cmin_evaluated"],
        is_identity_class=payload["is_identity_class"],
        is_coxeter_class=payload["is_coxeter_class"],
    )


def classify_positive(source: Union[CoxeterSystem, HeckeAlgebra], *,
                      jobs: int = 1, max_cmin: Optional[int] = None,
                      route: str = "direct",
                      progress: Optional[Callable[[int, int], None]] = None
                      ) -> list[TraceReport]:
    """One TraceReport per conjugacy class, in the deterministic class order.

    jobs > 1 distributes whole classes over a fork pool; the assembly is
    ordered by class id, so the output is schedule-independent."""
    global _POOL_ALGEBRA, _POOL_MAX_CMIN, _POOL_ROUTE
    algebra = source if isinstance(source, HeckeAlgebra) else HeckeAlgebra(source)
    _gate(algebra)
    classes = algebra.system.conjugacy_classes()
    ids = list(range(len(classes)))

    _POOL_ALGEBRA, _POOL_MAX_CMIN, _POOL_ROUTE = algebra, max_cmin, route
    try:
        if jobs > 1 and len(ids) > 1:
            try:
                ctx = multiprocessing.get_context("fork")
                with ctx.Pool(min(jobs, len(ids))) as pool:
                    # chunksize 1: class costs are very uneven
                    payloads = pool.map(_pool_job, ids, chunksize=1)
            except (OSError, ValueError):
                payloads = [_pool_job(i) for i in ids]  # pools unavailable: degrade
            if progress is not None:
                progress(len(ids), len(ids))
        else:
            payloads = []
            for i in ids:
                payloads.append(_pool_job(i))
                if progress is not None:
                    progress(i + 1, len(ids))
    finally:
        _POOL_ALGEBRA, _POOL_MAX_CMIN, _POOL_ROUTE = None, None, "direct"

    return [_report_from_jsonable(algebra.system, p) for p in payloads]
