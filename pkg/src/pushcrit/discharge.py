"""Charge bookkeeping audit.

Every vertex starts with charge 13*deg(x) - 30, so the total is twice the
arc weight minus the vertex weight of the potential, i.e. -2 * potential.
Five local rules then move charge around; rules only ever transfer, so
the total is conserved and the audit checks that identity on every run.
The per-class lower bounds from the corresponding table are evaluated
informatively: they are guarantees about a hypothetical minimal graph,
not about arbitrary inputs, so the report records pass/fail without
asserting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import ChainDecomposition, classify_vertices
from .graph import OrientedGraph, potential


def initial_charge(degree: int) -> int:
    return 13 * degree - 30


def updated_charge_lower_bound(degree: int, total: int | None):
    """Tabled lower bound for the updated charge of a vertex class.

    ``total`` is the chain-incident 2-vertex count (None for 2-vertices).
    Returns None when no table row covers the class.
    """
    if degree == 2:
        return 0
    if degree == 3:
        if total <= 1:
            return 3
        if total <= 3:
            return 1
        return 0
    if degree == 4:
        if total <= 9:
            return 3
        if total == 10:
            return 2
        return None
    if degree >= 5:
        if total <= 3 * degree:
            return 5
        return None
    return None


@dataclass(frozen=True)
class BoundCheck:
    vertex: int
    degree: int
    total: int
    bound: int
    final: int
    ok: bool


@dataclass(frozen=True)
class DischargingReport:
    initial: tuple[int, ...]
    final: tuple[int, ...]
    total_initial: int
    total_final: int
    lower_bound_checks: tuple[BoundCheck, ...]

    def to_json_dict(self) -> dict:
        return {
            "initial": list(self.initial),
            "final": list(self.final),
            "total_initial": self.total_initial,
            "total_final": self.total_final,
            "lower_bound_checks": [
                {
                    "vertex": c.vertex,
                    "degree": c.degree,
                    "total": c.total,
                    "bound": c.bound,
                    "final": c.final,
                    "ok": c.ok,
                }
                for c in self.lower_bound_checks
            ],
        }


def _is_class(dec: ChainDecomposition, v: int, degree: int, total: int) -> bool:
    for cls in dec.classes:
        if cls.vertex == v:
            return cls.degree == degree and cls.total == total
    return False


def discharging_audit(g: OrientedGraph) -> DischargingReport:
    """Apply the five transfer rules and report charges and identities.

    Rules, each donated by every 3+-vertex v:
      1. 2 to each 2-vertex inside a chain ending at v;
      2. 3 to each adjacent 3-vertex with 6 chain-incident 2-vertices;
      3. 1 to each adjacent 3-vertex with 5 of them;
      4. 3 to each 3-vertex with 6 of them joined to v by a 1-chain;
      5. 1 to each 3-vertex with 5 of them joined to v by a 1-chain,
         unless v itself is a 3-vertex with 5 of them.
    """
    dec = classify_vertices(g)
    n = g.vertex_count
    charge = [initial_charge(d) for d in g.degrees]
    initial = tuple(charge)
    class_by_vertex = {c.vertex: c for c in dec.classes}

    for donor in sorted(class_by_vertex):
        donor_cls = class_by_vertex[donor]
        # rule 1: chain-incident 2-vertices
        for chain in dec.chains:
            ends = chain.endpoints
            if donor in ends:
                for u in chain.internal:
                    charge[donor] -= 2
                    charge[u] += 2
        # rules 2/3: adjacent (0-chain) recipients; rules 4/5: 1-chain ones
        for dist, bonus6, bonus5 in ((0, 3, 1), (1, 3, 1)):
            recipients = set()
            for chain in dec.chains:
                if chain.internal_count != dist:
                    continue
                a, b = chain.endpoints
                if donor == a:
                    recipients.add(b)
                elif donor == b:
                    recipients.add(a)
            for u in sorted(recipients):
                u_cls = class_by_vertex.get(u)
                if u_cls is None or u_cls.degree != 3:
                    continue
                if u_cls.total == 6:
                    charge[donor] -= bonus6
                    charge[u] += bonus6
                elif u_cls.total == 5:
                    if dist == 1 and donor_cls.degree == 3 and donor_cls.total == 5:
                        continue
                    charge[donor] -= bonus5
                    charge[u] += bonus5

    checks = []
    for v in range(n):
        cls = class_by_vertex.get(v)
        degree = g.degree(v)
        total = cls.total if cls is not None else 0
        bound = updated_charge_lower_bound(degree, total)
        if bound is not None:
            checks.append(
                BoundCheck(v, degree, total, bound, charge[v], charge[v] >= bound)
            )
    report = DischargingReport(
        initial=initial,
        final=tuple(charge),
        total_initial=sum(initial),
        total_final=sum(charge),
        lower_bound_checks=tuple(checks),
    )
    assert report.total_initial == report.total_final
    assert report.total_initial == -2 * potential(g)
    return report
