from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Mapping
from fractions import Fraction

from loguru import logger

from vnlab.errors import SchemeInputError, UndefinedConditionalError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.iso.canonical import canonical_form
from vnlab.iso.isomorphism import automorphism_orbits
from vnlab.models.finite import FiniteDistribution, Mass
from vnlab.schemes.base import NominationList, Scheme, check_scheme_inputs
from vnlab.schemes.tiebreak import CanonicalTieBreak, RepresentativeTieBreak, TieBreak

CellKey = tuple[LabeledGraph, tuple]


class _CellTable:
    """Atom masses grouped by ``(g1, class of o(g2))`` and by where ``u*`` sits in the class.

    ``slot`` turns an atom's second graph into a label-free description of the place of
    the correspondent of ``v*``: a canonical position for the flat scheme, the set of
    canonical positions of its orbit for the orbit scheme.
    """

    def __init__(self, F: FiniteDistribution, by_orbit: bool) -> None:
        self.F = F
        self.by_orbit = by_orbit
        cells: dict[CellKey, dict[object, Mass]] = defaultdict(lambda: defaultdict(lambda: F.zero))
        orbit_slots: dict[tuple, dict[int, frozenset[int]]] = {}
        for pair, mass in F.atoms:
            g2 = pair.g2
            cf = canonical_form(g2)
            if cf.key not in orbit_slots:
                # orbits as canonical position sets are the same for every class member
                orbits = automorphism_orbits(g2, respect_features=True).orbits
                orbit_slots[cf.key] = {
                    cf.position(x): frozenset(cf.position(y) for y in orb)
                    for orb in orbits
                    for x in orb
                }
            p = cf.position(pair.correspondent(F.v_star))
            if by_orbit:
                slot: object = orbit_slots[cf.key][p]
            else:
                if any(len(s) > 1 for s in orbit_slots[cf.key].values()):
                    raise SchemeInputError(
                        "support contains a graph with nontrivial automorphisms; "
                        "use the orbit scheme"
                    )
                slot = p
            cells[(pair.g1, cf.key)][slot] += mass
        self.cells = {k: dict(v) for k, v in cells.items()}
        logger.debug("Indexed {} atoms into {} support cells", len(F), len(self.cells))

    def cell(self, g1: LabeledGraph, key: tuple) -> dict[object, Mass]:
        try:
            return self.cells[(g1, key)]
        except KeyError:
            raise UndefinedConditionalError(
                "input pair lies outside the support; the conditional law is undefined"
            ) from None


def _total(masses: Mapping[object, Mass]) -> Mass:
    values = list(masses.values())
    if all(isinstance(v, Fraction) for v in values):
        return sum(values, start=Fraction(0))
    return float(sum(values))


class BayesOptimalScheme(Scheme):
    """Rank W by the conditional probability of being ``o(v*)`` given the observed cell.

    Needs a finite support of asymmetric graphs; ties follow the tie-break order.
    """

    name = "bayes-optimal"

    def __init__(self, F: FiniteDistribution, tie_break: TieBreak | None = None) -> None:
        self.F = F
        self.tie_break = tie_break or CanonicalTieBreak()
        self._table = _CellTable(F, by_orbit=False)

    def conditional(self, g1: LabeledGraph, og2: LabeledGraph) -> dict[VertexLabel, Mass]:
        """``P[w = o(v*) | cell]`` for every ``w``; exact when the masses are rational."""
        cf = canonical_form(og2)
        cell = self._table.cell(g1, cf.key)
        total = _total(cell)
        return {w: cell.get(cf.position(w), self.F.zero) / total for w in og2.labels}

    def nominate(self, g1: LabeledGraph, og2: LabeledGraph, v_star: VertexLabel) -> NominationList:
        check_scheme_inputs(g1, og2, v_star)
        cf = canonical_form(og2)
        cell = self._table.cell(g1, cf.key)
        slot = {w: i for i, w in enumerate(self.tie_break.order(og2))}
        order = sorted(og2.labels, key=lambda w: (-cell.get(cf.position(w), 0), slot[w]))
        return NominationList(tuple(order))


class BayesOrbitScheme(Scheme):
    """Orbit-level Bayes ranking for supports with symmetric graphs.

    Orbits of ``o(g2)`` are ordered by the conditional mass of holding ``o(v*)``, ties
    by their earliest member in ``T``. The list then takes one vertex from each orbit in
    turn, cycling through the orbits in that order and picking each orbit's members in
    ``T`` order, until every vertex is placed.
    """

    name = "bayes-orbit"

    def __init__(self, F: FiniteDistribution, tie_break: TieBreak | None = None) -> None:
        self.F = F
        self.tie_break = tie_break or CanonicalTieBreak()
        self._table = _CellTable(F, by_orbit=True)

    def orbit_masses(
        self, g1: LabeledGraph, og2: LabeledGraph
    ) -> dict[frozenset[VertexLabel], Mass]:
        cf = canonical_form(og2)
        cell = self._table.cell(g1, cf.key)
        total = _total(cell)
        orbits = automorphism_orbits(og2, respect_features=True).orbits
        return {
            orb: cell.get(frozenset(cf.position(x) for x in orb), self.F.zero) / total
            for orb in orbits
        }

    def nominate(self, g1: LabeledGraph, og2: LabeledGraph, v_star: VertexLabel) -> NominationList:
        check_scheme_inputs(g1, og2, v_star)
        masses = self.orbit_masses(g1, og2)
        slot = {w: i for i, w in enumerate(self.tie_break.order(og2))}
        queues = [
            deque(sorted(orb, key=slot.__getitem__))
            for orb in sorted(masses, key=lambda o: (-masses[o], min(slot[x] for x in o)))
        ]
        order: list[VertexLabel] = []
        while queues:
            for q in queues:
                order.append(q.popleft())
            queues = [q for q in queues if q]
        return NominationList(tuple(order))


def bayes_optimal_scheme(
    F: FiniteDistribution,
    tie_break: TieBreak | None = None,
    representatives: Mapping[tuple, LabeledGraph] | None = None,
) -> BayesOptimalScheme:
    """Flat Bayes-optimal scheme for ``F``.

    :param representatives: optional class representatives (canonical key to a W-labeled
        member); ties are then broken on the representative and carried over.
    """
    if representatives is not None:
        if tie_break is not None:
            raise SchemeInputError("pass either a tie-break order or representatives, not both")
        tie_break = RepresentativeTieBreak(representatives)
    return BayesOptimalScheme(F, tie_break)


def bayes_optimal_orbit_scheme(
    F: FiniteDistribution, tie_break: TieBreak | None = None
) -> BayesOrbitScheme:
    return BayesOrbitScheme(F, tie_break)
