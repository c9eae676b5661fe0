from __future__ import annotations

from vnlab.errors import InvalidLevelError, SchemeInputError
from vnlab.graph.core import LabeledGraph, apply_obfuscation
from vnlab.graph.labels import VertexLabel
from vnlab.graph.permutation import Obfuscation
from vnlab.schemes.base import Scheme


def check_level(k: int, m: int) -> None:
    if not 1 <= k <= m - 1:
        raise InvalidLevelError(f"level k={k} outside [1, {m - 1}]")


def target_rank(
    scheme: Scheme,
    g1: LabeledGraph,
    g2: LabeledGraph,
    o: Obfuscation,
    v_star: VertexLabel,
    core_size: int | None = None,
) -> int:
    """Rank of ``o(u*)`` in the scheme's list, ``u*`` being the correspondent of ``v*``.

    With ``core_size`` given, ``v*`` must be one of the first ``core_size`` vertices.
    """
    if core_size is not None and not 1 <= v_star.id <= core_size:
        raise SchemeInputError(f"{v_star} is not a core vertex (core size {core_size})")
    u_star = VertexLabel.u(v_star.id)
    if u_star not in g2.index:
        raise SchemeInputError(f"{v_star} has no correspondent in g2")
    ranked = scheme.nominate(g1, apply_obfuscation(g2, o), v_star)
    return ranked.rank(o(u_star))


def level_k_loss(
    scheme: Scheme,
    g1: LabeledGraph,
    g2: LabeledGraph,
    o: Obfuscation,
    v_star: VertexLabel,
    k: int,
) -> int:
    """1 when ``o(v*)`` is not among the top ``k`` nominees, else 0."""
    check_level(k, g2.n)
    return int(target_rank(scheme, g1, g2, o, v_star) > k)
