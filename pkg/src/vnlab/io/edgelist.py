from __future__ import annotations

from pathlib import Path

import numpy as np
from loguru import logger

from vnlab.errors import EdgeListParseError
from vnlab.graph.core import LabeledGraph, make_graph
from vnlab.graph.labels import Namespace


def _ints(tokens: list[str], path: Path, line: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        found = " ".join(tokens)
        raise EdgeListParseError(f"expected integers, got {found!r}", path, line) from None


def _data_lines(path: Path) -> list[tuple[int, str]]:
    if not path.exists():
        raise FileNotFoundError(f"Edge list not found: {path}")
    text = path.read_text(encoding="ascii")
    return [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]


def read_edgelist(path: str | Path, namespace: Namespace = Namespace.V1) -> LabeledGraph:
    """Read the plain edge-list format.

    First line ``n e``, then ``e`` lines ``u v`` with ``1 <= u < v <= n``.

    :param path: file to read.
    :param namespace: label namespace assigned to vertices ``1..n``.
    :raises EdgeListParseError: on a malformed header or edge line, with its line number.
    :return: the graph, labels ``namespace 1..n``.
    """
    path = Path(path)
    lines = _data_lines(path)
    if not lines:
        raise EdgeListParseError("missing 'n e' header", path, 1)

    hline, header = lines[0]
    head = header.split()
    if len(head) != 2:
        raise EdgeListParseError("header must be 'n e'", path, hline)
    n, e = _ints(head, path, hline)
    if n < 0 or e < 0:
        raise EdgeListParseError("header counts must be non-negative", path, hline)

    body = lines[1:]
    if len(body) != e:
        where = body[e][0] if len(body) > e else (body[-1][0] + 1 if body else hline + 1)
        raise EdgeListParseError(f"header announces {e} edges, found {len(body)}", path, where)

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, text in body:
        tok = text.split()
        if len(tok) != 2:
            raise EdgeListParseError("edge line must be 'u v'", path, lineno)
        a, b = _ints(tok, path, lineno)
        if a == b:
            raise EdgeListParseError(f"self-loop {a} {b}", path, lineno)
        if not (1 <= a <= n and 1 <= b <= n):
            raise EdgeListParseError(f"endpoint outside [1, {n}]", path, lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise EdgeListParseError(f"duplicate edge {key[0]} {key[1]}", path, lineno)
        seen.add(key)
        edges.append(key)

    logger.debug("Read {} vertices, {} edges from {}", n, e, path)
    return make_graph(n, edges, namespace=namespace)


def write_edgelist(g: LabeledGraph, path: str | Path) -> None:
    """Write ``g`` with vertex positions as 1-based ids; pairs in sorted order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    A = g.adjacency
    iu, ju = np.nonzero(np.triu(A, k=1))
    pairs = sorted((int(i) + 1, int(j) + 1) for i, j in zip(iu, ju))
    out = [f"{g.n} {len(pairs)}"] + [f"{a} {b}" for a, b in pairs]
    path.write_text("\n".join(out) + "\n", encoding="ascii")


def read_features(path: str | Path, n: int | None = None) -> np.ndarray:
    """Read a feature sidecar: optional ``n d_f`` header then ``n`` rows of reals.

    The header is recognised when the first line holds two integers and the rows that
    follow number exactly the first of them.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Feature file not found: {path}")
    lines = [
        (i, ln.split())
        for i, ln in enumerate(path.read_text(encoding="ascii").splitlines(), start=1)
        if ln.strip()
    ]
    if not lines:
        return np.zeros((0 if n is None else n, 0))

    declared_d: int | None = None
    first = lines[0][1]
    if len(first) == 2 and all(t.lstrip("-").isdigit() for t in first):
        hn, hd = int(first[0]), int(first[1])
        if hd == 0 and len(lines) == 1:
            return np.zeros((hn, 0))
        if len(lines) - 1 == hn and (n is None or n == hn):
            declared_d = hd
            lines = lines[1:]
            if n is None:
                n = hn

    rows: list[list[float]] = []
    width = declared_d
    for lineno, tok in lines:
        try:
            row = [float(t) for t in tok]
        except ValueError:
            raise EdgeListParseError("feature row must hold decimal reals", path, lineno) from None
        if width is None:
            width = len(row)
        if len(row) != width:
            raise EdgeListParseError(f"expected {width} values, got {len(row)}", path, lineno)
        rows.append(row)

    if n is not None and len(rows) != n:
        raise EdgeListParseError(f"expected {n} feature rows, got {len(rows)}", path)
    return np.array(rows, dtype=np.float64).reshape(len(rows), width or 0)


def write_features(g: LabeledGraph, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    X = g.features if g.features is not None else np.zeros((g.n, 0))
    out = [f"{X.shape[0]} {X.shape[1]}"] + [" ".join(repr(float(x)) for x in row) for row in X]
    path.write_text("\n".join(out) + "\n", encoding="ascii")
