"""Graphviz output for specialization orders and lattices."""
from __future__ import annotations

from .order import FinitePreorder, bits
from .topology import FiniteSpace, specialization


def _quote(label) -> str:
    s = str(label).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def hasse_edges(p: FinitePreorder) -> list[tuple[int, int]]:
    """Cover pairs ``a < b`` between class representatives (least index per class)."""
    n = p.size
    rep = [min(bits(p.up[i] & p.down[i])) for i in range(n)]
    reps = sorted(set(rep))
    strict = {a: [b for b in reps if b != a and p.le(a, b) and not p.le(b, a)] for a in reps}
    edges = []
    for a in reps:
        for b in strict[a]:
            if not any(c in strict[a] and b in strict[c] for c in strict[a]):
                edges.append((a, b))
    return edges


def preorder_dot(p: FinitePreorder, name: str = "order") -> str:
    """One node per element, an arrow ``a -> b`` for each cover ``a < b``.

    Points with the same closure are joined by a dashed undirected edge,
    and only one of them carries the arrows.
    """
    lines = [f"digraph {name} {{", "\trankdir=BT;"]
    for i, x in enumerate(p.elements):
        lines.append(f"\tn{i} [label={_quote(x)}];")
    for a, b in hasse_edges(p):
        lines.append(f"\tn{a} -> n{b};")
    for i in range(p.size):
        for j in range(i + 1, p.size):
            if p.le(i, j) and p.le(j, i):
                lines.append(f"\tn{i} -> n{j} [style=dashed, dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def space_dot(X: FiniteSpace, name: str = "space") -> str:
    """Hasse diagram of the specialization order (``a <= b`` iff ``a`` lies in the closure of ``b``)."""
    return preorder_dot(specialization(X), name)
