from src.graphs.io import to_dot
from src.ev.ev import EvSystem
from src.scheme.epsilon import EpsilonMap

EPSILON_HEADER = ("a in E(R)", "epsilon(a) in E(S)")


def render_table(rows: list[tuple[str, str]], header: tuple[str, str] = EPSILON_HEADER) -> str:
    lines = [f"| {header[0]} | {header[1]} |", "|---|---|"]
    for source, target in rows:
        lines.append(f"| {source} | {target} |")
    return "\n".join(lines)


def render_epsilon(e: EpsilonMap) -> str:
    """two-column table, one block per fiber of the source ev-system"""
    blocks: list[str] = []
    base = e.source.base_graph
    for v in range(base.n):
        rows = [
            (e.source.format_vertex(i), e.target.format_vertex(e.images[i]))
            for i in e.source.fiber(v)
        ]
        blocks.append(f"{base.label(v)}:\n" + render_table(rows))
    return "\n\n".join(blocks)


def render_dot(ev: EvSystem, name: str = "EV") -> str:
    """the ev-graph with one cluster per fiber of phi, labeled by its base vertex"""
    base = ev.base_graph
    return to_dot(
        ev.graph,
        name=name,
        node_labels=[ev.format_vertex(i) for i in range(ev.size)],
        clusters=[(base.label(v), ev.fiber(v)) for v in range(base.n)],
        undirected=ev.undirected,
    )
