from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.config import CONFIG
from src.errors import GraphFormatError, LimitExceededError
from src.graphs.digraph import ClassTag, Digraph, bits


class GraphFile(BaseModel):
    """json graph format, `{"labels": [...], "arcs": [[0, 2]], "loops": "all", "class": "poset"}`"""

    model_config = ConfigDict(populate_by_name=True)

    labels: list[str] | None = None
    n: int | None = None
    arcs: list[tuple[int, int]] = []
    loops: Literal["all", "none"] | list[int] = "none"
    class_tag: ClassTag | None = Field(default=None, alias="class")

    def to_digraph(self) -> Digraph:
        n = len(self.labels) if self.labels is not None else self.n
        if n is None:
            raise GraphFormatError("graph file needs either `labels` or `n`")
        if self.n is not None and self.n != n:
            raise GraphFormatError(f"`n` is {self.n} but {n} labels were given")
        if n > CONFIG.graph_max_vertices:
            raise LimitExceededError(
                f"graph has {n} vertices, the limit is {CONFIG.graph_max_vertices}"
            )
        match self.loops:
            case "all":
                loops: list[int] = list(range(n))
            case "none":
                loops = []
            case _:
                loops = list(self.loops)
        try:
            return Digraph.from_arcs(n, self.arcs, loops=loops, labels=self.labels)
        except ValueError as e:
            raise GraphFormatError(str(e)) from e

    @classmethod
    def from_digraph(cls, g: Digraph, class_tag: ClassTag | None = None) -> "GraphFile":
        if g.loop_mask == g.full:
            loops: Literal["all", "none"] | list[int] = "all"
        elif g.loop_mask == 0:
            loops = "none"
        else:
            loops = list(bits(g.loop_mask))
        return cls(
            labels=list(g.labels) if g.labels is not None else None,
            n=None if g.labels is not None else g.n,
            arcs=list(g.proper_arcs()),
            loops=loops,
            class_tag=class_tag,
        )

    def dump(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True)


def load_graph(path: Path) -> tuple[Digraph, ClassTag | None]:
    try:
        graph_file = GraphFile.model_validate_json(path.read_text())
    except ValidationError as e:
        raise GraphFormatError(f"could not parse graph file {path}: {e}") from e
    return graph_file.to_digraph(), graph_file.class_tag


def dump_graph(g: Digraph, path: Path, class_tag: ClassTag | None = None) -> None:
    path.write_text(GraphFile.from_digraph(g, class_tag).dump() + "\n")


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    g: Digraph,
    name: str = "G",
    node_labels: list[str] | None = None,
    clusters: list[tuple[str, list[int]]] | None = None,
    undirected: bool = False,
) -> str:
    """
    dot text with one node per vertex and one edge per arc (loops included), in
    id order. clusters group nodes into labeled subgraphs.
    """
    labels = node_labels or [g.label(v) for v in range(g.n)]
    lines = [f"{'graph' if undirected else 'digraph'} {_quote(name)} {{"]
    lines.append("    node [shape=box];")

    clustered: set[int] = set()
    for k, (title, members) in enumerate(clusters or []):
        lines.append(f"    subgraph cluster_{k} {{")
        lines.append(f"        label={_quote(title)};")
        for v in members:
            lines.append(f"        n{v} [label={_quote(labels[v])}];")
            clustered.add(v)
        lines.append("    }")
    for v in range(g.n):
        if v not in clustered:
            lines.append(f"    n{v} [label={_quote(labels[v])}];")

    connector = "--" if undirected else "->"
    for u, v in g.arcs():
        if undirected and v < u:
            continue
        lines.append(f"    n{u} {connector} n{v};")
    lines.append("}")
    return "\n".join(lines)
