from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.errors import GraphFormatError
from src.ev.build import build_system
from src.graphs.digraph import ClassTag, Digraph
from src.scheme.epsilon import EpsilonMap


class EpsilonFile(BaseModel):
    """
    an epsilon map as target indices in source ev-order. both ev tables are
    embedded so that a file can be checked against the graphs it is loaded for.
    """

    model_config = ConfigDict(populate_by_name=True)

    class_tag: ClassTag = Field(alias="class")
    source: list[str]
    target: list[str]
    images: list[int]

    @classmethod
    def from_epsilon(cls, e: EpsilonMap) -> "EpsilonFile":
        return cls(
            class_tag=e.source.cls,
            source=[e.source.format_vertex(i) for i in range(e.source.size)],
            target=[e.target.format_vertex(j) for j in range(e.target.size)],
            images=list(e.images),
        )

    def to_epsilon(self, r: Digraph, s: Digraph) -> EpsilonMap:
        source, target = build_system(r, self.class_tag), build_system(s, self.class_tag)
        for name, system, table in (("source", source, self.source), ("target", target, self.target)):
            actual = [system.format_vertex(i) for i in range(system.size)]
            if actual != table:
                raise GraphFormatError(
                    f"the embedded {name} ev table does not match the ev-system of the given graph"
                )
        try:
            return EpsilonMap(source, target, tuple(self.images))
        except ValueError as e:
            raise GraphFormatError(str(e)) from e

    def dump(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


def load_epsilon(path: Path, r: Digraph, s: Digraph) -> EpsilonMap:
    try:
        epsilon_file = EpsilonFile.model_validate_json(path.read_text())
    except ValidationError as e:
        raise GraphFormatError(f"could not parse epsilon file {path}: {e}") from e
    return epsilon_file.to_epsilon(r, s)


def dump_epsilon(e: EpsilonMap, path: Path) -> None:
    path.write_text(EpsilonFile.from_epsilon(e).dump() + "\n")
