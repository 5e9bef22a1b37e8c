import logging
import random
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.errors import ClassMismatchError, GraphFormatError, InvalidSpecError, NotStrictError
from src.graphs.digraph import ClassTag, Digraph, VertexSet, bits, mask_of
from src.homs.homs import VertexMap, is_strict_hom
from src.ev.ev import EvSystem, EvVertex, ev_build, lift_indices
from src.scheme.epsilon import EpsilonMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RearrangementSpec:
    """move the arcs between M and X over to beta[X]; beta is stored as sorted (x, beta(x)) pairs"""

    x: VertexSet
    y: VertexSet
    m: VertexSet
    beta: tuple[tuple[int, int], ...]

    @classmethod
    def from_map(cls, x: VertexSet, y: VertexSet, m: VertexSet, beta: dict[int, int]) -> "RearrangementSpec":
        return cls(x, y, m, tuple(sorted(beta.items())))

    @cached_property
    def beta_map(self) -> dict[int, int]:
        return dict(self.beta)

    def image(self, mask: VertexSet) -> VertexSet:
        return mask_of(self.beta_map[v] for v in bits(mask) if v in self.beta_map)


class SpecFile(BaseModel):
    """`{"X": ["x"], "Y": ["y"], "M": ["m"], "beta": {"x": "y"}}`, vertices by label"""

    model_config = ConfigDict(populate_by_name=True)

    x: list[str] = Field(alias="X")
    y: list[str] = Field(alias="Y")
    m: list[str] = Field(alias="M")
    beta: dict[str, str]

    def to_spec(self, r: Digraph) -> RearrangementSpec:
        try:
            return RearrangementSpec.from_map(
                mask_of(r.index(name) for name in self.x),
                mask_of(r.index(name) for name in self.y),
                mask_of(r.index(name) for name in self.m),
                {r.index(k): r.index(v) for k, v in self.beta.items()},
            )
        except ValueError as e:
            raise GraphFormatError(f"spec references an unknown vertex: {e}") from e

    @classmethod
    def from_spec(cls, r: Digraph, spec: RearrangementSpec) -> "SpecFile":
        return cls(
            x=[r.label(v) for v in bits(spec.x)],
            y=[r.label(v) for v in bits(spec.y)],
            m=[r.label(v) for v in bits(spec.m)],
            beta={r.label(k): r.label(v) for k, v in spec.beta},
        )


def load_spec(path: Path, r: Digraph) -> RearrangementSpec:
    try:
        spec_file = SpecFile.model_validate_json(path.read_text())
    except ValidationError as e:
        raise GraphFormatError(f"could not parse spec file {path}: {e}") from e
    return spec_file.to_spec(r)


class Violation(BaseModel):
    rule: str
    detail: str
    witnesses: list[str] = []


def shared_violations(
    n: int, nbrs: list[VertexSet], spec: RearrangementSpec, label: Callable[[int], str]
) -> list[Violation]:
    """the conditions shared by the directed and the undirected transform"""
    full = (1 << n) - 1
    if (spec.x | spec.y | spec.m) & ~full:
        raise ValueError(f"spec references ids outside 0..{n - 1}")
    violations: list[Violation] = []
    if spec.x & spec.m:
        violations.append(
            Violation(rule="x_m_overlap", detail="X and M intersect", witnesses=[label(v) for v in bits(spec.x & spec.m)])
        )
    if spec.m & spec.y:
        violations.append(
            Violation(rule="m_y_overlap", detail="M and Y intersect", witnesses=[label(v) for v in bits(spec.m & spec.y)])
        )
    near = [y for y in bits(spec.y) if nbrs[y] & spec.m]
    if near:
        violations.append(
            Violation(rule="m_near_y", detail="a vertex of Y has a neighbor in M", witnesses=[label(v) for v in near])
        )
    beta = spec.beta_map
    values = list(beta.values())
    if (
        mask_of(beta) != spec.x
        or mask_of(values) != spec.y
        or len(set(values)) != len(values)
    ):
        violations.append(
            Violation(rule="beta_not_bijective", detail="beta is not a bijection from X onto Y")
        )
    return violations


def validate_spec(r: Digraph, spec: RearrangementSpec) -> list[Violation]:
    violations = shared_violations(r.n, [r.nbrs(v) for v in range(r.n)], spec, r.label)
    beta = spec.beta_map
    broken = [
        f"{r.label(u)}->{r.label(v)}"
        for u in bits(spec.x)
        for v in bits(r.rows[u] & spec.x)
        if u in beta and v in beta and not r.has_arc(beta[u], beta[v])
    ]
    if broken:
        violations.append(
            Violation(rule="beta_not_hom", detail="beta does not preserve arcs inside X", witnesses=broken)
        )
    uncovered = [
        r.label(x)
        for x, y in spec.beta
        if 0 <= x < r.n and 0 <= y < r.n
        and (r.in_nbrs(x) & ~spec.m & ~r.in_nbrs(y) or r.out_nbrs(x) & ~spec.m & ~r.out_nbrs(y))
    ]
    if uncovered:
        violations.append(
            Violation(
                rule="neighborhood_not_covered",
                detail="a neighbor of x outside M is not a neighbor of beta(x) on the same side",
                witnesses=uncovered,
            )
        )
    return violations


def _require_valid(r: Digraph, spec: RearrangementSpec) -> None:
    violations = validate_spec(r, spec)
    if violations:
        raise InvalidSpecError(violations)


def apply(r: Digraph, spec: RearrangementSpec) -> Digraph:
    """
    arcs between M and X are dropped (A_r) and re-attached to beta[X]:
    m -> x becomes m -> beta(x) and x -> m becomes beta(x) -> m
    """
    _require_valid(r, spec)
    beta = spec.beta_map
    rows = list(r.rows)
    for m in bits(spec.m):
        rows[m] &= ~spec.x
    for x in bits(spec.x):
        rows[x] &= ~spec.m
    for m in bits(spec.m):
        for x in bits(r.rows[m] & spec.x):
            rows[m] |= 1 << beta[x]
    for x in bits(spec.x):
        for m in bits(r.rows[x] & spec.m):
            rows[beta[x]] |= 1 << m
    s = Digraph(r.n, tuple(rows), r.labels)
    logger.debug("rearranged %s into %s", r.describe(), s.describe())
    return s


def b_set(xi: VertexMap, spec: RearrangementSpec) -> VertexSet:
    """vertices sent into X with a neighbor sent into M"""
    g = xi.source
    return mask_of(
        v
        for v in range(g.n)
        if spec.x >> xi.images[v] & 1 and xi.image_of(g.nbrs(v)) & spec.m
    )


def rho(xi: VertexMap, spec: RearrangementSpec, s: Digraph | None = None) -> VertexMap:
    r = xi.target
    if s is None:
        s = apply(r, spec)
    else:
        _require_valid(r, spec)
    if not is_strict_hom(xi):
        raise NotStrictError(f"map ({xi.describe()}) is not a strict homomorphism")
    moved = b_set(xi, spec)
    beta = spec.beta_map
    images = tuple(
        beta[w] if moved >> v & 1 else w for v, w in enumerate(xi.images)
    )
    return VertexMap(xi.source, s, images)


def _explicit_image(r: Digraph, spec: RearrangementSpec, a: EvVertex) -> EvVertex:
    beta = spec.beta_map
    near_m = mask_of(x for x in bits(spec.x) if r.nbrs(x) & spec.m)
    base = a.base
    if spec.x >> base & 1 and (a.down | a.up) & spec.m:
        base = beta[base]
    if spec.m >> a.base & 1:
        down = a.down & ~spec.x | spec.image(a.down & spec.x)
        up = a.up & ~spec.x | spec.image(a.up & spec.x)
    else:
        down = a.down | spec.image(a.down & near_m)
        up = a.up | spec.image(a.up & near_m)
    return EvVertex(base, down, up)


def epsilon_explicit(
    r: Digraph, spec: RearrangementSpec, cls: ClassTag = ClassTag.ALL_DIGRAPHS
) -> EpsilonMap:
    """
    the ev-map of the rearrangement by the closed formulas. a vertex in X with
    a neighbor in M moves to beta of it. over a base in M, members of X are
    replaced by their beta image; elsewhere members of X next to M gain
    their beta image.
    """
    s = apply(r, spec)
    source, target = ev_build(r, cls), ev_build(s, cls)
    images = tuple(target.lookup(_explicit_image(r, spec, a)) for a in source.vertices)
    return EpsilonMap(source, target, images)


def b_phi(r: Digraph, spec: RearrangementSpec) -> list[int]:
    """ev indices (class all digraphs) of B for the map phi: base in X with an M-member in down or up"""
    ev = ev_build(r, ClassTag.ALL_DIGRAPHS)
    return [
        i
        for i, a in enumerate(ev.vertices)
        if spec.x >> a.base & 1 and (a.down | a.up) & spec.m
    ]


def injectivity_criterion(r: Digraph, spec: RearrangementSpec) -> bool:
    """every x in X is either enclosed by M or has no neighbor in M"""
    return all(not r.nbrs(x) & spec.m or not r.nbrs(x) & ~spec.m for x in bits(spec.x))


def collision_witnesses(r: Digraph, spec: RearrangementSpec) -> list[tuple[EvVertex, EvVertex]]:
    """
    pairs of distinct ev-vertices that epsilon_explicit identifies, one for each
    x with neighbors both inside and outside M and each such neighbor v outside M
    """
    pairs: list[tuple[EvVertex, EvVertex]] = []
    for x, y in spec.beta:
        if x == y or not r.nbrs(x) & spec.m:
            continue
        for v in bits(r.in_nbrs(x) & ~spec.m):
            pairs.append((EvVertex(v, 0, 1 << x), EvVertex(v, 0, 1 << x | 1 << y)))
        for v in bits(r.out_nbrs(x) & ~spec.m):
            pairs.append((EvVertex(v, 1 << x, 0), EvVertex(v, 1 << x | 1 << y, 0)))
    return pairs


def epsilon_from_rho(
    r: Digraph, spec: RearrangementSpec, cls: ClassTag = ClassTag.ALL_DIGRAPHS
) -> EpsilonMap:
    """the lift of rho(phi_R) with G the ev-graph of R itself"""
    s = apply(r, spec)
    source, target = ev_build(r, cls), ev_build(s, cls)
    return _lift_of_rho(source, target, rho(VertexMap(source.graph, r, source.phi), spec, s))


def _lift_of_rho(source: EvSystem, target: EvSystem, moved: VertexMap) -> EpsilonMap:
    lifted = lift_indices(target, source.graph, moved.images)
    if lifted is None:
        raise ClassMismatchError("the moved map does not lift into the target ev-system")
    return EpsilonMap(source, target, tuple(lifted))


def sample_valid_specs(
    r: Digraph,
    rng: random.Random,
    count: int,
    disjoint: bool = True,
    attempts: int = 2000,
) -> list[RearrangementSpec]:
    """rejection sampling of valid specs with nonempty X; fewer than count when attempts run out"""
    found: list[RearrangementSpec] = []
    seen: set[RearrangementSpec] = set()
    ids = list(range(r.n))
    for _ in range(attempts):
        if len(found) >= count:
            break
        m = mask_of(v for v in ids if rng.random() < 0.3)
        rest = [v for v in ids if not m >> v & 1]
        if not rest:
            continue
        xs = rng.sample(rest, rng.randint(1, max(1, len(rest) // 2)))
        pool = [v for v in rest if not (disjoint and v in xs)]
        if len(pool) < len(xs):
            continue
        ys = rng.sample(pool, len(xs))
        spec = RearrangementSpec.from_map(mask_of(xs), mask_of(ys), m, dict(zip(xs, ys)))
        if spec in seen or validate_spec(r, spec):
            continue
        seen.add(spec)
        found.append(spec)
    logger.debug("sampled %d valid specs on %s", len(found), r.describe())
    return found
