import json
import logging
import sys
from collections.abc import Callable
from functools import wraps
from pathlib import Path
from typing import Literal

import click
from pydantic import BaseModel

from src.config import CONFIG
from src.corpus import CORPUS, CorpusEntry
from src.corpus.render import render_dot, render_epsilon
from src.corpus.reproduce import reproduce
from src.errors import ClassMismatchError, EvError
from src.ev.build import build_system
from src.ev.ev import check_erd_aid
from src.graphs.digraph import ClassTag, Digraph, member_of
from src.graphs.io import GraphFile, dump_graph, load_graph
from src.homs.homs import enumerate_homs
from src.homs.lovasz import compare_lovasz
from src.rearrange.rearrange import (
    RearrangementSpec,
    SpecFile,
    apply,
    collision_witnesses,
    epsilon_explicit,
    injectivity_criterion,
    load_spec,
)
from src.scheme.certify import certify
from src.scheme.epsilon import EpsilonMap
from src.scheme.io import EpsilonFile, dump_epsilon, load_epsilon
from src.scheme.search import find_inducing_epsilon
from src.undirected.rearrange import epsilon_from_rho_u, rearrange_u
from src.undirected.ugraph import UGraphFile, from_symmetric, load_ugraph, to_symmetric

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(levelname)s - %(message)s",
)

logger = logging.getLogger(__name__)

type Output = Literal["table", "json", "dot"]


SHARED_OPTIONS: list[Callable[..., Callable[..., object]]] = [
    click.option("--class", "class_tag", type=click.Choice([c.value for c in ClassTag])),
    click.option("--nmax", "n_max", type=int),
    click.option("--undirected", is_flag=True, default=False),
    click.option("--json", "output", flag_value="json"),
    click.option("--table", "output", flag_value="table"),
    click.option("--dot", "output", flag_value="dot"),
    click.option("--verbose", is_flag=True, default=False),
]


def shared_options[F: Callable[..., object]](func: F) -> F:
    for option in reversed(SHARED_OPTIONS):
        func = option(func)  # type: ignore[assignment]
    return func


class RunOptions(BaseModel):
    cls: ClassTag
    n_max: int
    undirected: bool
    output: Output


def build_options(
    class_tag: str | None,
    n_max: int | None,
    undirected: bool,
    output: str | None,
    verbose: bool,
    entry: CorpusEntry | None = None,
) -> RunOptions:
    """explicit options first, then the referenced corpus entry, then CONFIG"""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    if class_tag is not None:
        cls = ClassTag(class_tag)
    elif entry is not None:
        cls = entry.cls
    elif undirected:
        cls = ClassTag.ALL_UGRAPHS
    else:
        cls = ClassTag(CONFIG.default_class)
    if undirected and cls.directed:
        raise ClassMismatchError(f"--undirected needs an undirected class, got {cls.value}")
    return RunOptions(
        cls=cls,
        n_max=n_max or (entry.expected.n_max if entry is not None else CONFIG.default_n_max),
        undirected=undirected or not cls.directed,
        output=output or "table",  # type: ignore[arg-type]
    )


def handle_errors[F: Callable[..., object]](func: F) -> F:
    """library errors become a message on stderr and the exit code they carry"""

    @wraps(func)
    def wrapper(*args: object, **kwargs: object) -> object:
        try:
            return func(*args, **kwargs)
        except EvError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(e.exit_code)

    return wrapper  # type: ignore[return-value]


def lookup_entry(ref: str) -> CorpusEntry | None:
    name, _, _ = ref.rpartition(":") if ref.endswith((":r", ":s")) else (ref, "", "")
    return CORPUS.get(name)


def load_reference(ref: str, undirected: bool) -> Digraph:
    """a json file, a corpus name (its R), or `name:r` / `name:s`"""
    entry = lookup_entry(ref)
    if entry is not None:
        return entry.s if ref.endswith(":s") else entry.r
    path = Path(ref)
    if not path.is_file():
        raise click.BadParameter(f"{ref} is neither a graph file nor a corpus entry")
    if undirected:
        return to_symmetric(load_ugraph(path))
    g, _ = load_graph(path)
    return g


def load_pair(r_ref: str, s_ref: str | None, undirected: bool) -> tuple[Digraph, Digraph]:
    """a single corpus name stands for its R and S"""
    if s_ref is None:
        entry = lookup_entry(r_ref)
        if entry is None or r_ref.endswith((":r", ":s")):
            raise click.UsageError("a second graph is needed unless the first is a corpus entry")
        return entry.r, entry.s
    return load_reference(r_ref, undirected), load_reference(s_ref, undirected)


def emit_epsilon_rows(e: EpsilonMap, output: Output) -> None:
    if output == "json":
        click.echo(EpsilonFile.from_epsilon(e).model_dump_json(by_alias=True))
    else:
        click.echo(render_epsilon(e))


@click.group()
def cli():
    pass


@cli.command()
@click.argument("graph")
@shared_options
@handle_errors
def ev(
    graph: str,
    class_tag: str | None,
    n_max: int | None,
    undirected: bool,
    output: str | None,
    verbose: bool,
):
    """print the ev-system of GRAPH"""
    options = build_options(class_tag, n_max, undirected, output, verbose, lookup_entry(graph))
    r = load_reference(graph, options.undirected)
    system = build_system(r, options.cls)
    match options.output:
        case "json":
            ev_graph = GraphFile.from_digraph(system.graph, options.cls)
            ev_graph.labels = [system.format_vertex(i) for i in range(system.size)]
            ev_graph.n = None
            click.echo(ev_graph.dump())
        case "dot":
            click.echo(render_dot(system, name=f"E({graph})"))
        case _:
            click.echo(system.format_table())
            if not options.undirected:
                result = check_erd_aid(system)
                click.echo("")
                click.echo(f"erd: {'yes' if result.erd else 'NO'}  aid: {'yes' if result.aid else 'NO'}")


@cli.command()
@click.argument("source")
@click.argument("target")
@click.option("--strict", is_flag=True, default=False)
@click.option("--list", "list_maps", is_flag=True, default=False, help="print every map")
@shared_options
@handle_errors
def homcount(
    source: str,
    target: str,
    strict: bool,
    list_maps: bool,
    class_tag: str | None,
    n_max: int | None,
    undirected: bool,
    output: str | None,
    verbose: bool,
):
    """count the (strict) homomorphisms from SOURCE to TARGET"""
    options = build_options(class_tag, n_max, undirected, output, verbose)
    g = load_reference(source, options.undirected)
    h = load_reference(target, options.undirected)
    maps = list(enumerate_homs(g, h, strict=strict))
    if options.output == "json":
        payload: dict[str, object] = {"count": len(maps), "strict": strict}
        if list_maps:
            payload["maps"] = [m.as_labels() for m in maps]
        click.echo(json.dumps(payload))
        return
    click.echo(f"{'#S' if strict else '#H'}(G, H) = {len(maps)}")
    if list_maps:
        for m in maps:
            click.echo(m.describe())


@cli.command()
@click.argument("r_ref")
@click.argument("s_ref", required=False)
@click.option("--strict", is_flag=True, default=False)
@shared_options
@handle_errors
def compare(
    r_ref: str,
    s_ref: str | None,
    strict: bool,
    class_tag: str | None,
    n_max: int | None,
    undirected: bool,
    output: str | None,
    verbose: bool,
):
    """check that R is dominated by S on every class member up to --nmax vertices"""
    options = build_options(class_tag, n_max, undirected, output, verbose, lookup_entry(r_ref))
    r, s = load_pair(r_ref, s_ref, options.undirected)
    report = compare_lovasz(r, s, options.cls, options.n_max, strict)
    if options.output == "json":
        click.echo(report.model_dump_json())
    else:
        click.echo(report.format_table())
    if not report.dominated:
        sys.exit(1)


@cli.command(name="check-epsilon")
@click.argument("r_ref")
@click.argument("s_ref", required=False)
@click.option(
    "--epsilon",
    "epsilon_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="epsilon file, defaults to the epsilon of the corpus entry",
)
@shared_options
@handle_errors
def check_epsilon(
    r_ref: str,
    s_ref: str | None,
    epsilon_path: Path | None,
    class_tag: str | None,
    n_max: int | None,
    undirected: bool,
    output: str | None,
    verbose: bool,
):
    """certify an epsilon map between the ev-systems of R and S"""
    entry = lookup_entry(r_ref)
    options = build_options(class_tag, n_max, undirected, output, verbose, entry)
    if epsilon_path is not None:
        r, s = load_pair(r_ref, s_ref, options.undirected)
        e = load_epsilon(epsilon_path, r, s)
    elif entry is not None and s_ref is None:
        e = entry.build_epsilon()
    else:
        raise click.UsageError("--epsilon is required unless a corpus entry is given")
    report = certify(e, options.n_max)
    if options.output == "json":
        click.echo(report.model_dump_json())
    else:
        click.echo(report.format_report())
    if not report.all_hold:
        sys.exit(1)


@cli.command(name="search-epsilon")
@click.argument("r_ref")
@click.argument("s_ref", required=False)
@click.option("--limit", type=int, help="stop after this many maps")
@click.option("--budget", type=int, help="node budget of the search")
@shared_options
@handle_errors
def search_epsilon(
    r_ref: str,
    s_ref: str | None,
    limit: int | None,
    budget: int | None,
    class_tag: str | None,
    n_max: int | None,
    undirected: bool,
    output: str | None,
    verbose: bool,
):
    """stream every certified epsilon found between the ev-systems of R and S"""
    options = build_options(class_tag, n_max, undirected, output, verbose, lookup_entry(r_ref))
    r, s = load_pair(r_ref, s_ref, options.undirected)
    found = 0
    for e in find_inducing_epsilon(r, s, options.cls, options.n_max, budget=budget):
        found += 1
        emit_epsilon_rows(e, options.output)
        if limit is not None and found >= limit:
            break
    click.echo(f"{found} epsilon maps found", err=True)


def _rearrange_directed(
    r: Digraph, spec: RearrangementSpec, options: RunOptions
) -> tuple[Digraph, EpsilonMap]:
    s = apply(r, spec)
    cls = options.cls
    if not (member_of(r, cls) and member_of(s, cls)):
        logger.info("R or S is not a member of class %s, using all digraphs", cls.value)
        cls = ClassTag.ALL_DIGRAPHS
    return s, epsilon_explicit(r, spec, cls)


@cli.command()
@click.argument("graph")
@click.argument("spec_path", required=False, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--emit-s", type=click.Path(dir_okay=False, path_type=Path), help="write S here")
@click.option("--emit-eps", type=click.Path(dir_okay=False, path_type=Path), help="write epsilon here")
@click.option("--verify", "verify_n", type=int, help="certify epsilon and check dominance up to this size")
@shared_options
@handle_errors
def rearrange(
    graph: str,
    spec_path: Path | None,
    emit_s: Path | None,
    emit_eps: Path | None,
    verify_n: int | None,
    class_tag: str | None,
    n_max: int | None,
    undirected: bool,
    output: str | None,
    verbose: bool,
):
    """rearrange GRAPH by a spec file, or by the spec of a corpus entry"""
    entry = lookup_entry(graph)
    options = build_options(class_tag, n_max, undirected, output, verbose, entry)
    r = load_reference(graph, options.undirected)
    if spec_path is not None:
        spec = load_spec(spec_path, r)
    elif entry is not None and entry.spec is not None:
        spec = entry.spec
    else:
        raise click.UsageError("a spec file is required unless the corpus entry carries one")

    if options.undirected:
        moved = rearrange_u(from_symmetric(r), spec)
        s = to_symmetric(moved)
        e = epsilon_from_rho_u(from_symmetric(r), spec, options.cls)
        if emit_s is not None:
            emit_s.write_text(UGraphFile.from_ugraph(moved).model_dump_json() + "\n")
    else:
        s, e = _rearrange_directed(r, spec, options)
        if emit_s is not None:
            dump_graph(s, emit_s, e.source.cls)
    if emit_eps is not None:
        dump_epsilon(e, emit_eps)

    if options.output == "json":
        click.echo(
            json.dumps(
                {
                    "spec": SpecFile.from_spec(r, spec).model_dump(mode="json", by_alias=True),
                    "s": GraphFile.from_digraph(s).model_dump(mode="json", by_alias=True, exclude_none=True),
                    "epsilon": EpsilonFile.from_epsilon(e).model_dump(mode="json", by_alias=True),
                }
            )
        )
    else:
        click.echo(f"S: {s.describe()}")
        if not options.undirected:
            criterion = injectivity_criterion(r, spec)
            click.echo(f"epsilon injective: {'yes' if criterion else 'NO'}")
            for a, b in collision_witnesses(r, spec):
                click.echo(f"    {e.source.format_ev(a)} and {e.source.format_ev(b)} collide")
        click.echo("")
        click.echo(render_epsilon(e))

    if verify_n is not None:
        report = certify(e, verify_n)
        dominance = compare_lovasz(r, s, e.source.cls, verify_n, strict=True)
        click.echo("")
        click.echo(report.format_report())
        click.echo(f"strict dominance up to n = {verify_n}: {'yes' if dominance.dominated else 'NO'}")
        if not (report.eta_injective_empirical and dominance.dominated):
            sys.exit(1)


@cli.group()
def corpus():
    """the built-in worked examples"""


@corpus.command(name="list")
@click.option("--json", "as_json", is_flag=True, default=False)
def corpus_list(as_json: bool):
    if as_json:
        click.echo(
            json.dumps(
                [
                    {"name": entry.name, "class": entry.cls.value, "description": entry.description}
                    for entry in CORPUS.all_entries()
                ]
            )
        )
        return
    click.echo(CORPUS.format_listing())


@corpus.command(name="reproduce")
@click.argument("names", nargs=-1)
@click.option("--nmax", "n_max", type=int, help="overrides the scan bound of every entry")
@click.option("--json", "as_json", is_flag=True, default=False)
@click.option("--verbose", is_flag=True, default=False, help="also list the checks that pass")
@handle_errors
def corpus_reproduce(names: tuple[str, ...], n_max: int | None, as_json: bool, verbose: bool):
    """regenerate the expected tables of the given entries, all of them by default"""
    selected = list(names) or CORPUS.names()
    failed = False
    for name in selected:
        entry = CORPUS.get(name)
        if entry is None:
            raise click.BadParameter(f"unknown corpus entry {name}")
        report = reproduce(entry, n_max)
        failed = failed or not report.ok
        if as_json:
            click.echo(report.model_dump_json())
        else:
            click.echo(report.format_report(verbose))
            click.echo("")
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    cli()
