"""
Command-line front end.

    ratlam check FILE                  exit 0 guarded, 2 unguarded
    ratlam flatten FILE
    ratlam solve FILE [--format text|dot] [--out PATH]
    ratlam unfold FILE [--nonterminal P] [--depth K]
    ratlam alphaeq FILE1 FILE2 [--depth K]
    ratlam interpret FILE [--model tower:N] [--ops OPSFILE] [--golden PATH] [--approx K]
    ratlam verify FILE --solution SOLFILE

Results go to standard output, diagnostics to standard error. Errors in the
inputs exit with status 1, semantic negatives with status 2.
"""

import functools
import logging
import os
import sys
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence

import click
from pydantic import BaseModel, ConfigDict, model_validator

from ..config import get_module_config, load_config, validate_config
from ..cpo import (
    Classification, ContextMap, Model, approximation_report, check_interpreted,
    load_model, parse_model_spec, solve_interpreted,
)
from ..errors import RatlamError, UnguardedSchemeError
from ..rational import TermGraph, bisim_eq, cuts_agree, to_dot, unfold
from ..scheme import (
    RecursionScheme, check_guarded, flatten, inline_aliases, parse_scheme, print_scheme,
    read_solution, solve, verify_solution, write_solution,
)
from ..term_core import print_term

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2


class Subcommand(str, Enum):
    CHECK = "check"
    FLATTEN = "flatten"
    SOLVE = "solve"
    UNFOLD = "unfold"
    ALPHAEQ = "alphaeq"
    INTERPRET = "interpret"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    TEXT = "text"
    DOT = "dot"


# flags each subcommand accepts besides its input paths
_FLAGS: Dict[Subcommand, frozenset] = {
    Subcommand.CHECK: frozenset({"inline"}),
    Subcommand.FLATTEN: frozenset({"inline"}),
    Subcommand.SOLVE: frozenset({"inline", "output_format", "out"}),
    Subcommand.UNFOLD: frozenset({"nonterminal", "depth"}),
    Subcommand.ALPHAEQ: frozenset({"depth"}),
    Subcommand.INTERPRET: frozenset({"model", "ops", "golden", "approx"}),
    Subcommand.VERIFY: frozenset({"solution"}),
}
_INPUTS = {Subcommand.ALPHAEQ: 2}


class Invocation(BaseModel):
    """One parsed command line."""
    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    inputs: List[str]
    inline: Optional[bool] = None
    output_format: Optional[OutputFormat] = None
    out: Optional[str] = None
    nonterminal: Optional[str] = None
    depth: Optional[int] = None
    model: Optional[str] = None
    ops: Optional[str] = None
    golden: Optional[str] = None
    approx: Optional[int] = None
    solution: Optional[str] = None

    @model_validator(mode='after')
    def validate_flags(self):
        wanted = _INPUTS.get(self.subcommand, 1)
        if len(self.inputs) != wanted:
            raise ValueError(f"{self.subcommand.value} takes {wanted} input file(s)")
        allowed = _FLAGS[self.subcommand]
        for flag in ("inline", "output_format", "out", "nonterminal", "depth",
                     "model", "ops", "golden", "approx", "solution"):
            if getattr(self, flag) is not None and flag not in allowed:
                raise ValueError(f"--{flag.replace('_', '-')} is not valid for {self.subcommand.value}")
        for flag in ("depth", "approx"):
            value = getattr(self, flag)
            if value is not None and value < 0:
                raise ValueError(f"--{flag} must be non-negative")
        if self.subcommand is Subcommand.VERIFY and self.solution is None:
            raise ValueError("verify needs --solution")
        return self


def _read(path: str) -> str:
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def _invocation(**fields) -> Invocation:
    try:
        inv = Invocation(**fields)
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    logger.debug("invocation: %s", inv.model_dump(exclude_none=True))
    return inv


def reports_errors(command):
    """Turn library errors into exit status 1 with a message on standard error."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except UnguardedSchemeError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_NEGATIVE)
        except (RatlamError, OSError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_ERROR)

    return wrapper


def _load_scheme(path: str, inline: Optional[bool], config: Mapping) -> RecursionScheme:
    s = parse_scheme(_read(path))
    if inline is None:
        inline = get_module_config(config, "scheme").get("inline_aliases", False)
    return inline_aliases(s) if inline else s


def _emit(text: str, out: Optional[str] = None) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    with open(out, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info("wrote %s", out)


def format_tables(solution: Mapping[str, ContextMap], iterations: int, m: Model) -> str:
    """`iterations N`, then one `[p]` section of `#a #b -> #c` rows per nonterminal."""
    lines = [f"iterations {iterations}"]
    for p, table in solution.items():
        lines.append("")
        lines.append(f"[{p}]")
        for rho in table.points():
            args = " ".join(m.name(d) for d in rho) or "()"
            lines.append(f"{args} -> {m.name(table.value(rho))}")
    return "\n".join(lines) + "\n"


def _first_root(s: RecursionScheme, graphs: Mapping[str, TermGraph], path: str) -> TermGraph:
    p = s.nonterminals[0]
    if p not in graphs:
        raise RatlamError(f"{path}: first nonterminal {p!r} is scoped and has no closed solution")
    return graphs[p]


@click.group()
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='JSON configuration file (default: $RATLAM_CONFIG)')
@click.option('--log-level', default=None,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], case_sensitive=False),
              help='Logging level for diagnostics on standard error')
@click.pass_context
def main(ctx: click.Context, config_path: Optional[str], log_level: Optional[str]):
    """Rational lambda terms: solve, unfold, compare and interpret recursion schemes."""
    try:
        config = load_config(config_path)
        if log_level:
            config["global"]["log_level"] = log_level
        validate_config(config)
    except (OSError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        ctx.exit(EXIT_ERROR)
    logging.basicConfig(
        level=getattr(logging, str(config["global"]["log_level"]).upper()),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = config


@main.command()
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--inline/--no-inline', default=None, help='Inline bare aliases p = q one level deep first')
@click.pass_obj
@reports_errors
def check(config, path: str, inline: Optional[bool]):
    """Report whether a scheme is guarded."""
    _invocation(subcommand=Subcommand.CHECK, inputs=[path], inline=inline)
    result = check_guarded(_load_scheme(path, inline, config))
    if result.guarded:
        click.echo("guarded")
        return
    click.echo(f"unguarded at {result.witness}")
    click.get_current_context().exit(EXIT_NEGATIVE)


@main.command('flatten')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--inline/--no-inline', default=None, help='Inline bare aliases p = q one level deep first')
@click.pass_obj
@reports_errors
def flatten_command(config, path: str, inline: Optional[bool]):
    """Print the flat scheme of a guarded scheme."""
    _invocation(subcommand=Subcommand.FLATTEN, inputs=[path], inline=inline)
    _emit(print_scheme(flatten(_load_scheme(path, inline, config))))


@main.command('solve')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--format', 'output_format', type=click.Choice([f.value for f in OutputFormat]),
              default=OutputFormat.TEXT.value, help='Flat-system text or one DOT digraph per nonterminal')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Write to a file instead of standard output')
@click.option('--inline/--no-inline', default=None, help='Inline bare aliases p = q one level deep first')
@click.pass_obj
@reports_errors
def solve_command(config, path: str, output_format: str, out: Optional[str], inline: Optional[bool]):
    """Solve a guarded scheme and print the minimized solution graphs."""
    inv = _invocation(
        subcommand=Subcommand.SOLVE, inputs=[path], output_format=output_format, out=out, inline=inline
    )
    graphs = solve(_load_scheme(path, inline, config))
    if inv.output_format is OutputFormat.DOT:
        prefix = get_module_config(config, "rational").get("dot_graph_name", "term")
        text = "".join(to_dot(g, graph_name=f"{prefix}_{p}") for p, g in graphs.items())
    else:
        text = write_solution(graphs)
    _emit(text, out)


@main.command('unfold')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--nonterminal', '-n', default=None, help='Nonterminal to unfold (default: the first one)')
@click.option('--depth', '-k', type=int, default=None, help='Cut depth (default: cli.default_depth)')
@click.pass_obj
@reports_errors
def unfold_command(config, path: str, nonterminal: Optional[str], depth: Optional[int]):
    """Print the depth-K cut of a nonterminal's solution."""
    inv = _invocation(subcommand=Subcommand.UNFOLD, inputs=[path], nonterminal=nonterminal, depth=depth)
    s = _load_scheme(path, False, config)
    graphs = solve(s)
    p = inv.nonterminal or s.nonterminals[0]
    if p not in graphs:
        raise RatlamError(f"{p!r} is not a nonterminal with a closed solution; choose one of {list(graphs)}")
    k = inv.depth if inv.depth is not None else get_module_config(config, "cli").get("default_depth", 8)
    click.echo(print_term(unfold(graphs[p], k), s.context))


@main.command('alphaeq')
@click.argument('first', type=click.Path(dir_okay=False))
@click.argument('second', type=click.Path(dir_okay=False))
@click.option('--depth', '-k', type=int, default=None, help='Compare cuts at this depth instead of bisimilarity')
@click.pass_obj
@reports_errors
def alphaeq_command(config, first: str, second: str, depth: Optional[int]):
    """Compare the solutions of two schemes at their first nonterminals."""
    inv = _invocation(subcommand=Subcommand.ALPHAEQ, inputs=[first, second], depth=depth)
    roots = []
    for path in inv.inputs:
        s = _load_scheme(path, False, config)
        roots.append(_first_root(s, solve(s), path))
    g, h = roots
    equal = bisim_eq(g, h) if inv.depth is None else cuts_agree(g, h, inv.depth)
    click.echo("equal" if equal else "different")
    if not equal:
        click.get_current_context().exit(EXIT_NEGATIVE)


@main.command('interpret')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--model', 'model_spec', default=None, help='Model as tower:N (default: the ops file or cpo.default_tower_height)')
@click.option('--ops', type=click.Path(dir_okay=False), default=None, help='Ops file with a table for every signature symbol')
@click.option('--golden', type=click.Path(dir_okay=False), default=None,
              help='Compare the output with this file, or write it when missing')
@click.option('--approx', type=int, default=None, help='Report interpreted depth-K cuts on standard error')
@click.pass_obj
@reports_errors
def interpret_command(config, path: str, model_spec: Optional[str], ops: Optional[str],
                      golden: Optional[str], approx: Optional[int]):
    """Print the least interpreted solution of a scheme in a tower model."""
    inv = _invocation(
        subcommand=Subcommand.INTERPRET, inputs=[path], model=model_spec, ops=ops, golden=golden, approx=approx
    )
    s = _load_scheme(path, False, config)
    height = parse_model_spec(inv.model) if inv.model is not None else None
    m = load_model(_read(inv.ops) if inv.ops else None, s.signature, height, **get_module_config(config, "cpo"))

    solution, iterations = solve_interpreted(s, m)
    verdict = check_interpreted(s, m, solution)
    if verdict is not Classification.FIXED:
        raise RatlamError(f"interpreted solution fails its own equations ({verdict.value})")
    text = format_tables(solution, iterations, m)
    click.echo(text, nl=False)

    if inv.approx is not None:
        _report_approximation(s, m, solution, inv.approx)

    if inv.golden is not None:
        if not os.path.exists(inv.golden):
            _emit(text, inv.golden)
            click.echo(f"wrote golden file {inv.golden}", err=True)
        elif _read(inv.golden) != text:
            click.echo(f"output differs from golden file {inv.golden}", err=True)
            click.get_current_context().exit(EXIT_NEGATIVE)


def _report_approximation(s: RecursionScheme, m: Model, solution: Mapping[str, ContextMap], k: int) -> None:
    guard = check_guarded(s)
    if not guard.guarded:
        click.echo(f"approximation skipped: scheme is unguarded at {guard.witness}", err=True)
        return
    report = approximation_report(s, m, solve(s), k, solution)
    for entry in report.entries:
        click.echo(
            f"approx {entry.nonterminal} depth {report.depth}: "
            f"{'agrees' if entry.agrees else 'differs'}, "
            f"{'increasing' if entry.increasing else 'not increasing'}",
            err=True,
        )


@main.command('verify')
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--solution', 'solution_path', type=click.Path(dir_okay=False), required=True,
              help='Solution file with one [p] section per nonterminal')
@click.pass_obj
@reports_errors
def verify_command(config, path: str, solution_path: str):
    """Check a candidate solution against every rule of a scheme."""
    _invocation(subcommand=Subcommand.VERIFY, inputs=[path], solution=solution_path)
    s = _load_scheme(path, False, config)
    cand = read_solution(_read(solution_path), s.signature, s.context)
    if verify_solution(s, cand):
        click.echo("pass")
        return
    click.echo("fail")
    click.get_current_context().exit(EXIT_NEGATIVE)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit status; usage errors count as input errors."""
    try:
        rv = main.main(args=list(argv) if argv is not None else None, prog_name="ratlam", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        return EXIT_ERROR
    return rv if isinstance(rv, int) else EXIT_OK


def cli() -> None:
    sys.exit(run())
