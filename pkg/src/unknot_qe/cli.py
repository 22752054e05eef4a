"""Command-line interface.

Exit codes for ``decide``: 0 UNKNOT, 10 KNOTTED, 20 UNRESOLVED; any input
or usage error exits with 1.  Every option can also be set through an
environment variable ``UNKNOT_QE_<OPTION>`` (for example
``UNKNOT_QE_DELTA``).
"""
from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from . import fixtures
from .diagram import DiagramError, KnotDiagram, parse
from .oracle import DEFAULT_PRIMES, coloring_report
from .polysys import build_system, coefficient_stats, system_to_smtlib
from .solver import DecideConfig, Status, decide
from .wirtinger import build_presentation, presentation_to_text

EXIT_CODES = {Status.UNKNOT: 0, Status.KNOTTED: 10, Status.UNRESOLVED: 20}
EXIT_INPUT_ERROR = 1
ENV_PREFIX = "UNKNOT_QE_"


def _env(name: str) -> str:
    return ENV_PREFIX + name.upper().replace("-", "_")


class InputError(click.ClickException):
    exit_code = EXIT_INPUT_ERROR


def read_input(source: str) -> str:
    """Inline PD/JSON text, ``fixture:NAME``, ``-`` for stdin, or a path."""
    text = source.strip()
    if text.startswith(("PD[", "[", "{")):
        return text
    if text.startswith("fixture:"):
        try:
            return fixtures.load(text.split(":", 1)[1])
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    if text == "-":
        return sys.stdin.read()
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    raise InputError(f"cannot read input {source!r}: not a PD code, fixture or file")


def load_diagram(source: str, reverse: bool = False) -> KnotDiagram:
    try:
        return parse(read_input(source), reverse=reverse)
    except DiagramError as exc:
        raise InputError(str(exc)) from None


def _fraction(ctx, param, value):
    if value is None:
        return None
    try:
        q = Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {value!r}") from None
    if q <= 0:
        raise click.BadParameter("must be positive")
    return q


def _primes(ctx, param, value):
    try:
        out = tuple(int(p) for p in value.replace(" ", "").split(",") if p)
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated list of primes, got {value!r}") from None
    if not out:
        raise click.BadParameter("no primes given")
    return out


def _sign_str(signs) -> str:
    return "[" + ",".join("+" if s > 0 else "-" for s in signs) + "]"


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text",
    show_default=True, envvar=_env("format"), help="Output format.",
)
reverse_option = click.option(
    "--reverse", is_flag=True, envvar=_env("reverse"),
    help="Traverse the diagram with the opposite orientation.",
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def cli():
    """Decide whether a knot diagram is the unknot via SU(2) feasibility.

    INPUT is an inline PD code such as 'PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]',
    a JSON crossing list, a file path, '-' for stdin, or fixture:NAME.
    """


@cli.command("parse")
@click.argument("source", metavar="INPUT")
@reverse_option
@format_option
def cmd_parse(source, reverse, fmt):
    """Validate a diagram and print its traversal data."""
    d = load_diagram(source, reverse)
    if fmt == "json":
        click.echo(json.dumps({
            "n": d.n,
            "pd": d.to_pd(),
            "traversal": [c + 1 for c in d.order],
            "edges": list(d.edge_sequence),
            "over_arcs": list(d.over_arc),
            "signs": list(d.signs),
        }))
        return 0
    if d.n == 0:
        click.echo("n=0 (round unknot)")
        return 0
    click.echo(f"n={d.n}, signs {_sign_str(d.signs)}")
    click.echo("edges in traversal order: " + " ".join(map(str, d.edge_sequence)))
    click.echo("crossings in traversal order (input positions): " + " ".join(str(c + 1) for c in d.order))
    click.echo("over arcs: " + " ".join(map(str, d.over_arc)))
    click.echo("presentation: " + presentation_to_text(build_presentation(d)))
    return 0


@cli.command("system")
@click.argument("source", metavar="INPUT")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), envvar=_env("out"),
              help="Write the system JSON here instead of stdout.")
@click.option("--smtlib", type=click.Path(dir_okay=False, writable=True), envvar=_env("smtlib"),
              help="Also write an SMT-LIB2 (QF_NRA) script.")
@reverse_option
@format_option
def cmd_system(source, out, smtlib, reverse, fmt):
    """Build the real polynomial system and print its statistics."""
    d = load_diagram(source, reverse)
    if d.n == 0:
        raise InputError("trivial diagram; decide directly")
    sys_ = build_system(build_presentation(d))
    text = sys_.to_json()
    stats = coefficient_stats(sys_).as_dict()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if smtlib:
        with open(smtlib, "w", encoding="utf-8") as fh:
            fh.write(system_to_smtlib(sys_))
    if not out:
        click.echo(text)
    stream_err = not out
    if fmt == "json":
        click.echo(json.dumps(stats), err=stream_err)
    else:
        for key, val in stats.items():
            click.echo(f"{key}: {val}", err=stream_err)
    return 0


@cli.command("decide")
@click.argument("source", metavar="INPUT")
@click.option("--delta", callback=_fraction, default="1/10000", show_default=True,
              envvar=_env("delta"), help="Refutation level: prove no zero of P has N >= delta.")
@click.option("--budget-seconds", type=click.FloatRange(min=0), default=60.0, show_default=True,
              envvar=_env("budget_seconds"), help="Wall-clock budget (0 = no work).")
@click.option("--budget-boxes", type=click.IntRange(min=0), default=2_000_000, show_default=True,
              envvar=_env("budget_boxes"), help="Maximum boxes classified by refutation.")
@click.option("--restarts", type=click.IntRange(min=0), default=32, show_default=True,
              envvar=_env("restarts"), help="Random restarts of the witness search.")
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True,
              envvar=_env("threads"), help="Worker threads.")
@click.option("--seed", type=int, default=0, show_default=True, envvar=_env("seed"),
              help="Random seed for the witness search.")
@click.option("--primes", callback=_primes, default=",".join(map(str, DEFAULT_PRIMES)),
              show_default=True, envvar=_env("primes"), help="Primes for oracle seeding.")
@click.option("--no-oracle", is_flag=True, envvar=_env("no_oracle"),
              help="Skip coloring seeds.")
@click.option("--shared-trace", is_flag=True, envvar=_env("shared_trace"),
              help="Identify every a_k with a_1.")
@click.option("--smtlib", type=click.Path(dir_okay=False, writable=True), envvar=_env("smtlib"),
              help="Also write the system as SMT-LIB2.")
@click.option("--timing", is_flag=True, envvar=_env("timing"),
              help="Include wall time (makes JSON output run-dependent).")
@reverse_option
@format_option
def cmd_decide(source, delta, budget_seconds, budget_boxes, restarts, threads, seed, primes,
               no_oracle, shared_trace, smtlib, timing, reverse, fmt):
    """Decide the diagram; exit 0 for UNKNOT, 10 for KNOTTED, 20 for UNRESOLVED."""
    d = load_diagram(source, reverse)
    config = DecideConfig(
        delta=delta, budget_seconds=budget_seconds, budget_boxes=budget_boxes,
        restarts=restarts, threads=threads, seed=seed, primes=primes,
        shared_trace=shared_trace, use_oracle=not no_oracle,
    )
    if smtlib and d.n > 0:
        with open(smtlib, "w", encoding="utf-8") as fh:
            fh.write(system_to_smtlib(build_system(build_presentation(d))))
    verdict = decide(d, config)
    if fmt == "json":
        click.echo(verdict.to_json(include_timing=timing))
    else:
        feasible = {True: "satisfiable", False: "unsatisfiable (at level delta)",
                    None: "undetermined"}[verdict.feasible]
        click.echo(f"verdict: {verdict.status.value}")
        click.echo(f"system P = 0, N > 0: {feasible}")
        click.echo(f"stage: {verdict.report.get('stage')}")
        if verdict.status is Status.UNKNOT:
            click.echo(f"delta: {verdict.delta}  boxes refuted: {verdict.boxes_refuted}")
        if verdict.certificate is not None:
            c = verdict.certificate.to_dict()
            if c["kind"] == "exact":
                extra = f" p={c['p']} coloring={c['coloring']}" if "p" in c else ""
                click.echo(f"certificate: exact over {c['field']}{extra}")
            else:
                click.echo(f"certificate: interval, P <= {c['bound']} on a box of radius {c['radius']}")
        if verdict.witness is not None:
            for k, p in enumerate(verdict.witness.points, 1):
                click.echo(f"  g_{k} -> ({', '.join(f'{x:+.12f}' for x in p)})")
        if verdict.status is Status.UNRESOLVED and "refute" in verdict.report:
            click.echo(f"refutation: {verdict.report['refute']['reason']}, "
                       f"{verdict.report['refute']['boxes']} boxes")
        if timing:
            click.echo(f"wall time: {verdict.wall_time:.3f} s")
    return EXIT_CODES[verdict.status]


@cli.command("oracle")
@click.argument("source", metavar="INPUT")
@click.option("--primes", callback=_primes, default=",".join(map(str, DEFAULT_PRIMES)),
              show_default=True, envvar=_env("primes"), help="Comma-separated primes.")
@reverse_option
@format_option
def cmd_oracle(source, primes, reverse, fmt):
    """Count Fox p-colorings per prime."""
    d = load_diagram(source, reverse)
    pres = build_presentation(d)
    try:
        report = coloring_report(pres, primes)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if fmt == "json":
        click.echo(json.dumps({"n": pres.n, "primes": report}))
    else:
        for p, r in report.items():
            word = "colorable" if r["colorable"] else "not colorable"
            click.echo(f"p={p}: count={r['count']}, {word}")
    return 0


@cli.command("fixtures")
def cmd_fixtures():
    """List bundled fixtures (use as fixture:NAME)."""
    for name, (_, knotted) in fixtures.FIXTURES.items():
        click.echo(f"{name}\t{'knotted' if knotted else 'unknot'}\t{fixtures.load(name)}")
    return 0


def main(argv=None) -> int:
    try:
        rc = cli.main(args=argv, prog_name="unknot-qe", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT_ERROR
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_INPUT_ERROR
    except click.exceptions.Exit as exc:
        return exc.exit_code
    return rc if isinstance(rc, int) else 0


if __name__ == "__main__":
    sys.exit(main())
