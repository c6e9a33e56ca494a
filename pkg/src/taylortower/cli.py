"""Command-line front end: ``taylortower cat|tower|cube|verify``.

Exit codes: 0 pass, 1 property failure, 2 usage error, 3 guard exceeded.
Reports go to stdout as JSON (default) or an aligned table; ``--output``
or the ``TAYLORTOWER_OUTPUT_DIR`` environment variable also writes them
to a file.
"""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from .fincat import GuardError, find_isomorphism
from .serialize import (ParseError, diagram_from_json, diagram_to_json, label_to_json,
                        parse_complex, parse_functor, parse_levels, parse_shape,
                        powerset_cube_to_plus)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
OUTPUT_ENV = "TAYLORTOWER_OUTPUT_DIR"


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


# ---------------------------------------------------------------------------
# report output

def _label(x) -> str:
    return x if isinstance(x, str) else json.dumps(label_to_json(x), ensure_ascii=False)


def _rows(report: dict, prefix: str = "") -> list[tuple[str, str]]:
    rows = []
    for k, v in report.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict) and v:
            rows.extend(_rows(v, key + "."))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            for i, x in enumerate(v):
                rows.extend(_rows(x, f"{key}[{i}]."))
        else:
            rows.append((key, json.dumps(v, ensure_ascii=False) if not isinstance(v, str) else v))
    return rows


def render_table(report: dict) -> str:
    rows = _rows(report)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def emit(ctx: click.Context, name: str, report: dict, passed: bool = True) -> None:
    fmt = ctx.obj["format"]
    text = render_table(report) if fmt == "table" else \
        json.dumps(report, indent=2, ensure_ascii=False, sort_keys=False)
    click.echo(text)
    out = ctx.obj.get("output")
    if out is None and os.environ.get(OUTPUT_ENV):
        out = Path(os.environ[OUTPUT_ENV]) / f"{name}.json"
    if out is not None:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    if not passed:
        raise _Exit(EXIT_FAIL)


def _fmt_options(f):
    f = click.option("--json", "fmt", flag_value="json", default=True,
                     help="Emit JSON (default).")(f)
    f = click.option("--table", "fmt", flag_value="table", help="Emit an aligned table.")(f)
    f = click.option("--output", "-o", type=click.Path(dir_okay=False),
                     help=f"Also write the report here (default: ${OUTPUT_ENV}/<cmd>.json).")(f)
    return f


def _setup(ctx, fmt, output):
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt
    ctx.obj["output"] = output


# ---------------------------------------------------------------------------

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Taylor towers, homotopy (co)limits and cube predicates over chain complexes."""


@cli.group("cat")
def cat_group():
    """Build finite categories, test isomorphisms, validate Reedy structures."""


@cat_group.command("build")
@click.argument("shape")
@_fmt_options
@click.pass_context
def cat_build(ctx, shape, fmt, output):
    """Emit the category named by SHAPE (e.g. spider:4, jn:*:3, p0:3)."""
    _setup(ctx, fmt, output)
    C = parse_shape(shape)
    emit(ctx, "cat-build", {"shape": shape, "objects": len(C.objects),
                            "arrows": len(C.non_identity), "category": C.to_json()})


@cat_group.command("iso")
@click.argument("first")
@click.argument("second")
@_fmt_options
@click.pass_context
def cat_iso(ctx, first, second, fmt, output):
    """Search for an isomorphism FIRST -> SECOND."""
    _setup(ctx, fmt, output)
    A, B = parse_shape(first), parse_shape(second)
    F = find_isomorphism(A, B)
    report = {"first": first, "second": second, "isomorphic": F is not None}
    if F is not None:
        report["functor"] = {_label(o): _label(F.obj(o)) for o in A.objects}
    emit(ctx, "cat-iso", report, F is not None)


@cat_group.command("reedy")
@click.argument("shape")
@click.option("--constants", type=click.Choice(["cofibrant", "fibrant"]), default=None,
              help="Also test whether constant diagrams are cofibrant or fibrant.")
@_fmt_options
@click.pass_context
def cat_reedy(ctx, shape, constants, fmt, output):
    """Validate the standard Reedy structure on p:n, p0:n or spider:n."""
    from .reedy import (check_reedy, constants_criterion, cube_structure,
                        punctured_cube_structure, spider_structure)
    _setup(ctx, fmt, output)
    head, _, n = shape.partition(":")
    if head == "p":
        R = cube_structure(int(n))
    elif head == "p0":
        R = punctured_cube_structure(int(n))
    elif head == "spider":
        R = spider_structure(parse_shape(shape))
    else:
        raise click.UsageError(f"no standard Reedy structure for {shape!r}; "
                               "use p:n, p0:n or spider:n")
    problems = check_reedy(R)
    report = {"shape": shape, "structure": R.name, "reedy": not problems, "problems": problems}
    passed = not problems
    if constants:
        v = constants_criterion(R, constants)
        report["constants"] = {"side": constants, "holds": v.holds,
                               "witnesses": [{"object": _label(w["object"]),
                                              "components": len(w["components"])}
                                             for w in v.witnesses]}
        passed &= v.holds
    report["verdict"] = "pass" if passed else "fail"
    emit(ctx, "cat-reedy", report, passed)


# ---------------------------------------------------------------------------

@cli.command("tower")
@click.option("--functor", "functor", required=True,
              help="id, sum, sq, shift:k, const:<complex>, tensor:<complex>.")
@click.option("--input", "input_", default="Z0", show_default=True,
              help="Complex: Z0, S1, Z/2, 0, or a JSON file.")
@click.option("--levels", default="0..2", show_default=True, help="Levels, as 2 or 0..3.")
@click.option("--max-iter", default=3, show_default=True, type=click.IntRange(1, 4))
@click.option("--compare-aux", is_flag=True, help="Compare with the spider-indexed tower.")
@_fmt_options
@click.pass_context
def tower_cmd(ctx, functor, input_, levels, max_iter, compare_aux, fmt, output):
    """Taylor tower stages P_nF(X), their structure maps and stabilization flags."""
    from .tower import Tower, aux_tower, tower_map
    _setup(ctx, fmt, output)
    F = parse_functor(functor)
    X = parse_complex(input_)
    lv = parse_levels(levels)
    tw = Tower(F, X, max_iter=max_iter)
    report = {"functor": F.name, "input": X.homology().to_json(), "levels": []}
    passed = True
    for n in lv:
        s = tw.stage(n)
        entry = s.to_json()
        passed &= s.stabilized
        if n > lv[0]:
            entry["map_to_previous"] = tower_map(tw, n - 1).to_json()
        if compare_aux:
            aux = Tower(F, X, max_iter=max_iter, aux=True)
            a = aux_tower(F, X, n, max_iter, aux=aux, plain=tw)
            entry["aux_comparison_quasi_iso"] = a.quasi_iso
            passed &= a.quasi_iso
        report["levels"].append(entry)
    report["all_stabilized"] = all(e["stabilized"] for e in report["levels"])
    emit(ctx, "tower", report, passed)


# ---------------------------------------------------------------------------

@cli.group("cube")
def cube_group():
    """Homotopy Cartesian and co-Cartesian predicates on cubes."""


def _load_or_random(input_, random_, shape, seed, plus_shape: bool):
    from .generators import random_diagram
    from .groth import plus
    if input_ and random_:
        raise click.UsageError("give either --input or --random, not both")
    if input_:
        return diagram_from_json(input_)
    if not random_:
        raise click.UsageError("give --input FILE or --random")
    P = parse_shape(shape)
    return random_diagram(plus(P)[0] if plus_shape else P, np.random.default_rng(seed))


@cube_group.command("cartesian")
@click.option("--input", "input_", type=click.Path(exists=True, dir_okay=False),
              help="Cube JSON over p:n or over plus:<J>.")
@click.option("--random", "random_", is_flag=True, help="Generate a random cube over J₊.")
@click.option("--shape", default="p0:2", show_default=True, help="J for --random.")
@click.option("--seed", default=0, show_default=True)
@click.option("--replace", is_flag=True, help="Apply the Cartesian replacement first.")
@_fmt_options
@click.pass_context
def cube_cartesian(ctx, input_, random_, shape, seed, replace, fmt, output):
    """Is X(∅) -> holim_J X a quasi-isomorphism?"""
    from .cubes import cartesian_gap, cartesian_replacement, cube_from_diagram
    from .groth import EMPTY
    _setup(ctx, fmt, output)
    X = _load_or_random(input_, random_, shape, seed, plus_shape=True)
    if EMPTY in X.shape.object_index:
        J = parse_shape(shape) if random_ else _plus_base(X)
    else:
        J, X = powerset_cube_to_plus(X)
    if replace:
        from .diagrams import Diagram
        C = cartesian_replacement(Diagram(J, {o: X.value[o] for o in J.objects},
                                          {f: X.map(f) for f in J.non_identity})).cube
    else:
        C = cube_from_diagram(X, J)
    v = cartesian_gap(C)
    emit(ctx, "cube-cartesian", {"cartesian": v.cartesian, **{k: w for k, w in v.to_json().items()
                                                               if k != "cartesian"}})


def _plus_base(X):
    from .fincat import full_subcategory
    from .groth import EMPTY
    return full_subcategory(X.shape, [o for o in X.shape.objects if o != EMPTY])


@cube_group.command("classify")
@click.option("--input", "input_", type=click.Path(exists=True, dir_okay=False),
              help="Cube JSON over p:n.")
@click.option("--random", "random_", is_flag=True, help="Generate a random cube over 𝒫(n).")
@click.option("--n", "n", default=2, show_default=True, type=click.IntRange(0, 4))
@click.option("--cofibration", is_flag=True, help="With --random, build a cofibration cube.")
@click.option("--seed", default=0, show_default=True)
@_fmt_options
@click.pass_context
def cube_classify_cmd(ctx, input_, random_, n, cofibration, seed, fmt, output):
    """Cofibration cube, homotopy co-Cartesian, strongly homotopy co-Cartesian."""
    from .cocartesian import cube_classify
    from .generators import cofibration_cube, random_diagram
    from .groth import powerset
    _setup(ctx, fmt, output)
    if input_ and random_:
        raise click.UsageError("give either --input or --random, not both")
    if input_:
        X = diagram_from_json(input_)
    elif random_:
        rng = np.random.default_rng(seed)
        X = cofibration_cube(n, rng)[0] if cofibration else random_diagram(powerset(n), rng)
    else:
        raise click.UsageError("give --input FILE or --random")
    emit(ctx, "cube-classify", cube_classify(X).to_json())


@cube_group.command("export")
@click.argument("shape")
@click.option("--seed", default=0, show_default=True)
@click.option("--cofibration", is_flag=True, help="A cofibration cube on p:n instead.")
@_fmt_options
@click.pass_context
def cube_export(ctx, shape, seed, cofibration, fmt, output):
    """Write a random diagram on SHAPE as JSON (input for the other commands)."""
    from .generators import cofibration_cube, random_diagram
    _setup(ctx, fmt, output)
    rng = np.random.default_rng(seed)
    if cofibration:
        head, _, n = shape.partition(":")
        if head != "p":
            raise click.UsageError("--cofibration needs a p:n shape")
        X = cofibration_cube(int(n), rng)[0]
    else:
        X = random_diagram(parse_shape(shape), rng)
    emit(ctx, "cube-export", diagram_to_json(X, shape))


# ---------------------------------------------------------------------------

@cli.command("verify")
@click.option("--suite", "suites", multiple=True, default=["all"], show_default=True,
              help="Suite to run (repeatable): all, iso, coend, reedy, homology, star, aux, "
                   "tower, cubes, splitting, cocartesian.")
@click.option("--seed", default=1, show_default=True)
@click.option("--max-rank", default=3, show_default=True)
@click.option("--span", default=3, show_default=True)
@click.option("--scale", default=1.0, show_default=True, help="Scale the number of random cases.")
@click.option("--threads", default=1, show_default=True, type=click.IntRange(1, 64))
@click.option("--timings", is_flag=True, help="Include per-property seconds in the report.")
@_fmt_options
@click.pass_context
def verify_cmd(ctx, suites, seed, max_rank, span, scale, threads, timings, fmt, output):
    """Run the property battery; exit 1 if any property fails."""
    from .verify import VerifyConfig, run
    _setup(ctx, fmt, output)
    cfg = VerifyConfig(seed=seed, max_rank=max_rank, span=span, scale=scale, threads=threads)
    try:
        results = run(list(suites), cfg)
    except KeyError as e:
        raise click.UsageError(str(e.args[0]))
    failed = [r for r in results if not r.passed]
    report = {"seed": seed, "passed": len(results) - len(failed), "failed": len(failed),
              "properties": [r.to_json(timings) for r in results]}
    emit(ctx, "verify", report, not failed)


# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="taylortower", standalone_mode=False)
        return EXIT_PASS
    except _Exit as e:
        return e.code
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except GuardError as e:
        click.echo(f"guard exceeded: {e}", err=True)
        return EXIT_GUARD
    except (ParseError, FileNotFoundError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
