"""Command line: roots, indecs, hall, lie-table and verify suites.

Everything is written as plain text with a stable ordering so reruns are
byte-identical.  Exit codes: 0 ok, 1 a verification found violations,
2 bad input or a refused computation (reason on stderr as ``error: <kind>: <msg>``).
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

import click

from rootlie import hall, labels, rootcat
from rootlie.cache import CacheStore, QuiverFile, QuiverParseError
from rootlie.field import PrimeField, is_prime
from rootlie.quiver import QuiverError, enumerate_roots, quiver_type
from rootlie.rep import BudgetExceeded, enumerate_indecomposables


class Refused(Exception):
    def __init__(self, kind: str, msg: str):
        super().__init__(msg)
        self.kind = kind


def _primes(text):
    if not text:
        return None
    try:
        ps = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise click.BadParameter(f"not a comma-separated list of primes: {text}") from None
    bad = [p for p in ps if not is_prime(p)]
    if bad:
        raise click.BadParameter(f"not prime: {bad[0]}")
    return ps


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _load(path):
    try:
        return QuiverFile.load(path).quiver
    except QuiverParseError as exc:
        raise Refused("parse", f"{path}: {exc}") from None
    except OSError as exc:
        raise Refused("io", str(exc)) from None


def _vec(d) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


common = [
    click.option("--quiver", "quiver_path", required=True, type=click.Path(dir_okay=False),
                 help="quiver description file"),
    click.option("--primes", default=None, help="comma-separated primes, e.g. 2,3,5"),
    click.option("--bound", type=int, default=None, help="height bound"),
    click.option("--out", type=click.Path(dir_okay=False), default=None, help="write output here"),
    click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
                 help="Hall polynomial cache (default: $ROOTLIE_CACHE_DIR or ~/.cache/rootlie)"),
]


def with_common(f):
    for opt in reversed(common):
        f = opt(f)
    return f


@click.group()
def cli():
    """Exact Hall numbers and root-category Lie algebras of small quivers."""


@cli.command()
@with_common
def roots(quiver_path, primes, bound, out, cache_dir):
    """Positive roots (imaginary ones up to --bound for affine quivers)."""
    q = _load(quiver_path)
    kind, delta = quiver_type(q)
    if kind == "wild":
        raise Refused("wild", "wild type refused")
    if kind == "affine" and bound is None:
        bound = 2 * sum(delta)
    rs = enumerate_roots(q, bound)
    lines = [f"kind {rs.kind}", f"delta {_vec(rs.delta) if rs.delta else '-'}"]
    lines += [f"real {_vec(r)}" for r in rs.positive_real]
    lines += [f"imaginary {_vec(r)}" for r in rs.imaginary]
    lines.append(f"count {len(rs.positive)}")
    _emit("\n".join(lines) + "\n", out)


@cli.command()
@with_common
def indecs(quiver_path, primes, bound, out, cache_dir):
    """Indecomposable classes for every dimension vector of height <= --bound."""
    q = _load(quiver_path)
    bound = 3 if bound is None else bound
    ps = _primes(primes) or (2,)
    lines = []
    for h in range(1, bound + 1):
        for d in sorted(itertools.product(range(h + 1), repeat=q.n), reverse=True):
            if sum(d) != h:
                continue
            for p in ps:
                reps = enumerate_indecomposables(q, d, PrimeField(p))
                names = sorted(str(labels.label_of(x)) for x in reps)
                lines.append(f"{_vec(d)} F{p} {len(reps)} " + " ".join(names))
    _emit("\n".join(l.rstrip() for l in lines) + "\n", out)


@cli.command(name="hall")
@with_common
@click.option("--target", required=True)
@click.option("--quot", required=True)
@click.option("--sub", required=True)
@click.option("--no-cache", is_flag=True, help="compute without reading or writing the cache")
def hall_cmd(quiver_path, primes, bound, out, cache_dir, target, quot, sub, no_cache):
    """Hall polynomial g^target_{quot,sub}(q)."""
    q = _load(quiver_path)
    try:
        key = tuple(labels.parse_iso(x) for x in (target, quot, sub))
    except labels.LabelError as exc:
        raise Refused("label", str(exc)) from None
    ps = _primes(primes)
    compute = lambda q_, t, a, b: hall.hall_polynomial(q_, t, a, b, ps)
    if no_cache:
        h = compute(q, *key)
    else:
        h = CacheStore(cache_dir).get_or_compute(q, *key, compute=compute, primes=ps)
    lines = [f"target {h.target}", f"quot {h.quot}", f"sub {h.sub}", f"polynomial {h.poly}",
             "primes " + " ".join(map(str, h.primes_used)), f"held_out {h.held_out}",
             f"degree_bound {h.degree_bound}"]
    _emit("\n".join(lines) + "\n", out)


@cli.command(name="lie-table")
@with_common
@click.option("--sign-rule", type=click.Choice(rootcat.SIGN_RULES), default=rootcat.DEFAULT_SIGN_RULE)
def lie_table(quiver_path, primes, bound, out, cache_dir, sign_rule):
    """Structure constants and Gram matrix of the root-category Lie algebra."""
    q = _load(quiver_path)
    _emit(rootcat.assemble_lie_table(q, sign_rule).export(), out)


SUITES = ("jacobi", "serre", "form", "reflection", "affine")


def _suite_reports(q, suite, primes, bound):
    from rootlie import affine, bgp

    kind, _ = quiver_type(q)
    if kind == "wild":
        raise Refused("wild", "wild type refused")
    if suite == "affine":
        if not labels.is_kronecker(q):
            raise Refused("unsupported", "the affine suite runs on the Kronecker quiver")
        rep = affine.verify_theorem_64(bound or 2, primes or (2, 3, 5), q=q)
        return [rep], rep.lines
    if kind == "affine":
        if suite == "jacobi":
            return [affine.verify_epsilon_jacobi(affine.EpsilonAlgebra(q), bound or 2)], []
        if suite == "serre":
            return [_quantum_serre(q)], []
        raise Refused("unsupported", f"suite {suite} needs a Dynkin quiver")
    t = rootcat.assemble_lie_table(q)
    if suite == "jacobi":
        return [rootcat.verify_jacobi(t), rootcat.verify_antisymmetry_and_grading(t)], []
    if suite == "serre":
        return [rootcat.verify_serre_and_presentation(t), _quantum_serre(q)], []
    if suite == "form":
        return [rootcat.verify_invariance(t), rootcat.verify_form(t)], []
    if suite == "reflection":
        sources = [v for v in q.vertices if q.is_source(v)]
        return [bgp.verify_reflection_diagram(q, v, t) for v in sources], []
    raise Refused("usage", f"unknown suite {suite}")


def _quantum_serre(q):
    rep = rootcat.Report("quantum serre")
    for i, j in itertools.permutations(q.vertices, 2):
        rep.add(hall.quantum_serre_check(q, i, j), (i, j))
    return rep


@cli.command()
@click.argument("suite", type=click.Choice(SUITES))
@with_common
def verify(suite, quiver_path, primes, bound, out, cache_dir):
    """Run a verification suite; exits 1 on any violation."""
    q = _load(quiver_path)
    reports, detail = _suite_reports(q, suite, _primes(primes), bound)
    lines = list(detail) + [r.summary() for r in reports]
    total = sum(len(r.violations) for r in reports)
    lines.append(f"total: {total} violations")
    _emit("\n".join(lines) + "\n", out)
    if total:
        sys.exit(1)


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="rootlie", standalone_mode=False)
    except Refused as exc:
        click.echo(f"error: {exc.kind}: {exc}", err=True)
        return 2
    except click.exceptions.Abort:
        click.echo("error: aborted", err=True)
        return 2
    except click.ClickException as exc:
        click.echo(f"error: usage: {exc.format_message()}", err=True)
        return 2
    except (rootcat.WildRefused, QuiverError, labels.LabelError, BudgetExceeded, ValueError) as exc:
        kind = type(exc).__name__
        click.echo(f"error: {kind}: {exc}", err=True)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
