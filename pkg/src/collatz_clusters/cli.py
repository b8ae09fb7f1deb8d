"""Command-line front end.

Exit codes: 0 = all checks pass, 1 = a mathematical violation was found
(a falsification event), 2 = usage or I/O error.

Every command can dump a JSON report envelope with --json; the ``results``
payload is deterministic, only ``timing_ms`` varies between runs.
"""

from __future__ import annotations

import csv
import json
import os
import sys
import time
from dataclasses import dataclass, field

import click

from . import __version__
from ._backend import BACKEND
from .cfunc import c_closed
from .core import (
    DEFAULT_MAX_STEPS,
    SigmaKind,
    decompose_odd,
    total_stopping_time,
    trajectory,
)
from .scanner import (
    CacheFormatError,
    SigmaTable,
    THEOREM_SELECTORS,
    coincidence_index,
    find_clusters,
    find_converse_counterexamples,
    read_cache,
    run_verification_suite,
    sieve_sigma,
    write_cache,
)
from .theorems import FAMILY_IDS, corollary2_cluster_predicate, family_generate


@dataclass
class ReportEnvelope:
    command: str
    parameters: dict
    results: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    timing_ms: int = 0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "violations": self.violations,
            "timing_ms": self.timing_ms,
        }

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _parse_range(ctx, param, value):
    """Half-open range given as A..B."""
    if value is None:
        return None
    try:
        lo_s, hi_s = value.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise click.BadParameter(f"expected A..B, got {value!r}")
    if lo < 1 or hi < lo:
        raise click.BadParameter(f"need 1 <= A <= B, got {value!r}")
    return lo, hi


_max_steps_option = click.option(
    "--max-steps", type=click.IntRange(min=1), default=DEFAULT_MAX_STEPS,
    envvar="COLLATZ_MAX_STEPS", show_default=True,
    help="Iteration bound for stopping-time searches "
         "(env COLLATZ_MAX_STEPS; the flag wins).")
_json_option = click.option(
    "--json", "json_path", type=click.Path(dir_okay=False, writable=True),
    default=None, help="Write a JSON report envelope to this path.")


def _sigma_str(sv) -> str:
    if sv.kind is SigmaKind.FINITE:
        return str(sv.steps)
    return sv.kind.value


def _finish(envelope: ReportEnvelope, json_path, started: float,
            exit_code: int) -> None:
    envelope.timing_ms = int((time.monotonic() - started) * 1000)
    if json_path:
        try:
            envelope.dump(json_path)
        except OSError as exc:
            click.echo(f"error: cannot write {json_path}: {exc}", err=True)
            sys.exit(2)
    sys.exit(exit_code)


@click.group()
@click.version_option(__version__, message=f"%(prog)s %(version)s ({BACKEND} kernels)")
def main():
    """Clusters of equal total stopping times in the 3x+1 problem."""


@main.command()
@click.argument("m", type=click.IntRange(min=1))
@click.option("--show-trajectory", is_flag=True, help="Print the iterates.")
@_max_steps_option
@_json_option
def compute(m, show_trajectory, max_steps, json_path):
    """Stopping time, decomposition, and C value for a single integer."""
    started = time.monotonic()
    sigma = total_stopping_time(m, max_steps)
    results = {"m": m, "sigma": _sigma_str(sigma)}
    click.echo(f"m = {m}")
    click.echo(f"sigma_inf = {_sigma_str(sigma)}")
    if m >= 3 and m % 2 == 1:
        d = decompose_odd(m)
        click.echo(f"decomposition: p={d.p} q={d.q} n={d.n} j={d.j} k={d.k} "
                   f"r={d.r} s={d.s} t={d.t} u={d.u}")
        click.echo(f"C({d.n}) = {c_closed(d.n)}")
        results["decomposition"] = {sym: getattr(d, sym)
                                    for sym in "npqjkrstu"}
        results["c_of_n"] = c_closed(d.n)
    if show_trajectory:
        rec = trajectory(m, max_steps)
        click.echo("trajectory: " + " ".join(str(v) for v in rec.iterates))
        click.echo(f"status: {rec.status.value}")
        results["trajectory"] = rec.iterates
        results["status"] = rec.status.value
    env = ReportEnvelope("compute", {"m": m, "max_steps": max_steps}, results)
    _finish(env, json_path, started, 0)


@main.command()
@click.option("--theorem", "selector", required=True,
              type=click.Choice(THEOREM_SELECTORS),
              help="Which statement to verify.")
@click.option("--range", "bounds", required=True, callback=_parse_range,
              help="Half-open range A..B (over n, or over i for c3..c8).")
@click.option("--workers", type=click.IntRange(min=1), default=1,
              show_default=True)
@click.option("--chunk-size", type=click.IntRange(min=1), default=1 << 16,
              show_default=True)
@_max_steps_option
@_json_option
def verify(selector, bounds, workers, chunk_size, max_steps, json_path):
    """Verify one theorem/lemma/corollary over a range; exit 1 on violation."""
    started = time.monotonic()
    lo, hi = bounds
    reports = run_verification_suite(lo, hi, selectors=(selector,),
                                     max_steps=max_steps,
                                     chunk_size=chunk_size, workers=workers)
    report = reports[selector]
    click.echo(f"{selector} over [{report.lo}, {report.hi}): "
               f"{report.checked} checked, {report.passes} passed, "
               f"{len(report.violations)} violations, "
               f"{len(report.abstentions)} abstentions")
    if report.extra:
        for key, val in sorted(report.extra.items()):
            click.echo(f"{key}: {val}")
    for violation in report.violations[:20]:
        click.echo(f"VIOLATION: {violation}")
    env = ReportEnvelope(
        "verify",
        {"theorem": selector, "range": [lo, hi], "max_steps": max_steps},
        results=report.to_dict(), violations=report.violations)
    _finish(env, json_path, started, 0 if report.ok else 1)


@main.command()
@click.option("--range", "bounds", required=True, callback=_parse_range,
              help="Half-open range A..B of integers to sieve.")
@click.option("--min-cluster", type=click.IntRange(min=2), default=2,
              show_default=True, help="Minimum run length to report.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              default="-", help="CSV output path ('-' for stdout).")
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False),
              default=None, help="Sieve cache file to load or create.")
@click.option("--workers", type=click.IntRange(min=1), default=1,
              show_default=True)
@click.option("--chunk-size", type=click.IntRange(min=1), default=1 << 16,
              show_default=True)
@_max_steps_option
@_json_option
def scan(bounds, min_cluster, out_path, cache_path, workers, chunk_size,
         max_steps, json_path):
    """Sieve a range and report maximal cluster runs as CSV."""
    started = time.monotonic()
    lo, hi = bounds
    if hi == lo:
        click.echo("first,length,sigma")
        env = ReportEnvelope(
            "scan", {"range": [lo, hi], "min_cluster": min_cluster,
                     "max_steps": max_steps},
            results={"clusters": []})
        _finish(env, json_path, started, 0)
    table = None
    if cache_path and os.path.exists(cache_path):
        try:
            cached = read_cache(cache_path)
        except (OSError, CacheFormatError) as exc:
            click.echo(f"error: bad cache {cache_path}: {exc}", err=True)
            sys.exit(2)
        if cached.start <= lo and cached.stop >= hi \
                and cached.max_steps == max_steps:
            table = SigmaTable(start=lo,
                               values=cached.values[lo - cached.start:
                                                    hi - cached.start],
                               max_steps=max_steps)
    if table is None:
        table = sieve_sigma(lo, hi, max_steps=max_steps,
                            chunk_size=chunk_size, workers=workers)
        if cache_path:
            try:
                write_cache(table, cache_path)
            except OSError as exc:
                click.echo(f"error: cannot write {cache_path}: {exc}",
                           err=True)
                sys.exit(2)
    runs = find_clusters(table, min_cluster)
    rows = [(r.first, r.length, r.sigma) for r in runs]
    try:
        out = sys.stdout if out_path == "-" else open(out_path, "w", newline="")
    except OSError as exc:
        click.echo(f"error: cannot write {out_path}: {exc}", err=True)
        sys.exit(2)
    writer = csv.writer(out)
    writer.writerow(["first", "length", "sigma"])
    writer.writerows(rows)
    if out is not sys.stdout:
        out.close()
    env = ReportEnvelope(
        "scan",
        {"range": [lo, hi], "min_cluster": min_cluster,
         "max_steps": max_steps},
        results={"clusters": [list(row) for row in rows]})
    _finish(env, json_path, started, 0)


@main.command()
@click.option("--limit", type=click.IntRange(min=4), required=True,
              help="Search n in [4, limit].")
@click.option("--workers", type=click.IntRange(min=1), default=1,
              show_default=True)
@_max_steps_option
@_json_option
def counterexamples(limit, workers, max_steps, json_path):
    """Converse counterexamples: clusters at C(n) = 0 (smallest n is 121)."""
    started = time.monotonic()
    witnesses = find_converse_counterexamples(limit, max_steps=max_steps,
                                              workers=workers)
    click.echo("n,sigma,coincidence_index")
    for w in witnesses:
        click.echo(f"{w.n},{w.sigma},{w.coincidence_index}")
    click.echo(f"# {len(witnesses)} witnesses up to n = {limit}")
    env = ReportEnvelope(
        "counterexamples", {"limit": limit, "max_steps": max_steps},
        results={"witnesses": [
            {"n": w.n, "sigma": w.sigma,
             "coincidence_index": w.coincidence_index, "p": w.p}
            for w in witnesses]})
    _finish(env, json_path, started, 0)


@main.command()
@click.option("--family", "family_id", required=True,
              type=click.Choice(FAMILY_IDS))
@click.option("--i-max", type=click.IntRange(min=0), default=20,
              show_default=True, help="Largest family index (r for mersenne).")
@click.option("--m-max", type=click.IntRange(min=0), default=100,
              show_default=True, help="Largest parameter m.")
@_max_steps_option
@_json_option
def families(family_id, i_max, m_max, max_steps, json_path):
    """Enumerate a family and check its C values and cluster consequences."""
    started = time.monotonic()
    members = family_generate(family_id, i_max, m_max)
    violations = []
    checked_clusters = 0
    for member in members:
        if c_closed(member.check_value) != member.expected_c:
            violations.append({"indices": list(member.indices),
                               "value": member.value,
                               "kind": "c_value"})
            continue
        if family_id == "mersenne":
            r = member.indices[0]
            m = (1 << (2 * r)) - 1
            if coincidence_index(m - 1, m, max_steps) != 2 * r + 2:
                violations.append({"indices": list(member.indices),
                                   "kind": "coincidence"})
            checked_clusters += 1
        elif member.expected_c == 1 and member.check_value >= 4:
            if not corollary2_cluster_predicate(member.check_value,
                                                max_steps=max_steps):
                violations.append({"indices": list(member.indices),
                                   "value": member.value,
                                   "kind": "cluster"})
            checked_clusters += 1
    click.echo(f"{family_id}: {len(members)} members, "
               f"{checked_clusters} cluster checks, "
               f"{len(violations)} violations")
    for violation in violations[:20]:
        click.echo(f"VIOLATION: {violation}")
    env = ReportEnvelope(
        "families",
        {"family": family_id, "i_max": i_max, "m_max": m_max,
         "max_steps": max_steps},
        results={"members": len(members),
                 "cluster_checks": checked_clusters},
        violations=violations)
    _finish(env, json_path, started, 0 if not violations else 1)


if __name__ == "__main__":
    main()
