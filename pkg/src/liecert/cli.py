"""liecert command line: verify, list, selftest."""

from __future__ import annotations

import json
import os
import random
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import click

from . import __version__
from .catalog import CatalogError, OrbitRecord, diff_expected, load_catalog
from .liealg import Element, LieAlgebra, random_element, simple_lie_algebra
from .mvpoly import MultiPoly, maximal_minors, origin_only, two_var_gcd_oracle
from .propp import (P_HOLDS, OrbitError, build_param_matrix, lambda_tensor, run_pipeline,
                    verify_orbit)
from .sl2 import Characteristic, verify_triple

REPORT_SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

FIELD_NOTE = ("All computations are exact over Q. Ranks and the zero locus of a homogeneous "
              "ideal over the algebraic closure are unchanged by extending the field, so "
              "every verdict also holds over C.")


class ConfigError(click.ClickException):
    exit_code = EXIT_CONFIG


# --------------------------------------------------------------------------
# catalog selection


def _read_catalog(path: Optional[str]) -> List[OrbitRecord]:
    try:
        if path is None:
            return load_catalog()
        with open(path, "rb") as fh:
            return load_catalog(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read catalog {path}: {exc.strerror}")
    except CatalogError as exc:
        raise ConfigError(str(exc))


def _select(records: List[OrbitRecord], algebra: Optional[str],
            ordinal: Optional[int]) -> List[OrbitRecord]:
    if ordinal is not None and algebra is None:
        raise ConfigError("--ordinal requires --algebra")
    out = records
    if algebra is not None:
        out = [r for r in out if r.algebra == algebra.upper()]
        if not out:
            raise ConfigError(f"no orbits for algebra {algebra}")
    if ordinal is not None:
        out = [r for r in out if r.ordinal == ordinal]
        if not out:
            raise ConfigError(f"no such orbit {algebra.upper()}-{ordinal}")
    return out


# --------------------------------------------------------------------------
# verification


def _verify_record(job: Tuple[OrbitRecord, bool, int]) -> Tuple[dict, int]:
    """Worker: verify one orbit, returning its report entry and elapsed ms."""
    record, redundant, which = job
    start = time.perf_counter()
    entry = {"algebra": record.algebra, "ordinal": record.ordinal,
             "characteristic": list(record.characteristic)}
    try:
        L = simple_lie_algebra(record.algebra)
        rep = verify_orbit(L, Characteristic(record.characteristic), which=which,
                           redundant_checks=redundant)
        entry["computed"] = rep.computed()
        entry["matrices"] = [m.as_dict() for m in rep.matrices]
        entry["verdict"] = rep.verdict
    except OrbitError as exc:
        entry["error"] = str(exc)
        entry["verdict"] = "error"
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return entry, elapsed


def run_verification(records: List[OrbitRecord], jobs: int = 1, redundant: bool = False,
                     skip_expected_diff: bool = False, which: int = 0) -> dict:
    """Verify ``records`` and assemble the report document."""
    work = [(r, redundant, which) for r in records]
    if jobs > 1 and len(work) > 1:
        # largest orbits first so the pool is not left waiting on one straggler
        order = sorted(range(len(work)), key=lambda i: -records[i].expected.dim_centralizer)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = dict(zip(order, pool.map(_verify_record, [work[i] for i in order])))
        results = [done[i] for i in range(len(work))]
    else:
        results = [_verify_record(w) for w in work]
    orbits = []
    timing: Dict[str, int] = {}
    certified = 0
    for record, (entry, elapsed) in zip(records, results):
        if not skip_expected_diff and "computed" in entry:
            entry["expected_diff"] = diff_expected(record, entry["computed"])
        if entry["verdict"] == P_HOLDS:
            certified += 1
        orbits.append(entry)
        timing[record.key] = elapsed
    timing["total_ms"] = sum(timing.values())
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "engine_version": __version__,
        "field_note": FIELD_NOTE,
        "orbits": orbits,
        "summary": {"total": len(orbits), "certified": certified},
        "timing": timing,
    }


def report_ok(doc: dict) -> bool:
    return all(o["verdict"] == P_HOLDS and not o.get("expected_diff") for o in doc["orbits"])


def report_body(doc: dict) -> dict:
    """The diffable part of a report: everything except wall-clock timing."""
    return {k: v for k, v in doc.items() if k != "timing"}


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _fmt_weights(ws) -> str:
    return ", ".join(str(w) for w in ws)


def render_markdown(doc: dict) -> str:
    lines = ["# Property (P) verification report", "", FIELD_NOTE, ""]
    timing = doc.get("timing", {})
    for o in doc["orbits"]:
        key = f"{o['algebra']}-{o['ordinal']}"
        lines.append(f"## {key}, characteristic {''.join(map(str, o['characteristic']))}")
        lines.append("")
        if "error" in o:
            lines += [f"Pipeline failed: {o['error']}", ""]
            continue
        c = o["computed"]
        lines.append(f"- centralizer g^e has dimension {c['dim_centralizer']}")
        lines.append(f"- centre z(g^e) has dimension {c['dim_centre']}, "
                     f"weights {_fmt_weights(c['centre_weights'])}")
        lines.append(f"- top weight m_r = {c['m_r']}")
        lines.append("")
        if o["matrices"]:
            lines.append("| l | m_i | m_k | shape | params | method | verdict |")
            lines.append("|---|-----|-----|-------|--------|--------|---------|")
            for m in o["matrices"]:
                note = " (redundant)" if m["redundant"] else ""
                lines.append(f"| {m['l']} | {m['m_i']} | {m['m_k'] if m['m_k'] is not None else '-'} "
                             f"| {m['rows']}x{m['cols']} | {m['num_params']} | {m['method']} "
                             f"| {m['verdict']}{note} |")
            lines.append("")
        if o["verdict"] == P_HOLDS:
            lines.append("The orbit satisfies (P).")
        else:
            lines.append("Not certified: some matrix fails to be surjective for every nonzero parameter.")
        for d in o.get("expected_diff", []):
            lines.append(f"- catalog mismatch: {d}")
        if key in timing:
            lines.append(f"\n_{timing[key]} ms_")
        lines.append("")
    s = doc["summary"]
    lines.append(f"**{s['certified']} of {s['total']} orbits certified.**")
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".liecert-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --------------------------------------------------------------------------
# selftest


def _jacobi_ok(L: LieAlgebra, rng: random.Random, samples: Optional[int]) -> bool:
    if samples is None:
        basis = [Element.basis(k) for k in range(L.dim)]
        triples = ((a, b, c) for a in basis for b in basis for c in basis)
    else:
        triples = ((random_element(L, rng), random_element(L, rng), random_element(L, rng))
                   for _ in range(samples))
    br = L.bracket
    for a, b, c in triples:
        if br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b)):
            return False
    return True


def _corrupt(L: LieAlgebra) -> LieAlgebra:
    """Copy of L with one structure constant doubled."""
    table = dict(L.struct_consts)
    key = next(k for k in sorted(table) if k[0] < L.n_pos and k[1] < L.n_pos)
    table[key] = tuple((k, 2 * c) for k, c in table[key])
    return LieAlgebra(L.root_system, table)


def _suite_jacobi(fault: Optional[str]) -> bool:
    rng = random.Random(0)
    for name in ("A2", "B2", "G2"):
        L = simple_lie_algebra(name)
        if fault == "jacobi":
            L = _corrupt(L)
        if not _jacobi_ok(L, rng, None):
            return False
    return _jacobi_ok(simple_lie_algebra("F4"), rng, 200)


def _small_orbit():
    L = simple_lie_algebra("F4")
    return L, run_pipeline(L, Characteristic((0, 2, 0, 0)))


def _suite_sl2(fault: Optional[str]) -> bool:
    L, data = _small_orbit()
    t = data.triple
    if fault == "sl2":
        t = type(t)(t.e, t.h, t.f * 2)
    return verify_triple(L, t)


def _suite_selection(fault: Optional[str]) -> bool:
    L, data = _small_orbit()
    lam = lambda_tensor(L, data.triple.f, data.basis, full=True)
    if fault == "selection":
        lam.entries[(2, 0, 2, 0, 4, 0)] = 1
    return bool(lam.entries) and lam.selection_rule_holds()


def _suite_groebner(fault: Optional[str]) -> bool:
    a, b = MultiPoly.var(0, 2), MultiPoly.var(1, 2)
    families = [[a, b], [a * a - b * b], [a * a - b * b, a * b], [a * a + b * b, a * b * 3]]
    L, data = _small_orbit()
    lam = lambda_tensor(L, data.triple.f, data.basis)
    m, _, _ = build_param_matrix(data.basis, lam, 2)
    families.append(maximal_minors(m))
    for gens in families:
        want = two_var_gcd_oracle(gens)
        if fault == "groebner":
            want = not want
        if origin_only(gens) != want:
            return False
    return True


SELFTEST_SUITES: List[Tuple[str, Callable[[Optional[str]], bool]]] = [
    ("jacobi", _suite_jacobi),
    ("sl2", _suite_sl2),
    ("selection-rule", _suite_selection),
    ("groebner-vs-gcd", _suite_groebner),
]


# --------------------------------------------------------------------------
# click commands


algebra_option = click.option("--algebra", type=click.Choice(["E6", "E7", "E8", "F4"],
                                                             case_sensitive=False),
                              help="Restrict to one algebra.")
ordinal_option = click.option("--ordinal", type=int, help="Restrict to one orbit (needs --algebra).")
catalog_option = click.option("--catalog", "catalog_path", type=click.Path(dir_okay=False),
                              envvar="LIECERT_CATALOG",
                              help="Catalog file (default: bundled; env LIECERT_CATALOG).")


@click.group()
@click.version_option(__version__, prog_name="liecert")
def main():
    """Exact certification of property (P) for distinguished nilpotent orbits."""


@main.command()
@algebra_option
@ordinal_option
@catalog_option
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="Write the report here instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["json", "markdown"]), default="json",
              show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), help="Worker processes (default: one per orbit, capped at CPU count).")
@click.option("--skip-expected-diff", is_flag=True, help="Do not compare against the catalog.")
@click.option("--redundant-checks", is_flag=True,
              help="Also check M(s, alpha) when the top weight space is a line.")
@click.option("--candidate", type=click.IntRange(min=0), default=0, show_default=True,
              help="Use the n-th successful e from the search sequence.")
def verify(algebra, ordinal, catalog_path, out_path, fmt, jobs, skip_expected_diff,
           redundant_checks, candidate):
    """Verify the selected orbits and report."""
    records = _select(_read_catalog(catalog_path), algebra, ordinal)
    if jobs is None:
        jobs = max(1, min(len(records), os.cpu_count() or 1))
    doc = run_verification(records, jobs=jobs, redundant=redundant_checks,
                           skip_expected_diff=skip_expected_diff, which=candidate)
    text = render_json(doc) if fmt == "json" else render_markdown(doc)
    if out_path:
        try:
            write_atomic(out_path, text)
        except OSError as exc:
            raise ConfigError(f"cannot write report {out_path}: {exc.strerror}")
    else:
        click.echo(text, nl=False)
    for o in doc["orbits"]:
        key = f"{o['algebra']}-{o['ordinal']}"
        if o["verdict"] != P_HOLDS:
            click.echo(f"{key}: {o.get('error', 'not certified')}", err=True)
        for d in o.get("expected_diff", []):
            click.echo(f"{key}: {d}", err=True)
    s = doc["summary"]
    click.echo(f"{s['certified']}/{s['total']} orbits certified", err=True)
    sys.exit(EXIT_OK if report_ok(doc) else EXIT_FAIL)


@main.command("list")
@algebra_option
@catalog_option
def list_orbits(algebra, catalog_path):
    """List catalogued orbits with their expected invariants."""
    for r in _select(_read_catalog(catalog_path), algebra, None):
        ex = r.expected
        click.echo(f"{r.algebra}  {r.ordinal:2d}  {''.join(map(str, r.characteristic)):8s}  "
                   f"dim g^e={ex.dim_centralizer:2d}  dim z={ex.dim_centre}  "
                   f"weights={_fmt_weights(ex.centre_weights)}")


@main.command()
@click.option("--inject-fault", type=click.Choice(["jacobi", "sl2", "selection", "groebner"]),
              hidden=True)
def selftest(inject_fault):
    """Run the algebraic property suites on small fixtures."""
    failed = []
    start = time.perf_counter()
    for name, suite in SELFTEST_SUITES:
        t0 = time.perf_counter()
        try:
            ok = suite(inject_fault)
        except Exception as exc:  # a crash is a failure of that suite
            ok = False
            click.echo(f"{name}: raised {exc!r}", err=True)
        click.echo(f"{name:16s} {'ok' if ok else 'FAILED'}  ({time.perf_counter() - t0:.2f} s)")
        if not ok:
            failed.append(name)
    click.echo(f"selftest runtime {time.perf_counter() - start:.2f} s")
    if failed:
        click.echo(f"failing suites: {', '.join(failed)}", err=True)
        sys.exit(EXIT_FAIL)
