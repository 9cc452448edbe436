"""Command-line front end: file ingestion, verification suites, reports.

Exit codes: 0 when every asserted property in the run passed, 1 when a
property failed (the report names the violated law), 2 on input errors.
Identical configurations (including the seed) produce byte-identical
reports: nothing here depends on time, environment, or dict order.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

import click

from . import corpus as corpus_mod
from . import suite as suite_mod
from .algebra import load_algebra
from .dgcplx import componentwise_gp_check
from .errors import GorhomError, InputShapeError
from .frobenius import (
    BimodulePair,
    ExtensionPair,
    counterexample_product,
    global_gdim_transfer,
    is_frobenius_bimodule,
    is_frobenius_extension,
    load_bimodule,
    load_extension,
    tri_equiv_conditions,
    verify_gpd_transfer,
)
from .homology import (
    gid,
    gorenstein_profile,
    gpd,
    load_complex,
    resolve,
    totalize_quasi_bicomplex,
)
from .modrep import load_module, structural_modules


def _data_dir() -> Path:
    return Path(str(resources.files("gorhom") / "data"))


def resolve_input(path: str) -> Path:
    """Find an input file on disk or among the bundled corpus files."""
    p = Path(path)
    if p.exists():
        return p
    bundled = _data_dir() / path
    if bundled.exists():
        return bundled
    raise InputShapeError(f"no such file: {path} (also not bundled)")


def emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=1, sort_keys=True, default=str) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["section", "key", "value"])
        for key, value in sorted(report.items()):
            if key == "rows":
                continue
            writer.writerow(["meta", key, value])
        for i, row in enumerate(report.get("rows", [])):
            for key in sorted(row):
                writer.writerow([f"row{i}", key, row[key]])
        text = buf.getvalue()
    else:
        lines = [str(report.get("title", "report"))]
        for key, value in report.items():
            if key in ("title", "rows"):
                continue
            lines.append(f"  {key}: {value}")
        for row in report.get("rows", []):
            lines.append("  - " + "  ".join(f"{k}={row[k]}" for k in sorted(row)))
        text = "\n".join(lines) + "\n"
    if out is not None:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def finish(report: dict, fmt: str, out) -> None:
    emit(report, fmt, out)
    passed = report.get("passed")
    if passed is False:
        sys.exit(1)
    sys.exit(0)


common_options = [
    click.option("--bound", default=20, show_default=True,
                 type=click.IntRange(min=1), help="resolution depth bound"),
    click.option("--seed", default=0, show_default=True, help="seed for randomized searches"),
    click.option("--format", "fmt", default="text",
                 type=click.Choice(["text", "csv", "json"]), show_default=True),
    click.option("--out", default=None, help="write the report to a file"),
]


def with_common(f):
    for opt in reversed(common_options):
        f = opt(f)
    return f


@click.group()
def main():
    """Exact-arithmetic workbench for Gorenstein homological algebra."""


def _run(fn, fmt, out):
    try:
        report = fn()
    except GorhomError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    finish(report, fmt, out)


@main.command("algebra-info")
@click.argument("path")
@with_common
def algebra_info(path, bound, seed, fmt, out):
    """Validate an .alg file and print its basic structure."""

    def run():
        a = load_algebra(resolve_input(path))
        rad = a.radical_basis()
        report = {
            "title": f"algebra {path}",
            "field": str(a.field),
            "dimension": a.dim,
            "basis": ", ".join(a.basis_labels),
            "radical_dimension": rad.cols,
            "local": a.is_local(),
            "idempotents": (len(a.idempotents) if a.idempotents is not None else "none"),
            "passed": True,
        }
        if a.primitive_idempotents() is not None:
            s = structural_modules(a)
            report["simple_dimensions"] = [m.dim for m in s.simples]
            report["projective_dimensions"] = [m.dim for m in s.projectives]
            report["injective_dimensions"] = [m.dim for m in s.injectives]
        return report

    _run(run, fmt, out)


@main.command("module-info")
@click.argument("path")
@with_common
def module_info(path, bound, seed, fmt, out):
    """Validate a .mod file and print dimensions and radical data."""

    def run():
        m = load_module(resolve_input(path))
        from .modrep import radical_submodule_basis, socle_basis

        return {
            "title": f"module {path}",
            "dimension": m.dim,
            "algebra_dimension": m.algebra.dim,
            "radical_dimension": radical_submodule_basis(m).cols,
            "socle_dimension": socle_basis(m).cols,
            "passed": True,
        }

    _run(run, fmt, out)


@main.command("profile")
@click.argument("path")
@with_common
def profile_cmd(path, bound, seed, fmt, out):
    """Gorenstein profile of the algebra in an .alg file."""

    def run():
        a = load_algebra(resolve_input(path))
        prof = gorenstein_profile(a, bound)
        return {
            "title": f"profile {path}",
            "max-pd-of-injectives": str(prof.max_pd_injective),
            "max-id-of-projectives": str(prof.max_id_projective),
            "gorenstein-dim": (prof.gorenstein_dim if prof.certified
                               else f"not certified within {bound}"),
            "passed": prof.certified,
        }

    _run(run, fmt, out)


@main.command("gpd")
@click.argument("path")
@with_common
def gpd_cmd(path, bound, seed, fmt, out):
    """Gorenstein projective dimension of the module in a .mod file."""

    def run():
        m = load_module(resolve_input(path))
        prof = gorenstein_profile(m.algebra, bound)
        value = gpd(m, prof)
        return {"title": f"gpd {path}", "gpd": value,
                "passed": isinstance(value, int)}

    _run(run, fmt, out)


@main.command("gid")
@click.argument("path")
@with_common
def gid_cmd(path, bound, seed, fmt, out):
    """Gorenstein injective dimension of the module in a .mod file."""

    def run():
        m = load_module(resolve_input(path))
        prof = gorenstein_profile(m.algebra, bound)
        value = gid(m, prof)
        return {"title": f"gid {path}", "gid": value,
                "passed": isinstance(value, int)}

    _run(run, fmt, out)


@main.command("resolve")
@click.argument("path")
@click.option("--direction", default="projective",
              type=click.Choice(["projective", "injective"]), show_default=True)
@with_common
def resolve_cmd(path, direction, bound, seed, fmt, out):
    """Minimal (co)resolution of the module in a .mod file."""

    def run():
        m = load_module(resolve_input(path))
        res = resolve(m, direction, bound)
        return {
            "title": f"{direction} resolution of {path}",
            "term_dimensions": [t.dim for t in res.terms],
            "complete": res.complete,
            "length": (res.depth() if res.complete else f">= {bound}"),
            "passed": True,
        }

    _run(run, fmt, out)


@main.command("totalize")
@click.argument("path")
@with_common
def totalize_cmd(path, bound, seed, fmt, out):
    """Run the quasi-bicomplex totalization pipeline on a .mod file."""

    def run():
        m = load_module(resolve_input(path))
        prof = gorenstein_profile(m.algebra, bound)
        result = totalize_quasi_bicomplex(m, prof)
        bad = result.quasi_bicomplex.verify_identities()
        qb = result.quasi_bicomplex
        return {
            "title": f"totalization of {path}",
            "window_columns": qb.max_column + 1,
            "window_rows": qb.max_row + 1,
            "identities_violated": len(bad),
            "witness": f"0 -> B0(dim {result.witness.left.dim}) -> "
                       f"Z0(dim {result.witness.middle.dim}) -> M(dim {m.dim}) -> 0",
            "b0_pd": str(result.b0_pd),
            "z0_gorenstein_projective": result.z0_verdict.verdict,
            "gpd_bound_matches": result.gpd_bound_matches,
            "passed": (not bad and result.z0_verdict.verdict == "yes"
                       and result.gpd_bound_matches),
        }

    _run(run, fmt, out)


@main.command("frobenius-verify")
@click.argument("path")
@with_common
def frobenius_verify(path, bound, seed, fmt, out):
    """Certify an .ext or .bimod file as Frobenius (or not)."""

    def run():
        p = resolve_input(path)
        if p.suffix == ".bimod":
            verdict = is_frobenius_bimodule(load_bimodule(p), seed=seed)
        else:
            verdict = is_frobenius_extension(load_extension(p), seed=seed)
        return {
            "title": f"frobenius verification of {path}",
            "verdict": verdict.verdict,
            "obstruction": verdict.obstruction or "",
            "witness": "isomorphism found" if verdict.witness is not None else "",
            "passed": verdict.verdict != "inconclusive",
        }

    _run(run, fmt, out)


@main.command("transfer-check")
@click.argument("path")
@with_common
def transfer_check(path, bound, seed, fmt, out):
    """Dimension-transfer table across the extension in an .ext file."""

    def run():
        ext = load_extension(resolve_input(path))
        mods = corpus_mod.module_corpus(ext.total, minimum=8)
        report = verify_gpd_transfer(ext, mods, bound=bound, seed=seed)
        return {
            "title": f"transfer check {path}",
            "law": "gpd is preserved by restriction along a Frobenius extension",
            "all_equal": report.all_equal,
            "induction_direction_checked": report.ind_checked,
            "rows": [{k: str(v) for k, v in row.items()} for row in report.rows],
            "passed": report.all_equal,
        }

    _run(run, fmt, out)


@main.command("glgdim-check")
@click.argument("path")
@with_common
def glgdim_check(path, bound, seed, fmt, out):
    """Global Gorenstein dimensions on both sides of an .ext file agree."""

    def run():
        ext = load_extension(resolve_input(path))
        g_base, g_total, equal = global_gdim_transfer(ext, bound=bound)
        return {
            "title": f"global dimension comparison {path}",
            "law": "faithful pairs preserve the global Gorenstein dimension",
            "base": g_base,
            "total": g_total,
            "passed": equal,
        }

    _run(run, fmt, out)


@main.command("counterexample-product")
@click.option("--block", default="f2", show_default=True,
              help="bundled name of the harmless factor")
@click.option("--other", default="a2", show_default=True,
              help="bundled name of the factor carrying the bad module")
@with_common
def counterexample_cmd(block, other, bound, seed, fmt, out):
    """Certify the product-projection counterexample on bundled data."""

    def run():
        b = corpus_mod.corpus_algebra(block)
        bprime = corpus_mod.corpus_algebra(other)
        bad = corpus_mod.bad_module_for_counterexample()
        report = counterexample_product(b, bprime, bad, bound=bound)
        return {
            "title": f"product counterexample ({block} x {other})",
            "law": "faithfulness is necessary for reflecting Gorenstein projectives",
            "pair_verified": report.pair_verified,
            "projected_is_gp": report.projected_is_gp,
            "object_is_gp": report.object_is_gp,
            "unit_mono_at_object": report.unit_mono_at_object,
            "notes": "; ".join(report.notes),
            "passed": report.passed,
        }

    _run(run, fmt, out)


@main.command("triequiv-check")
@click.argument("path")
@with_common
def triequiv_check(path, bound, seed, fmt, out):
    """Unit/counit conditions for the pair in an .ext or .bimod file."""

    def run():
        p = resolve_input(path)
        if p.suffix == ".bimod":
            pair = BimodulePair(load_bimodule(p))
        else:
            pair = ExtensionPair(load_extension(p))
        corpus_a = corpus_mod.module_corpus(pair.algebra_a, minimum=4)[:4]
        corpus_b = corpus_mod.module_corpus(pair.algebra_b, minimum=4)[:4]
        rep = tri_equiv_conditions(pair, corpus_a, corpus_b, bound=bound)
        return {
            "title": f"stable-category conditions for {path}",
            "law": "unit cokernels and counit kernels govern the induced equivalences",
            "stable_gp_condition": rep.stable_gp_condition,
            "singularity_condition": rep.singularity_condition,
            "defect_condition": rep.defect_condition,
            "both_projective_condition": rep.both_projective_condition,
            "stable_hom_match_forward": rep.stable_hom_f_match,
            "stable_hom_match_backward": rep.stable_hom_g_match,
            "rows": ([{k: str(v) for k, v in r.items()} for r in rep.unit_rows]
                     + [{k: str(v) for k, v in r.items()} for r in rep.counit_rows]),
            "passed": True,
        }

    _run(run, fmt, out)


@main.command("complex-check")
@click.argument("path", required=False)
@with_common
def complex_check(path, bound, seed, fmt, out):
    """Componentwise verdicts for a .cpx file, or the bundled complex suite."""

    def run():
        if path is not None:
            c = load_complex(resolve_input(path))
            prof = gorenstein_profile(c.algebra, bound)
            rep = componentwise_gp_check(c, prof)
            return {
                "title": f"componentwise check {path}",
                "per_degree": {str(k): v for k, v in sorted(rep.per_degree.items())},
                "all_gorenstein_projective": rep.all_gp,
                "note": rep.note,
                "passed": rep.passed,
            }
        result = suite_mod.check_complex_pair(bound=bound, seed=seed)
        return {
            "title": "bundled complex suite",
            "law": result.law,
            "details": "; ".join(result.details),
            "passed": result.passed,
        }

    _run(run, fmt, out)


@main.command("suite")
@with_common
def suite_cmd(bound, seed, fmt, out):
    """Run every acceptance property over the bundled corpus."""

    def run():
        results = suite_mod.run_all(bound=bound, seed=seed)
        rows = []
        for r in results:
            rows.append({"check": r.name, "law": r.law,
                         "result": "pass" if r.passed else "FAIL"})
        failed = [r for r in results if not r.passed]
        report = {
            "title": f"verification suite (bound={bound}, seed={seed})",
            "checks": len(results),
            "failures": len(failed),
            "rows": rows,
            "passed": not failed,
        }
        if failed:
            report["violated"] = "; ".join(f"{r.name}: {r.law}" for r in failed)
        return report

    _run(run, fmt, out)


if __name__ == "__main__":
    main()
