"""Batch command line front door.

Exit codes: 0 on success, 1 for validation or solver failures, 2 for usage
errors.  Every subcommand is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import functools
import json
from pathlib import Path

import click
import pydantic

from . import dataio
from .bundle import load_bundle, write_bundle
from .errors import OdflowError
from .graph import load_graph
from .odplot import od_matrix
from .spectral import order_nodes
from .synth import SyntheticSpec, generate
from .service.reports import build_selection_report, points_for
from .service.schemas import SelectionRequest, SelectionResponse


def guarded(fn):
    """Map domain errors to exit code 1 with a diagnostic on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except OdflowError as exc:
            raise click.ClickException(f"[{exc.code}] {exc.message}") from None
        except pydantic.ValidationError as exc:
            raise click.ClickException(f"[validation_error] {exc}") from None

    return wrapper


@click.group()
@click.version_option(package_name="odflow")
def main():
    """Spectral ordering and OD flow exploration tools."""


@main.command("order")
@click.argument("nodes", type=click.Path(exists=True, dir_okay=False))
@click.argument("edges", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False))
@guarded
def cmd_order(nodes, edges, out):
    """Compute the spectral node ordering for a graph and write it as CSV."""
    graph = load_graph(nodes, edges)
    ordering = order_nodes(graph)
    ordering.to_csv(out)
    click.echo(f"wrote {ordering.n} ranks to {out}")


@main.command("plot")
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False))
@click.option(
    "--class", "class_filter", type=click.Choice(["all", "0", "1"]), default="all"
)
@guarded
def cmd_plot(bundle_dir, out, class_filter):
    """Project a bundle's trips into OD plot points and export them as CSV."""
    bundle = load_bundle(bundle_dir)
    points = points_for(bundle, class_filter)
    dataio.write_points(points, bundle.trips, out)
    click.echo(f"wrote {len(points)} points to {out}")


@main.command("matrix")
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False))
@click.option("-r", "--resolution", required=True, type=int)
@click.option(
    "--class", "class_filter", type=click.Choice(["all", "0", "1"]), default="all"
)
@guarded
def cmd_matrix(bundle_dir, out, resolution, class_filter):
    """Aggregate a bundle's OD plot into an RxR count matrix CSV."""
    bundle = load_bundle(bundle_dir)
    m = od_matrix(
        bundle.points,
        bundle.trips,
        resolution,
        class_filter=class_filter,
        n=bundle.ordering.n,
    )
    dataio.write_matrix(m, out)
    click.echo(f"wrote {m.resolution}x{m.resolution} matrix ({m.total} trips) to {out}")


@main.command("report")
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("selection_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False))
@guarded
def cmd_report(bundle_dir, selection_file, out):
    """Evaluate a selection spec against a bundle and write the JSON report.

    The output is the same content the HTTP selection endpoint returns for
    the same request body.
    """
    bundle = load_bundle(bundle_dir)
    req = SelectionRequest.model_validate_json(Path(selection_file).read_text())
    report = build_selection_report(
        bundle,
        req.to_selection(),
        detail_feature=req.detail_feature,
        detail_bins=req.detail_bins,
        group_by=req.group_by,
    )
    body = SelectionResponse(**report).model_dump(mode="json")
    with open(out, "w", encoding="utf-8") as f:
        json.dump(body, f, indent=2)
        f.write("\n")
    click.echo(f"wrote report ({len(report['trip_ids'])} trips) to {out}")


@main.command("synth")
@click.argument("out_dir", type=click.Path(file_okay=False))
@click.option("--graph", required=True, help="path:N, grid:WxH, or planar:N")
@click.option("--trips", required=True, type=int)
@click.option(
    "--weights",
    default="0.5,0.2,0.2,0.1",
    show_default=True,
    help="diagonal,vertical,horizontal,cluster mix",
)
@click.option("--ratio", default=0.3, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
@guarded
def cmd_synth(out_dir, graph, trips, weights, ratio, seed):
    """Generate a seed-deterministic synthetic dataset bundle."""
    try:
        parts = tuple(float(w) for w in weights.split(","))
        spec = SyntheticSpec(
            graph=graph, trips=trips, weights=parts, class_ratio=ratio, seed=seed
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    bundle = generate(spec, dataset_id=Path(out_dir).name)
    write_bundle(bundle, out_dir)
    click.echo(f"wrote bundle {bundle.dataset_id!r} ({trips} trips) to {out_dir}")


@main.command("validate")
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
@guarded
def cmd_validate(bundle_dir):
    """Check a bundle directory for internal consistency."""
    bundle = load_bundle(bundle_dir)
    click.echo(
        f"OK: {bundle.dataset_id} has {bundle.n_nodes} nodes, "
        f"{bundle.trips.n_trips} trips, {len(bundle.trips.feature_names)} features, "
        f"{len(bundle.ordering.components)} component(s)"
    )


@main.command("serve")
@click.option(
    "--data-dir",
    envvar="ODFLOW_DATA_DIR",
    required=True,
    type=click.Path(exists=True, file_okay=False),
    show_envvar=True,
)
@click.option("--port", envvar="ODFLOW_PORT", default=8000, show_default=True, type=int, show_envvar=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@guarded
def cmd_serve(data_dir, port, host):
    """Load every bundle under DATA_DIR and serve the HTTP API."""
    from .service.app import load_data_dir, serve

    bundles = load_data_dir(data_dir)
    if not bundles:
        raise click.ClickException(f"no dataset bundles found under {data_dir}")
    click.echo(f"serving {len(bundles)} dataset(s) on {host}:{port}")
    serve(bundles, port, host=host)


if __name__ == "__main__":
    main()
