"""Command-line pipeline driver and service launcher."""

from __future__ import annotations

import logging
import os

import click

from .embedding import EmbeddingParams
from .pipeline import (
    run_align,
    run_embed,
    run_eval,
    run_ingest,
    run_metrics,
    run_roles,
    run_synth,
)
from .store import Store

DEFAULT_STORE = os.environ.get("ROLESEER_STORE", "./store")


def _store(path: str) -> Store:
    return Store(path)


@click.group()
@click.option("-v", "--verbose", is_flag=True)
def main(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.argument("events_path", type=click.Path(exists=True))
@click.option("--store", default=DEFAULT_STORE, show_default=True)
@click.option("--status", "status_path", type=click.Path(exists=True), default=None)
@click.option("--window-hours", default=6.0, show_default=True)
@click.option("--snapshot-size", default=3, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv"]), default="jsonl")
def ingest(events_path, store, status_path, window_hours, snapshot_size, fmt):
    """Parse an interaction log into timestamp graphs."""
    n = run_ingest(_store(store), events_path, status_path, window_hours, snapshot_size, fmt)
    click.echo(f"ingested {n} timestamp graphs into {store}")


@main.command()
@click.option("--store", default=DEFAULT_STORE, show_default=True)
@click.option("--seed", default=0, show_default=True)
def metrics(store, seed):
    """Compute the six per-node graph metrics."""
    run_metrics(_store(store), seed=seed)
    click.echo("metrics done")


def _params(dims, walks, walk_length, window, epochs) -> EmbeddingParams:
    return EmbeddingParams(
        dims=dims, walks_per_node=walks, walk_length=walk_length, window=window, epochs=epochs
    )


@main.command()
@click.option("--store", default=DEFAULT_STORE, show_default=True)
@click.option("--method", type=click.Choice(["struc2vec", "deepwalk"]), default="struc2vec")
@click.option("--dims", default=128, show_default=True)
@click.option("--walks", default=10, show_default=True)
@click.option("--walk-length", default=80, show_default=True)
@click.option("--window", default=10, show_default=True)
@click.option("--epochs", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
def embed(store, method, dims, walks, walk_length, window, epochs, seed):
    """Train per-timestamp node embeddings."""
    run_embed(_store(store), method, _params(dims, walks, walk_length, window, epochs), seed)
    click.echo(f"embedded ({method})")


@main.command()
@click.option("--store", default=DEFAULT_STORE, show_default=True)
@click.option("--method", type=click.Choice(["struc2vec", "deepwalk"]), default="struc2vec")
@click.option("--seed", default=0, show_default=True)
def align(store, method, seed):
    """Align consecutive embedding spaces into one frame."""
    run_align(_store(store), method, seed=seed)
    click.echo("aligned")


@main.command()
@click.option("--store", default=DEFAULT_STORE, show_default=True)
@click.option("--method", type=click.Choice(["struc2vec", "deepwalk"]), default="struc2vec")
@click.option("--seed", default=0, show_default=True)
@click.option("--tau", default=0.3, show_default=True)
@click.option("--k-min", default=2, show_default=True)
@click.option("--k-max", default=16, show_default=True)
def roles(store, method, seed, tau, k_min, k_max):
    """Project, cluster, match role identities, and derive flows."""
    run_roles(_store(store), method, seed=seed, tau=tau, k_min=k_min, k_max=k_max)
    click.echo("roles done")


@main.command(name="eval")
@click.option("--store", default=DEFAULT_STORE, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--dims", default=128, show_default=True)
@click.option("--walks", default=10, show_default=True)
@click.option("--walk-length", default=80, show_default=True)
@click.option("--window", default=10, show_default=True)
@click.option("--epochs", default=5, show_default=True)
def eval_cmd(store, seed, dims, walks, walk_length, window, epochs):
    """Score the structural method against the proximity baseline."""
    result = run_eval(
        _store(store), seed=seed, params=_params(dims, walks, walk_length, window, epochs)
    )
    for method, scores in result.items():
        click.echo(f"{method}: {scores}")


@main.command()
@click.option("--players", default=60, show_default=True)
@click.option("--days", default=2.25, show_default=True)
@click.option("--seed", default=7, show_default=True)
@click.option("--scenario", "scenario_file", type=click.Path(exists=True), default=None)
@click.option("--out", "out_dir", required=True, type=click.Path())
def synth(players, days, seed, scenario_file, out_dir):
    """Generate a synthetic interaction log with planted roles."""
    events_path, truth_path = run_synth(out_dir, players, days, seed, scenario_file)
    click.echo(f"wrote {events_path} and {truth_path}")


@main.command()
@click.option("--store", default=DEFAULT_STORE, show_default=True)
@click.option("--port", default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--frontend", "frontend_dir", type=click.Path(), default=None)
def serve(store, port, host, frontend_dir):
    """Serve the exploration API over HTTP."""
    import uvicorn

    from .api import create_app

    uvicorn.run(create_app(store, frontend_dir), host=host, port=port)


if __name__ == "__main__":
    main()
