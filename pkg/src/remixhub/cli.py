"""Command line interface.

``serve`` runs the HTTP service; the other commands operate directly on
a data directory or on local .pmp files, for operators and scripts.
Offline commands that write (``user add``, ``feature``) should not run
against a directory a live server has open.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import container
from .canonical import canonical_dumps
from .config import ENV_DATA_DIR, Config, load_config
from .errors import RemixHubError
from .platform import Hub


def _open_hub(data_dir: str | None) -> Hub:
    resolved = data_dir or None
    config = load_config(None)
    if resolved:
        config.data_dir = Path(resolved)
    return Hub(config.data_dir, config)


def _fail(exc: RemixHubError) -> None:
    click.echo(f"error [{exc.code}]: {exc.message}", err=True)
    sys.exit(1)


@click.group()
def main():
    """Programmable-media sharing platform."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON config file.")
@click.option("--host", default=None, help="Override bind host.")
@click.option("--port", type=int, default=None, help="Override bind port.")
@click.option("--data-dir", default=None, help="Override data directory.")
@click.option("--static", "static_dir", default=None,
              help="Directory of built web UI assets to serve at /.")
def serve(config_path, host, port, data_dir, static_dir):
    """Run the HTTP service until interrupted."""
    from .api import serve as run_server
    try:
        config = load_config(Path(config_path) if config_path else None)
        if host:
            config.host = host
        if port:
            config.port = port
        if data_dir:
            config.data_dir = Path(data_dir)
        run_server(config, Path(static_dir) if static_dir else None)
    except RemixHubError as exc:
        _fail(exc)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def inspect(file):
    """Show the structure of a .pmp project file."""
    try:
        project = container.parse_project(Path(file).read_bytes())
    except RemixHubError as exc:
        _fail(exc)
        return
    click.echo(f"title:   {project.title}")
    click.echo(f"author:  {project.author}")
    click.echo(f"version: {project.format_version}")
    click.echo(f"content: {container.content_hash(project)}")
    for sprite in (project.stage, *project.sprites):
        click.echo(
            f"sprite {sprite.name!r}: {len(sprite.scripts)} scripts, "
            f"{len(sprite.costumes)} costumes, {len(sprite.sounds)} sounds"
        )
    click.echo(f"assets: {len(project.assets)}")
    for digest, asset in sorted(project.assets.items()):
        click.echo(f"  {digest[:12]}  {asset.kind:5}  {asset.media_type}  {len(asset.data)} bytes")
    click.echo(f"ledger: {len(project.provenance)} records")
    for rec in project.provenance:
        ref = f" ref={rec.project_ref}" if rec.project_ref is not None else ""
        click.echo(f"  [{rec.seq}] {rec.action} by {rec.actor} at {rec.timestamp}{ref}")


@main.command("hash")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def hash_command(file):
    """Print the content hash of a .pmp project file."""
    try:
        project = container.parse_project(Path(file).read_bytes())
        click.echo(container.content_hash(project))
    except RemixHubError as exc:
        _fail(exc)


@main.command()
@click.argument("project_id", type=int)
@click.option("--depth", "-k", type=int, default=5, show_default=True)
@click.option("--direction", "-d", type=click.Choice(["ancestors", "descendants"]),
              default="ancestors", show_default=True)
@click.option("--data-dir", default=None, envvar=ENV_DATA_DIR)
def lineage(project_id, depth, direction, data_dir):
    """Print the lineage tree of a stored project as JSON."""
    try:
        hub = _open_hub(data_dir)
        try:
            click.echo(canonical_dumps(hub.lineage_tree(project_id, depth, direction)))
        finally:
            hub.close()
    except RemixHubError as exc:
        _fail(exc)


@main.command()
@click.option("--window-days", "-w", type=int, default=None,
              help="Trailing window length (default: configured value).")
@click.option("--data-dir", default=None, envvar=ENV_DATA_DIR)
def stats(window_days, data_dir):
    """Print community participation statistics as JSON."""
    try:
        hub = _open_hub(data_dir)
        try:
            click.echo(canonical_dumps(hub.stats(window_days)))
        finally:
            hub.close()
    except RemixHubError as exc:
        _fail(exc)


@main.group()
def user():
    """Manage members."""


@user.command("add")
@click.argument("name")
@click.option("--admin", is_flag=True, default=False, help="Grant admin rights.")
@click.option("--data-dir", default=None, envvar=ENV_DATA_DIR)
def user_add(name, admin, data_dir):
    """Create a member and print their access token."""
    try:
        hub = _open_hub(data_dir)
        try:
            created = hub.create_user(name, is_admin=admin)
            click.echo(canonical_dumps({"token": created.token, "username": created.username}))
        finally:
            hub.close()
    except RemixHubError as exc:
        _fail(exc)


@main.command()
@click.argument("project_id", type=int)
@click.option("--off", is_flag=True, default=False, help="Remove the featured flag.")
@click.option("--by", "actor", default="admin", show_default=True,
              help="Acting admin username.")
@click.option("--data-dir", default=None, envvar=ENV_DATA_DIR)
def feature(project_id, off, actor, data_dir):
    """Flag a project for the front page's featured list (admin only)."""
    try:
        hub = _open_hub(data_dir)
        try:
            meta = hub.feature_project(project_id, actor, featured=not off)
            click.echo(canonical_dumps(meta.to_doc()))
        finally:
            hub.close()
    except RemixHubError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
