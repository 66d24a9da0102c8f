"""Operator command line: serve, corpus import/export, lint, moderation.

Exit codes are stable: 0 success, 1 operation or lint failure, 2 config
parse error, 3 store unavailable (missing directory or lock held). Every
subcommand takes --json for machine-readable output.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from socle.config import ConfigError, load_config
from socle.errors import SocleError, StoreLocked
from socle.lint import lint_statement_text
from socle.seeds import build_seed_corpus, smoking_corpus
from socle.store import Store

EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_STORE = 3


def _open_store(path: str, *, create: bool = False, draft_threshold: int = 3) -> Store:
    directory = Path(path)
    if create:
        directory.mkdir(parents=True, exist_ok=True)
    try:
        return Store(directory, draft_threshold=draft_threshold)
    except StoreLocked as exc:
        click.echo(f"error: {exc.detail}", err=True)
        raise SystemExit(EXIT_STORE) from None


def _emit(as_json: bool, payload: dict, human: str) -> None:
    if as_json:
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        click.echo(human)


json_flag = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")


@click.group()
def main() -> None:
    """Collaborative argumentation service on a statement graph."""


@main.command()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON config file; SOC_* environment variables override it.")
@json_flag
def serve(config_path: str | None, as_json: bool) -> None:
    """Run the HTTP service until interrupted."""
    import uvicorn

    from socle.api import create_app

    try:
        config = load_config(config_path)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        raise SystemExit(EXIT_CONFIG) from None

    if config.ui_dir and not Path(config.ui_dir, "index.html").is_file():
        click.echo(f"config error: ui_dir {config.ui_dir!r} has no index.html", err=True)
        raise SystemExit(EXIT_CONFIG)

    store = _open_store(config.store, draft_threshold=config.draft_threshold)
    _emit(
        as_json,
        {"listening": config.addr, "store": config.store},
        f"serving on http://{config.addr} (store: {config.store})",
    )
    try:
        uvicorn.run(
            create_app(store, config),
            host=config.host,
            port=config.port,
            log_level="warning",
        )
    finally:
        store.close()


@main.command("import")
@click.argument("file", type=click.Path(exists=True))
@click.option("--store", "store_path", required=True, type=click.Path())
@json_flag
def import_corpus(file: str, store_path: str, as_json: bool) -> None:
    """Import a corpus file into a fresh store (all-or-nothing)."""
    with open(file, encoding="utf-8") as fh:
        corpus = json.load(fh)
    store = _open_store(store_path, create=True)
    try:
        summary = store.import_corpus(corpus)
    except SocleError as exc:
        click.echo(f"import failed: {exc.detail}", err=True)
        raise SystemExit(EXIT_FAILURE) from None
    finally:
        store.close()
    _emit(
        as_json,
        summary,
        f"imported {summary['statements']} statements, {summary['edges']} edges, "
        f"{summary['users']} users "
        f"(+{summary['relation_statements']} relation-statements, "
        f"{summary['beliefs']} beliefs, {summary['comments']} comments)",
    )


@main.command()
@click.argument("file", type=click.Path(), required=False)
@click.option("--store", "store_path", required=True, type=click.Path())
@json_flag
def export(file: str | None, store_path: str, as_json: bool) -> None:
    """Write the canonical corpus export to FILE (default stdout)."""
    store = _open_store(store_path)
    try:
        data = store.canonical_export_bytes()
    finally:
        store.close()
    if file:
        Path(file).write_bytes(data)
        _emit(as_json, {"written": file, "bytes": len(data)}, f"wrote {file} ({len(data)} bytes)")
    else:
        sys.stdout.write(data.decode("utf-8"))


@main.command()
@click.argument("text", required=False)
@click.option("--file", "file_path", type=click.Path(exists=True),
              help="Lint each line of this file instead of a single TEXT.")
@json_flag
def lint(text: str | None, file_path: str | None, as_json: bool) -> None:
    """Lint statement texts; exit 1 if any has errors (warnings pass)."""
    if (text is None) == (file_path is None):
        click.echo("error: provide TEXT or --file", err=True)
        raise SystemExit(EXIT_FAILURE)
    if file_path is not None:
        lines = [
            line for line in Path(file_path).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
    else:
        lines = [text or ""]

    failed = 0
    reports = []
    for line in lines:
        report = lint_statement_text(line)
        reports.append({"text": line, **report.to_dict()})
        if not report.ok:
            failed += 1
        if not as_json:
            status = "ok" if report.ok else "ERROR"
            click.echo(f"[{status}] {line}")
            for error in report.errors:
                click.echo(f"  error: {error.value}")
            for warning in report.warnings:
                click.echo(
                    f"  warning: {warning.kind} {warning.token!r} at {warning.position}"
                )
    if as_json:
        click.echo(json.dumps({"reports": reports, "failed": failed}, sort_keys=True))
    raise SystemExit(EXIT_FAILURE if failed else 0)


@main.command()
@click.argument("action", type=click.Choice(["approve", "demote"]))
@click.argument("statement_id", type=int)
@click.option("--store", "store_path", required=True, type=click.Path())
@json_flag
def mod(action: str, statement_id: int, store_path: str, as_json: bool) -> None:
    """Offline moderation as the operator (bypasses the moderator check)."""
    store = _open_store(store_path)
    try:
        op = store.approve if action == "approve" else store.demote
        statement = op(None, statement_id)
        _emit(
            as_json,
            {"statement": statement.id, "status": statement.status.value},
            f"statement {statement.id} is now {statement.status.value}",
        )
    except SocleError as exc:
        click.echo(f"error: {exc.detail}", err=True)
        raise SystemExit(EXIT_FAILURE) from None
    finally:
        store.close()


@main.command()
@click.argument("action", type=click.Choice(["make-moderator"]))
@click.argument("username")
@click.option("--store", "store_path", required=True, type=click.Path())
@json_flag
def user(action: str, username: str, store_path: str, as_json: bool) -> None:
    """User administration."""
    store = _open_store(store_path)
    try:
        account = store.make_moderator(username)
        _emit(
            as_json,
            {"user": account.username, "is_moderator": account.is_moderator},
            f"{account.username} is now a moderator",
        )
    except SocleError as exc:
        click.echo(f"error: {exc.detail}", err=True)
        raise SystemExit(EXIT_FAILURE) from None
    finally:
        store.close()


@main.command()
@click.option("--store", "store_path", type=click.Path(), default=None,
              help="Import the seed corpus into this store (created if missing).")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Write the seed corpus to this file instead.")
@click.option("--smoking-only", is_flag=True,
              help="Seed only the worked smoking-ban dialog.")
@json_flag
def seed(store_path: str | None, out_path: str | None, smoking_only: bool, as_json: bool) -> None:
    """Produce the bundled seed corpus (worked dialog plus synthetic graph)."""
    if (store_path is None) == (out_path is None):
        click.echo("error: provide exactly one of --store or --out", err=True)
        raise SystemExit(EXIT_FAILURE)
    corpus = smoking_corpus() if smoking_only else build_seed_corpus()
    if out_path is not None:
        Path(out_path).write_text(
            json.dumps(corpus, sort_keys=True, ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
        _emit(as_json, {"written": out_path}, f"wrote {out_path}")
        return
    store = _open_store(store_path, create=True)
    try:
        summary = store.import_corpus(corpus)
    except SocleError as exc:
        click.echo(f"seed failed: {exc.detail}", err=True)
        raise SystemExit(EXIT_FAILURE) from None
    finally:
        store.close()
    _emit(
        as_json,
        summary,
        f"seeded {summary['statements']} statements, {summary['edges']} edges, "
        f"{summary['users']} users",
    )


if __name__ == "__main__":
    main()
