"""CSV emission of benchmark records and the plain-text benchmark config file."""

import csv
import io
from collections.abc import Iterable
from pathlib import Path

import environ

from core.applications.bench.schemas import BenchRecord

CSV_FIELDS = ["method", "n", "m", "N_m", "N_n", "rms", "wall_seconds", "values_per_second"]
TIMING_FIELDS = {"wall_seconds", "values_per_second"}


def csv_text(records: Iterable[BenchRecord], fields: list[str] | None = None) -> str:
    """Header plus one newline-terminated row per record.

    Floats are written with ``repr`` so re-parsing gives identical values.
    """
    columns = fields or CSV_FIELDS
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        row = record.model_dump()
        writer.writerow([row[column].value if column == "method" else row[column] for column in columns])
    return buffer.getvalue()


def emit_csv(records: Iterable[BenchRecord], path: Path | str) -> None:
    Path(path).write_text(csv_text(records), encoding="utf-8")


def read_csv(path: Path | str) -> list[BenchRecord]:
    with Path(path).open(encoding="utf-8", newline="") as handle:
        return [BenchRecord(**row) for row in csv.DictReader(handle)]


def isolated_env() -> environ.Env:
    """``environ.Env`` whose reads and ``read_env`` writes never touch ``os.environ``."""
    isolated = type("BenchFileEnv", (environ.Env,), {"ENVIRON": {}})
    return isolated()


def read_bench_file(path: Path | str) -> dict:
    """Parse a ``KEY=value`` benchmark file into ``BenchConfig`` keyword arguments.

    Recognised keys are ``METHOD``, ``MODEL``, ``ALPHA``, ``N_LIST`` (comma
    separated), ``M`` (or ``SETS``), ``SEED`` and ``OUTPUT``; absent keys are
    left out of the result.

    Raises:
        FileNotFoundError: ``path`` does not exist.
    """
    file_path = Path(path)
    if not file_path.is_file():
        msg = f"benchmark config file not found: {file_path}"
        raise FileNotFoundError(msg)
    env = isolated_env()
    env.read_env(str(file_path), overwrite=True)
    values = env.ENVIRON

    config: dict = {}
    if "METHOD" in values:
        config["method"] = env.str("METHOD").lower()
    if "MODEL" in values:
        config["model"] = env.str("MODEL").lower()
    if "ALPHA" in values:
        config["alpha"] = env.float("ALPHA")
    if "N_LIST" in values:
        config["n_list"] = env.list("N_LIST", cast=int)
    for key in ("M", "SETS"):
        if key in values:
            config["sets"] = env.int(key)
    if "SEED" in values:
        config["master_seed"] = env.int("SEED")
    if "OUTPUT" in values:
        config["output"] = Path(env.str("OUTPUT"))
    return config


def emit_rows(rows: list[dict], path: Path | str) -> None:
    """Diagnostic rows as CSV; the columns are the keys of the first row."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        if not rows:
            return
        writer = csv.DictWriter(handle, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
