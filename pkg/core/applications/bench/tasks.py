from celery import shared_task

from .harness import run_benchmark
from .schemas import BenchConfig


@shared_task()
def run_benchmark_task(config: dict) -> list[dict]:
    """Run a benchmark in a worker; records come back as plain dicts."""
    records = run_benchmark(BenchConfig(**config))
    return [record.dict_plain() for record in records]
