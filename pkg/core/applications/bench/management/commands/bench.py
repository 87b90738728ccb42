from django.conf import settings

from core.applications.bench.harness import run_benchmark
from core.applications.bench.reports import csv_text
from core.applications.bench.reports import emit_csv
from core.applications.bench.reports import read_bench_file
from core.applications.bench.schemas import BenchConfig
from core.helpers.enums import MethodKind
from core.helpers.enums import ModelKind

from ._base import RombergCommand
from ._base import int_list


class Command(RombergCommand):
    help = "Run a speed/RMS benchmark and write the records as CSV"

    def add_arguments(self, parser):
        parser.add_argument("--config", default=None, help="KEY=value file; flags override its values.")
        parser.add_argument("--method", choices=MethodKind.values, default=None)
        parser.add_argument("--model", choices=ModelKind.values, default=None)
        parser.add_argument("--alpha", type=float, default=None)
        parser.add_argument("--n-list", type=int_list, default=None, help="Comma-separated step counts.")
        parser.add_argument("--sets", "-M", type=int, default=None, help="Random parameter sets.")
        parser.add_argument("--output", default=None, help="CSV path; standard output when omitted.")
        self.add_seed_argument(parser)

    def run(self, **options):
        values = read_bench_file(options["config"]) if options["config"] else {}
        overrides = {
            "method": options["method"],
            "model": options["model"],
            "alpha": options["alpha"],
            "n_list": options["n_list"],
            "sets": options["sets"],
            "master_seed": options["seed"],
            "output": options["output"],
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        values.setdefault("master_seed", settings.ROMBERG_DEFAULT_SEED)
        values.setdefault("sets", settings.ROMBERG_BENCH_SETS)
        cfg = BenchConfig(**values)

        records = run_benchmark(cfg, workers=options["workers"])
        if cfg.output is None:
            self.stdout.write(csv_text(records), ending="")
        else:
            emit_csv(records, cfg.output)
            self.stdout.write(self.style.SUCCESS(f"Wrote {len(records)} records to {cfg.output}"))
