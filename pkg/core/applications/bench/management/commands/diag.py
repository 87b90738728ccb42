import numpy as np

from core.applications.asian.expansion import chi_variance
from core.applications.asian.expansion import simulate_chi
from core.applications.asian.expansion import trapezoid_bias
from core.applications.asian.expansion import weak_error_limit
from core.applications.asian.schemas import AsianPayoff
from core.applications.asian.trapezoid import trapezoid_strong_error
from core.applications.bench.reports import emit_rows
from core.applications.diagnostics.bias import bias_rate_limit
from core.applications.diagnostics.bias import euler_strong_error
from core.applications.diagnostics.bias import sqrt_n_bias_check
from core.applications.diagnostics.normality import clt_normality_check
from core.applications.diagnostics.rates import rate_fit
from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.schemas import GbmParams
from core.applications.diffusions.sde import circle_model
from core.applications.diffusions.sde import gbm_model
from core.applications.estimators.monte_carlo import control_variate_variance
from core.applications.estimators.monte_carlo import sr_estimate
from core.applications.estimators.oracles import circle_bias_limit
from core.applications.estimators.parameters import optimal_beta
from core.applications.estimators.parameters import optimal_params
from core.applications.sampling.grids import TimeGrid
from core.applications.sampling.streams import RngStream
from core.helpers.enums import SchemeKind
from core.helpers.enums import TestFunctionKind

from ._base import RombergCommand
from ._base import int_list

CHECKS = [
    "bias-limit",
    "sqrt-n-bias",
    "euler-strong",
    "control-variate",
    "trapezoid-strong",
    "chi",
    "weak-error",
    "clt",
    "complexity",
]


class Command(RombergCommand):
    help = "Run one convergence diagnostic and print a report"

    def add_arguments(self, parser):
        parser.add_argument("check", choices=CHECKS)
        parser.add_argument("--alpha", type=float, default=1.0)
        parser.add_argument("--t", type=float, default=1.0, help="Time for the circle bias limit.")
        parser.add_argument("--n", type=int, default=256, help="Fine step count where a single n is used.")
        parser.add_argument("--n-list", type=int_list, default=[16, 32, 64, 128], help="Comma-separated.")
        parser.add_argument("--samples", type=int, default=10_000)
        parser.add_argument("--repeats", type=int, default=500)
        parser.add_argument("--s0", type=float, default=100.0)
        parser.add_argument("--r", type=float, default=0.05)
        parser.add_argument("--sigma", type=float, default=0.2)
        parser.add_argument("--horizon", type=float, default=1.0)
        parser.add_argument("--strike", type=float, default=100.0)
        parser.add_argument("--output", default=None, help="CSV path for the data points.")
        self.add_seed_argument(parser)

    def run(self, **options):
        self.options = options
        self.stream = RngStream(self.seed(options))
        self.engine_options = {"workers": options["workers"]}
        check = options["check"].replace("-", "_")
        lines, rows = getattr(self, f"check_{check}")()
        for line in lines:
            self.stdout.write(line)
        if options["output"]:
            emit_rows(rows, options["output"])

    @property
    def gbm(self) -> GbmParams:
        o = self.options
        return GbmParams(s0=o["s0"], r=o["r"], sigma=o["sigma"], horizon=o["horizon"])

    def call(self, p: GbmParams) -> TestFunction:
        return TestFunction(kind=TestFunctionKind.EURO_CALL, strike=self.options["strike"], discount=p.discount)

    def fit_lines(self, points, expected):
        fit = rate_fit(points, expected)
        return [f"slope={fit.slope:.4f} (expected {expected}) intercept={fit.intercept:.4f} r2={fit.r_squared:.4f}"]

    def check_bias_limit(self):
        o = self.options
        points = bias_rate_limit(o["alpha"], o["t"], o["n_list"], o["samples"], self.stream, **self.engine_options)
        limit = circle_bias_limit(o["alpha"], o["t"])
        lines = [f"n={p.n} n^alpha*bias={p.value:.5f} ± {p.std_err:.5f}" for p in points]
        lines.append(f"limit={limit:.5f}")
        return lines, [p.dict_plain() for p in points]

    def check_sqrt_n_bias(self):
        o = self.options
        p = self.gbm
        f = TestFunction(kind=TestFunctionKind.SIGMOID, strike=o["strike"], width=10.0, discount=p.discount)
        points = sqrt_n_bias_check(gbm_model(p), f, o["n_list"], o["samples"], self.stream, **self.engine_options)
        lines = [f"n={q.n} sqrt(n)*bias={q.value:.6f} ± {q.std_err:.6f}" for q in points]
        return lines, [q.dict_plain() for q in points]

    def check_euler_strong(self):
        o = self.options
        model = circle_model(CircleParams(horizon=o["horizon"]))
        points = euler_strong_error(model, o["n_list"], o["samples"], self.stream, **self.engine_options)
        lines = [f"n={n} rms={rms:.6f}" for n, rms in points]
        lines += self.fit_lines(points, -0.5)
        return lines, [{"n": n, "rms": rms} for n, rms in points]

    def check_control_variate(self):
        o = self.options
        p = self.gbm
        points = [
            (
                m,
                control_variate_variance(
                    gbm_model(p),
                    self.call(p),
                    o["n"],
                    m,
                    o["samples"],
                    self.stream.split(index),
                    **self.engine_options,
                ),
            )
            for index, m in enumerate(o["n_list"])
        ]
        lines = [f"m={m} var(Q)={variance:.6g}" for m, variance in points]
        lines += self.fit_lines(points, -1.0)
        return lines, [{"m": m, "variance": variance} for m, variance in points]

    def check_trapezoid_strong(self):
        o = self.options
        points = trapezoid_strong_error(self.gbm, o["n_list"], o["samples"], self.stream)
        lines = [f"n={n} rms={rms:.6g}" for n, rms in points]
        lines += self.fit_lines(points, -1.0)
        return lines, [{"n": n, "rms": rms} for n, rms in points]

    def check_chi(self):
        o = self.options
        p = self.gbm
        sample = simulate_chi(p, TimeGrid.uniform(p.horizon, o["n"]), self.stream, o["samples"], **self.engine_options)
        variance = float(np.var(sample.chi_T, ddof=1))
        expected = chi_variance(p)
        correlation = float(np.corrcoef(sample.chi_T, sample.w_T)[0, 1]) if expected > 0 else 0.0
        lines = [
            f"var(chi_T)={variance:.6g} analytic={expected:.6g}",
            f"mean(chi_T)={float(np.mean(sample.chi_T)):.6g} corr(chi_T, W_T)={correlation:.5f}",
        ]
        return lines, [{"variance": variance, "analytic": expected, "correlation": correlation}]

    def check_weak_error(self):
        o = self.options
        p = self.gbm
        payoff = AsianPayoff(strike=o["strike"])
        limit = weak_error_limit(p, payoff, self.stream.split(0), n=o["n"], samples=o["samples"], **self.engine_options)
        lines = [f"E[d2f * chi_T]={limit.value:.5f} ± {limit.std_err:.5f}"]
        rows = [{"n": 0, "value": limit.value, "std_err": limit.std_err}]
        for index, n in enumerate(o["n_list"]):
            bias = trapezoid_bias(p, payoff, n, o["samples"], self.stream.descend(1, index), **self.engine_options)
            agrees = "yes" if bias.agrees_with(limit) else "no"
            lines.append(f"n={n} n*bias={bias.value:.5f} ± {bias.std_err:.5f} agrees={agrees}")
            rows.append({"n": n, "value": bias.value, "std_err": bias.std_err})
        return lines, rows

    def check_clt(self):
        o = self.options
        p = self.gbm
        model, f = gbm_model(p), self.call(p)
        params = optimal_params(o["alpha"], o["n"])

        def estimator(stream):
            return sr_estimate(model, f, params, stream)

        report = clt_normality_check(estimator, o["repeats"], self.stream, workers=o["workers"])
        if report.passed is None:
            lines = ["replications have zero variance; check abstains"]
        else:
            verdict = "pass" if report.passed else "fail"
            lines = [
                f"repeats={report.repeats} skew={report.skewness:.4f} excess_kurtosis={report.excess_kurtosis:.4f}",
                f"thresholds {report.skew_threshold}/{report.kurtosis_threshold}: {verdict}",
            ]
        return lines, [report.dict_plain()]

    def check_complexity(self):
        o = self.options
        euler = optimal_beta(o["alpha"], o["n"], SchemeKind.EULER)
        trapezoid = optimal_beta(1.0, o["n"], SchemeKind.TRAPEZOIDAL)
        lines = [f"euler beta*={euler}", f"trapezoidal beta*={trapezoid}"]
        return lines, [{"scheme": "euler", "beta": euler}, {"scheme": "trapezoidal", "beta": trapezoid}]
