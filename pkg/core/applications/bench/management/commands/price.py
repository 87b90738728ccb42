from core.applications.asian.estimators import mc_asian_estimate
from core.applications.asian.estimators import sr_asian_estimate
from core.applications.asian.schemas import AsianPayoff
from core.applications.diffusions.functions import TestFunction
from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.schemas import GbmParams
from core.applications.diffusions.sde import circle_model
from core.applications.diffusions.sde import gbm_model
from core.applications.estimators.monte_carlo import mc_estimate
from core.applications.estimators.monte_carlo import sr_estimate
from core.applications.estimators.oracles import black_scholes_price
from core.applications.estimators.oracles import circle_expectation
from core.applications.estimators.oracles import lognormal_expectation
from core.applications.estimators.parameters import optimal_params
from core.applications.sampling.streams import RngStream
from core.helpers.custom_exceptions import InvalidParameterError
from core.helpers.custom_exceptions import OracleUnavailableError
from core.helpers.enums import AsianPayoffKind
from core.helpers.enums import MethodKind
from core.helpers.enums import ModelKind
from core.helpers.enums import SchemeKind
from core.helpers.enums import TestFunctionKind
from core.helpers.utils import round_half_up

from ._base import RombergCommand

CIRCLE_FUNCTIONS = [TestFunctionKind.G_ALPHA, TestFunctionKind.F_ALPHA]
GBM_FUNCTIONS = [
    TestFunctionKind.EURO_CALL,
    TestFunctionKind.EURO_PUT,
    TestFunctionKind.SIGMOID,
    TestFunctionKind.IDENTITY,
]


class Command(RombergCommand):
    """Price one payoff with crude Monte Carlo or the statistical Romberg estimator."""

    help = "Print an estimate and its standard error for one model, payoff and method"

    def add_arguments(self, parser):
        parser.add_argument("--model", choices=ModelKind.values, default=ModelKind.GBM)
        parser.add_argument("--method", choices=MethodKind.values, default=MethodKind.SR)
        parser.add_argument("--n", type=int, required=True, help="Fine step count.")
        parser.add_argument("--alpha", type=float, default=1.0)
        parser.add_argument(
            "--samples",
            type=int,
            default=None,
            help="Crude Monte Carlo sample count; defaults to n^(2 alpha).",
        )
        parser.add_argument(
            "--payoff",
            default=None,
            choices=[*TestFunctionKind.values, *AsianPayoffKind.values],
            help="Test function (circle, gbm) or Asian payoff kind.",
        )
        parser.add_argument("--strike", type=float, default=100.0)
        parser.add_argument("--s0", type=float, default=100.0)
        parser.add_argument("--r", type=float, default=0.05)
        parser.add_argument("--sigma", type=float, default=0.2)
        parser.add_argument("--horizon", type=float, default=1.0)
        parser.add_argument("--theta", type=float, default=0.0, help="Circle starting angle.")
        parser.add_argument("--oracle", action="store_true", help="Also print the reference value.")
        self.add_seed_argument(parser)

    def run(self, **options):
        model = ModelKind(options["model"])
        method = MethodKind(options["method"])
        n, alpha = options["n"], options["alpha"]
        stream = RngStream(self.seed(options))
        engine_options = {"workers": options["workers"]}
        samples = options["samples"] or max(2, round_half_up(n ** (2 * alpha)))

        if model == ModelKind.ASIAN:
            if options["oracle"]:
                msg = "no oracle is available for Asian payoffs; run the bench command instead"
                raise OracleUnavailableError(msg)
            p = self.gbm_params(options)
            payoff = AsianPayoff(kind=options["payoff"] or AsianPayoffKind.FIXED_CALL, strike=options["strike"])
            if method == MethodKind.SR:
                params = optimal_params(1.0, n, SchemeKind.TRAPEZOIDAL)
                result = sr_asian_estimate(p, payoff, params, stream, **engine_options)
            else:
                result = mc_asian_estimate(p, payoff, n, samples, stream, **engine_options)
            oracle = None
        elif model == ModelKind.CIRCLE:
            p = CircleParams(theta0=options["theta"], horizon=options["horizon"])
            f = TestFunction(kind=self.function_kind(options, CIRCLE_FUNCTIONS), alpha=alpha)
            result = self.estimate(circle_model(p), f, method, n, alpha, samples, stream, engine_options)
            oracle = (lambda: circle_expectation(p, f)) if options["oracle"] else None
        else:
            p = self.gbm_params(options)
            f = TestFunction(
                kind=self.function_kind(options, GBM_FUNCTIONS),
                alpha=alpha,
                strike=options["strike"],
                discount=p.discount,
            )
            result = self.estimate(gbm_model(p), f, method, n, alpha, samples, stream, engine_options)
            oracle = (lambda: self.gbm_oracle(p, f)) if options["oracle"] else None

        self.stdout.write(f"{result.value:.6f} ± {result.std_err:.6f}")
        self.stdout.write(
            f"model={model} method={method} n={n} N_m={result.coarse_samples} "
            f"N_n={result.correction_samples} seed={result.seed} wall={result.wall_seconds:.3f}s",
        )
        if oracle is not None:
            self.stdout.write(f"oracle={oracle():.6f}")

    def gbm_params(self, options) -> GbmParams:
        return GbmParams(s0=options["s0"], r=options["r"], sigma=options["sigma"], horizon=options["horizon"])

    def function_kind(self, options, allowed: list[TestFunctionKind]) -> TestFunctionKind:
        if options["payoff"] is None:
            return allowed[0]
        kind = options["payoff"]
        if kind not in allowed:
            msg = f"payoff {kind} does not apply to this model"
            raise InvalidParameterError(msg, {"allowed": [str(item) for item in allowed]})
        return TestFunctionKind(kind)

    def estimate(self, model, f, method, n, alpha, samples, stream, engine_options):
        if method == MethodKind.SR:
            return sr_estimate(model, f, optimal_params(alpha, n), stream, **engine_options)
        return mc_estimate(model, f, n, samples, stream, **engine_options)

    def gbm_oracle(self, p: GbmParams, f: TestFunction) -> float:
        match f.kind:
            case TestFunctionKind.EURO_CALL:
                return black_scholes_price(p, f.strike)
            case TestFunctionKind.EURO_PUT:
                return black_scholes_price(p, f.strike, call=False)
            case _:
                return lognormal_expectation(p, f)
