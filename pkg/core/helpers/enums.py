from django.db.models import TextChoices


class SchemeKind(TextChoices):
    EULER = ("euler", "Euler")
    TRAPEZOIDAL = ("trapezoidal", "Trapezoidal")


class TestFunctionKind(TextChoices):
    __test__ = False

    F_ALPHA = ("f_alpha", "Distance to unit circle")
    G_ALPHA = ("g_alpha", "Distance to unit circle plus abscissa")
    EURO_CALL = ("euro_call", "European call")
    EURO_PUT = ("euro_put", "European put")
    IDENTITY = ("identity", "First coordinate")
    SIGMOID = ("sigmoid", "Smooth digital")


class AsianPayoffKind(TextChoices):
    FIXED_CALL = ("fixed_call", "Fixed strike call")
    FIXED_PUT = ("fixed_put", "Fixed strike put")
    FLOATING_CALL = ("floating_call", "Floating strike")


class MethodKind(TextChoices):
    MC = ("mc", "Crude Monte Carlo")
    SR = ("sr", "Statistical Romberg")


class ModelKind(TextChoices):
    CIRCLE = ("circle", "Circle diffusion")
    GBM = ("gbm", "Geometric Brownian motion")
    ASIAN = ("asian", "Asian option on GBM")


class StreamTerm(TextChoices):
    """First-level stream labels; each estimator term draws from its own branch."""

    COARSE = ("coarse", "Independent coarse samples")
    COUPLED = ("coupled", "Coupled fine/coarse corrections")
    CRUDE = ("crude", "Crude Monte Carlo samples")
    EXTRA = ("extra", "Auxiliary noise")

    @property
    def index(self) -> int:
        return list(type(self)).index(self)
