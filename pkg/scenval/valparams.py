# ValParams is a class to store all of the run parameters of scenval.
# The init function receives a User Option Dictionary (uod) which can
# override default values.
# Option keys in the input dictionary are interpreted case-insensitively.
# The enumerated string types are translated to all upper-case within the parameter object.
import logging

from .exceptions import InputError
from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")


# Class for enumerated string options.
def string_option(storage_name):
    def string_option_getter(instance):
        return instance.__dict__[storage_name]

    def string_option_setter(instance, value):
        if str(value).upper() in allowedStringOptions[storage_name]:
            instance.__dict__[storage_name] = str(value).upper()
        else:
            raise InputError(
                f"Invalid value {value} for {storage_name}; expected one of {allowedStringOptions[storage_name]}"
            )

    return property(string_option_getter, string_option_setter)


DENSITIES = ("NORMAL", "EXPONENTIAL", "STUDENT_T", "CAUCHY", "PARETO")

# The keys on the left here should be lower-case, as should the storage name of the property.
allowedStringOptions = {
    "mode": ("EXACT", "ASYMPTOTIC"),
    "boundary": ("OPEN", "CLOSED"),
    "nn_method": ("AUTO", "BRUTE", "KDTREE"),
    "format": ("JSON", "CSV", "MSGPACK"),
    "density": DENSITIES,
    "generator": ("JITTER", "MEMORIZER", "BREAKER", "TRUE"),
}

# command line flag of every option that can appear in a reproduce line
_FLAGS = {
    "k": "--k",
    "rho": "--rho",
    "mode": "--mode",
    "boundary": "--boundary",
    "nn_method": "--nn-method",
    "profile_bins": "--bins",
    "reps": "--reps",
    "seed": "--seed",
    "d": "--d",
    "table1_m": "--m",
    "nnc_m": "--m",
    "density": "--density",
    "generated_density": "--generated-density",
    "harness_m": "--harness-m",
    "noise": "--noise",
    "generator": "--schedule",
    "steps": "--steps",
    "sigma_max": "--sigma-max",
    "sigma_min": "--sigma-min",
    "harness_reps": "--harness-reps",
    "smax": "--smax",
    "rhos": "--rhos",
    "dims": "--dims",
    "densities": "--densities",
    "format": "--format",
}

# options that determine the output of each subcommand (threads, output path and logging do not)
COMMAND_OPTIONS = {
    "validate": ("k", "rho", "mode", "boundary", "profile_bins", "format"),
    "table1": ("reps", "seed", "table1_m", "boundary", "format"),
    "nnc-convergence": ("density", "generated_density", "d", "k", "nnc_m", "reps", "seed", "mode", "format"),
    "harness": (
        "harness_m", "noise", "generator", "steps", "sigma_max", "sigma_min", "harness_reps", "k", "rho", "mode",
        "boundary", "seed", "format",
    ),
    "q-check": ("smax", "rhos", "dims", "densities", "format"),
}


class ValParams(object):
    # define properties
    mode = string_option("mode")
    boundary = string_option("boundary")
    nn_method = string_option("nn_method")
    format = string_option("format")
    density = string_option("density")
    generator = string_option("generator")

    def __str__(self):
        s = "\n\t\t -- Run Parameters --\n"
        for attr in dir(self):
            if not hasattr(getattr(self, attr), "__self__"):  # omit bound methods
                if "__" not in attr:  # omit these methods
                    s += "\t%-30s = %15s\n" % (attr, getattr(self, attr))
        s += "\n"
        return s

    def __init__(self, uod):
        uod = {str(key).lower(): val for key, val in uod.items()}

        # SUBSECTION Statistics
        # Neighbour depth for nearest neighbour coincidence
        self.k = uod.get("k", 3)
        # Neighbourhood fraction of the memorizing ratio, in (0, 1]
        self.rho = uod.get("rho", 0.5)
        # Centre of T1, T2: EXACT (m-1)/(2m-1) or ASYMPTOTIC 1/2
        self.mode = uod.get("mode", "EXACT")
        # OPEN flags cross < rho R, CLOSED flags cross <= rho R
        self.boundary = uod.get("boundary", "OPEN")
        # Nearest neighbour search. All choices give identical results.
        self.nn_method = uod.get("nn_method", "AUTO")
        # Histogram bins of the generated-to-empirical distance profile
        self.profile_bins = uod.get("profile_bins", 20)

        # SUBSECTION Monte-Carlo
        self.density = uod.get("density", "NORMAL")
        # Law of the generated sets when it differs from density (separation runs)
        self.generated_density = uod.get("generated_density", None)
        if self.generated_density is not None:
            self.generated_density = str(self.generated_density).upper()
        self.reps = uod.get("reps", 100)
        # Root seed; None selects a random one that is echoed in every output
        self.seed = uod.get("seed", None)
        self.d = uod.get("d", 2)
        self.table1_m = list(uod.get("table1_m", [500, 5000]))
        self.nnc_m = list(uod.get("nnc_m", [100, 1000, 5000]))
        # Worker threads; results do not depend on it
        self.threads = uod.get("threads", 1)

        # SUBSECTION Harness
        # Size of the default training set (points near y = x)
        self.harness_m = uod.get("harness_m", 500)
        self.noise = uod.get("noise", 0.1)
        # Preset schedule
        self.generator = uod.get("generator", "JITTER")
        self.steps = uod.get("steps", 10)
        self.sigma_max = uod.get("sigma_max", 1.0)
        # None uses the median nearest neighbour distance of the training set
        self.sigma_min = uod.get("sigma_min", None)
        # Repetitions per harness step
        self.harness_reps = uod.get("harness_reps", 5)

        # SUBSECTION Theory oracle
        self.smax = uod.get("smax", 5)
        self.rhos = list(uod.get("rhos", [0.1, 0.3, 0.5, 0.7, 0.9]))
        self.dims = list(uod.get("dims", [1, 2]))
        self.densities = [str(x).upper() for x in uod.get("densities", DENSITIES)]

        # SUBSECTION Output
        self.format = uod.get("format", "JSON")

    def validate(self):
        """Check every option against the constraints of the modules it is passed to

        Raises
        ------
        InputError

        """

        def positive_int(name, minimum=1):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < minimum:
                raise InputError(f"{name} must be an integer >= {minimum}, got {value}")

        def in_rho_range(name, value):
            if not (isinstance(value, (int, float)) and 0.0 < value <= 1.0):
                raise InputError(f"{name} must lie in (0, 1], got {value}")

        positive_int("k")
        in_rho_range("rho", self.rho)
        positive_int("profile_bins")
        positive_int("reps")
        positive_int("threads")
        positive_int("d")
        positive_int("harness_m", 2)
        positive_int("harness_reps")
        positive_int("smax", 0)
        # steps = 0 is reported by the harness as an empty schedule
        positive_int("steps", 0)

        if self.seed is not None and not (int(self.seed) == self.seed and 0 <= self.seed < 2 ** 64):
            raise InputError(f"seed must be an integer in [0, 2**64), got {self.seed}")
        if self.generated_density is not None and self.generated_density not in DENSITIES:
            raise InputError(f"generated_density must be one of {DENSITIES}, got {self.generated_density}")
        for name in ("table1_m", "nnc_m"):
            values = getattr(self, name)
            if not values or any(int(m) != m or m < 2 for m in values):
                raise InputError(f"{name} must be a nonempty list of sample sizes >= 2, got {values}")
        for rho in self.rhos:
            in_rho_range("rhos", rho)
        for d in self.dims:
            if int(d) != d or d < 1:
                raise InputError(f"dims must hold positive integers, got {self.dims}")
        for density in self.densities:
            if density not in DENSITIES:
                raise InputError(f"Unknown density {density}; expected one of {DENSITIES}")
        if not self.noise > 0.0:
            raise InputError(f"noise must be positive, got {self.noise}")
        if not self.sigma_max > 0.0:
            raise InputError(f"sigma_max must be positive, got {self.sigma_max}")
        if self.sigma_min is not None and not 0.0 < self.sigma_min <= self.sigma_max:
            raise InputError(f"sigma_min must lie in (0, sigma_max], got {self.sigma_min}")

        logger.debug(str(self))
        return self

    def reproduce(self, command, positional=()):
        """Command line that regenerates the output of ``command`` with these parameters"""
        parts = ["scenval", command]
        parts += [str(p) for p in positional]
        for name in COMMAND_OPTIONS[command]:
            value = getattr(self, name)
            if value is None:
                continue
            if isinstance(value, (list, tuple)):
                rendered = " ".join(_render(v) for v in value)
            else:
                rendered = _render(value)
            parts.append(f"{_FLAGS[name]} {rendered}")
        return " ".join(parts)


def _render(value):
    if isinstance(value, str):
        return value.lower()
    return f"{value!r}" if isinstance(value, float) else str(value)
