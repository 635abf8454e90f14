import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from dotenv import load_dotenv

load_dotenv(override=False)  # Load .env file, real environment wins


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        print(f"[Config] ⚠️ {name}={raw!r} is not an integer, using {default}", file=sys.stderr)
        return default


BUDGET_SUBSETS = _env_int("VTBOUND_BUDGET_SUBSETS", 24)
BUDGET_AUT = _env_int("VTBOUND_BUDGET_AUT", 16)
BUDGET_GROUP = _env_int("VTBOUND_BUDGET_GROUP", 5040)
AUT_ORDER_CAP = _env_int("VTBOUND_AUT_ORDER_CAP", 100000)
WORKERS = _env_int("VTBOUND_WORKERS", 1)
VERBOSE = _env_int("VTBOUND_VERBOSE", 0) > 0

# Numerical tolerances
JACOBI_TOL = 1e-12       # off-diagonal Frobenius norm at convergence
MAX_SWEEPS = 100
RESIDUAL_TOL = 1e-9      # eigenpair certificate
CLUSTER_TOL = 1e-7       # multiplicity reporting only
EIGEN_ONE_TOL = 1e-9
UPPER_SLACK = 1e-12
SANDWICH_SLACK = 1e-9

# Operation names used in reports and error messages
SUBCOMMAND_LABELS = {
    "gen": "generate graph",
    "spectrum": "normalized spectrum",
    "cheeger": "expansion profile",
    "aut": "automorphism group",
    "bvn": "permutation cover",
    "verify": "bound verification",
    "corpus": "corpus verification",
}


@dataclass(frozen=True)
class Budgets:
    subsets: int = BUDGET_SUBSETS
    aut: int = BUDGET_AUT
    group: int = BUDGET_GROUP
    aut_order: int = AUT_ORDER_CAP

    def validate(self) -> "Budgets":
        for name in ("subsets", "aut", "group", "aut_order"):
            if getattr(self, name) <= 0:
                raise ValueError(f"budget '{name}' must be positive, got {getattr(self, name)}")
        return self


def debug_print(tag: str, message: str):
    """Tagged diagnostic line on stderr; stdout stays reserved for reports."""
    if VERBOSE:
        print(f"[{tag}] {message}", file=sys.stderr)


def format_real(value: Optional[float]) -> Optional[str]:
    """Render a real with 15 significant digits (stable across runs)."""
    if value is None:
        return None
    return f"{float(value):.15g}"


def round_real(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    return float(format_real(value))


def fraction_str(value: Optional[Union[Fraction, int]]) -> Optional[str]:
    """Exact 'p/q' rendering; integers keep the '/1' denominator."""
    if value is None:
        return None
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
