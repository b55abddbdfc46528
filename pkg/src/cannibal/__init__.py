"""Exact verification of cannibalistic classes in height-two Morava E-theory.

The subpackages model W(F4), the Lubin-Tate ring E0 = W[[u1]], truncated
power series and formal group laws, the supersingular curve y^2 + y = x^3
over F4 with its automorphisms, explicit stabilizer group data, 2-adic
binomial series, an exponent lattice for the Weil-type pairing and
q-expansions of the Weierstrass Phi-function.
"""

from .checks import REGISTRY, CheckReport, Config, run_checks
from .errors import CannibalError

__all__ = ["CannibalError", "CheckReport", "Config", "REGISTRY", "run_checks"]
__version__ = "0.1.0"
