"""rotorlab: exact link-polynomial engines and rotor calculus.

The package is organized bottom-up:

- ``rotorlab.poly``: exact multivariate Laurent polynomials over Z.
- ``rotorlab.diagram``: PD-coded link diagrams and tangles — validation,
  orientation, smoothing, Reidemeister moves, canonical keys, text and
  JSON formats.
- ``rotorlab.invariants``: bracket, Jones, HOMFLY, Kauffman Lambda/F, Q,
  and Conway polynomials, with an independent state-sum oracle and a
  persistent result cache.
- ``rotorlab.rotor``: rotors, stators, rotants, and satellite/cabling
  constructions.
- ``rotorlab.lab``: seeded verification experiments over random families,
  with reproducible machine-readable reports.

Everything exported by those modules is re-exported here.
"""

__version__ = "0.1.0"

from . import diagram as _diagram
from . import invariants as _invariants
from . import lab as _lab
from . import poly as _poly
from . import rotor as _rotor

from .poly import *  # noqa: F401,F403
from .diagram import *  # noqa: F401,F403
from .invariants import *  # noqa: F401,F403
from .rotor import *  # noqa: F401,F403
from .lab import *  # noqa: F401,F403

__all__ = (["__version__"] + _poly.__all__ + _diagram.__all__
           + _invariants.__all__ + _rotor.__all__ + _lab.__all__)
