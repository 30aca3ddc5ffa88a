"""Executable domain theory on finite and symbolically infinite instances."""

from .errors import DomainError
from .infosys import InfoSystem, enumerate_elements, from_poset, powerset_system, saturate
from .mappings import ApproxMapping, FunctionSpace, compose, from_function, saturate_mapping
from .fixpoints import FinitaryInfoSystem, classify, fixed_points
from .metrics import build_structure, distance
from .posets import Poset
from .valuations import WeightAssignment, weight_valuation

__version__ = "0.1.0"

__all__ = ["DomainError", "InfoSystem", "enumerate_elements", "from_poset", "powerset_system",
           "saturate", "ApproxMapping", "FunctionSpace", "compose", "from_function",
           "saturate_mapping", "FinitaryInfoSystem", "classify", "fixed_points",
           "build_structure", "distance", "Poset", "WeightAssignment", "weight_valuation"]
