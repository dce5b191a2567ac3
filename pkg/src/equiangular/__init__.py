"""Exact tools for Seidel matrices, switching classes and equiangular line systems."""
from __future__ import annotations

from .core import (
    Graph,
    LineSystemParams,
    SeidelMatrix,
    SwitchingVector,
    build_fixture_S10,
    build_S6,
    build_Sk_family,
    euler_switch,
    graph_from_seidel,
    line_params,
    seidel_from_graph,
    switch,
)
from .errors import BudgetExceeded, NotApplicable, NotPSDError, ParseError, PreconditionError, SeidelError
from .spectra import IntEig, Spectrum, SurdPair, char_poly, is_psd, spectrum

__version__ = "0.1.0"
