"""Exact enumeration of the flats spanned by finite point sets in P^d(Q)."""

from __future__ import annotations

__version__ = "0.1.0"

from .config import Config, project_config
from .constructions import (
    RaiseSpec,
    gen_crosspolytope_base,
    gen_crosspolytope_construction,
    gen_cube,
    gen_hypercube_construction,
    gen_skew_lines,
    generic_origin,
    raise_dimension,
)
from .enumeration import FVector, SpannedFlats, enumerate_spanned, f_vector, weighted_sum
from .errors import FlatspanError
from .essential import CoverWitness, GVector, check_G_minimality, essential_dimension, g_vector
from .geometry import Flat, Point, join, meet, project, span
from .io import dumps, load_config, loads, save_config
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "Config",
    "CoverWitness",
    "FVector",
    "Flat",
    "FlatspanError",
    "GVector",
    "Point",
    "RaiseSpec",
    "SpannedFlats",
    "check_G_minimality",
    "dumps",
    "enumerate_spanned",
    "essential_dimension",
    "f_vector",
    "g_vector",
    "gen_crosspolytope_base",
    "gen_crosspolytope_construction",
    "gen_cube",
    "gen_hypercube_construction",
    "gen_skew_lines",
    "generic_origin",
    "join",
    "load_config",
    "loads",
    "meet",
    "project",
    "project_config",
    "raise_dimension",
    "save_config",
    "span",
    "weighted_sum",
]
