"""Exhaustive and randomized verification sweeps."""

from .generators import (
    at_bound_instance,
    enumerate_graphs,
    graphs_from_file,
    random_graph,
    random_linking_instance,
)
from .properties import PROPERTIES, Case, Property, Violation, get_property
from .sweep import (
    Exhaustive,
    FromFile,
    Random,
    SweepReport,
    SweepSpec,
    read_report,
    run_sweep,
)
from .tightness import TightnessReport, tightness_search

__all__ = [
    "PROPERTIES",
    "Case",
    "Exhaustive",
    "FromFile",
    "Property",
    "Random",
    "SweepReport",
    "SweepSpec",
    "TightnessReport",
    "Violation",
    "at_bound_instance",
    "enumerate_graphs",
    "get_property",
    "graphs_from_file",
    "random_graph",
    "random_linking_instance",
    "read_report",
    "run_sweep",
    "tightness_search",
]
