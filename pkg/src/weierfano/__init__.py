"""Symbolic intersection theory for Fano fourfolds built by the Weierstrass construction
over del Pezzo surfaces."""

from .bundle import BundleSpec, bundle_from_json, h0_twisted_dual
from .catalog import builtin_table, export_table, regenerate_and_diff, search_split
from .chowtower import CycleClass, TowerRing, build_tower, integrate, normalize, weierstrass_tower
from .construct import FamilyInput, InvariantReport, full_report
from .errors import DomainError, IntegrityError, MalformedPresentationError
from .surface import DivisorClass, SurfaceModel, minus_one_curves, surface

__version__ = "0.1.0"
