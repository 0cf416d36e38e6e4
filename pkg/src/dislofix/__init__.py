"""Fixed-point checks for set-valued maps on finite dislocated metric spaces."""

from .contraction import (MT, NS, ComparisonFunction, ContractionCertificate, certify,
                          eval_MT, eval_NS)
from .errors import (DislofixError, EmptySubset, InstanceError, InvalidPhi, MalformedTable,
                     MixedSpaces, NoFixedPoint, NotCertified, UnknownPoint)
from .fixed_point import (IterationTrace, check_theorem_conclusions, fixed_point_set, iterate,
                          wellposedness_diagnostic)
from .generate import GenConfig, random_certified_instance, random_space, run_campaign
from .graph import (EDGE, PATH, SetGraph, SetMap, check_edge_preservation, check_property_Pstar,
                    compute_YT, has_path, symmetrize)
from .hausdorff import FiniteSubset, SetFamily, excess, hausdorff, point_to_set, subset
from .instance import Instance, load_instance, loads_instance
from .metric import (DislocatedSpace, PointId, check_axioms, eval_metric, open_ball,
                     sequence_diagnostics)

__version__ = "0.1.0"
