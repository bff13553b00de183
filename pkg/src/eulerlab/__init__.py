"""Exact parametrized Euler classes of circle-valued cocycles over finite models."""
from .circle_maps import (CircleMap, Lift, MonotoneDegreeOneMap, PLLift, Report,
                          canonicalize, compose_lifts, eval_lift, invert_lift,
                          pointwise_max, verify_lift)
from .cochains import (Cochain, HomogeneousCochain, Ring, coboundary, euler_pullback,
                       homogeneous_coboundary, homogenize, inhomogenize, pullback,
                       representation_pullback, sup_norm)
from .cocycles import (EquivariantFamily, LiftedCocycle, MeasurableCocycle,
                       SemicohomologyWitness, build_cocycle, check_equivariant_family,
                       check_lifted_family, classify_witness, conjugate, constant_witness,
                       from_representation, from_table, rot_from_function, trivial_cocycle,
                       verify_cocycle, verify_lifted, verify_semicohomology,
                       witness_from_family)
from .errors import *  # noqa: F401,F403
from .euler_analysis import (Equal, FiniteSetFamily, MeasureFamily, NotEqual, Obstruction,
                             PrimitiveCertificate, decide_ball_vanishing,
                             decide_class_equality, elementary_reduction, family_from_lift,
                             lift_from_family, lift_from_primitive, primitive_from_family,
                             primitive_from_lift, rotation_reduction, semicohomology_witness,
                             solve_primitive, verify_obstruction, verify_primitive)
from .euler_cocycle import euler_coboundary_check, euler_value
from .group_space import FiniteGroup, FreeBall, GammaSpace, free_ball, verify_group, verify_space

__version__ = "0.1.0"
