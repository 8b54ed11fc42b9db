"""Exact diagrammatic calculus of polyhedral cones and polyhedra."""

from .exactla import QMatrix, format_rational, mat_mul, parse_rational, rank, solve_linear
from .diagram import (Diagram, Fragment, Gen, Generator, Id, Seq, Sym, Tensor, build_wiring,
                      diagram_of_matrix, opposite, parse_dsl, polar_syntactic, print_dsl,
                      validate)
from .polyhedra import (HPoly, PolyRelation, VRep, compose_rel, contains_point, converse_rel,
                        dual_cone, fm_eliminate_var, h_to_v, includes_hp, interval_of_1d,
                        is_feasible, project, remove_redundancy, tensor_rel, v_to_h)
from .semantics import (axiom_suite, equiv, evaluate, fg_nf, homogenize, includes, is_empty,
                        matrix_of_functional, poly_nf)
from .stateful import (StatefulProcess, Transition, st_compose, st_equiv_perm, st_eval,
                       st_step_set, st_tensor, st_transition)
from .apps import (FlowNetwork, PetriNet, encode_flow, encode_petri, max_flow, petri_can_step,
                   petri_fire, petri_step_via_process)

__version__ = "0.1.0"
