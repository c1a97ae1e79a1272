"""minkcheck: executable checkers for the order and incidence axioms of
1+1 spacetime models, with exact rational arithmetic.

The package provides two built-in analytic models (Minkowski and Galilean
lines over rational pairs), a finite-model loader, per-axiom and per-theorem
checkers with three-valued verdicts, chain construction with an independent
brute-force oracle, unreachable-set computations, path segmentation, and a
forward-chaining saturation engine for betweenness facts.
"""

from .core import (Budget, Event, InputError, Model, ModelInconsistencyError,
                   Path, SomeBetwCase, Status, Verdict, betw, betw_nonstrict,
                   betw_set, canonical_triple, ev, is_kinematic_triangle,
                   line_path, path_through, some_betw_case)
from .models import (FiniteModel, Galilean1p1, Minkowski1p1, ModelFormatError,
                     builtin_model, line_intersection, line_through,
                     load_finite_model, resolve_model, substream, timelike)
from .chains import (Chain, brute_force_chain, chain4, chain_ends,
                     chain_from_set, chains_equal_up_to_reversal,
                     check_lemma1, check_lemma2, check_lemma3,
                     check_local_order, check_total_order, classify_chain,
                     distinct_prolong_sequence, index_injective_check,
                     local_total_equiv, prolong, reverse_chain)
from .saturation import (FactBase, fact, factbase, factbase_from_json,
                         factbase_to_json, saturate)
from .unreach import (UnreachSet, UnreachViaSet, i6_chain, i7_chain, joinable,
                      thm4_bound, thm13_check, thm14_beyond, thm14_bounds,
                      thm14_event, unreach_from, unreach_via)
from .regions import (Segmentation, in_interval, in_prolongation, in_segment,
                      segment_count, segmentation, thm3_witness, thm7_witness,
                      thm8_check, verify_segmentation)
from .axioms import (AXIOM_IDS, Spray, SymmetryWitness, check_axiom,
                     check_symmetry, dep3, dep_path, indep_set, is_bound,
                     spray, three_spray_at)
from .generators import gen_instances
from .harness import (ALL_CHECK_IDS, LEMMA_IDS, REGISTRY, THEOREM_IDS,
                      CheckSpec, Report, exit_code_for, render_report,
                      replay_fail, run_check, run_suite)

__version__ = "0.1.0"
