"""Tournament clique number toolkit.

Exact solvers for the clique number and dichromatic number of tournaments,
generators for the extremal A/D/U families, induced-subtournament search,
mountain certificates, bag-chain machinery with the ordering-vs-embedding
dichotomy, and the traced constant pipeline behind the recursion.
"""

from .core import (CANONICAL_MAX_N, OrderedBackedgeGraph, Tournament,
                   VertexSet, backedge_graph, canonical_code, delta_compose,
                   format_trn, from_matrix, induced, is_out_complete,
                   parse_trn, random_tournament, single_vertex, substitute,
                   tournament_from_backedge, transitive_tournament)
from .solvers import (DicolouringCertificate, ExactOmega, Graph,
                      IntervalOmega, OmegaCertificate, chi_dir, max_clique,
                      omega_dir, omega_dir_bounds, omega_within)
from .constructions import (FamilyId, a_labels, a_structure, build_a,
                            build_d, build_family, build_u, d_labels,
                            family_labels, size_a, u_labels)
from .containment import (Embedding, contains_copy, family_index,
                          find_module, is_prime, verify_embedding)
from .mountains import (ArcClassification, GrowMountain, HypothesisFailed,
                        MountainCertificate, ProofStepContradiction,
                        classify_arcs, find_mountain, greedy_light_set,
                        grow_mountain_step, log_bound_audit,
                        min_light_dominating, two_colouring_witness,
                        verify_mountain)
from .chains import (BagChain, Chain8Result, ChainHypothesisError,
                     DichotomyResult, HalfToFullBag, HalfToFullEmbedding,
                     HalfToFullHypothesisFailed, NearBagChain,
                     OrderingCertificate, ProofStepError, Violation,
                     ZoneAuditReport, ZoneSequence, assign_zones,
                     backward_graph, bidirectional_rich, build_chain_length8,
                     chain_dichotomy, grow_copy_atoms, half_to_full_step,
                     merge_bags, residue_chains, shrink_to_level,
                     verify_bag_chain, verify_near_bag_chain, zone_audit)
from .bounds import (BoundExpr, chain8_threshold, copy_ladder,
                     growth_subset_size, main_bound, mountain_ladder,
                     ramsey_upper, re_evaluate, rich_out_threshold,
                     split_threshold)
from .atlas import Atlas, AtlasRecord

__version__ = "0.1.0"
