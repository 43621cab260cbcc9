"""Finite lattices, order-theoretic function properties and lattice games.

The public surface is re-exported here; submodules hold the details.
"""

from .crossing import (CrossingProp, TwoVarFunction, as_crossing_prop, check_crossing,
                       crossing_fails_at)
from .errors import (BudgetExceeded, EmptyFactorList, LateqError, NotALattice, NotAPoset,
                     NotClosedUnderBound, NotMonotone, NotWeaklyAscending,
                     SelectionNotMonotone, SelectionSearchFailed, UnknownPlayer,
                     UnknownProperty, UnknownTheorem)
from .functions import (EquivalenceReport, ImplicationResult, LatticeFunction, Prop, as_prop,
                        check_equivalence_family, check_unary_property, classify,
                        function_space_size, implication_atlas, iter_functions, level_set,
                        verify_equivalence, verify_implication, violates_at)
from .games import (EquilibriumReport, HypothesisReport, NormalFormGame, Theorem,
                    ZhouReport, analyze_equilibria, as_theorem, best_response,
                    best_response_increasing, check_hypotheses, check_payoff_crossing,
                    conformant_corpus, enumerate_nash, is_nash, random_corpus, random_game,
                    solve_fixed_point, zhou_applicability)
from .lattice import (HOLDS, ChainReport, FiniteLattice, FinitePoset, ProductLattice,
                      StructureFlags, Subset, Verdict, all_lattices, boolean_lattice, chain,
                      chain_predicates, diamond, grid, induced_structure, is_quasisublattice,
                      is_sublattice, m3, opposite, pentagon, product, validate_lattice)
from .optima import (Correspondence, ExtremumReport, ExtremumVariant, Selection, argopt,
                     all_increasing_selections, check_monotone, fixed_points,
                     increasing_selection, is_weakly_ascending, tarski_fixed_points,
                     tarski_iterates, verify_extremum_structure)
from .search import SearchResult, SearchSpec, find_separating_function, find_separating_game, run_search

__version__ = "0.1.0"
