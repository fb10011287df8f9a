"""Simplicial replacements, exact rational homology, persistence barcodes and
Thom-encoded one-variable filtrations."""

from .covers import (BoxSet, CoverOracle, DeclaredCoverOracle, BoxCoverOracle, DimensionMismatch,
                     MissingCoverEntry, UnknownLabel, box_cover_oracle, declared_cover_oracle,
                     formula_key, intersection_nonempty, load_scene)
from .formula import (NotClosed, Realization, dnf, is_closed_shape, make_closed, parse_formula,
                      parse_polynomial, realization)
from .linalg import RationalMatrix
from .persistence import (Barcode, Filtration, IndexOutOfRange, NotNested, barcode, barcode_oracle,
                          lower_star_filtration, multiplicities, persistent_betti)
from .poset import (ChainBoundExceeded, ElementNotInPoset, MixedPoset, Poset, PosetElement, dominates,
                    down_closure, order_complex, poset_leq, precedes)
from .realroots import (EpsPolynomial, ThomEncoding, ZeroPolynomialInInput, compare, isolate_roots,
                        remove_infinitesimals, resultant, sign_at, sturm_count, thom_encode, value_at)
from .replacement import (RecursionBudgetExceeded, ReplacementResult, TupleOfFormulas, build_poset,
                          simplicial_replacement, sub_poset)
from .sa_filtration import (CriticalValueList, SubLevelProblem, UnboundedSet, critical_values_1d,
                            finite_filtration_1d, sa_barcode_1d)
from .simplicial import (InconsistentPredicate, SimplicialComplex, betti_numbers, boundary_matrix,
                         nerve, skeleton)
from .upoly import UPoly, ZeroPolynomial, parse_upoly

__version__ = "0.1.0"
