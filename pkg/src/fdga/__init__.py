"""Exact computations with filtered commutative differential graded algebras."""
from .algebra import (CDGA, Element, FreeAlgebra, Generator, Morphism, PresentationError,
                      TruncationError, Violation, check_morphism, cohomology, degree_basis,
                      differential, multiply)
from .dsl import DSLError, Diagnostic, format_definition, parse, parse_file
from .filtration import (ExplicitFiltration, FilteredComplex, WeightFiltration,
                         check_er_cofibrant, check_filtered_morphism, decalage)
from .lifting import LiftError, LiftResult, lift
from .linalg import RatMatrix, Subspace
from .minimal import MinimalModelResult, extend, minimal_model
from .paths import PathElement, PathMorphism, check_r_homotopy, r_cone
from .spectral import DirectPage, HomologyPage, is_er_quasi_iso, page
from .splitting import splitting_from_automorphism, splitting_to_page_iso, verify_r_splitting

__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Path of a definition file shipped with the package."""
    import os
    return os.path.join(os.path.dirname(__file__), "data", name)
