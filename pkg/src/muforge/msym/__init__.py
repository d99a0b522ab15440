from .p1 import P1List, p1_size
from .space import ManinBasis, build_space, genus_x0, number_of_cusps, heilbronn_merel
from .symbol import (EigenSymbol, eigen_functional, normalize, eval_symbol, curve_symbol, space_for, p_shift,
                     sturm_bound, manin_path, configure_cache)

__all__ = [
    "P1List", "p1_size", "ManinBasis", "build_space", "genus_x0", "number_of_cusps",
    "heilbronn_merel", "EigenSymbol", "eigen_functional", "normalize", "eval_symbol",
    "sturm_bound", "manin_path", "curve_symbol", "space_for", "p_shift", "configure_cache",
]
