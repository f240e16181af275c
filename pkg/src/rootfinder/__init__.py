from src.rootfinder.contour import Rectangle, count_roots, winding_number
from src.rootfinder.polynomial import RootSet, cluster_roots, polynomial_roots
from src.rootfinder.quasi_roots import (Finiteness, FinitenessVerdict, RootSearch, chain_abscissae, finiteness_rhp,
                                        finiteness_rhp_conjugate, retarded_radius, rhp_roots, right_bound,
                                        roots_in_region, search_rhp_roots)
