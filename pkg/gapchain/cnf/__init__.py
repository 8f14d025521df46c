from gapchain.cnf.formula import CnfFormula, parse_dimacs, to_dimacs
from gapchain.cnf.tovey import tovey_normalize
from gapchain.cnf.sat_oracle import sat_bruteforce

__all__ = ["CnfFormula", "parse_dimacs", "to_dimacs", "tovey_normalize", "sat_bruteforce"]
