from src.qpoly import *
from src.rootfinder import *
from src.lti import *
from src.factorization import *
from src.phi import *
from src.controller import *
from src.plots import *
