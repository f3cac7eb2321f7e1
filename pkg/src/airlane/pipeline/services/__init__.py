from .contract_generation import *
from .planning import *
