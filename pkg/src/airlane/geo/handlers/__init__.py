from .normalization import *
from .projection import *
