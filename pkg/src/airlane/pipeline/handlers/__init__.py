from .export import *
from .horizons import *
