from .aircraft import *
from .state import *
from .trajectory import *
