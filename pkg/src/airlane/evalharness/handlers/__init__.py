from .inclusion import *
from .report import *
from .scenarios import *
