from .autopilot import *
from .batch import *
from .export import *
from .initialization import *
