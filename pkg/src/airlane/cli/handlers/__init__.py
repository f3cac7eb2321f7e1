from .render import *
from .scenario import *
