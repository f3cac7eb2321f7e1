from .errors import *
from .handling_files import *
from .handling_path import *
from .rng import *
from .safe_get import *
from .validate import *
