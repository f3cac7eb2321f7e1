from .candidate import *
from .collision import *
from .conflicts import *
from .export import *
from .repair import *
from .rope import *
from .timing import *
from .tree import *
