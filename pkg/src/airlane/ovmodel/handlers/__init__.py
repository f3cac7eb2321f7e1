from .contract import *
from .export import *
from .occupancy import *
from .operational_volume import *
