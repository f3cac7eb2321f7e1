from .geometry import *
from .nfz import *
from .occupancy import *
from .operational_volume import *
