from .conflict import *
from .environment import *
from .route import *
