from .analysis import *
from .discrepancy import *
from .tube import *
from .verification import *
