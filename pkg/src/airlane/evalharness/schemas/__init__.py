from .experiment import *
from .scenario import *
