from .scenario import *
