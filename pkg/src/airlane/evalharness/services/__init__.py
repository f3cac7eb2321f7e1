from .experiments import *
