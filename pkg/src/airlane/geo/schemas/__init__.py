from .geo import *
