from .reach import *
