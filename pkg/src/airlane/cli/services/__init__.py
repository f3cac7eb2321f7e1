from .commands import *
