from .__base_config import *
