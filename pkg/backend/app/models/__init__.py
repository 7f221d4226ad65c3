from .schemas import *
from .errors import *
