__version__ = "0.1.0"


from .analysis.conjecture import *
from .analysis.explore import *
from .analysis.report import *
from .analysis.sharding import *
from .analysis.sweep import *
from .analysis.walk import *
from .core.code import *
from .core.error import *
from .core.pair import *
from .core.utils import *
from .toolchain.config import *
from .toolchain.export import *
