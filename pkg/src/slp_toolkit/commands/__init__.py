from .bench import bench
from .compress import compress, decompress
from .match import match
from .query import access, lp, ls, stats
from .selftest import selftest
