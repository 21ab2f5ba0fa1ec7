"""Per-query instrumentation counters.

A ``QueryStats`` object is caller-owned scratch: pass it through ``stats=`` and
read it afterwards. Indexes never keep one, so concurrent queries on a shared
index stay safe.
"""

from dataclasses import dataclass


@dataclass
class QueryStats:
    engine_queries: int = 0
    macro_calls: int = 0
    cluster_calls: int = 0
    path_hops: int = 0
    tree_steps: int = 0
    walkup_queries: int = 0
    descent_queries: int = 0
    visits: int = 0
    ls_calls: int = 0
    lp_calls: int = 0
