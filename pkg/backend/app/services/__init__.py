from .finsemigroup import FinSemigroup, HStructure, Partition, build_semigroup, classify, generate
from .fintopology import FinTopology, generate_topology, separation_flags
from .topoalgebra import TopoSemigroup, classify_topological
