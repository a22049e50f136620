"""Edge clique partitions of graphs, their set representations, finite
linear spaces, and clique partitions of line graphs."""

from .cliques import CliquePartition, cp_exact, enumerate_partitions, minimum_partition, minimum_partitions
from .errors import (
    BudgetExceeded,
    DomainError,
    EcpError,
    ExclusionError,
    ExistenceError,
    FormatError,
    PreconditionError,
    ValidityError,
)
from .graphs import Graph, Multigraph, line_graph
from .linear_spaces import LinearSpace, ProjectivePlane, projective_plane
from .representations import RepKind, SetFamily, enumerate_min_reps, omega_exact

__version__ = "0.1.0"
