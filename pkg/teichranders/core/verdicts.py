from enum import Enum


class RayVerdict(str, Enum):
    """Length behaviour of a Teichmüller ray under the Randers weak metric."""

    BOUNDED = "Bounded"
    DIVERGENT = "Divergent"


class PredicateStatus(str, Enum):
    """Outcome of a search-based predicate that can only be falsified."""

    NOT_CONTRADICTED = "not contradicted"
    CONTRADICTED = "contradicted"
