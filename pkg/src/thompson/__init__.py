"""Thompson's group F: tree pair arithmetic, the cubical chain algebra
``Z<v, e>``, its homology ring, the induced coproduct and the cup product ring."""

__version__ = "0.1.0"
