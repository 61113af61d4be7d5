"""kedro_ldslab: long-duration storage formulations for capacity-expansion LPs over
representative periods."""

__version__ = "0.1.0"
