"""Formulation comparison and single-formulation solve pipelines."""
