"""Temporal aggregation pipeline: input periods to representative periods."""
