"""Inputs and outputs: the system description, time series, period mapping and MPS files."""

from .mps import MpsDataset
from .period_mapping import PeriodMapping, PeriodMappingDataset, read_period_mapping, write_period_mapping
from .system_config import SystemConfig, SystemConfigDataset, load_config, parse_config, save_config
from .timeseries import TimeSeriesCSVDataset, TimeSeriesTable, load_timeseries, to_timeseries_table
from .validation import ValidationIssue, ValidationReport, validate_inputs

__all__ = [
    "MpsDataset",
    "PeriodMapping",
    "PeriodMappingDataset",
    "SystemConfig",
    "SystemConfigDataset",
    "TimeSeriesCSVDataset",
    "TimeSeriesTable",
    "ValidationIssue",
    "ValidationReport",
    "load_config",
    "load_timeseries",
    "parse_config",
    "read_period_mapping",
    "save_config",
    "to_timeseries_table",
    "validate_inputs",
    "write_period_mapping",
]
