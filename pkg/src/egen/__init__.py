"""Toolchain for eGEN battery-aware location-sensing policies."""

__version__ = "0.1.0"

from .model import (AdaptationPolicy, AppState, BatteryAwareFunction, BatteryLevel,
                    BatteryState, Diagnostic, PolicyModel, make_policy, pretty_print)
from .lexer import tokenize
from .parser import parse
from .validator import validate
from .engine import DeviceContext, classify_band, compute_interval, interval_table, select_policy
from .codegen import GenOptions, generate

__all__ = [
    "AdaptationPolicy", "AppState", "BatteryAwareFunction", "BatteryLevel", "BatteryState",
    "Diagnostic", "DeviceContext", "GenOptions", "PolicyModel", "classify_band",
    "compute_interval", "generate", "interval_table", "make_policy", "parse",
    "pretty_print", "select_policy", "tokenize", "validate",
]
