"""Lowering passes."""

from .base import PassDescriptor, PassError, PassErrorCode, TransformOutcome
from .helpers import HELPER_ORDER, HELPERS, RuntimeHelper
from .registry import BY_ID, PASSES

__all__ = ["BY_ID", "HELPERS", "HELPER_ORDER", "PASSES", "PassDescriptor", "PassError", "PassErrorCode",
           "RuntimeHelper", "TransformOutcome"]
