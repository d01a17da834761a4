"""The pass registry in execution order."""

from __future__ import annotations

from ..features import Feature as F
from ..features import FeatureSet, LanguageLevel as L
from .arrows import rewrite_arrow_functions
from .async_functions import rewrite_async_functions
from .base import PassDescriptor
from .block_scoped import rewrite_block_scoped
from .classes import rewrite_classes
from .es2020 import rewrite_nullish_coalescing, rewrite_optional_chaining
from .exponent import rewrite_exponential_operator
from .generators import rewrite_generators
from .params import rewrite_default_parameters, rewrite_rest_and_spread
from .templates import rewrite_template_literals


def _d(fn, handled, level, synthetic=(), helpers=()) -> PassDescriptor:
    return PassDescriptor(fn.__name__, FeatureSet(handled), level, FeatureSet(synthetic),
                          frozenset(helpers), fn)


# Newest level first. Within ES2015, arrows run before defaults and
# rest/spread so that `arguments` in a lowered rest parameter always
# belongs to a real function.
PASSES: tuple[PassDescriptor, ...] = (
    _d(rewrite_optional_chaining, [F.OPTIONAL_CHAINING], L.ES2020),
    _d(rewrite_nullish_coalescing, [F.NULLISH_COALESCING], L.ES2020),
    _d(rewrite_async_functions, [F.ASYNC_FUNCTIONS], L.ES2017, [F.GENERATORS], ["$asyncExecute"]),
    _d(rewrite_exponential_operator, [F.EXPONENT_OPERATOR], L.ES2016),
    _d(rewrite_classes, [F.CLASSES], L.ES2015, helpers=["$inherits"]),
    _d(rewrite_arrow_functions, [F.ARROW_FUNCTIONS], L.ES2015),
    _d(rewrite_default_parameters, [F.DEFAULT_PARAMETERS], L.ES2015),
    _d(rewrite_rest_and_spread, [F.REST_PARAMETERS, F.SPREAD_EXPRESSIONS], L.ES2015, helpers=["$arrayFrom"]),
    _d(rewrite_template_literals, [F.TEMPLATE_LITERALS], L.ES2015),
    _d(rewrite_generators, [F.GENERATORS], L.ES2015, helpers=["$makeIterator"]),
    _d(rewrite_block_scoped, [F.BLOCK_SCOPED_DECLARATIONS], L.ES2015),
)

BY_ID = {p.id: p for p in PASSES}

for _p in PASSES:
    assert not _p.problems(), _p.problems()
