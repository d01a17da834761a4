"""Runtime helpers referenced by lowered code; each is plain ES5."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class RuntimeHelper:
    id: str
    es5_source: str


INHERITS = RuntimeHelper("$inherits", """
function $inherits(child, parent) {
  child.prototype = Object.create(parent.prototype);
  child.prototype.constructor = child;
}
""")

ARRAY_FROM = RuntimeHelper("$arrayFrom", """
function $arrayFrom(items) {
  if (Array.isArray(items)) {
    return Array.prototype.slice.call(items);
  }
  if (items != null && typeof items.next === "function") {
    var out = [];
    var step = items.next();
    while (!step.done) {
      out.push(step.value);
      step = items.next();
    }
    return out;
  }
  return Array.prototype.slice.call(items);
}
""")

MAKE_ITERATOR = RuntimeHelper("$makeIterator", """
function $makeIterator(step) {
  var finished = false;
  return {next: function (value) {
    if (finished) {
      return {value: void 0, done: true};
    }
    var result;
    try {
      result = step(value);
    } catch (e) {
      finished = true;
      throw e;
    }
    if (result.done) {
      finished = true;
    }
    return result;
  }, "throw": function (error) {
    finished = true;
    throw error;
  }};
}
""")

# drives a generator to completion; assumes a global Promise
ASYNC_EXECUTE = RuntimeHelper("$asyncExecute", """
function $asyncExecute(body, self, args) {
  return new Promise(function (resolve, reject) {
    var it = body.apply(self, args || []);
    function step(method, input) {
      var result;
      try {
        result = it[method](input);
      } catch (e) {
        reject(e);
        return;
      }
      if (result.done) {
        resolve(result.value);
        return;
      }
      Promise.resolve(result.value).then(function (v) {
        step("next", v);
      }, function (e) {
        step("throw", e);
      });
    }
    step("next", void 0);
  });
}
""")

# fixed emission order
HELPERS: dict[str, RuntimeHelper] = {h.id: h for h in (INHERITS, ARRAY_FROM, MAKE_ITERATOR, ASYNC_EXECUTE)}
HELPER_ORDER = tuple(HELPERS)


@lru_cache(maxsize=None)
def canonical_source(helper_id: str) -> str:
    from ..codegen import print_node
    from ..parser import parse

    script = parse(HELPERS[helper_id].es5_source, helper_id, allow_reserved=True)
    return print_node(script.root)


def prelude(helper_ids) -> str:
    chosen = [h for h in HELPER_ORDER if h in helper_ids]
    unknown = set(helper_ids) - set(HELPER_ORDER)
    if unknown:
        raise KeyError(f"unknown runtime helpers: {sorted(unknown)}")
    return "".join(canonical_source(h) + "\n" for h in chosen)
