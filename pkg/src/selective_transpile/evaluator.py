"""Reference evaluator: a small tree-walking interpreter for MiniES.

It runs both the modern input and the lowered ES5 output so that a pass can
be checked by comparing observable behaviour. Programs observe results
through a global ``log(...)`` function; :func:`run` returns the logged lines
(and the uncaught exception, if any) after draining the microtask queue.

Generators and async functions run on greenlets, so ``yield`` and ``await``
may appear anywhere the parser admits them.
"""

from __future__ import annotations

import math
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import greenlet

from .jsnum import format_number
from .nodes import K, Node, NodeFlag, ScriptNode
from .parser import parse


class _Undefined:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "undefined"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _Undefined()


class JSObject:
    __slots__ = ("proto", "props", "cls")

    def __init__(self, proto: Optional["JSObject"] = None, cls: str = "Object") -> None:
        self.proto = proto
        self.props: dict[str, Any] = {}
        self.cls = cls

    def lookup(self, key: str):
        o = self
        while o is not None:
            if key in o.props:
                return o.props[key]
            o = o.proto
        return UNDEFINED

    def has(self, key: str) -> bool:
        o = self
        while o is not None:
            if key in o.props:
                return True
            o = o.proto
        return False


class JSArray(JSObject):
    __slots__ = ("items",)

    def __init__(self, proto, items, cls="Array") -> None:
        super().__init__(proto, cls)
        self.items = list(items)


class JSFunction(JSObject):
    __slots__ = ("node", "closure", "native", "home", "is_class", "parent_class", "ctor", "name", "bound")

    def __init__(self, proto, name="", node=None, closure=None, native=None) -> None:
        super().__init__(proto, "Function")
        self.node = node
        self.closure = closure
        self.native = native
        self.home = None
        self.is_class = False
        self.parent_class = None
        self.ctor = None
        self.name = name
        self.bound = None


class JSPromise(JSObject):
    __slots__ = ("state", "value", "reactions")

    def __init__(self, proto) -> None:
        super().__init__(proto, "Promise")
        self.state = "pending"
        self.value = UNDEFINED
        self.reactions: list = []


class JSThrow(Exception):
    """A JavaScript exception carrying a JS value."""

    def __init__(self, value) -> None:
        super().__init__(value)
        self.value = value


class _Break(Exception):
    pass


class _Continue(Exception):
    pass


class _Return(Exception):
    def __init__(self, value) -> None:
        self.value = value


class Scope:
    __slots__ = ("vars", "parent", "fn_scope", "this", "func", "home")

    def __init__(self, parent: Optional["Scope"], fn_scope: bool = False) -> None:
        self.vars: dict[str, Any] = {}
        self.parent = parent
        self.fn_scope = fn_scope
        self.this = UNDEFINED
        self.func = None
        self.home = None

    def find(self, name: str) -> Optional["Scope"]:
        s = self
        while s is not None:
            if name in s.vars:
                return s
            s = s.parent
        return None

    def this_scope(self) -> "Scope":
        s = self
        while s.parent is not None and not s.fn_scope:
            s = s.parent
        return s


@dataclass
class Outcome:
    logs: list[str] = field(default_factory=list)
    error: Optional[str] = None

    def __str__(self) -> str:
        lines = list(self.logs)
        if self.error is not None:
            lines.append(f"uncaught {self.error}")
        return "\n".join(lines)


class StepLimitExceeded(Exception):
    pass


def _var_names(stmts, out: list[str]) -> None:
    """Var-declared names in a function body (not crossing function boundaries)."""
    for s in stmts:
        k = s.kind
        if k is K.VAR_DECL:
            out.extend(d.children[0].value for d in s.children)
        elif k in (K.BLOCK, K.CASE):
            _var_names(s.children, out)
        elif k is K.IF:
            _var_names(s.children[1:], out)
        elif k is K.WHILE:
            _var_names(s.children[1:], out)
        elif k is K.FOR:
            _var_names([s.children[0], s.children[3]], out)
        elif k is K.SWITCH:
            _var_names(s.children[1:], out)
        elif k is K.TRY_CATCH:
            _var_names([s.children[0], s.children[2]] + s.children[3:], out)


class Interpreter:
    def __init__(self, max_steps: int = 2_000_000) -> None:
        self.logs: list[str] = []
        self.microtasks: deque = deque()
        self.steps = 0
        self.max_steps = max_steps
        self.object_proto = JSObject(None)
        self.function_proto = JSFunction(self.object_proto, "")
        self.array_proto = JSArray(self.object_proto, [])
        self.string_proto = JSObject(self.object_proto)
        self.number_proto = JSObject(self.object_proto)
        self.promise_proto = JSObject(self.object_proto)
        self.generator_proto = JSObject(self.object_proto)
        self.error_proto = JSObject(self.object_proto, "Error")
        self.globals = Scope(None, fn_scope=True)
        self._install_builtins()

    # -- builtins ---------------------------------------------------------

    def native(self, name: str, fn: Callable) -> JSFunction:
        f = JSFunction(self.function_proto, name, native=fn)
        return f

    def obj(self, **props) -> JSObject:
        o = JSObject(self.object_proto)
        o.props.update(props)
        return o

    def array(self, items) -> JSArray:
        return JSArray(self.array_proto, items)

    def make_error(self, kind: str, message: str) -> JSObject:
        e = JSObject(self.error_proto, "Error")
        e.props["name"] = kind
        e.props["message"] = message
        return e

    def throw(self, kind: str, message: str):
        raise JSThrow(self.make_error(kind, message))

    def _install_builtins(self) -> None:
        g = self.globals.vars
        n = self.native

        def log(this, args):
            self.logs.append(" ".join(self.display(a) for a in args))
            return UNDEFINED

        g["log"] = n("log", log)
        g["undefined"] = UNDEFINED
        g["NaN"] = math.nan
        g["Infinity"] = math.inf

        def num_args(args, i):
            return self.to_number(args[i]) if i < len(args) else math.nan

        g["Math"] = self.obj(
            pow=n("pow", lambda t, a: js_pow(num_args(a, 0), num_args(a, 1))),
            max=n("max", lambda t, a: max([self.to_number(x) for x in a], default=-math.inf)),
            min=n("min", lambda t, a: min([self.to_number(x) for x in a], default=math.inf)),
            floor=n("floor", lambda t, a: float(math.floor(num_args(a, 0)))
                    if math.isfinite(num_args(a, 0)) else num_args(a, 0)),
            abs=n("abs", lambda t, a: abs(num_args(a, 0))),
            sqrt=n("sqrt", lambda t, a: math.sqrt(num_args(a, 0)) if num_args(a, 0) >= 0 else math.nan),
        )

        # Object
        def object_ctor(this, args):
            return self.obj()

        obj_ctor = n("Object", object_ctor)
        obj_ctor.props["prototype"] = self.object_proto
        self.object_proto.props["constructor"] = obj_ctor

        def create(this, args):
            proto = args[0] if args else UNDEFINED
            if proto is None:
                return JSObject(None)
            if not isinstance(proto, JSObject):
                self.throw("TypeError", "Object prototype may only be an Object or null")
            return JSObject(proto)

        obj_ctor.props["create"] = n("create", create)
        obj_ctor.props["keys"] = n("keys", lambda t, a: self.array(self.own_keys(a[0])))
        self.object_proto.props["hasOwnProperty"] = n(
            "hasOwnProperty", lambda t, a: self.has_own(t, self.to_key(a[0] if a else UNDEFINED)))
        g["Object"] = obj_ctor

        # Function.prototype
        fp = self.function_proto.props

        def f_call(this, args):
            return self.call(this, args[0] if args else UNDEFINED, list(args[1:]))

        def f_apply(this, args):
            this_arg = args[0] if args else UNDEFINED
            arr = args[1] if len(args) > 1 else UNDEFINED
            if arr is UNDEFINED or arr is None:
                items = []
            elif isinstance(arr, JSArray):
                items = list(arr.items)
            else:
                self.throw("TypeError", "apply expects an array")
            return self.call(this, this_arg, items)

        def f_bind(this, args):
            target = this
            bound_this = args[0] if args else UNDEFINED
            extra = list(args[1:])
            bf = self.native("bound", lambda t, a: self.call(target, bound_this, extra + list(a)))
            bf.bound = (target, extra)
            return bf

        func_ctor = n("Function", lambda t, a: self.throw("TypeError", "Function constructor is unsupported"))
        func_ctor.props["prototype"] = self.function_proto
        self.function_proto.props["constructor"] = func_ctor
        g["Function"] = func_ctor
        fp["call"] = n("call", f_call)
        fp["apply"] = n("apply", f_apply)
        fp["bind"] = n("bind", f_bind)

        # Array
        def array_ctor(this, args):
            return self.array(args)

        arr_ctor = n("Array", array_ctor)
        arr_ctor.props["prototype"] = self.array_proto
        arr_ctor.props["isArray"] = n("isArray", lambda t, a: bool(a) and isinstance(a[0], JSArray)
                                      and a[0].cls == "Array")
        ap = self.array_proto.props
        ap["constructor"] = arr_ctor

        def items_of(this):
            if isinstance(this, JSArray):
                return this.items
            if isinstance(this, str):
                return list(this)
            if isinstance(this, JSObject):
                length = int(self.to_number(self.get(this, "length")))
                return [self.get(this, str(i)) for i in range(length)]
            self.throw("TypeError", "not array-like")

        def a_slice(this, args):
            items = items_of(this)
            start = int(self.to_integer(args[0])) if args else 0
            end = int(self.to_integer(args[1])) if len(args) > 1 and args[1] is not UNDEFINED else len(items)
            return self.array(items[slice(*_clamp(start, end, len(items)))])

        def a_push(this, args):
            this.items.extend(args)
            return float(len(this.items))

        def a_pop(this, args):
            return this.items.pop() if this.items else UNDEFINED

        def a_concat(this, args):
            out = list(this.items)
            for a in args:
                if isinstance(a, JSArray) and a.cls == "Array":
                    out.extend(a.items)
                else:
                    out.append(a)
            return self.array(out)

        def a_join(this, args):
            sep = "," if not args or args[0] is UNDEFINED else self.to_string(args[0])
            return sep.join("" if x is None or x is UNDEFINED else self.to_string(x) for x in this.items)

        def a_index_of(this, args):
            target = args[0] if args else UNDEFINED
            for i, x in enumerate(this.items):
                if strict_equals(x, target):
                    return float(i)
            return -1.0

        def a_map(this, args):
            fn = args[0]
            return self.array([self.call(fn, UNDEFINED, [x, float(i), this]) for i, x in enumerate(list(this.items))])

        def a_for_each(this, args):
            fn = args[0]
            for i, x in enumerate(list(this.items)):
                self.call(fn, UNDEFINED, [x, float(i), this])
            return UNDEFINED

        def a_reduce(this, args):
            fn = args[0]
            items = list(this.items)
            if len(args) > 1:
                acc, rest = args[1], items
            else:
                if not items:
                    self.throw("TypeError", "reduce of empty array with no initial value")
                acc, rest = items[0], items[1:]
            for x in rest:
                acc = self.call(fn, UNDEFINED, [acc, x])
            return acc

        for name, fn in [("slice", a_slice), ("push", a_push), ("pop", a_pop), ("concat", a_concat),
                         ("join", a_join), ("indexOf", a_index_of), ("map", a_map),
                         ("forEach", a_for_each), ("reduce", a_reduce)]:
            ap[name] = n(name, fn)
        g["Array"] = arr_ctor

        # String
        sp = self.string_proto.props
        sp["charAt"] = n("charAt", lambda t, a: t[int(self.to_integer(a[0]))]
                         if a and 0 <= self.to_integer(a[0]) < len(t) else "")
        sp["toUpperCase"] = n("toUpperCase", lambda t, a: t.upper())
        sp["indexOf"] = n("indexOf", lambda t, a: float(t.find(self.to_string(a[0]))))
        sp["slice"] = n("slice", lambda t, a: t[slice(*_clamp(
            int(self.to_integer(a[0])) if a else 0,
            int(self.to_integer(a[1])) if len(a) > 1 else len(t), len(t)))])
        g["String"] = n("String", lambda t, a: self.to_string(a[0]) if a else "")
        g["Number"] = n("Number", lambda t, a: self.to_number(a[0]) if a else 0.0)
        self.number_proto.props["toString"] = n("toString", lambda t, a: self.to_string(t))

        # Error
        def error_ctor_for(kind):
            def ctor(this, args):
                target = this if isinstance(this, JSObject) and this.cls == "Error" else self.make_error(kind, "")
                target.props["name"] = kind
                target.props["message"] = self.to_string(args[0]) if args and args[0] is not UNDEFINED else ""
                return target
            f = n(kind, ctor)
            f.props["prototype"] = self.error_proto
            return f

        for kind in ("Error", "TypeError", "RangeError"):
            g[kind] = error_ctor_for(kind)

        # Promise
        def promise_ctor(this, args):
            p = JSPromise(self.promise_proto)
            resolve_fn, reject_fn = self.resolving_functions(p)
            try:
                self.call(args[0], UNDEFINED, [resolve_fn, reject_fn])
            except JSThrow as e:
                self.call(reject_fn, UNDEFINED, [e.value])
            return p

        prom = n("Promise", promise_ctor)
        prom.props["prototype"] = self.promise_proto
        prom.props["resolve"] = n("resolve", lambda t, a: self.promise_resolve(a[0] if a else UNDEFINED))

        def p_reject(this, args):
            p = JSPromise(self.promise_proto)
            self.reject_promise(p, args[0] if args else UNDEFINED)
            return p

        prom.props["reject"] = n("reject", p_reject)
        self.promise_proto.props["then"] = n("then", lambda t, a: self.promise_then(
            t, a[0] if a else UNDEFINED, a[1] if len(a) > 1 else UNDEFINED))
        self.promise_proto.props["catch"] = n("catch", lambda t, a: self.promise_then(
            t, UNDEFINED, a[0] if a else UNDEFINED))
        g["Promise"] = prom

        # native generator objects
        self.generator_proto.props["next"] = n("next", lambda t, a: t.props["__gen"].resume(
            "next", a[0] if a else UNDEFINED))
        self.generator_proto.props["throw"] = n("throw", lambda t, a: t.props["__gen"].resume(
            "throw", a[0] if a else UNDEFINED))

    # -- promises ---------------------------------------------------------

    def resolving_functions(self, p: JSPromise):
        done = [False]

        def res(this, args):
            if not done[0]:
                done[0] = True
                self.resolve_promise(p, args[0] if args else UNDEFINED)
            return UNDEFINED

        def rej(this, args):
            if not done[0]:
                done[0] = True
                self.reject_promise(p, args[0] if args else UNDEFINED)
            return UNDEFINED

        return self.native("resolve", res), self.native("reject", rej)

    def resolve_promise(self, p: JSPromise, x) -> None:
        if x is p:
            self.reject_promise(p, self.make_error("TypeError", "promise resolved with itself"))
            return
        if isinstance(x, JSObject):
            then = x.lookup("then")
            if isinstance(then, JSFunction):
                def job():
                    res, rej = self.resolving_functions(p)
                    try:
                        self.call(then, x, [res, rej])
                    except JSThrow as e:
                        self.call(rej, UNDEFINED, [e.value])
                self.microtasks.append(job)
                return
        self.settle(p, "fulfilled", x)

    def reject_promise(self, p: JSPromise, reason) -> None:
        self.settle(p, "rejected", reason)

    def settle(self, p: JSPromise, state: str, value) -> None:
        if p.state != "pending":
            return
        p.state, p.value = state, value
        reactions, p.reactions = p.reactions, []
        for r in reactions:
            self.schedule_reaction(p, r)

    def schedule_reaction(self, p: JSPromise, reaction) -> None:
        on_ok, on_err, child = reaction

        def job():
            handler = on_ok if p.state == "fulfilled" else on_err
            if not isinstance(handler, JSFunction):
                if p.state == "fulfilled":
                    self.resolve_promise(child, p.value)
                else:
                    self.reject_promise(child, p.value)
                return
            try:
                result = self.call(handler, UNDEFINED, [p.value])
            except JSThrow as e:
                self.reject_promise(child, e.value)
                return
            self.resolve_promise(child, result)

        self.microtasks.append(job)

    def promise_then(self, p, on_ok, on_err) -> JSPromise:
        if not isinstance(p, JSPromise):
            self.throw("TypeError", "then called on a non-promise")
        child = JSPromise(self.promise_proto)
        reaction = (on_ok, on_err, child)
        if p.state == "pending":
            p.reactions.append(reaction)
        else:
            self.schedule_reaction(p, reaction)
        return child

    def promise_resolve(self, v) -> JSPromise:
        if isinstance(v, JSPromise):
            return v
        p = JSPromise(self.promise_proto)
        self.resolve_promise(p, v)
        return p

    def drain(self) -> None:
        while self.microtasks:
            self.microtasks.popleft()()

    # -- conversions ------------------------------------------------------

    def to_primitive(self, v, hint: str = "default"):
        if not isinstance(v, JSObject):
            return v
        order = ("toString", "valueOf") if hint == "string" else ("valueOf", "toString")
        for name in order:
            fn = v.lookup(name)
            if isinstance(fn, JSFunction) and fn.native is None:
                out = self.call(fn, v, [])
                if not isinstance(out, JSObject):
                    return out
        if isinstance(v, JSArray):
            return ",".join("" if x is None or x is UNDEFINED else self.to_string(x) for x in v.items)
        if isinstance(v, JSFunction):
            return f"function {v.name}() {{ [code] }}"
        if v.cls == "Error":
            name = self.to_string(v.lookup("name"))
            msg = self.to_string(v.lookup("message"))
            return f"{name}: {msg}" if msg else name
        return "[object Object]"

    def to_string(self, v) -> str:
        if isinstance(v, str):
            return v
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return format_number(v)
        if v is None:
            return "null"
        if v is UNDEFINED:
            return "undefined"
        return self.to_string(self.to_primitive(v, "string"))

    def to_number(self, v) -> float:
        if isinstance(v, bool):
            return 1.0 if v else 0.0
        if isinstance(v, float):
            return v
        if v is None:
            return 0.0
        if v is UNDEFINED:
            return math.nan
        if isinstance(v, str):
            s = v.strip()
            if not s:
                return 0.0
            try:
                if s.lower().startswith(("0x", "-0x", "+0x")):
                    return float(int(s, 16))
                if s in ("Infinity", "+Infinity"):
                    return math.inf
                if s == "-Infinity":
                    return -math.inf
                if any(c.isalpha() and c not in "eE" for c in s):
                    return math.nan
                return float(s)
            except ValueError:
                return math.nan
        return self.to_number(self.to_primitive(v, "number"))

    def to_integer(self, v) -> float:
        x = self.to_number(v)
        if math.isnan(x):
            return 0.0
        if math.isinf(x):
            return x
        return float(math.trunc(x))

    def to_key(self, v) -> str:
        return self.to_string(v)

    def truthy(self, v) -> bool:
        if isinstance(v, bool):
            return v
        if isinstance(v, float):
            return not (v == 0 or math.isnan(v))
        if isinstance(v, str):
            return v != ""
        if v is None or v is UNDEFINED:
            return False
        return True

    def typeof(self, v) -> str:
        if v is UNDEFINED:
            return "undefined"
        if v is None:
            return "object"
        if isinstance(v, bool):
            return "boolean"
        if isinstance(v, float):
            return "number"
        if isinstance(v, str):
            return "string"
        if isinstance(v, JSFunction):
            return "function"
        return "object"

    def display(self, v, depth: int = 0) -> str:
        if isinstance(v, str):
            return v if depth == 0 else repr(v)
        if isinstance(v, JSFunction):
            return "[Function]"
        if isinstance(v, JSPromise):
            return f"[Promise {v.state}]"
        if isinstance(v, JSArray):
            if depth > 3:
                return "[...]"
            return "[" + ", ".join(self.display(x, depth + 1) for x in v.items) + "]"
        if isinstance(v, JSObject):
            if v.cls == "Error":
                return self.to_string(v)
            if depth > 3:
                return "{...}"
            inner = ", ".join(f"{k}: {self.display(x, depth + 1)}" for k, x in v.props.items()
                              if not k.startswith("__"))
            return "{" + inner + "}"
        return self.to_string(v)

    def own_keys(self, o) -> list[str]:
        if isinstance(o, JSArray):
            return [str(i) for i in range(len(o.items))] + [k for k in o.props if not k.startswith("__")]
        if isinstance(o, JSObject):
            return [k for k in o.props if not k.startswith("__")]
        return []

    def has_own(self, o, key: str) -> bool:
        if isinstance(o, JSArray) and _is_index(key):
            return int(key) < len(o.items)
        return isinstance(o, JSObject) and key in o.props

    # -- properties -------------------------------------------------------

    def get(self, o, key: str):
        if isinstance(o, JSObject):
            if isinstance(o, JSArray):
                if key == "length":
                    return float(len(o.items))
                if _is_index(key):
                    i = int(key)
                    return o.items[i] if i < len(o.items) else UNDEFINED
            if isinstance(o, JSFunction) and key == "prototype" and "prototype" not in o.props:
                if o.native is None and not (o.node is not None and o.node.kind in (K.ARROW_FUNCTION, K.METHOD)
                                             and not o.is_class):
                    proto = JSObject(self.object_proto)
                    proto.props["constructor"] = o
                    o.props["prototype"] = proto
            return o.lookup(key)
        if isinstance(o, str):
            if key == "length":
                return float(len(o))
            if _is_index(key):
                i = int(key)
                return o[i] if i < len(o) else UNDEFINED
            return self.string_proto.lookup(key)
        if isinstance(o, float):
            return self.number_proto.lookup(key)
        if isinstance(o, bool):
            return UNDEFINED
        self.throw("TypeError", f"cannot read property {key!r} of {self.to_string(o)}")

    def put(self, o, key: str, value) -> None:
        if isinstance(o, JSArray):
            if _is_index(key):
                i = int(key)
                while len(o.items) <= i:
                    o.items.append(UNDEFINED)
                o.items[i] = value
                return
            if key == "length":
                n = int(self.to_number(value))
                del o.items[n:]
                return
        if isinstance(o, JSObject):
            o.props[key] = value
            return
        if o is None or o is UNDEFINED:
            self.throw("TypeError", f"cannot set property {key!r} of {self.to_string(o)}")
        # writes to primitives are silently dropped

    # -- calls ------------------------------------------------------------

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.max_steps:
            raise StepLimitExceeded()

    def call(self, f, this, args: list):
        if not isinstance(f, JSFunction):
            self.throw("TypeError", f"{self.display(f)} is not a function")
        self.tick()
        if f.native is not None:
            return f.native(this, args)
        if f.is_class:
            self.throw("TypeError", f"class constructor {f.name} cannot be invoked without 'new'")
        return self.invoke(f, this, args)

    def construct(self, f, args: list):
        if not isinstance(f, JSFunction):
            self.throw("TypeError", f"{self.display(f)} is not a constructor")
        if f.native is not None:
            if f.bound is not None:
                target, extra = f.bound
                return self.construct(target, extra + args)
            proto = self.get(f, "prototype")
            if f.name in ("Error", "TypeError", "RangeError"):
                return f.native(JSObject(proto, "Error"), args)
            return f.native(UNDEFINED, args)
        if f.node is not None and f.node.kind is K.ARROW_FUNCTION:
            self.throw("TypeError", "arrow functions are not constructors")
        proto = self.get(f, "prototype")
        this = JSObject(proto if isinstance(proto, JSObject) else self.object_proto)
        if f.is_class:
            result = self.run_class_ctor(f, this, args)
        else:
            result = self.invoke(f, this, args)
        return result if isinstance(result, JSObject) else this

    def run_class_ctor(self, cls: JSFunction, this, args):
        if cls.ctor is None:
            if cls.parent_class is not None:
                self.super_construct(cls, this, args)
            return UNDEFINED
        return self.invoke(cls.ctor, this, args)

    def super_construct(self, cls: JSFunction, this, args) -> None:
        parent = cls.parent_class
        if isinstance(parent, JSFunction) and parent.is_class:
            self.run_class_ctor(parent, this, args)
        elif isinstance(parent, JSFunction) and parent.native is not None:
            parent.native(this, args)
        else:
            self.call(parent, this, args)

    def make_function(self, node: Node, env: Scope, name: Optional[str] = None) -> JSFunction:
        f = JSFunction(self.function_proto, name or node.value or "", node, env)
        return f

    def invoke(self, f: JSFunction, this, args: list):
        node = f.node
        params, body = node.children
        is_arrow = node.kind is K.ARROW_FUNCTION
        env = Scope(f.closure, fn_scope=not is_arrow)
        if not is_arrow:
            env.this = this
            env.func = f
            env.home = f.home
            env.vars["arguments"] = JSArray(self.array_proto, args, cls="Arguments")
        for i, p in enumerate(params.children):
            if p.kind is K.REST_PARAM:
                env.vars[p.value] = self.array(args[i:])
            else:
                v = args[i] if i < len(args) else UNDEFINED
                if p.kind is K.DEFAULT_PARAM and v is UNDEFINED:
                    v = self.eval(p.children[0], env)
                env.vars[p.value] = v
        if body.kind is K.BLOCK:
            self.hoist(body.children, env)
        flags = node.flags
        if flags & NodeFlag.GENERATOR:
            return self.make_generator(body, env)
        if flags & NodeFlag.ASYNC:
            return self.start_async(body, env)
        return self.run_body(body, env)

    def run_body(self, body: Node, env: Scope):
        if body.kind is not K.BLOCK:
            return self.eval(body, env)
        try:
            self.exec_list(body.children, env)
        except _Return as r:
            return r.value
        return UNDEFINED

    def hoist(self, stmts: list[Node], env: Scope, function_level: bool = True) -> None:
        if function_level:
            names: list[str] = []
            _var_names(stmts, names)
            for nm in names:
                if nm not in env.vars:
                    env.vars[nm] = UNDEFINED
        for s in stmts:
            if s.kind in (K.LET_DECL, K.CONST_DECL):
                for d in s.children:
                    env.vars[d.children[0].value] = UNDEFINED
            elif s.kind is K.CLASS_DECL:
                env.vars[s.value] = UNDEFINED
        for s in stmts:
            if s.kind is K.FUNCTION_DECL:
                env.vars[s.value] = self.make_function(s, env)

    # -- coroutines -------------------------------------------------------

    def make_generator(self, body: Node, env: Scope) -> JSObject:
        gen_obj = JSObject(self.generator_proto, "Generator")
        gen_obj.props["__gen"] = _Coroutine(self, body, env)
        return gen_obj

    def start_async(self, body: Node, env: Scope) -> JSPromise:
        p = JSPromise(self.promise_proto)
        co = _Coroutine(self, body, env)

        def step(mode, value):
            try:
                kind, out = co.switch(mode, value)
            except JSThrow as e:
                self.reject_promise(p, e.value)
                return UNDEFINED
            if kind == "return":
                self.resolve_promise(p, out)
            else:
                awaited = self.promise_resolve(out)
                self.promise_then(awaited,
                                  self.native("", lambda t, a: step("next", a[0] if a else UNDEFINED)),
                                  self.native("", lambda t, a: step("throw", a[0] if a else UNDEFINED)))
            return UNDEFINED

        step("next", UNDEFINED)
        return p

    def suspend(self, value):
        """Called from inside a coroutine body for `yield`/`await`."""
        current = greenlet.getcurrent()
        mode, sent = current.parent.switch(("suspend", value))
        if mode == "throw":
            raise JSThrow(sent)
        return sent

    # -- statements -------------------------------------------------------

    def exec_list(self, stmts: list[Node], env: Scope) -> None:
        for s in stmts:
            self.exec(s, env)

    def block_scope(self, stmts: list[Node], env: Scope) -> Scope:
        for s in stmts:
            if s.kind in (K.LET_DECL, K.CONST_DECL, K.CLASS_DECL, K.FUNCTION_DECL):
                inner = Scope(env)
                self.hoist(stmts, inner, function_level=False)
                return inner
        return env

    def exec(self, n: Node, env: Scope) -> None:
        self.tick()
        kind = n.kind
        ch = n.children
        if kind is K.EXPR_STMT:
            self.eval(ch[0], env)
        elif kind in (K.VAR_DECL, K.LET_DECL, K.CONST_DECL):
            self.declare(n, env)
        elif kind is K.FUNCTION_DECL:
            pass
        elif kind is K.RETURN:
            raise _Return(self.eval(ch[0], env) if ch else UNDEFINED)
        elif kind is K.IF:
            if self.truthy(self.eval(ch[0], env)):
                self.exec(ch[1], env)
            elif len(ch) > 2:
                self.exec(ch[2], env)
        elif kind is K.BLOCK:
            self.exec_list(ch, self.block_scope(ch, env))
        elif kind is K.WHILE:
            while self.truthy(self.eval(ch[0], env)):
                try:
                    self.exec(ch[1], env)
                except _Break:
                    break
                except _Continue:
                    continue
        elif kind is K.FOR:
            self.exec_for(n, env)
        elif kind is K.BREAK:
            raise _Break()
        elif kind is K.CONTINUE:
            raise _Continue()
        elif kind is K.THROW:
            raise JSThrow(self.eval(ch[0], env))
        elif kind is K.TRY_CATCH:
            self.exec_try(n, env)
        elif kind is K.SWITCH:
            self.exec_switch(n, env)
        elif kind is K.CLASS_DECL:
            self.define_class(n, env)
        elif kind is K.EMPTY:
            pass
        else:
            raise TypeError(f"cannot execute {kind.name}")

    def declare(self, n: Node, env: Scope) -> None:
        for d in n.children:
            name = d.children[0].value
            if len(d.children) > 1:
                value = self.eval(d.children[1], env)
                if d.children[1].kind in (K.FUNCTION_EXPR, K.ARROW_FUNCTION) and isinstance(value, JSFunction) \
                        and not value.name:
                    value.name = name
            elif n.kind is K.VAR_DECL:
                continue
            else:
                value = UNDEFINED
            if n.kind is K.VAR_DECL:
                self.assign_name(name, value, env)
            else:
                env.vars[name] = value

    def exec_for(self, n: Node, env: Scope) -> None:
        init, test, update, body = n.children
        loop_env = env
        lexical: list[str] = []
        if init.kind in (K.LET_DECL, K.CONST_DECL):
            loop_env = Scope(env)
            lexical = [d.children[0].value for d in init.children]
            self.declare(init, loop_env)
        elif init.kind is K.VAR_DECL:
            self.declare(init, env)
        elif init.kind is not K.EMPTY:
            self.eval(init, env)

        def fresh(scope: Scope) -> Scope:
            if not lexical:
                return scope
            copy = Scope(env)
            copy.vars.update({k: scope.vars[k] for k in lexical})
            return copy

        it_env = fresh(loop_env)
        while True:
            if test.kind is not K.EMPTY and not self.truthy(self.eval(test, it_env)):
                break
            try:
                self.exec(body, it_env)
            except _Break:
                break
            except _Continue:
                pass
            it_env = fresh(it_env)
            if update.kind is not K.EMPTY:
                self.eval(update, it_env)

    def exec_try(self, n: Node, env: Scope) -> None:
        body, param, handler = n.children[:3]
        final = n.children[3] if len(n.children) > 3 else None
        try:
            try:
                self.exec(body, env)
            except JSThrow as e:
                catch_env = Scope(env)
                catch_env.vars[param.value] = e.value
                self.exec(handler, catch_env)
        finally:
            if final is not None:
                self.exec(final, env)

    def exec_switch(self, n: Node, env: Scope) -> None:
        disc = self.eval(n.children[0], env)
        cases = n.children[1:]
        all_stmts = [s for c in cases for s in c.children[1:]]
        inner = self.block_scope(all_stmts, env)
        start = None
        for i, c in enumerate(cases):
            test = c.children[0]
            if test.kind is not K.EMPTY and strict_equals(disc, self.eval(test, inner)):
                start = i
                break
        if start is None:
            for i, c in enumerate(cases):
                if c.children[0].kind is K.EMPTY:
                    start = i
                    break
        if start is None:
            return
        try:
            for c in cases[start:]:
                self.exec_list(c.children[1:], inner)
        except _Break:
            pass

    def define_class(self, n: Node, env: Scope) -> None:
        heritage = n.children[0]
        parent = None
        if heritage.kind is not K.EMPTY:
            parent = self.eval(heritage, env)
            if not isinstance(parent, JSFunction):
                self.throw("TypeError", "class extends value is not a constructor")
            parent_proto = self.get(parent, "prototype")
        else:
            parent_proto = self.object_proto
        cls = JSFunction(parent if parent is not None else self.function_proto, n.value)
        cls.is_class = True
        cls.parent_class = parent
        cls.closure = env
        proto = JSObject(parent_proto)
        proto.props["constructor"] = cls
        cls.props["prototype"] = proto
        for m in n.children[1:]:
            fn = self.make_function(m, env)
            if m.value == "constructor" and not m.has(NodeFlag.STATIC):
                fn.home = proto
                fn.parent_class = parent
                fn.closure = env
                cls.ctor = fn
                fn.props["__class"] = cls
                continue
            if m.has(NodeFlag.STATIC):
                fn.home = cls
                cls.props[m.value] = fn
            else:
                fn.home = proto
                proto.props[m.value] = fn
        env_scope = env.find(n.value) or env
        env_scope.vars[n.value] = cls

    # -- expressions ------------------------------------------------------

    def lookup_name(self, name: str, env: Scope):
        s = env.find(name)
        if s is None:
            s = self.globals if name in self.globals.vars else None
            if s is None:
                self.throw("ReferenceError", f"{name} is not defined")
        return s.vars[name]

    def assign_name(self, name: str, value, env: Scope) -> None:
        s = env.find(name) or self.globals
        s.vars[name] = value

    def this_value(self, env: Scope):
        return env.this_scope().this

    def eval(self, n: Node, env: Scope):
        kind = n.kind
        ch = n.children
        if kind is K.IDENTIFIER:
            return self.lookup_name(n.value, env)
        if kind is K.NUMBER_LIT:
            return float(n.value) if n.value not in ("NaN", "Infinity") else float(n.value.lower()[:3])
        if kind is K.STRING_LIT:
            return n.value
        if kind is K.BOOL_LIT:
            return n.value == "true"
        if kind is K.NULL_LIT:
            return None
        if kind is K.UNDEFINED_LIT:
            return UNDEFINED
        if kind is K.THIS:
            return self.this_value(env)
        if kind is K.TEMPLATE_LIT:
            parts = []
            for i, part in enumerate(ch):
                parts.append(part.value if i % 2 == 0 else self.to_string(self.eval(part, env)))
            return "".join(parts)
        if kind is K.ARRAY_LIT:
            return self.array(self.eval_args(ch, env))
        if kind is K.OBJECT_LIT:
            o = self.obj()
            for p in ch:
                v = self.eval(p.children[0], env)
                if isinstance(v, JSFunction) and not v.name and p.children[0].kind in (K.FUNCTION_EXPR, K.ARROW_FUNCTION):
                    v.name = p.value
                o.props[p.value] = v
            return o
        if kind is K.FUNCTION_EXPR or kind is K.ARROW_FUNCTION:
            if kind is K.FUNCTION_EXPR and n.value:
                inner = Scope(env)
                f = self.make_function(n, inner)
                inner.vars[n.value] = f
                return f
            return self.make_function(n, env)
        if kind is K.ASSIGN:
            return self.eval_assign(n, env)
        if kind is K.CONDITIONAL:
            return self.eval(ch[1] if self.truthy(self.eval(ch[0], env)) else ch[2], env)
        if kind is K.NULLISH:
            left = self.eval(ch[0], env)
            return self.eval(ch[1], env) if left is None or left is UNDEFINED else left
        if kind is K.BINARY_OP:
            op = n.value
            if op == "&&":
                left = self.eval(ch[0], env)
                return self.eval(ch[1], env) if self.truthy(left) else left
            if op == "||":
                left = self.eval(ch[0], env)
                return left if self.truthy(left) else self.eval(ch[1], env)
            left = self.eval(ch[0], env)
            right = self.eval(ch[1], env)
            return self.binary(op, left, right)
        if kind is K.UNARY_OP:
            return self.eval_unary(n, env)
        if kind is K.CALL:
            return self.eval_call(n, env)[0]
        if kind is K.NEW:
            callee = self.eval(ch[0], env)
            return self.construct(callee, self.eval_args(ch[1:], env))
        if kind is K.MEMBER_ACCESS or kind is K.INDEX_ACCESS:
            return self.eval_chain(n, env)[0]
        if kind is K.OPTIONAL_CHAIN:
            return self.eval_chain(ch[0], env)[0]
        if kind is K.YIELD:
            value = self.eval(ch[0], env) if ch else UNDEFINED
            return self.suspend(value)
        if kind is K.AWAIT:
            return self.suspend(self.eval(ch[0], env))
        raise TypeError(f"cannot evaluate {kind.name}")

    def eval_args(self, nodes: list[Node], env: Scope) -> list:
        out = []
        for a in nodes:
            if a.kind is K.SPREAD:
                out.extend(self.iterate(self.eval(a.children[0], env)))
            else:
                out.append(self.eval(a, env))
        return out

    def iterate(self, v) -> list:
        if isinstance(v, JSArray):
            return list(v.items)
        if isinstance(v, str):
            return list(v)
        if isinstance(v, JSObject):
            nxt = v.lookup("next")
            if isinstance(nxt, JSFunction):
                out = []
                while True:
                    step = self.call(nxt, v, [])
                    if self.truthy(self.get(step, "done")):
                        return out
                    out.append(self.get(step, "value"))
        self.throw("TypeError", f"{self.display(v)} is not iterable")

    # Member/call evaluation returning (value, this, short_circuited)
    _SHORT = object()

    def eval_chain(self, n: Node, env: Scope):
        """Evaluate a member/index/call link; returns (value, receiver)."""
        kind = n.kind
        if kind is K.MEMBER_ACCESS or kind is K.INDEX_ACCESS:
            obj_node = n.children[0]
            if obj_node.kind is K.SUPER:
                home = env.this_scope().home
                base = home.proto if home is not None else None
                key = n.value if kind is K.MEMBER_ACCESS else self.to_key(self.eval(n.children[1], env))
                value = base.lookup(key) if base is not None else UNDEFINED
                return value, self.this_value(env)
            obj, _ = self.eval_link_object(obj_node, env)
            if obj is self._SHORT:
                return UNDEFINED, self._SHORT
            if n.flags & NodeFlag.OPTIONAL and (obj is None or obj is UNDEFINED):
                return UNDEFINED, self._SHORT
            key = n.value if kind is K.MEMBER_ACCESS else self.to_key(self.eval(n.children[1], env))
            return self.get(obj, key), obj
        if kind is K.CALL:
            return self.eval_call(n, env)
        return self.eval(n, env), UNDEFINED

    def eval_link_object(self, n: Node, env: Scope):
        if n.kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS, K.CALL):
            value, recv = self.eval_chain(n, env)
            if recv is self._SHORT:
                return self._SHORT, None
            return value, recv
        return self.eval(n, env), UNDEFINED

    def eval_call(self, n: Node, env: Scope):
        callee_node = n.children[0]
        if callee_node.kind is K.SUPER:
            this = self.this_value(env)
            fscope = env.this_scope()
            ctor = fscope.func
            cls = ctor.props.get("__class") if ctor is not None else None
            self.super_construct(cls, this, self.eval_args(n.children[1:], env))
            return UNDEFINED, UNDEFINED
        if callee_node.kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS, K.CALL):
            fn, this = self.eval_chain(callee_node, env)
            if this is self._SHORT:
                return UNDEFINED, self._SHORT
            if callee_node.kind is K.CALL:
                this = UNDEFINED
        else:
            fn, this = self.eval(callee_node, env), UNDEFINED
        if n.flags & NodeFlag.OPTIONAL and (fn is None or fn is UNDEFINED):
            return UNDEFINED, self._SHORT
        args = self.eval_args(n.children[1:], env)
        return self.call(fn, this, args), UNDEFINED

    def eval_unary(self, n: Node, env: Scope):
        op = n.value
        operand = n.children[0]
        if op in ("++", "--"):
            old = self.to_number(self.eval(operand, env))
            new = old + 1 if op == "++" else old - 1
            self.store(operand, new, env)
            return old if n.flags & NodeFlag.POSTFIX else new
        if op == "typeof":
            if operand.kind is K.IDENTIFIER and env.find(operand.value) is None \
                    and operand.value not in self.globals.vars:
                return "undefined"
            return self.typeof(self.eval(operand, env))
        v = self.eval(operand, env)
        if op == "!":
            return not self.truthy(v)
        if op == "-":
            return -self.to_number(v)
        if op == "+":
            return self.to_number(v)
        if op == "void":
            return UNDEFINED
        raise TypeError(f"unknown unary operator {op}")

    def store(self, target: Node, value, env: Scope) -> None:
        if target.kind is K.IDENTIFIER:
            self.assign_name(target.value, value, env)
        elif target.kind is K.MEMBER_ACCESS:
            self.put(self.eval(target.children[0], env), target.value, value)
        elif target.kind is K.INDEX_ACCESS:
            obj = self.eval(target.children[0], env)
            self.put(obj, self.to_key(self.eval(target.children[1], env)), value)
        else:
            raise TypeError(f"invalid assignment target {target.kind.name}")

    def eval_assign(self, n: Node, env: Scope):
        target, rhs = n.children
        op = n.value
        if target.kind is K.IDENTIFIER:
            if op == "=":
                value = self.eval(rhs, env)
                if rhs.kind in (K.FUNCTION_EXPR, K.ARROW_FUNCTION) and isinstance(value, JSFunction) \
                        and not value.name:
                    value.name = target.value
            else:
                current = self.lookup_name(target.value, env)
                value = self.binary(op[:-1], current, self.eval(rhs, env))
            self.assign_name(target.value, value, env)
            return value
        obj = self.eval(target.children[0], env)
        if target.kind is K.MEMBER_ACCESS:
            key = target.value
        else:
            key = self.to_key(self.eval(target.children[1], env))
        if op == "=":
            value = self.eval(rhs, env)
        else:
            value = self.binary(op[:-1], self.get(obj, key), self.eval(rhs, env))
        self.put(obj, key, value)
        return value

    def binary(self, op: str, a, b):
        if op == "+":
            a, b = self.to_primitive(a), self.to_primitive(b)
            if isinstance(a, str) or isinstance(b, str):
                return self.to_string(a) + self.to_string(b)
            return self.to_number(a) + self.to_number(b)
        if op == "-":
            return self.to_number(a) - self.to_number(b)
        if op == "*":
            return js_mul(self.to_number(a), self.to_number(b))
        if op == "/":
            return js_div(self.to_number(a), self.to_number(b))
        if op == "%":
            x, y = self.to_number(a), self.to_number(b)
            if y == 0 or math.isinf(x) or math.isnan(x) or math.isnan(y):
                return math.nan
            if math.isinf(y):
                return x
            return math.fmod(x, y)
        if op == "**":
            return js_pow(self.to_number(a), self.to_number(b))
        if op == "===":
            return strict_equals(a, b)
        if op == "!==":
            return not strict_equals(a, b)
        if op == "==":
            return self.loose_equals(a, b)
        if op == "!=":
            return not self.loose_equals(a, b)
        if op in ("<", ">", "<=", ">="):
            return self.compare(op, a, b)
        if op == "instanceof":
            if not isinstance(b, JSFunction):
                self.throw("TypeError", "right-hand side of instanceof is not callable")
            proto = self.get(b, "prototype")
            o = a.proto if isinstance(a, JSObject) else None
            while o is not None:
                if o is proto:
                    return True
                o = o.proto
            return False
        if op == "in":
            if not isinstance(b, JSObject):
                self.throw("TypeError", "cannot use 'in' on a primitive")
            key = self.to_key(a)
            if isinstance(b, JSArray) and (key == "length" or (_is_index(key) and int(key) < len(b.items))):
                return True
            return b.has(key)
        raise TypeError(f"unknown binary operator {op}")

    def compare(self, op: str, a, b) -> bool:
        a, b = self.to_primitive(a, "number"), self.to_primitive(b, "number")
        if isinstance(a, str) and isinstance(b, str):
            x, y = a, b
        else:
            x, y = self.to_number(a), self.to_number(b)
            if math.isnan(x) or math.isnan(y):
                return False
        if op == "<":
            return x < y
        if op == ">":
            return x > y
        if op == "<=":
            return x <= y
        return x >= y

    def loose_equals(self, a, b) -> bool:
        nullish = (None, UNDEFINED)
        if a in nullish or b in nullish:
            return (a in nullish) and (b in nullish)
        if type(a) is type(b) or (isinstance(a, JSObject) and isinstance(b, JSObject)):
            return strict_equals(a, b)
        if isinstance(a, bool):
            return self.loose_equals(self.to_number(a), b)
        if isinstance(b, bool):
            return self.loose_equals(a, self.to_number(b))
        if isinstance(a, float) and isinstance(b, str):
            return a == self.to_number(b)
        if isinstance(a, str) and isinstance(b, float):
            return self.to_number(a) == b
        if isinstance(a, JSObject):
            return self.loose_equals(self.to_primitive(a), b)
        if isinstance(b, JSObject):
            return self.loose_equals(a, self.to_primitive(b))
        return False

    # -- entry ------------------------------------------------------------

    def run_script(self, script: ScriptNode) -> Outcome:
        out = Outcome(self.logs)
        env = self.globals
        try:
            self.hoist(script.root.children, env)
            self.exec_list(script.root.children, env)
            self.drain()
        except JSThrow as e:
            out.error = self.display(e.value)
        return out


class _Coroutine:
    """A function body suspended at `yield`/`await`, driven through a greenlet."""

    def __init__(self, interp: Interpreter, body: Node, env: Scope) -> None:
        self.interp = interp
        self.body = body
        self.env = env
        self.glet: Optional[greenlet.greenlet] = None
        self.done = False
        self.running = False

    def _run(self, mode, value):
        if mode == "throw":
            raise JSThrow(value)
        return ("return", self.interp.run_body(self.body, self.env))

    def switch(self, mode: str, value):
        """Resume; returns ("suspend", v) or ("return", v); raises JSThrow."""
        first = self.glet is None
        if first:
            self.glet = greenlet.greenlet(self._run)
        self.glet.parent = greenlet.getcurrent()
        self.running = True
        try:
            if first:
                return self.glet.switch(mode, value)
            return self.glet.switch((mode, value))
        finally:
            self.running = False

    def resume(self, mode: str, value) -> JSObject:
        """Generator protocol step producing an iterator result object."""
        interp = self.interp
        if self.running:
            interp.throw("TypeError", "generator is already running")
        if self.done:
            if mode == "throw":
                raise JSThrow(value)
            return interp.obj(value=UNDEFINED, done=True)
        try:
            kind, out = self.switch(mode, value)
        except JSThrow:
            self.done = True
            raise
        if kind == "return":
            self.done = True
            return interp.obj(value=out, done=True)
        return interp.obj(value=out, done=False)


def _is_index(key: str) -> bool:
    return key.isdigit() and (key == "0" or not key.startswith("0"))


def _clamp(start: int, end: int, length: int) -> tuple[int, int]:
    if start < 0:
        start = max(length + start, 0)
    if end < 0:
        end = max(length + end, 0)
    return min(start, length), min(end, length)


def strict_equals(a, b) -> bool:
    if isinstance(a, (JSObject, _Undefined)) or isinstance(b, (JSObject, _Undefined)) or a is None or b is None:
        return a is b
    if type(a) is not type(b):
        return False
    return a == b


def js_mul(x: float, y: float) -> float:
    try:
        return x * y
    except OverflowError:
        return math.inf


def js_div(x: float, y: float) -> float:
    if y == 0:
        if x == 0 or math.isnan(x):
            return math.nan
        sign = math.copysign(1, x) * math.copysign(1, y)
        return math.inf if sign > 0 else -math.inf
    return x / y


def js_pow(x: float, y: float) -> float:
    if math.isnan(y):
        return math.nan
    if y == 0:
        return 1.0
    if math.isnan(x):
        return math.nan
    if abs(x) == 1 and math.isinf(y):
        return math.nan
    try:
        return math.pow(x, y)
    except ValueError:
        return math.nan
    except OverflowError:
        if x < 0 and float(y).is_integer() and int(y) % 2 == 1:
            return -math.inf
        return math.inf


def run(program, max_steps: int = 2_000_000) -> Outcome:
    """Run source text (or a parsed script) and return its observable outcome."""
    if isinstance(program, str):
        program = parse(program, "<eval>", allow_reserved=True)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        return Interpreter(max_steps).run_script(program)
    finally:
        sys.setrecursionlimit(old)
