"""Finite semantics: monotone function hierarchy over the two-point lattice.

The ground domain is {bot, top} with bot < top; the domain at s -> t is
every monotone map from the domain at s to the domain at t, ordered
pointwise.  Bottom constants denote the least element, and the fixed
point constant denotes the least-fixed-point operator, computed by
iterating from bottom until the value stabilizes.

Elements carry a dual representation.  A closure form applies lazily,
so evaluation and the test/probe construction never enumerate anything.
Extensional equality (needed by the fixed-point iteration) forces a
memoized table over the enumerated argument domain; only then can
DomainTooLarge arise.  An element's key is its fully forced table tree,
a nested tuple of booleans, and two elements are equal when their types
and keys agree.

Domains are enumerated once per process and cached; insertion holds a
lock, so concurrent readers are safe.  The canonical element order is
lexicographic on tables over the canonically ordered argument domain,
which is always a linear extension of the pointwise order; consequently
index 0 is the least element and the last index the greatest.

Chain heights multiply out: the longest chain in the domain at
t1 -> ... -> tn -> o makes one strict step at a time, so its length is
the product of the argument domain sizes.  This lets height() answer for
types whose own domain is far too large to enumerate, as long as the
argument domains are small; those are exactly the types at which
fixed-point stabilization is checkable, so height and lfp fail together.
"""

from __future__ import annotations

import threading
from typing import Callable, Mapping

from .terms import App, Lam, OmegaConst, Term, Var, YConst, type_of
from .types import (
    GROUND,
    Arrow,
    SimpleType,
    argument_types,
    arrow,
    type_to_str,
)

DEFAULT_SIZE_LIMIT = 5_000_000

_default_size_limit = DEFAULT_SIZE_LIMIT


def set_default_size_limit(limit: int) -> None:
    """Set the session-wide enumeration bound used when no limit is passed."""
    global _default_size_limit
    if limit < 2:
        raise ValueError("size limit must be at least 2")
    _default_size_limit = limit


def default_size_limit() -> int:
    return _default_size_limit


class DomainTooLarge(Exception):
    def __init__(self, ty: SimpleType, estimate: str):
        super().__init__(
            f"domain at {type_to_str(ty)} exceeds the enumeration limit ({estimate} elements)"
        )
        self.ty = ty
        self.estimate = estimate


def key_leq(a, b) -> bool:
    if isinstance(a, bool):
        return (not a) or b
    return all(key_leq(x, y) for x, y in zip(a, b))


def key_join(a, b):
    if isinstance(a, bool):
        return a or b
    return tuple(key_join(x, y) for x, y in zip(a, b))


def render_key(key) -> str:
    if isinstance(key, bool):
        return "top" if key else "bot"
    return "[" + ", ".join(render_key(k) for k in key) + "]"


class Element:
    """A value in one of the finite domains.

    Ground elements hold a flag.  Arrow elements hold a closure, a
    memoized table, or both; when both are present they agree pointwise.
    """

    __slots__ = ("ty", "_flag", "_fn", "_table", "_key")

    def __init__(self, ty: SimpleType, flag=None, fn=None, table=None):
        self.ty = ty
        self._flag = flag
        self._fn = fn
        self._table = table
        self._key = None

    @staticmethod
    def of_bool(flag: bool) -> "Element":
        return Element(GROUND, flag=bool(flag))

    @staticmethod
    def closure(ty: Arrow, fn: Callable[["Element"], "Element"]) -> "Element":
        return Element(ty, fn=fn)

    @staticmethod
    def from_table(ty: Arrow, table: tuple["Element", ...]) -> "Element":
        return Element(ty, table=table)

    @property
    def flag(self) -> bool:
        if self._flag is None:
            raise ValueError(f"element of type {self.ty} is not ground")
        return self._flag

    def apply(self, arg: "Element") -> "Element":
        if self._fn is not None:
            return self._fn(arg)
        if self._table is not None:
            dom = enumerate_domain(self.ty.domain)
            return self._table[dom.index_of_key(arg.key())]
        raise ValueError("ground element cannot be applied")

    def table(self) -> tuple["Element", ...]:
        """Force the full table; enumerates the argument domain."""
        if self._table is None:
            dom = enumerate_domain(self.ty.domain)
            self._table = tuple(self._fn(el) for el in dom.elements)
        return self._table

    def key(self):
        """Nested boolean tuple identifying the element extensionally."""
        if self._flag is not None:
            return self._flag
        if self._key is None:
            self._key = tuple(e.key() for e in self.table())
        return self._key

    def leq(self, other: "Element") -> bool:
        if self.ty != other.ty:
            raise ValueError("cannot compare elements of different types")
        return key_leq(self.key(), other.key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.ty == other.ty and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.ty, self.key()))

    def __repr__(self) -> str:
        return f"<element {render_key(self.key())} : {type_to_str(self.ty)}>"


def bottom_element(ty: SimpleType) -> Element:
    if ty == GROUND:
        return Element.of_bool(False)
    return Element.closure(ty, lambda _arg: bottom_element(ty.codomain))


def top_element(ty: SimpleType) -> Element:
    if ty == GROUND:
        return Element.of_bool(True)
    return Element.closure(ty, lambda _arg: top_element(ty.codomain))


class Domain:
    """A fully enumerated domain with its canonical element order."""

    __slots__ = ("ty", "elements", "keys", "_index")

    def __init__(self, ty: SimpleType, elements: tuple[Element, ...]):
        self.ty = ty
        self.elements = elements
        self.keys = tuple(el.key() for el in elements)
        self._index = {k: i for i, k in enumerate(self.keys)}

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def bottom_index(self) -> int:
        return 0

    @property
    def top_index(self) -> int:
        return len(self.elements) - 1

    def index_of_key(self, key) -> int:
        i = self._index.get(key)
        if i is None:
            raise ValueError(f"no element with key {render_key(key)} in domain {self.ty}")
        return i

    def index_of(self, el: Element) -> int:
        return self.index_of_key(el.key())

    def leq(self, i: int, j: int) -> bool:
        return key_leq(self.keys[i], self.keys[j])

    def covers(self) -> list[tuple[int, int]]:
        """Edges of the Hasse diagram as (lower, upper) index pairs."""
        n = len(self.elements)
        out = []
        for i in range(n):
            ups = [j for j in range(n) if j != i and self.leq(i, j)]
            for j in ups:
                if not any(k != j and self.leq(k, j) for k in ups):
                    out.append((i, j))
        return sorted(out)


_domain_cache: dict[SimpleType, Domain] = {}
_cache_lock = threading.Lock()


def clear_domain_cache() -> None:
    with _cache_lock:
        _domain_cache.clear()


def enumerate_domain(ty: SimpleType, size_limit: int | None = None) -> Domain:
    """The full domain at ty, cached per process.

    Raises DomainTooLarge when more than size_limit elements would be
    produced (the default limit is session-wide, see
    set_default_size_limit).
    """
    limit = size_limit if size_limit is not None else _default_size_limit
    cached = _domain_cache.get(ty)
    if cached is not None:
        if len(cached) > limit:
            raise DomainTooLarge(ty, str(len(cached)))
        return cached
    if ty == GROUND:
        dom = Domain(ty, (Element.of_bool(False), Element.of_bool(True)))
    else:
        dom = _enumerate_arrow(ty, limit)
    assert not _key_has_top_bit(dom.keys[0]), "least element must come first"
    assert _key_all_top(dom.keys[-1]), "greatest element must come last"
    with _cache_lock:
        return _domain_cache.setdefault(ty, dom)


def _key_has_top_bit(key) -> bool:
    if isinstance(key, bool):
        return key
    return any(_key_has_top_bit(k) for k in key)


def _key_all_top(key) -> bool:
    if isinstance(key, bool):
        return key
    return all(_key_all_top(k) for k in key)


def _enumerate_arrow(ty: Arrow, limit: int) -> Domain:
    dom = enumerate_domain(ty.domain, limit)
    cod = enumerate_domain(ty.codomain, limit)
    n, m = len(dom), len(cod)
    # The canonical order is a linear extension, so while filling positions
    # left to right only earlier positions can lie below the current one.
    preds = [[j for j in range(i) if dom.leq(j, i)] for i in range(n)]
    bottom_key = cod.keys[0]

    tables: list[tuple[int, ...]] = []
    assigned: list[int] = []

    def candidates() -> range | list[int]:
        i = len(assigned)
        lb = bottom_key
        for j in preds[i]:
            lb = key_join(lb, cod.keys[assigned[j]])
        return [v for v in range(m) if key_leq(lb, cod.keys[v])]

    stack = [iter(candidates())]
    while stack:
        v = next(stack[-1], None)
        if v is None:
            stack.pop()
            if assigned:
                assigned.pop()
            continue
        assigned.append(v)
        if len(assigned) == n:
            tables.append(tuple(assigned))
            if len(tables) > limit:
                raise DomainTooLarge(ty, f"more than {limit}")
            assigned.pop()
        else:
            stack.append(iter(candidates()))

    elements = tuple(
        Element.from_table(ty, tuple(cod.elements[v] for v in row)) for row in tables
    )
    return Domain(ty, elements)


def cardinality(ty: SimpleType, size_limit: int | None = None) -> int:
    return len(enumerate_domain(ty, size_limit))


def height(ty: SimpleType, size_limit: int | None = None) -> int:
    """Number of strict steps in the longest ascending chain of the domain.

    Computed as the product of the argument domain sizes (see the module
    docstring); the ground height is 1.
    """
    h = 1
    for a in argument_types(ty):
        h *= cardinality(a, size_limit)
    return h


def lfp(f: Element) -> Element:
    """Least fixed point of a monotone f by iteration from bottom.

    Stabilization is detected extensionally, so the argument domains of
    f's recursion type must be enumerable.
    """
    if not (isinstance(f.ty, Arrow) and f.ty.domain == f.ty.codomain):
        raise ValueError(f"lfp needs an element of type s -> s, got {f.ty}")
    x = bottom_element(f.ty.domain)
    while True:
        y = f.apply(x)
        if y == x:
            return x
        x = y


Environment = Mapping[str, Element]


def eval_term(t: Term, env: Environment | None = None) -> Element:
    """Denotation of a term; env supplies elements for free variables."""
    bound: dict[str, Element] = dict(env) if env else {}
    ctx = {name: el.ty for name, el in bound.items()}
    type_of(t, ctx)
    return _ev(t, bound, ctx)


def _ev(t: Term, env: dict[str, Element], ctx: dict[str, SimpleType]) -> Element:
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Lam):
        inner_ctx = dict(ctx)
        inner_ctx[t.var] = t.var_ty
        body_ty = type_of(t.body, inner_ctx)

        def fn(arg: Element) -> Element:
            inner_env = dict(env)
            inner_env[t.var] = arg
            return _ev(t.body, inner_env, inner_ctx)

        return Element.closure(Arrow(t.var_ty, body_ty), fn)
    if isinstance(t, App):
        return _ev(t.fun, env, ctx).apply(_ev(t.arg, env, ctx))
    if isinstance(t, OmegaConst):
        return bottom_element(t.ty)
    if isinstance(t, YConst):
        sigma = t.ty
        return Element.closure(Arrow(Arrow(sigma, sigma), sigma), lfp)
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Test and probe elements.  test_t(s) applies its argument to one probe
# per argument type; probe_s(s) answers the conjunction of the tests of
# the arguments it receives.  At ground type the test is the identity
# and the probe is top.  The head variants replace every probe by top,
# which weakens the test to head availability.

_test_cache: dict[SimpleType, Element] = {}
_probe_cache: dict[SimpleType, Element] = {}
_head_test_cache: dict[SimpleType, Element] = {}
_head_probe_cache: dict[SimpleType, Element] = {}


def test_t(ty: SimpleType) -> Element:
    """The normal-form test at ty, an element of type ty -> o."""
    el = _test_cache.get(ty)
    if el is None:
        probes = [probe_s(a) for a in argument_types(ty)]

        def fn(f: Element) -> Element:
            for p in probes:
                f = f.apply(p)
            return f

        el = _test_cache.setdefault(ty, Element.closure(Arrow(ty, GROUND), fn))
    return el


def probe_s(ty: SimpleType) -> Element:
    """The probe at ty, an element of the domain at ty."""
    el = _probe_cache.get(ty)
    if el is None:
        el = _probe_cache.setdefault(ty, _make_probe(ty, test_t))
    return el


def _make_probe(ty: SimpleType, test: Callable[[SimpleType], Element]) -> Element:
    args = argument_types(ty)
    if not args:
        return Element.of_bool(True)

    def stage(i: int, acc: bool) -> Element:
        def fn(x: Element, i=i, acc=acc) -> Element:
            acc2 = acc and test(args[i]).apply(x).flag
            if i + 1 == len(args):
                return Element.of_bool(acc2)
            return stage(i + 1, acc2)

        return Element.closure(arrow(args[i:], GROUND), fn)

    return stage(0, True)


def head_test_t(ty: SimpleType) -> Element:
    """The head-form test at ty: apply to top probes."""
    el = _head_test_cache.get(ty)
    if el is None:
        probes = [head_probe_s(a) for a in argument_types(ty)]

        def fn(f: Element) -> Element:
            for p in probes:
                f = f.apply(p)
            return f

        el = _head_test_cache.setdefault(ty, Element.closure(Arrow(ty, GROUND), fn))
    return el


def head_probe_s(ty: SimpleType) -> Element:
    """The head-form probe: ignores its arguments, i.e. the top element."""
    el = _head_probe_cache.get(ty)
    if el is None:
        el = _head_probe_cache.setdefault(ty, top_element(ty))
    return el


def is_monotone_element(el: Element) -> bool:
    """Hereditary monotonicity check; forces tables, so enumerable types only."""
    if el.ty == GROUND:
        return True
    dom = enumerate_domain(el.ty.domain)
    tab = el.table()
    n = len(dom)
    for i in range(n):
        for j in range(n):
            if i != j and dom.leq(i, j) and not key_leq(tab[i].key(), tab[j].key()):
                return False
    return all(is_monotone_element(entry) for entry in tab)


def render_element(el: Element) -> str:
    return render_key(el.key())


def dump_domain(dom: Domain) -> str:
    """Line-oriented dump: type, size, elements in canonical order, covers."""
    lines = [f"type {type_to_str(dom.ty)}", f"size {len(dom)}"]
    for i, key in enumerate(dom.keys):
        lines.append(f"element {i} {render_key(key)}")
    for i, j in dom.covers():
        lines.append(f"cover {i} {j}")
    return "\n".join(lines) + "\n"


__all__ = [
    "DEFAULT_SIZE_LIMIT",
    "Domain",
    "DomainTooLarge",
    "Element",
    "Environment",
    "bottom_element",
    "cardinality",
    "clear_domain_cache",
    "default_size_limit",
    "dump_domain",
    "enumerate_domain",
    "eval_term",
    "head_probe_s",
    "head_test_t",
    "height",
    "is_monotone_element",
    "key_join",
    "key_leq",
    "lfp",
    "probe_s",
    "render_element",
    "render_key",
    "set_default_size_limit",
    "test_t",
    "top_element",
]
