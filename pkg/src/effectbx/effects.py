"""Pluggable effect families and their meta-checks.

An effect family packages one notion of effect as first-class data: how to
inject a pure value (``unit``), how to sequence (``bind``), an optional zero
that absorbs sequencing, and a decidable equality on effect values over finite
carriers.  Families also know how to enumerate their own effect values over a
finite domain, which is what makes exhaustive law checking possible.

Shipped families: identity, failure, finite choice, reader, writer (unbounded
or bounded drop-oldest log), scripted console, and a native-state family used
by the data-refinement construction.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .errors import ScriptExhausted, UnobservableEffect
from .lawcheck import (
    FiniteDomain,
    Law,
    LawReport,
    enumerate_functions,
    run_laws,
)


@dataclass(frozen=True)
class EffectFamily:
    """A named, pluggable notion of effect.

    ``equal`` receives a result-equality callback and is total only for
    families with finite observability.  ``enumerate_contexts`` lists the
    observation contexts equality quantifies over (environments for reader,
    input scripts for console); ``enumerate_values`` yields a deterministic
    finite listing of effect values over a given carrier, used by the law
    checker.  ``outcomes`` extracts the observable results of an effect value
    (all branches for choice, zero or one for failure, one per context for
    reader/console).
    """

    name: str
    unit: Callable[[Any], Any]
    bind: Callable[[Any, Callable[[Any], Any]], Any]
    zero: Any = None
    equal: Optional[Callable[[Any, Any, Callable[[Any, Any], bool]], bool]] = None
    enumerate_contexts: Optional[tuple] = None
    enumerate_values: Optional[Callable[[FiniteDomain], tuple]] = None
    outcomes: Optional[Callable[[Any], tuple]] = None

    def __repr__(self):
        return f"EffectFamily({self.name})"

    def values_over(self, dom: FiniteDomain) -> tuple:
        if self.enumerate_values is None:
            raise UnobservableEffect(f"{self.name}: no value enumerator")
        return self.enumerate_values(dom)

    def equal_values(self, x, y, result_eq=operator.eq) -> bool:
        if self.equal is None:
            raise UnobservableEffect(f"{self.name}: no declared equality")
        return self.equal(x, y, result_eq)

    def outcomes_of(self, x) -> tuple:
        if self.outcomes is None:
            raise UnobservableEffect(f"{self.name}: no outcome extractor")
        return self.outcomes(x)

    def map(self, m, f):
        return self.bind(m, lambda a: self.unit(f(a)))

    def then(self, m, n):
        return self.bind(m, lambda _: n)

    def mapm(self, f, xs):
        """Sequence ``f`` over ``xs`` left to right, collecting a tuple."""
        acc = self.unit(())
        for x in xs:
            acc = self.bind(acc, lambda ys, x=x: self.map(f(x), lambda y: ys + (y,)))
        return acc


# ---------------------------------------------------------------------------
# identity


def identity_family() -> EffectFamily:
    return EffectFamily(
        name="identity",
        unit=lambda a: a,
        bind=lambda m, k: k(m),
        equal=lambda x, y, eq: eq(x, y),
        enumerate_values=lambda dom: tuple(dom.elements),
        outcomes=lambda x: (x,),
    )


# ---------------------------------------------------------------------------
# failure


@dataclass(frozen=True)
class Just:
    value: Any

    def __repr__(self):
        return f"Just({self.value!r})"


class _Nothing:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Nothing"


NOTHING = _Nothing()


def failure_family() -> EffectFamily:
    def bind(m, k):
        return k(m.value) if isinstance(m, Just) else NOTHING

    def equal(x, y, eq):
        if isinstance(x, Just) and isinstance(y, Just):
            return eq(x.value, y.value)
        return x is NOTHING and y is NOTHING

    return EffectFamily(
        name="failure",
        unit=Just,
        bind=bind,
        zero=NOTHING,
        equal=equal,
        enumerate_values=lambda dom: (NOTHING,) + tuple(Just(a) for a in dom.elements),
        outcomes=lambda x: (x.value,) if isinstance(x, Just) else (),
    )


# ---------------------------------------------------------------------------
# finite choice (list monad; values are tuples of outcomes)


def choice_family(multiset: bool = False, value_lengths: int = 2) -> EffectFamily:
    """List-monad effect.  Equality is order-sensitive by default; pass
    ``multiset=True`` to compare outcome multisets instead."""

    def bind(m, k):
        out = ()
        for a in m:
            out = out + tuple(k(a))
        return out

    def equal(x, y, eq):
        if multiset:
            remaining = list(y)
            for a in x:
                for i, b in enumerate(remaining):
                    if eq(a, b):
                        del remaining[i]
                        break
                else:
                    return False
            return not remaining
        return len(x) == len(y) and all(eq(a, b) for a, b in zip(x, y))

    def enumerate_values(dom):
        values = [()]
        layer = [()]
        for _ in range(value_lengths):
            layer = [v + (a,) for v in layer for a in dom.elements]
            values.extend(layer)
        return tuple(values)

    return EffectFamily(
        name="choice" if not multiset else "choice-multiset",
        unit=lambda a: (a,),
        bind=bind,
        zero=(),
        equal=equal,
        enumerate_values=enumerate_values,
        outcomes=lambda x: tuple(x),
    )


# ---------------------------------------------------------------------------
# reader


def reader_family(contexts, name: str = "reader") -> EffectFamily:
    """Environment monad over a finite context set.  Effect values are
    functions from environment to result; equality is pointwise."""

    ctxs = tuple(contexts)

    def enumerate_values(dom):
        env_dom = FiniteDomain("env", ctxs)
        return tuple(enumerate_functions(env_dom, dom))

    return EffectFamily(
        name=name,
        unit=lambda a: lambda _env: a,
        bind=lambda m, k: lambda env: k(m(env))(env),
        equal=lambda x, y, eq: all(eq(x(e), y(e)) for e in ctxs),
        enumerate_contexts=ctxs,
        enumerate_values=enumerate_values,
        outcomes=lambda x: tuple(x(e) for e in ctxs),
    )


def ask():
    """The reader primitive returning the environment."""
    return lambda env: env


# ---------------------------------------------------------------------------
# writer


def writer_family(bound: Optional[int] = None, labels=("w0", "w1")) -> EffectFamily:
    """Writer monad whose log monoid is finite sequences under concatenation.

    With ``bound=n`` the log keeps only the most recent ``n`` entries
    (drop-oldest); bounded sequences still form a monoid, so the monad laws
    survive.  ``labels`` seeds the log alphabet used when enumerating values.
    """

    def cat(w1, w2):
        w = w1 + w2
        return w if bound is None else w[len(w) - bound:] if len(w) > bound else w

    def bind(m, k):
        a, w1 = m
        b, w2 = k(a)
        return (b, cat(w1, w2))

    def enumerate_values(dom):
        logs = [()] + [(x,) for x in labels]
        return tuple((a, w) for a in dom.elements for w in logs)

    return EffectFamily(
        name="writer" if bound is None else f"writer<={bound}",
        unit=lambda a: (a, ()),
        bind=bind,
        equal=lambda x, y, eq: eq(x[0], y[0]) and x[1] == y[1],
        enumerate_values=enumerate_values,
        outcomes=lambda x: (x[0],),
    )


def tell(entries):
    """Writer primitive appending ``entries`` (a tuple) to the log."""
    return ((), tuple(entries))


# ---------------------------------------------------------------------------
# scripted console


class ConsoleWorld:
    """Deterministic substitute for terminal interaction.

    Holds a queue of pending input lines and an append-only transcript of
    ``("out", text)`` / ``("in", text)`` entries.  Reading from an empty queue
    raises ScriptExhausted unless the world is interactive, in which case it
    reads a line from the real terminal (the CLI is the only creator of
    interactive worlds).
    """

    def __init__(self, script=(), interactive: bool = False):
        self.pending = list(script)
        self.transcript = []
        self.interactive = interactive

    def write(self, text: str):
        self.transcript.append(("out", text))
        if self.interactive:
            print(text)

    def read(self) -> str:
        if self.pending:
            line = self.pending.pop(0)
        elif self.interactive:
            line = input()
        else:
            raise ScriptExhausted("console script exhausted")
        self.transcript.append(("in", line))
        return line

    def snapshot(self):
        return (tuple(self.pending), tuple(self.transcript))


def console_write(text: str):
    def run(world: ConsoleWorld):
        world.write(text)
        return ()

    return run


def console_read():
    return lambda world: world.read()


def console_family(scripts=((),)) -> EffectFamily:
    """Console effect: values are functions ConsoleWorld -> result.

    Equality runs both values against every input script in ``scripts`` and
    demands identical results, identical remaining input and identical
    transcripts; a read past the end of a script is itself an observation that
    both sides must share.
    """

    scripts = tuple(tuple(s) for s in scripts)

    def observe(m, script):
        world = ConsoleWorld(script)
        try:
            result = m(world)
        except ScriptExhausted:
            return ("exhausted", world.snapshot())
        return (result, world.snapshot())

    def equal(x, y, eq):
        for script in scripts:
            rx, wx = observe(x, script)
            ry, wy = observe(y, script)
            if wx != wy:
                return False
            if rx == "exhausted" or ry == "exhausted":
                if not (rx == "exhausted" and ry == "exhausted"):
                    return False
            elif not eq(rx, ry):
                return False
        return True

    def enumerate_values(dom):
        values = []
        for a in dom.elements:
            values.append(_ConsoleValue(f"unit({a!r})", lambda w, a=a: a))
        for a in dom.elements:
            values.append(
                _ConsoleValue(
                    f"write;unit({a!r})", lambda w, a=a: (w.write("x"), a)[1]
                )
            )
        for a in dom.elements:
            values.append(
                _ConsoleValue(f"read;unit({a!r})", lambda w, a=a: (w.read(), a)[1])
            )
        return tuple(values)

    def outcomes(x):
        out = []
        for script in scripts:
            r, _ = observe(x, script)
            if r != "exhausted":
                out.append(r)
        return tuple(out)

    return EffectFamily(
        name="console",
        unit=lambda a: lambda world: a,
        bind=lambda m, k: lambda world: k(m(world))(world),
        equal=equal,
        enumerate_contexts=scripts,
        enumerate_values=enumerate_values,
        outcomes=outcomes,
    )


def _console_unit(a):
    def run(world):
        return a

    run._label = f"unit({a!r})"
    return run


def _console_write_then(a):
    def run(world):
        world.write("x")
        return a

    run._label = f"write;unit({a!r})"
    return run


def _console_read_then(a):
    def run(world):
        world.read()
        return a

    run._label = f"read;unit({a!r})"
    return run


def console_run(comp, script):
    """Run a console-effect value against an input script.

    Returns ``(result, transcript)``; rerunning with the same script is
    bit-identical.  Raises ScriptExhausted if the computation reads past the
    script.
    """
    world = ConsoleWorld(tuple(script))
    result = comp(world)
    return result, tuple(world.transcript)


def load_console_script(path) -> tuple:
    """Read an input script from a plain-text file: one input line per line,
    UTF-8, no trailing-newline entry."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.endswith("\n"):
        text = text[:-1]
    return tuple(text.split("\n")) if text else ()


def transcript_records(transcript):
    """Serialize a transcript as a list of {dir, text} records."""
    return [{"dir": direction, "text": text} for direction, text in transcript]


# ---------------------------------------------------------------------------
# native state (base effect for the data-refinement construction)


@dataclass(frozen=True)
class NativeStateOps:
    """A base effect family owning mutable state natively: ``get_value`` is an
    effect value returning the state, ``set_value(s)`` replaces it."""

    family: EffectFamily
    get_value: Any
    set_value: Callable[[Any], Any]
    state_domain: FiniteDomain


def native_state_family(state_domain: FiniteDomain) -> NativeStateOps:
    states = tuple(state_domain.elements)

    def bind(m, k):
        def run(s):
            a, s1 = m(s)
            return k(a)(s1)

        return run

    def equal(x, y, eq):
        return all(
            eq(x(s)[0], y(s)[0]) and x(s)[1] == y(s)[1] for s in states
        )

    def enumerate_values(dom):
        pair_dom = FiniteDomain(
            "pairs", tuple((a, s) for a in dom.elements for s in states)
        )
        fns = enumerate_functions(state_domain, pair_dom)
        return tuple(fn for fn in fns)

    fam = EffectFamily(
        name="native-state",
        unit=lambda a: lambda s: (a, s),
        bind=bind,
        equal=equal,
        enumerate_contexts=states,
        enumerate_values=enumerate_values,
        outcomes=lambda x: tuple(x(s)[0] for s in states),
    )
    return NativeStateOps(
        family=fam,
        get_value=lambda s: (s, s),
        set_value=lambda s1: (lambda s: ((), s1)),
        state_domain=state_domain,
    )


# ---------------------------------------------------------------------------
# meta-checks: monad laws, zero absorption, commutativity, morphisms


def _continuations(fam: EffectFamily, dom: FiniteDomain):
    values = FiniteDomain(f"{fam.name}-values", fam.values_over(dom))
    return values, lambda _subject: enumerate_functions(dom, values)


def check_monad_laws(fam: EffectFamily, dom: FiniteDomain, cap=None, seed=0) -> LawReport:
    """Verify left unit, right unit and associativity (plus zero absorption
    when the family declares a zero) over all enumerated effect values and
    continuations built from ``dom``."""
    if fam.equal is None:
        raise UnobservableEffect(f"{fam.name}: cannot check laws without equality")
    values, conts = _continuations(fam, dom)

    laws = [
        Law(
            "left-unit",
            [("a", lambda _s: dom.elements), ("k", conts)],
            lambda _s, e: fam.bind(fam.unit(e["a"]), e["k"]),
            lambda _s, e: e["k"](e["a"]),
        ),
        Law(
            "right-unit",
            [("m", lambda _s: values.elements)],
            lambda _s, e: fam.bind(e["m"], fam.unit),
            lambda _s, e: e["m"],
        ),
        Law(
            "associativity",
            [
                ("m", lambda _s: values.elements),
                ("k1", conts),
                ("k2", conts),
            ],
            lambda _s, e: fam.bind(fam.bind(e["m"], e["k1"]), e["k2"]),
            lambda _s, e: fam.bind(e["m"], lambda x: fam.bind(e["k1"](x), e["k2"])),
        ),
    ]
    if fam.zero is not None:
        laws.append(
            Law(
                "zero-left",
                [("k", conts)],
                lambda _s, e: fam.bind(fam.zero, e["k"]),
                lambda _s, e: fam.zero,
            )
        )
        laws.append(
            Law(
                "zero-right",
                [("m", lambda _s: values.elements)],
                lambda _s, e: fam.bind(e["m"], lambda _x: fam.zero),
                lambda _s, e: fam.zero,
            )
        )
    return run_laws(
        f"monad-laws[{fam.name}/{dom.name}]", laws, None, fam.equal_values,
        cap=cap, seed=seed, effect=fam.name,
    )


def check_commutative(fam: EffectFamily, dom_a: FiniteDomain, dom_b: FiniteDomain,
                      cap=None, seed=0) -> LawReport:
    """Check the swap law for every pair of enumerated effect values."""
    if fam.equal is None:
        raise UnobservableEffect(f"{fam.name}: cannot check laws without equality")
    ms = fam.values_over(dom_a)
    ns = fam.values_over(dom_b)
    law = Law(
        "commute",
        [("m", lambda _s: ms), ("n", lambda _s: ns)],
        lambda _s, e: fam.bind(e["m"], lambda x: fam.map(e["n"], lambda y: (x, y))),
        lambda _s, e: fam.bind(e["n"], lambda y: fam.map(e["m"], lambda x: (x, y))),
    )
    return run_laws(
        f"commutativity[{fam.name}]", [law], None, fam.equal_values,
        cap=cap, seed=seed, effect=fam.name,
    )


def check_monad_morphism(phi, src: EffectFamily, dst: EffectFamily,
                         dom: FiniteDomain, cap=None, seed=0) -> LawReport:
    """Verify that ``phi`` preserves unit and distributes over bind."""
    if dst.equal is None:
        raise UnobservableEffect(f"{dst.name}: cannot check laws without equality")
    values, conts = _continuations(src, dom)
    laws = [
        Law(
            "preserves-unit",
            [("a", lambda _s: dom.elements)],
            lambda _s, e: phi(src.unit(e["a"])),
            lambda _s, e: dst.unit(e["a"]),
        ),
        Law(
            "preserves-bind",
            [("m", lambda _s: values.elements), ("k", conts)],
            lambda _s, e: phi(src.bind(e["m"], e["k"])),
            lambda _s, e: dst.bind(phi(e["m"]), lambda a: phi(e["k"](a))),
        ),
    ]
    return run_laws(
        f"monad-morphism[{src.name}->{dst.name}]", laws, None, dst.equal_values,
        cap=cap, seed=seed, effect=dst.name,
    )
