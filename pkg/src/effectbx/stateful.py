"""State-transformer computations: functions from a state to an effect value
over (result, state) pairs, interpreted in a pluggable effect family."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional

from .effects import EffectFamily, NativeStateOps
from .errors import BaseLawsViolated
from .lawcheck import (
    FiniteDomain,
    Law,
    LawReport,
    enumerate_functions,
    run_laws,
)


@dataclass(frozen=True)
class Stateful:
    """A computation ``run: S -> Eff((A, S))`` in a fixed effect family.

    Values are immutable and first-class; law checking compares them
    extensionally, pointwise over declared finite state domains.
    """

    effect: EffectFamily
    run: Callable[[Any], Any]

    def bind(self, k: Callable[[Any], "Stateful"]) -> "Stateful":
        fam = self.effect
        return Stateful(
            fam,
            lambda s: fam.bind(self.run(s), lambda pair: k(pair[0]).run(pair[1])),
        )

    def map(self, f) -> "Stateful":
        return self.bind(lambda a: st_unit(self.effect, f(a)))

    def then(self, m: "Stateful") -> "Stateful":
        return self.bind(lambda _a: m)


def st_unit(fam: EffectFamily, a) -> Stateful:
    return Stateful(fam, lambda s: fam.unit((a, s)))


def st_get(fam: EffectFamily) -> Stateful:
    return Stateful(fam, lambda s: fam.unit((s, s)))


def st_set(fam: EffectFamily, s1) -> Stateful:
    return Stateful(fam, lambda _s: fam.unit(((), s1)))


def st_gets(fam: EffectFamily, f) -> Stateful:
    return Stateful(fam, lambda s: fam.unit((f(s), s)))


def st_modify(fam: EffectFamily, f) -> Stateful:
    return Stateful(fam, lambda s: fam.unit(((), f(s))))


def st_eval(m: Stateful, s):
    """Project the result: ``do {(a, s') <- m s; return a}``."""
    return m.effect.bind(m.run(s), lambda pair: m.effect.unit(pair[0]))


def st_exec(m: Stateful, s):
    """Project the final state."""
    return m.effect.bind(m.run(s), lambda pair: m.effect.unit(pair[1]))


def st_lift(fam: EffectFamily, tvalue) -> Stateful:
    """Embed a base-effect value; preserves unit and bind (checked in the
    morphism suite)."""
    return Stateful(fam, lambda s: fam.bind(tvalue, lambda a: fam.unit((a, s))))


def stateful_equal(m1: Stateful, m2: Stateful, state_domain, result_eq=None) -> bool:
    """Extensional equality over a finite state domain: at every state the two
    effect values over (result, state) pairs must agree."""
    fam = m1.effect
    eq = result_eq or _pair_eq
    return all(fam.equal_values(m1.run(s), m2.run(s), eq) for s in state_domain)


def _pair_eq(p, q):
    return p == q


def enumerate_stateful(fam: EffectFamily, state_domain: FiniteDomain,
                       value_domain: FiniteDomain):
    """All checkable computations over ``state_domain`` returning values in
    ``value_domain``: every function from state to enumerated effect value."""
    pair_dom = FiniteDomain(
        f"{value_domain.name}x{state_domain.name}",
        tuple((a, s) for a in value_domain.elements for s in state_domain.elements),
    )
    eff_values = FiniteDomain(f"{fam.name}-vals", fam.values_over(pair_dom))
    fns = enumerate_functions(state_domain, eff_values)
    return tuple(Stateful(fam, fn) for fn in fns)


# ---------------------------------------------------------------------------
# law suites


def state_law_suite(fam: EffectFamily, state_domain: FiniteDomain,
                    value_domain: Optional[FiniteDomain] = None,
                    cap=None, seed=0) -> LawReport:
    """The four get/set laws, discardability of unused gets, and the two
    lifting-commutation equalities, exhaustively over the state domain."""
    get = st_get(fam)
    vdom = value_domain or state_domain

    def states(_subject):
        return state_domain.elements

    laws = [
        Law(
            "get-get",
            [("s", states)],
            lambda _t, e: get.bind(lambda a: get.map(lambda b: (a, b))).run(e["s"]),
            lambda _t, e: get.map(lambda a: (a, a)).run(e["s"]),
        ),
        Law(
            "set-get",
            [("x", states), ("s", states)],
            lambda _t, e: st_set(fam, e["x"]).then(get).run(e["s"]),
            lambda _t, e: st_set(fam, e["x"]).then(st_unit(fam, e["x"])).run(e["s"]),
        ),
        Law(
            "get-set",
            [("s", states)],
            lambda _t, e: get.bind(lambda a: st_set(fam, a)).run(e["s"]),
            lambda _t, e: st_unit(fam, ()).run(e["s"]),
        ),
        Law(
            "set-set",
            [("x", states), ("y", states), ("s", states)],
            lambda _t, e: st_set(fam, e["x"]).then(st_set(fam, e["y"])).run(e["s"]),
            lambda _t, e: st_set(fam, e["y"]).run(e["s"]),
        ),
        Law(
            "unused-get-discardable",
            [
                ("m", lambda _t: enumerate_stateful(fam, state_domain, vdom)),
                ("s", states),
            ],
            lambda _t, e: get.bind(lambda _a: e["m"]).run(e["s"]),
            lambda _t, e: e["m"].run(e["s"]),
        ),
        Law(
            "lift-commutes-with-get",
            [("tv", lambda _t: fam.values_over(vdom)), ("s", states)],
            lambda _t, e: get.bind(
                lambda a: st_lift(fam, e["tv"]).map(lambda b: (a, b))
            ).run(e["s"]),
            lambda _t, e: st_lift(fam, e["tv"]).bind(
                lambda b: get.map(lambda a: (a, b))
            ).run(e["s"]),
        ),
        Law(
            "lift-commutes-with-set",
            [
                ("x", states),
                ("tv", lambda _t: fam.values_over(vdom)),
                ("s", states),
            ],
            lambda _t, e: st_set(fam, e["x"]).then(st_lift(fam, e["tv"])).run(e["s"]),
            lambda _t, e: st_lift(fam, e["tv"])
            .bind(lambda b: st_set(fam, e["x"]).then(st_unit(fam, b)))
            .run(e["s"]),
        ),
    ]
    return run_laws(
        f"state-laws[{fam.name}/{state_domain.name}]", laws, None,
        lambda x, y: fam.equal_values(x, y, _pair_eq), cap=cap, seed=seed,
        effect=fam.name,
    )


def check_lift_morphism(fam: EffectFamily, state_domain: FiniteDomain,
                        value_domain: FiniteDomain, cap=None, seed=0) -> LawReport:
    """st_lift preserves unit and bind, pointwise over states."""
    eff_values = FiniteDomain(f"{fam.name}-vals", fam.values_over(value_domain))
    conts = enumerate_functions(value_domain, eff_values)
    laws = [
        Law(
            "lift-preserves-unit",
            [("a", lambda _t: value_domain.elements),
             ("s", lambda _t: state_domain.elements)],
            lambda _t, e: st_lift(fam, fam.unit(e["a"])).run(e["s"]),
            lambda _t, e: st_unit(fam, e["a"]).run(e["s"]),
        ),
        Law(
            "lift-preserves-bind",
            [
                ("tv", lambda _t: fam.values_over(value_domain)),
                ("k", lambda _t: conts),
                ("s", lambda _t: state_domain.elements),
            ],
            lambda _t, e: st_lift(fam, fam.bind(e["tv"], e["k"])).run(e["s"]),
            lambda _t, e: st_lift(fam, e["tv"])
            .bind(lambda a: st_lift(fam, e["k"](a)))
            .run(e["s"]),
        ),
    ]
    return run_laws(
        f"lift-morphism[{fam.name}]", laws, None,
        lambda x, y: fam.equal_values(x, y, _pair_eq), cap=cap, seed=seed,
        effect=fam.name,
    )


# ---------------------------------------------------------------------------
# data refinement from a base effect with native state operations


def data_refinement(base: NativeStateOps, value_domain: Optional[FiniteDomain] = None):
    """Build the simulation pair (conc, abs) between a base effect owning
    native state and its state-transformed form.

    ``conc`` turns a base-effect value into a computation that keeps the outer
    state copy synchronised with the native one; ``abs`` runs a computation on
    the natively stored state and stores the final state back.  The base ops
    must satisfy the get-get, get-set and set-get laws; BaseLawsViolated
    identifies the failing law otherwise.
    """
    fam = base.family
    states = base.state_domain

    report = _base_state_laws(base)
    for result in report.laws:
        if not result.ok:
            raise BaseLawsViolated(result.name, result.failures[0])

    def conc(tvalue) -> Stateful:
        return Stateful(
            fam,
            lambda _s: fam.bind(
                tvalue, lambda a: fam.map(base.get_value, lambda s1: (a, s1))
            ),
        )

    def abs_(m: Stateful):
        return fam.bind(
            base.get_value,
            lambda s: fam.bind(
                m.run(s),
                lambda pair: fam.map(base.set_value(pair[1]), lambda _u: pair[0]),
            ),
        )

    return conc, abs_


def _base_state_laws(base: NativeStateOps, cap=None, seed=0) -> LawReport:
    fam = base.family
    get_v = base.get_value

    def eq(x, y):
        return fam.equal_values(x, y)

    states = lambda _t: base.state_domain.elements
    laws = [
        Law(
            "get-get",
            [],
            lambda _t, e: fam.bind(get_v, lambda s: fam.map(get_v, lambda s1: (s, s1))),
            lambda _t, e: fam.map(get_v, lambda s: (s, s)),
        ),
        Law(
            "set-get",
            [("x", states)],
            lambda _t, e: fam.then(base.set_value(e["x"]), get_v),
            lambda _t, e: fam.then(base.set_value(e["x"]), fam.unit(e["x"])),
        ),
        Law(
            "get-set",
            [],
            lambda _t, e: fam.bind(get_v, base.set_value),
            lambda _t, e: fam.unit(()),
        ),
    ]
    return run_laws(f"base-state-laws[{fam.name}]", laws, None, eq, cap=cap, seed=seed)
