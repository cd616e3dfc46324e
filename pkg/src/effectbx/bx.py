"""The bidirectional interface: two entangled views over a hidden state, with
get/set per side, and the law suites that decide well-behavedness,
overwritability, stability, transparency and initialization."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Callable, Optional

from .effects import EffectFamily, identity_family
from .errors import UnobservableEffect
from .lawcheck import FiniteDomain, Law, LawReport, run_laws
from .lenses import Lens
from .stateful import Stateful, st_get, st_gets, st_set, st_unit


@dataclass(frozen=True, kw_only=True)
class Bx:
    """A bx between views A and B over hidden state S.

    ``get_l``/``get_r`` are computations returning the view; ``set_l``/
    ``set_r`` accept a new view value and restore consistency, possibly with
    effects.  The finite domains make the instance checkable; they may be
    declared larger than the reachable state set.
    """

    name: str
    effect: EffectFamily
    get_l: Stateful
    set_l: Callable[[Any], Stateful]
    get_r: Stateful
    set_r: Callable[[Any], Stateful]
    state_domain: Optional[FiniteDomain] = None
    dom_a: Optional[FiniteDomain] = None
    dom_b: Optional[FiniteDomain] = None

    def renamed(self, name: str) -> "Bx":
        return replace(self, name=name)

    def with_domains(self, state_domain=None, dom_a=None, dom_b=None) -> "Bx":
        return replace(
            self,
            state_domain=state_domain or self.state_domain,
            dom_a=dom_a or self.dom_a,
            dom_b=dom_b or self.dom_b,
        )


@dataclass(frozen=True, kw_only=True)
class InitBx(Bx):
    """A bx with initializers building a starting state from either view
    (effect values over the state type)."""

    init_l: Callable[[Any], Any]
    init_r: Callable[[Any], Any]


def _states(bx):
    return bx.state_domain.elements


def _views_a(bx):
    return bx.dom_a.elements


def _views_b(bx):
    return bx.dom_b.elements


def _value_eq(bx):
    return lambda x, y: bx.effect.equal_values(x, y)


def seven_laws():
    """The well-behavedness suite: get/get, set/get and get/set per side plus
    cross-side get commutation."""
    return [
        Law(
            "get_l-get_l",
            [("s", _states)],
            lambda t, e: t.get_l.bind(lambda a: t.get_l.map(lambda a2: (a, a2))).run(e["s"]),
            lambda t, e: t.get_l.map(lambda a: (a, a)).run(e["s"]),
        ),
        Law(
            "set_l-get_l",
            [("a", _views_a), ("s", _states)],
            lambda t, e: t.set_l(e["a"]).then(t.get_l).run(e["s"]),
            lambda t, e: t.set_l(e["a"]).then(st_unit(t.effect, e["a"])).run(e["s"]),
        ),
        Law(
            "get_l-set_l",
            [("s", _states)],
            lambda t, e: t.get_l.bind(t.set_l).run(e["s"]),
            lambda t, e: st_unit(t.effect, ()).run(e["s"]),
        ),
        Law(
            "get_r-get_r",
            [("s", _states)],
            lambda t, e: t.get_r.bind(lambda b: t.get_r.map(lambda b2: (b, b2))).run(e["s"]),
            lambda t, e: t.get_r.map(lambda b: (b, b)).run(e["s"]),
        ),
        Law(
            "set_r-get_r",
            [("b", _views_b), ("s", _states)],
            lambda t, e: t.set_r(e["b"]).then(t.get_r).run(e["s"]),
            lambda t, e: t.set_r(e["b"]).then(st_unit(t.effect, e["b"])).run(e["s"]),
        ),
        Law(
            "get_r-set_r",
            [("s", _states)],
            lambda t, e: t.get_r.bind(t.set_r).run(e["s"]),
            lambda t, e: st_unit(t.effect, ()).run(e["s"]),
        ),
        Law(
            "get_l-get_r",
            [("s", _states)],
            lambda t, e: t.get_l.bind(lambda a: t.get_r.map(lambda b: (a, b))).run(e["s"]),
            lambda t, e: t.get_r.bind(lambda b: t.get_l.map(lambda a: (a, b))).run(e["s"]),
        ),
    ]


SEVEN_LAW_NAMES = tuple(law.name for law in seven_laws())


def check_seven_laws(bx: Bx, cap=None, seed=0) -> LawReport:
    return run_laws(
        bx.name, seven_laws(), bx, _value_eq(bx), cap=cap, seed=seed,
        effect=bx.effect.name,
    )


def overwritable_laws():
    return [
        Law(
            "set_l-set_l",
            [("a", _views_a), ("a2", _views_a), ("s", _states)],
            lambda t, e: t.set_l(e["a"]).then(t.set_l(e["a2"])).run(e["s"]),
            lambda t, e: t.set_l(e["a2"]).run(e["s"]),
        ),
        Law(
            "set_r-set_r",
            [("b", _views_b), ("b2", _views_b), ("s", _states)],
            lambda t, e: t.set_r(e["b"]).then(t.set_r(e["b2"])).run(e["s"]),
            lambda t, e: t.set_r(e["b2"]).run(e["s"]),
        ),
    ]


def check_overwritable(bx: Bx, cap=None, seed=0) -> LawReport:
    """A later set fully overwrites an earlier one, on both sides."""
    return run_laws(
        f"{bx.name}:overwritable", overwritable_laws(), bx, _value_eq(bx),
        cap=cap, seed=seed, effect=bx.effect.name,
    )


# ---------------------------------------------------------------------------
# transparency


@dataclass(frozen=True)
class TransparencyAnalysis:
    transparent: bool
    read_l: Optional[dict]
    read_r: Optional[dict]
    opaque_states: tuple = ()
    resolve_l: Optional[Callable] = None
    resolve_r: Optional[Callable] = None

    def read_l_fn(self):
        return lambda s: self._read(self.read_l, self.resolve_l, s)

    def read_r_fn(self):
        return lambda s: self._read(self.read_r, self.resolve_r, s)

    def _read(self, table, resolve, s):
        hit = table.get(_hk(s))
        if hit is not None:
            return hit[1]
        # states reached outside the declared domain still resolve, as long
        # as the get stays a pure query there
        fresh = resolve(s) if resolve else None
        if fresh is None:
            raise UnobservableEffect(f"get is not a pure query at state {s!r}")
        return fresh[0]


def _hk(state):
    """States double as dict keys; fall back to repr for unhashables."""
    try:
        hash(state)
        return state
    except TypeError:
        return repr(state)


def analyze_transparency(bx: Bx) -> TransparencyAnalysis:
    """A bx is transparent when both gets are pure queries: at every state the
    get returns some view value with no base effect and no state change.  The
    extracted read maps are returned for transparent bx.

    Candidate view values come from the effect value's own outcomes (falling
    back to the declared view domain), then get is compared against the pure
    query returning that candidate.  Extraction assumes the family's unit is
    injective (true for every shipped family over non-empty carriers); a
    non-injective unit could make the extracted maps ambiguous.
    """
    if bx.state_domain is None:
        raise UnobservableEffect("transparency analysis needs a state domain")
    fam = bx.effect
    read_l, read_r = {}, {}
    opaque = []
    for s in bx.state_domain:
        a_hit = _extract_pure(fam, bx.get_l, s, bx.dom_a)
        b_hit = _extract_pure(fam, bx.get_r, s, bx.dom_b)
        if a_hit is None or b_hit is None:
            opaque.append(s)
            continue
        read_l[_hk(s)] = (s, a_hit[0])
        read_r[_hk(s)] = (s, b_hit[0])
    if opaque:
        return TransparencyAnalysis(False, None, None, tuple(opaque))
    return TransparencyAnalysis(
        True,
        read_l,
        read_r,
        resolve_l=lambda s: _extract_pure(fam, bx.get_l, s, bx.dom_a),
        resolve_r=lambda s: _extract_pure(fam, bx.get_r, s, bx.dom_b),
    )


def _extract_pure(fam, getter, s, dom):
    eff = getter.run(s)
    candidates = []
    if fam.outcomes is not None:
        for result in fam.outcomes_of(eff):
            candidates.append(result[0])
            break
    if dom is not None:
        candidates.extend(dom.elements)
    for v in candidates:
        if fam.equal_values(eff, fam.unit((v, s))):
            return (v,)
    return None


# ---------------------------------------------------------------------------
# consistency relation and stability


def consistent_pairs(bx: Bx):
    """All (a, b) pairs observable by reading both sides in sequence,
    collecting across nondeterministic outcomes; the consistency relation."""
    pairs = []
    probe = bx.get_l.bind(lambda a: bx.get_r.map(lambda b: (a, b)))
    for s in bx.state_domain:
        for result in bx.effect.outcomes_of(probe.run(s)):
            pair = result[0]
            if pair not in pairs:
                pairs.append(pair)
    return tuple(pairs)


def stability_laws(pairs):
    def pair_dom(_t):
        return pairs

    return [
        Law(
            "stable-set_l-first",
            [("p", pair_dom), ("s", _states)],
            lambda t, e: t.set_l(e["p"][0]).then(t.set_r(e["p"][1])).then(t.get_l).run(e["s"]),
            lambda t, e: t.set_l(e["p"][0]).then(t.set_r(e["p"][1]))
            .then(st_unit(t.effect, e["p"][0])).run(e["s"]),
        ),
        Law(
            "stable-set_r-first",
            [("p", pair_dom), ("s", _states)],
            lambda t, e: t.set_r(e["p"][1]).then(t.set_l(e["p"][0])).then(t.get_r).run(e["s"]),
            lambda t, e: t.set_r(e["p"][1]).then(t.set_l(e["p"][0]))
            .then(st_unit(t.effect, e["p"][1])).run(e["s"]),
        ),
    ]


def check_stability(bx: Bx, cap=None, seed=0) -> LawReport:
    """Every consistent pair survives setting its components in either order."""
    return run_laws(
        f"{bx.name}:stability", stability_laws(consistent_pairs(bx)), bx,
        _value_eq(bx), cap=cap, seed=seed, effect=bx.effect.name,
    )


# ---------------------------------------------------------------------------
# initialization


def init_laws():
    return [
        Law(
            "init_l-get_l",
            [("a", _views_a)],
            lambda t, e: t.effect.bind(t.init_l(e["a"]), lambda s: t.get_l.run(s)),
            lambda t, e: t.effect.bind(
                t.init_l(e["a"]), lambda s: t.effect.unit((e["a"], s))
            ),
        ),
        Law(
            "init_r-get_r",
            [("b", _views_b)],
            lambda t, e: t.effect.bind(t.init_r(e["b"]), lambda s: t.get_r.run(s)),
            lambda t, e: t.effect.bind(
                t.init_r(e["b"]), lambda s: t.effect.unit((e["b"], s))
            ),
        ),
    ]


def check_init_laws(bx: InitBx, cap=None, seed=0) -> LawReport:
    """Initialising then getting yields the initialised value, on both sides."""
    return run_laws(
        f"{bx.name}:init", init_laws(), bx, _value_eq(bx), cap=cap, seed=seed,
        effect=bx.effect.name,
    )


# ---------------------------------------------------------------------------
# lens subsumption


def lens_to_bx(l: Lens, source_domain: FiniteDomain, view_domain: FiniteDomain,
               fam: Optional[EffectFamily] = None, name: str = "lens") -> Bx:
    """Simulate an asymmetric lens: the hidden state is the source itself, the
    left view is the whole source, the right view is the lens view."""
    fam = fam or identity_family()
    bx = Bx(
        name=name,
        effect=fam,
        get_l=st_get(fam),
        set_l=lambda a: st_set(fam, a),
        get_r=st_gets(fam, l.view),
        set_r=lambda b: st_get(fam).bind(lambda s: st_set(fam, l.update(s, b))),
        state_domain=source_domain,
        dom_a=source_domain,
        dom_b=view_domain,
    )
    return bx


def lens_to_ibx(l: Lens, source_domain: FiniteDomain, view_domain: FiniteDomain,
                fam: Optional[EffectFamily] = None, name: str = "lens") -> InitBx:
    """Initialisable variant; requires the lens to carry ``create``."""
    fam = fam or identity_family()
    base = lens_to_bx(l, source_domain, view_domain, fam, name)
    return InitBx(
        name=base.name,
        effect=fam,
        get_l=base.get_l,
        set_l=base.set_l,
        get_r=base.get_r,
        set_r=base.set_r,
        state_domain=base.state_domain,
        dom_a=base.dom_a,
        dom_b=base.dom_b,
        init_l=lambda a: fam.unit(a),
        init_r=lambda b: fam.unit(l.create(b)),
    )
