"""Asymmetric lenses, their effectful-update variant, and the embedding of a
computation over a view into a computation over a source."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional

from .effects import EffectFamily
from .lawcheck import FiniteDomain, Law, LawReport, enumerate_functions, run_laws
from .stateful import Stateful, enumerate_stateful, st_unit


@dataclass(frozen=True)
class Lens:
    """view/update/create between a source and a view.

    Well-behaved: view(update(s, v)) == v and update(s, view(s)) == s.
    Very well-behaved (overwritable) adds update(update(s, v), v') ==
    update(s, v').  ``create`` builds a source from a view alone; projection
    lenses must be given an explicit default for the hidden component.
    """

    view: Callable[[Any], Any]
    update: Callable[[Any, Any], Any]
    create: Optional[Callable[[Any], Any]] = None


@dataclass(frozen=True)
class MLens:
    """Lens with effectful update/create: mupdate and mcreate land in an
    effect family, mview stays pure."""

    effect: EffectFamily
    mview: Callable[[Any], Any]
    mupdate: Callable[[Any, Any], Any]
    mcreate: Optional[Callable[[Any], Any]] = None


def identity_lens() -> Lens:
    return Lens(lambda a: a, lambda _s, v: v, lambda v: v)


_NO_DEFAULT = object()


def fst_lens(default_b=_NO_DEFAULT) -> Lens:
    """Project the first component.  ``create`` exists only when a default for
    the hidden component is supplied explicitly; no value is invented."""
    create = None if default_b is _NO_DEFAULT else (lambda v: (v, default_b))
    return Lens(lambda s: s[0], lambda s, v: (v, s[1]), create)


def snd_lens(default_a=_NO_DEFAULT) -> Lens:
    create = None if default_a is _NO_DEFAULT else (lambda v: (default_a, v))
    return Lens(lambda s: s[1], lambda s, v: (s[0], v), create)


def lens_to_mlens(fam: EffectFamily, l: Lens) -> MLens:
    return MLens(
        effect=fam,
        mview=l.view,
        mupdate=lambda s, v: fam.unit(l.update(s, v)),
        mcreate=None if l.create is None else (lambda v: fam.unit(l.create(v))),
    )


def mlens_compose(l1: MLens, l2: MLens) -> MLens:
    """Compose a source->mid lens with a mid->view lens."""
    fam = l1.effect

    def mupdate(s, v1):
        return fam.bind(
            l2.mupdate(l1.mview(s), v1), lambda mid: l1.mupdate(s, mid)
        )

    def mcreate(v1):
        if l1.mcreate is None or l2.mcreate is None:
            return None
        return fam.bind(l2.mcreate(v1), l1.mcreate)

    return MLens(
        effect=fam,
        mview=lambda s: l2.mview(l1.mview(s)),
        mupdate=mupdate,
        mcreate=mcreate if (l1.mcreate and l2.mcreate) else None,
    )


# ---------------------------------------------------------------------------
# theta: widening a computation through a lens


def theta(l, m: Stateful) -> Stateful:
    """Embed a computation on the view type into one on the source type:
    read the source, take the view, run the computation on it, push the
    updated view back through the lens, store the new source.

    Accepts a pure Lens (lifted into the computation's effect family) or an
    MLens; both share this one code path."""
    fam = m.effect
    if isinstance(l, Lens):
        l = lens_to_mlens(fam, l)

    def run(s):
        v = l.mview(s)
        return fam.bind(
            m.run(v),
            lambda pair: fam.map(l.mupdate(s, pair[1]), lambda s1: (pair[0], s1)),
        )

    return Stateful(fam, run)


def left(m: Stateful) -> Stateful:
    """Lift a computation on S1 to the product state (S1, S2)."""
    return theta(fst_lens(), m)


def right(m: Stateful) -> Stateful:
    """Lift a computation on S2 to the product state (S1, S2)."""
    return theta(snd_lens(), m)


# ---------------------------------------------------------------------------
# law suites


def check_lens_laws(l: Lens, dom_a: FiniteDomain, dom_b: FiniteDomain,
                    cap=None, seed=0) -> LawReport:
    """Round-tripping (view-update, update-view) plus the overwrite law."""
    sources = lambda _t: dom_a.elements
    views = lambda _t: dom_b.elements
    laws = [
        Law(
            "update-view",
            [("s", sources), ("v", views)],
            lambda _t, e: l.view(l.update(e["s"], e["v"])),
            lambda _t, e: e["v"],
        ),
        Law(
            "view-update",
            [("s", sources)],
            lambda _t, e: l.update(e["s"], l.view(e["s"])),
            lambda _t, e: e["s"],
        ),
        Law(
            "update-update",
            [("s", sources), ("v", views), ("v2", views)],
            lambda _t, e: l.update(l.update(e["s"], e["v"]), e["v2"]),
            lambda _t, e: l.update(e["s"], e["v2"]),
        ),
    ]
    return run_laws("lens-laws", laws, None, lambda x, y: x == y, cap=cap, seed=seed)


def check_mlens_laws(l: MLens, dom_a: FiniteDomain, dom_b: FiniteDomain,
                     cap=None, seed=0) -> LawReport:
    """Monadic analogues of the round-tripping laws, over the family's
    equality."""
    fam = l.effect
    sources = lambda _t: dom_a.elements
    views = lambda _t: dom_b.elements
    laws = [
        Law(
            "update-view",
            [("s", sources), ("v", views)],
            lambda _t, e: fam.map(l.mupdate(e["s"], e["v"]), l.mview),
            lambda _t, e: fam.unit(e["v"]),
        ),
        Law(
            "view-update",
            [("s", sources)],
            lambda _t, e: l.mupdate(e["s"], l.mview(e["s"])),
            lambda _t, e: fam.unit(e["s"]),
        ),
        Law(
            "update-update",
            [("s", sources), ("v", views), ("v2", views)],
            lambda _t, e: fam.bind(
                l.mupdate(e["s"], e["v"]), lambda s1: l.mupdate(s1, e["v2"])
            ),
            lambda _t, e: l.mupdate(e["s"], e["v2"]),
        ),
    ]
    return run_laws(
        "mlens-laws", laws, None, lambda x, y: fam.equal_values(x, y),
        cap=cap, seed=seed,
    )


def check_theta_morphism(l, fam: EffectFamily, source_domain: FiniteDomain,
                         view_domain: FiniteDomain, value_domain: FiniteDomain,
                         cap=None, seed=0) -> LawReport:
    """The widening is a monad morphism when the lens is very well-behaved:
    it preserves unit and distributes over bind, pointwise over sources."""

    def pair_eq(x, y):
        return x == y

    computations = enumerate_stateful(fam, view_domain, value_domain)
    comp_dom = FiniteDomain("view-computations", computations)
    conts = enumerate_functions(value_domain, comp_dom)
    laws = [
        Law(
            "theta-preserves-unit",
            [("a", lambda _t: value_domain.elements),
             ("s", lambda _t: source_domain.elements)],
            lambda _t, e: theta(l, st_unit(fam, e["a"])).run(e["s"]),
            lambda _t, e: st_unit(fam, e["a"]).run(e["s"]),
        ),
        Law(
            "theta-preserves-bind",
            [
                ("m", lambda _t: computations),
                ("k", lambda _t: conts),
                ("s", lambda _t: source_domain.elements),
            ],
            lambda _t, e: theta(l, e["m"].bind(e["k"])).run(e["s"]),
            lambda _t, e: theta(l, e["m"])
            .bind(lambda x: theta(l, e["k"](x)))
            .run(e["s"]),
        ),
    ]
    return run_laws(
        "theta-morphism", laws, None,
        lambda x, y: fam.equal_values(x, y, pair_eq), cap=cap, seed=seed,
    )
