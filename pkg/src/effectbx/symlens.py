"""Symmetric lenses (pure and effectful) and the conversions between them,
lens spans, and bx."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional

from .bx import InitBx
from .effects import EffectFamily, Just, NOTHING, identity_family
from .lawcheck import FiniteDomain, Law, LawReport, run_laws
from .lenses import Lens
from .stateful import Stateful, st_gets


@dataclass(frozen=True)
class SymLens:
    """Two put functions over a shared complement.

    put_r maps (new left view, old complement) to (right view, new
    complement); put_l is symmetric.  ``missing`` is the complement to use
    when there is no history yet.
    """

    put_r: Callable[[Any, Any], tuple]
    put_l: Callable[[Any, Any], tuple]
    missing: Any


@dataclass(frozen=True)
class SymMLens:
    """Symmetric lens whose puts may perform effects."""

    effect: EffectFamily
    mput_r: Callable[[Any, Any], Any]
    mput_l: Callable[[Any, Any], Any]
    mmissing: Any


def identity_symlens() -> SymLens:
    return SymLens(
        put_r=lambda a, _c: (a, a),
        put_l=lambda b, _c: (b, b),
        missing=None,
    )


def dual_symlens(sl: SymLens) -> SymLens:
    return SymLens(put_r=sl.put_l, put_l=sl.put_r, missing=sl.missing)


def check_symlens_laws(sl: SymLens, dom_a: FiniteDomain, dom_b: FiniteDomain,
                       dom_c: FiniteDomain, cap=None, seed=0) -> LawReport:
    """After one put the complement is fully consistent, so the opposite put
    with the returned view is a fixed point."""

    def put_rl(_t, e):
        b, c1 = sl.put_r(e["a"], e["c"])
        return sl.put_l(b, c1)

    def put_rl_expected(_t, e):
        _b, c1 = sl.put_r(e["a"], e["c"])
        return (e["a"], c1)

    def put_lr(_t, e):
        a, c1 = sl.put_l(e["b"], e["c"])
        return sl.put_r(a, c1)

    def put_lr_expected(_t, e):
        _a, c1 = sl.put_l(e["b"], e["c"])
        return (e["b"], c1)

    laws = [
        Law(
            "put_r-put_l",
            [("a", lambda _t: dom_a.elements), ("c", lambda _t: dom_c.elements)],
            put_rl,
            put_rl_expected,
        ),
        Law(
            "put_l-put_r",
            [("b", lambda _t: dom_b.elements), ("c", lambda _t: dom_c.elements)],
            put_lr,
            put_lr_expected,
        ),
    ]
    return run_laws("symlens-laws", laws, None, lambda x, y: x == y, cap=cap, seed=seed)


def check_symmlens_laws(sl: SymMLens, dom_a: FiniteDomain, dom_b: FiniteDomain,
                        dom_c: FiniteDomain, cap=None, seed=0) -> LawReport:
    """Monadic rendering of the round-trip laws, over the family's equality:
    chasing a put with the opposite put equals chasing it with a pure return."""
    fam = sl.effect
    laws = [
        Law(
            "mput_r-mput_l",
            [("a", lambda _t: dom_a.elements), ("c", lambda _t: dom_c.elements)],
            lambda _t, e: fam.bind(
                sl.mput_r(e["a"], e["c"]), lambda bc: sl.mput_l(bc[0], bc[1])
            ),
            lambda _t, e: fam.bind(
                sl.mput_r(e["a"], e["c"]),
                lambda bc: fam.unit((e["a"], bc[1])),
            ),
        ),
        Law(
            "mput_l-mput_r",
            [("b", lambda _t: dom_b.elements), ("c", lambda _t: dom_c.elements)],
            lambda _t, e: fam.bind(
                sl.mput_l(e["b"], e["c"]), lambda ac: sl.mput_r(ac[0], ac[1])
            ),
            lambda _t, e: fam.bind(
                sl.mput_l(e["b"], e["c"]),
                lambda ac: fam.unit((e["b"], ac[1])),
            ),
        ),
    ]
    return run_laws(
        "symmlens-laws", laws, None, lambda x, y: fam.equal_values(x, y),
        cap=cap, seed=seed,
    )


def smlens_compose(sl1: SymMLens, sl2: SymMLens) -> SymMLens:
    """Sequential composition of effectful symmetric lenses over paired
    complements."""
    fam = sl1.effect

    def mput_r(a, c):
        c1, c2 = c
        return fam.bind(
            sl1.mput_r(a, c1),
            lambda bc1: fam.map(
                sl2.mput_r(bc1[0], c2),
                lambda cc2: (cc2[0], (bc1[1], cc2[1])),
            ),
        )

    def mput_l(z, c):
        c1, c2 = c
        return fam.bind(
            sl2.mput_l(z, c2),
            lambda bc2: fam.map(
                sl1.mput_l(bc2[0], c1),
                lambda ac1: (ac1[0], (ac1[1], bc2[1])),
            ),
        )

    return SymMLens(
        effect=fam,
        mput_r=mput_r,
        mput_l=mput_l,
        mmissing=(sl1.mmissing, sl2.mmissing),
    )


def symlens_to_symmlens(fam: EffectFamily, sl: SymLens) -> SymMLens:
    return SymMLens(
        effect=fam,
        mput_r=lambda a, c: fam.unit(sl.put_r(a, c)),
        mput_l=lambda b, c: fam.unit(sl.put_l(b, c)),
        mmissing=sl.missing,
    )


# ---------------------------------------------------------------------------
# consistent-triple closure and the bx simulation


def consistent_triples(sl: SymLens, dom_a: FiniteDomain, dom_b: FiniteDomain,
                       max_rounds: int = 64) -> FiniteDomain:
    """Materialize the consistent (a, b, c) triples by closure: seed with the
    puts applied to the missing complement, then iterate set-transitions until
    no new triple appears."""
    triples = []

    def add(t):
        if not any(t == u for u in triples):
            triples.append(t)
            return True
        return False

    for a in dom_a:
        b, c = sl.put_r(a, sl.missing)
        add((a, b, c))
    for b in dom_b:
        a, c = sl.put_l(b, sl.missing)
        add((a, b, c))
    for _ in range(max_rounds):
        changed = False
        for (a, b, c) in list(triples):
            for a1 in dom_a:
                b1, c1 = sl.put_r(a1, c)
                changed |= add((a1, b1, c1))
            for b1 in dom_b:
                a1, c1 = sl.put_l(b1, c)
                changed |= add((a1, b1, c1))
        if not changed:
            break
    return FiniteDomain("consistent-triples", tuple(triples))


def symlens_to_bx(sl: SymLens, dom_a: Optional[FiniteDomain] = None,
                  dom_b: Optional[FiniteDomain] = None,
                  fam: Optional[EffectFamily] = None,
                  name: str = "symlens") -> InitBx:
    """Simulate a symmetric lens as a bx whose state is a consistent triple.

    The declared state domain is the closure of the puts from the missing
    complement when the view domains are supplied; otherwise it is left
    undeclared and the bx is usable but not law-checkable.
    """
    fam = fam or identity_family()

    def set_l(a1):
        def run(t):
            _a, _b, c = t
            b1, c1 = sl.put_r(a1, c)
            return fam.unit(((), (a1, b1, c1)))

        return Stateful(fam, run)

    def set_r(b1):
        def run(t):
            _a, _b, c = t
            a1, c1 = sl.put_l(b1, c)
            return fam.unit(((), (a1, b1, c1)))

        return Stateful(fam, run)

    def init_l(a):
        b, c = sl.put_r(a, sl.missing)
        return fam.unit((a, b, c))

    def init_r(b):
        a, c = sl.put_l(b, sl.missing)
        return fam.unit((a, b, c))

    states = None
    if dom_a is not None and dom_b is not None:
        states = consistent_triples(sl, dom_a, dom_b)
    return InitBx(
        name=name,
        effect=fam,
        get_l=st_gets(fam, lambda t: t[0]),
        set_l=set_l,
        get_r=st_gets(fam, lambda t: t[1]),
        set_r=set_r,
        state_domain=states,
        dom_a=dom_a,
        dom_b=dom_b,
        init_l=init_l,
        init_r=init_r,
    )


def bx_to_symlens(bx: InitBx) -> SymLens:
    """Flatten an identity-effect bx into a symmetric lens whose complement is
    the optional hidden state; an absent complement routes through the bx's
    initializer."""
    if bx.effect.name != "identity":
        raise ValueError("bx_to_symlens requires the identity effect")

    def put_r(a, mc):
        m = bx.set_l(a).then(bx.get_r)
        s = bx.init_l(a) if mc is NOTHING else mc.value
        b, s1 = m.run(s)
        return (b, Just(s1))

    def put_l(b, mc):
        m = bx.set_r(b).then(bx.get_l)
        s = bx.init_r(b) if mc is NOTHING else mc.value
        a, s1 = m.run(s)
        return (a, Just(s1))

    return SymLens(put_r=put_r, put_l=put_l, missing=NOTHING)


# ---------------------------------------------------------------------------
# lens spans


def symlens_to_lens_span(sl: SymLens):
    """Split a symmetric lens into two asymmetric lenses out of the triple
    state."""

    def fixup_r(c, a1):
        b1, c1 = sl.put_r(a1, c)
        return (a1, b1, c1)

    def fixup_l(c, b1):
        a1, c1 = sl.put_l(b1, c)
        return (a1, b1, c1)

    left_leg = Lens(
        view=lambda t: t[0],
        update=lambda t, a1: fixup_r(t[2], a1),
        create=lambda a1: fixup_r(sl.missing, a1),
    )
    right_leg = Lens(
        view=lambda t: t[1],
        update=lambda t, b1: fixup_l(t[2], b1),
        create=lambda b1: fixup_l(sl.missing, b1),
    )
    return left_leg, right_leg


def lens_span_to_symlens(l1: Lens, l2: Lens) -> SymLens:
    """Fuse two lenses sharing a source into a symmetric lens whose complement
    is the optional source."""

    def put_r(a, mc):
        c1 = l1.create(a) if mc is NOTHING else l1.update(mc.value, a)
        return (l2.view(c1), Just(c1))

    def put_l(b, mc):
        c1 = l2.create(b) if mc is NOTHING else l2.update(mc.value, b)
        return (l1.view(c1), Just(c1))

    return SymLens(put_r=put_r, put_l=put_l, missing=NOTHING)
