"""Generic enumeration-driven law runner.

Every equational law in the library is represented as data: a quantifier list
(variable name plus a domain provider) and two value builders.  One runner
walks the assignment space, compares both sides with the subject's equality,
and produces a machine-readable LawReport with counterexample witnesses.

Checking is exhaustive up to a configurable evaluation cap (default 10**6
assignments per law); above the cap a seeded random sample is used and the
mode is recorded in the report so "pass" claims stay auditable.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .errors import DomainTooLarge

DEFAULT_CAP = 1_000_000
DEFAULT_SAMPLE = 400

_ADDRESS = re.compile(r"0x[0-9a-fA-F]+")


def stable_repr(value) -> str:
    """repr with memory addresses masked, so reports stay byte-identical
    across runs even when witnesses contain function values."""
    return _ADDRESS.sub("0x..", repr(value))


@dataclass(frozen=True)
class FiniteDomain:
    """A finite carrier for exhaustive checking: distinct elements, ==-equality."""

    name: str
    elements: tuple

    def __post_init__(self):
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        seen = []
        for e in elems:
            if any(e == s for s in seen):
                raise ValueError(f"domain {self.name!r} has duplicate element {e!r}")
            seen.append(e)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"FiniteDomain({self.name}, {list(self.elements)!r})"


def domain(name, elements) -> FiniteDomain:
    return FiniteDomain(name, tuple(elements))


@dataclass(frozen=True)
class FiniteFunction:
    """A function given by its finite graph; hashable and printable so it can
    appear in witnesses."""

    keys: tuple
    values: tuple

    def __call__(self, x):
        for k, v in zip(self.keys, self.values):
            if k == x:
                return v
        raise KeyError(f"{x!r} outside function domain")

    def __repr__(self):
        entries = ", ".join(f"{k!r}->{v!r}" for k, v in zip(self.keys, self.values))
        return "{" + entries + "}"


def enumerate_functions(dom: FiniteDomain, cod: FiniteDomain,
                        cap: Optional[int] = DEFAULT_CAP,
                        sample: Optional[int] = None, seed: int = 0):
    """Deterministically list all functions dom -> cod.

    If the count exceeds ``cap``: with ``sample`` set, return that many
    seeded-random functions (reproducible across runs); otherwise raise
    DomainTooLarge.
    """
    keys = tuple(dom.elements)
    n = len(cod.elements) ** len(keys)
    if cap is not None and n > cap:
        if sample is None:
            raise DomainTooLarge(
                f"{len(cod.elements)}^{len(keys)} = {n} functions exceeds cap {cap}"
            )
        rng = random.Random(seed)
        return tuple(
            FiniteFunction(keys, tuple(rng.choice(cod.elements) for _ in keys))
            for _ in range(sample)
        )
    out = []
    total = max(n, 0)
    base = len(cod.elements)
    for index in range(total):
        picks = []
        i = index
        for _ in keys:
            picks.append(cod.elements[i % base])
            i //= base
        out.append(FiniteFunction(keys, tuple(picks)))
    return tuple(out)


@dataclass(frozen=True)
class Law:
    """One equation: quantifiers plus two side builders.

    Each quantifier is ``(name, provider)`` where ``provider(subject)`` yields
    the finite domain of that variable.  ``lhs``/``rhs`` take ``(subject,
    env)`` with ``env`` mapping variable names to chosen values, and return
    the values to compare (usually effect values).
    """

    name: str
    quantifiers: tuple
    lhs: Callable[[Any, dict], Any]
    rhs: Callable[[Any, dict], Any]
    compare: Optional[Callable[[Any, Any], bool]] = None

    def __post_init__(self):
        object.__setattr__(self, "quantifiers", tuple(self.quantifiers))

    def evaluate(self, subject, env):
        return self.lhs(subject, env), self.rhs(subject, env)


@dataclass(frozen=True)
class Witness:
    inputs: dict
    lhs: str
    rhs: str
    env: dict = field(compare=False, repr=False, default_factory=dict)

    def to_dict(self):
        return {"inputs": self.inputs, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class LawResult:
    name: str
    checked: int
    failures: tuple

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {
            "name": self.name,
            "checked": self.checked,
            "failures": [w.to_dict() for w in self.failures],
        }


@dataclass(frozen=True)
class LawReport:
    """Verdict per law per instance, with witnesses for every failure."""

    subject: str
    mode: str
    laws: tuple
    effect: str = ""

    @property
    def ok(self):
        return all(r.ok for r in self.laws)

    def law(self, name) -> LawResult:
        for r in self.laws:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def failing_laws(self):
        return tuple(r.name for r in self.laws if not r.ok)

    def to_dict(self):
        return {
            "bx": self.subject,
            "effect": self.effect,
            "mode": self.mode,
            "ok": self.ok,
            "laws": [r.to_dict() for r in self.laws],
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def summary_lines(self):
        lines = []
        for r in self.laws:
            status = "pass" if r.ok else "FAIL"
            line = f"{status}  {self.subject}  {r.name}  ({r.checked} checked)"
            if not r.ok:
                w = r.failures[0]
                line += f"  witness inputs={w.inputs} lhs={w.lhs} rhs={w.rhs}"
            lines.append(line)
        return lines


def _assignments(doms, cap, sample, seed):
    """Yield (mode, iterator of value tuples) over the product of ``doms``."""
    sizes = [len(d) for d in doms]
    total = 1
    for s in sizes:
        total *= s
    if not doms:
        return "exhaustive", iter([()])
    if 0 in sizes:  # vacuous quantification
        return "exhaustive", iter(())
    if cap is None or total <= cap:
        def gen():
            idx = [0] * len(doms)
            while True:
                yield tuple(d[i] for d, i in zip(doms, idx))
                j = len(idx) - 1
                while j >= 0:
                    idx[j] += 1
                    if idx[j] < sizes[j]:
                        break
                    idx[j] = 0
                    j -= 1
                if j < 0:
                    return

        return "exhaustive", gen()
    if sample is None:
        raise DomainTooLarge(f"{total} assignments exceeds cap {cap}")
    rng = random.Random(seed)

    def sampled():
        for _ in range(sample):
            yield tuple(d[rng.randrange(len(d))] for d in doms)

    return f"sampled(n={sample},seed={seed})", sampled()


def run_laws(subject_name: str, laws, subject, equal,
             cap: Optional[int] = DEFAULT_CAP, sample: Optional[int] = DEFAULT_SAMPLE,
             seed: int = 0, max_witnesses: int = 3, effect: str = "") -> LawReport:
    """Run a list of laws against a subject and collect a LawReport.

    ``equal`` is the default comparison for both sides; a law may override it.
    Output ordering is deterministic: laws in given order, assignments in
    enumeration order (or in seeded sample order above the cap).  ``cap=None``
    means the default cap; pass ``sample=None`` to get DomainTooLarge instead
    of sampling.
    """
    if cap is None:
        cap = DEFAULT_CAP
    results = []
    modes = set()
    for law in laws:
        doms = [tuple(provider(subject)) for _name, provider in law.quantifiers]
        names = [name for name, _provider in law.quantifiers]
        mode, assignments = _assignments(doms, cap, sample, seed)
        modes.add(mode)
        checked = 0
        failures = []
        for values in assignments:
            env = dict(zip(names, values))
            lhs, rhs = law.evaluate(subject, env)
            cmp = law.compare or equal
            checked += 1
            if not cmp(lhs, rhs):
                if len(failures) < max_witnesses:
                    failures.append(
                        Witness(
                            inputs={k: stable_repr(v) for k, v in env.items()},
                            lhs=stable_repr(lhs),
                            rhs=stable_repr(rhs),
                            env=env,
                        )
                    )
        results.append(LawResult(law.name, checked, tuple(failures)))
    mode = "exhaustive" if modes <= {"exhaustive"} else ", ".join(sorted(modes - {"exhaustive"}))
    return LawReport(subject=subject_name, mode=mode, laws=tuple(results), effect=effect)

