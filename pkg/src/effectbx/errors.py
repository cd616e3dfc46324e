"""Exception types shared across the library."""


class EffectbxError(Exception):
    """Base class for all library errors."""


class UnobservableEffect(EffectbxError):
    """The effect family declares no (total) equality, so laws cannot be decided."""


class ScriptExhausted(EffectbxError):
    """A console computation tried to read past the end of its input script."""


class DomainTooLarge(EffectbxError):
    """An enumeration would exceed the configured evaluation cap."""


class BaseLawsViolated(EffectbxError):
    """The base effect's native get/set operations fail a required state law."""

    def __init__(self, law_name, witness=None):
        super().__init__(f"base state law violated: {law_name}")
        self.law_name = law_name
        self.witness = witness


class NotTransparent(EffectbxError):
    """Composition (or a combinator) requires transparent arguments."""

    def __init__(self, which):
        super().__init__(f"bx is not transparent: {which}")
        self.which = which


class MiddleTypeMismatch(EffectbxError):
    """The shared middle view domains of two composed bx disagree."""


class NotBijective(EffectbxError):
    """A claimed state bijection is not a bijection on the declared domains."""


class KeyViolation(EffectbxError):
    """A view passed to the composers example repeats a name key."""
