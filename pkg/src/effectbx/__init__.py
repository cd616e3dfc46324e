"""Effectful bidirectional transformations as entangled stateful computations,
with an exhaustive law-checking harness for small finite instances."""

from .bx import (
    Bx,
    InitBx,
    TransparencyAnalysis,
    analyze_transparency,
    check_init_laws,
    check_overwritable,
    check_seven_laws,
    check_stability,
    consistent_pairs,
    init_laws,
    lens_to_bx,
    lens_to_ibx,
    overwritable_laws,
    seven_laws,
    stability_laws,
)
from .combinators import (
    Left,
    Right,
    UNINIT,
    assoc_bx,
    const_bx,
    either_domain,
    fst_bx,
    fst_ibx,
    inl_bx,
    inr_bx,
    iso_bx,
    list_ibx,
    pair_bx,
    snd_bx,
    snd_ibx,
    sum_bx,
    swap_bx,
    unitl_bx,
    unitr_bx,
)
from .compose import (
    StateBijection,
    assoc_bijection,
    check_equivalence,
    compose,
    compose_init,
    dual,
    identity_bx,
    iota,
    join_states,
    join_states_general,
    left_identity_bijection,
    right_identity_bijection,
)
from .effects import (
    ConsoleWorld,
    EffectFamily,
    Just,
    NOTHING,
    NativeStateOps,
    ask,
    check_commutative,
    check_monad_laws,
    check_monad_morphism,
    choice_family,
    console_family,
    console_read,
    console_run,
    console_write,
    failure_family,
    identity_family,
    load_console_script,
    native_state_family,
    reader_family,
    tell,
    transcript_records,
    writer_family,
)
from .errors import (
    BaseLawsViolated,
    DomainTooLarge,
    EffectbxError,
    KeyViolation,
    MiddleTypeMismatch,
    NotBijective,
    NotTransparent,
    ScriptExhausted,
    UnobservableEffect,
)
from .examples import (
    alert_bx,
    composers_bx,
    composers_scenario,
    composers_symlens,
    composers_symlens_bx,
    default_composers_script,
    dynamic_bx,
    dynamic_console_bx,
    dynamic_search_bx,
    inv_bx,
    log_bx,
    match_console,
    nondet_bx,
    partial_bx,
    read_some_bx,
    render_dates,
    signal_bx,
    switch_bx,
)
from .lawcheck import (
    FiniteDomain,
    FiniteFunction,
    Law,
    LawReport,
    LawResult,
    Witness,
    domain,
    enumerate_functions,
    run_laws,
)
from .lenses import (
    Lens,
    MLens,
    check_lens_laws,
    check_mlens_laws,
    check_theta_morphism,
    fst_lens,
    identity_lens,
    left,
    lens_to_mlens,
    mlens_compose,
    right,
    snd_lens,
    theta,
)
from .stateful import (
    Stateful,
    check_lift_morphism,
    data_refinement,
    enumerate_stateful,
    st_eval,
    st_exec,
    st_get,
    st_gets,
    st_lift,
    st_modify,
    st_set,
    st_unit,
    state_law_suite,
    stateful_equal,
)
from .symlens import (
    SymLens,
    SymMLens,
    bx_to_symlens,
    check_symlens_laws,
    check_symmlens_laws,
    consistent_triples,
    dual_symlens,
    identity_symlens,
    lens_span_to_symlens,
    smlens_compose,
    symlens_to_bx,
    symlens_to_lens_span,
    symlens_to_symmlens,
)

__version__ = "0.1.0"
