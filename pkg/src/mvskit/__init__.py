"""Computing with finite metric value sets."""

from .core import (
    AxiomReport,
    ElemRelation,
    FiniteMvs,
    OrderClass,
    RawTable,
    adjoin_infinity,
    check_axioms,
    is_congruence,
    is_sub_mvs,
    mutual_order_congruence,
    order_class,
    quotient,
    validate,
)
from .morphisms import (
    MvsMap,
    canonical_projection,
    compose,
    find_isomorphism,
    first_isomorphism,
    image,
    invert,
    is_fine,
    kernel,
    make_hom,
)
from .topology import (
    FiniteTopology,
    QuasimetricTable,
    are_equivalent,
    canonical_quasimetric,
    check_quasimetric,
    induced_topology,
    is_finer,
    open_ball,
    quotient_metrize,
    search_metrizable,
    transform,
)
from .words import (
    Presentation,
    Verdict,
    check_m4,
    close,
    concat,
    eval_word,
    find_separating_model,
    one_step,
    present_mvs,
    verify_representation,
    words_equal,
)

__version__ = "0.1.0"
