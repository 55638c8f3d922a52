"""Asymptotic Samuel function, transversal frames and the Samuel slope of local rings."""

from .errors import (
    CapExceededError,
    InternalError,
    NotTransversalError,
    ParseError,
    PresentationError,
    RingMismatchError,
    SamuelError,
    SearchExhaustedError,
)
from .idealcalc import GroebnerBasis, eliminate, groebner, ideal_quotient, normal_form
from .localring import (
    Center,
    LocalRingPresentation,
    embedding_data,
    local_order,
    multiplicity,
    parse_ring_file,
    recenter,
    samuel_limit_oracle,
)
from .polyring import GREVLEX, INF, LEX, QQ, FieldSpec, OrderValue, Polynomial, PolyRing, block_order, substitute
from .samuelfn import OrderCertificate, hickel_order, samuel_order, samuel_order_nonlocalized_at_prime
from .slope import (
    SlopeReport,
    WeightedForm,
    mth_power_root,
    primitive_slope,
    samuel_slope,
    semicontinuity_probe,
    translation_step,
    weighted_initial_form,
)
from .transversal import (
    LinearChange,
    TransversalFrame,
    char_poly_of_element,
    check_transversal,
    find_transversal_frame,
    frame_from_variables,
    transversal_at_prime,
)
