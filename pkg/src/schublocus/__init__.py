"""Equivariant multiplicities and (rational) smoothness of Schubert varieties."""

__version__ = "0.1.0"

from .roots import CartanType, RootSystem, build_root_system, pairing, reflect  # noqa: E402
from .weyl import (  # noqa: E402
    WeylElt,
    bruhat_leq,
    compose,
    enumerate_group,
    from_word,
    identity,
    interval,
    longest_element,
    reflection,
    weyl_group,
)
from .symalg import Poly, RootFraction, linear_form  # noqa: E402
from .equimult import (  # noqa: E402
    emult_flag_point,
    emult_recursive,
    emult_subexpr,
    joseph_poly,
    phi_set,
    slice_mult,
)
from .singularity import (  # noqa: E402
    is_rationally_smooth_at,
    is_smooth_at,
    rationally_singular_locus,
    report,
    singular_locus,
)
from .gkm import (  # noqa: E402
    expand_in_schubert_basis,
    schubert_class,
    schubert_restriction,
    specialize_to_ordinary,
    verify_gkm,
)
