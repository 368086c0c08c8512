"""Exact computational algebra for twisted group algebras of P x| L:
quiver presentations of their basic algebras over explicit finite fields,
an explicit isomorphism with the second Frobenius twist, and a brute-force
oracle layer that re-derives every claim from structure constants.
"""

from .abelian import (
    AbCharacter,
    FinAbGroup,
    LAction,
    PGroupData,
    SubgroupEmbedding,
    action_on_frattini,
    dual_group,
    exterior_square,
    solve_character_extension,
)
from .algebras import (
    EigenBasisW,
    MatSubalgebra,
    StructAlgebra,
    build_h_algebra,
    build_kP,
    build_mat_subalgebra,
    build_twisted_algebra,
    idempotent_e_phi,
)
from .cocycles import (
    AlternatingForm,
    Cocycle2,
    cocycle_from_form,
    form_from_cocycle,
    frobenius_twist_class,
    solve_coboundary,
    trivial_form,
    twist_by_automorphism,
    verify_autfrob,
)
from .extension import (
    ChiData,
    ExtGroup,
    PhiFamily,
    build_extension,
    chars_over_chi,
    induced_irreducible,
    max_abelian_subgroup,
    rho,
    verify_class2_action,
)
from .frobenius import (
    FrobWitness,
    build_phi,
    build_twist_isomorphism,
    frobenius_coboundary,
    solve_tau,
)
from .oracle import (
    OracleReport,
    center_of,
    independent_dimension_count,
    maschke_semisimple_witness,
    radical_and_semisimple_rank,
    wedderburn_check,
)
from .pipeline import Build, build_from_problem, inject_fault
from .problem import ProblemFile, parse
from .quiver import (
    ArrowElement,
    QuiverPresentation,
    choose_g,
    compute_q,
    emit_presentation,
    presentation_dimension,
    verify_in_algebra,
    verify_tensor_decomposition,
)
from .scalars import (
    CycInt,
    FieldElement,
    FieldSpec,
    RootScalar,
    field_make,
    frobenius_inverse_power,
    zeta_embed,
)

__version__ = "0.1.0"
