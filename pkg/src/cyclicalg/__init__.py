"""Exact cyclic and quaternion algebras over Q, Brauer 2-torsion, and the
conjugation machinery behind the non-existence of abelian maximal subgroups
in cyclic division algebras."""

from .brauer import (
    BrauerClass2,
    Place,
    QuaternionAlgebra,
    albert_form_isotropic,
    biquaternion_verdict,
    class_add,
    classes_independent,
    hilbert_oracle,
    hilbert_symbol,
    quat_to_cyclic,
    quaternion_is_division,
    ramification_set,
)
from .cycalg import (
    AlgElem,
    CyclicAlgebra,
    alg_mul,
    cubic_algebra,
    hamilton,
    invert_elem,
    make_algebra,
    minimal_polynomial,
    norm_representation_search,
    reduced_norm,
    reduced_trace,
    split_gaussian,
    splitting_rep,
    verify_defining_relations,
)
from .exactlin import RatMatrix, det, intersect_subspaces, invert, kernel, solve
from .numfield import (
    CyclicExtension,
    FieldElem,
    NumberField,
    apply_sigma,
    cubic_extension,
    fe_arith,
    field_norm,
    gaussian_extension,
    mult_matrix,
    sigma_certify,
)
from .subfields import (
    SubspaceWitness,
    centralizer,
    conjugate_subspace,
    is_maximal_subfield,
    l_image,
    malnormality_probe,
    sn_conjugator,
    span_and_certify,
    theorem2_demo,
)

__version__ = "0.1.0"
