"""Exact moment-graph model of Bott-Samelson varieties.

Builds finite root systems, enumerates combinatorial galleries over a word of
simple reflections, constructs the copy/concentration bases of the associated
equivariant-cohomology model, and computes the costalk-to-stalk transition
matrix together with its graded defect and parity multiplicities over a
chosen coefficient field.  All arithmetic is exact over Z.
"""

from .errors import (
    Char2Forbidden,
    ConfigurationError,
    InvariantViolation,
    NotDivisible,
    NotHomogeneous,
    NotInImage,
)
from .rootsys import (
    Root,
    RootDatum,
    WeylElement,
    build_root_datum,
    is_negative,
    is_positive,
    render_root,
)
from .polyring import (
    FieldSpec,
    LaurentV,
    Poly,
    RatFn,
    divides_power,
    exact_divide,
    linear_form,
    reduce_mod,
)
from .gallery import (
    Gallery,
    Ordering,
    TreeIndex,
    Word,
    WallData,
    check_alternation,
    cmp_fiber,
    cmp_triangle,
    dot,
    enumerate_cofiber,
    enumerate_fiber,
    enumerate_galleries,
    equiv_alpha,
    pi,
    tree_rho,
    tree_xi,
    wall_data,
)
from .cohom import (
    BasisFamily,
    PointClass,
    a_poly,
    b_value,
    basis_B,
    basis_b,
    basis_c,
    c_value,
    check_prop1,
    check_prop2,
    check_prop3,
    decompose_in_B,
    decompose_in_b_fiber,
    delta_copy,
    load_product,
    nabla,
    nabla_tilde,
    p_q_classes,
    unit_class,
)
from .parity import (
    CostalkData,
    DefectReport,
    FiberMatrix,
    TorsionReport,
    costalk_data,
    defect,
    divide_by_euler,
    euler_class,
    invert_upper_triangular,
    matrix_H,
    matrix_P,
    torsion_scan,
    transition_matrix,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
