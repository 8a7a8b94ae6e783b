"""Exact algebra for double shuffle, regularization and distribution relations at roots of unity."""

__version__ = "0.1.0"

from .algebra import (AlgebraError, CyclicGroup, ParseError, Series, TensorSeries, coeff,
                      concat_mul, format_series, format_word, homogeneous_component, parse_series,
                      parse_word)
from .hopf import (coproduct_x, coproduct_y, exp_series, is_grouplike, is_primitive, log_series,
                   shuffle, shuffle_reg_decompose, stuffle, stuffle_reg_decompose)
from .bridge import d_x0, embed_y, phi_star, pi_y, psi_star, sect
from .group import (exp_s_psi, group_exp, ihara_bracket, kappa_apply, mt_inv, mt_mul, proj1,
                    proj2, s_psi, scale_h, scale_h_pair, special_derivation, twist)
from .solver import (ConstraintSystem, MembershipReport, Relations, alpha, build_rational_point,
                     check_eq_excep, check_point, connecting_element, dimension, dmrd0_basis,
                     lift, tangent_basis, tangent_system, weight1_coeffs)
from .numeric import LiIndex, li_eval, verify_stuffle_numeric, weight1_constant_numeric
