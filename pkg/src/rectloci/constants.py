"""Numerical tolerances shared by every module.

All comparisons against a tolerance go through the names defined here.
"""

# Absolute tolerance on unit-scaled geometric quantities (normals, angles,
# cone-matrix entries, point coincidence).
EPS_GEOM = 1e-9

# Relative threshold on the completed-square constant of a difference form.
EPS_K = 1e-9

# Below this max-norm distance from the identity a cone matrix is still
# factored into a unique pair, but the result is flagged as ill-conditioned.
NEAR_UNIT_CONE = 1e-6

# Bisection stopping width for the oracle's edge refinement.
BISECT_TOL = 1e-12

# Relative determinant floor below which a difference matrix counts as
# singular: a few ulps of the 2x2 determinant's rounding error.
EPS_DET = 1e-14
