"""Numerical tolerances shared by every module."""

# identities forced by closed-form algebra
EXACT_TOL = 1e-12
# quantities that pass through matrix exponentials
ORBIT_TOL = 1e-8
# Cartan structure-equation residuals and the conj(a) c = a b constraint
RESIDUAL_TOL = 1e-10
# relative singular-value threshold for rank decisions
RANK_RTOL = 1e-9
# ratios within this factor of RANK_RTOL are flagged as borderline
BORDERLINE_FACTOR = 1e2
# relative sphericity threshold, scaled by 1 + |a|^2 + |b| + |c|
SPHERICITY_RTOL = 1e-9
# band around the real axis inside which a root counts as real
HALF_PLANE_BAND = 1e-10
# projective equality of lines (Fubini-Study chordal distance)
LINE_EQ_TOL = 1e-10
