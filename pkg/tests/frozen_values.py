"""Reference numbers frozen before the implementation was tested.

Each value was computed once with mpmath at 30 significant digits from
an elementary expression written out independently of the package (the
expression is given next to the constant).  None of them is produced by
package code.
"""

import math

# ln(3) / (16 pi^2): normal dispersion for a step of duration 2z/2 (tau = z = 1).
STEP_TAU1_Z1 = 0.0069570435907419085931165461815

# 1 / (4 pi^2): late-time limit of the normal step dispersion, e = m = z = 1.
LATE_TIME_Z = 0.0253302959105844428609698658024

# (tau / (32 pi^2)) * 2 ln((tau + 2)/(tau - 2)) at tau = 100, z = 1.
STEP_TAU100 = 0.0253336740941736532764912708784

# (tau/64 * 2 ln((tau+2)/(tau-2)) - tau^2 / (8 (tau^2 - 4))) / pi^2 at tau = 1000.
XY_STEP_TAU1000 = -3.37738899953678616011207987651e-08

# 1 / (64 pi^2): Lorentzian normal dispersion at z = tau = 1.
LORENTZ_Z1_TAU1 = 0.00158314349441152767881061661265

# (1 - 1/5) atan(1) - ln(2)/5.
F_SHAPE_AT_1 = 0.489689094605969585809082252364

# pi^4 / (pi^2 + 4)^2.
S_FACTOR = 0.506373935013297104429206387074

# (3 pi^2 / (2 alpha))^(1/3) with alpha = scipy.constants.fine_structure.
VALIDITY_COEFF = 12.6592669594917214233126833933

# 2 ln 3: finite part of the excised int_0^1 (1-x)/(x^2 - 1/4)^2 dx.
TWO_LN3 = 2.19722457733621938279049047384
# (1 - sigma) / (2 sigma^2) at sigma = 1/2.
CANONICAL_POLE = 1.0

PI2 = math.pi**2
