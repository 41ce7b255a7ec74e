"""Numerical defaults shared by the library and the CLI"""

# Largest number of w-coefficients a polynomial may hold after algebra
DEFAULT_DEGREE_CAP = 4096

# Analysis grid (rad/s)
DEFAULT_GRID_OMEGA_MIN = 1e-3
DEFAULT_GRID_OMEGA_MAX = 1e3
DEFAULT_GRID_POINTS = 1000

# Rational fitting
DEFAULT_FIT_OMEGA_MIN = 1e-3
DEFAULT_FIT_OMEGA_MAX = 1e3
DEFAULT_FIT_POINTS = 500
DEFAULT_FIT_ORDER = 8
DEFAULT_SK_ITERATIONS = 10

# Relative singular value below which a fit system counts as rank deficient
RANK_TOLERANCE = 1e-13

# Largest |log(H_fit / H)| below which a linear fit is left unpolished
REFINE_SKIP_TOLERANCE = 1e-10

# Step simulation (s)
DEFAULT_SIM_T_MAX = 40.0
DEFAULT_SIM_DT = 1e-3
DEFAULT_SETTLING_BAND = 0.02

# Largest change of phase (deg) across one bracketing interval that still counts
# as a consistent bracket
DEFAULT_MAX_PHASE_STEP_DEG = 45.0

# Matignon sector boundary band (rad)
MARGINAL_BAND_RAD = 1e-9

# |w| below this (relative to the coefficient scale) is treated as a root at w = 0
ZERO_ROOT_TOLERANCE = 1e-12

# Significant digits for every float written to JSON / CSV
FLOAT_DIGITS = 17
