from pathlib import Path

BASE_PATH = Path(__file__).resolve().parents[1]
DATA_PATH = BASE_PATH / "data"
JSON_PATH = DATA_PATH / "json"
FIGURES_JSON = JSON_PATH / "figures.json"
VALIDATION_JSON = JSON_PATH / "validation_grid.json"

# Below this concentration coth(k) - 1/k is taken from its Taylor series.
SERIES_THRESHOLD = 1e-2
# Below this concentration the one-qubit POVM closed form defers to quadrature.
CLOSED_FORM_MIN_KAPPA = 5e-2
RADICAND_TOLERANCE = 1e-12

QUBIT_QUADRATURE_TOL = 1e-10
OUTER_QUADRATURE_TOL = 1e-7
INNER_QUADRATURE_RTOL = 1e-13
QUADRATURE_ORDER = 16
QUADRATURE_MAX_DEPTH = 40
INNER_MAX_ORDER = 512

ESTIMATOR_GRID_POINTS = 129
GOLDEN_TOL = 1e-8
GAIN_STEP = 1e-3

SERIES_MIN_KAPPA = 1.0
SERIES_MAX_PARTICLES = 12
SERIES_DPS = 80

MC_MIN_SAMPLES = 1_000
MC_BLOCK_SIZE = 2**16
MC_ESTIMATOR_GRID = 513
BRANCH_JUMP = 0.25
Z_THRESHOLD = 3.0

FLOAT_FORMAT = "%.12g"
OUTER_QUADRATURE_ORDER = 10
# Inner integrals skip c < 1 - t/kappa, where the prior weight is below e^-t.
PRIOR_TAIL_CUTOFF = 50.0
