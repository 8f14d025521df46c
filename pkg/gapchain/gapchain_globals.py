DEFAULT_PRIME = 5

# Enumeration limits
SAT_VAR_LIMIT = 24
PART_VAR_LIMIT = 20
BUDGET_ENUM = 10_000_000
BUDGET_MATERIALIZE = 1_000_000
BUDGET_ORACLE = 2_000_000
MAX_RETRIES = 10

# Spectral solver
DENSE_EIGEN_LIMIT = 2048
POWER_TOLERANCE = 1e-10
POWER_MAX_ITER = 100_000
LAMBDA_TOLERANCE = 1e-9

MONTECARLO_TRIALS = 10_000

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4
EXIT_SAMPLING = 5
EXIT_CONVERGENCE = 6

CFG_ENV_VAR = "GAPCHAIN_CFG"
CFG_FILE_NAMES = (".gapchain.yml", "gapchain.yml")
